//! Quench dynamics of a Bloch state on a tight-binding ring with a suddenly
//! switched-on site defect.
//!
//! After the quench, survival and reflection probabilities develop cusps
//! repeating with the Heisenberg time `T = 2π/Δ`, where `Δ` is the linearized
//! level spacing around the initial momentum. This crate cross-validates
//! three independent routes to those trajectories:
//!
//! * [`exact`] - dense eigendecomposition of the full `N`-level Hamiltonian
//!   (plus an independent split-operator stepper as an oracle);
//! * [`truncated`] - the finite window of `2M+1` equally spaced levels, all
//!   pairs coupled at `2g`;
//! * [`ideal`] - the closed-form solution of the infinite-level limit, where
//!   the cusps are mathematically sharp.
//!
//! [`analysis`] provides the cusp detector and comparison metrics, [`run`]
//! the high-level drivers, and [`io`] the CSV/JSON interchange used by the
//! `ringquench` binary. See the `examples/` directory for one runnable
//! example per capability.

pub mod analysis;
pub mod error;
pub mod exact;
pub mod ideal;
pub mod io;
pub mod lattice;
pub mod run;
pub mod series;
pub mod state;
pub mod truncated;

pub use error::{Error, Result};
pub use lattice::{bloch_amplitude, derive_params, dispersion, IdealModelParams, LatticeConfig};
pub use series::{ComplexSeries, TimeSeries};
pub use state::{basis_change, Basis, StateVector};
