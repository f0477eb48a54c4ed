//! Quench scenario definition: the ring, the initial Bloch state, the defect,
//! and the derived parameters that drive the closed-form solution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// An `N`-site tight-binding ring (hopping amplitude 1, periodic boundary)
/// prepared in the Bloch state `k_init`, quenched at `t = 0` by switching on a
/// potential `defect_strength` on site `defect_site`.
///
/// Bloch indices follow the convention `k ∈ {−⌊N/2⌋, …, ⌈N/2⌉−1}` with wave
/// vector `q = 2πk/N ∈ (−π, π]`. `k_init` may be given in any representative
/// of its class mod `N`; it is reduced on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeConfig {
    pub n_sites: usize,
    pub k_init: i64,
    pub defect_strength: f64,
    pub defect_site: usize,
}

impl LatticeConfig {
    pub fn new(n_sites: usize, k_init: i64, defect_strength: f64, defect_site: usize) -> Result<Self> {
        let cfg = LatticeConfig { n_sites, k_init, defect_strength, defect_site };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 3 {
            return Err(Error::InvalidConfig(format!(
                "n_sites = {} but at least 3 sites are required",
                self.n_sites
            )));
        }
        if self.defect_site >= self.n_sites {
            return Err(Error::InvalidConfig(format!(
                "defect_site = {} out of range [0, {})",
                self.defect_site, self.n_sites
            )));
        }
        if !self.defect_strength.is_finite() {
            return Err(Error::InvalidConfig("defect_strength must be finite".into()));
        }
        let q = self.q_init();
        if q.sin().abs() < 1e-14 {
            return Err(Error::BandEdge { q });
        }
        if q <= 0.0 || q >= PI {
            return Err(Error::InvalidConfig(format!(
                "k_init = {} gives q_i = {:.6}; a right-moving initial state with 0 < q_i < pi is required",
                self.k_init, q
            )));
        }
        Ok(())
    }

    /// Bloch index reduced to `{−⌊N/2⌋, …, ⌈N/2⌉−1}`.
    pub fn k_reduced(&self) -> i64 {
        reduce_bloch_index(self.k_init, self.n_sites)
    }

    /// Initial wave vector `q_i = 2π k_i / N` in `(−π, π]`.
    pub fn q_init(&self) -> f64 {
        2.0 * PI * self.k_reduced() as f64 / self.n_sites as f64
    }
}

/// Reduce a Bloch index to the symmetric window `{−⌊N/2⌋, …, ⌈N/2⌉−1}`.
pub fn reduce_bloch_index(k: i64, n: usize) -> i64 {
    let n = n as i64;
    let mut r = k.rem_euclid(n);
    if r >= (n + 1) / 2 {
        r -= n;
    }
    r
}

/// Quantities derived from a [`LatticeConfig`] that fully determine the
/// closed-form ideal-model dynamics.
///
/// * `g = U/N` - uniform Bloch-state coupling induced by the defect.
/// * `delta = 4π sin(q_i)/N` - linearized level spacing around `±q_i`.
/// * `heisenberg_time = 2π/delta` - revival period `T`; cusps repeat with it.
/// * `theta = 2 atan(gT)` - phase picked up by the surviving amplitude per period.
/// * `omega = theta/T` - slow Rabi frequency of the cusp-tip envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdealModelParams {
    pub g: f64,
    pub delta: f64,
    pub heisenberg_time: f64,
    pub theta: f64,
    pub omega: f64,
    pub q_init: f64,
}

impl IdealModelParams {
    /// Build parameters directly from coupling and spacing, bypassing any
    /// lattice. Used for studying the truncated model in reduced units.
    pub fn from_g_delta(g: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::InvalidConfig(format!("level spacing must be positive, got {delta}")));
        }
        let t = 2.0 * PI / delta;
        let theta = 2.0 * (g * t).atan();
        Ok(IdealModelParams {
            g,
            delta,
            heisenberg_time: t,
            theta,
            omega: theta / t,
            q_init: f64::NAN,
        })
    }

    /// The dimensionless product `gT = U / (2 sin q_i)`; independent of `N`.
    pub fn g_t(&self) -> f64 {
        self.g * self.heisenberg_time
    }
}

/// Derive the ideal-model parameters for a quench scenario.
///
/// Rejects configurations with `sin(q_i) = 0` (band edge or band center),
/// where the linearized spacing vanishes and the ideal model is undefined.
pub fn derive_params(cfg: &LatticeConfig) -> Result<IdealModelParams> {
    cfg.validate()?;
    let n = cfg.n_sites as f64;
    let q = cfg.q_init();
    let g = cfg.defect_strength / n;
    let delta = 4.0 * PI * q.sin() / n;
    let t = 2.0 * PI / delta;
    let theta = 2.0 * (g * t).atan();
    Ok(IdealModelParams {
        g,
        delta,
        heisenberg_time: t,
        theta,
        omega: theta / t,
        q_init: q,
    })
}

/// Amplitude `⟨l|k⟩ = e^{iql}/√N` of the Bloch state `|k⟩` on site `l`.
pub fn bloch_amplitude(l: usize, k: i64, n: usize) -> Complex64 {
    assert!(l < n, "site index {l} out of range [0, {n})");
    let q = 2.0 * PI * reduce_bloch_index(k, n) as f64 / n as f64;
    Complex64::from_polar(1.0 / (n as f64).sqrt(), q * l as f64)
}

/// Tight-binding dispersion `ε(q) = −2 cos q`.
pub fn dispersion(q: f64) -> f64 {
    -2.0 * q.cos()
}
