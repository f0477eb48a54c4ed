//! State vectors over the three bases used by the evolvers: real-space
//! (Wannier), momentum-space (Bloch), and the parity basis about the defect.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::lattice::{reduce_bloch_index, LatticeConfig};

pub const NORM_TOL: f64 = 1e-12;

/// Basis label for a [`StateVector`].
///
/// * `Wannier` - site basis `|l⟩`, `l = 0..N`.
/// * `Bloch` - plane-wave basis, amplitudes ordered by Bloch index
///   `k = −⌊N/2⌋, …, ⌈N/2⌉−1`.
/// * `APlusMinus` - parity combinations `(|k_i+n⟩ ± |−k_i−n⟩)/√2` about the
///   defect, on a truncated window `n ∈ [−M, M]`; amplitudes ordered as all
///   `+` states for `n = −M..M` followed by all `−` states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Wannier,
    Bloch,
    APlusMinus { window: usize },
}

/// A normalized complex amplitude vector over a labeled basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: Basis,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(basis: Basis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if let Basis::APlusMinus { window } = basis {
            let expect = 2 * (2 * window + 1);
            if amplitudes.len() != expect {
                return Err(Error::InvalidState(format!(
                    "parity basis with window {} needs {} amplitudes, got {}",
                    window,
                    expect,
                    amplitudes.len()
                )));
            }
        }
        let s = StateVector { basis, amplitudes };
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("norm {norm} deviates from 1 beyond {NORM_TOL}")));
        }
        Ok(s)
    }

    /// Construct without the unit-norm check (for intermediate results).
    pub fn new_unchecked(basis: Basis, amplitudes: Vec<Complex64>) -> Self {
        StateVector { basis, amplitudes }
    }

    /// The Bloch state `|k⟩` expressed in the Bloch basis of an `N`-site ring.
    pub fn bloch_state(k: i64, n: usize) -> Self {
        let kr = reduce_bloch_index(k, n);
        let mut amp = vec![Complex64::new(0.0, 0.0); n];
        amp[bloch_position(kr, n)] = Complex64::new(1.0, 0.0);
        StateVector { basis: Basis::Bloch, amplitudes: amp }
    }

    /// The Wannier state `|l⟩` on an `N`-site ring.
    pub fn wannier_state(l: usize, n: usize) -> Self {
        let mut amp = vec![Complex64::new(0.0, 0.0); n];
        amp[l] = Complex64::new(1.0, 0.0);
        StateVector { basis: Basis::Wannier, amplitudes: amp }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn basis_size(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Amplitude on Bloch index `k` (any representative mod `N`).
    /// Only valid in the Bloch basis.
    pub fn bloch_component(&self, k: i64) -> Complex64 {
        debug_assert_eq!(self.basis, Basis::Bloch);
        let n = self.amplitudes.len();
        self.amplitudes[bloch_position(reduce_bloch_index(k, n), n)]
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Position of reduced Bloch index `k` in the Bloch amplitude ordering.
pub fn bloch_position(k: i64, n: usize) -> usize {
    let lo = -((n / 2) as i64);
    (k - lo) as usize
}

/// Reduced Bloch index stored at `pos` in the Bloch amplitude ordering.
pub fn bloch_index_at(pos: usize, n: usize) -> i64 {
    pos as i64 - (n / 2) as i64
}

/// Change a state to `target`, preserving the norm.
///
/// Wannier ↔ Bloch is a unitary DFT on the full ring. Conversion to the
/// parity basis requires a window and is provided by
/// [`to_parity_basis`] / [`from_parity_basis`]; requesting it here with the
/// window encoded in `target` forwards to those.
pub fn basis_change(state: &StateVector, target: Basis, cfg: &LatticeConfig) -> Result<StateVector> {
    if state.basis == target {
        return Err(Error::BasisChange("state is already in the target basis".into()));
    }
    match (state.basis, target) {
        (Basis::Wannier, Basis::Bloch) => Ok(wannier_to_bloch(state)),
        (Basis::Bloch, Basis::Wannier) => Ok(bloch_to_wannier(state)),
        (Basis::Bloch, Basis::APlusMinus { window }) => to_parity_basis(state, cfg, window),
        (Basis::APlusMinus { .. }, Basis::Bloch) => from_parity_basis(state, cfg),
        (Basis::Wannier, Basis::APlusMinus { window }) => {
            to_parity_basis(&wannier_to_bloch(state), cfg, window)
        }
        (Basis::APlusMinus { .. }, Basis::Wannier) => {
            Ok(bloch_to_wannier(&from_parity_basis(state, cfg)?))
        }
        _ => Err(Error::BasisChange("unsupported basis pair".into())),
    }
}

/// `c_k = Σ_l e^{−iql} ψ_l / √N`: forward DFT with the plane-wave convention
/// `⟨l|k⟩ = e^{iql}/√N`.
pub fn wannier_to_bloch(state: &StateVector) -> StateVector {
    debug_assert_eq!(state.basis, Basis::Wannier);
    let n = state.amplitudes.len();
    let mut buf = state.amplitudes.clone();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    // rustfft output index m corresponds to k = m mod N; reorder to the
    // symmetric index window.
    let mut amp = vec![Complex64::new(0.0, 0.0); n];
    for (m, v) in buf.into_iter().enumerate() {
        let k = reduce_bloch_index(m as i64, n);
        amp[bloch_position(k, n)] = v * scale;
    }
    StateVector { basis: Basis::Bloch, amplitudes: amp }
}

/// Inverse of [`wannier_to_bloch`].
pub fn bloch_to_wannier(state: &StateVector) -> StateVector {
    debug_assert_eq!(state.basis, Basis::Bloch);
    let n = state.amplitudes.len();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (pos, v) in state.amplitudes.iter().enumerate() {
        let k = bloch_index_at(pos, n);
        buf[k.rem_euclid(n as i64) as usize] = *v;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    for v in buf.iter_mut() {
        *v *= scale;
    }
    StateVector { basis: Basis::Wannier, amplitudes: buf }
}

/// Project a Bloch-basis state onto the parity basis
/// `|A_n^±⟩ = (|k_i+n⟩ ± |−k_i−n⟩)/√2`, `n ∈ [−M, M]`, about the defect of
/// `cfg`. The map is an isometry on states supported inside the window; for
/// wider support it is a projection and the output is not renormalized.
pub fn to_parity_basis(state: &StateVector, cfg: &LatticeConfig, window: usize) -> Result<StateVector> {
    debug_assert_eq!(state.basis, Basis::Bloch);
    let n = cfg.n_sites;
    if state.amplitudes.len() != n {
        return Err(Error::BasisChange(format!(
            "state dimension {} does not match lattice size {}",
            state.amplitudes.len(),
            n
        )));
    }
    let ki = cfg.k_reduced();
    let m = window as i64;
    // The two momentum groups must not overlap, else the map double counts.
    if 2 * m + 1 > (2 * ki).rem_euclid(n as i64).min((-2 * ki).rem_euclid(n as i64)) {
        return Err(Error::BasisChange(format!(
            "window M = {m} overlaps the two momentum groups around ±k_i = ±{ki} on N = {n}"
        )));
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let span = (2 * window + 1) as usize;
    let mut amp = vec![Complex64::new(0.0, 0.0); 2 * span];
    for (i, nn) in (-m..=m).enumerate() {
        let r = state.bloch_component(ki + nn);
        let l = state.bloch_component(-ki - nn);
        amp[i] = (r + l) * inv_sqrt2; // A_n^+
        amp[span + i] = (r - l) * inv_sqrt2; // A_n^-
    }
    Ok(StateVector { basis: Basis::APlusMinus { window }, amplitudes: amp })
}

/// Embed a parity-basis state back into the full Bloch basis.
pub fn from_parity_basis(state: &StateVector, cfg: &LatticeConfig) -> Result<StateVector> {
    let window = match state.basis {
        Basis::APlusMinus { window } => window,
        _ => return Err(Error::BasisChange("state is not in the parity basis".into())),
    };
    let n = cfg.n_sites;
    let ki = cfg.k_reduced();
    let m = window as i64;
    let span = 2 * window + 1;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut amp = vec![Complex64::new(0.0, 0.0); n];
    for (i, nn) in (-m..=m).enumerate() {
        let plus = state.amplitudes[i];
        let minus = state.amplitudes[span + i];
        let r = (plus + minus) * inv_sqrt2;
        let l = (plus - minus) * inv_sqrt2;
        amp[bloch_position(reduce_bloch_index(ki + nn, n), n)] += r;
        amp[bloch_position(reduce_bloch_index(-ki - nn, n), n)] += l;
    }
    Ok(StateVector { basis: Basis::Bloch, amplitudes: amp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::bloch_amplitude;
    use proptest::prelude::*;

    fn cfg16() -> LatticeConfig {
        LatticeConfig::new(16, 4, 1.0, 0).unwrap()
    }

    #[test]
    fn wannier_to_bloch_uniform() {
        // |l=0> has uniform Bloch amplitudes 1/sqrt(N)... in our convention
        // c_k = <k|l=0> = e^{-iq*0}/sqrt(N) = 1/sqrt(N).
        let n = 16;
        let s = StateVector::wannier_state(0, n);
        let b = wannier_to_bloch(&s);
        for a in b.amplitudes() {
            assert!((a - Complex64::new(1.0 / (n as f64).sqrt(), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn bloch_state_to_wannier_is_plane_wave() {
        let n = 16;
        let k = 3i64;
        let s = StateVector::bloch_state(k, n);
        let w = bloch_to_wannier(&s);
        for l in 0..n {
            assert!((w.amplitudes()[l] - bloch_amplitude(l, k, n)).norm() < 1e-12);
        }
    }

    #[test]
    fn initial_state_parity_split() {
        // |k_i> -> amplitude 1/sqrt(2) on A_0^+ and A_0^-
        let cfg = cfg16();
        let s = StateVector::bloch_state(cfg.k_reduced(), 16);
        let p = to_parity_basis(&s, &cfg, 2).unwrap();
        let span = 5;
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..2 * span {
            let expect = if i == 2 || i == span + 2 { inv_sqrt2 } else { 0.0 };
            assert!((p.amplitudes()[i] - Complex64::new(expect, 0.0)).norm() < 1e-14, "i={i}");
        }
        assert!((p.norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn parity_window_overlap_rejected() {
        let cfg = LatticeConfig::new(16, 2, 1.0, 0).unwrap();
        // groups around +-2 overlap already for M = 2
        assert!(to_parity_basis(&StateVector::bloch_state(2, 16), &cfg, 2).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn wannier_bloch_round_trip(res in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16)) {
            let mut amp: Vec<Complex64> = res.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
            let norm = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-3);
            for a in amp.iter_mut() { *a /= norm; }
            let s = StateVector::new(Basis::Wannier, amp).unwrap();
            let b = wannier_to_bloch(&s);
            prop_assert!((b.norm() - 1.0).abs() < 1e-12);
            let back = bloch_to_wannier(&b);
            prop_assert!(back.max_abs_diff(&s) < 1e-12);
        }

        #[test]
        fn parity_round_trip(res in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 10)) {
            // random state supported on the M=2 window around +-k_i
            let cfg = cfg16();
            let ki = cfg.k_reduced();
            let mut amp = vec![Complex64::new(0.0, 0.0); 16];
            for (i, nn) in (-2i64..=2).enumerate() {
                amp[bloch_position(reduce_bloch_index(ki + nn, 16), 16)] = Complex64::new(res[i].0, res[i].1);
                amp[bloch_position(reduce_bloch_index(-ki - nn, 16), 16)] = Complex64::new(res[5 + i].0, res[5 + i].1);
            }
            let norm = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-3);
            for a in amp.iter_mut() { *a /= norm; }
            let s = StateVector::new(Basis::Bloch, amp).unwrap();
            let p = to_parity_basis(&s, &cfg, 2).unwrap();
            prop_assert!((p.norm() - 1.0).abs() < 1e-12);
            let back = from_parity_basis(&p, &cfg).unwrap();
            prop_assert!(back.max_abs_diff(&s) < 1e-12);
        }
    }
}
