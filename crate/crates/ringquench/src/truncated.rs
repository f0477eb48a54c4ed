//! Finite truncation of the quenched ring in the even-parity sector:
//! `2M+1` equally spaced levels `nΔ`, `n ∈ [−M, M]`, with every pair of
//! levels coupled at strength `2g` (the diagonal included). Its dynamics
//! converges to the closed-form solution of the infinite-level model as `M`
//! grows, and the rate of that convergence is what bounds the usable window.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ideal;
use crate::lattice::{derive_params, dispersion, IdealModelParams, LatticeConfig};

/// The truncated even-sector Hamiltonian `H(n1, n2) = n1 Δ δ_{n1,n2} + 2g`.
#[derive(Debug, Clone)]
pub struct TruncatedModel {
    pub m_levels: usize,
    pub g: f64,
    pub delta: f64,
    matrix: DMatrix<f64>,
}

/// Build the truncated model for a window of `m` levels on each side.
pub fn build_truncated(params: &IdealModelParams, m: usize) -> Result<TruncatedModel> {
    if m < 1 {
        return Err(Error::InvalidConfig("truncation window M must be at least 1".into()));
    }
    let dim = 2 * m + 1;
    let two_g = 2.0 * params.g;
    let mut h = DMatrix::<f64>::from_element(dim, dim, two_g);
    for (i, n) in (-(m as i64)..=m as i64).enumerate() {
        h[(i, i)] += n as f64 * params.delta;
    }
    Ok(TruncatedModel { m_levels: m, g: params.g, delta: params.delta, matrix: h })
}

impl TruncatedModel {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        2 * self.m_levels + 1
    }

    /// Row/column index of level `n`.
    pub fn index_of(&self, n: i64) -> usize {
        (n + self.m_levels as i64) as usize
    }

    pub fn heisenberg_time(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.delta
    }
}

/// Amplitudes `ψ_n(t)` on the truncated window together with the collective
/// sum `S(t) = Σ_n ψ_n(t)`.
#[derive(Debug, Clone)]
pub struct PsiTrajectory {
    pub times: Vec<f64>,
    /// One `2M+1` amplitude vector per sample, ordered `n = −M..M`.
    pub psi: Vec<Vec<Complex64>>,
    pub s_values: Vec<Complex64>,
    pub m_levels: usize,
}

impl PsiTrajectory {
    /// Amplitude of level `n` at sample `i`.
    pub fn psi_n(&self, i: usize, n: i64) -> Complex64 {
        self.psi[i][(n + self.m_levels as i64) as usize]
    }

    /// Trajectory of `ψ_0`.
    pub fn psi0(&self) -> Vec<Complex64> {
        (0..self.times.len()).map(|i| self.psi_n(i, 0)).collect()
    }
}

/// Evolve the truncated model from `ψ_n(0) = δ_{n,0}` over a uniform grid of
/// `samples` points on `[0, t_final]`, by eigendecomposition of the dense
/// symmetric matrix (unitary at every sample).
pub fn evolve_truncated(model: &TruncatedModel, t_final: f64, samples: usize) -> Result<PsiTrajectory> {
    if samples < 2 {
        return Err(Error::InvalidConfig("need at least 2 samples".into()));
    }
    let dim = model.dim();
    let eig = model.matrix.clone().symmetric_eigen();
    // initial condition: unit amplitude on n = 0
    let psi0 = DVector::<f64>::from_fn(dim, |i, _| if i == model.index_of(0) { 1.0 } else { 0.0 });
    let coeffs = eig.eigenvectors.transpose() * psi0;
    let vectors = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));

    let times = crate::series::time_grid(t_final, samples);
    let mut psi = Vec::with_capacity(samples);
    let mut s_values = Vec::with_capacity(samples);
    for &t in &times {
        let phased = DVector::from_iterator(
            dim,
            coeffs
                .iter()
                .zip(eig.eigenvalues.iter())
                .map(|(&c, &e)| Complex64::from_polar(1.0, -e * t) * c),
        );
        let v: DVector<Complex64> = &vectors * phased;
        let norm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-8 {
            return Err(Error::Numerical(format!(
                "truncated evolution lost sector norm: {norm_sq} at t = {t}"
            )));
        }
        let s: Complex64 = v.iter().sum();
        psi.push(v.as_slice().to_vec());
        s_values.push(s);
    }
    Ok(PsiTrajectory { times, psi, s_values, m_levels: model.m_levels })
}

/// Maximum deviation of the truncated `ψ_0` from the closed-form limit over
/// one revival period.
pub fn psi0_deviation_one_period(params: &IdealModelParams, m: usize, samples: usize) -> Result<f64> {
    let model = build_truncated(params, m)?;
    let traj = evolve_truncated(&model, params.heisenberg_time, samples)?;
    let mut max_dev = 0.0f64;
    for (i, &t) in traj.times.iter().enumerate() {
        let ideal = ideal::psi0_closed_form(params, t);
        max_dev = max_dev.max((traj.psi_n(i, 0) - ideal).norm());
    }
    Ok(max_dev)
}

/// Admissible range for the truncation window on a concrete lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MWindow {
    /// Smallest `M` whose `ψ_0` trajectory stays within the target accuracy
    /// of the infinite-level closed form over one period (measured
    /// empirically). Depends on `g/Δ` only, hence N-independent.
    pub m_min: usize,
    /// Largest `M` for which the level-spacing distortion from the curvature
    /// of the dispersion stays below `Δ/2` across the window:
    /// `|ε''(q_i)| M (2π/N)² < Δ/2`, falling back to the cubic term
    /// `|ε'''(q_i)| M² (2π/N)³ / 2 < Δ/2` where `ε''(q_i)` vanishes. Either
    /// way the bound grows linearly with the lattice size. Also clamped so
    /// the two momentum groups around `±k_i` cannot overlap.
    pub m_max: usize,
}

const M_SEARCH_CAP: usize = 256;

/// Determine the admissible truncation window for `cfg`. Errors with a
/// diagnostic when no window exists (`m_min > m_max`): the lattice is too
/// small for the infinite-level limit to describe it at this accuracy.
pub fn m_window_bounds(cfg: &LatticeConfig, target_accuracy: f64) -> Result<MWindow> {
    let params = derive_params(cfg)?;
    let samples = 256;
    let dev = |m: usize| psi0_deviation_one_period(&params, m, samples);

    // deviation shrinks with M: find a bracket by doubling, then bisect for
    // the smallest passing M
    let mut hi = 1usize;
    let mut lo = 0usize; // exclusive lower bound (known failing)
    loop {
        if dev(hi)? < target_accuracy {
            break;
        }
        lo = hi;
        hi *= 2;
        if hi > M_SEARCH_CAP {
            return Err(Error::Numerical(format!(
                "no M <= {M_SEARCH_CAP} reaches accuracy {target_accuracy}; g/delta = {:.3} too large",
                params.g / params.delta
            )));
        }
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if dev(mid)? < target_accuracy {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let m_min = hi;

    let q = cfg.q_init();
    let n = cfg.n_sites as f64;
    let dq = 2.0 * std::f64::consts::PI / n;
    let d2 = second_derivative(dispersion, q);
    let d3 = third_derivative(dispersion, q);
    let half_delta = params.delta / 2.0;
    let m_curvature = if d2.abs() > 1e-6 {
        (half_delta / (d2.abs() * dq * dq)).floor() as usize
    } else {
        (half_delta * 2.0 / (d3.abs() * dq * dq * dq)).sqrt().floor() as usize
    };
    // geometric clamp: windows of half-width M around +-k_i must stay disjoint
    let ki = cfg.k_reduced();
    let dist = (2 * ki).rem_euclid(cfg.n_sites as i64).min((-2 * ki).rem_euclid(cfg.n_sites as i64));
    let m_geom = ((dist - 1) / 2).max(0) as usize;
    let m_max = m_curvature.min(m_geom);

    if m_min > m_max {
        return Err(Error::Numerical(format!(
            "truncation window empty: m_min = {m_min} exceeds linearization bound m_max = {m_max} \
             (N = {} too small for this U, q_i)",
            cfg.n_sites
        )));
    }
    Ok(MWindow { m_min, m_max })
}

fn second_derivative(f: fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-4;
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

fn third_derivative(f: fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-3;
    (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(g_over_delta: f64, delta: f64) -> IdealModelParams {
        IdealModelParams::from_g_delta(g_over_delta * delta, delta).unwrap()
    }

    #[test]
    fn matrix_entries_match_definition() {
        let p = params(0.125, 1.0);
        let m = build_truncated(&p, 2).unwrap();
        let two_g = 2.0 * p.g;
        for n1 in -2i64..=2 {
            for n2 in -2i64..=2 {
                let want = two_g + if n1 == n2 { n1 as f64 * p.delta } else { 0.0 };
                let got = m.matrix()[(m.index_of(n1), m.index_of(n2))];
                assert!((got - want).abs() < 1e-15, "({n1},{n2}): {got} vs {want}");
            }
        }
    }

    #[test]
    fn free_spectrum_is_equally_spaced() {
        let p = params(0.0, 0.7);
        let m = build_truncated(&p, 1).unwrap();
        let eig = m.matrix().clone().symmetric_eigen();
        let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in ev.iter().zip(&[-0.7, 0.0, 0.7]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn free_psi0_is_constant() {
        let p = params(0.0, 1.0);
        let model = build_truncated(&p, 5).unwrap();
        let traj = evolve_truncated(&model, 3.0 * p.heisenberg_time, 101).unwrap();
        for v in traj.psi0() {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn s_consistency_and_norm() {
        let p = params(0.5, 1.0);
        let model = build_truncated(&p, 10).unwrap();
        let traj = evolve_truncated(&model, 10.0 * p.heisenberg_time, 400).unwrap();
        for (i, s) in traj.s_values.iter().enumerate() {
            let recomputed: Complex64 = traj.psi[i].iter().sum();
            assert!((s - recomputed).norm() < 1e-10);
            let norm_sq: f64 = traj.psi[i].iter().map(|c| c.norm_sqr()).sum();
            assert!((norm_sq - 1.0).abs() < 1e-8);
        }
        assert!((traj.psi_n(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn reduced_time_universality() {
        // same g/delta, different absolute scales: psi0 vs t/T identical
        let p1 = params(0.25, 1.0);
        let p2 = params(0.25, 0.0625);
        let m1 = build_truncated(&p1, 8).unwrap();
        let m2 = build_truncated(&p2, 8).unwrap();
        let t1 = evolve_truncated(&m1, 2.0 * p1.heisenberg_time, 137).unwrap();
        let t2 = evolve_truncated(&m2, 2.0 * p2.heisenberg_time, 137).unwrap();
        for (a, b) in t1.psi0().iter().zip(t2.psi0()) {
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn convergence_toward_closed_form() {
        let p = params(0.5, 1.0);
        let d5 = psi0_deviation_one_period(&p, 5, 200).unwrap();
        let d10 = psi0_deviation_one_period(&p, 10, 200).unwrap();
        let d20 = psi0_deviation_one_period(&p, 20, 200).unwrap();
        assert!(d10 <= d5 + 1e-12, "{d10} vs {d5}");
        assert!(d20 <= d10 + 1e-12, "{d20} vs {d10}");
    }

    #[test]
    fn m_min_independent_of_n() {
        // same U and same q_i, so the same g/delta; only the lattice grows
        let w1 = m_window_bounds(&LatticeConfig::new(101, 25, 1.0, 0).unwrap(), 0.05).unwrap();
        let w2 = m_window_bounds(&LatticeConfig::new(303, 75, 1.0, 0).unwrap(), 0.05).unwrap();
        assert_eq!(w1.m_min, w2.m_min);
        // linearization bound grows with N
        assert!(w2.m_max > w1.m_max);
    }

    #[test]
    fn m_max_scales_linearly_in_n_at_inflection() {
        // q_i = pi/2 exactly: quadratic term vanishes, cubic fallback governs
        let w1 = m_window_bounds(&LatticeConfig::new(100, 25, 1.0, 0).unwrap(), 0.05).unwrap();
        let w2 = m_window_bounds(&LatticeConfig::new(200, 50, 1.0, 0).unwrap(), 0.05).unwrap();
        let ratio = w2.m_max as f64 / w1.m_max as f64;
        assert!(ratio > 1.7 && ratio < 2.3, "m_max {} -> {}", w1.m_max, w2.m_max);
        assert!(w1.m_min <= w1.m_max);
    }

    #[test]
    fn window_empty_is_diagnosed() {
        // tiny lattice, strong coupling: no admissible M
        let err = m_window_bounds(&LatticeConfig::new(12, 3, 8.0, 0).unwrap(), 0.01);
        assert!(err.is_err());
    }

    #[test]
    fn m_max_quadratic_bound_away_from_inflection() {
        // q_i far from pi/2 so epsilon'' dominates
        let cfg = LatticeConfig::new(300, 30, 1.0, 0).unwrap();
        let q = cfg.q_init();
        let p = derive_params(&cfg).unwrap();
        let w = m_window_bounds(&cfg, 0.1).unwrap();
        let dq = 2.0 * PI / 300.0;
        let bound = (p.delta / 2.0 / (2.0 * q.cos().abs() * dq * dq)).floor() as usize;
        assert_eq!(w.m_max, bound.min((2 * 30 - 1) / 2));
    }
}
