//! High-level drivers producing sampled observable trajectories for a quench
//! scenario, one per computation route. These back both the command-line
//! front end and the cross-method comparisons.

use crate::error::Result;
use crate::exact::{
    self, build_hamiltonian, evolve_with_decomposition, Representation, SpectralDecomposition,
};
use crate::ideal;
use crate::lattice::{derive_params, IdealModelParams, LatticeConfig};
use crate::series::TimeSeries;

/// Survival, reflection, right-mover, and side-pair population trajectories.
#[derive(Debug, Clone)]
pub struct QuenchSeries {
    pub times: Vec<f64>,
    pub p_i: Vec<f64>,
    pub p_r: Vec<f64>,
    pub p_right: Vec<f64>,
    /// Population on `|k_i + n|⟩` for each requested `n ≠ 0`.
    pub p_n: Vec<(i64, Vec<f64>)>,
}

impl QuenchSeries {
    pub fn series(&self, which: &str) -> Result<TimeSeries> {
        let values = match which {
            "P_i" => self.p_i.clone(),
            "P_r" => self.p_r.clone(),
            "P_R" => self.p_right.clone(),
            other => {
                let n: i64 = other
                    .strip_prefix("P_")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| crate::error::Error::Series(format!("unknown observable {other:?}")))?;
                self.p_n
                    .iter()
                    .find(|(m, _)| *m == n)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| crate::error::Error::Series(format!("P_{n} was not computed")))?
            }
        };
        TimeSeries::new(self.times.clone(), values, which)
    }
}

/// Exact N-level trajectories by spectral propagation.
pub fn exact_quench_series(cfg: &LatticeConfig, times: &[f64], side_n: &[i64]) -> Result<QuenchSeries> {
    let h = build_hamiltonian(cfg, Representation::RealSpace)?;
    let dec = SpectralDecomposition::new(&h)?;
    let psi0 = exact::initial_state(cfg);
    let states = evolve_with_decomposition(&dec, &psi0, times)?;
    let ki = cfg.k_reduced();
    let mut out = QuenchSeries {
        times: times.to_vec(),
        p_i: Vec::with_capacity(times.len()),
        p_r: Vec::with_capacity(times.len()),
        p_right: Vec::with_capacity(times.len()),
        p_n: side_n.iter().map(|&n| (n, Vec::with_capacity(times.len()))).collect(),
    };
    for st in &states {
        let b = crate::state::wannier_to_bloch(st);
        let (pi, pr) = exact::survival_and_reflection(&b, cfg);
        out.p_i.push(pi);
        out.p_r.push(pr);
        out.p_right.push(exact::right_mover_population(&b, cfg));
        for (n, v) in out.p_n.iter_mut() {
            v.push(b.bloch_component(ki + *n).norm_sqr());
        }
    }
    Ok(out)
}

/// Closed-form trajectories of the infinite-level limit on the same grid.
pub fn ideal_quench_series(params: &IdealModelParams, times: &[f64], side_n: &[i64]) -> QuenchSeries {
    let mut out = QuenchSeries {
        times: times.to_vec(),
        p_i: Vec::with_capacity(times.len()),
        p_r: Vec::with_capacity(times.len()),
        p_right: Vec::with_capacity(times.len()),
        p_n: side_n.iter().map(|&n| (n, Vec::with_capacity(times.len()))).collect(),
    };
    for &t in times {
        let (pi, pr) = ideal::survival_reflection_closed_form(params, t);
        out.p_i.push(pi);
        out.p_r.push(pr);
        out.p_right.push(ideal::right_mover_closed_form(params, t));
        for (n, v) in out.p_n.iter_mut() {
            v.push(ideal::population_n(params, *n, t));
        }
    }
    out
}

/// Convenience: derive parameters and build the uniform grid covering
/// `n_periods` revival periods at `samples_per_period` samples each.
pub fn period_grid(cfg: &LatticeConfig, n_periods: f64, samples_per_period: usize) -> Result<(IdealModelParams, Vec<f64>)> {
    let params = derive_params(cfg)?;
    let t_max = n_periods * params.heisenberg_time;
    let samples = ((n_periods * samples_per_period as f64).round() as usize).max(1) + 1;
    Ok((params, crate::series::time_grid(t_max, samples)))
}
