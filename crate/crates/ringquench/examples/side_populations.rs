//! Populations of the side levels n = 1, 2, 3 next to the initial Bloch state.
//!
//! Each side level oscillates as |psi_n|^2 / 4 with amplitude proportional to
//! 1/n^2, vanishing at every revival. The exact lattice populations are
//! compared with the closed form over a few periods.
//!
//! Run with: cargo run --example side_populations

use ringquench::ideal::population_n;
use ringquench::run::{exact_quench_series, period_grid};
use ringquench::LatticeConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = LatticeConfig::new(201, 50, 12.0, 0)?;
    let side_n = [1i64, 2, 3];
    let (params, times) = period_grid(&cfg, 3.0, 100)?;
    let t_h = params.heisenberg_time;
    let qs = exact_quench_series(&cfg, &times, &side_n)?;

    println!("N = {}, k = {}, U = {}", cfg.n_sites, cfg.k_init, cfg.defect_strength);
    for (j, &n) in side_n.iter().enumerate() {
        let exact = &qs.p_n[j].1;
        let max_err = times
            .iter()
            .zip(exact)
            .map(|(&t, &v)| (v - population_n(&params, n, t)).abs())
            .fold(0.0f64, f64::max);
        let amp = exact.iter().fold(0.0f64, |a, &v| a.max(v));
        println!(
            "  n = {n}: peak population {amp:.5}, peak * n^2 = {:.5}, max error vs closed form {max_err:.5}",
            amp * (n * n) as f64
        );
    }

    println!("\nP_1 along the first period (exact | closed form):");
    for i in (0..=100).step_by(10) {
        let t = times[i];
        println!(
            "  t = {:.2}T: {:.5} | {:.5}",
            t / t_h,
            qs.p_n[0].1[i],
            population_n(&params, 1, t)
        );
    }
    Ok(())
}
