//! Convergence of the finite-M truncated model toward the closed form.
//!
//! Builds the (2M + 1)-level linearized Hamiltonian for a sweep of truncation
//! sizes at fixed g/spacing and measures the worst deviation of |psi0|^2 from
//! the closed form over one period. The deviation falls off like 1/M. Also
//! prints the admissible truncation window for a concrete lattice.
//!
//! Run with: cargo run --example truncated_convergence

use ringquench::truncated::{build_truncated, evolve_truncated, m_window_bounds, psi0_deviation_one_period};
use ringquench::{IdealModelParams, LatticeConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = IdealModelParams::from_g_delta(0.5, 1.0)?;
    println!("g/spacing = 0.5, T = {:.4}", params.heisenberg_time);

    println!("\nmax |psi0(M)|^2 deviation from the closed form over one period:");
    for m in [5usize, 10, 20, 40, 80, 160] {
        let dev = psi0_deviation_one_period(&params, m, 2001)?;
        println!("  M = {m:>3}: {dev:.4}  (dev * M = {:.3})", dev * m as f64);
    }

    // the trajectory itself: S plateaus inside periods, transits at boundaries
    let model = build_truncated(&params, 10)?;
    let traj = evolve_truncated(&model, 3.0 * params.heisenberg_time, 600)?;
    println!("\nM = 10 collective sum S at mid-period and near the boundaries:");
    for frac in [0.5, 0.98, 1.02, 1.5, 2.5] {
        let i = traj
            .times
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let t0 = frac * params.heisenberg_time;
                (a.1 - t0).abs().partial_cmp(&(b.1 - t0).abs()).unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        let s = traj.s_values[i];
        println!(
            "  t = {:.2}T: S = {:+.4} {:+.4}i  |S| = {:.4}",
            traj.times[i] / params.heisenberg_time,
            s.re,
            s.im,
            s.norm()
        );
    }

    let cfg = LatticeConfig::new(301, 75, 2.0, 0)?;
    let window = m_window_bounds(&cfg, 0.05)?;
    println!(
        "\nFor N = 301, k = 75, U = 2 the truncation window at 5% accuracy is M in [{}, {}]",
        window.m_min, window.m_max
    );
    Ok(())
}
