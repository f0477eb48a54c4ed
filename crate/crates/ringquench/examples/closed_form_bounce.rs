//! Closed-form solution of the reduced model: the survival amplitude bounces
//! around a circle in the complex plane, shrinking by a fixed phase per period.
//!
//! Prints the per-period value of S = psi0 at the revivals, the envelope
//! (1 + cos(omega t))/2 that the survival probability touches at each cusp,
//! and the straight-line segments of one period of psi0(t).
//!
//! Run with: cargo run --example closed_form_bounce

use ringquench::ideal::{
    bounce_trajectory, decompose_period, psi0_closed_form, survival_reflection_closed_form,
};
use ringquench::IdealModelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // gT = 1 puts the per-period phase at theta = pi/2: tips cycle 1, 1/2, 0
    let params = IdealModelParams::from_g_delta(0.5, std::f64::consts::TAU)?;
    let t_h = params.heisenberg_time;
    println!(
        "g/spacing = {:.3}, T = {:.4}, gT = {:.4}, theta = {:.4} rad, omega = {:.4}",
        params.g / params.delta,
        t_h,
        params.g_t(),
        params.theta,
        params.omega
    );

    println!("\nS at the revivals (modulus fixed at 1/sqrt(1 + (gT)^2), phase -r theta):");
    for (r, s) in bounce_trajectory(&params, 8).iter().enumerate() {
        println!(
            "  r = {r}: S = {:+.4} {:+.4}i  |S| = {:.4}  arg = {:+.4}",
            s.re,
            s.im,
            s.norm(),
            s.arg()
        );
    }

    println!("\nCusp tips against the envelope (1 + cos(omega r T))/2:");
    for r in 0..=8 {
        let t = r as f64 * t_h;
        let (p_i, p_r) = survival_reflection_closed_form(&params, t);
        let env = (1.0 + (params.omega * t).cos()) / 2.0;
        println!("  r = {r}: P_i = {:.4}  envelope = {:.4}  P_r = {:.4}", p_i, env, p_r);
    }

    println!("\npsi0 along one period (a straight chord between revivals):");
    for i in 0..=10 {
        let t = 2.0 * t_h + i as f64 * t_h / 10.0;
        let psi0 = psi0_closed_form(&params, t);
        let d = decompose_period(t, t_h);
        println!(
            "  t = {:.2}T: psi0 = {:+.4} {:+.4}i  (period index r = {}, s = {:.3})",
            t / t_h,
            psi0.re,
            psi0.im,
            d.r,
            d.s
        );
    }
    Ok(())
}
