//! Numerical check of the lattice sum behind probability conservation:
//! the symmetric sum of sin^2(n alpha) / (n alpha)^2 over all n, with the
//! n = 0 term counted as 1, equals pi / alpha for 0 < alpha < pi.
//!
//! Run with: cargo run --example sinc_identity

use ringquench::ideal::sinc_sum_identity;

fn main() {
    for alpha in [0.5f64, 1.0, std::f64::consts::FRAC_PI_2, 2.5] {
        let target = std::f64::consts::PI / alpha;
        println!("alpha = {alpha:.6}: target pi/alpha = {target:.10}");
        for n_max in [100usize, 10_000, 1_000_000] {
            let value = sinc_sum_identity(alpha, n_max);
            println!("  n_max = {n_max:>9}: {value:.10}  residual {:+.3e}", value - target);
        }
    }
}
