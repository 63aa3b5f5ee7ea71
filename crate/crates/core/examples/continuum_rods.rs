//! Continuum polymer coefficients for diamonds and balls against N^N/N!.

use dimred::continuum::{coefficient_mc, coefficient_quadrature, hard_rod_target, ContinuumShape};
use dimred::series::rational_to_f64;

fn main() {
    for shape in [ContinuumShape::Diamond, ContinuumShape::Ball] {
        println!("{}", shape.name());
        for n in 1..=3 {
            let q = coefficient_quadrature(shape, n, 1e-6).unwrap();
            println!("  N = {n}  quadrature {:.8} +- {:.1e}  target {}", q.value, q.error, hard_rod_target(n));
        }
        for n in 4..=5 {
            let mc = coefficient_mc(shape, n, 400_000, 7).unwrap();
            let target = rational_to_f64(&hard_rod_target(n));
            println!(
                "  N = {n}  monte carlo {:.4} +- {:.4}  target {target:.4}  ({:+.2} sigma)",
                mc.estimate,
                mc.stderr,
                (mc.estimate - target) / mc.stderr
            );
        }
    }
}
