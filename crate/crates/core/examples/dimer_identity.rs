//! Polymers on the three-neighbor line against the dimer gas on a torus.

use dimred::analysis::closed_form_line3;
use dimred::gas::{dimer_pressure_series, pressure_and_density_tm, GasModel, DEFAULT_WIDTH_BUDGET};
use dimred::lattice::{enumerate_dbp, LatticeModel};

fn main() {
    let order = 10;
    let d = enumerate_dbp(&LatticeModel::line3(), order).unwrap();
    let tm = pressure_and_density_tm(&GasModel::dimers(), order, DEFAULT_WIDTH_BUDGET).unwrap();
    let closed = dimer_pressure_series(order).zddz();
    assert_eq!(tm.density, closed);
    println!("density by {} matches the closed form", tm.method);
    for n in 1..=order {
        let gas = if n % 2 == 1 { tm.density.coeff(n).clone() } else { -tm.density.coeff(n).clone() };
        let ok = gas == d[n - 1] && gas == closed_form_line3(n);
        println!("N = {n:>2}  d_N = {:<10} (-1)^(N+1) rho_N = {gas:<10} {}", d[n - 1], if ok { "ok" } else { "MISMATCH" });
    }
}
