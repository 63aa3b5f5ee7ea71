//! Growth constant and exponent estimates in two and three dimensions.

use dimred::analysis::{closed_form_line3_series, estimate_growth, exponent_report};
use dimred::gas::{pressure_and_density_tm, GasModel, DEFAULT_WIDTH_BUDGET};

fn main() {
    let line = closed_form_line3_series(40);
    let growth = estimate_growth(&line).unwrap();
    println!("line3: mu = {:.6} +- {:.1e}", growth.mu, growth.error);
    let report = exponent_report("line3", "closed-form", &line, 2, Some(4.0), None).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let hex = pressure_and_density_tm(&GasModel::hard_hexagons(), 14, DEFAULT_WIDTH_BUDGET).unwrap();
    let d: Vec<_> = (1..=14).map(|n| if n % 2 == 1 { hex.density.coeff(n).clone() } else { -hex.density.coeff(n).clone() }).collect();
    let phi5 = (11.0 + 5.0 * 5f64.sqrt()) / 2.0;
    let report = exponent_report("tri7", "hard-hexagons", &d, 3, Some(phi5), None).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
