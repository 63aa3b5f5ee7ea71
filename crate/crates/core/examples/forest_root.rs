//! The rooted-forest formula on random test functions of both families.

use dimred::forest::{check_formula, Family, TestFunction};

fn main() {
    for family in [Family::PureExponential, Family::QuadraticExponential] {
        for n in 1..=3 {
            let f = TestFunction::random(family, n, 11).unwrap();
            let report = check_formula(&f, 1e-8).unwrap();
            println!(
                "{family:?} N = {n}: {} forests, sum {:.12}, residual {:.1e}, pass {}",
                report.terms.len(),
                report.sum,
                report.residual,
                report.pass
            );
        }
    }
}
