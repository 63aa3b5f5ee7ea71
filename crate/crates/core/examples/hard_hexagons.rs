//! Triangular-lattice polymers against hard hexagons, through the identity checker.

use dimred::analysis::{verify_identity, ModelPair, VerifyOptions};

fn main() {
    let pair = ModelPair::by_name("tri7").unwrap();
    let report = verify_identity(&pair, 7, &VerifyOptions::default()).unwrap();
    println!("{} to order {} via {}", report.pair, report.order, report.gas_method);
    println!("{}", serde_json::to_string_pretty(&report.rows).unwrap());
    println!("pass: {}", report.pass);
}
