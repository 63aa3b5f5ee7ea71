//! Exact weighted counts of directed branched polymers on the three preset lattices.

use dimred::lattice::{count_unweighted, enumerate_dbp, LatticeModel};

fn main() {
    for (model, order) in [(LatticeModel::line3(), 10), (LatticeModel::square5(), 7), (LatticeModel::tri7(), 7)] {
        let d = enumerate_dbp(&model, order).expect("within budget");
        let shapes = count_unweighted(&model, order).expect("within budget");
        println!("{} ({}D)", model.name(), model.dimension());
        for (n, (dn, count)) in d.iter().zip(&shapes).enumerate() {
            println!("  N = {:>2}  d_N = {dn:<16} polymers = {count}", n + 1);
        }
    }
}
