//! Truncated torus log-partition functions stop changing once the width clears the order.

use dimred::gas::{torus_log_partition, GasModel, DEFAULT_WIDTH_BUDGET};

fn main() {
    let order = 6;
    for model in [GasModel::dimers(), GasModel::hard_squares(), GasModel::hard_hexagons()] {
        let stable = model.min_width(order);
        let mut previous = None;
        for width in (order - 2)..=(stable + 1) {
            let per_site = torus_log_partition(&model, width, order, DEFAULT_WIDTH_BUDGET).unwrap();
            let same = previous.as_ref() == Some(&per_site);
            println!("{} W = {width:>2}  [z^{order}] = {:<14} {}", model.name(), per_site.coeff(order), if same { "same" } else { "" });
            previous = Some(per_site);
        }
    }
}
