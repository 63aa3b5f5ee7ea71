use dimred::analysis::{closed_form_line3, verify_identity, ModelPair, VerifyOptions};
use dimred::gas::{density_via_occupancy, gas_report, GasModel, DEFAULT_WIDTH_BUDGET};
use dimred::lattice::{enumerate_dbp, enumerate_with, EnumerationOptions, LatticeModel, Strategy};
use dimred::series::Rational;

#[test]
fn every_lattice_pair_at_full_budget() {
    for model in LatticeModel::presets() {
        let k = model.default_budget();
        let pair = ModelPair::by_name(model.name()).unwrap();
        let report = verify_identity(&pair, k, &VerifyOptions::default()).unwrap();
        assert!(report.pass, "{} fails at order {k}: {:?}", model.name(), report.rows.iter().find(|r| !r.equal));
        assert_eq!(report.rows.len(), k);
    }
}

#[test]
fn line3_enumeration_matches_closed_form_everywhere() {
    let d = enumerate_dbp(&LatticeModel::line3(), 14).unwrap();
    for (i, dn) in d.iter().enumerate() {
        assert_eq!(*dn, closed_form_line3(i + 1));
    }
}

#[test]
fn tree_walk_agrees_with_level_transfer() {
    for (model, k) in [(LatticeModel::line3(), 9), (LatticeModel::square5(), 7), (LatticeModel::tri7(), 7)] {
        let walk = EnumerationOptions { strategy: Strategy::TreeWalk, ..Default::default() };
        assert_eq!(
            enumerate_with(&model, k, &walk).unwrap(),
            enumerate_with(&model, k, &EnumerationOptions::default()).unwrap(),
            "{}",
            model.name()
        );
    }
}

#[test]
fn occupancy_route_matches_log_partition_route() {
    for model in [GasModel::dimers(), GasModel::hard_squares(), GasModel::hard_hexagons()] {
        let k = 6;
        let occ = density_via_occupancy(&model, k + 2, k).unwrap();
        let tm = gas_report(&model, k, DEFAULT_WIDTH_BUDGET).unwrap().density;
        assert_eq!(occ, tm, "{}", model.name());
    }
}

#[test]
fn custom_neighbor_set_reduces_to_its_own_gas() {
    // links reach two sites either way; the gas excludes the same range
    let model = LatticeModel::from_json("line5", "[[-2],[-1],[0],[1],[2]]").unwrap();
    let d = enumerate_dbp(&model, 7).unwrap();
    let rho = gas_report(&GasModel::partner(&model), 7, DEFAULT_WIDTH_BUDGET).unwrap().density;
    for (i, dn) in d.iter().enumerate() {
        let n = i + 1;
        let flipped: Rational = if n % 2 == 1 { rho.coeff(n).clone() } else { -rho.coeff(n).clone() };
        assert_eq!(*dn, flipped, "N = {n}");
    }
    assert_eq!(d[1], Rational::from_integer(5.into()));
}
