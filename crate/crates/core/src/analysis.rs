//! Order-by-order comparison of DBP counts with gas densities, and ratio
//! analysis of the resulting series.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::continuum::{coefficient_quadrature, ContinuumError, ContinuumShape};
use crate::gas::{gas_report, GasError, GasModel};
use crate::lattice::{enumerate_with, EnumerationOptions, LatticeError, LatticeModel};
use crate::series::{big_ln, rational_serde, rational_to_f64, rational_to_string, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("unknown pair {0:?} (expected line3:dimer, square5:hard-squares, tri7:hard-hexagons, diamond:hard-rods or ball:hard-rods)")]
    UnknownPair(String),
    #[error("need at least {need} terms, got {got}")]
    TooFewTerms { need: usize, got: usize },
    #[error("sides disagree on the order: DBP side has {dbp}, gas side has {gas}")]
    OrderMismatch { dbp: usize, gas: usize },
    #[error("growth constant must be positive and finite, got {0}")]
    BadMu(f64),
    #[error("series has a zero coefficient at N = {0}")]
    ZeroTerm(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Gas(#[from] GasError),
    #[error(transparent)]
    Continuum(#[from] ContinuumError),
}

/// A DBP model and the gas it reduces to.
#[derive(Clone, Debug)]
pub enum ModelPair {
    Lattice { dbp: LatticeModel, gas: GasModel },
    Continuum { shape: ContinuumShape, gas: GasModel },
}

impl ModelPair {
    /// `"line3:dimer"`, or just the DBP side (`"tri7"`, `"ball"`).
    pub fn by_name(name: &str) -> Result<Self, AnalysisError> {
        let unknown = || AnalysisError::UnknownPair(name.to_string());
        let (left, right) = match name.split_once(':') {
            Some((l, r)) => (l, Some(r)),
            None => (name, None),
        };
        let pair = if let Ok(shape) = ContinuumShape::by_name(left) {
            ModelPair::Continuum { shape, gas: GasModel::hard_rods() }
        } else {
            let dbp = LatticeModel::by_name(left).map_err(|_| unknown())?;
            let gas = GasModel::partner(&dbp);
            ModelPair::Lattice { dbp, gas }
        };
        if let Some(r) = right {
            let named = GasModel::by_name(r).map_err(|_| unknown())?;
            if named != *pair.gas() {
                return Err(unknown());
            }
        }
        Ok(pair)
    }

    pub fn gas(&self) -> &GasModel {
        match self {
            ModelPair::Lattice { gas, .. } | ModelPair::Continuum { gas, .. } => gas,
        }
    }

    pub fn name(&self) -> String {
        match self {
            ModelPair::Lattice { dbp, gas } => format!("{}:{}", dbp.name(), gas.name()),
            ModelPair::Continuum { shape, gas } => format!("{}:{}", shape.name(), gas.name()),
        }
    }
}

/// Left-hand side of a comparison: exact for lattices, numerical in the continuum.
#[derive(Clone, Debug, PartialEq)]
pub enum DbpValue {
    Exact(Rational),
    Approx { value: f64, error: f64 },
}

impl Serialize for DbpValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DbpValue::Exact(r) => s.serialize_str(&rational_to_string(r)),
            DbpValue::Approx { value, .. } => s.serialize_f64(*value),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub dbp: DbpValue,
    /// `(-1)^{N+1} [z^N] ρ`.
    #[serde(with = "rational_serde")]
    pub gas: Rational,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub pair: String,
    pub order: usize,
    pub gas_method: String,
    pub rows: Vec<IdentityRow>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub enumeration: EnumerationOptions,
    pub width_budget: usize,
    /// Quadrature tolerance for continuum pairs.
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { enumeration: EnumerationOptions::default(), width_budget: crate::gas::DEFAULT_WIDTH_BUDGET, tol: 1e-6 }
    }
}

fn sign_flipped(c: &Rational, n: usize) -> Rational {
    if n % 2 == 1 {
        c.clone()
    } else {
        -c.clone()
    }
}

/// Compare `d_N` with `(-1)^{N+1} [z^N] ρ_HC` for `N = 1..=K`.
pub fn verify_identity(pair: &ModelPair, order: usize, opts: &VerifyOptions) -> Result<IdentityReport, AnalysisError> {
    let gas = gas_report(pair.gas(), order, opts.width_budget)?;
    let rho = gas.density;
    let rows: Vec<IdentityRow> = match pair {
        ModelPair::Lattice { dbp, .. } => {
            let d = enumerate_with(dbp, order, &opts.enumeration)?.weighted;
            if d.len() != rho.order() {
                return Err(AnalysisError::OrderMismatch { dbp: d.len(), gas: rho.order() });
            }
            d.into_iter()
                .enumerate()
                .map(|(i, dn)| {
                    let n = i + 1;
                    let g = sign_flipped(rho.coeff(n), n);
                    IdentityRow { n, equal: dn == g, dbp: DbpValue::Exact(dn), gas: g, gap: None, error: None }
                })
                .collect()
        }
        ModelPair::Continuum { shape, .. } => {
            if order > 3 {
                return Err(ContinuumError::QuadratureOrder(order).into());
            }
            (1..=order)
                .map(|n| {
                    let q = coefficient_quadrature(*shape, n, opts.tol)?;
                    let g = sign_flipped(rho.coeff(n), n);
                    let gap = (q.value - rational_to_f64(&g)).abs();
                    Ok(IdentityRow {
                        n,
                        equal: gap <= opts.tol.max(q.error),
                        dbp: DbpValue::Approx { value: q.value, error: q.error },
                        gas: g,
                        gap: Some(gap),
                        error: Some(q.error),
                    })
                })
                .collect::<Result<_, AnalysisError>>()?
        }
    };
    let pass = rows.iter().all(|r| r.equal);
    Ok(IdentityReport { pair: pair.name(), order, gas_method: gas.method.to_string(), rows, pass })
}

/// `(2N-1)!! 2^{N-1} / N!`.
pub fn closed_form_line3(n: usize) -> Rational {
    assert!(n >= 1);
    let mut num = BigInt::one();
    for k in (1..2 * n).step_by(2) {
        num *= k;
    }
    num <<= n - 1;
    let mut den = BigInt::one();
    for k in 2..=n {
        den *= k;
    }
    Rational::new(num, den)
}

pub fn closed_form_line3_series(order: usize) -> Vec<Rational> {
    (1..=order).map(closed_form_line3).collect()
}

/// `|d_N / d_{N-1}|` for `N = 2..=K`.
fn ratios(d: &[Rational]) -> Result<Vec<f64>, AnalysisError> {
    if let Some(i) = d.iter().position(Zero::is_zero) {
        return Err(AnalysisError::ZeroTerm(i + 1));
    }
    Ok(d.windows(2).map(|w| rational_to_f64(&(&w[1] / &w[0]).abs())).collect())
}

/// Aitken Δ² on consecutive triples; a vanishing second difference keeps the raw term.
pub fn aitken(x: &[f64]) -> Vec<f64> {
    x.windows(3)
        .map(|w| {
            let d2 = w[2] - 2.0 * w[1] + w[0];
            let scale = w.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
            if d2.abs() <= 1e-13 * scale {
                w[2]
            } else {
                w[2] - (w[2] - w[1]).powi(2) / d2
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthEstimate {
    /// `r_N` for `N = 2..=K`.
    pub ratios: Vec<f64>,
    /// `N r_N - (N-1) r_{N-1}` for `N = 3..=K`, which removes the `1/N` term.
    pub intercepts: Vec<f64>,
    pub accelerated: Vec<f64>,
    pub mu: f64,
    /// Spread of the last three accelerated values.
    pub error: f64,
}

pub fn estimate_growth(d: &[Rational]) -> Result<GrowthEstimate, AnalysisError> {
    if d.len() < 6 {
        return Err(AnalysisError::TooFewTerms { need: 6, got: d.len() });
    }
    let ratios = ratios(d)?;
    // ratios[i] is r_{i+2}
    let intercepts: Vec<f64> = (1..ratios.len())
        .map(|i| {
            let n = (i + 2) as f64;
            n * ratios[i] - (n - 1.0) * ratios[i - 1]
        })
        .collect();
    let accelerated = aitken(&intercepts);
    let tail = &accelerated[accelerated.len().saturating_sub(3)..];
    let mu = *tail.last().unwrap();
    let error = tail.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v)) - tail.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    Ok(GrowthEstimate { ratios, intercepts, accelerated, mu, error })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThetaMethod {
    /// Least-squares slope of `ln(d_N μ^-N)` against `ln N`.
    LogFit,
    /// `θ_N = N (1 - r_N / μ̂_N)`, Aitken-accelerated.
    RatioAitken,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaEstimate {
    pub theta: f64,
    pub method: ThetaMethod,
    pub mu: f64,
    /// First and last `N` used.
    pub window: (usize, usize),
    /// Change in the estimate when the window is moved back by one term.
    pub error: f64,
    /// `(N, θ_N)` diagnostics.
    pub sequence: Vec<(usize, f64)>,
}

/// Default fit window: the last `max(4, ceil(K/3))` terms.
pub fn default_window(k: usize) -> usize {
    4.max(k.div_ceil(3))
}

fn ln_abs(r: &Rational) -> f64 {
    big_ln(&r.numer().abs()) - big_ln(r.denom())
}

/// Slope of `y` against `x` by least squares.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// `θ` in `d_N ~ μ^N N^-θ`. With `mu` this is a log fit over the tail
/// window; without it, the ratio estimator with an estimated `μ̂_N`.
pub fn estimate_theta(d: &[Rational], mu: Option<f64>, window: Option<usize>) -> Result<ThetaEstimate, AnalysisError> {
    let k = d.len();
    if k < 8 {
        return Err(AnalysisError::TooFewTerms { need: 8, got: k });
    }
    if let Some(i) = d.iter().position(Zero::is_zero) {
        return Err(AnalysisError::ZeroTerm(i + 1));
    }
    match mu {
        Some(mu) => {
            if !(mu > 0.0 && mu.is_finite()) {
                return Err(AnalysisError::BadMu(mu));
            }
            let w = window.unwrap_or_else(|| default_window(k)).clamp(2, k - 1);
            let fit = |last: usize| {
                let ns: Vec<usize> = (last + 1 - w..=last).collect();
                let x: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
                let y: Vec<f64> = ns.iter().map(|&n| ln_abs(&d[n - 1]) - n as f64 * mu.ln()).collect();
                -slope(&x, &y)
            };
            let theta = fit(k);
            let error = (theta - fit(k - 1)).abs();
            let sequence = (2..=k)
                .map(|n| {
                    let r = (ln_abs(&d[n - 1]) - ln_abs(&d[n - 2])).exp();
                    (n, n as f64 * (1.0 - r / mu))
                })
                .collect();
            Ok(ThetaEstimate { theta, method: ThetaMethod::LogFit, mu, window: (k + 1 - w, k), error, sequence })
        }
        None => {
            let g = estimate_growth(d)?;
            // intercepts[i] is μ̂ at N = i + 3, paired with r_N = ratios[i + 1]
            let sequence: Vec<(usize, f64)> = g
                .intercepts
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let n = i + 3;
                    (n, n as f64 * (1.0 - g.ratios[i + 1] / m))
                })
                .collect();
            let raw: Vec<f64> = sequence.iter().map(|p| p.1).collect();
            let acc = aitken(&raw);
            let theta = *acc.last().unwrap();
            let error = (theta - acc[acc.len() - 2]).abs();
            Ok(ThetaEstimate {
                theta,
                method: ThetaMethod::RatioAitken,
                mu: g.mu,
                window: (sequence[sequence.len() - 3].0, k),
                error,
                sequence,
            })
        }
    }
}

/// `γ = 2 - θ`, `α(D) = γ(D+1)` and `σ(D) = 1 - α(D) = θ(D+1) - 1`, for a
/// DBP model in `D+1` dimensions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentTable<T> {
    pub dimension: usize,
    pub theta: T,
    pub gamma: T,
    /// Of the gas in `dimension - 1` dimensions.
    pub alpha: T,
    pub sigma: T,
}

pub fn exponent_table<T>(theta: T, dimension: usize) -> ExponentTable<T>
where
    T: Clone + One + Add<Output = T> + Sub<Output = T>,
{
    let two = T::one() + T::one();
    let gamma = two - theta.clone();
    let alpha = gamma.clone();
    let sigma = T::one() - alpha.clone();
    ExponentTable { dimension, theta, gamma, alpha, sigma }
}

/// Exact `θ` for DBP in two and three dimensions.
pub fn exact_theta(dimension: usize) -> Option<Rational> {
    match dimension {
        2 => Some(Rational::new(1.into(), 2.into())),
        3 => Some(Rational::new(5.into(), 6.into())),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentReport {
    pub model: String,
    /// Where `d_N` came from.
    pub source: String,
    pub order: usize,
    pub mu_hat: f64,
    pub mu_error: f64,
    pub theta_hat: f64,
    pub theta_error: f64,
    pub theta_method: ThetaMethod,
    pub window: (usize, usize),
    pub table: ExponentTable<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<RationalTable>,
}

/// `ExponentTable<Rational>` rendered with `"num/den"` strings.
#[derive(Clone, Debug, Serialize)]
pub struct RationalTable {
    pub dimension: usize,
    pub theta: String,
    pub gamma: String,
    pub alpha: String,
    pub sigma: String,
}

impl From<ExponentTable<Rational>> for RationalTable {
    fn from(t: ExponentTable<Rational>) -> Self {
        Self {
            dimension: t.dimension,
            theta: rational_to_string(&t.theta),
            gamma: rational_to_string(&t.gamma),
            alpha: rational_to_string(&t.alpha),
            sigma: rational_to_string(&t.sigma),
        }
    }
}

/// Growth and `θ` estimates for a series in `dimension` dimensions. `mu`
/// overrides the growth estimate in the `θ` fit.
pub fn exponent_report(
    model: &str,
    source: &str,
    d: &[Rational],
    dimension: usize,
    mu: Option<f64>,
    window: Option<usize>,
) -> Result<ExponentReport, AnalysisError> {
    let growth = estimate_growth(d)?;
    let theta = estimate_theta(d, Some(mu.unwrap_or(growth.mu)), window)?;
    Ok(ExponentReport {
        model: model.to_string(),
        source: source.to_string(),
        order: d.len(),
        mu_hat: growth.mu,
        mu_error: growth.error,
        theta_hat: theta.theta,
        theta_error: theta.error,
        theta_method: theta.method,
        window: theta.window,
        table: exponent_table(theta.theta, dimension),
        exact: exact_theta(dimension).map(|t| exponent_table(t, dimension).into()),
    })
}

/// `N,d_N,ratio,theta_N` with `θ_N = N (1 - r_N / μ)`; rationals as
/// `num/den`, floats with 17 significant digits, blanks where undefined.
pub fn series_csv(d: &[Rational], mu: f64) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["N", "d_N", "ratio", "theta_N"]).expect("in-memory write");
    for (i, dn) in d.iter().enumerate() {
        let n = i + 1;
        let (ratio, theta) = if i > 0 && !d[i - 1].is_zero() {
            let r = rational_to_f64(&(dn / &d[i - 1]).abs());
            let t = n as f64 * (1.0 - r / mu);
            (format!("{r:.16e}"), if t.is_finite() { format!("{t:.16e}") } else { String::new() })
        } else {
            (String::new(), String::new())
        };
        w.write_record([n.to_string(), rational_to_string(dn), ratio, theta]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, ratio};
    use proptest::prelude::*;

    fn binomial(n: u64, k: u64) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
    }

    fn synthetic(k: usize, mu: f64, theta: f64) -> Vec<Rational> {
        (1..=k)
            .map(|n| Rational::from_float(mu.powi(n as i32) * (n as f64).powf(-theta)).unwrap())
            .collect()
    }

    #[test]
    fn line3_closed_form_values() {
        assert_eq!(closed_form_line3(1), int(1));
        assert_eq!(closed_form_line3(4), int(35));
        assert_eq!(closed_form_line3(10), int(92378));
        for n in 1..=20u64 {
            assert_eq!(closed_form_line3(n as usize), Rational::from_integer(binomial(2 * n, n) / 2));
        }
    }

    #[test]
    fn pair_names() {
        assert_eq!(ModelPair::by_name("line3:dimer").unwrap().name(), "line3:dimer");
        assert_eq!(ModelPair::by_name("tri7").unwrap().name(), "tri7:hard-hexagons");
        assert_eq!(ModelPair::by_name("ball:hard-rods").unwrap().name(), "ball:hard-rods");
        assert!(ModelPair::by_name("line3:hard-hexagons").is_err());
        assert!(ModelPair::by_name("cube").is_err());
    }

    #[test]
    fn dimer_identity_to_order_eight() {
        let r = verify_identity(&ModelPair::by_name("line3:dimer").unwrap(), 8, &VerifyOptions::default()).unwrap();
        assert!(r.pass);
        let first: Vec<_> = r.rows.iter().take(3).map(|row| row.gas.clone()).collect();
        assert_eq!(first, vec![int(1), int(3), int(10)]);
    }

    #[test]
    fn hexagon_identity_to_order_seven() {
        let r = verify_identity(&ModelPair::by_name("tri7").unwrap(), 7, &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.rows[1].dbp, DbpValue::Exact(int(7)));
        assert_eq!(r.rows[2].dbp, DbpValue::Exact(int(58)));
    }

    #[test]
    fn square_identity() {
        let r = verify_identity(&ModelPair::by_name("square5").unwrap(), 6, &VerifyOptions::default()).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn continuum_identity() {
        for name in ["diamond", "ball"] {
            let r = verify_identity(&ModelPair::by_name(name).unwrap(), 3, &VerifyOptions::default()).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.rows[2].gas, ratio(9, 2));
        }
        let err = verify_identity(&ModelPair::by_name("diamond").unwrap(), 4, &VerifyOptions::default()).unwrap_err();
        assert_eq!(err, AnalysisError::Continuum(ContinuumError::QuadratureOrder(4)));
    }

    #[test]
    fn growth_of_simple_sequences() {
        let line = closed_form_line3_series(40);
        let g = estimate_growth(&line).unwrap();
        assert!((g.mu - 4.0).abs() < 0.04);
        let geo: Vec<_> = (1..=12).map(|n| Rational::from_integer(BigInt::from(5).pow(n))).collect();
        let g = estimate_growth(&geo).unwrap();
        assert!((g.mu - 5.0).abs() < 1e-12);
        assert_eq!(g.error, 0.0);
        assert!(matches!(estimate_growth(&geo[..5]), Err(AnalysisError::TooFewTerms { need: 6, got: 5 })));
    }

    #[test]
    fn theta_on_line3_and_synthetic() {
        let t = estimate_theta(&closed_form_line3_series(40), Some(4.0), None).unwrap();
        assert!((0.48..=0.52).contains(&t.theta), "{}", t.theta);
        let s = synthetic(14, 3.0, 5.0 / 6.0);
        let t = estimate_theta(&s, Some(3.0), None).unwrap();
        assert!((t.theta - 5.0 / 6.0).abs() < 1e-3);
        let free = estimate_theta(&s, None, None).unwrap();
        assert!((free.theta - 5.0 / 6.0).abs() < 0.05, "{}", free.theta);
        assert!(estimate_theta(&s[..7], Some(3.0), None).is_err());
        assert_eq!(estimate_theta(&s, Some(-1.0), None), Err(AnalysisError::BadMu(-1.0)));
    }

    #[test]
    fn exponent_relations() {
        let t = exponent_table(ratio(1, 2), 2);
        assert_eq!((t.gamma.clone(), t.alpha.clone()), (ratio(3, 2), ratio(3, 2)));
        assert_eq!(t.sigma, ratio(-1, 2));
        let t = exponent_table(ratio(5, 6), 3);
        assert_eq!((t.gamma.clone(), t.alpha.clone(), t.sigma.clone()), (ratio(7, 6), ratio(7, 6), ratio(-1, 6)));
        assert_eq!(t.theta, int(1) + t.sigma);
        let t = exponent_table(int(2), 4);
        assert_eq!((t.gamma, t.sigma), (int(0), int(1)));
        let f = exponent_table(0.8, 3);
        assert!((f.theta - (1.0 + f.sigma)).abs() < 1e-15);
    }

    #[test]
    fn csv_layout() {
        let csv = series_csv(&closed_form_line3_series(3), 4.0);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "N,d_N,ratio,theta_N");
        assert_eq!(lines[1], "1,1/1,,");
        assert_eq!(lines[2], "2,3/1,3.0000000000000000e0,5.0000000000000000e-1");
        assert_eq!(lines.len(), 4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn estimators_are_scale_equivariant(c in 1i64..1000, lam in 1i64..9, seed in 0usize..3) {
            let base = [closed_form_line3_series(16), synthetic(16, 3.0, 5.0 / 6.0), synthetic(16, 7.5, 1.3)][seed].clone();
            let g0 = estimate_growth(&base).unwrap();
            let t0 = estimate_theta(&base, None, None).unwrap();
            let f0 = estimate_theta(&base, Some(g0.mu), None).unwrap();

            let scaled: Vec<_> = base.iter().map(|d| d * int(c)).collect();
            let g1 = estimate_growth(&scaled).unwrap();
            prop_assert!((g1.mu - g0.mu).abs() <= 1e-9 * g0.mu);
            prop_assert!((estimate_theta(&scaled, None, None).unwrap().theta - t0.theta).abs() < 1e-7);

            let tilted: Vec<_> = base.iter().enumerate().map(|(i, d)| d * Rational::from_integer(BigInt::from(lam).pow(i as u32 + 1))).collect();
            let g2 = estimate_growth(&tilted).unwrap();
            prop_assert!((g2.mu - lam as f64 * g0.mu).abs() <= 1e-9 * g2.mu);
            prop_assert!((estimate_theta(&tilted, None, None).unwrap().theta - t0.theta).abs() < 1e-7);
            let f2 = estimate_theta(&tilted, Some(lam as f64 * g0.mu), None).unwrap();
            prop_assert!((f2.theta - f0.theta).abs() < 1e-9);
        }
    }
}
