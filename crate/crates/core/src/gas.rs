//! Activity series for the hard-core gases one dimension below each polymer model.
//!
//! Lattice gases are solved exactly on periodic `W x W` tori (a `W`-cycle for
//! the chain) by a row transfer matrix whose entries are integer series
//! truncated at `z^{K+1}`. The torus trace is split by the first empty row:
//! every configuration with at most `K < H` particles leaves some row of an
//! `H`-row torus empty, so cutting there turns the trace into open walks that
//! start and end at the empty row state.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Basis, LatticeModel, Site};
use crate::series::{int, Rational, SeriesError, TruncatedSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GasError {
    #[error("unknown gas model {0:?} (expected dimer, hard-squares, hard-hexagons, hard-rods)")]
    UnknownModel(String),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("torus width {0} is too small (need at least 2, and more than twice the exclusion range)")]
    BadWidth(usize),
    #[error("torus width {width} exceeds the width budget {budget}; raise the budget (--force) to proceed")]
    OverBudget { width: usize, budget: usize },
    #[error("width {width} is too small for order {order}: need width >= {need}")]
    WidthTooSmall { width: usize, order: usize, need: usize },
    #[error("{0} has no finite lattice; use the closed form")]
    NotALattice(String),
    #[error("exclusion offsets must stay within adjacent rows, found {0:?}")]
    UnsupportedExclusion(Site),
    #[error("partition-function coefficient overflowed 128-bit arithmetic")]
    Overflow,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Default cap on the torus width (row state space `2^W`).
pub const DEFAULT_WIDTH_BUDGET: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GasLattice {
    Chain,
    SquareTorus,
    TriangularTorus,
    ContinuumRod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GasModel {
    name: String,
    lattice: GasLattice,
    exclusion: Vec<Site>,
}

impl GasModel {
    pub fn dimers() -> Self {
        Self::partner(&LatticeModel::line3())
    }

    pub fn hard_squares() -> Self {
        Self::partner(&LatticeModel::square5())
    }

    pub fn hard_hexagons() -> Self {
        Self::partner(&LatticeModel::tri7())
    }

    /// Hard rods of unit length on the line; partner of both continuum shapes.
    pub fn hard_rods() -> Self {
        Self { name: "hard-rods".into(), lattice: GasLattice::ContinuumRod, exclusion: Vec::new() }
    }

    pub fn by_name(name: &str) -> Result<Self, GasError> {
        match name {
            "dimer" | "dimers" => Ok(Self::dimers()),
            "hard-squares" => Ok(Self::hard_squares()),
            "hard-hexagons" => Ok(Self::hard_hexagons()),
            "hard-rods" => Ok(Self::hard_rods()),
            other => Err(GasError::UnknownModel(other.to_string())),
        }
    }

    /// The gas with pair weight `1 - I(x)`: the polymer model's neighbor set
    /// minus the origin, on the same spatial lattice.
    pub fn partner(model: &LatticeModel) -> Self {
        let (name, lattice) = match model.basis() {
            Basis::Chain => ("dimer".to_string(), GasLattice::Chain),
            Basis::Square => ("hard-squares".to_string(), GasLattice::SquareTorus),
            Basis::TriangularOblique => ("hard-hexagons".to_string(), GasLattice::TriangularTorus),
            Basis::Custom if model.dimension() == 1 => (format!("{}-gas", model.name()), GasLattice::Chain),
            Basis::Custom => (format!("{}-gas", model.name()), GasLattice::SquareTorus),
        };
        Self { name, lattice, exclusion: model.exclusion_offsets() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> GasLattice {
        self.lattice
    }

    pub fn exclusion(&self) -> &[Site] {
        &self.exclusion
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice != GasLattice::ContinuumRod
    }

    /// Number of rows of the torus of linear size `width`.
    fn rows(&self, width: usize) -> usize {
        if self.lattice == GasLattice::Chain {
            1
        } else {
            width
        }
    }

    /// Longest exclusion reach along a lattice axis.
    pub fn range(&self) -> usize {
        self.exclusion.iter().map(|o| o[0].unsigned_abs().max(o[1].unsigned_abs()) as usize).max().unwrap_or(0).max(1)
    }

    /// Smallest torus width whose log-partition is exact to `order`: a
    /// connected cluster of `n` particles spans at most `n * range` sites, so
    /// nothing of order `<= K` wraps once `W > K * range`.
    pub fn min_width(&self, order: usize) -> usize {
        self.range() * order + 2
    }

    pub fn volume(&self, width: usize) -> usize {
        width * self.rows(width)
    }
}

/// Which route produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    TransferMatrix { width: usize },
    Occupancy { width: usize },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::ClosedForm => f.write_str("closed-form"),
            Method::TransferMatrix { width } => write!(f, "transfer-matrix(W={width})"),
            Method::Occupancy { width } => write!(f, "occupancy(W={width})"),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GasSeriesReport {
    pub model: String,
    pub method: Method,
    /// Absent for the occupancy route, which yields the density directly.
    pub pressure: Option<TruncatedSeries>,
    pub density: TruncatedSeries,
}

/// Hard-rod density: `[z^N] = (-1)^{N+1} N^N / N!`, via `ρ = z p'` with
/// `p(z) = -T(-z)` and `T` the rooted-tree generating function.
pub fn hard_rod_pressure_series(order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut factorial = BigInt::one();
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        factorial *= n;
        let trees = BigInt::from(n).pow(n as u32 - 1);
        let t = Rational::new(trees, factorial.clone());
        *c = if n % 2 == 1 { t } else { -t };
    }
    TruncatedSeries::new(coeffs)
}

pub fn hard_rod_density_series(order: usize) -> TruncatedSeries {
    hard_rod_pressure_series(order).zddz()
}

/// `p(z) = ln(1/2 + 1/2 sqrt(1 + 4z))` for dimers on the line.
pub fn dimer_pressure_series(order: usize) -> TruncatedSeries {
    let one_plus_4z = TruncatedSeries::new(
        (0..=order).map(|n| match n {
            0 => int(1),
            1 => int(4),
            _ => int(0),
        }).collect(),
    );
    let root = one_plus_4z.sqrt().expect("constant term is 1");
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let inner = &TruncatedSeries::monomial(order, 0, half.clone()) + &root.scale(&half);
    inner.log().expect("constant term is 1")
}

/// Exact `Z_Λ(z) mod z^{K+1}` on the `W x W` torus (or `W`-cycle).
pub fn torus_partition_polynomial(model: &GasModel, width: usize, order: usize) -> Result<TruncatedSeries, GasError> {
    torus_partition_with_budget(model, width, order, DEFAULT_WIDTH_BUDGET)
}

pub fn torus_partition_with_budget(
    model: &GasModel,
    width: usize,
    order: usize,
    budget: usize,
) -> Result<TruncatedSeries, GasError> {
    let torus = Torus::new(model, width, order, budget)?;
    Ok(to_series(&torus.partition(&vec![0; torus.rows])?))
}

/// `(1/|Λ|) log Z_Λ` on a torus of width `W = K + 2`, then `z d/dz`.
pub fn density_series_tm(model: &GasModel, order: usize) -> Result<TruncatedSeries, GasError> {
    Ok(pressure_and_density_tm(model, order, DEFAULT_WIDTH_BUDGET)?.density)
}

pub fn pressure_and_density_tm(model: &GasModel, order: usize, budget: usize) -> Result<GasSeriesReport, GasError> {
    if order == 0 {
        return Err(GasError::ZeroOrder);
    }
    let width = model.min_width(order);
    let pressure = torus_log_partition(model, width, order, budget)?;
    Ok(GasSeriesReport {
        model: model.name.clone(),
        method: Method::TransferMatrix { width },
        density: pressure.zddz(),
        pressure: Some(pressure),
    })
}

/// `(1/|Λ|) log Z_Λ mod z^{K+1}` for an explicit width.
pub fn torus_log_partition(model: &GasModel, width: usize, order: usize, budget: usize) -> Result<TruncatedSeries, GasError> {
    let z = torus_partition_with_budget(model, width, order, budget)?;
    let volume = int(model.volume(width) as i64);
    Ok(z.log()?.scale(&(Rational::one() / volume)))
}

/// Origin occupancy `z Z_{Λ \ N(0)} / Z_Λ`, with `N(0)` the origin and its
/// excluded neighbors.
pub fn density_via_occupancy(model: &GasModel, width: usize, order: usize) -> Result<TruncatedSeries, GasError> {
    density_via_occupancy_with_budget(model, width, order, DEFAULT_WIDTH_BUDGET)
}

pub fn density_via_occupancy_with_budget(
    model: &GasModel,
    width: usize,
    order: usize,
    budget: usize,
) -> Result<TruncatedSeries, GasError> {
    if order == 0 {
        return Err(GasError::ZeroOrder);
    }
    if width < model.min_width(order) {
        return Err(GasError::WidthTooSmall { width, order, need: model.min_width(order) });
    }
    let torus = Torus::new(model, width, order, budget)?;
    let full = to_series(&torus.partition(&vec![0; torus.rows])?);
    let mut forbidden = vec![0u32; torus.rows];
    let rows = torus.rows as i64;
    let w = width as i64;
    for o in std::iter::once(&[0, 0]).chain(model.exclusion.iter()) {
        let row = (o[1] as i64).rem_euclid(rows) as usize;
        forbidden[row] |= 1 << (o[0] as i64).rem_euclid(w);
    }
    let punctured = to_series(&torus.partition(&forbidden)?);
    let shifted = TruncatedSeries::new(
        std::iter::once(Rational::zero()).chain(punctured.coeffs()[..order].iter().cloned()).collect(),
    );
    Ok(&shifted * &inverse_of_unit(&full)?)
}

/// `1/a` for a series with constant term 1.
fn inverse_of_unit(a: &TruncatedSeries) -> Result<TruncatedSeries, GasError> {
    if !a.coeff(0).is_one() {
        return Err(SeriesError::NonUnitConstant(crate::series::rational_to_string(a.coeff(0))).into());
    }
    let mut b = vec![Rational::zero(); a.order() + 1];
    b[0] = Rational::one();
    for n in 1..b.len() {
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc -= a.coeff(k) * &b[n - k];
        }
        b[n] = acc;
    }
    Ok(TruncatedSeries::new(b))
}

/// Reports for a gas by its natural route: closed forms on the line and for
/// rods, the transfer matrix otherwise.
pub fn gas_report(model: &GasModel, order: usize, budget: usize) -> Result<GasSeriesReport, GasError> {
    if order == 0 {
        return Err(GasError::ZeroOrder);
    }
    match model.lattice {
        GasLattice::ContinuumRod => {
            let pressure = hard_rod_pressure_series(order);
            Ok(GasSeriesReport {
                model: model.name.clone(),
                method: Method::ClosedForm,
                density: pressure.zddz(),
                pressure: Some(pressure),
            })
        }
        GasLattice::Chain if model.exclusion == [[-1, 0], [1, 0]] => {
            let pressure = dimer_pressure_series(order);
            Ok(GasSeriesReport {
                model: model.name.clone(),
                method: Method::ClosedForm,
                density: pressure.zddz(),
                pressure: Some(pressure),
            })
        }
        _ => pressure_and_density_tm(model, order, budget),
    }
}

pub fn occupancy_report(model: &GasModel, width: usize, order: usize, budget: usize) -> Result<GasSeriesReport, GasError> {
    Ok(GasSeriesReport {
        model: model.name.clone(),
        method: Method::Occupancy { width },
        pressure: None,
        density: density_via_occupancy_with_budget(model, width, order, budget)?,
    })
}

fn to_series(c: &[u128]) -> TruncatedSeries {
    TruncatedSeries::new(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
}

/// Row-transfer machinery for one `(model, width, order)`.
struct Torus {
    rows: usize,
    order: usize,
    /// Valid row occupancy patterns; index 0 is the empty row.
    states: Vec<u32>,
    pop: Vec<usize>,
    /// For each state, the states allowed on the next row, by increasing popcount.
    compat: Vec<Vec<u32>>,
    /// For each state, the states allowed on the previous row.
    compat_rev: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Up,
    Down,
}

/// Series-valued vector over row states, flattened `state * (K+1) + power`.
type Vector = Vec<u128>;

impl Torus {
    fn new(model: &GasModel, width: usize, order: usize, budget: usize) -> Result<Self, GasError> {
        if order == 0 {
            return Err(GasError::ZeroOrder);
        }
        if !model.is_lattice() {
            return Err(GasError::NotALattice(model.name.clone()));
        }
        if width > budget {
            return Err(GasError::OverBudget { width, budget });
        }
        let rows = model.rows(width);
        let mut intra = Vec::new();
        let mut inter = Vec::new();
        for o in &model.exclusion {
            if o[1].abs() > 1 || (rows == 1 && o[1] != 0) {
                return Err(GasError::UnsupportedExclusion(*o));
            }
            if 2 * o[0].unsigned_abs() as usize >= width {
                return Err(GasError::BadWidth(width));
            }
            match o[1] {
                0 if o[0] > 0 => intra.push(o[0] as u32),
                1 => inter.push(o[0]),
                _ => {}
            }
        }
        if width < 2 {
            return Err(GasError::BadWidth(width));
        }
        let w = width as u32;
        let mask = if w == 32 { u32::MAX } else { (1u32 << w) - 1 };
        let rot = |s: u32, by: i32| -> u32 {
            let by = by.rem_euclid(w as i32) as u32;
            if by == 0 {
                s
            } else {
                ((s << by) | (s >> (w - by))) & mask
            }
        };
        let states: Vec<u32> =
            (0..=mask).filter(|&s| intra.iter().all(|&d| s & rot(s, d as i32) == 0)).collect();
        let mut index = vec![u32::MAX; mask as usize + 1];
        for (i, &s) in states.iter().enumerate() {
            index[s as usize] = i as u32;
        }
        let pop: Vec<usize> = states.iter().map(|s| s.count_ones() as usize).collect();
        // Next-row site x conflicts with this-row site x - dx for each (dx, +1).
        let compat: Vec<Vec<u32>> = states
            .iter()
            .map(|&s| {
                let blocked = inter.iter().fold(0, |acc, &dx| acc | rot(s, dx));
                let mut next: Vec<u32> =
                    (0..states.len() as u32).filter(|&t| states[t as usize] & blocked == 0).collect();
                next.sort_by_key(|&t| pop[t as usize]);
                next
            })
            .collect();
        let mut compat_rev = vec![Vec::new(); states.len()];
        for (s, next) in compat.iter().enumerate() {
            for &t in next {
                compat_rev[t as usize].push(s as u32);
            }
        }
        for prev in &mut compat_rev {
            prev.sort_by_key(|&s| pop[s as usize]);
        }
        Ok(Self { rows, order, states, pop, compat, compat_rev })
    }

    fn zero(&self) -> Vector {
        vec![0; self.states.len() * (self.order + 1)]
    }

    fn min_degree(&self, v: &[u128], s: usize) -> Option<usize> {
        let k = self.order + 1;
        v[s * k..(s + 1) * k].iter().position(|&c| c != 0)
    }

    /// One row of transfer: `out[t] += z^{|t|} v[s]` over `t` on the next
    /// (`Up`) or previous (`Down`) row, avoiding `forbidden` and, if
    /// `nonempty`, the empty row.
    fn step(&self, v: &[u128], forbidden: u32, nonempty: bool, weighted: bool, dir: Dir) -> Result<Vector, GasError> {
        let k = self.order + 1;
        let mut out = self.zero();
        let table = match dir {
            Dir::Up => &self.compat,
            Dir::Down => &self.compat_rev,
        };
        for s in 0..self.states.len() {
            let Some(d) = self.min_degree(v, s) else { continue };
            for &t in &table[s] {
                let t = t as usize;
                let p = if weighted { self.pop[t] } else { 0 };
                if d + p > self.order {
                    break;
                }
                if (nonempty && t == 0) || self.states[t] & forbidden != 0 {
                    continue;
                }
                for j in d..k - p {
                    let src = v[s * k + j];
                    if src != 0 {
                        let dst = &mut out[t * k + j + p];
                        *dst = dst.checked_add(src).ok_or(GasError::Overflow)?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn unit(&self, state: usize, weighted: bool) -> Vector {
        let mut v = self.zero();
        let p = if weighted { self.pop[state] } else { 0 };
        if p <= self.order {
            v[state * (self.order + 1) + p] = 1;
        }
        v
    }

    fn dot(&self, a: &[u128], b: &[u128]) -> Result<Vec<u128>, GasError> {
        let k = self.order + 1;
        let mut out = vec![0u128; k];
        for s in 0..self.states.len() {
            for i in 0..k {
                let x = a[s * k + i];
                if x == 0 {
                    continue;
                }
                for j in 0..k - i {
                    let y = b[s * k + j];
                    if y != 0 {
                        let prod = x.checked_mul(y).ok_or(GasError::Overflow)?;
                        out[i + j] = out[i + j].checked_add(prod).ok_or(GasError::Overflow)?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn sum(&self, v: &[u128]) -> Result<Vec<u128>, GasError> {
        let k = self.order + 1;
        let mut out = vec![0u128; k];
        for chunk in v.chunks(k) {
            for (o, c) in out.iter_mut().zip(chunk) {
                *o = o.checked_add(*c).ok_or(GasError::Overflow)?;
            }
        }
        Ok(out)
    }

    fn add_into(acc: &mut [u128], x: &[u128]) -> Result<(), GasError> {
        for (a, b) in acc.iter_mut().zip(x) {
            *a = a.checked_add(*b).ok_or(GasError::Overflow)?;
        }
        Ok(())
    }

    /// `Z mod z^{K+1}` with per-row forbidden site masks.
    fn partition(&self, forbidden: &[u32]) -> Result<Vec<u128>, GasError> {
        let mut total = if forbidden.iter().all(|&f| f == 0) {
            self.with_empty_row_homogeneous()?
        } else {
            self.with_empty_row(forbidden)?
        };
        if self.rows <= self.order {
            Self::add_into(&mut total, &self.all_rows_occupied(forbidden)?)?;
        }
        Ok(total)
    }

    /// Configurations whose first empty row is `r`, summed over `r`: walk
    /// from the empty row at `r` once around, rows `0..r` kept nonempty.
    fn with_empty_row(&self, forbidden: &[u32]) -> Result<Vec<u128>, GasError> {
        let mut total = vec![0u128; self.order + 1];
        for r in 0..self.rows {
            let mut v = self.unit(0, true);
            for j in 1..self.rows {
                let pos = (r + j) % self.rows;
                v = self.step(&v, forbidden[pos], pos < r, true, Dir::Up)?;
            }
            // closing into the empty row at r, compatible with anything
            Self::add_into(&mut total, &self.sum(&v)?)?;
        }
        Ok(total)
    }

    /// Same decomposition without forbidden sites. Forward walks from an
    /// empty row and backward walks through nonempty rows no longer depend
    /// on `r`, so each is computed once and joined across the seam.
    fn with_empty_row_homogeneous(&self) -> Result<Vec<u128>, GasError> {
        let h = self.rows;
        // forward[L]: from the empty row, L free rows.
        let mut forward = vec![self.unit(0, true)];
        for _ in 1..h {
            let next = self.step(forward.last().unwrap(), 0, false, true, Dir::Up)?;
            forward.push(next);
        }
        // backward[k]: state on the row after the seam, k nonempty rows, then empty.
        let mut backward = vec![self.unit(0, false)];
        let mut total = self.sum(&forward[h - 1])?;
        for r in 1..h {
            let b = self.step(backward.last().unwrap(), 0, true, true, Dir::Down)?;
            // seam between free rows and the first nonempty row
            let seam = self.step(&b, 0, false, false, Dir::Down)?;
            let term = self.dot(&forward[h - 1 - r], &seam)?;
            Self::add_into(&mut total, &term)?;
            backward.push(b);
        }
        Ok(total)
    }

    /// Closed walks with every row occupied; needs at least `H` particles.
    fn all_rows_occupied(&self, forbidden: &[u32]) -> Result<Vec<u128>, GasError> {
        let mut total = vec![0u128; self.order + 1];
        for s0 in 1..self.states.len() {
            if self.states[s0] & forbidden[0] != 0 || self.pop[s0] > self.order {
                continue;
            }
            let term = if self.rows == 1 {
                let mut t = vec![0u128; self.order + 1];
                t[self.pop[s0]] = 1;
                t
            } else {
                let mut v = self.unit(s0, true);
                for f in &forbidden[1..] {
                    v = self.step(&v, *f, true, true, Dir::Up)?;
                }
                // the last row must sit below row 0 = s0
                let closing = self.step(&self.unit(s0, false), 0, false, false, Dir::Down)?;
                self.dot(&v, &closing)?
            };
            Self::add_into(&mut total, &term)?;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    /// Independent-set polynomial on a small torus by checking all subsets.
    fn brute_force(model: &GasModel, width: usize, order: usize) -> Vec<u64> {
        let rows = model.rows(width);
        let n = width * rows;
        let site = |i: usize| [(i % width) as i32, (i / width) as i32];
        let mut out = vec![0u64; order + 1];
        for mask in 0u64..(1 << n) {
            let k = mask.count_ones() as usize;
            if k > order {
                continue;
            }
            let occupied: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let clash = occupied.iter().any(|&a| {
                occupied.iter().any(|&b| {
                    a != b
                        && model.exclusion.iter().any(|o| {
                            let (pa, pb) = (site(a), site(b));
                            (pa[0] + o[0] - pb[0]).rem_euclid(width as i32) == 0
                                && (pa[1] + o[1] - pb[1]).rem_euclid(rows as i32) == 0
                        })
                })
            });
            if !clash {
                out[k] += 1;
            }
        }
        out
    }

    fn ints(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_integers(v.iter().copied())
    }

    #[test]
    fn five_cycle_dimers() {
        let z = torus_partition_polynomial(&GasModel::dimers(), 5, 4).unwrap();
        assert_eq!(z, ints(&[1, 5, 5, 0, 0]));
        assert_eq!(brute_force(&GasModel::dimers(), 5, 4), vec![1, 5, 5, 0, 0]);
    }

    #[test]
    fn three_by_three_hard_squares() {
        assert_eq!(&brute_force(&GasModel::hard_squares(), 3, 2), &[1, 9, 18]);
        let z = torus_partition_polynomial(&GasModel::hard_squares(), 3, 2).unwrap();
        assert_eq!(z, ints(&[1, 9, 18]));
    }

    #[test]
    fn transfer_matches_brute_force_on_small_tori() {
        for model in [GasModel::dimers(), GasModel::hard_squares(), GasModel::hard_hexagons()] {
            for width in 3..=4 {
                for order in [2, 3, 5, 8] {
                    let brute = brute_force(&model, width, order);
                    let tm = torus_partition_polynomial(&model, width, order).unwrap();
                    let expect = ints(&brute.iter().map(|&c| c as i64).collect::<Vec<_>>());
                    assert_eq!(tm, expect, "{} W={width} K={order}", model.name());
                }
            }
        }
    }

    #[test]
    fn empty_configuration_term() {
        for model in [GasModel::dimers(), GasModel::hard_squares(), GasModel::hard_hexagons()] {
            assert_eq!(torus_partition_polynomial(&model, 6, 3).unwrap().coeff(0), &int(1));
        }
    }

    #[test]
    fn dimer_closed_form_expansion() {
        let p = dimer_pressure_series(4);
        assert_eq!(p.coeffs(), &[int(0), int(1), ratio(-3, 2), ratio(10, 3), ratio(-35, 4)]);
        assert_eq!(p.zddz(), ints(&[0, 1, -3, 10, -35]));
    }

    #[test]
    fn hard_rod_closed_form() {
        let rho = hard_rod_density_series(3);
        assert_eq!(rho.coeffs(), &[int(0), int(1), int(-2), ratio(9, 2)]);
    }

    #[test]
    fn transfer_matrix_densities() {
        assert_eq!(density_series_tm(&GasModel::dimers(), 4).unwrap(), ints(&[0, 1, -3, 10, -35]));
        assert_eq!(density_series_tm(&GasModel::hard_hexagons(), 3).unwrap(), ints(&[0, 1, -7, 58]));
        assert_eq!(density_series_tm(&GasModel::hard_squares(), 2).unwrap(), ints(&[0, 1, -5]));
    }

    #[test]
    fn occupancy_agrees_with_log_route() {
        for model in [GasModel::dimers(), GasModel::hard_squares(), GasModel::hard_hexagons()] {
            let k = 6;
            let occ = density_via_occupancy(&model, k + 2, k).unwrap();
            assert_eq!(occ, density_series_tm(&model, k).unwrap(), "{}", model.name());
            assert_eq!(occ.coeff(1), &int(1));
        }
        let hex = density_via_occupancy(&GasModel::hard_hexagons(), 5, 3).unwrap();
        assert_eq!(hex.coeff(2), &int(-7));
    }

    #[test]
    fn homogeneous_and_general_cuts_agree() {
        let model = GasModel::hard_hexagons();
        let torus = Torus::new(&model, 7, 5, 16).unwrap();
        let a = torus.with_empty_row_homogeneous().unwrap();
        let b = torus.with_empty_row(&[0; 7]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn guards() {
        assert_eq!(
            density_via_occupancy(&GasModel::dimers(), 5, 4),
            Err(GasError::WidthTooSmall { width: 5, order: 4, need: 6 })
        );
        assert_eq!(
            torus_partition_polynomial(&GasModel::hard_squares(), 17, 3),
            Err(GasError::OverBudget { width: 17, budget: 16 })
        );
        assert!(matches!(torus_partition_polynomial(&GasModel::hard_rods(), 4, 3), Err(GasError::NotALattice(_))));
        assert!(matches!(torus_partition_polynomial(&GasModel::dimers(), 1, 3), Err(GasError::BadWidth(1))));
        assert!(matches!(GasModel::by_name("argon"), Err(GasError::UnknownModel(_))));
        assert_eq!(density_series_tm(&GasModel::dimers(), 0), Err(GasError::ZeroOrder));
    }

    #[test]
    fn method_strings() {
        assert_eq!(Method::TransferMatrix { width: 12 }.to_string(), "transfer-matrix(W=12)");
        let r = gas_report(&GasModel::hard_rods(), 2, 16).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["method"], "closed-form");
        assert_eq!(j["density"][2]["value"], "-2/1");
    }
}
