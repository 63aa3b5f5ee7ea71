//! The forest-root formula
//! `f(0) = Σ_(F,R) ∫ ∏_R [-dt_r] ∏_F [-d(t_j - t_i)] f^(F,R)(t)`
//! checked by quadrature for exponential test functions.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::unit_interval_rule;

pub const DEFAULT_FOREST_BUDGET: usize = 3;
pub const MAX_FOREST_N: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ForestError {
    #[error("N must be in 1..={MAX_FOREST_N}, got {0}")]
    BadOrder(usize),
    #[error("N = {n} exceeds the budget {budget}; pass --force to run it anyway")]
    OverBudget { n: usize, budget: usize },
    #[error("term did not converge to {tol:e}: last two orders differ by {diff:e} at order {order}")]
    Tolerance { tol: f64, diff: f64, order: usize },
    #[error("unknown test-function family {0:?} (expected pure-exponential or quadratic-exponential)")]
    UnknownFamily(String),
    #[error("invalid test function: {0}")]
    BadFunction(String),
    #[error("forest does not match the test function size ({forest} vs {function})")]
    SizeMismatch { forest: usize, function: usize },
}

/// A forest on `0..n` with one root per tree, as a parent map (`None` for roots).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedForest {
    pub parent: Vec<Option<usize>>,
}

impl RootedForest {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.parent[v].is_none()).collect()
    }

    /// Links `(j, i)` with `i` the parent of `j`.
    pub fn links(&self) -> Vec<(usize, usize)> {
        (0..self.n()).filter_map(|j| self.parent[j].map(|i| (j, i))).collect()
    }

    pub fn is_valid(&self) -> bool {
        (0..self.n()).all(|v| {
            let mut cur = v;
            for _ in 0..=self.n() {
                match self.parent[cur] {
                    None => return true,
                    Some(p) if p < self.n() => cur = p,
                    Some(_) => return false,
                }
            }
            false
        })
    }

    /// Relabel vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut parent = vec![None; self.n()];
        for v in 0..self.n() {
            parent[perm[v]] = self.parent[v].map(|p| perm[p]);
        }
        Self { parent }
    }
}

impl Serialize for RootedForest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Labels {
            roots: Vec<usize>,
            links: Vec<[usize; 2]>,
        }
        Labels {
            roots: self.roots().iter().map(|r| r + 1).collect(),
            links: self.links().iter().map(|&(j, i)| [j + 1, i + 1]).collect(),
        }
        .serialize(s)
    }
}

/// All rooted forests on `n` labeled vertices: parent maps into
/// `{virtual root} ∪ vertices` without cycles, `(n+1)^(n-1)` of them.
pub fn enumerate_forests(n: usize) -> Result<Vec<RootedForest>, ForestError> {
    if !(1..=MAX_FOREST_N).contains(&n) {
        return Err(ForestError::BadOrder(n));
    }
    let total = (n + 1).pow(n as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let parent: Vec<Option<usize>> = (0..n)
            .map(|_| {
                let d = code % (n + 1);
                code /= n + 1;
                d.checked_sub(1)
            })
            .collect();
        let forest = RootedForest { parent };
        if forest.is_valid() {
            out.push(forest);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PureExponential,
    QuadraticExponential,
}

impl Family {
    pub fn by_name(name: &str) -> Result<Self, ForestError> {
        match name {
            "pure-exponential" | "pure" => Ok(Self::PureExponential),
            "quadratic-exponential" | "quadratic" => Ok(Self::QuadraticExponential),
            other => Err(ForestError::UnknownFamily(other.to_string())),
        }
    }
}

/// `f = exp(-Σ a_i t_i - Σ_{i<j} b_ij t_ij - c Σ t_i²)`, with `c = 0` for the
/// pure exponential.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub family: Family,
    pub a: Vec<f64>,
    pub b: Vec<Vec<f64>>,
    pub c: f64,
}

impl TestFunction {
    pub fn new(family: Family, a: Vec<f64>, b: Vec<Vec<f64>>, c: f64) -> Result<Self, ForestError> {
        let n = a.len();
        let bad = |m: &str| Err(ForestError::BadFunction(m.to_string()));
        if n == 0 {
            return bad("no vertices");
        }
        if a.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return bad("vertex rates must be positive");
        }
        if b.len() != n || b.iter().any(|row| row.len() != n) {
            return bad("pair rates must form an N x N matrix");
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && (!(b[i][j] > 0.0 && b[i][j].is_finite()) || b[i][j] != b[j][i]) {
                    return bad("pair rates must be positive and symmetric");
                }
            }
        }
        match family {
            Family::PureExponential if c != 0.0 => return bad("pure exponential has no curvature"),
            Family::QuadraticExponential if !(c >= 0.0 && c.is_finite()) => return bad("curvature must be nonnegative"),
            _ => {}
        }
        Ok(Self { family, a, b, c })
    }

    /// Every rate equal to one (curvature `c` for the quadratic family).
    pub fn uniform(family: Family, n: usize, c: f64) -> Result<Self, ForestError> {
        Self::new(family, vec![1.0; n], vec![vec![1.0; n]; n], c)
    }

    /// Rates uniform in `[1/2, 2]`, curvature in `[1/4, 1]`, from a seeded ChaCha8 stream.
    pub fn random(family: Family, n: usize, seed: u64) -> Result<Self, ForestError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |lo: f64, hi: f64| lo + (hi - lo) * (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let a = (0..n).map(|_| draw(0.5, 2.0)).collect();
        let mut b = vec![vec![1.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                b[i][j] = draw(0.5, 2.0);
                b[j][i] = b[i][j];
            }
        }
        let c = match family {
            Family::PureExponential => 0.0,
            Family::QuadraticExponential => draw(0.25, 1.0),
        };
        Self::new(family, a, b, c)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `f(t, |t_i - t_j|)`.
    pub fn eval(&self, t: &[f64]) -> f64 {
        let n = self.n();
        let mut e = 0.0;
        for i in 0..n {
            e += self.a[i] * t[i] + self.c * t[i] * t[i];
            for j in i + 1..n {
                e += self.b[i][j] * (t[i] - t[j]).abs();
            }
        }
        (-e).exp()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        let mut a = vec![0.0; n];
        let mut b = vec![vec![1.0; n]; n];
        for i in 0..n {
            a[perm[i]] = self.a[i];
            for j in 0..n {
                b[perm[i]][perm[j]] = self.b[i][j];
            }
        }
        Self { family: self.family, a, b, c: self.c }
    }
}

/// Vertex orders compatible with the forest (parents first).
fn orderings(forest: &RootedForest) -> Vec<Vec<usize>> {
    fn extend(forest: &RootedForest, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == forest.n() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..forest.n() {
            if !used[v] && forest.parent[v].is_none_or(|p| used[p]) {
                used[v] = true;
                prefix.push(v);
                extend(forest, prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(forest, &mut Vec::new(), &mut vec![false; forest.n()], &mut out);
    out
}

/// Decay rate of each gap `t_(k) - t_(k-1)` along an ordering: every vertex
/// at or above the gap, plus every pair straddling it.
fn gap_rates(f: &TestFunction, order: &[usize]) -> Vec<f64> {
    let n = order.len();
    (0..n)
        .map(|k| {
            let mut rate: f64 = order[k..].iter().map(|&v| f.a[v]).sum();
            for lo in &order[..k] {
                for hi in &order[k..] {
                    rate += f.b[*lo][*hi];
                }
            }
            rate
        })
        .collect()
}

/// Gaps beyond the point where the exponent exceeds this are dropped in
/// the Gaussian family (`e^-46` is below `1e-20`).
const GAUSSIAN_CUTOFF: f64 = 46.0;

/// `(-1)^N ∫ f^(F,R)` over `{t_r >= 0, t_j >= t_i}` at tensor Gauss order `m`.
///
/// The derivative in `t_r` brings down `-(a_r + 2c t_r)` and the one in
/// `t_ji` brings down `-b_ji`; with the signs of the measure these cancel.
/// Each ordering of the times is integrated in gap variables `g_k`. Without
/// curvature, `u_k = exp(-κ_k g_k)` absorbs the whole exponent and the rule
/// is exact. With curvature, gap `k` is cut at `min(L/κ_k, sqrt(L/c))` and
/// integrated linearly, where the integrand is entire.
fn term_at_order(f: &TestFunction, forest: &RootedForest, m: usize) -> f64 {
    let n = forest.n();
    let (nodes, weights) = unit_interval_rule(m);
    let roots = forest.roots();
    let link_factor: f64 = forest.links().iter().map(|&(j, i)| f.b[j][i]).product();
    let curved = f.c > 0.0;
    let mut total = 0.0;
    for order in orderings(forest) {
        let kappa = gap_rates(f, &order);
        let length: Vec<f64> = kappa
            .iter()
            .map(|k| if curved { (GAUSSIAN_CUTOFF / k).min((GAUSSIAN_CUTOFF / f.c).sqrt()) } else { 1.0 / k })
            .collect();
        let mut idx = vec![0usize; n];
        let mut t = vec![0.0; n];
        let mut sum = 0.0;
        loop {
            let mut w = 1.0;
            let mut time = 0.0;
            let mut linear = 0.0;
            for k in 0..n {
                let (x, wx) = (nodes[idx[k]], weights[idx[k]]);
                let gap = if curved { x * length[k] } else { -x.ln() * length[k] };
                linear += kappa[k] * gap;
                time += gap;
                t[order[k]] = time;
                w *= wx * length[k];
            }
            let mut exponent = -f.c * t.iter().map(|x| x * x).sum::<f64>();
            if curved {
                exponent -= linear;
            }
            let mut value = exponent.exp();
            for &r in &roots {
                value *= f.a[r] + 2.0 * f.c * t[r];
            }
            sum += w * value;
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < m {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        total += sum;
    }
    total * link_factor
}

/// One forest-root term, doubling the Gauss order from 4 until two
/// successive values agree within `tol`.
pub fn term_integral(f: &TestFunction, forest: &RootedForest, tol: f64) -> Result<f64, ForestError> {
    if forest.n() != f.n() {
        return Err(ForestError::SizeMismatch { forest: forest.n(), function: f.n() });
    }
    let max_order = (((1usize << 21) as f64).powf(1.0 / forest.n() as f64).floor() as usize).max(8);
    let mut m = 4;
    let mut prev = term_at_order(f, forest, m);
    let mut diff = f64::INFINITY;
    while 2 * m <= max_order {
        m *= 2;
        let next = term_at_order(f, forest, m);
        diff = (next - prev).abs();
        if diff <= tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(ForestError::Tolerance { tol, diff, order: m })
}

#[derive(Clone, Debug, Serialize)]
pub struct ForestTerm {
    #[serde(flatten)]
    pub forest: RootedForest,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ForestReport {
    pub function: TestFunction,
    #[serde(rename = "N")]
    pub n: usize,
    pub tol: f64,
    pub terms: Vec<ForestTerm>,
    pub sum: f64,
    /// `sum - f(0)`.
    pub residual: f64,
    /// `N! * tol`.
    pub bound: f64,
    pub pass: bool,
}

pub fn check_formula(f: &TestFunction, tol: f64) -> Result<ForestReport, ForestError> {
    check_formula_with_budget(f, tol, DEFAULT_FOREST_BUDGET)
}

/// Sum of every forest-root term against `f(0) = 1`. Terms run in parallel;
/// the sum is taken in enumeration order.
pub fn check_formula_with_budget(f: &TestFunction, tol: f64, budget: usize) -> Result<ForestReport, ForestError> {
    let n = f.n();
    if n > budget {
        return Err(ForestError::OverBudget { n, budget });
    }
    let forests = enumerate_forests(n)?;
    let values: Vec<f64> = forests
        .par_iter()
        .map(|fr| term_integral(f, fr, tol))
        .collect::<Result<_, _>>()?;
    let sum: f64 = values.iter().sum();
    let residual = sum - f.eval(&vec![0.0; n]);
    let bound = (1..=n).map(|k| k as f64).product::<f64>() * tol;
    let terms = forests.into_iter().zip(values).map(|(forest, value)| ForestTerm { forest, value }).collect();
    Ok(ForestReport { function: f.clone(), n, tol, terms, sum, residual, bound, pass: residual.abs() <= bound })
}
