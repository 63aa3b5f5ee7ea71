//! Continuum polymers in `R_+ x R`: hard diamonds and hard disks.
//!
//! Each tree link carries `V = dU/dt`, a delta on the contact surface. Solving
//! the delta for the link's time step (`1 - |x|` for the diamond,
//! `sqrt(1 - x^2)` for the ball) leaves unit measure `dx` on `[-1, 1]` per
//! link, so `d_N = 1/(N-1)! Σ_T ∫_{[-1,1]^{N-1}} ∏_{non-tree} U`.

use num_bigint::BigInt;
use num_traits::One;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::{integrate, superlevel_measure, QuadratureError};
use crate::series::{rational_serde, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum ContinuumError {
    #[error("quadrature supports N in 1..=3, got {0}")]
    QuadratureOrder(usize),
    #[error("Monte Carlo supports N in 2..=6, got {0}")]
    MonteCarloOrder(usize),
    #[error("need at least one sample per tree ({trees} trees, {samples} samples)")]
    TooFewSamples { trees: usize, samples: u64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("unknown shape {0:?} (expected diamond or ball)")]
    UnknownShape(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContinuumShape {
    /// `U = step(t + |x| - 1)`.
    Diamond,
    /// `U = step(t^2 + x^2 - 1)`.
    Ball,
}

impl ContinuumShape {
    pub fn by_name(name: &str) -> Result<Self, ContinuumError> {
        match name {
            "diamond" => Ok(Self::Diamond),
            "ball" | "sphere" => Ok(Self::Ball),
            other => Err(ContinuumError::UnknownShape(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Diamond => "diamond",
            Self::Ball => "ball",
        }
    }

    /// Time step of a link with spatial offset `x`, `|x| <= 1`.
    pub fn link_height(self, x: f64) -> f64 {
        match self {
            Self::Diamond => 1.0 - x.abs(),
            Self::Ball => (1.0 - x * x).max(0.0).sqrt(),
        }
    }

    /// Signed distance to the contact surface: `U(t, x) = 1` iff this is `>= 0`.
    pub fn clearance(self, t: f64, x: f64) -> f64 {
        match self {
            Self::Diamond => t.abs() + x.abs() - 1.0,
            Self::Ball => (t * t + x * x).sqrt() - 1.0,
        }
    }

    /// `d/de clearance(t + e dt, x)` at `e = 0`.
    pub fn clearance_slope(self, t: f64, x: f64, dt: f64) -> f64 {
        match self {
            Self::Diamond if t.abs() <= CONTACT => dt.abs(),
            Self::Diamond => t.signum() * dt,
            Self::Ball => {
                let r = (t * t + x * x).sqrt();
                if r > 0.0 {
                    t * dt / r
                } else {
                    0.0
                }
            }
        }
    }

    pub fn repulsion(self, t: f64, x: f64) -> f64 {
        if self.clearance(t, x) >= 0.0 {
            1.0
        } else {
            0.0
        }
    }
}

/// A tree on `0..n` rooted at 0, stored as `(child, parent)` links listed so
/// that every parent precedes its children.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledTree {
    pub n: usize,
    pub links: Vec<(usize, usize)>,
}

impl LabeledTree {
    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut links = Vec::with_capacity(n - 1);
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            let mut kids: Vec<usize> = adj[v].iter().copied().filter(|&w| !seen[w]).collect();
            kids.sort_unstable();
            for w in kids {
                seen[w] = true;
                links.push((w, v));
                queue.push_back(w);
            }
        }
        Self { n, links }
    }

    pub fn is_link(&self, a: usize, b: usize) -> bool {
        self.links.iter().any(|&(c, p)| (c, p) == (a, b) || (c, p) == (b, a))
    }
}

/// All `n^{n-2}` labeled trees on `n` vertices, via Prüfer sequences.
pub fn labeled_trees(n: usize) -> Vec<LabeledTree> {
    match n {
        0 => Vec::new(),
        1 => vec![LabeledTree { n: 1, links: Vec::new() }],
        2 => vec![LabeledTree::from_edges(2, &[(0, 1)])],
        _ => {
            let len = n - 2;
            let count = n.pow(len as u32);
            (0..count)
                .map(|mut code| {
                    let seq: Vec<usize> = (0..len)
                        .map(|_| {
                            let d = code % n;
                            code /= n;
                            d
                        })
                        .collect();
                    LabeledTree::from_edges(n, &prufer_edges(n, &seq))
                })
                .collect()
        }
    }
}

fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Monomer positions `(t, x)` from the link offsets (one per link, in link order).
fn place(shape: ContinuumShape, tree: &LabeledTree, offsets: &[f64], out: &mut [(f64, f64)]) {
    out[0] = (0.0, 0.0);
    for (&(child, parent), &u) in tree.links.iter().zip(offsets) {
        let (t, x) = out[parent];
        out[child] = (t + shape.link_height(u), x + u);
    }
}

/// Smallest clearance over non-tree pairs; `+1` when there are none.
fn min_clearance(shape: ContinuumShape, tree: &LabeledTree, pos: &[(f64, f64)]) -> f64 {
    let mut m: f64 = 1.0;
    for a in 0..tree.n {
        for b in a + 1..tree.n {
            if !tree.is_link(a, b) {
                m = m.min(shape.clearance(pos[a].0 - pos[b].0, pos[a].1 - pos[b].1));
            }
        }
    }
    m
}

/// `N^N / N!`.
pub fn hard_rod_target(n: usize) -> Rational {
    let mut fact = BigInt::one();
    for k in 2..=n {
        fact *= k;
    }
    Rational::new(BigInt::from(n).pow(n as u32), fact)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureValue {
    pub value: f64,
    pub error: f64,
}

/// `d_N` for `N <= 3` by adaptive quadrature. The innermost link offset is
/// integrated exactly as the length of the set where every clearance is
/// nonnegative (boundaries located by bisection); the outer one by adaptive
/// Gauss-Kronrod split at the kink `x = 0`.
pub fn coefficient_quadrature(shape: ContinuumShape, n: usize, tol: f64) -> Result<QuadratureValue, ContinuumError> {
    if !(tol > 0.0) {
        return Err(ContinuumError::BadTolerance(tol));
    }
    if !(1..=3).contains(&n) {
        return Err(ContinuumError::QuadratureOrder(n));
    }
    if n == 1 {
        return Ok(QuadratureValue { value: 1.0, error: 0.0 });
    }
    let trees = labeled_trees(n);
    let norm = factorial(n - 1);
    let per_tree = tol * norm / (2.0 * trees.len() as f64);
    let xtol = 1e-14;
    let mut value = 0.0;
    let mut error = 0.0;
    for tree in &trees {
        let mut pos = vec![(0.0, 0.0); n];
        let mut inner = |outer: &[f64]| {
            superlevel_measure(
                |v| {
                    let mut offsets = outer.to_vec();
                    offsets.push(v);
                    place(shape, tree, &offsets, &mut pos);
                    min_clearance(shape, tree, &pos)
                },
                -1.0,
                1.0,
                256,
                xtol,
            )
        };
        if n == 2 {
            value += inner(&[]);
            error += 2.0 * xtol;
        } else {
            let est = integrate(|u| inner(&[u]), -1.0, 1.0, &[0.0], per_tree, 2000)?;
            value += est.value;
            error += est.error + 2.0 * 512.0 * xtol;
        }
    }
    Ok(QuadratureValue { value: value / norm, error: error / norm })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

const BLOCK: u64 = 1 << 16;

/// Monte Carlo `d_N`, stratified by labeled tree. Each tree gets an equal
/// share of `samples`; link offsets are uniform on `[-1, 1]`. The random
/// stream is ChaCha8 keyed by `seed`, with the tree index as stream id and
/// the sample index fixing the word position, so the result is independent
/// of scheduling.
pub fn coefficient_mc(shape: ContinuumShape, n: usize, samples: u64, seed: u64) -> Result<McEstimate, ContinuumError> {
    if !(2..=6).contains(&n) {
        return Err(ContinuumError::MonteCarloOrder(n));
    }
    let trees = labeled_trees(n);
    if samples < 2 * trees.len() as u64 {
        return Err(ContinuumError::TooFewSamples { trees: trees.len(), samples });
    }
    let share = |i: usize| samples / trees.len() as u64 + u64::from((i as u64) < samples % trees.len() as u64);
    let jobs: Vec<(usize, u64)> = (0..trees.len())
        .flat_map(|i| (0..share(i).div_ceil(BLOCK)).map(move |b| (i, b)))
        .collect();
    let hits: Vec<u64> = jobs
        .par_iter()
        .map(|&(i, block)| {
            let start = block * BLOCK;
            let end = (start + BLOCK).min(share(i));
            count_hits(shape, &trees[i], seed, i as u64, start, end)
        })
        .collect();
    let mut per_tree = vec![0u64; trees.len()];
    for (&(i, _), h) in jobs.iter().zip(hits) {
        per_tree[i] += h;
    }
    let scale = 2f64.powi(n as i32 - 1) / factorial(n - 1);
    let mut mean = 0.0;
    let mut var = 0.0;
    for (i, &h) in per_tree.iter().enumerate() {
        let m = share(i) as f64;
        let p = h as f64 / m;
        mean += p;
        var += p * (1.0 - p) / (m - 1.0);
    }
    Ok(McEstimate { estimate: scale * mean, stderr: scale * var.sqrt(), samples })
}

/// Clearances below this are contacts. Exact contacts fill sets of positive
/// measure for the diamond once `N >= 4` (faces slide along each other), and
/// the step function must then be read as the limit of a smoothed step.
const CONTACT: f64 = 1e-12;

/// Uniform on `[0, 1)` from the top 53 bits.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// One sample is accepted with the smoothed-step limit: every link height
/// gets an infinitesimal slack `eps * s_k` and every non-tree pair a
/// threshold `eps * r`, all i.i.d. (their law drops out of the limit). A pair
/// in exact contact then survives iff the first-order clearance beats `r`.
fn count_hits(shape: ContinuumShape, tree: &LabeledTree, seed: u64, stream: u64, start: u64, end: u64) -> u64 {
    let links = tree.links.len();
    let pairs: Vec<(usize, usize)> = (0..tree.n)
        .flat_map(|a| (a + 1..tree.n).map(move |b| (a, b)))
        .filter(|&(a, b)| !tree.is_link(a, b))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    // two 32-bit words per u64 draw
    let draws = 2 * links + pairs.len();
    rng.set_word_pos(u128::from(start) * draws as u128 * 2);
    let mut offsets = vec![0.0; links];
    let mut pos = vec![(0.0, 0.0); tree.n];
    let mut slack = vec![0.0; tree.n];
    let mut hits = 0;
    for _ in start..end {
        for o in offsets.iter_mut() {
            *o = 2.0 * unit(&mut rng) - 1.0;
        }
        place(shape, tree, &offsets, &mut pos);
        for &(child, parent) in &tree.links {
            slack[child] = slack[parent] + unit(&mut rng);
        }
        let mut ok = true;
        for &(a, b) in &pairs {
            let threshold = unit(&mut rng);
            if !ok {
                continue;
            }
            let (dt, dx) = (pos[a].0 - pos[b].0, pos[a].1 - pos[b].1);
            let c0 = shape.clearance(dt, dx);
            ok = if c0 > CONTACT {
                true
            } else if c0 < -CONTACT {
                false
            } else {
                shape.clearance_slope(dt, dx, slack[a] - slack[b]) >= threshold
            };
        }
        if ok {
            hits += 1;
        }
    }
    hits
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContinuumReport {
    pub shape: ContinuumShape,
    #[serde(rename = "N")]
    pub n: usize,
    pub method: String,
    pub estimate: f64,
    /// Standard error for Monte Carlo, error bound for quadrature.
    pub stderr: f64,
    #[serde(with = "rational_serde")]
    pub target: Rational,
    /// `|estimate - target| / stderr`; absent when `stderr` is zero.
    pub sigmas: Option<f64>,
}

impl ContinuumReport {
    pub fn new(shape: ContinuumShape, n: usize, method: &str, estimate: f64, stderr: f64) -> Self {
        let target = hard_rod_target(n);
        let gap = (estimate - crate::series::rational_to_f64(&target)).abs();
        let sigmas = (stderr > 0.0).then(|| gap / stderr);
        Self { shape, n, method: method.to_string(), estimate, stderr, target, sigmas }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_counts_and_rooting() {
        for n in 1..=6 {
            let trees = labeled_trees(n);
            assert_eq!(trees.len(), n.pow(n.saturating_sub(2) as u32).max(1));
            for t in &trees {
                assert_eq!(t.links.len(), n - 1);
                let mut placed = vec![false; n];
                placed[0] = true;
                for &(c, p) in &t.links {
                    assert!(placed[p] && !placed[c]);
                    placed[c] = true;
                }
            }
        }
        let mut edge_sets: Vec<Vec<(usize, usize)>> = labeled_trees(5).into_iter().map(|t| {
            let mut e: Vec<_> = t.links.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            e.sort();
            e
        }).collect();
        edge_sets.sort();
        edge_sets.dedup();
        assert_eq!(edge_sets.len(), 125);
    }

    #[test]
    fn both_link_measures_are_unit_density() {
        // V integrates over t to the indicator of |x| <= 1 for either shape:
        // the contact time solves clearance(t, x) = 0.
        for shape in [ContinuumShape::Diamond, ContinuumShape::Ball] {
            for x in [-0.9, -0.3, 0.0, 0.5, 1.0] {
                let t = shape.link_height(x);
                assert!(shape.clearance(t, x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn small_n_quadrature() {
        for shape in [ContinuumShape::Diamond, ContinuumShape::Ball] {
            assert_eq!(coefficient_quadrature(shape, 1, 1e-6).unwrap().value, 1.0);
            assert!((coefficient_quadrature(shape, 2, 1e-6).unwrap().value - 2.0).abs() < 1e-10);
            let q = coefficient_quadrature(shape, 3, 1e-6).unwrap();
            assert!((q.value - 4.5).abs() < 1e-5, "{shape:?} {q:?}");
            assert!(q.error < 1e-5);
        }
        assert_eq!(coefficient_quadrature(ContinuumShape::Ball, 4, 1e-6), Err(ContinuumError::QuadratureOrder(4)));
    }

    #[test]
    fn ball_pair_is_exact() {
        let e = coefficient_mc(ContinuumShape::Ball, 2, 1000, 3).unwrap();
        assert_eq!((e.estimate, e.stderr), (2.0, 0.0));
    }

    #[test]
    fn hard_rod_volumes_by_sampling() {
        for shape in [ContinuumShape::Diamond, ContinuumShape::Ball] {
            for n in 3..=4 {
                let e = coefficient_mc(shape, n, 1_000_000, 5).unwrap();
                let r = ContinuumReport::new(shape, n, "monte-carlo", e.estimate, e.stderr);
                assert!(r.sigmas.unwrap() < 3.0, "{shape:?} {n} {e:?}");
            }
        }
    }

    #[test]
    fn sliding_contacts_occur_for_diamonds() {
        // root, child a at offset 0.2, child b at 0.1 then grandchild at 0.3:
        // the grandchild lies exactly on a's face line
        let shape = ContinuumShape::Diamond;
        let tree = LabeledTree { n: 4, links: vec![(1, 0), (2, 0), (3, 2)] };
        let mut pos = vec![(0.0, 0.0); 4];
        place(shape, &tree, &[0.2, 0.1, 0.3], &mut pos);
        let c = shape.clearance(pos[3].0 - pos[1].0, pos[3].1 - pos[1].1);
        assert!(c.abs() < CONTACT);
        place(shape, &tree, &[0.3, 0.15, 0.4], &mut pos);
        let c = shape.clearance(pos[3].0 - pos[1].0, pos[3].1 - pos[1].1);
        assert!(c.abs() < CONTACT);
    }

    #[test]
    fn mc_is_seed_deterministic() {
        let a = coefficient_mc(ContinuumShape::Diamond, 4, 200_000, 11).unwrap();
        let b = coefficient_mc(ContinuumShape::Diamond, 4, 200_000, 11).unwrap();
        assert_eq!(a, b);
        let c = coefficient_mc(ContinuumShape::Diamond, 4, 200_000, 12).unwrap();
        assert_ne!(a.estimate, c.estimate);
    }

    #[test]
    fn mc_validation() {
        assert_eq!(coefficient_mc(ContinuumShape::Diamond, 7, 10, 0), Err(ContinuumError::MonteCarloOrder(7)));
        assert!(matches!(coefficient_mc(ContinuumShape::Diamond, 4, 5, 0), Err(ContinuumError::TooFewSamples { .. })));
    }

    #[test]
    fn targets() {
        assert_eq!(hard_rod_target(4), crate::series::ratio(32, 3));
        assert_eq!(hard_rod_target(1), crate::series::int(1));
    }
}
