//! Directed branched polymers on `N x Z^D` for the neighbor-set models.
//!
//! A polymer is an embedded rooted tree: the root sits at level 0, position 0,
//! and every other monomer sits one level above its parent at an offset in
//! the neighbor set `I`. Monomers on a common level may not differ by an
//! element of `I`. A monomer `v` with `n_v` polymer monomers within `I` on the
//! level below carries the factor `1/n_v`.
//!
//! Two enumeration routes are provided. [`Strategy::TreeWalk`] visits every
//! `(sites, parent)` pair exactly once in canonical order (levels ascending,
//! positions in generation order within a level, parent picked at insertion).
//! [`Strategy::LevelTransfer`] sums the parent choices in closed form and
//! memoizes on translation classes of whole levels, which is what makes the
//! default budgets reachable.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{rational_serde, Coefficient, Rational};

/// Spatial position; chain models leave the second coordinate at 0.
pub type Site = [i32; 2];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("unknown lattice model {0:?} (expected line3, square5, tri7)")]
    UnknownModel(String),
    #[error("neighbor set must contain the origin")]
    MissingOrigin,
    #[error("neighbor set is not symmetric: {0:?} present but its negative is not")]
    NotSymmetric(Vec<i32>),
    #[error("neighbor offsets must all have dimension 1 or 2, got {0}")]
    BadDimension(usize),
    #[error("cannot parse neighbor set: {0}")]
    BadNeighborJson(String),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {order} exceeds the enumeration budget {budget} for {model}; pass a larger budget (--force) to proceed")]
    OverBudget { model: String, order: usize, budget: usize },
    #[error("malformed polymer: {0}")]
    MalformedPolymer(String),
    #[error("count overflowed 128-bit arithmetic at order {0}")]
    Overflow(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    Chain,
    Square,
    TriangularOblique,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeModel {
    name: String,
    dimension: usize,
    basis: Basis,
    neighbors: Vec<Site>,
}

impl LatticeModel {
    /// `{-1, 0, +1}` on the chain; partner of the dimer gas.
    pub fn line3() -> Self {
        Self::preset("line3", 1, Basis::Chain, &[[0, 0], [1, 0], [-1, 0]])
    }

    /// `{0, ±e1, ±e2}`; partner of hard squares.
    pub fn square5() -> Self {
        Self::preset("square5", 2, Basis::Square, &[[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1]])
    }

    /// Triangular lattice in oblique coordinates; partner of hard hexagons.
    pub fn tri7() -> Self {
        Self::preset(
            "tri7",
            2,
            Basis::TriangularOblique,
            &[[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1], [1, -1], [-1, 1]],
        )
    }

    fn preset(name: &str, dimension: usize, basis: Basis, offsets: &[Site]) -> Self {
        let mut neighbors = offsets.to_vec();
        neighbors.sort();
        Self { name: name.to_string(), dimension, basis, neighbors }
    }

    pub fn by_name(name: &str) -> Result<Self, LatticeError> {
        match name {
            "line3" => Ok(Self::line3()),
            "square5" => Ok(Self::square5()),
            "tri7" => Ok(Self::tri7()),
            other => Err(LatticeError::UnknownModel(other.to_string())),
        }
    }

    pub fn presets() -> Vec<Self> {
        vec![Self::line3(), Self::square5(), Self::tri7()]
    }

    /// A user neighbor set. Must be symmetric and contain the origin.
    pub fn custom(name: &str, offsets: &[Vec<i32>]) -> Result<Self, LatticeError> {
        let dimension = offsets.first().map_or(0, Vec::len);
        if !(1..=2).contains(&dimension) {
            return Err(LatticeError::BadDimension(dimension));
        }
        if let Some(bad) = offsets.iter().find(|o| o.len() != dimension) {
            return Err(LatticeError::BadDimension(bad.len()));
        }
        let mut neighbors: Vec<Site> =
            offsets.iter().map(|o| [o[0], if dimension == 2 { o[1] } else { 0 }]).collect();
        neighbors.sort();
        neighbors.dedup();
        if !neighbors.contains(&[0, 0]) {
            return Err(LatticeError::MissingOrigin);
        }
        for o in &neighbors {
            if !neighbors.contains(&[-o[0], -o[1]]) {
                return Err(LatticeError::NotSymmetric(o[..dimension].to_vec()));
            }
        }
        let basis = Basis::Custom;
        Ok(Self { name: name.to_string(), dimension, basis, neighbors })
    }

    /// Parses a JSON list of integer vectors, e.g. `[[0],[1],[-1]]`.
    pub fn from_json(name: &str, json: &str) -> Result<Self, LatticeError> {
        let offsets: Vec<Vec<i32>> =
            serde_json::from_str(json).map_err(|e| LatticeError::BadNeighborJson(e.to_string()))?;
        Self::custom(name, &offsets)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// The neighbor set `I`, origin included, sorted.
    pub fn neighbors(&self) -> &[Site] {
        &self.neighbors
    }

    /// `I` with the origin removed: the gas exclusion set.
    pub fn exclusion_offsets(&self) -> Vec<Site> {
        self.neighbors.iter().copied().filter(|o| *o != [0, 0]).collect()
    }

    pub fn contains(&self, offset: Site) -> bool {
        self.neighbors.binary_search(&offset).is_ok()
    }

    /// Largest order enumerated without an explicit override.
    pub fn default_budget(&self) -> usize {
        match self.basis {
            Basis::Chain => 14,
            Basis::Square => 12,
            Basis::TriangularOblique | Basis::Custom => 10,
        }
    }
}

fn sub(a: Site, b: Site) -> Site {
    [a[0] - b[0], a[1] - b[1]]
}

/// A monomer: time level and spatial position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomer {
    pub level: u32,
    pub position: Site,
}

/// An embedded rooted tree. `parent[0]` is `None` (the root); every other
/// entry names an earlier monomer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedPolymer {
    pub sites: Vec<Monomer>,
    pub parent: Vec<Option<usize>>,
}

impl DirectedPolymer {
    pub fn root() -> Self {
        Self { sites: vec![Monomer { level: 0, position: [0, 0] }], parent: vec![None] }
    }

    /// Appends a monomer one level above `parent` at `position`.
    pub fn grow(mut self, parent: usize, position: Site) -> Self {
        let level = self.sites[parent].level + 1;
        self.sites.push(Monomer { level, position });
        self.parent.push(Some(parent));
        self
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }
}

/// The weight `∏ 1/n_v`, or 0 when two monomers on one level are neighbors.
pub fn polymer_weight(p: &DirectedPolymer, model: &LatticeModel) -> Result<Rational, LatticeError> {
    let bad = |m: String| Err(LatticeError::MalformedPolymer(m));
    if p.sites.is_empty() || p.sites.len() != p.parent.len() {
        return bad("sites and parent map must be nonempty and of equal length".into());
    }
    if p.sites[0] != (Monomer { level: 0, position: [0, 0] }) || p.parent[0].is_some() {
        return bad("monomer 0 must be the root at level 0, position 0".into());
    }
    for (v, (site, parent)) in p.sites.iter().zip(&p.parent).enumerate().skip(1) {
        let Some(u) = *parent else {
            return bad(format!("monomer {v} has no parent"));
        };
        if u >= p.sites.len() || u == v {
            return bad(format!("monomer {v} has invalid parent {u}"));
        }
        let up = p.sites[u];
        if site.level != up.level + 1 {
            return bad(format!("monomer {v} is not one level above its parent {u}"));
        }
        if !model.contains(sub(site.position, up.position)) {
            return bad(format!("monomer {v} is not within the neighbor set of its parent {u}"));
        }
    }
    // Levels strictly increase along parent links, so the map is acyclic.
    let mut by_level: BTreeMap<u32, Vec<Site>> = BTreeMap::new();
    for s in &p.sites {
        by_level.entry(s.level).or_default().push(s.position);
    }
    for level in by_level.values() {
        for (i, a) in level.iter().enumerate() {
            if level[i + 1..].iter().any(|b| model.contains(sub(*a, *b))) {
                return Ok(Rational::zero());
            }
        }
    }
    let mut den = BigInt::from(1);
    for s in &p.sites[1..] {
        let below = &by_level[&(s.level - 1)];
        let n = below.iter().filter(|b| model.contains(sub(s.position, **b))).count();
        den *= n;
    }
    Ok(Rational::new(BigInt::from(1), den))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    TreeWalk,
    #[default]
    LevelTransfer,
}

/// Order in which candidate positions are tried within a level.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GenerationOrder {
    #[default]
    Lexicographic,
    Reversed,
}

#[derive(Clone, Debug, Default)]
pub struct EnumerationOptions {
    pub strategy: Strategy,
    pub order: GenerationOrder,
    /// Replaces the model's default budget.
    pub budget: Option<usize>,
}

/// Weighted (`d_N`) and raw tree counts for `N = 1..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbpCounts {
    pub weighted: Vec<Rational>,
    pub unweighted: Vec<BigInt>,
}

pub fn enumerate_dbp(model: &LatticeModel, order: usize) -> Result<Vec<Rational>, LatticeError> {
    Ok(enumerate_with(model, order, &EnumerationOptions::default())?.weighted)
}

pub fn count_unweighted(model: &LatticeModel, order: usize) -> Result<Vec<BigInt>, LatticeError> {
    Ok(enumerate_with(model, order, &EnumerationOptions::default())?.unweighted)
}

pub fn enumerate_with(
    model: &LatticeModel,
    order: usize,
    opts: &EnumerationOptions,
) -> Result<DbpCounts, LatticeError> {
    if order == 0 {
        return Err(LatticeError::ZeroOrder);
    }
    let budget = opts.budget.unwrap_or_else(|| model.default_budget());
    if order > budget {
        return Err(LatticeError::OverBudget { model: model.name.clone(), order, budget });
    }
    match opts.strategy {
        Strategy::TreeWalk => TreeWalk::new(model, order, opts.order).run(),
        Strategy::LevelTransfer => LevelTransfer::new(model, order, opts.order).run(),
    }
}

/// Candidate positions on the next level with their `n` (neighbors below).
fn next_level_candidates(model: &LatticeModel, level: &[Site], order: GenerationOrder) -> Vec<(Site, u32)> {
    let mut counts: BTreeMap<Site, u32> = BTreeMap::new();
    for p in level {
        for o in model.neighbors() {
            *counts.entry([p[0] + o[0], p[1] + o[1]]).or_default() += 1;
        }
    }
    let mut out: Vec<_> = counts.into_iter().collect();
    if order == GenerationOrder::Reversed {
        out.reverse();
    }
    out
}

struct TreeWalk<'a> {
    model: &'a LatticeModel,
    order: usize,
    generation: GenerationOrder,
}

/// Per-size tallies: raw count and a histogram of weight denominators.
#[derive(Default)]
struct Tally {
    trees: Vec<u128>,
    dens: Vec<HashMap<u128, u128>>,
}

impl Tally {
    fn new(order: usize) -> Self {
        Self { trees: vec![0; order + 1], dens: vec![HashMap::new(); order + 1] }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (n, (t, d)) in other.trees.into_iter().zip(other.dens).enumerate() {
            self.trees[n] += t;
            for (den, c) in d {
                *self.dens[n].entry(den).or_default() += c;
            }
        }
        self
    }
}

impl<'a> TreeWalk<'a> {
    fn new(model: &'a LatticeModel, order: usize, generation: GenerationOrder) -> Self {
        Self { model, order, generation }
    }

    fn run(&self) -> Result<DbpCounts, LatticeError> {
        let root = vec![[0, 0]];
        let cands = next_level_candidates(self.model, &root, self.generation);
        let mut base = Tally::new(self.order);
        base.trees[1] = 1;
        base.dens[1].insert(1, 1);
        // Trees with at least two monomers split by their first level-1 insertion.
        let tally = if self.order == 1 {
            base
        } else {
            (0..cands.len())
                .into_par_iter()
                .map(|first| {
                    let mut t = Tally::new(self.order);
                    let mut cur = Vec::with_capacity(self.order);
                    self.insert(&cands, first, &mut cur, 2, 1, &mut t);
                    t
                })
                .reduce(|| Tally::new(self.order), Tally::merge)
                .merge(base)
        };
        let weighted = (1..=self.order)
            .map(|n| {
                tally.dens[n]
                    .iter()
                    .map(|(den, c)| Rational::new(BigInt::from(*c), BigInt::from(*den)))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        let unweighted = tally.trees[1..].iter().map(|&c| BigInt::from(c)).collect();
        Ok(DbpCounts { weighted, unweighted })
    }

    /// Places candidate `idx` on the current level (it must not clash with
    /// what is already there), once per parent choice.
    fn insert(
        &self,
        cands: &[(Site, u32)],
        idx: usize,
        cur: &mut Vec<Site>,
        size: usize,
        den: u128,
        tally: &mut Tally,
    ) {
        let (site, n) = cands[idx];
        if cur.iter().any(|c| self.model.contains(sub(site, *c))) {
            return;
        }
        cur.push(site);
        let den = den * n as u128;
        for _parent in 0..n {
            tally.trees[size] += 1;
            *tally.dens[size].entry(den).or_default() += 1;
            if size < self.order {
                self.extend(cands, idx, cur, size, den, tally);
            }
        }
        cur.pop();
    }

    fn extend(
        &self,
        cands: &[(Site, u32)],
        last: usize,
        cur: &mut Vec<Site>,
        size: usize,
        den: u128,
        tally: &mut Tally,
    ) {
        // Another monomer on the current level, later in generation order.
        for idx in last + 1..cands.len() {
            self.insert(cands, idx, cur, size + 1, den, tally);
        }
        // Or close the level and open the next one.
        let next = next_level_candidates(self.model, cur, self.generation);
        let mut fresh = Vec::with_capacity(self.order);
        for idx in 0..next.len() {
            self.insert(&next, idx, &mut fresh, size + 1, den, tally);
        }
    }
}

/// Memoized sum over whole levels. For a level set `S` and budget `m`, the
/// table holds `g_j` = weighted (and raw) number of ways to place `j` more
/// monomers strictly above `S`. Summing a monomer's `n` parent choices at
/// weight `1/n` gives exactly 1, so weighted entries are integers.
struct LevelTransfer<'a> {
    model: &'a LatticeModel,
    generation: GenerationOrder,
    order: usize,
    memo: HashMap<(Vec<Site>, usize), Vec<(u128, u128)>>,
}

impl<'a> LevelTransfer<'a> {
    fn new(model: &'a LatticeModel, order: usize, generation: GenerationOrder) -> Self {
        Self { model, generation, order, memo: HashMap::new() }
    }

    fn run(mut self) -> Result<DbpCounts, LatticeError> {
        let g = self.above(&[[0, 0]], self.order - 1)?;
        let weighted = g.iter().map(|(w, _)| Rational::from_integer(BigInt::from(*w))).collect();
        let unweighted = g.iter().map(|(_, u)| BigInt::from(*u)).collect();
        Ok(DbpCounts { weighted, unweighted })
    }

    fn normalize(level: &[Site]) -> Vec<Site> {
        let mut v = level.to_vec();
        v.sort();
        let base = v[0];
        v.iter().map(|s| sub(*s, base)).collect()
    }

    fn above(&mut self, level: &[Site], budget: usize) -> Result<Vec<(u128, u128)>, LatticeError> {
        let key = (Self::normalize(level), budget);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut g = vec![(0u128, 0u128); budget + 1];
        g[0] = (1, 1);
        if budget > 0 {
            let cands = next_level_candidates(self.model, &key.0, self.generation);
            let mut chosen = Vec::new();
            self.subsets(&cands, 0, &mut chosen, 1, budget, &mut g)?;
        }
        self.memo.insert(key, g.clone());
        Ok(g)
    }

    /// Enumerates independent subsets of `cands[from..]` extending `chosen`,
    /// folding each nonempty one into `g` together with its continuation.
    fn subsets(
        &mut self,
        cands: &[(Site, u32)],
        from: usize,
        chosen: &mut Vec<Site>,
        raw: u128,
        budget: usize,
        g: &mut [(u128, u128)],
    ) -> Result<(), LatticeError> {
        let order = self.order;
        let overflow = move || LatticeError::Overflow(order);
        for idx in from..cands.len() {
            let (site, n) = cands[idx];
            if chosen.iter().any(|c| self.model.contains(sub(site, *c))) {
                continue;
            }
            chosen.push(site);
            let raw = raw.checked_mul(n as u128).ok_or_else(overflow)?;
            let k = chosen.len();
            let rest = self.above(chosen, budget - k)?;
            for (j, (w, u)) in rest.iter().enumerate() {
                let slot = &mut g[k + j];
                slot.0 = slot.0.checked_add(*w).ok_or_else(overflow)?;
                let add = u.checked_mul(raw).ok_or_else(overflow)?;
                slot.1 = slot.1.checked_add(add).ok_or_else(overflow)?;
            }
            if k < budget {
                self.subsets(cands, idx + 1, chosen, raw, budget, g)?;
            }
            chosen.pop();
        }
        Ok(())
    }
}

/// JSON report for an enumeration run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DbpReport {
    pub model: String,
    pub order: usize,
    pub d: Vec<Coefficient>,
}

impl DbpReport {
    pub fn new(model: &LatticeModel, d: &[Rational]) -> Self {
        let d: Vec<_> = d.iter().enumerate().map(|(i, v)| Coefficient { n: i + 1, value: v.clone() }).collect();
        Self { model: model.name.clone(), order: d.len(), d }
    }
}

/// Serializable single weight, for tools that inspect one polymer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightReport {
    pub polymer: DirectedPolymer,
    #[serde(with = "rational_serde")]
    pub weight: Rational,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, ratio};

    fn walk(model: &LatticeModel, k: usize) -> DbpCounts {
        let opts = EnumerationOptions { strategy: Strategy::TreeWalk, ..Default::default() };
        enumerate_with(model, k, &opts).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn line3_small_orders() {
        assert_eq!(enumerate_dbp(&LatticeModel::line3(), 3).unwrap(), ints(&[1, 3, 10]));
        assert_eq!(enumerate_dbp(&LatticeModel::line3(), 1).unwrap(), ints(&[1]));
        assert_eq!(walk(&LatticeModel::line3(), 3).weighted, ints(&[1, 3, 10]));
    }

    #[test]
    fn tri7_hand_enumeration() {
        // 7 placements at N=2; 49 chains plus 9 non-adjacent pairs on level 1 at N=3
        assert_eq!(enumerate_dbp(&LatticeModel::tri7(), 3).unwrap(), ints(&[1, 7, 58]));
        assert_eq!(walk(&LatticeModel::tri7(), 3).weighted, ints(&[1, 7, 58]));
    }

    #[test]
    fn unweighted_counts() {
        let u = |m: &LatticeModel, k| count_unweighted(m, k).unwrap();
        assert_eq!(u(&LatticeModel::line3(), 2), vec![BigInt::from(1), BigInt::from(3)]);
        assert_eq!(u(&LatticeModel::line3(), 3), vec![BigInt::from(1), BigInt::from(3), BigInt::from(10)]);
        assert_eq!(u(&LatticeModel::tri7(), 2), vec![BigInt::from(1), BigInt::from(7)]);
    }

    #[test]
    fn routes_agree() {
        for (model, k) in [(LatticeModel::line3(), 8), (LatticeModel::square5(), 6), (LatticeModel::tri7(), 6)] {
            let fast = enumerate_with(&model, k, &EnumerationOptions::default()).unwrap();
            assert_eq!(walk(&model, k), fast, "{}", model.name());
        }
    }

    #[test]
    fn generation_order_does_not_matter() {
        for model in LatticeModel::presets() {
            for strategy in [Strategy::TreeWalk, Strategy::LevelTransfer] {
                let fwd = EnumerationOptions { strategy, ..Default::default() };
                let rev = EnumerationOptions { strategy, order: GenerationOrder::Reversed, budget: None };
                assert_eq!(enumerate_with(&model, 5, &fwd).unwrap(), enumerate_with(&model, 5, &rev).unwrap());
            }
        }
    }

    #[test]
    fn chain_polymer_has_weight_one() {
        let m = LatticeModel::tri7();
        let p = DirectedPolymer::root().grow(0, [1, 0]).grow(1, [1, 1]).grow(2, [0, 2]);
        assert_eq!(polymer_weight(&p, &m).unwrap(), int(1));
    }

    #[test]
    fn shared_child_has_weight_half() {
        let m = LatticeModel::line3();
        let a = DirectedPolymer::root().grow(0, [-1, 0]).grow(0, [1, 0]).grow(1, [0, 0]);
        let b = DirectedPolymer::root().grow(0, [-1, 0]).grow(0, [1, 0]).grow(2, [0, 0]);
        assert_eq!(polymer_weight(&a, &m).unwrap(), ratio(1, 2));
        assert_eq!(polymer_weight(&a, &m).unwrap() + polymer_weight(&b, &m).unwrap(), int(1));
    }

    #[test]
    fn same_level_neighbors_weigh_zero() {
        let m = LatticeModel::line3();
        let p = DirectedPolymer::root().grow(0, [0, 0]).grow(0, [1, 0]);
        assert_eq!(polymer_weight(&p, &m).unwrap(), int(0));
    }

    #[test]
    fn malformed_polymers_rejected() {
        let m = LatticeModel::line3();
        let mut gap = DirectedPolymer::root().grow(0, [1, 0]);
        gap.sites[1].level = 2;
        assert!(matches!(polymer_weight(&gap, &m), Err(LatticeError::MalformedPolymer(_))));
        let mut cycle = DirectedPolymer::root().grow(0, [1, 0]).grow(1, [0, 0]);
        cycle.parent[1] = Some(2);
        assert!(polymer_weight(&cycle, &m).is_err());
        let far = DirectedPolymer::root().grow(0, [3, 0]);
        assert!(polymer_weight(&far, &m).is_err());
    }

    #[test]
    fn budget_guard() {
        let err = enumerate_dbp(&LatticeModel::tri7(), 11).unwrap_err();
        assert!(matches!(err, LatticeError::OverBudget { budget: 10, .. }));
        assert!(err.to_string().contains("--force"));
        assert_eq!(enumerate_dbp(&LatticeModel::line3(), 0), Err(LatticeError::ZeroOrder));
    }

    #[test]
    fn custom_sets_validated() {
        assert!(LatticeModel::from_json("x", "[[0],[1],[-1]]").is_ok());
        assert_eq!(LatticeModel::from_json("x", "[[1],[-1]]"), Err(LatticeError::MissingOrigin));
        assert!(matches!(LatticeModel::from_json("x", "[[0],[1]]"), Err(LatticeError::NotSymmetric(_))));
        assert!(matches!(LatticeModel::from_json("x", "[[0,0],[1]]"), Err(LatticeError::BadDimension(1))));
        assert!(matches!(LatticeModel::from_json("x", "nope"), Err(LatticeError::BadNeighborJson(_))));
        let line = LatticeModel::from_json("line", "[[-1],[0],[1]]").unwrap();
        assert_eq!(enumerate_dbp(&line, 5).unwrap(), enumerate_dbp(&LatticeModel::line3(), 5).unwrap());
    }
}
