//! Fibers, fiber graphs, Betti degrees, indispensable binomials and minimal
//! generating sets of A-graded binomial ideals.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{buchberger, normal_form_monomial, Binomial, Monomial};
use crate::budget::{Budget, StepCounter};
use crate::dynkin::Configuration;
use crate::error::{check_len, Error, Result};
use crate::linalg;
use crate::toric::{adegree_unchecked, ideals_equal, ToricIdeal};

/// All monomials of one A-degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub degree: Vec<i64>,
    pub monomials: Vec<Monomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeMode {
    /// Edge when the two monomials share a variable.
    Gcd,
    /// Edge when the difference lies in the ideal generated by binomials of
    /// strictly smaller A-degree.
    Ideal,
}

impl std::str::FromStr for EdgeMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gcd" => Ok(EdgeMode::Gcd),
            "ideal" => Ok(EdgeMode::Ideal),
            other => Err(Error::invalid(format!("unknown edge mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberGraph {
    pub fiber: Fiber,
    /// Index pairs into `fiber.monomials`, `i < j`.
    pub edges: Vec<(usize, usize)>,
    /// Connected components as sorted index lists, ordered by first member.
    pub components: Vec<Vec<usize>>,
}

impl FiberGraph {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}

struct FiberSearch<'a> {
    points: &'a [Vec<i64>],
    /// `reach[i][j]`: some point with index >= i has a positive j-th entry
    reach: Vec<Vec<bool>>,
    exps: Vec<u32>,
    out: Vec<Monomial>,
    limit: usize,
    stop_at_first: bool,
}

impl FiberSearch<'_> {
    fn new(c: &Configuration, limit: usize, stop_at_first: bool) -> FiberSearch<'_> {
        let points = c.points();
        let n = c.n();
        let mut reach = vec![vec![false; n]; points.len() + 1];
        for i in (0..points.len()).rev() {
            for j in 0..n {
                reach[i][j] = reach[i + 1][j] || points[i][j] > 0;
            }
        }
        FiberSearch {
            points,
            reach,
            exps: vec![0; points.len()],
            out: Vec::new(),
            limit,
            stop_at_first,
        }
    }

    fn run(&mut self, i: usize, rem: &mut [i64]) -> Result<()> {
        if self.stop_at_first && !self.out.is_empty() {
            return Ok(());
        }
        if rem.iter().all(|&r| r == 0) {
            if self.out.len() == self.limit {
                return Err(Error::Budget {
                    what: "fiber size",
                    limit: self.limit as u64,
                });
            }
            self.out.push(Monomial::new(self.exps.clone()));
            return Ok(());
        }
        if i == self.points.len() {
            return Ok(());
        }
        if rem.iter().zip(&self.reach[i]).any(|(&r, &ok)| r > 0 && !ok) {
            return Ok(());
        }
        let p = &self.points[i];
        let top = p
            .iter()
            .zip(rem.iter())
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &r)| r / a)
            .min()
            .unwrap_or(0);
        for e in (0..=top).rev() {
            for (r, &a) in rem.iter_mut().zip(p) {
                *r -= a * e;
            }
            self.exps[i] = e as u32;
            let res = self.run(i + 1, rem);
            for (r, &a) in rem.iter_mut().zip(p) {
                *r += a * e;
            }
            res?;
        }
        self.exps[i] = 0;
        Ok(())
    }
}

/// Every monomial of A-degree `b`, by depth-first search with per-coordinate
/// bounds. Output is in lex order with `x_1` largest first.
pub fn fiber(c: &Configuration, b: &[i64], limit: usize) -> Result<Fiber> {
    check_len(c.n(), b.len())?;
    if b.iter().any(|&v| v < 0) {
        return Err(Error::invalid("fiber degree must be nonnegative"));
    }
    let mut s = FiberSearch::new(c, limit, false);
    s.run(0, &mut b.to_vec())?;
    Ok(Fiber {
        degree: b.to_vec(),
        monomials: s.out,
    })
}

/// Whether `b` lies in the semigroup generated by the points.
pub(crate) fn in_semigroup(c: &Configuration, b: &[i64]) -> bool {
    if b.iter().any(|&v| v < 0) {
        return false;
    }
    let mut s = FiberSearch::new(c, usize::MAX, true);
    s.run(0, &mut b.to_vec()).is_ok() && !s.out.is_empty()
}

/// `b' < b` in the semigroup order: `b - b'` is a nonzero semigroup element.
fn degree_below(c: &Configuration, lower: &[i64], b: &[i64]) -> bool {
    lower != b && {
        let diff: Vec<i64> = b.iter().zip(lower).map(|(x, y)| x - y).collect();
        in_semigroup(c, &diff)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn components(mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for x in 0..n {
            let r = self.find(x);
            let k = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(x);
        }
        groups
    }
}

/// The graph `G(b)` on the fiber of `b`.
///
/// In ideal mode the sub-ideal `I_{A,<b}` is generated by the elements of the
/// ideal's reduced Gröbner basis whose degree lies strictly below `b`.
pub fn fiber_graph(
    ideal: &ToricIdeal,
    b: &[i64],
    mode: EdgeMode,
    budget: &Budget,
) -> Result<FiberGraph> {
    let c = ideal.config();
    let fib = fiber(c, b, budget.fiber_size)?;
    let mons = &fib.monomials;
    let mut edges = Vec::new();
    let mut uf = UnionFind::new(mons.len());
    match mode {
        EdgeMode::Gcd => {
            for i in 0..mons.len() {
                for j in (i + 1)..mons.len() {
                    if !mons[i].is_coprime(&mons[j]) {
                        edges.push((i, j));
                        uf.union(i, j);
                    }
                }
            }
        }
        EdgeMode::Ideal => {
            let lower: Vec<Binomial> = ideal
                .gb()
                .elements()
                .iter()
                .filter(|g| degree_below(c, &adegree_unchecked(c, g.lead().exps()), b))
                .cloned()
                .collect();
            let sub = buchberger(
                c.names().to_vec(),
                &lower,
                ideal.order(),
                budget.reduction_steps,
            )?;
            let mut counter = StepCounter::new(budget.reduction_steps);
            let nfs = mons
                .iter()
                .map(|m| normal_form_monomial(m, sub.elements(), &mut counter))
                .collect::<Result<Vec<_>>>()?;
            for i in 0..mons.len() {
                for j in (i + 1)..mons.len() {
                    if nfs[i] == nfs[j] {
                        edges.push((i, j));
                        uf.union(i, j);
                    }
                }
            }
        }
    }
    Ok(FiberGraph {
        fiber: fib,
        edges,
        components: uf.components(),
    })
}

/// One Betti degree with its fiber's component structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiDegree {
    pub degree: Vec<i64>,
    /// Components of `G(b)` as lists of monomials.
    pub components: Vec<Vec<Monomial>>,
}

impl BettiDegree {
    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// Two singleton components: the unique binomial of this degree.
    pub fn indispensable(&self) -> Option<Binomial> {
        match self.components.as_slice() {
            [a, b] if a.len() == 1 && b.len() == 1 => {
                Binomial::new(a[0].clone(), b[0].clone()).ok()
            }
            _ => None,
        }
    }

    /// Spanning trees of the complete multigraph on the components, an edge
    /// between components of sizes `s` and `t` having multiplicity `s t`.
    pub fn choice_count(&self) -> Result<BigUint> {
        let sizes = self.component_sizes();
        let k = sizes.len();
        if k <= 1 {
            return Ok(BigUint::one());
        }
        let total: i64 = sizes.iter().map(|&s| s as i64).sum();
        let lap: Vec<Vec<i64>> = (0..k - 1)
            .map(|i| {
                (0..k - 1)
                    .map(|j| {
                        let (si, sj) = (sizes[i] as i64, sizes[j] as i64);
                        if i == j {
                            si * (total - si)
                        } else {
                            -si * sj
                        }
                    })
                    .collect()
            })
            .collect();
        linalg::determinant(&lap)
            .to_biguint()
            .ok_or(Error::Overflow("spanning tree count"))
    }
}

/// Distinct degrees of the reduced Gröbner basis elements, sorted.
fn candidate_degrees(ideal: &ToricIdeal) -> Vec<Vec<i64>> {
    let c = ideal.config();
    let mut seen = HashSet::new();
    let mut out: Vec<Vec<i64>> = ideal
        .gb()
        .elements()
        .iter()
        .map(|g| adegree_unchecked(c, g.lead().exps()))
        .filter(|d| seen.insert(d.clone()))
        .collect();
    out.sort();
    out
}

/// Degrees `b` of the reduced Gröbner basis whose fiber graph is disconnected.
pub fn betti_degrees(
    ideal: &ToricIdeal,
    mode: EdgeMode,
    budget: &Budget,
) -> Result<Vec<BettiDegree>> {
    let results: Vec<Result<Option<BettiDegree>>> = candidate_degrees(ideal)
        .par_iter()
        .map(|b| {
            let g = fiber_graph(ideal, b, mode, budget)?;
            if g.is_connected() {
                return Ok(None);
            }
            let components = g
                .components
                .iter()
                .map(|comp| comp.iter().map(|&i| g.fiber.monomials[i].clone()).collect())
                .collect();
            Ok(Some(BettiDegree {
                degree: b.clone(),
                components,
            }))
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(d) = r? {
            out.push(d);
        }
    }
    Ok(out)
}

pub fn indispensable_binomials(degrees: &[BettiDegree]) -> Vec<Binomial> {
    degrees
        .iter()
        .filter_map(BettiDegree::indispensable)
        .collect()
}

/// Number of distinct minimal generating sets up to sign.
pub fn count_minimal_generating_sets(degrees: &[BettiDegree]) -> Result<BigUint> {
    degrees
        .iter()
        .try_fold(BigUint::one(), |acc, d| Ok(acc * d.choice_count()?))
}

/// Decode a Prüfer sequence into the edge list of a labelled tree.
fn prufer_tree(k: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; k];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &c in code {
        let leaf = (0..k).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf.min(c), leaf.max(c)));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort();
    edges
}

/// One minimal generating set: per Betti degree a spanning tree on the fiber
/// components and a monomial of each component for every tree edge, all
/// drawn from a generator seeded by `seed`.
pub fn extract_minimal_generating_set(degrees: &[BettiDegree], seed: u64) -> Vec<Binomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for d in degrees {
        let k = d.components.len();
        let edges = if k == 2 {
            vec![(0, 1)]
        } else {
            let code: Vec<usize> = (0..k - 2).map(|_| rng.gen_range(0..k)).collect();
            prufer_tree(k, &code)
        };
        for (a, b) in edges {
            let (ca, cb) = (&d.components[a], &d.components[b]);
            let p = ca[rng.gen_range(0..ca.len())].clone();
            let q = cb[rng.gen_range(0..cb.len())].clone();
            out.push(Binomial::new(p, q).expect("distinct components"));
        }
    }
    out
}

/// Betti data of an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub betti_degrees: Vec<BettiDegree>,
    pub indispensables: Vec<Binomial>,
    #[serde(with = "crate::json::biguint")]
    pub min_gen_set_count: BigUint,
    pub sample_min_gen_set: Vec<Binomial>,
}

pub fn betti_report(
    ideal: &ToricIdeal,
    mode: EdgeMode,
    seed: u64,
    budget: &Budget,
) -> Result<BettiReport> {
    let degrees = betti_degrees(ideal, mode, budget)?;
    Ok(BettiReport {
        indispensables: indispensable_binomials(&degrees),
        min_gen_set_count: count_minimal_generating_sets(&degrees)?,
        sample_min_gen_set: extract_minimal_generating_set(&degrees, seed),
        betti_degrees: degrees,
    })
}

/// Whether `target` is reachable from `start` inside their common fiber by
/// the moves `lead <-> trail` of `moves`.
pub(crate) fn connected_by_moves(
    start: &Monomial,
    target: &Monomial,
    moves: &[&Binomial],
    limit: usize,
) -> Result<bool> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(m) = queue.pop_front() {
        if &m == target {
            return Ok(true);
        }
        for g in moves {
            for (from, to) in [(g.lead(), g.trail()), (g.trail(), g.lead())] {
                if from.divides(&m) {
                    let next = m.rewrite(from, to);
                    if seen.insert(next.clone()) {
                        if seen.len() > limit {
                            return Err(Error::Budget {
                                what: "fiber size",
                                limit: limit as u64,
                            });
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimality {
    /// Every generator lies in the ideal.
    pub contained: bool,
    /// The generators span the whole ideal.
    pub generates: bool,
    /// Indices of generators implied by the others.
    pub redundant: Vec<usize>,
}

impl Minimality {
    pub fn is_minimal(&self) -> bool {
        self.contained && self.generates && self.redundant.is_empty()
    }
}

/// Check that `gens` generates `ideal` and that no generator can be dropped.
///
/// A binomial `x^p - x^q` of degree `b` lies in the ideal generated by other
/// binomials exactly when `x^q` is reachable from `x^p` by their moves inside
/// the fiber of `b`, which is how redundancy is decided.
pub fn minimality_check(
    gens: &[Binomial],
    ideal: &ToricIdeal,
    budget: &Budget,
) -> Result<Minimality> {
    for g in gens {
        check_len(ideal.nvars(), g.nvars())?;
    }
    let mut contained = true;
    for g in gens {
        if !crate::toric::ideal_membership(g, ideal, budget)? {
            contained = false;
        }
    }
    let spanned = ToricIdeal::from_generators(ideal.config(), gens, ideal.order(), budget)?;
    let generates = contained && ideals_equal(&spanned, ideal, budget)?;
    let redundant: Vec<Option<usize>> = (0..gens.len())
        .into_par_iter()
        .map(|k| {
            let others: Vec<&Binomial> = gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, g)| g)
                .collect();
            let g = &gens[k];
            Ok(connected_by_moves(g.lead(), g.trail(), &others, budget.fiber_size)?.then_some(k))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Minimality {
        contained,
        generates,
        redundant: redundant.into_iter().flatten().collect(),
    })
}

/// Closed form of [`BettiDegree::choice_count`]: `(prod s_i) * S^(k-2)`.
pub fn choice_count_closed_form(sizes: &[usize]) -> BigUint {
    let k = sizes.len();
    if k <= 1 {
        return BigUint::one();
    }
    let total: usize = sizes.iter().sum();
    let prod: BigUint = sizes.iter().map(|&s| BigUint::from(s)).product();
    prod * BigUint::from(total).pow(k as u32 - 2)
}
