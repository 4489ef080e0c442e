//! Initial ideals of toric ideals: random-weight sampling and complete
//! Gröbner fan traversal by facet flips.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    buchberger, certify_marked, is_squarefree, Certificate, MarkedBasis, Monomial, TermOrder, Tie,
};
use crate::budget::Budget;
use crate::dynkin::Configuration;
use crate::error::{Error, Result};
use crate::lp::{self, Constraint, Rel};
use crate::toric::{coordinate_weights, toric_ideal, ToricIdeal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanResult {
    /// Minimal generators of each initial ideal, sorted.
    pub initial_ideals: Vec<Vec<Monomial>>,
    pub gb_per_cone: Vec<MarkedBasis>,
    /// Cone index pairs `(i, j)`, `i < j`, sharing a facet.
    pub adjacency: Vec<(usize, usize)>,
    /// A strictly positive weight in the interior of each cone.
    pub witnesses: Vec<Certificate>,
    /// True only for an exhausted flip traversal.
    pub complete: bool,
}

impl FanResult {
    pub fn len(&self) -> usize {
        self.initial_ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.initial_ideals.is_empty()
    }

    /// Index of the cone with the given initial ideal.
    pub fn find(&self, leads: &[Monomial]) -> Option<usize> {
        let key = cone_key_of(leads);
        self.initial_ideals.iter().position(|i| i == &key)
    }
}

fn cone_key_of(leads: &[Monomial]) -> Vec<Monomial> {
    let mut v = leads.to_vec();
    v.sort();
    v
}

fn cone_key(gb: &MarkedBasis) -> Vec<Monomial> {
    cone_key_of(&gb.leads().cloned().collect::<Vec<_>>())
}

fn witness(gb: &MarkedBasis) -> Result<Certificate> {
    certify_marked(gb).ok_or_else(|| {
        Error::IncoherentMarking(
            "a computed reduced Gröbner basis has no weight certificate".into(),
        )
    })
}

fn single_cone(ideal: &ToricIdeal, complete: bool) -> Result<FanResult> {
    let gb = ideal.gb().clone();
    let w = witness(&gb)?;
    Ok(FanResult {
        initial_ideals: vec![cone_key(&gb)],
        gb_per_cone: vec![gb],
        adjacency: Vec::new(),
        witnesses: vec![w],
        complete,
    })
}

/// Reduced Gröbner bases under random integer weights drawn uniformly from
/// `weight_box`, ties broken by lex, collected up to equal initial ideals.
pub fn sample_initial_ideals(
    ideal: &ToricIdeal,
    samples: usize,
    seed: u64,
    weight_box: (i64, i64),
    budget: &Budget,
) -> Result<FanResult> {
    if samples == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    let (lo, hi) = weight_box;
    if lo < 0 || hi < lo {
        return Err(Error::invalid(format!("bad weight box [{lo}, {hi}]")));
    }
    let n = ideal.nvars();
    if ideal.is_zero() {
        return single_cone(ideal, false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<Vec<i64>> = (0..samples)
        .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    let bases = weights
        .par_iter()
        .map(|w| {
            let order = TermOrder::weight(w.clone(), (0..n).collect())?;
            buchberger(
                ideal.gb().ring().to_vec(),
                ideal.gb().elements(),
                &order,
                budget.reduction_steps,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seen = HashMap::new();
    let mut out = FanResult {
        initial_ideals: Vec::new(),
        gb_per_cone: Vec::new(),
        adjacency: Vec::new(),
        witnesses: Vec::new(),
        complete: false,
    };
    for gb in bases {
        let key = cone_key(&gb);
        if seen.contains_key(&key) {
            continue;
        }
        seen.insert(key.clone(), out.len());
        out.witnesses.push(witness(&gb)?);
        out.initial_ideals.push(key);
        out.gb_per_cone.push(gb);
    }
    Ok(out)
}

/// Facets of the Gröbner cone of `gb`, as (inner normal, relative interior
/// point). A direction `v` is a facet normal when some `w >= 0` has
/// `v · w = 0` and `v' · w >= 1` for every direction not parallel to `v`.
fn facets(gb: &MarkedBasis) -> Vec<(Vec<i64>, Vec<BigInt>)> {
    let n = gb.nvars();
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    for b in gb.elements() {
        let d = primitive(b.direction());
        if !dirs.contains(&d) {
            dirs.push(d);
        }
    }
    dirs.iter()
        .filter_map(|v| {
            let mut cons = vec![Constraint::new(v.clone(), Rel::Eq, 0)];
            cons.extend(
                dirs.iter()
                    .filter(|&o| o != v)
                    .map(|o| Constraint::new(o.clone(), Rel::Ge, 1)),
            );
            let x = lp::feasible_point(n, &cons)?;
            Some((v.clone(), lp::clear_denominators(&x).0))
        })
        .collect()
}

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v
        .iter()
        .fold(0i64, |acc, &x| num_integer::Integer::gcd(&acc, &x));
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

/// The reduced Gröbner basis across the facet with normal `v` through `w`:
/// the order compares by `w` first (shifted by the positive grading, which is
/// constant on fibers) and then by `-v`.
fn flip(
    ideal: &ToricIdeal,
    gb: &MarkedBasis,
    grading: &[i64],
    v: &[i64],
    w: &[BigInt],
    budget: &Budget,
) -> Result<MarkedBasis> {
    let n = gb.nvars();
    let first = w
        .iter()
        .zip(grading)
        .map(|(a, &u)| (a + u).to_i64().ok_or(Error::Overflow("facet weight")))
        .collect::<Result<Vec<_>>>()?;
    let second = v.iter().map(|x| -x).collect();
    let order = TermOrder::matrix(vec![first, second], Tie::Lex, (0..n).collect())?;
    buchberger(
        ideal.gb().ring().to_vec(),
        gb.elements(),
        &order,
        budget.reduction_steps,
    )
}

/// All initial ideals of `ideal` by breadth-first traversal of the Gröbner
/// fan, starting from the ideal's own reduced Gröbner basis.
///
/// Each frontier level is expanded in parallel and merged in order, so the
/// cone numbering is deterministic.
pub fn groebner_fan(ideal: &ToricIdeal, budget: &Budget) -> Result<FanResult> {
    if ideal.is_zero() {
        return single_cone(ideal, true);
    }
    let grading = coordinate_weights(ideal.config());
    let start = ideal.gb().clone();
    let mut index: HashMap<Vec<Monomial>, usize> = HashMap::new();
    index.insert(cone_key(&start), 0);
    let mut out = FanResult {
        initial_ideals: vec![cone_key(&start)],
        witnesses: vec![witness(&start)?],
        gb_per_cone: vec![start],
        adjacency: Vec::new(),
        complete: true,
    };
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let expanded = frontier
            .par_iter()
            .map(|&c| {
                let gb = &out.gb_per_cone[c];
                facets(gb)
                    .into_iter()
                    .map(|(v, w)| flip(ideal, gb, &grading, &v, &w, budget))
                    .collect::<Result<Vec<_>>>()
                    .map(|ns| (c, ns))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (c, neighbours) in expanded {
            for gb in neighbours {
                let key = cone_key(&gb);
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None => {
                        if out.len() == budget.cones {
                            return Err(Error::Budget {
                                what: "cone count",
                                limit: budget.cones as u64,
                            });
                        }
                        let j = out.len();
                        index.insert(key.clone(), j);
                        out.witnesses.push(witness(&gb)?);
                        out.initial_ideals.push(key);
                        out.gb_per_cone.push(gb);
                        next.push(j);
                        j
                    }
                };
                if j != c {
                    let e = (c.min(j), c.max(j));
                    if !out.adjacency.contains(&e) {
                        out.adjacency.push(e);
                    }
                }
            }
        }
        frontier = next;
    }
    out.adjacency.sort();
    Ok(out)
}

/// Cones whose initial ideal has only squarefree minimal generators.
pub fn squarefree_initials(r: &FanResult) -> Vec<usize> {
    r.initial_ideals
        .iter()
        .enumerate()
        .filter(|(_, gens)| is_squarefree(gens))
        .map(|(i, _)| i)
        .collect()
}

/// A rule assigning variable labels `1..=N` to the points of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Numbering {
    LexAscending,
    LexDescending,
    ColexAscending,
    ColexDescending,
    GradedLexAscending,
    GradedLexDescending,
    GradedColexAscending,
    GradedColexDescending,
}

impl Numbering {
    pub const ALL: [Numbering; 8] = [
        Numbering::LexAscending,
        Numbering::LexDescending,
        Numbering::ColexAscending,
        Numbering::ColexDescending,
        Numbering::GradedLexAscending,
        Numbering::GradedLexDescending,
        Numbering::GradedColexAscending,
        Numbering::GradedColexDescending,
    ];

    /// The points sorted so that label `k` is entry `k - 1`.
    pub fn apply(self, points: &[Vec<i64>]) -> Vec<Vec<i64>> {
        use Numbering::*;
        let mut v = points.to_vec();
        let colex = |p: &Vec<i64>| p.iter().rev().copied().collect::<Vec<_>>();
        let deg = |p: &Vec<i64>| p.iter().sum::<i64>();
        match self {
            LexAscending | LexDescending => v.sort(),
            ColexAscending | ColexDescending => v.sort_by_key(colex),
            GradedLexAscending | GradedLexDescending => v.sort_by_key(|p| (deg(p), p.clone())),
            GradedColexAscending | GradedColexDescending => v.sort_by_key(|p| (deg(p), colex(p))),
        }
        if matches!(
            self,
            LexDescending | ColexDescending | GradedLexDescending | GradedColexDescending
        ) {
            v.reverse();
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberingAttempt {
    pub numbering: Numbering,
    /// 1-based labels from largest to smallest, after completing the given
    /// order with any labels it omits.
    pub order: Vec<usize>,
    pub gb_size: Option<usize>,
    pub squarefree: Option<bool>,
    /// Set when the computation ran out of budget.
    pub skipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberingReport {
    pub target: usize,
    pub attempts: Vec<NumberingAttempt>,
    /// First attempt giving `target` elements with squarefree leads.
    pub reproduced: Option<usize>,
}

/// All completions of a partial lex order: a single missing label is tried
/// at every position, more than one are appended in increasing order.
fn completions(order: &[usize], nvars: usize) -> Vec<Vec<usize>> {
    let missing: Vec<usize> = (1..=nvars).filter(|k| !order.contains(k)).collect();
    match missing.as_slice() {
        [] => vec![order.to_vec()],
        [k] => (0..=order.len())
            .map(|pos| {
                let mut o = order.to_vec();
                o.insert(pos, *k);
                o
            })
            .collect(),
        _ => {
            let mut o = order.to_vec();
            o.extend(missing);
            vec![o]
        }
    }
}

/// Try every [`Numbering`] of `config`'s points against a lex order given by
/// 1-based labels and report which, if any, yields a reduced Gröbner basis of
/// `target` elements with squarefree leads.
pub fn numbering_search(
    config: &Configuration,
    lex_labels: &[usize],
    target: usize,
    numberings: &[Numbering],
    budget: &Budget,
) -> Result<NumberingReport> {
    let n = config.len();
    if lex_labels.iter().any(|&k| k == 0 || k > n) {
        return Err(Error::invalid(format!("lex labels must lie in 1..={n}")));
    }
    let orders = completions(lex_labels, n);
    let jobs: Vec<(Numbering, Vec<usize>)> = numberings
        .iter()
        .flat_map(|&nb| orders.iter().map(move |o| (nb, o.clone())))
        .collect();
    let attempts = jobs
        .into_par_iter()
        .map(|(numbering, order)| {
            let points = numbering.apply(config.points());
            let c = Configuration::with_default_names(points)?;
            let perm: Vec<usize> = order.iter().map(|k| k - 1).collect();
            let lex = TermOrder::lex_with(perm)?;
            let (gb_size, squarefree, skipped) = match toric_ideal(&c, &lex, budget) {
                Ok(i) => {
                    let leads: Vec<Monomial> = i.gb().leads().cloned().collect();
                    (Some(i.gb().len()), Some(is_squarefree(&leads)), false)
                }
                Err(e) if e.is_budget() => (None, None, true),
                Err(e) => return Err(e),
            };
            Ok(NumberingAttempt {
                numbering,
                order,
                gb_size,
                squarefree,
                skipped,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let reproduced = attempts
        .iter()
        .position(|a| a.gb_size == Some(target) && a.squarefree == Some(true));
    Ok(NumberingReport {
        target,
        attempts,
        reproduced,
    })
}
