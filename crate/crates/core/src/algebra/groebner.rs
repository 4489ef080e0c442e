//! Buchberger's algorithm specialized to pure difference binomials.
//!
//! Every S-polynomial of two such binomials is again a binomial (or zero)
//! and every reduction step rewrites one monomial into another, so the
//! normal form of a binomial is computed term by term.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::binomial::{Binomial, MarkedBasis};
use super::monomial::Monomial;
use super::order::TermOrder;
use crate::budget::StepCounter;
use crate::error::{check_len, Error, Result};
use crate::lp::{self, Constraint, Rel};

/// Rewrite `m` with the marked leads of `basis` until no lead divides it.
pub(crate) fn normal_form_monomial(
    m: &Monomial,
    basis: &[Binomial],
    counter: &mut StepCounter,
) -> Result<Monomial> {
    let mut cur = m.clone();
    'outer: loop {
        for g in basis {
            if g.lead().divides(&cur) {
                counter.tick()?;
                cur = cur.rewrite(g.lead(), g.trail());
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// The two terms `(lcm/lead f)·trail f` and `(lcm/lead g)·trail g`.
fn spair_terms(f: &Binomial, g: &Binomial) -> (Monomial, Monomial) {
    let l = f.lead().lcm(g.lead());
    (
        l.rewrite(f.lead(), f.trail()),
        l.rewrite(g.lead(), g.trail()),
    )
}

/// S-binomial of two marked binomials, `None` when it vanishes. The result
/// is returned in canonical (unmarked) orientation.
pub fn spair(f: &Binomial, g: &Binomial) -> Result<Option<Binomial>> {
    check_len(f.nvars(), g.nvars())?;
    let (a, b) = spair_terms(f, g);
    if a == b {
        Ok(None)
    } else {
        Binomial::new(a, b).map(Some)
    }
}

/// Normal form of `b` modulo the marked leads of `basis`, oriented by
/// `order`. `None` means `b` reduces to zero.
///
/// Reduction of an incoherently marked basis may cycle; after `max_steps`
/// rewriting steps this gives up with [`Error::IncoherentMarking`].
pub fn reduce(
    b: &Binomial,
    basis: &MarkedBasis,
    order: &TermOrder,
    max_steps: u64,
) -> Result<Option<Binomial>> {
    check_len(order.nvars(), b.nvars())?;
    check_len(order.nvars(), basis.nvars())?;
    let mut counter = StepCounter::new(max_steps);
    let nf = |m: &Monomial, c: &mut StepCounter| {
        normal_form_monomial(m, basis.elements(), c).map_err(|e| match e {
            Error::Budget { limit, .. } => Error::IncoherentMarking(format!(
                "reduction did not terminate within {limit} steps"
            )),
            other => other,
        })
    };
    let a = nf(b.lead(), &mut counter)?;
    let t = nf(b.trail(), &mut counter)?;
    Ok(Binomial::oriented(a, t, order))
}

#[derive(PartialEq, Eq)]
struct QueueEntry {
    key: Vec<i128>,
    seq: usize,
}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key).then(self.seq.cmp(&other.seq))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    alive: bool,
}

/// Buchberger state with the Gebauer–Möller installation of the pair
/// criteria. Elements whose lead becomes divisible by a newer lead are
/// retired: they keep their pending pairs but take no new ones.
struct Engine<'a> {
    order: &'a TermOrder,
    basis: Vec<Binomial>,
    live: Vec<usize>,
    pairs: Vec<Pair>,
    pending: Vec<usize>,
    queue: BinaryHeap<Reverse<QueueEntry>>,
    counter: StepCounter,
}

impl<'a> Engine<'a> {
    fn new(order: &'a TermOrder, max_steps: u64) -> Self {
        Engine {
            order,
            basis: Vec::new(),
            live: Vec::new(),
            pairs: Vec::new(),
            pending: Vec::new(),
            queue: BinaryHeap::new(),
            counter: StepCounter::new(max_steps),
        }
    }

    fn nf(&mut self, m: &Monomial) -> Result<Monomial> {
        let mut cur = m.clone();
        'outer: loop {
            for &k in &self.live {
                let g = &self.basis[k];
                if g.lead().divides(&cur) {
                    self.counter.tick()?;
                    cur = cur.rewrite(g.lead(), g.trail());
                    continue 'outer;
                }
            }
            return Ok(cur);
        }
    }

    /// Reduce `a - b` and, if nonzero, add it to the basis.
    fn insert(&mut self, a: &Monomial, b: &Monomial) -> Result<()> {
        let a = self.nf(a)?;
        let b = self.nf(b)?;
        if let Some(h) = Binomial::oriented(a, b, self.order) {
            self.update(h);
        }
        Ok(())
    }

    fn update(&mut self, h: Binomial) {
        let hj = self.basis.len();
        let hl = h.lead().clone();

        // New pairs, thinned by the lcm criteria.
        let cands: Vec<(usize, Monomial, bool)> = self
            .live
            .iter()
            .map(|&g| {
                let gl = self.basis[g].lead();
                (g, gl.lcm(&hl), gl.is_coprime(&hl))
            })
            .collect();
        let mut keep: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, (g, l, coprime)) in cands.iter().enumerate() {
            let dominated = !coprime
                && (cands[idx + 1..].iter().any(|(_, l2, _)| l2.divides(l))
                    || keep.iter().any(|(_, l2, _)| l2.divides(l)));
            if !dominated {
                keep.push((*g, l.clone(), *coprime));
            }
        }

        // Old pairs made redundant by h.
        let (basis, pairs) = (&self.basis, &mut self.pairs);
        self.pending.retain(|&p| {
            let pair = &mut pairs[p];
            let l = &pair.lcm;
            if hl.divides(l)
                && basis[pair.i].lead().lcm(&hl) != *l
                && basis[pair.j].lead().lcm(&hl) != *l
            {
                pair.alive = false;
            }
            pair.alive
        });

        for (g, l, coprime) in keep {
            if coprime {
                continue;
            }
            let p = self.pairs.len();
            self.queue.push(Reverse(QueueEntry {
                key: self.order.key(&l),
                seq: p,
            }));
            self.pairs.push(Pair {
                i: g,
                j: hj,
                lcm: l,
                alive: true,
            });
            self.pending.push(p);
        }

        let basis = &self.basis;
        self.live.retain(|&g| !hl.divides(basis[g].lead()));
        self.live.push(hj);
        self.basis.push(h);
    }

    fn run(&mut self) -> Result<()> {
        while let Some(Reverse(e)) = self.queue.pop() {
            let p = e.seq;
            if !self.pairs[p].alive {
                continue;
            }
            self.pairs[p].alive = false;
            let (f, g) = (&self.basis[self.pairs[p].i], &self.basis[self.pairs[p].j]);
            let (a, b) = spair_terms(f, g);
            if a != b {
                self.insert(&a, &b)?;
            }
        }
        Ok(())
    }

    fn into_reduced(mut self) -> Result<Vec<Binomial>> {
        let order = self.order;
        let kept: Vec<Binomial> = self.live.iter().map(|&k| self.basis[k].clone()).collect();
        let mut out = Vec::with_capacity(kept.len());
        for e in &kept {
            let t = normal_form_monomial(e.trail(), &kept, &mut self.counter)?;
            out.push(Binomial::marked(e.lead().clone(), t)?);
        }
        out.sort_by(|a, b| order.cmp(b.lead(), a.lead()));
        Ok(out)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
///
/// Output elements are sorted by decreasing leading term, so the result is
/// syntactically unique for a given ideal and order.
pub fn buchberger(
    ring: Vec<String>,
    gens: &[Binomial],
    order: &TermOrder,
    max_steps: u64,
) -> Result<MarkedBasis> {
    check_len(order.nvars(), ring.len())?;
    for g in gens {
        check_len(order.nvars(), g.nvars())?;
    }
    let mut engine = Engine::new(order, max_steps);
    for g in gens {
        engine.insert(g.lead(), g.trail())?;
    }
    engine.run()?;
    let elems = engine.into_reduced()?;
    Ok(MarkedBasis::from_parts_reduced(ring, elems))
}

/// Divisibility-minimal leading monomials, sorted and deduplicated.
pub fn initial_ideal(basis: &MarkedBasis) -> Vec<Monomial> {
    minimal_monomials(basis.leads().cloned())
}

pub(crate) fn minimal_monomials(mons: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = mons.into_iter().collect();
    all.sort_by_key(|m| m.degree());
    all.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in all {
        if !out.iter().any(|k| k.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

pub fn is_squarefree(mons: &[Monomial]) -> bool {
    mons.iter().all(Monomial::is_squarefree)
}

/// A strictly positive integer weight that selects every marked lead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "crate::json::bigint_vec")]
    pub weight: Vec<BigInt>,
}

impl Certificate {
    /// The weight order `weight` refined by lex, when the weights fit `i64`.
    pub fn order(&self) -> Result<TermOrder> {
        let w = self
            .weight
            .iter()
            .map(|v| v.to_i64().ok_or(Error::Overflow("certified weight")))
            .collect::<Result<Vec<_>>>()?;
        let n = w.len();
        TermOrder::weight(w, (0..n).collect())
    }

    /// Re-check `weight · lead > weight · trail` for every element.
    pub fn separates(&self, basis: &MarkedBasis) -> bool {
        self.weight.iter().all(|w| w > &BigInt::from(0))
            && basis.elements().iter().all(|b| {
                let s: BigInt = b
                    .direction()
                    .iter()
                    .zip(&self.weight)
                    .map(|(&d, w)| w * d)
                    .sum();
                s > BigInt::from(0)
            })
    }
}

/// Decide whether the marking of `basis` is induced by some term order: find
/// `w >= 1` with `w · (lead - trail) >= 1` for every element, by exact LP.
/// `None` means no such weight exists.
pub fn certify_marked(basis: &MarkedBasis) -> Option<Certificate> {
    let n = basis.nvars();
    let mut seen = HashSet::new();
    let mut cons = Vec::new();
    for b in basis.elements() {
        let v = b.direction();
        if seen.insert(v.clone()) {
            // w = 1 + x with x >= 0
            let s: i64 = v.iter().sum();
            cons.push(Constraint::new(v, Rel::Ge, 1 - s));
        }
    }
    let x = lp::feasible_point(n, &cons)?;
    // x = scaled / l, so l * (1 + x) is an integral weight
    let (scaled, l) = lp::clear_denominators(&x);
    let weight: Vec<BigInt> = scaled.iter().map(|s| s + &l).collect();
    let cert = Certificate { weight };
    debug_assert!(cert.separates(basis));
    Some(cert)
}

/// Buchberger's criterion for a marked basis, under a certified weight order.
///
/// Returns [`Error::IncoherentMarking`] when no term order induces the
/// marking, which is distinct from `Ok(false)` (coherent but not a Gröbner
/// basis).
pub fn is_groebner_marked(basis: &MarkedBasis, max_steps: u64) -> Result<bool> {
    let cert = certify_marked(basis)
        .ok_or_else(|| Error::IncoherentMarking("no weight vector selects every lead".into()))?;
    is_groebner_with(basis, &cert, max_steps)
}

pub(crate) fn is_groebner_with(
    basis: &MarkedBasis,
    _cert: &Certificate,
    max_steps: u64,
) -> Result<bool> {
    let elems = basis.elements();
    let mut counter = StepCounter::new(max_steps);
    for i in 0..elems.len() {
        for j in (i + 1)..elems.len() {
            let (f, g) = (&elems[i], &elems[j]);
            if f.lead().is_coprime(g.lead()) {
                continue;
            }
            let (a, b) = spair_terms(f, g);
            let a = normal_form_monomial(&a, elems, &mut counter)?;
            let b = normal_form_monomial(&b, elems, &mut counter)?;
            if a != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ring(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x_{i}")).collect()
    }

    fn var_mono(n: usize, pairs: &[(usize, u32)]) -> Monomial {
        let mut e = vec![0; n];
        for &(i, k) in pairs {
            e[i - 1] += k;
        }
        Monomial::new(e)
    }

    #[test]
    fn spair_of_e7_generators() {
        let n = 10;
        let f = Binomial::marked(
            var_mono(n, &[(7, 1), (8, 1)]),
            var_mono(n, &[(9, 1), (10, 1)]),
        )
        .unwrap();
        let g = Binomial::marked(
            var_mono(n, &[(6, 1), (9, 1)]),
            var_mono(n, &[(8, 1), (10, 1)]),
        )
        .unwrap();
        let s = spair(&f, &g).unwrap().unwrap();
        let expect = Binomial::new(
            var_mono(n, &[(7, 1), (8, 2), (10, 1)]),
            var_mono(n, &[(6, 1), (9, 2), (10, 1)]),
        )
        .unwrap();
        assert_eq!(s, expect);
        assert_eq!(spair(&f, &f).unwrap(), None);
    }

    #[test]
    fn coprime_spair_reduces_to_zero() {
        let f = Binomial::marked(m(&[1, 0, 0, 0]), m(&[0, 1, 0, 0])).unwrap();
        let g = Binomial::marked(m(&[0, 0, 1, 0]), m(&[0, 0, 0, 1])).unwrap();
        let s = spair(&f, &g).unwrap().unwrap();
        let basis = MarkedBasis::new(ring(4), vec![f, g]).unwrap();
        assert_eq!(reduce(&s, &basis, &TermOrder::lex(4), 100).unwrap(), None);
    }

    #[test]
    fn single_division_step() {
        // x6x7x9 - z  modulo  x6x7 - x10^2, with z = x1 for concreteness
        let n = 10;
        let g = Binomial::marked(var_mono(n, &[(6, 1), (7, 1)]), var_mono(n, &[(10, 2)])).unwrap();
        let basis = MarkedBasis::new(ring(n), vec![g.clone()]).unwrap();
        let f = Binomial::marked(
            var_mono(n, &[(6, 1), (7, 1), (9, 1)]),
            var_mono(n, &[(1, 1)]),
        )
        .unwrap();
        let r = reduce(&f, &basis, &TermOrder::lex(n), 100)
            .unwrap()
            .unwrap();
        assert_eq!(
            r,
            Binomial::oriented(
                var_mono(n, &[(9, 1), (10, 2)]),
                var_mono(n, &[(1, 1)]),
                &TermOrder::lex(n)
            )
            .unwrap()
        );
        assert_eq!(reduce(&g, &basis, &TermOrder::lex(n), 100).unwrap(), None);
    }

    #[test]
    fn incoherent_reduction_aborts() {
        let basis = MarkedBasis::new(
            ring(2),
            vec![
                Binomial::marked(m(&[1, 0]), m(&[0, 1])).unwrap(),
                Binomial::marked(m(&[0, 1]), m(&[1, 0])).unwrap(),
            ],
        )
        .unwrap();
        let f = Binomial::marked(m(&[2, 0]), m(&[0, 0])).unwrap();
        assert!(matches!(
            reduce(&f, &basis, &TermOrder::lex(2), 50),
            Err(Error::IncoherentMarking(_))
        ));
    }

    #[test]
    fn single_generator_is_reduced() {
        let g = Binomial::marked(m(&[0, 0, 3]), m(&[1, 1, 0])).unwrap();
        for o in [TermOrder::degrevlex(3), TermOrder::grlex(3)] {
            let gb = buchberger(ring(3), std::slice::from_ref(&g), &o, 1000).unwrap();
            assert_eq!(gb.elements(), std::slice::from_ref(&g));
        }
        let lex = TermOrder::lex(3);
        let gb = buchberger(ring(3), std::slice::from_ref(&g), &lex, 1000).unwrap();
        assert_eq!(gb.elements(), &[g.reoriented(&lex)]);
    }

    #[test]
    fn twisted_cubic() {
        // x_1..x_4 -> s^3, s^2 t, s t^2, t^3 ; degrevlex GB has 3 quadrics
        let gens = vec![
            Binomial::new(m(&[1, 0, 1, 0]), m(&[0, 2, 0, 0])).unwrap(),
            Binomial::new(m(&[0, 1, 0, 1]), m(&[0, 0, 2, 0])).unwrap(),
            Binomial::new(m(&[1, 0, 0, 1]), m(&[0, 1, 1, 0])).unwrap(),
        ];
        let gb = buchberger(ring(4), &gens, &TermOrder::degrevlex(4), 10_000).unwrap();
        assert_eq!(gb.len(), 3);
        assert!(is_groebner_marked(&gb, 10_000).unwrap());
        assert_eq!(
            buchberger(ring(4), &gens, &TermOrder::lex(4), 10_000)
                .unwrap()
                .len(),
            3
        );
        // with x_2 > x_3 > x_1 > x_4 the lex GB picks up x_3^3 - x_1*x_4^2
        let o = TermOrder::lex_with(vec![1, 2, 0, 3]).unwrap();
        let lex = buchberger(ring(4), &gens, &o, 10_000).unwrap();
        assert_eq!(lex.len(), 4);
        assert_eq!(lex.max_degree(), 3);
    }

    #[test]
    fn initial_ideal_and_squarefree() {
        let g = Binomial::marked(m(&[0, 0, 3]), m(&[1, 1, 0])).unwrap();
        let basis = MarkedBasis::new(ring(3), vec![g]).unwrap();
        let ii = initial_ideal(&basis);
        assert_eq!(ii, vec![m(&[0, 0, 3])]);
        assert!(!is_squarefree(&ii));
        assert!(is_squarefree(&[m(&[1, 1, 0]), m(&[0, 1, 1])]));
    }

    #[test]
    fn certification() {
        let basis = MarkedBasis::new(
            ring(3),
            vec![Binomial::marked(m(&[0, 0, 3]), m(&[1, 1, 0])).unwrap()],
        )
        .unwrap();
        let c = certify_marked(&basis).unwrap();
        assert!(c.separates(&basis));

        // y - x1*x2 marked at y: not degree compatible but coherent
        let basis = MarkedBasis::new(
            ring(3),
            vec![Binomial::marked(m(&[0, 0, 1]), m(&[1, 1, 0])).unwrap()],
        )
        .unwrap();
        let c = certify_marked(&basis).unwrap();
        assert!(c.separates(&basis));
        assert!(c.weight[2] > &c.weight[0] + &c.weight[1]);

        let basis = MarkedBasis::new(
            ring(2),
            vec![
                Binomial::marked(m(&[1, 0]), m(&[0, 1])).unwrap(),
                Binomial::marked(m(&[0, 1]), m(&[1, 0])).unwrap(),
            ],
        )
        .unwrap();
        assert!(certify_marked(&basis).is_none());
        assert!(matches!(
            is_groebner_marked(&basis, 100),
            Err(Error::IncoherentMarking(_))
        ));
    }
}
