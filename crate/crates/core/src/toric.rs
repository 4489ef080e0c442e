//! Toric ideals of configurations: A-degrees, lattice kernels, saturation,
//! membership and the bounded injectivity test on standard monomials.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{buchberger, reduce, Binomial, MarkedBasis, Monomial, TermOrder, Tie};
use crate::budget::Budget;
use crate::dynkin::Configuration;
use crate::error::{check_len, Error, Result};
use crate::linalg;

/// A binomial ideal graded by a configuration, held as a reduced Gröbner
/// basis. Built either as the toric ideal of the configuration or as the
/// ideal generated by given binomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricIdeal {
    config: Configuration,
    order: TermOrder,
    reduced_gb: MarkedBasis,
}

impl ToricIdeal {
    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn gb(&self) -> &MarkedBasis {
        &self.reduced_gb
    }

    pub fn nvars(&self) -> usize {
        self.config.len()
    }

    pub fn is_zero(&self) -> bool {
        self.reduced_gb.is_empty()
    }

    /// The ideal generated by `gens` (not necessarily toric).
    pub fn from_generators(
        config: &Configuration,
        gens: &[Binomial],
        order: &TermOrder,
        budget: &Budget,
    ) -> Result<Self> {
        check_len(config.len(), order.nvars())?;
        let gb = buchberger(config.names().to_vec(), gens, order, budget.reduction_steps)?;
        Ok(ToricIdeal {
            config: config.clone(),
            order: order.clone(),
            reduced_gb: gb,
        })
    }

    /// Same ideal, reduced Gröbner basis recomputed under `order`.
    pub fn rebase(&self, order: &TermOrder, budget: &Budget) -> Result<Self> {
        ToricIdeal::from_generators(&self.config, self.reduced_gb.elements(), order, budget)
    }
}

/// `deg_A(x^p) = sum_i p_i a_i`.
pub fn adegree(c: &Configuration, m: &Monomial) -> Result<Vec<i64>> {
    check_len(c.len(), m.nvars())?;
    Ok(adegree_unchecked(c, m.exps()))
}

pub(crate) fn adegree_unchecked(c: &Configuration, exps: &[u32]) -> Vec<i64> {
    let mut d = vec![0i64; c.n()];
    for (p, &e) in c.points().iter().zip(exps) {
        if e > 0 {
            for (x, &a) in d.iter_mut().zip(p) {
                *x += a * e as i64;
            }
        }
    }
    d
}

/// A lattice basis of `{u in Z^N : sum_i u_i a_i = 0}`.
pub fn lattice_kernel(c: &Configuration) -> Result<Vec<Vec<i64>>> {
    linalg::integer_kernel(c.points())
}

/// `x^{u+} - x^{u-}` for a nonzero integer vector `u`.
pub fn binomial_of(u: &[i64]) -> Result<Binomial> {
    let clamp = |f: fn(i64) -> i64| -> Result<Monomial> {
        u.iter()
            .map(|&v| u32::try_from(f(v)).map_err(|_| Error::Overflow("exponent")))
            .collect::<Result<Vec<_>>>()
            .map(Monomial::new)
    };
    Binomial::new(clamp(|v| v.max(0))?, clamp(|v| (-v).max(0))?)
}

/// Positive grading by coordinate sums of the points; every binomial of a
/// toric ideal is homogeneous for it.
pub(crate) fn coordinate_weights(c: &Configuration) -> Vec<i64> {
    c.points().iter().map(|p| p.iter().sum()).collect()
}

/// Order in which `x_i` is the cheapest variable: graded by `weights`, then
/// reverse lexicographic with `x_i` last.
fn cheapest_order(weights: &[i64], i: usize) -> Result<TermOrder> {
    let n = weights.len();
    let mut perm: Vec<usize> = (0..n).filter(|&v| v != i).collect();
    perm.push(i);
    TermOrder::matrix(vec![weights.to_vec()], Tie::RevLex, perm)
}

/// Generators of `(I : x_i^∞)` for an ideal homogeneous with respect to the
/// strictly positive `weights`.
///
/// A Gröbner basis under [`cheapest_order`] has the property that `x_i`
/// divides a trail whenever it divides the lead, so dividing every element by
/// its largest common power of `x_i` yields generators of the saturation.
pub fn saturate_variable(
    ring: &[String],
    gens: &[Binomial],
    weights: &[i64],
    i: usize,
    budget: &Budget,
) -> Result<Vec<Binomial>> {
    check_len(ring.len(), weights.len())?;
    if i >= ring.len() {
        return Err(Error::invalid(format!("variable index {i} out of range")));
    }
    if weights.iter().any(|&w| w <= 0) {
        return Err(Error::invalid("saturation needs strictly positive weights"));
    }
    let order = cheapest_order(weights, i)?;
    let gb = buchberger(ring.to_vec(), gens, &order, budget.reduction_steps)?;
    gb.elements()
        .iter()
        .map(|g| {
            let k = g.lead().exps()[i].min(g.trail().exps()[i]);
            if k == 0 {
                return Ok(g.clone());
            }
            let mut xk = vec![0; ring.len()];
            xk[i] = k;
            let xk = Monomial::new(xk);
            Binomial::marked(
                g.lead().div(&xk).expect("common factor"),
                g.trail().div(&xk).expect("common factor"),
            )
        })
        .collect()
}

/// The toric ideal `I_A`, as the saturation of the lattice basis ideal by the
/// product of all variables.
pub fn toric_ideal(c: &Configuration, order: &TermOrder, budget: &Budget) -> Result<ToricIdeal> {
    check_len(c.len(), order.nvars())?;
    budget.validate()?;
    let mut gens = lattice_kernel(c)?
        .iter()
        .map(|u| binomial_of(u))
        .collect::<Result<Vec<_>>>()?;
    if !gens.is_empty() {
        // Low degree relations do not change the saturation but bring the
        // intermediate ideals much closer to I_A.
        gens.extend(low_degree_relations(c, SEED_DEGREE, budget.fiber_size)?);
    }
    let weights = coordinate_weights(c);
    let ring = c.names().to_vec();
    for i in 0..c.len() {
        // x_i is a nonzerodivisor modulo an ideal whose generators avoid it
        let involved = gens
            .iter()
            .any(|g| g.lead().exps()[i] > 0 || g.trail().exps()[i] > 0);
        if involved {
            gens = saturate_variable(&ring, &gens, &weights, i, budget)?;
        }
    }
    ToricIdeal::from_generators(c, &gens, order, budget)
}

const SEED_DEGREE: u32 = 2;

/// Binomials joining monomials of equal A-degree among all monomials of total
/// degree at most `max_degree`.
fn low_degree_relations(c: &Configuration, max_degree: u32, limit: usize) -> Result<Vec<Binomial>> {
    let mons = standard_monomials(c.len(), &[], max_degree, limit)?;
    let mut first: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut out = Vec::new();
    for (k, m) in mons.iter().enumerate() {
        let d = adegree_unchecked(c, m.exps());
        match first.get(&d) {
            Some(&f) => out.push(Binomial::new(mons[f].clone(), m.clone())?),
            None => {
                first.insert(d, k);
            }
        }
    }
    Ok(out)
}

/// Normal form test against the ideal's reduced Gröbner basis.
pub fn ideal_membership(b: &Binomial, ideal: &ToricIdeal, budget: &Budget) -> Result<bool> {
    check_len(ideal.nvars(), b.nvars())?;
    Ok(reduce(b, ideal.gb(), ideal.order(), budget.reduction_steps)?.is_none())
}

/// Mutual containment of the two reduced Gröbner bases.
pub fn ideals_equal(a: &ToricIdeal, b: &ToricIdeal, budget: &Budget) -> Result<bool> {
    check_len(a.nvars(), b.nvars())?;
    for g in a.gb().elements() {
        if !ideal_membership(g, b, budget)? {
            return Ok(false);
        }
    }
    for g in b.gb().elements() {
        if !ideal_membership(g, a, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monomials of degree at most `max_degree` outside the initial ideal, in
/// graded lex order (lower degree first, then `x_1` largest).
pub fn standard_monomials_up_to(
    ideal: &ToricIdeal,
    max_degree: u32,
    budget: &Budget,
) -> Result<Vec<Monomial>> {
    let leads: Vec<&Monomial> = ideal.gb().leads().collect();
    standard_monomials(ideal.nvars(), &leads, max_degree, budget.fiber_size)
}

pub(crate) fn standard_monomials(
    nvars: usize,
    leads: &[&Monomial],
    max_degree: u32,
    limit: usize,
) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut exps = vec![0u32; nvars];
        walk(0, d, &mut exps, leads, &mut out, limit)?;
    }
    Ok(out)
}

fn walk(
    k: usize,
    left: u32,
    exps: &mut Vec<u32>,
    leads: &[&Monomial],
    out: &mut Vec<Monomial>,
    limit: usize,
) -> Result<()> {
    let n = exps.len();
    if n == 0 || k == n - 1 {
        if n > 0 {
            exps[k] = left;
        } else if left > 0 {
            return Ok(());
        }
        let m = Monomial::new(exps.clone());
        if n > 0 {
            exps[k] = 0;
        }
        if !leads.iter().any(|l| l.divides(&m)) {
            if out.len() == limit {
                return Err(Error::Budget {
                    what: "monomial enumeration",
                    limit: limit as u64,
                });
            }
            out.push(m);
        }
        return Ok(());
    }
    for e in (0..=left).rev() {
        exps[k] = e;
        if e > 0 {
            // every extension of a multiple of a lead is again a multiple
            let partial = Monomial::new(exps.clone());
            if leads.iter().any(|l| l.divides(&partial)) {
                continue;
            }
        }
        walk(k + 1, left - e, exps, leads, out, limit)?;
    }
    exps[k] = 0;
    Ok(())
}

/// Outcome of the bounded injectivity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma11 {
    pub holds: bool,
    pub max_degree: u32,
    pub checked: usize,
    /// Two distinct standard monomials of equal A-degree.
    pub witness: Option<(Monomial, Monomial)>,
}

/// Whether `deg_A` is injective on standard monomials of degree at most
/// `max_degree`.
pub fn lemma11_check(ideal: &ToricIdeal, max_degree: u32, budget: &Budget) -> Result<Lemma11> {
    if max_degree == 0 {
        return Err(Error::invalid("degree bound must be at least 1"));
    }
    let std = standard_monomials_up_to(ideal, max_degree, budget)?;
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::with_capacity(std.len());
    for (k, m) in std.iter().enumerate() {
        let d = adegree_unchecked(ideal.config(), m.exps());
        if let Some(&first) = seen.get(&d) {
            return Ok(Lemma11 {
                holds: false,
                max_degree,
                checked: k + 1,
                witness: Some((std[first].clone(), m.clone())),
            });
        }
        seen.insert(d, k);
    }
    Ok(Lemma11 {
        holds: true,
        max_degree,
        checked: std.len(),
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{closed_form_configuration, AdeKind};

    fn a2() -> Configuration {
        Configuration::with_default_names(vec![vec![3, 0], vec![0, 3], vec![1, 1]]).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrees() {
        let c = closed_form_configuration(AdeKind::D, 4).unwrap();
        let y3 = c.index_of("y_3").unwrap();
        let mut e = vec![0; 5];
        e[y3] = 2;
        assert_eq!(adegree(&c, &m(&e)).unwrap(), vec![2, 0, 2, 2]);
        assert_eq!(adegree(&c, &m(&[1, 0, 1, 1, 0])).unwrap(), vec![2, 0, 2, 2]);
        assert_eq!(adegree(&c, &Monomial::one(5)).unwrap(), vec![0; 4]);
        assert!(adegree(&c, &m(&[1, 0])).is_err());
    }

    #[test]
    fn kernels() {
        let k = lattice_kernel(&a2()).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(
            k[0].iter().map(|v| v.abs()).collect::<Vec<_>>(),
            vec![1, 1, 3]
        );
        let e8 = closed_form_configuration(AdeKind::E, 8).unwrap();
        assert!(lattice_kernel(&e8).unwrap().is_empty());
        let d4 = closed_form_configuration(AdeKind::D, 4).unwrap();
        let k = lattice_kernel(&d4).unwrap();
        assert_eq!(k.len(), 1);
        assert!(k[0] == vec![1, 0, 1, 1, -2] || k[0] == vec![-1, 0, -1, -1, 2]);
    }

    #[test]
    fn a2_ideal() {
        let b = Budget::default();
        let i = toric_ideal(&a2(), &TermOrder::degrevlex(3), &b).unwrap();
        assert_eq!(i.gb().len(), 1);
        let g = &i.gb().elements()[0];
        assert_eq!(g.lead(), &m(&[0, 0, 3]));
        assert_eq!(g.trail(), &m(&[1, 1, 0]));
    }

    #[test]
    fn saturation_removes_common_factor() {
        let ring: Vec<String> = (1..=3).map(|i| format!("x_{i}")).collect();
        let g = Binomial::new(m(&[1, 0, 1]), m(&[0, 1, 1])).unwrap();
        let out = saturate_variable(&ring, &[g], &[1, 1, 1], 2, &Budget::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(
            out[0].canonical(),
            Binomial::new(m(&[1, 0, 0]), m(&[0, 1, 0])).unwrap()
        );
    }

    #[test]
    fn membership_and_equality() {
        let b = Budget::default();
        let c = a2();
        let i = toric_ideal(&c, &TermOrder::degrevlex(3), &b).unwrap();
        let j = toric_ideal(&c, &TermOrder::lex(3), &b).unwrap();
        assert!(ideals_equal(&i, &j, &b).unwrap());
        let x1_x2 = Binomial::new(m(&[1, 0, 0]), m(&[0, 1, 0])).unwrap();
        assert!(!ideal_membership(&x1_x2, &i, &b).unwrap());
        let zero = ToricIdeal::from_generators(&c, &[], &TermOrder::lex(3), &b).unwrap();
        assert!(!ideals_equal(&i, &zero, &b).unwrap());
    }

    #[test]
    fn standard_monomials_of_a2() {
        let b = Budget::default();
        let i = toric_ideal(&a2(), &TermOrder::degrevlex(3), &b).unwrap();
        let std = standard_monomials_up_to(&i, 3, &b).unwrap();
        // 20 monomials of degree <= 3 in 3 variables, minus x_3^3
        assert_eq!(std.len(), 19);
        assert!(!std.contains(&m(&[0, 0, 3])));
        assert_eq!(std[0], Monomial::one(3));
        assert_eq!(std[1], m(&[1, 0, 0]));
    }

    #[test]
    fn lemma11_detects_missing_relation() {
        let b = Budget::default();
        let c = closed_form_configuration(AdeKind::D, 4).unwrap();
        let empty = ToricIdeal::from_generators(&c, &[], &TermOrder::lex(5), &b).unwrap();
        let r = lemma11_check(&empty, 3, &b).unwrap();
        assert!(!r.holds);
        let (p, q) = r.witness.unwrap();
        let mut pair = [p, q];
        pair.sort();
        assert_eq!(pair, [m(&[0, 0, 0, 0, 2]), m(&[1, 0, 1, 1, 0])]);
        let i = toric_ideal(&c, &TermOrder::degrevlex(5), &b).unwrap();
        assert!(lemma11_check(&i, 4, &b).unwrap().holds);
    }
}
