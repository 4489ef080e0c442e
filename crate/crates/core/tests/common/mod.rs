//! Properties shared by the property suite and the acceptance harness.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use proptest::test_runner::{RngSeed, TestCaseError, TestRunner};
use toricsing::algebra::{buchberger, reduce, Binomial, MarkedBasis, Monomial, TermOrder};
use toricsing::betti::{
    betti_degrees, count_minimal_generating_sets, extract_minimal_generating_set, fiber,
    fiber_graph, indispensable_binomials, minimality_check, EdgeMode,
};
use toricsing::dynkin::{
    ade_graph, default_bound, hilbert_basis_in_box, incidence_matrix, lattice_certificate, AdeKind,
    Configuration,
};
use toricsing::fan::{groebner_fan, sample_initial_ideals};
use toricsing::toric::{adegree, toric_ideal, ToricIdeal};
use toricsing::Budget;

/// Run a property over `cases` inputs drawn from a fixed seed.
fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = ProptestConfig {
        cases,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(0x746f726963),
        ..ProptestConfig::default()
    };
    TestRunner::new(config)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn order_strategy(n: usize) -> impl Strategy<Value = TermOrder> {
    let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
    (0..4u8, perm, prop::collection::vec(0i64..5, n)).prop_map(move |(k, p, w)| match k {
        0 => TermOrder::lex_with(p).unwrap(),
        1 => TermOrder::grlex_with(p).unwrap(),
        2 => TermOrder::degrevlex_with(p).unwrap(),
        _ => TermOrder::weight(w, p).unwrap(),
    })
}

fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, n).prop_map(Monomial::new)
}

/// Small planar configurations with nonnegative entries and distinct points.
fn config_strategy() -> impl Strategy<Value = Configuration> {
    prop::collection::btree_set((0i64..4, 0i64..4), 3..6)
        .prop_filter("nonzero points", |s| !s.contains(&(0, 0)))
        .prop_map(|s| {
            let pts = s.into_iter().map(|(a, b)| vec![a + 1, b]).collect();
            Configuration::with_default_names(pts).unwrap()
        })
}

fn config_and_order() -> impl Strategy<Value = (Configuration, TermOrder)> {
    config_strategy().prop_flat_map(|c| {
        let n = c.len();
        (Just(c), order_strategy(n))
    })
}

fn budget() -> Budget {
    Budget {
        reduction_steps: 2_000_000,
        fiber_size: 200_000,
        cones: 2_000,
    }
}

fn all_monomials(n: usize, max: u32) -> Vec<Monomial> {
    let mut out = vec![];
    let mut e = vec![0u32; n];
    loop {
        out.push(Monomial::new(e.clone()));
        let mut k = 0;
        while k < n {
            e[k] += 1;
            if e[k] <= max {
                break;
            }
            e[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

pub fn order_axioms(cases: u32) -> Result<(), String> {
    run(
        cases,
        (order_strategy(4), monomial(4), monomial(4), monomial(4)),
        |(o, a, b, c)| {
            let ab = o.compare(&a, &b).unwrap();
            prop_assert_eq!(ab, o.compare(&b, &a).unwrap().reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)).unwrap(), ab);
            prop_assert_ne!(o.compare(&Monomial::one(4), &a).unwrap(), Ordering::Greater);
            let bc = o.compare(&b, &c).unwrap();
            if ab != Ordering::Greater && bc != Ordering::Greater {
                prop_assert_ne!(o.compare(&a, &c).unwrap(), Ordering::Greater);
            }
            Ok(())
        },
    )
}

pub fn toric_gb_is_homogeneous_and_coprime(cases: u32) -> Result<(), String> {
    run(cases, (config_and_order(),), |((c, o),)| {
        let i = toric_ideal(&c, &o, &budget()).unwrap();
        for g in i.gb().elements() {
            prop_assert_eq!(
                adegree(&c, g.lead()).unwrap(),
                adegree(&c, g.trail()).unwrap()
            );
            prop_assert!(g.lead().is_coprime(g.trail()));
            prop_assert_eq!(o.compare(g.lead(), g.trail()).unwrap(), Ordering::Greater);
        }
        prop_assert!(i.gb().is_reduced());
        Ok(())
    })
}

pub fn reduce_is_idempotent(cases: u32) -> Result<(), String> {
    run(cases, (config_strategy(), any::<u64>()), |(c, seed)| {
        let o = TermOrder::degrevlex(c.len());
        let i = toric_ideal(&c, &o, &budget()).unwrap();
        let n = c.len();
        let mut s = seed;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (s >> 33) as u32 % 3
        };
        let a = Monomial::new((0..n).map(|_| next()).collect());
        let b = Monomial::new((0..n).map(|_| next()).collect());
        if let Ok(x) = Binomial::new(a, b) {
            let x = x.reoriented(&o);
            let once = reduce(&x, i.gb(), &o, 1_000_000).unwrap();
            if let Some(r) = &once {
                let twice = reduce(r, i.gb(), &o, 1_000_000).unwrap();
                prop_assert_eq!(twice.as_ref(), Some(r));
                for m in [r.lead(), r.trail()] {
                    prop_assert!(i.gb().leads().all(|l| !l.divides(m)));
                }
            }
        }
        Ok(())
    })
}

pub fn reduced_gb_ignores_input_order(cases: u32) -> Result<(), String> {
    run(
        cases,
        (
            config_and_order(),
            Just((0..64).collect::<Vec<usize>>()).prop_shuffle(),
        ),
        |((c, o), shuffle)| {
            let n = c.len();
            let i = toric_ideal(&c, &TermOrder::degrevlex(n), &budget()).unwrap();
            let gens: Vec<Binomial> = i.gb().elements().to_vec();
            let mut perm: Vec<usize> = shuffle.into_iter().filter(|&k| k < gens.len()).collect();
            perm.truncate(gens.len());
            let shuffled: Vec<Binomial> = perm.iter().map(|&k| gens[k].flipped()).collect();
            let a = buchberger(c.names().to_vec(), &gens, &o, 5_000_000).unwrap();
            let b = buchberger(c.names().to_vec(), &shuffled, &o, 5_000_000).unwrap();
            prop_assert_eq!(a, b);
            Ok(())
        },
    )
}

pub fn fiber_matches_brute_force(cases: u32) -> Result<(), String> {
    run(
        cases,
        (config_strategy(), prop::collection::vec(0u32..3, 5)),
        |(c, e)| {
            let n = c.len();
            let m = Monomial::new(e[..n].to_vec());
            let b = adegree(&c, &m).unwrap();
            let f = fiber(&c, &b, 100_000).unwrap();
            let cap = b.iter().copied().max().unwrap_or(0) as u32;
            let brute: BTreeSet<Monomial> = all_monomials(n, cap)
                .into_iter()
                .filter(|x| adegree(&c, x).unwrap() == b)
                .collect();
            let got: BTreeSet<Monomial> = f.monomials.into_iter().collect();
            prop_assert_eq!(got, brute);
            Ok(())
        },
    )
}

pub fn gcd_and_ideal_modes_agree(cases: u32) -> Result<(), String> {
    run(
        cases,
        (config_strategy(), prop::collection::vec(0u32..3, 5)),
        |(c, e)| {
            let n = c.len();
            let i = toric_ideal(&c, &TermOrder::degrevlex(n), &budget()).unwrap();
            let mut degrees: Vec<Vec<i64>> = i
                .gb()
                .elements()
                .iter()
                .map(|g| adegree(&c, g.lead()).unwrap())
                .collect();
            degrees.push(adegree(&c, &Monomial::new(e[..n].to_vec())).unwrap());
            for b in degrees {
                let g = fiber_graph(&i, &b, EdgeMode::Gcd, &budget()).unwrap();
                let h = fiber_graph(&i, &b, EdgeMode::Ideal, &budget()).unwrap();
                prop_assert_eq!(g.components, h.components);
            }
            Ok(())
        },
    )
}

pub fn extraction_is_minimal_and_contains_indispensables(cases: u32) -> Result<(), String> {
    run(cases, (config_strategy(),), |(c,)| {
        let n = c.len();
        let i = toric_ideal(&c, &TermOrder::degrevlex(n), &budget()).unwrap();
        let degrees = betti_degrees(&i, EdgeMode::Gcd, &budget()).unwrap();
        let ind: HashSet<Binomial> = indispensable_binomials(&degrees)
            .into_iter()
            .map(|b| b.canonical())
            .collect();
        let mut size = None;
        for seed in 0..20 {
            let set = extract_minimal_generating_set(&degrees, seed);
            let canon: HashSet<Binomial> = set.iter().map(Binomial::canonical).collect();
            prop_assert!(ind.is_subset(&canon));
            prop_assert_eq!(*size.get_or_insert(set.len()), set.len());
            if seed < 3 {
                prop_assert!(minimality_check(&set, &i, &budget()).unwrap().is_minimal());
            }
        }
        Ok(())
    })
}

pub fn count_matches_exhaustive_enumeration(cases: u32) -> Result<(), String> {
    run(cases, (config_strategy(),), |(c,)| {
        let n = c.len();
        let i = toric_ideal(&c, &TermOrder::degrevlex(n), &budget()).unwrap();
        let degrees = betti_degrees(&i, EdgeMode::Gcd, &budget()).unwrap();
        let mut total: u128 = 1;
        for d in &degrees {
            let k = d.components.len();
            let mut edges = vec![];
            for (a, ca) in d.components.iter().enumerate() {
                for (b, cb) in d.components.iter().enumerate().skip(a + 1) {
                    edges.extend(std::iter::repeat_n((a, b), ca.len() * cb.len()));
                }
            }
            prop_assume!(edges.len() <= 14);
            let mut count: u128 = 0;
            for mask in 0u32..(1 << edges.len()) {
                if mask.count_ones() as usize != k - 1 {
                    continue;
                }
                let mut parent: Vec<usize> = (0..k).collect();
                fn root(p: &mut [usize], x: usize) -> usize {
                    if p[x] == x {
                        x
                    } else {
                        let r = root(p, p[x]);
                        p[x] = r;
                        r
                    }
                }
                let mut ok = true;
                for (e, &(a, b)) in edges.iter().enumerate() {
                    if mask >> e & 1 == 1 {
                        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                        if ra == rb {
                            ok = false;
                            break;
                        }
                        parent[ra] = rb;
                    }
                }
                if ok {
                    count += 1;
                }
            }
            total *= count;
        }
        let got = count_minimal_generating_sets(&degrees).unwrap();
        prop_assert_eq!(got.to_string(), total.to_string());
        Ok(())
    })
}

pub fn sampled_cones_lie_in_the_fan(cases: u32) -> Result<(), String> {
    run(cases, (config_strategy(), any::<u64>()), |(c, seed)| {
        let n = c.len();
        let i = toric_ideal(&c, &TermOrder::degrevlex(n), &budget()).unwrap();
        let fan = groebner_fan(&i, &budget());
        prop_assume!(fan.is_ok());
        let fan = fan.unwrap();
        let s = sample_initial_ideals(&i, 30, seed, (1, 1000), &budget()).unwrap();
        for ini in &s.initial_ideals {
            prop_assert!(fan.find(ini).is_some());
        }
        // adjacency graph is connected
        let mut seen = vec![false; fan.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &fan.adjacency {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
        // every cone has the same Hilbert function in the grading by coordinate sums
        let w: Vec<u64> = c
            .points()
            .iter()
            .map(|p| p.iter().sum::<i64>() as u64)
            .collect();
        let count = |g: &MarkedBasis, d: u32| {
            all_monomials(n, d)
                .into_iter()
                .filter(|m| {
                    m.exps()
                        .iter()
                        .zip(&w)
                        .map(|(&e, &x)| e as u64 * x)
                        .sum::<u64>()
                        <= d as u64
                })
                .filter(|m| g.leads().all(|l| !l.divides(m)))
                .count()
        };
        let first: Vec<usize> = (1..=6).map(|d| count(&fan.gb_per_cone[0], d)).collect();
        for g in &fan.gb_per_cone {
            prop_assert_eq!(
                (1..=6).map(|d| count(g, d)).collect::<Vec<_>>(),
                first.clone()
            );
        }
        Ok(())
    })
}

/// Lattice membership plus nonnegativity: the Lipman semigroup.
fn in_semigroup(m: &toricsing::dynkin::IncidenceMatrix, d: &[i64]) -> bool {
    d.iter().all(|&v| v >= 0) && lattice_certificate(m, d).is_some()
}

pub fn hilbert_basis_is_minimal_and_generating() -> Result<(), String> {
    for (kind, n) in [
        (AdeKind::A, 2),
        (AdeKind::A, 3),
        (AdeKind::D, 4),
        (AdeKind::D, 5),
        (AdeKind::E, 6),
    ] {
        let m = incidence_matrix(&ade_graph(kind, n).unwrap());
        let (basis, _) = hilbert_basis_in_box(&m, default_bound(n)).map_err(|e| e.to_string())?;
        let set: HashSet<Vec<i64>> = basis.iter().cloned().collect();
        for p in &basis {
            if !in_semigroup(&m, p) {
                return Err(format!("{kind:?}{n}: {p:?} outside the semigroup"));
            }
            for q in &basis {
                let r: Vec<i64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
                if q != p && in_semigroup(&m, &r) {
                    return Err(format!("{kind:?}{n}: {p:?} is reducible"));
                }
            }
        }
        // every semigroup element in a small box decomposes over the basis
        let side = 4u32;
        for mono in all_monomials(n, side - 1) {
            let d: Vec<i64> = mono.exps().iter().map(|&v| v as i64).collect();
            if d.iter().all(|&v| v == 0) || !in_semigroup(&m, &d) {
                continue;
            }
            let decomposes = set.contains(&d)
                || basis.iter().any(|b| {
                    let r: Vec<i64> = d.iter().zip(b).map(|(x, y)| x - y).collect();
                    in_semigroup(&m, &r)
                });
            if !decomposes {
                return Err(format!("{kind:?}{n}: {d:?} not generated"));
            }
        }
    }
    Ok(())
}

pub fn json_round_trips(cases: u32) -> Result<(), String> {
    run(cases, (config_and_order(),), |((c, o),)| {
        let s = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Configuration>(&s).unwrap(), &c);
        prop_assert_eq!(&Configuration::parse_text(&c.to_text()).unwrap(), &c);
        let i = toric_ideal(&c, &o, &budget()).unwrap();
        let s = serde_json::to_string(i.gb()).unwrap();
        prop_assert_eq!(&serde_json::from_str::<MarkedBasis>(&s).unwrap(), i.gb());
        let s = serde_json::to_string(&i).unwrap();
        prop_assert_eq!(serde_json::from_str::<ToricIdeal>(&s).unwrap(), i);
        Ok(())
    })
}
