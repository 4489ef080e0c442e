use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{check_len, Error, Result};

/// Family a [`TermOrder`] was built from; used for display and round-tripping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grlex,
    Degrevlex,
    Weight,
}

/// Final tie-break applied after all weight rows agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tie {
    /// First differing variable (in permutation order) decides; larger exponent wins.
    Lex,
    /// Last differing variable decides; smaller exponent wins.
    RevLex,
}

/// A monomial order: weight rows compared lexicographically, then a lex or
/// revlex tie-break along a variable permutation.
///
/// `perm[0]` is the largest variable. Rows are indexed by the original
/// variable numbering. A revlex tie-break, or any row with a negative entry,
/// requires the first row to be strictly positive so that 1 stays minimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOrder")]
pub struct TermOrder {
    kind: OrderKind,
    perm: Vec<usize>,
    rows: Vec<Vec<i64>>,
    tie: Tie,
}

#[derive(Deserialize)]
struct RawOrder {
    kind: OrderKind,
    perm: Vec<usize>,
    rows: Vec<Vec<i64>>,
    tie: Tie,
}

impl TryFrom<RawOrder> for TermOrder {
    type Error = Error;
    fn try_from(r: RawOrder) -> Result<Self> {
        TermOrder::build(r.kind, r.perm, r.rows, r.tie)
    }
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

impl TermOrder {
    fn build(kind: OrderKind, perm: Vec<usize>, rows: Vec<Vec<i64>>, tie: Tie) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::invalid(format!(
                    "variable permutation {perm:?} is not a bijection on 0..{n}"
                )));
            }
            seen[p] = true;
        }
        for row in &rows {
            check_len(n, row.len())?;
        }
        let needs_positive_first =
            tie == Tie::RevLex || rows.iter().any(|r| r.iter().any(|&w| w < 0));
        if needs_positive_first {
            let ok = rows.first().is_some_and(|r| r.iter().all(|&w| w > 0));
            if !ok {
                return Err(Error::invalid(
                    "revlex tie-breaks and negative weight rows need a strictly positive first row",
                ));
            }
        }
        Ok(TermOrder {
            kind,
            perm,
            rows,
            tie,
        })
    }

    pub fn lex(n: usize) -> Self {
        Self::lex_with(identity(n)).expect("identity permutation")
    }

    pub fn lex_with(perm: Vec<usize>) -> Result<Self> {
        Self::build(OrderKind::Lex, perm, Vec::new(), Tie::Lex)
    }

    pub fn grlex(n: usize) -> Self {
        Self::grlex_with(identity(n)).expect("identity permutation")
    }

    pub fn grlex_with(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::build(OrderKind::Grlex, perm, vec![vec![1; n]], Tie::Lex)
    }

    pub fn degrevlex(n: usize) -> Self {
        Self::degrevlex_with(identity(n)).expect("identity permutation")
    }

    pub fn degrevlex_with(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::build(OrderKind::Degrevlex, perm, vec![vec![1; n]], Tie::RevLex)
    }

    /// Weight order refined by lex along `perm`. Weights must be nonnegative.
    pub fn weight(weights: Vec<i64>, perm: Vec<usize>) -> Result<Self> {
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::invalid("weights must be nonnegative"));
        }
        Self::build(OrderKind::Weight, perm, vec![weights], Tie::Lex)
    }

    /// General matrix order.
    pub fn matrix(rows: Vec<Vec<i64>>, tie: Tie, perm: Vec<usize>) -> Result<Self> {
        Self::build(OrderKind::Weight, perm, rows, tie)
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn tie(&self) -> Tie {
        self.tie
    }

    /// Compare two monomials; `Equal` exactly when they coincide.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        a.check_nvars(self.nvars())?;
        b.check_nvars(self.nvars())?;
        Ok(self.cmp(a, b))
    }

    /// Comparison without the dimension check.
    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exps(), b.exps());
        for row in &self.rows {
            let wa: i128 = row
                .iter()
                .zip(ea)
                .map(|(&w, &e)| w as i128 * e as i128)
                .sum();
            let wb: i128 = row
                .iter()
                .zip(eb)
                .map(|(&w, &e)| w as i128 * e as i128)
                .sum();
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.tie {
            Tie::Lex => {
                for &v in &self.perm {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
            }
            Tie::RevLex => {
                for &v in self.perm.iter().rev() {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => {}
                        o => return o.reverse(),
                    }
                }
            }
        }
        Ordering::Equal
    }

    /// A key whose lexicographic order agrees with this term order.
    pub(crate) fn key(&self, m: &Monomial) -> Vec<i128> {
        let e = m.exps();
        let mut key: Vec<i128> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(e)
                    .map(|(&w, &x)| w as i128 * x as i128)
                    .sum()
            })
            .collect();
        match self.tie {
            Tie::Lex => key.extend(self.perm.iter().map(|&v| e[v] as i128)),
            Tie::RevLex => key.extend(self.perm.iter().rev().map(|&v| -(e[v] as i128))),
        }
        key
    }

    /// Parse an order specification such as `lex`, `lex:3,1,2`, `degrevlex`,
    /// `grlex:2,1`, or `weight:5,1,1` (optionally `weight:5,1,1;2,1,3`).
    /// Variable indices are 1-based and listed from largest to smallest.
    pub fn parse(spec: &str, nvars: usize) -> Result<Self> {
        let spec = spec.trim();
        let (name, rest) = match spec.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (spec, None),
        };
        let parse_list = |s: &str| -> Result<Vec<i64>> {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::invalid(format!("bad integer {t:?} in order spec")))
                })
                .collect()
        };
        let parse_perm = |s: Option<&str>| -> Result<Vec<usize>> {
            match s {
                None => Ok(identity(nvars)),
                Some(s) => {
                    let v = parse_list(s)?;
                    check_len(nvars, v.len())?;
                    v.into_iter()
                        .map(|i| {
                            if i >= 1 && (i as usize) <= nvars {
                                Ok(i as usize - 1)
                            } else {
                                Err(Error::invalid(format!("variable index {i} out of range")))
                            }
                        })
                        .collect()
                }
            }
        };
        match name {
            "lex" => Self::lex_with(parse_perm(rest)?),
            "grlex" => Self::grlex_with(parse_perm(rest)?),
            "degrevlex" => Self::degrevlex_with(parse_perm(rest)?),
            "weight" => {
                let rest = rest.ok_or_else(|| Error::invalid("weight order needs weights"))?;
                let (w, p) = match rest.split_once(';') {
                    Some((w, p)) => (w, Some(p)),
                    None => (rest, None),
                };
                let w = parse_list(w)?;
                check_len(nvars, w.len())?;
                Self::weight(w, parse_perm(p)?)
            }
            other => Err(Error::invalid(format!("unknown term order {other:?}"))),
        }
    }
}
