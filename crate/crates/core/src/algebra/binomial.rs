use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::order::TermOrder;
use crate::error::{check_len, Error, Result};

/// A pure difference binomial `lead - trail`.
///
/// Unmarked binomials are normalized so that `lead` is the larger monomial
/// under degrevlex with the identity permutation; two unmarked binomials are
/// then equal exactly when they agree up to sign.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBinomial")]
pub struct Binomial {
    lead: Monomial,
    trail: Monomial,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    marked: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Deserialize)]
struct RawBinomial {
    lead: Monomial,
    trail: Monomial,
    #[serde(default = "yes")]
    marked: bool,
}

impl TryFrom<RawBinomial> for Binomial {
    type Error = Error;
    fn try_from(r: RawBinomial) -> Result<Self> {
        if r.marked {
            Binomial::marked(r.lead, r.trail)
        } else {
            Binomial::new(r.lead, r.trail)
        }
    }
}

impl Binomial {
    /// Unmarked binomial `a - b`, stored in canonical orientation.
    pub fn new(a: Monomial, b: Monomial) -> Result<Self> {
        check_len(a.nvars(), b.nvars())?;
        if a == b {
            return Err(Error::invalid("binomial terms must differ"));
        }
        let canon = TermOrder::degrevlex(a.nvars());
        let (lead, trail) = if canon.cmp(&a, &b) == Ordering::Greater {
            (a, b)
        } else {
            (b, a)
        };
        Ok(Binomial {
            lead,
            trail,
            marked: false,
        })
    }

    /// Binomial with `lead` pinned as its leading term.
    pub fn marked(lead: Monomial, trail: Monomial) -> Result<Self> {
        check_len(lead.nvars(), trail.nvars())?;
        if lead == trail {
            return Err(Error::invalid("binomial terms must differ"));
        }
        Ok(Binomial {
            lead,
            trail,
            marked: true,
        })
    }

    /// Orient `a - b` by `order`; `None` when the terms coincide.
    pub fn oriented(a: Monomial, b: Monomial, order: &TermOrder) -> Option<Self> {
        match order.cmp(&a, &b) {
            Ordering::Greater => Some(Binomial {
                lead: a,
                trail: b,
                marked: true,
            }),
            Ordering::Less => Some(Binomial {
                lead: b,
                trail: a,
                marked: true,
            }),
            Ordering::Equal => None,
        }
    }

    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn trail(&self) -> &Monomial {
        &self.trail
    }

    pub fn is_marked(&self) -> bool {
        self.marked
    }

    pub fn nvars(&self) -> usize {
        self.lead.nvars()
    }

    /// Copy with the lead pinned.
    pub fn into_marked(mut self) -> Self {
        self.marked = true;
        self
    }

    /// Copy with the terms swapped (and pinned).
    pub fn flipped(&self) -> Self {
        Binomial {
            lead: self.trail.clone(),
            trail: self.lead.clone(),
            marked: true,
        }
    }

    /// Same binomial re-oriented by `order`.
    pub fn reoriented(&self, order: &TermOrder) -> Self {
        Binomial::oriented(self.lead.clone(), self.trail.clone(), order)
            .expect("binomial terms differ")
    }

    /// Canonical unmarked form, for set comparisons up to sign.
    pub fn canonical(&self) -> Self {
        Binomial::new(self.lead.clone(), self.trail.clone()).expect("binomial terms differ")
    }

    /// Exponent difference `lead - trail`.
    pub fn direction(&self) -> Vec<i64> {
        self.lead
            .exps()
            .iter()
            .zip(self.trail.exps())
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    pub fn has_coprime_terms(&self) -> bool {
        self.lead.is_coprime(&self.trail)
    }

    pub fn max_degree(&self) -> u64 {
        self.lead.degree().max(self.trail.degree())
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> BinomialDisplay<'a> {
        BinomialDisplay { b: self, names }
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} - {:?}", self.lead, self.trail)
    }
}

pub struct BinomialDisplay<'a> {
    b: &'a Binomial,
    names: &'a [String],
}

impl fmt::Display for BinomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} - {}",
            self.b.lead.display_with(self.names),
            self.b.trail.display_with(self.names)
        )
    }
}

/// A list of binomials with pinned leading terms over a named ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBasis")]
pub struct MarkedBasis {
    ring: Vec<String>,
    elements: Vec<Binomial>,
    #[serde(default)]
    reduced: bool,
}

#[derive(Deserialize)]
struct RawBasis {
    ring: Vec<String>,
    elements: Vec<Binomial>,
    #[serde(default)]
    reduced: bool,
}

impl TryFrom<RawBasis> for MarkedBasis {
    type Error = Error;
    fn try_from(r: RawBasis) -> Result<Self> {
        let b = MarkedBasis::new(r.ring, r.elements)?;
        if r.reduced {
            b.into_reduced()
        } else {
            Ok(b)
        }
    }
}

impl MarkedBasis {
    pub fn new(ring: Vec<String>, elements: Vec<Binomial>) -> Result<Self> {
        let n = ring.len();
        for e in &elements {
            check_len(n, e.nvars())?;
        }
        let elements = elements.into_iter().map(Binomial::into_marked).collect();
        Ok(MarkedBasis {
            ring,
            elements,
            reduced: false,
        })
    }

    /// Flag the basis as reduced after checking that no lead divides another.
    pub fn into_reduced(mut self) -> Result<Self> {
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                if i != j && a.lead().divides(b.lead()) {
                    return Err(Error::invalid(format!(
                        "lead of element {i} divides lead of element {j}"
                    )));
                }
            }
        }
        self.reduced = true;
        Ok(self)
    }

    pub(crate) fn from_parts_reduced(ring: Vec<String>, elements: Vec<Binomial>) -> Self {
        MarkedBasis {
            ring,
            elements,
            reduced: true,
        }
    }

    pub fn empty(ring: Vec<String>) -> Self {
        MarkedBasis {
            ring,
            elements: Vec::new(),
            reduced: true,
        }
    }

    pub fn ring(&self) -> &[String] {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leads(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|b| b.lead())
    }

    pub fn max_degree(&self) -> u64 {
        self.elements
            .iter()
            .map(Binomial::max_degree)
            .max()
            .unwrap_or(0)
    }

    /// Element strings such as `x_1*x_2 - x_3^2`.
    pub fn render(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(|b| b.display_with(&self.ring).to_string())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn equal_terms_rejected() {
        assert!(Binomial::new(m(&[1, 0]), m(&[1, 0])).is_err());
        assert!(Binomial::marked(m(&[1, 0]), m(&[1, 0])).is_err());
    }

    #[test]
    fn unmarked_is_canonical_up_to_sign() {
        let a = Binomial::new(m(&[1, 1, 0]), m(&[0, 0, 3])).unwrap();
        let b = Binomial::new(m(&[0, 0, 3]), m(&[1, 1, 0])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lead(), &m(&[0, 0, 3]));
    }

    #[test]
    fn oriented_follows_order() {
        let lex = TermOrder::lex(3);
        let b = Binomial::oriented(m(&[0, 0, 3]), m(&[1, 1, 0]), &lex).unwrap();
        assert_eq!(b.lead(), &m(&[1, 1, 0]));
        assert!(Binomial::oriented(m(&[1, 0, 0]), m(&[1, 0, 0]), &lex).is_none());
    }

    #[test]
    fn reduced_flag_checks_divisibility() {
        let ring: Vec<String> = (1..=2).map(|i| format!("x_{i}")).collect();
        let basis = MarkedBasis::new(
            ring,
            vec![
                Binomial::marked(m(&[1, 0]), m(&[0, 1])).unwrap(),
                Binomial::marked(m(&[2, 0]), m(&[0, 3])).unwrap(),
            ],
        )
        .unwrap();
        assert!(basis.into_reduced().is_err());
    }

    #[test]
    fn json_shape() {
        let b = Binomial::marked(m(&[1, 0]), m(&[0, 2])).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"lead":[1,0],"trail":[0,2]}"#);
        let back: Binomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }
}
