use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_len, Result};

/// A monomial `x^p`, stored as its exponent vector.
///
/// A 64-bit support mask (bit `i mod 64` set when `p_i > 0`) rejects most
/// failed divisibility tests without touching the exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
    mask: u64,
}

fn support_mask(exps: &[u32]) -> u64 {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let mask = support_mask(&exps);
        Monomial { exps, mask }
    }

    /// The constant monomial 1 in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            mask: 0,
        }
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial::new(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.mask == 0
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// `self | other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 {
            return false;
        }
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        if self.mask & other.mask == 0 {
            return true;
        }
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            mask: self.mask | other.mask,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
            mask: self.mask | other.mask,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(self.div_unchecked(other))
    }

    /// `self / other` where the caller has established divisibility.
    pub(crate) fn div_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// `self / divisor * factor`, the single rewriting step of binomial
    /// reduction. `divisor` must divide `self`.
    #[inline]
    pub(crate) fn rewrite(&self, divisor: &Monomial, factor: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&divisor.exps)
                .zip(&factor.exps)
                .map(|((a, d), f)| a - d + f)
                .collect(),
        )
    }

    /// Exponent vector as signed integers.
    pub fn to_i64(&self) -> Vec<i64> {
        self.exps.iter().map(|&e| e as i64).collect()
    }

    pub(crate) fn check_nvars(&self, nvars: usize) -> Result<()> {
        check_len(nvars, self.exps.len())
    }

    /// Render with the given variable names, e.g. `x_1*x_3^2`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self
                .names
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("x_{}", i + 1));
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Monomial::new(Vec::<u32>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 0, 2]);
        let b = m(&[1, 1, 3]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a), Some(m(&[0, 1, 1])));
        assert_eq!(a.lcm(&m(&[0, 2, 1])), m(&[1, 2, 2]));
        assert_eq!(a.gcd(&b), a);
    }

    #[test]
    fn mask_wraps_past_64_variables() {
        let mut e = vec![0u32; 70];
        e[66] = 1;
        let a = Monomial::new(e.clone());
        e[2] = 1;
        let b = Monomial::new(e);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
    }

    #[test]
    fn squarefree_and_degree() {
        assert!(m(&[1, 1, 0]).is_squarefree());
        assert!(!m(&[0, 0, 3]).is_squarefree());
        assert_eq!(m(&[0, 2, 3]).degree(), 5);
        assert!(m(&[0, 0]).is_one());
    }

    #[test]
    fn coprime() {
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 2, 1])));
        assert!(!m(&[1, 1, 0]).is_coprime(&m(&[0, 2, 1])));
    }

    #[test]
    fn display_uses_names() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(m(&[1, 2]).display_with(&names).to_string(), "a*b^2");
        assert_eq!(m(&[0, 0]).display_with(&names).to_string(), "1");
    }
}
