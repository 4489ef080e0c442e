//! Exact feasibility for small systems of linear inequalities over the
//! rationals, by the simplex method on a dictionary with Bland's rule.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rel {
    #[cfg_attr(not(test), allow(dead_code))]
    Le,
    Ge,
    Eq,
}

/// One constraint `coeffs · x REL rhs`.
#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub coeffs: Vec<i64>,
    pub rel: Rel,
    pub rhs: i64,
}

impl Constraint {
    pub fn new(coeffs: Vec<i64>, rel: Rel, rhs: i64) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

struct Row {
    basic: usize,
    constant: BigRational,
    coeffs: Vec<BigRational>,
}

/// Find `x >= 0` satisfying every constraint, or `None` when the system is
/// infeasible.
pub(crate) fn feasible_point(nvars: usize, constraints: &[Constraint]) -> Option<Vec<BigRational>> {
    // Everything becomes `a · x <= b`.
    let mut le: Vec<(Vec<i64>, i64)> = Vec::new();
    for c in constraints {
        debug_assert_eq!(c.coeffs.len(), nvars);
        match c.rel {
            Rel::Le => le.push((c.coeffs.clone(), c.rhs)),
            Rel::Ge => le.push((c.coeffs.iter().map(|v| -v).collect(), -c.rhs)),
            Rel::Eq => {
                le.push((c.coeffs.clone(), c.rhs));
                le.push((c.coeffs.iter().map(|v| -v).collect(), -c.rhs));
            }
        }
    }
    let m = le.len();
    if le.iter().all(|(_, b)| *b >= 0) {
        return Some(vec![BigRational::zero(); nvars]);
    }

    // Variables: 0..nvars originals, nvars..nvars+m slacks, nvars+m auxiliary.
    let aux = nvars + m;
    let mut nonbasic: Vec<usize> = (0..nvars).chain(std::iter::once(aux)).collect();
    let ncols = nonbasic.len();
    let mut rows: Vec<Row> = le
        .iter()
        .enumerate()
        .map(|(r, (a, b))| {
            let mut coeffs: Vec<BigRational> = a
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(-v)))
                .collect();
            coeffs.push(BigRational::one());
            Row {
                basic: nvars + r,
                constant: BigRational::from_integer(BigInt::from(*b)),
                coeffs,
            }
        })
        .collect();
    // maximize -aux
    let mut obj_const = BigRational::zero();
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); ncols];
    obj[ncols - 1] = -BigRational::one();

    let leave = (0..m)
        .min_by(|&a, &b| rows[a].constant.cmp(&rows[b].constant))
        .expect("at least one row");
    pivot(
        &mut rows,
        &mut obj,
        &mut obj_const,
        &mut nonbasic,
        leave,
        ncols - 1,
    );

    loop {
        // Bland: entering variable with the smallest index among improving columns.
        let entering = (0..ncols)
            .filter(|&j| obj[j].is_positive())
            .min_by_key(|&j| nonbasic[j]);
        let Some(j) = entering else { break };
        let mut best: Option<(BigRational, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if row.coeffs[j].is_negative() {
                let ratio = &row.constant / -&row.coeffs[j];
                let better = match &best {
                    None => true,
                    Some((br, bbasic, _)) => ratio < *br || (ratio == *br && row.basic < *bbasic),
                };
                if better {
                    best = Some((ratio, row.basic, r));
                }
            }
        }
        // The auxiliary objective is bounded by 0, so a leaving row exists.
        let (_, _, r) = best?;
        pivot(&mut rows, &mut obj, &mut obj_const, &mut nonbasic, r, j);
    }

    if !obj_const.is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for row in &rows {
        if row.basic < nvars {
            x[row.basic] = row.constant.clone();
        }
    }
    Some(x)
}

fn pivot(
    rows: &mut [Row],
    obj: &mut [BigRational],
    obj_const: &mut BigRational,
    nonbasic: &mut [usize],
    r: usize,
    j: usize,
) {
    let d = rows[r].coeffs[j].clone();
    debug_assert!(!d.is_zero());
    let inv = d.recip();
    // Solve row r for the entering variable.
    {
        let row = &mut rows[r];
        let old_basic = row.basic;
        row.constant = -&row.constant * &inv;
        for (k, c) in row.coeffs.iter_mut().enumerate() {
            if k == j {
                *c = inv.clone();
            } else if !c.is_zero() {
                *c = -&*c * &inv;
            }
        }
        row.basic = nonbasic[j];
        nonbasic[j] = old_basic;
    }
    let (pivot_const, pivot_coeffs) = (rows[r].constant.clone(), rows[r].coeffs.clone());
    let substitute = |constant: &mut BigRational, coeffs: &mut [BigRational]| {
        let f = coeffs[j].clone();
        if f.is_zero() {
            return;
        }
        *constant += &f * &pivot_const;
        for (k, c) in coeffs.iter_mut().enumerate() {
            if k == j {
                *c = &f * &pivot_coeffs[j];
            } else if !pivot_coeffs[k].is_zero() {
                *c += &f * &pivot_coeffs[k];
            }
        }
    };
    for (i, row) in rows.iter_mut().enumerate() {
        if i != r {
            substitute(&mut row.constant, &mut row.coeffs);
        }
    }
    substitute(obj_const, obj);
}

/// Scale a rational vector to integers by the lcm of the denominators,
/// returning the scaled vector and the lcm.
pub(crate) fn clear_denominators(x: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let v = x
        .iter()
        .map(|v| (v * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    (v, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(x: &[BigRational], cs: &[Constraint]) -> bool {
        x.iter().all(|v| !v.is_negative())
            && cs.iter().all(|c| {
                let lhs: BigRational = c
                    .coeffs
                    .iter()
                    .zip(x)
                    .map(|(&a, v)| v * BigRational::from_integer(BigInt::from(a)))
                    .sum();
                let rhs = BigRational::from_integer(BigInt::from(c.rhs));
                match c.rel {
                    Rel::Le => lhs <= rhs,
                    Rel::Ge => lhs >= rhs,
                    Rel::Eq => lhs == rhs,
                }
            })
    }

    #[test]
    fn trivially_feasible() {
        let cs = vec![Constraint::new(vec![1, 1], Rel::Le, 3)];
        let x = feasible_point(2, &cs).unwrap();
        assert!(check(&x, &cs));
    }

    #[test]
    fn needs_phase_one() {
        let cs = vec![
            Constraint::new(vec![1, -1], Rel::Ge, 1),
            Constraint::new(vec![-1, 2], Rel::Ge, 1),
            Constraint::new(vec![0, 1], Rel::Le, 10),
        ];
        let x = feasible_point(2, &cs).unwrap();
        assert!(check(&x, &cs));
    }

    #[test]
    fn equality_rows() {
        let cs = vec![
            Constraint::new(vec![1, -1, 0], Rel::Eq, 0),
            Constraint::new(vec![1, 1, -1], Rel::Ge, 1),
            Constraint::new(vec![0, 0, 1], Rel::Ge, 2),
        ];
        let x = feasible_point(3, &cs).unwrap();
        assert!(check(&x, &cs));
    }

    #[test]
    fn contradictory() {
        let cs = vec![
            Constraint::new(vec![1, -1], Rel::Ge, 1),
            Constraint::new(vec![-1, 1], Rel::Ge, 1),
        ];
        assert!(feasible_point(2, &cs).is_none());
    }

    #[test]
    fn denominators_cleared() {
        let x = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(2.into(), 3.into()),
        ];
        assert_eq!(
            clear_denominators(&x),
            (vec![BigInt::from(3), BigInt::from(4)], BigInt::from(6))
        );
    }
}
