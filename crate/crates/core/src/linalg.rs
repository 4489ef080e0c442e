//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn to_i64_rows(rows: Vec<Vec<BigInt>>) -> Result<Vec<Vec<i64>>> {
    rows.into_iter()
        .map(|r| {
            r.iter()
                .map(|v| v.to_i64().ok_or(Error::Overflow("lattice basis")))
                .collect()
        })
        .collect()
}

/// Row-echelonize `rows` by unimodular integer row operations, restricted to
/// the first `ncols` columns. Returns the number of pivot rows; rows below
/// that are zero on those columns.
fn integer_echelon(rows: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let mut p = 0;
    for c in 0..ncols {
        if p == rows.len() {
            break;
        }
        loop {
            let best = (p..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(b) = best else { break };
            rows.swap(p, b);
            let mut done = true;
            for r in (p + 1)..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[p][c]);
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[p]) {
                    *x -= &q * y;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !rows[p][c].is_zero() {
            p += 1;
        }
    }
    p
}

/// Hermite normal form of the row lattice: echelon rows with positive pivots
/// and entries above each pivot reduced into `[0, pivot)`. Zero rows dropped.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    let mut m = big_rows(rows);
    let rank = integer_echelon(&mut m, ncols);
    m.truncate(rank);
    let mut pivots = Vec::with_capacity(rank);
    for row in m.iter_mut() {
        let c = (0..ncols).find(|&c| !row[c].is_zero()).expect("pivot row");
        if row[c].is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        pivots.push(c);
    }
    for r in 0..rank {
        let c = pivots[r];
        for above in 0..r {
            let q = m[above][c].div_floor(&m[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = m.split_at_mut(r);
            for (x, y) in head[above].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
    }
    to_i64_rows(m)
}

/// A basis of the integer kernel `{u in Z^N : sum_i u_i * cols[i] = 0}`,
/// where `cols` lists `N` vectors of equal length. The basis is returned in
/// Hermite normal form.
pub fn integer_kernel(cols: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = cols.len();
    let dim = cols.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = cols
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut row: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
            row.extend((0..n).map(|j| {
                if j == k {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let rank = integer_echelon(&mut m, dim);
    let kernel: Vec<Vec<i64>> = to_i64_rows(
        m.split_off(rank)
            .into_iter()
            .map(|r| r[dim..].to_vec())
            .collect(),
    )?;
    hermite_normal_form(&kernel)
}

fn rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect()
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rational_rows(rows);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            let (head, tail) = m.split_at_mut(i);
            for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                *x -= &f * y;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = big_rows(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=m.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Solve `m x = b` for square nonsingular `m` over the rationals.
pub fn solve_rational(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a = rational_rows(m);
    for (row, &v) in a.iter_mut().zip(b) {
        row.push(BigRational::from_integer(BigInt::from(v)));
    }
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let (pivot, other) = if i < c {
                let (h, t) = a.split_at_mut(c);
                (&t[0], &mut h[i])
            } else {
                let (h, t) = a.split_at_mut(i);
                (&h[c], &mut t[0])
            };
            for (x, y) in other.iter_mut().zip(pivot) {
                *x -= &f * y;
            }
        }
    }
    Some(
        a.into_iter()
            .map(|mut r| r.pop().expect("augmented"))
            .collect(),
    )
}

/// Integer solution of `m x = b` when `m` is nonsingular and the unique
/// rational solution is integral.
pub fn solve_integral(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigInt>> {
    solve_rational(m, b)?
        .into_iter()
        .map(|v| v.is_integer().then(|| v.to_integer()))
        .collect()
}

/// Adjugate `adj(m) = det(m) * m^{-1}` of a nonsingular integer matrix.
pub fn adjugate(m: &[Vec<i64>]) -> Option<Vec<Vec<BigInt>>> {
    let n = m.len();
    let det = BigRational::from_integer(determinant(m));
    if det.is_zero() {
        return None;
    }
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<i64> = (0..n).map(|i| i64::from(i == j)).collect();
        cols.push(solve_rational(m, &e)?);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| (&cols[j][i] * &det).to_integer()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_vec(cols: &[Vec<i64>], u: &[i64]) -> Vec<i64> {
        let dim = cols[0].len();
        (0..dim)
            .map(|k| cols.iter().zip(u).map(|(c, &x)| c[k] * x).sum())
            .collect()
    }

    #[test]
    fn kernel_of_a2() {
        let cols = vec![vec![3, 0], vec![0, 3], vec![1, 1]];
        let k = integer_kernel(&cols).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v == &vec![1, 1, -3] || v == &vec![-1, -1, 3]);
    }

    #[test]
    fn kernel_of_independent_points_is_empty() {
        let cols: Vec<Vec<i64>> = (0..4)
            .map(|i| (0..4).map(|j| i64::from(i == j)).collect())
            .collect();
        assert!(integer_kernel(&cols).unwrap().is_empty());
    }

    #[test]
    fn kernel_is_saturated_lattice() {
        // 2x + 4y + 6z = 0 has kernel basis of index 1 in the rational kernel
        let cols = vec![vec![2], vec![4], vec![6]];
        let k = integer_kernel(&cols).unwrap();
        assert_eq!(k.len(), 2);
        for u in &k {
            assert_eq!(mat_vec(&cols, u), vec![0]);
        }
        // (1, 1, -1) must be an integer combination: the HNF rows span Z^3 ∩ ker
        let h = hermite_normal_form(&[k[0].clone(), k[1].clone(), vec![1, 1, -1]]).unwrap();
        assert_eq!(h, k);
    }

    #[test]
    fn rank_and_det() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 0, 1], vec![0, 1, 1]]), 2);
        assert_eq!(determinant(&[vec![-2, 1], vec![1, -2]]), BigInt::from(3));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![-2, 2], vec![2, -2]]), BigInt::zero());
        let minors = leading_minors(&[vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]);
        assert_eq!(
            minors,
            vec![BigInt::from(-2), BigInt::from(3), BigInt::from(-4)]
        );
    }

    #[test]
    fn adjugate_times_matrix_is_det() {
        let m = vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]];
        let adj = adjugate(&m).unwrap();
        let det = determinant(&m);
        for i in 0..3 {
            for j in 0..3 {
                let s: BigInt = (0..3).map(|k| &adj[i][k] * m[k][j]).sum();
                let expect = if i == j { det.clone() } else { BigInt::zero() };
                assert_eq!(s, expect);
            }
        }
    }

    #[test]
    fn integral_solutions() {
        let m = vec![vec![-2, 1], vec![1, -2]];
        // -M * (1, 1) = (1, 1)
        assert_eq!(
            solve_integral(&m, &[-1, -1]),
            Some(vec![BigInt::one(), BigInt::one()])
        );
        assert_eq!(solve_integral(&m, &[-1, 0]), None);
    }
}
