//! Exact dense linear algebra over [`Scalar`].
//!
//! Inverses and determinants use fraction-free (Bareiss) elimination on
//! integer-scaled copies of the input, so intermediate values never leave
//! the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Rank by Gaussian elimination; small integer matrices take an `i128`
/// fraction-free path.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    if let Some(r) = as_i64_matrix(rows).and_then(|a| rank_i128(&a)) {
        return r;
    }
    let mut m: Matrix = rows.to_vec();
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..ncols {
                if !m[r][j].is_zero() {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of the submatrix made of the given columns.
pub fn column_rank(a: &[Vec<Scalar>], cols: &[usize]) -> usize {
    let sub: Matrix = a
        .iter()
        .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
        .collect();
    rank(&sub)
}

fn row_to_integers(row: &[Scalar]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.denom());
    }
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Inverse of a square matrix, or `None` when singular.
///
/// Each row of `[B | I]` is scaled to integers (which leaves the solution
/// unchanged) and reduced with fraction-free Gauss-Jordan elimination; the
/// right block ends as `det * B^{-1}`.
pub fn inverse(b: &[Vec<Scalar>]) -> Option<Matrix> {
    let n = b.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (i, row) in b.iter().enumerate() {
        debug_assert_eq!(row.len(), n);
        let mut aug: Vec<Scalar> = row.clone();
        aug.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
        m.push(row_to_integers(&aug));
    }
    let w = 2 * n;
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let pivot = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let v = &pivot * &m[i][j] - &f * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    // Diagonal entries now all equal `prev`; earlier rows were updated in
    // later steps, so each row individually carries its own scale.
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        let d = m[i][i].clone();
        for j in 0..n {
            out[i][j] = Scalar::from_big(m[i][n + j].clone(), d.clone());
        }
    }
    Some(out)
}

pub fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter().map(|row| crate::scalar::dot(row, v)).collect()
}

/// Determinant via Bareiss elimination on an integer-scaled copy.
pub fn determinant(a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in a {
        let mut l = BigInt::one();
        for x in row {
            l = l.lcm(x.denom());
        }
        m.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scale *= l;
    }
    let d = bareiss_det(&mut m);
    Scalar::from_big(d, scale)
}

fn bareiss_det(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

/// Bareiss determinant over `i128`; `None` on overflow.
pub fn determinant_i128(a: &[Vec<i64>]) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return Some(0);
        };
        if p != k {
            m.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = m[k][k]
                    .checked_mul(m[i][j])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Some(sign * prev)
}

/// Fraction-free rank over `i128`; `None` on overflow.
pub fn rank_i128(a: &[Vec<i64>]) -> Option<usize> {
    if a.is_empty() {
        return Some(0);
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let ncols = m[0].len();
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..m.len() {
            for j in (c + 1)..ncols {
                let v = m[r][c]
                    .checked_mul(m[i][j])?
                    .checked_sub(m[i][c].checked_mul(m[r][j])?)?;
                m[i][j] = v / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
    }
    Some(r)
}

/// Integer view of a matrix whose entries are all small integers.
pub fn as_i64_matrix(a: &[Vec<Scalar>]) -> Option<Vec<Vec<i64>>> {
    a.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_integer() {
                        x.numer().to_i64().filter(|v| v.abs() < (1 << 20))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let b = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&b).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: Scalar = (0..3).map(|k| &b[i][k] * &inv[k][j]).sum();
                assert_eq!(v, if i == j { Scalar::one() } else { Scalar::zero() });
            }
        }
    }

    #[test]
    fn inverse_needs_row_swap_and_rationals() {
        let mut b = m(&[&[0, 1], &[3, 5]]);
        b[1][1] = Scalar::ratio(1, 2);
        let inv = inverse(&b).unwrap();
        let prod: Scalar = (0..2).map(|k| &b[0][k] * &inv[k][0]).sum();
        assert_eq!(prod, Scalar::one());
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(determinant(&a), Scalar::from_int(-3));
        let ai = as_i64_matrix(&a).unwrap();
        assert_eq!(determinant_i128(&ai), Some(-3));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), Scalar::from_int(-1));
    }

    #[test]
    fn rank_detects_dependence() {
        assert_eq!(rank(&m(&[&[1, 1, 0], &[0, 1, 1], &[1, 2, 1]])), 2);
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1]])), 2);
    }

    #[test]
    fn integer_rank_agrees_with_rational_rank() {
        let a = [
            vec![0, 2, 4, 1, 3],
            vec![0, 1, 2, 5, 7],
            vec![0, 3, 6, 6, 10],
            vec![0, 4, 1, 0, 2],
        ];
        let q: Matrix = a.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        let half = q.iter().map(|r| r.iter().map(|x| x / &Scalar::from_int(2)).collect()).collect::<Matrix>();
        assert_eq!(rank_i128(&a), Some(3));
        assert_eq!(rank(&half), 3);
    }
}
