//! Zonotopes `Z = sum_j [0, v^j]`: vertices as sign-feasible generator
//! subsets, and facet counts from generator hyperplanes.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;
use crate::simplex::find_feasible_point;

pub const MAX_GENERATORS: usize = 16;

pub fn check_generators(gens: &[Vec<Scalar>]) -> Result<usize> {
    let d = gens.first().map_or(0, |g| g.len());
    if gens.iter().any(|g| g.len() != d) {
        return Err(Error::InvalidSpec("generators differ in dimension".into()));
    }
    for (i, g) in gens.iter().enumerate() {
        if g.iter().all(|x| x.is_zero()) {
            return Err(Error::CollinearGenerators(i, i));
        }
        for (j, h) in gens.iter().enumerate().skip(i + 1) {
            if linalg::rank(&[g.clone(), h.clone()]) < 2 {
                return Err(Error::CollinearGenerators(i, j));
            }
        }
    }
    Ok(d)
}

/// `m` pairwise independent rational generators in dimension `d`, with
/// numerators in `[-9, 9]` and denominators in `1..=4`.
pub fn random_generators<R: Rng>(m: usize, d: usize, rng: &mut R) -> Result<Vec<Vec<Scalar>>> {
    if d == 0 || m > MAX_GENERATORS || (d == 1 && m > 1) {
        return Err(Error::InvalidSpec(format!("cannot draw {m} independent generators in dimension {d}")));
    }
    let mut gens: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    while gens.len() < m {
        let g: Vec<Scalar> = (0..d).map(|_| Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
        if g.iter().all(|x| x.is_zero()) {
            continue;
        }
        if gens.iter().all(|h| linalg::rank(&[g.clone(), h.clone()]) == 2) {
            gens.push(g);
        }
    }
    Ok(gens)
}

/// Is there `a` with `a . v^j < 0` exactly for `j` in `subset`, and
/// `a . v^j > 0` for every other generator?
///
/// Strictness is handled by homogeneity: the system `a . v^j <= -1` on the
/// subset and `a . v^j >= 1` elsewhere has the same solvability.
pub fn sign_feasible(gens: &[Vec<Scalar>], subset: &[bool]) -> Result<bool> {
    let m = gens.len();
    let d = gens.first().map_or(0, |g| g.len());
    // Variables: a+ (d), a- (d), surplus t (m).
    let mut a: Matrix = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (j, g) in gens.iter().enumerate() {
        let mut row: Vec<Scalar> = g.to_vec();
        row.extend(g.iter().map(|x| -x));
        row.extend((0..m).map(|k| {
            if k != j {
                Scalar::zero()
            } else if subset[j] {
                Scalar::one()
            } else {
                -Scalar::one()
            }
        }));
        a.push(row);
        b.push(if subset[j] { -Scalar::one() } else { Scalar::one() });
    }
    debug_assert!(a.iter().all(|r| r.len() == 2 * d + m));
    Ok(find_feasible_point(&a, &b)?.is_some())
}

pub fn subset_point(gens: &[Vec<Scalar>], subset: &[usize]) -> Vec<Scalar> {
    let d = gens.first().map_or(0, |g| g.len());
    let mut p = vec![Scalar::zero(); d];
    for &j in subset {
        for (x, g) in p.iter_mut().zip(&gens[j]) {
            *x += g.clone();
        }
    }
    p
}

/// Vertices as `(S, sum_{j in S} v^j)`, subsets sorted.
pub fn zonotope_vertices(gens: &[Vec<Scalar>]) -> Result<Vec<(Vec<usize>, Vec<Scalar>)>> {
    let m = gens.len();
    if m > MAX_GENERATORS {
        return Err(Error::TooLarge {
            what: "zonotope generators",
            size: m as u128,
            limit: MAX_GENERATORS as u128,
        });
    }
    check_generators(gens)?;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << m) {
        let flags: Vec<bool> = (0..m).map(|j| mask >> j & 1 == 1).collect();
        if sign_feasible(gens, &flags)? {
            let s: Vec<usize> = (0..m).filter(|&j| flags[j]).collect();
            let p = subset_point(gens, &s);
            out.push((s, p));
        }
    }
    out.sort();
    Ok(out)
}

/// Reduced row echelon form with zero rows removed.
pub fn rref(rows: &[Vec<Scalar>]) -> Matrix {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &piv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Facets of the zonotope: two per hyperplane (within the generators' span)
/// spanned by generators.
pub fn zonotope_facet_count(gens: &[Vec<Scalar>]) -> Result<usize> {
    let m = gens.len();
    let d = check_generators(gens)?;
    if d > 4 || m > 10 {
        return Err(Error::TooLarge {
            what: "zonotope for facet counting",
            size: m as u128,
            limit: 10,
        });
    }
    let r = linalg::rank(gens);
    if r <= 1 {
        return Ok(2 * r);
    }
    let mut planes: BTreeSet<Matrix> = BTreeSet::new();
    let mut pick = Vec::new();
    fn rec(
        gens: &[Vec<Scalar>],
        from: usize,
        need: usize,
        pick: &mut Vec<usize>,
        planes: &mut BTreeSet<Matrix>,
    ) {
        if need == 0 {
            let rows: Matrix = pick.iter().map(|&j| gens[j].clone()).collect();
            let e = rref(&rows);
            if e.len() == pick.len() {
                planes.insert(e);
            }
            return;
        }
        for j in from..gens.len() {
            pick.push(j);
            rec(gens, j + 1, need - 1, pick, planes);
            pick.pop();
        }
    }
    rec(gens, 0, r - 1, &mut pick, &mut planes);
    Ok(2 * planes.len())
}
