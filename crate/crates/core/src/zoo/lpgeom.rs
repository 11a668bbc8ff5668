//! Geometry of LP polytopes from vertex data: basis-graph enumeration, the
//! support-rank edge test and convex-hull membership tests.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::lp::{ratio_along, Basis, BasisState, LinearProgram, Objective};
use crate::pivot::PivotRule;
use crate::scalar::Scalar;
use crate::simplex::{find_feasible_point, run_simplex};

/// All vertices of `{Ax = b, x >= 0}` reachable from `start` through
/// feasible pivots, degenerate ones included. Sorted.
pub fn enumerate_lp_vertices(
    lp: &LinearProgram,
    start: &Basis,
    limit: usize,
) -> Result<Vec<Vec<Scalar>>> {
    let mut seen: HashSet<Basis> = HashSet::new();
    let mut verts: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(basis) = queue.pop_front() {
        let st = BasisState::new(lp, &basis)?;
        if st.first_negative().is_some() {
            return Err(Error::InfeasibleStart);
        }
        verts.insert(st.x.clone());
        if seen.len() > limit.saturating_mul(64) || verts.len() > limit {
            return Err(Error::TooLarge {
                what: "basis graph",
                size: seen.len() as u128,
                limit: limit as u128,
            });
        }
        for &q in basis.nonbasic() {
            let eta = st.direction(lp, q);
            let Some((_, theta)) = ratio_along(&st.x, &eta, &basis, &|j| j) else {
                continue;
            };
            for &p in basis.basic() {
                if eta[p].is_negative() && &st.x[p] / &(-&eta[p]) == theta {
                    let nb = basis.exchange(q, p);
                    if seen.insert(nb.clone()) {
                        queue.push_back(nb);
                    }
                }
            }
        }
    }
    Ok(verts.into_iter().collect())
}

/// Two vertices span an edge iff the face cut out by their joint support
/// is one-dimensional: `rank(A_S) = |S| - 1`.
pub fn lp_edge(lp: &LinearProgram, u: &[Scalar], v: &[Scalar]) -> bool {
    if u == v {
        return false;
    }
    let support: Vec<usize> = (0..lp.num_vars())
        .filter(|&j| !u[j].is_zero() || !v[j].is_zero())
        .collect();
    linalg::column_rank(lp.a(), &support) + 1 == support.len()
}

fn combination_system(points: &[Vec<Scalar>], skip: &[usize], target: &[Scalar]) -> (Matrix, Vec<Scalar>, Vec<usize>) {
    let cols: Vec<usize> = (0..points.len()).filter(|k| !skip.contains(k)).collect();
    let d = target.len();
    let mut a: Matrix = (0..d)
        .map(|i| cols.iter().map(|&k| points[k][i].clone()).collect())
        .collect();
    a.push(vec![Scalar::one(); cols.len()]);
    let mut b = target.to_vec();
    b.push(Scalar::one());
    (a, b, cols)
}

/// Whether `points[i]` is a convex combination of the other points.
pub fn in_hull_of_others(points: &[Vec<Scalar>], i: usize) -> Result<bool> {
    let (a, b, cols) = combination_system(points, &[i], &points[i]);
    if cols.is_empty() {
        return Ok(false);
    }
    Ok(find_feasible_point(&a, &b)?.is_some())
}

/// Whether `[points[i], points[j]]` is an edge of `conv(points)`: the
/// midpoint admits only the combination `(p_i + p_j) / 2`.
pub fn hull_edge(points: &[Vec<Scalar>], i: usize, j: usize) -> Result<bool> {
    let half = Scalar::ratio(1, 2);
    let mid: Vec<Scalar> = points[i]
        .iter()
        .zip(&points[j])
        .map(|(x, y)| &(x + y) * &half)
        .collect();
    let (a, b, cols) = combination_system(points, &[], &mid);
    let n = cols.len();
    let full = linalg::rank(&a);
    if full >= n {
        // Affinely independent points: every pair is an edge.
        return Ok(true);
    }
    let c: Vec<Scalar> = (0..n)
        .map(|k| if k == i || k == j { Scalar::one() } else { Scalar::zero() })
        .collect();
    let names = (0..n).map(|k| format!("l{k}")).collect();
    let lp = LinearProgram::from_equalities("hull", a, b, Objective::numeric(c), names)?;
    let x = find_feasible_point(lp.a(), lp.b())?.ok_or(Error::InfeasibleStart)?;
    let start = lp.basis_for_vertex(&x)?;
    let t = run_simplex(&lp, &start, &PivotRule::bland_identity(n), usize::MAX)?;
    let x = t.final_vertex();
    Ok(&x[i] + &x[j] == Scalar::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Scalar>> {
        v.iter().map(|p| p.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
    }

    #[test]
    fn square_hull_edges() {
        let p = pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        assert!(hull_edge(&p, 0, 1).unwrap());
        assert!(!hull_edge(&p, 0, 2).unwrap());
        assert!(hull_edge(&p, 3, 0).unwrap());
    }

    #[test]
    fn interior_point_is_not_extreme() {
        let p = pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[2, 2]]);
        assert!(in_hull_of_others(&p, 3).unwrap());
        assert!(!in_hull_of_others(&p, 4).unwrap());
    }
}
