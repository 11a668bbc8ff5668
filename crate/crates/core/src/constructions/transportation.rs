//! Improving cycles at a transportation optimum, and the monotone walk on
//! `2 x n` transportation polytopes.

use std::cmp::Ordering;

use super::MonotonePath;
use crate::error::{Error, Result};
use crate::lp::Objective;
use crate::scalar::{dot, Scalar};
use crate::zoo::transport::{check_margins, is_nondegenerate, transport_vertices};
use crate::zoo::{CombinatorialVertex, DEFAULT_VERTEX_LIMIT};

/// A nondegenerate transportation instance with its unique optimum.
#[derive(Debug, Clone)]
pub struct SolvedTransportation {
    pub supplies: Vec<Scalar>,
    pub demands: Vec<Scalar>,
    /// Row-major `k x n` costs.
    pub costs: Vec<Scalar>,
    pub vertices: Vec<Vec<Scalar>>,
    pub optimum: Vec<Scalar>,
}

impl SolvedTransportation {
    /// Solves by enumerating all vertices.
    pub fn solve(supplies: Vec<Scalar>, demands: Vec<Scalar>, costs: Vec<Scalar>) -> Result<Self> {
        check_margins(&supplies, &demands)?;
        if costs.len() != supplies.len() * demands.len() {
            return Err(Error::InvalidSpec("cost matrix size differs from k x n".into()));
        }
        if !is_nondegenerate(&supplies, &demands)? {
            return Err(Error::DegenerateInstance);
        }
        let vertices = transport_vertices(&supplies, &demands, DEFAULT_VERTEX_LIMIT)?;
        let vals: Vec<Scalar> = vertices.iter().map(|x| dot(&costs, x)).collect();
        let best = (0..vertices.len()).min_by(|&a, &b| vals[a].cmp(&vals[b])).unwrap();
        if let Some(tie) = (0..vertices.len()).find(|&j| j != best && vals[j] == vals[best]) {
            return Err(Error::DegenerateObjective(best, tie));
        }
        let optimum = vertices[best].clone();
        Ok(SolvedTransportation {
            supplies,
            demands,
            costs,
            vertices,
            optimum,
        })
    }

    pub fn rows(&self) -> usize {
        self.supplies.len()
    }

    pub fn cols(&self) -> usize {
        self.demands.len()
    }

    fn cost(&self, s: usize, d: usize) -> &Scalar {
        &self.costs[s * self.cols() + d]
    }

    fn in_optimum(&self, s: usize, d: usize) -> bool {
        s < self.rows() && d < self.cols() && self.optimum[s * self.cols() + d].is_positive()
    }

    pub fn value(&self, x: &[Scalar]) -> Scalar {
        dot(&self.costs, x)
    }
}

/// Evaluates `c(s1,d1) - c(s2,d1) + c(s2,d2) - ... + c(sk,dk) - c(s1,dk)`
/// for pairs `(s_i, d_i)` of the optimum's support, and reports whether it
/// is negative.
pub fn improving_cycle_check(inst: &SolvedTransportation, cycle: &[(usize, usize)]) -> Result<bool> {
    if cycle.len() < 2 {
        return Err(Error::InvalidSpec("cycle needs k >= 2 pairs".into()));
    }
    for &(s, d) in cycle {
        if !inst.in_optimum(s, d) {
            return Err(Error::NotMatchedInOptimum { supply: s, demand: d });
        }
    }
    let k = cycle.len();
    let distinct = |f: fn(&(usize, usize)) -> usize| {
        let mut v: Vec<usize> = cycle.iter().map(f).collect();
        v.sort_unstable();
        v.dedup();
        v.len() == k
    };
    if !distinct(|p| p.0) || !distinct(|p| p.1) {
        return Err(Error::InvalidSpec("cycle repeats a node".into()));
    }
    let mut sum = Scalar::zero();
    for i in 0..k {
        let (s, d) = cycle[i];
        let s_next = cycle[(i + 1) % k].0;
        sum += inst.cost(s, d);
        sum -= inst.cost(s_next, d);
    }
    Ok(sum.is_negative())
}

/// All sequences of `k` support pairs of the optimum with distinct supplies
/// and distinct demands, for `2 <= k <= max_k`.
pub fn valid_cycles(inst: &SolvedTransportation, max_k: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..inst.rows())
        .flat_map(|s| (0..inst.cols()).map(move |d| (s, d)))
        .filter(|&(s, d)| inst.in_optimum(s, d))
        .collect();
    fn rec(
        pairs: &[(usize, usize)],
        max_k: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        if cur.len() == max_k {
            return;
        }
        for &(s, d) in pairs {
            if cur.iter().any(|&(a, b)| a == s || b == d) {
                continue;
            }
            // Rotations describe the same cycle; start from the least pair.
            if cur.first().is_some_and(|&f| (s, d) < f) {
                continue;
            }
            cur.push((s, d));
            rec(pairs, max_k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&pairs, max_k, &mut Vec::new(), &mut out);
    out
}

/// Monotone walk from `start` to the optimum of a nondegenerate `2 x n`
/// instance, entering at each step an edge chosen by the leaf and branch
/// case analysis. At most `n` steps are taken.
pub fn tp2xn_monotone_walk(inst: &SolvedTransportation, start: &[Scalar]) -> Result<MonotonePath> {
    if inst.rows() != 2 {
        return Err(Error::InvalidSpec("the walk needs exactly two supplies".into()));
    }
    if !is_nondegenerate(&inst.supplies, &inst.demands)? {
        return Err(Error::DegenerateInstance);
    }
    let n = inst.cols();
    if !inst.vertices.iter().any(|v| v == start) {
        return Err(Error::InvalidSpec("start is not a vertex".into()));
    }
    let at = |x: &[Scalar], s: usize, d: usize| x[s * n + d].is_positive();
    let opt = inst.optimum.clone();
    let mut x = start.to_vec();
    let mut active: Vec<bool> = vec![true; n];
    let mut vertices = vec![CombinatorialVertex::Flow(x.clone())];
    // Leaf on supply `s` alone.
    let leaf_on = |x: &[Scalar], d: usize| -> Option<usize> {
        match (at(x, 0, d), at(x, 1, d)) {
            (true, false) => Some(0),
            (false, true) => Some(1),
            _ => None,
        }
    };
    loop {
        // Drop demand leaves already hanging where the optimum has them.
        for d in 0..n {
            if active[d] && leaf_on(&x, d).is_some() && leaf_on(&x, d) == leaf_on(&opt, d) {
                active[d] = false;
            }
        }
        if x == opt {
            break;
        }
        if vertices.len() > n {
            return Err(Error::ConstructionFailure("walk exceeded n steps".into()));
        }
        let live: Vec<usize> = (0..n).filter(|&d| active[d]).collect();
        let branch_of = |x: &[Scalar]| live.iter().copied().find(|&d| at(x, 0, d) && at(x, 1, d));
        let d1 = branch_of(&opt).ok_or_else(|| Error::ConstructionFailure("optimum has no branch".into()))?;
        let d = branch_of(&x).ok_or_else(|| Error::ConstructionFailure("vertex has no branch".into()))?;
        // D[s]: live demands that are leaves on supply s in the optimum.
        let opt_leaves =
            |s: usize| -> Vec<usize> { live.iter().copied().filter(|&e| leaf_on(&opt, e) == Some(s)).collect() };
        let dd = [opt_leaves(0), opt_leaves(1)];
        // Entering edge (supply, demand).
        let entering = if !dd[0].is_empty() && !dd[1].is_empty() {
            if d != d1 {
                // The branch belongs to D[s]; bring a leaf of the other side home.
                let s = if dd[0].contains(&d) { 0 } else { 1 };
                (1 - s, dd[1 - s][0])
            } else {
                // A leaf of D[0] currently hangs on supply 1.
                (0, dd[0][0])
            }
        } else {
            let s_full = if dd[1].is_empty() { 0 } else { 1 };
            if d != d1 {
                // Supply 1 - s_full is a leaf on d1 in the optimum.
                (1 - s_full, d1)
            } else {
                (s_full, *dd[s_full].first().ok_or_else(|| Error::ConstructionFailure("no demand left to move".into()))?)
            }
        };
        let (s, e) = entering;
        let other = 1 - s;
        if at(&x, s, e) || !at(&x, other, e) {
            return Err(Error::ConstructionFailure(format!("entering edge ({s}, {e}) is not a leaf swap")));
        }
        // Cycle s - e - other - d - s.
        let theta = x[other * n + e].clone().min(x[s * n + d].clone());
        let mut y = x.clone();
        y[s * n + e] += &theta;
        y[other * n + e] -= &theta;
        y[other * n + d] += &theta;
        y[s * n + d] -= &theta;
        if inst.value(&y).cmp(&inst.value(&x)) != Ordering::Less {
            return Err(Error::ConstructionFailure(format!("entering edge ({s}, {e}) does not improve")));
        }
        x = y;
        vertices.push(CombinatorialVertex::Flow(x.clone()));
    }
    Ok(MonotonePath::from_vertices(
        "transportation",
        n,
        Objective::numeric(inst.costs.clone()),
        vertices,
    ))
}
