//! The long monotone path on the shortest-path polytope of the complete
//! directed graph, source node 1 and sink node n, under the lexicographic
//! objective ranking arcs `(1,2), ..., (1,n), (2,3), ..., (2,n), (3,2), ...`.
//!
//! Paths are 1-based node lists internally.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::MonotonePath;
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::lp::Objective;
use crate::zoo::{paths_adjacent, shortest_path_arcs, CombinatorialVertex};

type Path = Vec<usize>;

fn arcs(p: &[usize]) -> BTreeSet<Edge> {
    p.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Arcs rank row-major, by tail and then by head, so the least differing
/// arc decides.
fn greater(a: &[usize], b: &[usize]) -> bool {
    let (ea, eb) = (arcs(a), arcs(b));
    ea.symmetric_difference(&eb).min().is_some_and(|e| ea.contains(e))
}

/// Adjacency on `n` nodes, read through the 0-based oracle.
fn adjacent(a: &[usize], b: &[usize]) -> bool {
    let za: Vec<usize> = a.iter().map(|v| v - 1).collect();
    let zb: Vec<usize> = b.iter().map(|v| v - 1).collect();
    paths_adjacent(&za, &zb)
}

fn improving_step(a: &[usize], b: &[usize]) -> bool {
    adjacent(a, b) && greater(a, b)
}

/// Simple paths from 1 to `m` on nodes `1..=m`.
fn all_paths(m: usize) -> Vec<Path> {
    fn rec(m: usize, path: &mut Path, out: &mut Vec<Path>) {
        let cur = *path.last().unwrap();
        if cur == m {
            out.push(path.clone());
            return;
        }
        for v in 2..=m {
            if !path.contains(&v) {
                path.push(v);
                rec(m, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(m, &mut vec![1], &mut out);
    out
}

/// Longest improving path from `(1, ..., m)` to `(1, m)` over all paths.
fn brute_longest(m: usize) -> Result<Vec<Path>> {
    let start: Path = (1..=m).collect();
    let end: Path = vec![1, m];
    if m <= 2 {
        return Ok(vec![start]);
    }
    let mut ps = all_paths(m);
    ps.sort_by(|a, b| {
        if greater(a, b) {
            std::cmp::Ordering::Less
        } else if greater(b, a) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    let mut best: HashMap<Path, Vec<Path>> = HashMap::new();
    best.insert(end.clone(), vec![end.clone()]);
    for i in (0..ps.len()).rev() {
        let t = &ps[i];
        if *t == end {
            continue;
        }
        let mut cand: Option<&Vec<Path>> = None;
        for u in &ps[i + 1..] {
            if let Some(p) = best.get(u) {
                if adjacent(t, u) && cand.is_none_or(|c| p.len() > c.len()) {
                    cand = Some(p);
                }
            }
        }
        if let Some(c) = cand {
            let mut p = vec![t.clone()];
            p.extend(c.iter().cloned());
            best.insert(t.clone(), p);
        }
    }
    best.remove(&start)
        .ok_or_else(|| Error::ConstructionFailure(format!("no improving path on {m} nodes")))
}

struct Builder {
    memo: BTreeMap<usize, Vec<Path>>,
}

impl Builder {
    /// Path on nodes `1..=m` from `(1, ..., m)` to `(1, m)`.
    fn build(&mut self, m: usize) -> Result<Vec<Path>> {
        if let Some(p) = self.memo.get(&m) {
            return Ok(p.clone());
        }
        let path = if m <= 5 { brute_longest(m)? } else { self.recurse(m)? };
        self.memo.insert(m, path.clone());
        Ok(path)
    }

    /// Runs the `k`-node path on the nodes of `sub`, behind `prefix`.
    fn embedded(&mut self, sub: &[usize], prefix: &[usize]) -> Result<Vec<Path>> {
        let small = self.build(sub.len())?;
        Ok(small
            .iter()
            .map(|p| prefix.iter().copied().chain(p.iter().map(|&v| sub[v - 1])).collect())
            .collect())
    }

    fn recurse(&mut self, m: usize) -> Result<Vec<Path>> {
        // Arc (1,2) fixed: the problem on 2..m.
        let sub: Vec<usize> = (2..=m).collect();
        let mut path = self.embedded(&sub, &[1])?;
        // Over to 1,3,4,...,m and then the problem on 3..m.
        let sub: Vec<usize> = (3..=m).collect();
        path.extend(self.embedded(&sub, &[1])?);
        for k in 3..=m - 2 {
            // From 1,k,m to 1,k+1,2,...,k-1,k+2,...,m, down that face to
            // 1,k+1,2,m, then to 1,k+1,m.
            let sub: Vec<usize> = (2..k).chain(k + 2..=m).collect();
            path.extend(self.embedded(&sub, &[1, k + 1])?);
            path.push(vec![1, k + 1, m]);
        }
        path.push(vec![1, m]);
        for (i, w) in path.windows(2).enumerate() {
            if !improving_step(&w[0], &w[1]) {
                return Err(Error::ConstructionFailure(format!(
                    "step {i} on {m} nodes: {:?} -> {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(path)
    }
}

/// The path and the lengths of all sub-constructions it was built from.
#[derive(Debug, Clone)]
pub struct SpConstruction {
    pub path: MonotonePath,
    /// Construction length keyed by node count, for every size used.
    pub lengths: BTreeMap<usize, usize>,
}

/// Monotone path of `1 -> n` paths from `(1, 2, ..., n)` to `(1, n)`.
/// Vertices are 0-based node lists.
pub fn sp_long_path(n: usize) -> Result<SpConstruction> {
    if n < 5 {
        return Err(Error::InvalidSpec("sp_long_path needs n >= 5".into()));
    }
    let mut b = Builder { memo: BTreeMap::new() };
    let path = b.build(n)?;
    let lengths = b.memo.iter().map(|(&m, p)| (m, p.len() - 1)).collect();
    let vertices = path
        .iter()
        .map(|p| CombinatorialVertex::Path(p.iter().map(|v| v - 1).collect()))
        .collect();
    let dim = shortest_path_arcs(n).len();
    Ok(SpConstruction {
        path: MonotonePath::from_vertices("shortest_path", n, Objective::lex_identity(dim), vertices),
        lengths,
    })
}

/// Exhaustive longest improving path from `(1, ..., m)` to `(1, m)`.
pub fn sp_base_length(m: usize) -> Result<usize> {
    Ok(brute_longest(m)?.len() - 1)
}
