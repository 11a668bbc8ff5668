//! Small undirected graphs and the cycle/path bookkeeping the adjacency
//! oracles share.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Edge = (usize, usize);

/// Sorted copy of an undirected edge.
pub fn edge_key(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph, input format `{"nodes": n, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    pub nodes: usize,
    pub edges: Vec<Edge>,
}

impl Graph {
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut out: Vec<Edge> = Vec::new();
        for (u, v) in edges {
            if u == v || u >= nodes || v >= nodes {
                return Err(Error::InvalidSpec(format!("bad edge ({u}, {v})")));
            }
            out.push(edge_key(u, v));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Graph { nodes, edges: out })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { nodes: n, edges }
    }

    pub fn normalized(&self) -> Result<Self> {
        Graph::new(self.nodes, self.edges.iter().copied())
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&edge_key(u, v)).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false when already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Number of connected components of the multigraph spanned by `edges`,
/// counting only vertices that carry an edge.
pub fn edge_components(edges: &[Edge]) -> usize {
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in edges {
        let k = ids.len();
        ids.entry(u).or_insert(k);
        let k = ids.len();
        ids.entry(v).or_insert(k);
    }
    let mut uf = UnionFind::new(ids.len());
    let mut comps = ids.len();
    for &(u, v) in edges {
        if uf.union(ids[&u], ids[&v]) {
            comps -= 1;
        }
    }
    comps
}

/// `|E| - |V| + #components` of the multigraph on the touched vertices.
pub fn cyclomatic_number(edges: &[Edge]) -> usize {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    edges.len() + edge_components(edges) - verts.len()
}

/// Edges of the cyclic sequence `seq`, sorted.
pub fn cycle_edges(seq: &[usize]) -> Vec<Edge> {
    let k = seq.len();
    let mut e: Vec<Edge> = (0..k).map(|i| edge_key(seq[i], seq[(i + 1) % k])).collect();
    e.sort_unstable();
    e
}

/// Breaks a 2-regular edge set into its cycles, each listed from its
/// smallest vertex toward its smaller neighbor. `None` unless every touched
/// vertex has degree exactly two.
pub fn two_factor_cycles(edges: &[Edge]) -> Option<Vec<Vec<usize>>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    if adj.values().any(|a| a.len() != 2) {
        return None;
    }
    let mut done: BTreeMap<usize, bool> = adj.keys().map(|&v| (v, false)).collect();
    let mut cycles = Vec::new();
    for &start in adj.keys() {
        if done[&start] {
            continue;
        }
        let first = *adj[&start].iter().min().unwrap();
        let mut cyc = vec![start];
        done.insert(start, true);
        let (mut prev, mut cur) = (start, first);
        while cur != start {
            cyc.push(cur);
            done.insert(cur, true);
            let nb = &adj[&cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
            if cyc.len() > edges.len() {
                return None;
            }
        }
        // A 2-cycle on a double edge is not a simple cycle.
        if cyc.len() < 3 {
            return None;
        }
        cycles.push(cyc);
    }
    Some(cycles)
}

/// Whether the symmetric difference `a \ b`, `b \ a` of two edge sets forms
/// one closed walk alternating between the sides, whichever way the sides
/// are paired at vertices where four difference edges meet.
///
/// Each difference vertex must have as many edges from `a` as from `b`.
pub fn single_alternating_cycle(a: &[Edge], b: &[Edge]) -> bool {
    let only_a: Vec<Edge> = a.iter().copied().filter(|e| !b.contains(e)).collect();
    let only_b: Vec<Edge> = b.iter().copied().filter(|e| !a.contains(e)).collect();
    if only_a.is_empty() {
        return false;
    }
    let all: Vec<Edge> = only_a.iter().chain(&only_b).copied().collect();
    let mut inc: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (k, &(u, v)) in all.iter().enumerate() {
        let side_a = k < only_a.len();
        for w in [u, v] {
            let entry = inc.entry(w).or_default();
            if side_a {
                entry.0.push(k);
            } else {
                entry.1.push(k);
            }
        }
    }
    if inc.values().any(|(x, y)| x.len() != y.len() || x.len() > 2) {
        return false;
    }
    let branch: Vec<usize> = inc
        .iter()
        .filter(|(_, (x, _))| x.len() == 2)
        .map(|(&v, _)| v)
        .collect();
    if branch.len() > 20 {
        return false;
    }
    for mask in 0u32..(1u32 << branch.len()) {
        let mut uf = UnionFind::new(all.len());
        for (w, (x, y)) in &inc {
            if x.len() == 1 {
                uf.union(x[0], y[0]);
            } else {
                let flip = branch
                    .iter()
                    .position(|v| v == w)
                    .is_some_and(|p| mask >> p & 1 == 1);
                if flip {
                    uf.union(x[0], y[1]);
                    uf.union(x[1], y[0]);
                } else {
                    uf.union(x[0], y[0]);
                    uf.union(x[1], y[1]);
                }
            }
        }
        let root = uf.find(0);
        if (1..all.len()).any(|k| uf.find(k) != root) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclomatic_counts_independent_cycles() {
        assert_eq!(cyclomatic_number(&[(0, 1), (1, 2)]), 0);
        assert_eq!(cyclomatic_number(&[(0, 1), (1, 3), (0, 2), (2, 3)]), 1);
        assert_eq!(cyclomatic_number(&[(0, 1), (0, 1)]), 1);
    }

    #[test]
    fn two_factor_split() {
        let e = [cycle_edges(&[0, 1, 2]), cycle_edges(&[3, 4, 5])].concat();
        let c = two_factor_cycles(&e).unwrap();
        assert_eq!(c, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(two_factor_cycles(&[(0, 1), (1, 2)]).is_none());
    }

    #[test]
    fn alternating_cycles() {
        let id = [(0, 3), (1, 4), (2, 5)];
        let swap = [(0, 4), (1, 3), (2, 5)];
        assert!(single_alternating_cycle(&id, &swap));
        let k4 = [(0, 4), (1, 5), (2, 6), (3, 7)];
        let two = [(0, 5), (1, 4), (2, 7), (3, 6)];
        assert!(!single_alternating_cycle(&k4, &two));
    }
}
