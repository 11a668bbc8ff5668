//! Enumerators for the combinatorial vertex sets: permutations, bipartite
//! spanning trees, (fractional) matchings, 2-factors, paths and spanning
//! trees of a graph.

use crate::graph::{edge_key, Edge, Graph, UnionFind};
use crate::scalar::Scalar;

/// Rearranges `p` into the next permutation in lexicographic order.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// Cycle lengths of `sigma^{-1} tau` other than fixed points.
pub fn relative_cycles(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    let n = sigma.len();
    let mut inv = vec![0; n];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    let mut seen = vec![false; n];
    let mut lens = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            len += 1;
            i = inv[tau[i]];
        }
        if len > 1 {
            lens.push(len);
        }
    }
    lens
}

/// Edge subsets of `edges` forming spanning trees on `nodes` vertices.
pub fn spanning_trees(nodes: usize, edges: &[Edge]) -> Vec<Vec<Edge>> {
    fn rec(
        edges: &[Edge],
        from: usize,
        need: usize,
        uf: &UnionFind,
        cur: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
    ) {
        if need == 0 {
            out.push(cur.clone());
            return;
        }
        if edges.len() - from < need {
            return;
        }
        for k in from..edges.len() - need + 1 {
            let (u, v) = edges[k];
            let mut next = uf.clone();
            if next.union(u, v) {
                cur.push(edges[k]);
                rec(edges, k + 1, need - 1, &next, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if nodes == 0 {
        return out;
    }
    rec(edges, 0, nodes - 1, &UnionFind::new(nodes), &mut Vec::new(), &mut out);
    out
}

/// Flows on a spanning tree of `K_{k,n}` meeting the margins. Tree edges are
/// `(supply, demand)` pairs; entries may come out negative.
pub fn tree_flows(supplies: &[Scalar], demands: &[Scalar], tree: &[Edge]) -> Vec<Scalar> {
    let k = supplies.len();
    let n = demands.len();
    let mut rest: Vec<Scalar> = supplies.iter().chain(demands).cloned().collect();
    let mut deg = vec![0usize; k + n];
    for &(s, d) in tree {
        deg[s] += 1;
        deg[k + d] += 1;
    }
    let mut x = vec![Scalar::zero(); k * n];
    let mut alive = vec![true; tree.len()];
    for _ in 0..tree.len() {
        let Some(e) = (0..tree.len()).find(|&e| {
            alive[e] && (deg[tree[e].0] == 1 || deg[k + tree[e].1] == 1)
        }) else {
            break;
        };
        let (s, d) = tree[e];
        let (leaf, other) = if deg[s] == 1 { (s, k + d) } else { (k + d, s) };
        let f = rest[leaf].clone();
        rest[other] -= f.clone();
        rest[leaf] = Scalar::zero();
        deg[leaf] -= 1;
        deg[other] -= 1;
        x[s * n + d] = f;
        alive[e] = false;
    }
    x
}

/// Half-integral vertices of the fractional (perfect) matching polytope of
/// `g`: a matching with value 1 plus node-disjoint odd cycles with value
/// 1/2, returned as edge-value vectors in the order of `g.edges`.
pub fn half_integral_matchings(g: &Graph, perfect: bool) -> Vec<Vec<Scalar>> {
    let adj = g.neighbors();
    let mut out = Vec::new();
    let mut covered = vec![false; g.nodes];
    let mut vals = vec![Scalar::zero(); g.num_edges()];
    fractional_rec(g, &adj, perfect, &mut covered, &mut vals, &mut out);
    out.sort();
    out
}

fn fractional_rec(
    g: &Graph,
    adj: &[Vec<usize>],
    perfect: bool,
    covered: &mut Vec<bool>,
    vals: &mut Vec<Scalar>,
    out: &mut Vec<Vec<Scalar>>,
) {
    let Some(v) = (0..g.nodes).find(|&v| !covered[v]) else {
        out.push(vals.clone());
        return;
    };
    covered[v] = true;
    if !perfect {
        fractional_rec(g, adj, perfect, covered, vals, out);
    }
    for &u in &adj[v] {
        if covered[u] {
            continue;
        }
        covered[u] = true;
        let e = g.edge_index(v, u).unwrap();
        vals[e] = Scalar::one();
        fractional_rec(g, adj, perfect, covered, vals, out);
        vals[e] = Scalar::zero();
        covered[u] = false;
    }
    // Odd cycles starting at v, v the smallest node, second < last.
    let mut path = vec![v];
    odd_cycle_rec(g, adj, perfect, covered, vals, out, &mut path);
    covered[v] = false;
}

fn odd_cycle_rec(
    g: &Graph,
    adj: &[Vec<usize>],
    perfect: bool,
    covered: &mut Vec<bool>,
    vals: &mut Vec<Scalar>,
    out: &mut Vec<Vec<Scalar>>,
    path: &mut Vec<usize>,
) {
    let v = path[0];
    let last = *path.last().unwrap();
    if path.len() >= 3 && path.len() % 2 == 1 && path[1] < last && g.has_edge(last, v) {
        let half = Scalar::ratio(1, 2);
        let edges: Vec<usize> = (0..path.len())
            .map(|i| g.edge_index(path[i], path[(i + 1) % path.len()]).unwrap())
            .collect();
        for &e in &edges {
            vals[e] = half.clone();
        }
        fractional_rec(g, adj, perfect, covered, vals, out);
        for &e in &edges {
            vals[e] = Scalar::zero();
        }
    }
    for &u in &adj[last] {
        if u <= v || covered[u] {
            continue;
        }
        covered[u] = true;
        path.push(u);
        odd_cycle_rec(g, adj, perfect, covered, vals, out, path);
        path.pop();
        covered[u] = false;
    }
}

/// Matchings of `g` (perfect ones only when asked), as sorted edge lists.
pub fn matchings(g: &Graph, perfect: bool) -> Vec<Vec<Edge>> {
    fn rec(
        g: &Graph,
        adj: &[Vec<usize>],
        perfect: bool,
        covered: &mut Vec<bool>,
        cur: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
    ) {
        let Some(v) = (0..g.nodes).find(|&v| !covered[v]) else {
            let mut m = cur.clone();
            m.sort_unstable();
            out.push(m);
            return;
        };
        covered[v] = true;
        if !perfect {
            rec(g, adj, perfect, covered, cur, out);
        }
        for &u in &adj[v] {
            if !covered[u] {
                covered[u] = true;
                cur.push(edge_key(v, u));
                rec(g, adj, perfect, covered, cur, out);
                cur.pop();
                covered[u] = false;
            }
        }
        covered[v] = false;
    }
    let adj = g.neighbors();
    let mut out = Vec::new();
    rec(g, &adj, perfect, &mut vec![false; g.nodes], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Perfect 2-matchings (2-factors) of `K_n` as sorted edge lists; with
/// `tours_only`, Hamiltonian cycles only.
pub fn two_factors(n: usize, tours_only: bool) -> Vec<Vec<Edge>> {
    fn rec(
        n: usize,
        tours_only: bool,
        covered: &mut Vec<bool>,
        cur: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
    ) {
        let Some(v) = (0..n).find(|&v| !covered[v]) else {
            let mut e = cur.clone();
            e.sort_unstable();
            out.push(e);
            return;
        };
        let free = covered.iter().filter(|c| !**c).count();
        covered[v] = true;
        let mut path = vec![v];
        grow(n, tours_only, free, covered, cur, out, &mut path);
        covered[v] = false;
    }
    fn grow(
        n: usize,
        tours_only: bool,
        free: usize,
        covered: &mut Vec<bool>,
        cur: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
        path: &mut Vec<usize>,
    ) {
        let v = path[0];
        let last = *path.last().unwrap();
        let close_ok = if tours_only { path.len() == free } else { path.len() >= 3 };
        // Leaving fewer than three free nodes would strand them.
        if close_ok && path[1] < last && (free - path.len() == 0 || free - path.len() >= 3) {
            let k = path.len();
            let added: Vec<Edge> = (0..k).map(|i| edge_key(path[i], path[(i + 1) % k])).collect();
            cur.extend(&added);
            rec(n, tours_only, covered, cur, out);
            cur.truncate(cur.len() - k);
        }
        for u in (v + 1)..n {
            if covered[u] {
                continue;
            }
            covered[u] = true;
            path.push(u);
            grow(n, tours_only, free, covered, cur, out, path);
            path.pop();
            covered[u] = false;
        }
    }
    let mut out = Vec::new();
    rec(n, tours_only, &mut vec![false; n], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Simple directed paths from node 0 to node `n - 1` in the complete
/// digraph, as node sequences.
pub fn simple_paths(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for next in 1..n {
            if used[next] {
                continue;
            }
            cur.push(next);
            if next == n - 1 {
                out.push(cur.clone());
            } else {
                used[next] = true;
                rec(n, used, cur, out);
                used[next] = false;
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    used[0] = true;
    rec(n, &mut used, &mut vec![0], &mut out);
    out.sort();
    out
}

/// Collections of node-disjoint directed cycles (length two or more) on
/// `nodes`, each cycle starting at its smallest node.
pub fn directed_cycle_packings(nodes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some(&v) = free.first() else {
            out.push(cur.clone());
            return;
        };
        free.remove(0);
        rec(free, cur, out);
        let mut path = vec![v];
        grow(free, cur, out, &mut path);
        free.insert(0, v);
    }
    fn grow(
        free: &mut Vec<usize>,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        path: &mut Vec<usize>,
    ) {
        if path.len() >= 2 {
            cur.push(path.clone());
            rec(free, cur, out);
            cur.pop();
        }
        for i in 0..free.len() {
            let u = free.remove(i);
            path.push(u);
            grow(free, cur, out, path);
            path.pop();
            free.insert(i, u);
        }
    }
    let mut free = nodes.to_vec();
    free.sort_unstable();
    let mut out = Vec::new();
    rec(&mut free, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(relative_cycles(&[0, 1, 2], &[1, 2, 0]), vec![3]);
        assert_eq!(relative_cycles(&[0, 1, 2, 3], &[1, 0, 3, 2]), vec![2, 2]);
    }

    #[test]
    fn bipartite_tree_counts() {
        // K_{2,3} has 2^2 * 3^1 = 12 spanning trees.
        let edges: Vec<Edge> = (0..2).flat_map(|s| (0..3).map(move |d| (s, 2 + d))).collect();
        assert_eq!(spanning_trees(5, &edges).len(), 12);
        assert_eq!(spanning_trees(4, &Graph::complete(4).edges).len(), 16);
    }

    #[test]
    fn fractional_matchings_of_small_cliques() {
        assert_eq!(half_integral_matchings(&Graph::complete(3), true).len(), 1);
        assert_eq!(half_integral_matchings(&Graph::complete(4), true).len(), 3);
        // 10 triangle+edge covers and 12 five-cycles.
        assert_eq!(half_integral_matchings(&Graph::complete(5), true).len(), 22);
    }

    #[test]
    fn two_factor_counts() {
        assert_eq!(two_factors(5, false).len(), 12);
        assert_eq!(two_factors(6, false).len(), 70);
        assert_eq!(two_factors(6, true).len(), 60);
    }

    #[test]
    fn path_and_cycle_counts() {
        assert_eq!(simple_paths(4).len(), 5);
        // Subsets with their derangements: 1 + 6 + 8 + 9.
        assert_eq!(directed_cycle_packings(&[1, 2, 3, 4]).len(), 24);
    }

    #[test]
    fn tree_flows_meet_margins() {
        let s = [Scalar::from_int(3), Scalar::from_int(2)];
        let d = [Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(2)];
        let x = tree_flows(&s, &d, &[(0, 0), (0, 1), (1, 1), (1, 2)]);
        let ints: Vec<i64> = [1, 2, 0, 0, 0, 2].to_vec();
        assert_eq!(x, ints.iter().map(|&v| Scalar::from_int(v)).collect::<Vec<_>>());
    }
}
