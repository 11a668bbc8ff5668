//! The long monotone path on the TSP polytope of `K_n` under the
//! lexicographic objective that ranks `{1,2}, {1,3}, ..., {n-1,n}`.
//!
//! Tours are handled 1-based internally, always rotated to start at node 1
//! with the smaller neighbor second.

use std::collections::{BTreeSet, HashMap};

use super::MonotonePath;
use crate::error::{Error, Result};
use crate::graph::{edge_key, single_alternating_cycle, Edge};
use crate::lp::Objective;
use crate::zoo::combinatorics::permutations;
use crate::zoo::CombinatorialVertex;

type Tour = Vec<usize>;

fn norm(t: &[usize]) -> Tour {
    let i = t.iter().position(|&v| v == 1).expect("tour contains node 1");
    let mut r: Tour = t[i..].iter().chain(&t[..i]).copied().collect();
    if r.len() > 2 && r[1] > r[r.len() - 1] {
        r[1..].reverse();
    }
    r
}

fn tour_edges(t: &[usize]) -> BTreeSet<Edge> {
    let k = t.len();
    (0..k).map(|i| edge_key(t[i], t[(i + 1) % k])).collect()
}

/// Rank of `{i, j}`, `1 <= i < j <= n`, in the order `{1,2}, {1,3}, ...`.
fn rank(e: Edge, n: usize) -> usize {
    let (i, j) = e;
    (1..i).map(|a| n - a).sum::<usize>() + (j - i - 1)
}

/// `psi(a) > psi(b)`: the lowest-ranked edge of the symmetric difference
/// lies in `a`.
fn greater(a: &[usize], b: &[usize], n: usize) -> bool {
    let (ea, eb) = (tour_edges(a), tour_edges(b));
    ea.symmetric_difference(&eb)
        .min_by_key(|&&e| rank(e, n))
        .is_some_and(|e| ea.contains(e))
}

fn adjacent(a: &[usize], b: &[usize]) -> bool {
    let ea: Vec<Edge> = tour_edges(a).into_iter().collect();
    let eb: Vec<Edge> = tour_edges(b).into_iter().collect();
    single_alternating_cycle(&ea, &eb)
}

fn improving_step(a: &[usize], b: &[usize], n: usize) -> bool {
    adjacent(a, b) && greater(a, b, n)
}

fn all_tours(n: usize) -> Vec<Tour> {
    permutations(n - 1)
        .into_iter()
        .filter(|p| p[0] < p[n - 2])
        .map(|p| std::iter::once(1).chain(p.iter().map(|v| v + 2)).collect())
        .collect()
}

/// Whether a Hamiltonian cycle exists using only `allowed` edges and every
/// edge of `fixed`.
fn hamiltonian_exists(n: usize, allowed: &[Vec<bool>], fixed: &[Edge]) -> bool {
    let mut partners = vec![Vec::new(); n + 1];
    for &(a, b) in fixed {
        partners[a].push(b);
        partners[b].push(a);
    }
    if partners.iter().any(|p| p.len() > 2) {
        return false;
    }
    fn rec(
        n: usize,
        allowed: &[Vec<bool>],
        partners: &[Vec<usize>],
        fixed: &[Edge],
        path: &mut Vec<usize>,
        visited: &mut Vec<bool>,
    ) -> bool {
        let cur = *path.last().unwrap();
        let prev = if path.len() > 1 { path[path.len() - 2] } else { 0 };
        if path.len() == n {
            if !allowed[cur][1] {
                return false;
            }
            let cyc = tour_edges(path);
            return fixed.iter().all(|&(a, b)| cyc.contains(&edge_key(a, b)));
        }
        let mut forced = None;
        for &f in &partners[cur] {
            if f == prev {
                continue;
            }
            if visited[f] {
                return false;
            }
            if forced.is_some() {
                return false;
            }
            forced = Some(f);
        }
        // Every unvisited node needs two usable neighbors.
        for v in 2..=n {
            if visited[v] {
                continue;
            }
            let deg = (1..=n)
                .filter(|&w| w != v && allowed[v][w] && (!visited[w] || w == cur || w == 1))
                .count();
            if deg < 2 {
                return false;
            }
        }
        let candidates: Vec<usize> = match forced {
            Some(f) => vec![f],
            None => (2..=n).filter(|&w| !visited[w]).collect(),
        };
        for next in candidates {
            if !allowed[cur][next] || visited[next] {
                continue;
            }
            visited[next] = true;
            path.push(next);
            if rec(n, allowed, partners, fixed, path, visited) {
                return true;
            }
            path.pop();
            visited[next] = false;
        }
        false
    }
    let mut visited = vec![false; n + 1];
    visited[1] = true;
    rec(n, allowed, &partners, fixed, &mut vec![1], &mut visited)
}

/// The tour minimizing the lexicographic objective among tours containing
/// `fixed` (1-based edges), found by dropping edges in rank order while a
/// tour survives.
pub fn lex_min_tour(n: usize, fixed: &[Edge]) -> Result<Vec<usize>> {
    if n < 3 {
        return Err(Error::InvalidSpec("tours need n >= 3".into()));
    }
    let fixed: Vec<Edge> = fixed.iter().map(|&(a, b)| edge_key(a, b)).collect();
    let mut allowed = vec![vec![true; n + 1]; n + 1];
    for (v, row) in allowed.iter_mut().enumerate() {
        row[v] = false;
    }
    if !hamiltonian_exists(n, &allowed, &fixed) {
        return Err(Error::InvalidSpec("no tour contains the fixed edges".into()));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            if fixed.contains(&(i, j)) {
                continue;
            }
            allowed[i][j] = false;
            allowed[j][i] = false;
            if !hamiltonian_exists(n, &allowed, &fixed) {
                allowed[i][j] = true;
                allowed[j][i] = true;
            }
        }
    }
    let mut tour = vec![1];
    let mut prev = 0;
    while tour.len() < n {
        let cur = *tour.last().unwrap();
        let next = (1..=n)
            .find(|&w| w != prev && w != 1 && allowed[cur][w] && !tour.contains(&w))
            .ok_or_else(|| Error::ConstructionFailure("lex-min tour extraction".into()))?;
        prev = cur;
        tour.push(next);
    }
    Ok(norm(&tour))
}

/// Longest improving path from `start` to `end` over all tours of `K_n`.
fn brute_longest(n: usize, start: &[usize], end: &[usize]) -> Result<Vec<Tour>> {
    let mut ts = all_tours(n);
    ts.sort_by(|a, b| {
        if greater(a, b, n) {
            std::cmp::Ordering::Less
        } else if greater(b, a, n) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    let end = norm(end);
    let mut best: HashMap<Tour, Vec<Tour>> = HashMap::new();
    best.insert(end.clone(), vec![end.clone()]);
    for i in (0..ts.len()).rev() {
        let t = &ts[i];
        if *t == end {
            continue;
        }
        let mut cand: Option<&Vec<Tour>> = None;
        for u in &ts[i + 1..] {
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
    best.remove(&norm(start))
        .ok_or_else(|| Error::ConstructionFailure(format!("no improving path on K_{n}")))
}

/// Tours of `K_n` whose contraction along `labels` is `small`; `labels[s-1]`
/// lists the nodes merged into small node `s`.
fn expand(small: &[usize], labels: &[Vec<usize>]) -> Vec<Tour> {
    let merged: Vec<usize> = (1..=labels.len()).filter(|&s| labels[s - 1].len() > 1).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << merged.len()) {
        let mut t = Vec::new();
        for &s in small {
            let group = &labels[s - 1];
            let flip = merged.iter().position(|&m| m == s).is_some_and(|p| mask >> p & 1 == 1);
            if flip {
                t.extend(group.iter().rev());
            } else {
                t.extend(group.iter());
            }
        }
        let t = norm(&t);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// Lifts a path on the contracted graph to `K_n`, starting at `cur`.
fn lift(small_path: &[Tour], labels: &[Vec<usize>], cur: &[usize], n: usize) -> Vec<Tour> {
    // `cur` need not be a lift of the first small tour; every step taken
    // from it is still checked.
    let mut layers: Vec<Vec<Tour>> = vec![vec![cur.to_vec()]];
    layers.extend(small_path[1..].iter().map(|s| expand(s, labels)));
    let len = layers.len();
    let mut good: Vec<BTreeSet<Tour>> = vec![BTreeSet::new(); len];
    let mut next: Vec<HashMap<Tour, Tour>> = vec![HashMap::new(); len];
    good[len - 1] = layers[len - 1].iter().cloned().collect();
    for i in (0..len - 1).rev() {
        for c in &layers[i] {
            if let Some(d) = layers[i + 1].iter().find(|d| good[i + 1].contains(*d) && improving_step(c, d, n)) {
                good[i].insert(c.clone());
                next[i].insert(c.clone(), d.clone());
            }
        }
    }
    let mut out = vec![cur.to_vec()];
    if good[0].contains(cur) {
        for i in 0..len - 1 {
            let step = next[i][out.last().unwrap()].clone();
            out.push(step);
        }
    } else {
        // Some layer cannot be matched; skip it rather than break the path.
        for layer in &layers[1..] {
            if let Some(c) = layer.iter().find(|c| improving_step(out.last().unwrap(), c, n)) {
                out.push(c.clone());
            }
        }
    }
    out
}

struct Builder {
    p: HashMap<usize, Vec<Tour>>,
    q: HashMap<(usize, Tour), Vec<Tour>>,
    facet_opt: HashMap<usize, Tour>,
    opt: HashMap<usize, Tour>,
}

fn x2(n: usize) -> Tour {
    let mut seq = vec![2, n - 1, n, 1, 3];
    let (mut hi, mut lo, mut high_turn) = (n - 2, 4, true);
    while seq.len() < n {
        let pair = if high_turn { [hi, hi - 1] } else { [lo, lo + 1] };
        for v in pair {
            if !seq.contains(&v) && seq.len() < n {
                seq.push(v);
            }
        }
        if high_turn {
            hi -= 2;
        } else {
            lo += 2;
        }
        high_turn = !high_turn;
    }
    seq
}

impl Builder {
    fn opt(&mut self, n: usize) -> Result<Tour> {
        if let Some(t) = self.opt.get(&n) {
            return Ok(t.clone());
        }
        let t = lex_min_tour(n, &[])?;
        self.opt.insert(n, t.clone());
        Ok(t)
    }

    /// Optimum on the facet `x_{1,2} = 1`.
    fn facet_opt(&mut self, n: usize) -> Result<Tour> {
        if let Some(t) = self.facet_opt.get(&n) {
            return Ok(t.clone());
        }
        let t = lex_min_tour(n, &[(1, 2)])?;
        self.facet_opt.insert(n, t.clone());
        Ok(t)
    }

    /// From `(1, 2, ..., n)` to the optimum.
    fn p(&mut self, n: usize) -> Result<Vec<Tour>> {
        if let Some(p) = self.p.get(&n) {
            return Ok(p.clone());
        }
        let start: Tour = (1..=n).collect();
        let path = if n <= 3 {
            vec![start]
        } else if n <= 5 {
            let o = self.opt(n)?;
            brute_longest(n, &start, &o)?
        } else {
            // Inside the facet x_{1,2} = 1 nodes 1 and 2 act as one node.
            let mut labels = vec![vec![1, 2]];
            labels.extend((2..n).map(|i| vec![i + 1]));
            let small = self.p(n - 1)?;
            let mut path = lift(&small, &labels, &start, n);
            let x1 = self.facet_opt(n)?;
            if *path.last().unwrap() != x1 {
                if !improving_step(path.last().unwrap(), &x1, n) {
                    return Err(Error::ConstructionFailure(format!("facet optimum unreachable on K_{n}")));
                }
                path.push(x1);
            }
            let tail = self.q(n, path.last().unwrap().clone())?;
            path.extend(tail.into_iter().skip(1));
            path
        };
        self.p.insert(n, path.clone());
        Ok(path)
    }

    /// From the facet optimum `cur` to the optimum.
    fn q(&mut self, n: usize, cur: Tour) -> Result<Vec<Tour>> {
        let key = (n, cur.clone());
        if let Some(p) = self.q.get(&key) {
            return Ok(p.clone());
        }
        let path = if n <= 5 {
            let o = self.opt(n)?;
            brute_longest(n, &cur, &o)?
        } else {
            let a = norm(&x2(n));
            let mut b = vec![1];
            b.extend(4..n - 1);
            b.extend([3, 2, n - 1, n]);
            let b = norm(&b);
            if !improving_step(&cur, &a, n) || !improving_step(&a, &b, n) {
                return Err(Error::ConstructionFailure(format!("two-step bridge fails on K_{n}")));
            }
            let mut path = vec![cur, a, b.clone()];
            // The chain n-2, 3, 2, n-1 is fixed and contracted to one node.
            let mut labels: Vec<Vec<usize>> = vec![vec![1]];
            labels.extend((4..n - 2).map(|i| vec![i]));
            labels.push(vec![n - 2, 3, 2, n - 1]);
            labels.push(vec![n]);
            let small = self.p(n - 3)?;
            path.extend(lift(&small, &labels, &b, n).into_iter().skip(1));
            // Then the chain n-1, 1, n.
            let mut labels: Vec<Vec<usize>> = (2..n - 1).map(|i| vec![i]).collect();
            labels.push(vec![n - 1, 1, n]);
            let k = n - 2;
            let x1 = self.facet_opt(k)?;
            let small = self.q(k, x1)?;
            let cur = path.last().unwrap().clone();
            path.extend(lift(&small, &labels, &cur, n).into_iter().skip(1));
            path
        };
        self.q.insert(key, path.clone());
        Ok(path)
    }
}

/// Monotone path of tours from `(1, 2, ..., n)` to the lexicographic
/// optimum. Vertices are 0-based edge sets of `K_n`.
pub fn tsp_long_path(n: usize) -> Result<MonotonePath> {
    if n < 6 {
        return Err(Error::InvalidSpec("tsp_long_path needs n >= 6".into()));
    }
    let mut b = Builder {
        p: HashMap::new(),
        q: HashMap::new(),
        facet_opt: HashMap::new(),
        opt: HashMap::new(),
    };
    let mut path = b.p(n)?;
    let opt = b.opt(n)?;
    if *path.last().unwrap() != opt {
        if !improving_step(path.last().unwrap(), &opt, n) {
            return Err(Error::ConstructionFailure(format!("optimum unreachable on K_{n}")));
        }
        path.push(opt);
    }
    for (i, w) in path.windows(2).enumerate() {
        if !improving_step(&w[0], &w[1], n) {
            return Err(Error::ConstructionFailure(format!("step {i} on K_{n}")));
        }
    }
    let vertices = path
        .iter()
        .map(|t| CombinatorialVertex::EdgeSet(tour_edges(t).into_iter().map(|(a, b)| (a - 1, b - 1)).collect()))
        .collect();
    let dim = n * (n - 1) / 2;
    Ok(MonotonePath::from_vertices("tsp_skeleton", n, Objective::lex_identity(dim), vertices))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_follow_listed_order() {
        let n = 5;
        let mut seen = BTreeSet::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                seen.insert(rank((i, j), n));
            }
        }
        assert_eq!(seen, (0..10).collect());
        assert_eq!(rank((1, 2), n), 0);
        assert_eq!(rank((2, 3), n), 4);
    }

    #[test]
    fn greedy_lex_min_matches_enumeration() {
        for n in 4..=8 {
            let ts = all_tours(n);
            let best = ts.iter().find(|t| ts.iter().all(|u| u == *t || greater(u, t, n))).unwrap();
            assert_eq!(&lex_min_tour(n, &[]).unwrap(), best, "n={n}");
            let facet: Vec<&Tour> = ts.iter().filter(|t| tour_edges(t).contains(&(1, 2))).collect();
            let fbest = facet.iter().find(|t| facet.iter().all(|u| u == *t || greater(u, t, n))).unwrap();
            assert_eq!(&&lex_min_tour(n, &[(1, 2)]).unwrap(), fbest, "n={n}");
        }
    }

    #[test]
    fn small_optima() {
        assert_eq!(lex_min_tour(6, &[]).unwrap(), vec![1, 5, 3, 4, 2, 6]);
        assert_eq!(lex_min_tour(7, &[]).unwrap(), vec![1, 6, 3, 4, 5, 2, 7]);
    }
}
