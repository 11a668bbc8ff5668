//! Oriented skeletons: monotone diameter, height, cube Bland walks and the
//! direction-count inequalities.

use std::cmp::Ordering;
use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{compare, Objective, ObjectiveValue};
use crate::scalar::Scalar;
use crate::zoo::{cube_point, CombinatorialVertex, CubeKind, Instance, SkeletonData};

#[derive(Debug, Clone)]
pub struct OrientedSkeleton {
    pub vertices: Vec<CombinatorialVertex>,
    pub values: Vec<ObjectiveValue>,
    /// `(from, to)` with `to` of smaller value.
    pub arcs: Vec<(usize, usize)>,
    pub sink: usize,
    pub source: usize,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    /// Vertex indices by increasing value.
    order: Vec<usize>,
}

impl OrientedSkeleton {
    /// Orients every edge toward the smaller objective value.
    pub fn build(data: &SkeletonData, objective: &Objective) -> Result<OrientedSkeleton> {
        let n = data.points.len();
        if n == 0 {
            return Err(Error::InvalidSpec("empty skeleton".into()));
        }
        let values: Vec<ObjectiveValue> = data.points.iter().map(|p| objective.evaluate(p)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        let mut err = None;
        order.sort_by(|&a, &b| match compare(&values[a], &values[b]) {
            Ok(o) => o,
            Err(e) => {
                err.get_or_insert(e);
                Ordering::Equal
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        for w in order.windows(2) {
            if compare(&values[w[0]], &values[w[1]])? == Ordering::Equal {
                return Err(Error::DegenerateObjective(w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        let mut rank = vec![0usize; n];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut arcs = Vec::with_capacity(data.edges.len());
        for &(a, b) in &data.edges {
            let (from, to) = if rank[a] > rank[b] { (a, b) } else { (b, a) };
            arcs.push((from, to));
            out_adj[from].push(to);
            in_adj[to].push(from);
        }
        let sinks: Vec<usize> = (0..n).filter(|&v| out_adj[v].is_empty()).collect();
        let sources: Vec<usize> = (0..n).filter(|&v| in_adj[v].is_empty()).collect();
        // An LP-admissible orientation has one sink and one source.
        if sinks.len() != 1 {
            return Err(Error::UnreachableVertex(*sinks.iter().find(|&&v| v != order[0]).unwrap_or(&0)));
        }
        if sources.len() != 1 {
            return Err(Error::UnreachableVertex(
                *sources.iter().find(|&&v| v != order[n - 1]).unwrap_or(&0),
            ));
        }
        Ok(OrientedSkeleton {
            vertices: data.vertices.clone(),
            values,
            arcs,
            sink: sinks[0],
            source: sources[0],
            out_adj,
            in_adj,
            order,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Shortest monotone path length from every vertex to the sink.
    pub fn monotone_distances(&self) -> Result<Vec<usize>> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[self.sink] = 0;
        let mut q = VecDeque::from([self.sink]);
        while let Some(v) = q.pop_front() {
            for &u in &self.in_adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(Error::UnreachableVertex(v));
        }
        Ok(dist)
    }

    pub fn c_monotone_diameter(&self) -> Result<usize> {
        Ok(self.monotone_distances()?.into_iter().max().unwrap_or(0))
    }

    /// Longest monotone path length from every vertex to the sink.
    pub fn heights(&self) -> Result<Vec<usize>> {
        let mut h = vec![0usize; self.len()];
        for &v in &self.order {
            if v == self.sink {
                continue;
            }
            h[v] = self.out_adj[v]
                .iter()
                .map(|&w| h[w] + 1)
                .max()
                .ok_or(Error::UnreachableVertex(v))?;
        }
        Ok(h)
    }

    pub fn c_height(&self) -> Result<usize> {
        Ok(self.heights()?.into_iter().max().unwrap_or(0))
    }

    /// Graph distance to the sink, ignoring orientation.
    pub fn undirected_distances(&self) -> Result<Vec<usize>> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[self.sink] = 0;
        let mut q = VecDeque::from([self.sink]);
        while let Some(v) = q.pop_front() {
            for &u in self.in_adj[v].iter().chain(&self.out_adj[v]) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(Error::UnreachableVertex(v));
        }
        Ok(dist)
    }
}

/// Distances and heights for the chain `undirected <= monotone <= rule <= height`.
#[derive(Debug, Clone)]
pub struct ChainData {
    pub undirected: Vec<usize>,
    pub monotone: Vec<usize>,
    pub height: Vec<usize>,
}

impl ChainData {
    pub fn new(skel: &OrientedSkeleton) -> Result<ChainData> {
        Ok(ChainData {
            undirected: skel.undirected_distances()?,
            monotone: skel.monotone_distances()?,
            height: skel.heights()?,
        })
    }

    /// Whether a rule path of `rule_len` steps from `start` fits the chain.
    pub fn holds(&self, start: usize, rule_len: usize) -> bool {
        self.undirected[start] <= self.monotone[start]
            && self.monotone[start] <= rule_len
            && rule_len <= self.height[start]
    }
}

/// Facet `j` is the lower facet of coordinate `j`, facet `n + j` the upper.
fn facet_bit(n: usize, f: usize) -> (usize, bool) {
    (f % n, f >= n)
}

fn check_ordering(n: usize, ordering: &[usize]) -> Result<()> {
    let mut seen = vec![false; 2 * n];
    if ordering.len() != 2 * n {
        return Err(Error::InvalidOrdering);
    }
    for &f in ordering {
        if f >= 2 * n || std::mem::replace(&mut seen[f], true) {
            return Err(Error::InvalidOrdering);
        }
    }
    Ok(())
}

/// Combinatorial Bland walk on a cube: at each vertex, leave the first
/// tight facet in `ordering` whose edge improves the objective.
///
/// Vertices are tight-upper bit patterns; facet `j` (`n + j`) is tight when
/// bit `j` is clear (set).
pub fn cube_bland_walk(
    kind: CubeKind,
    n: usize,
    ordering: &[usize],
    objective: &Objective,
    start: &[bool],
) -> Result<Vec<Vec<bool>>> {
    check_ordering(n, ordering)?;
    if start.len() != n {
        return Err(Error::InvalidSpec("start length differs from cube dimension".into()));
    }
    let value = |b: &[bool]| objective.evaluate(&cube_point(kind, b));
    let mut cur = start.to_vec();
    let mut path = vec![cur.clone()];
    loop {
        let here = value(&cur);
        let mut moved = false;
        for &f in ordering {
            let (j, upper) = facet_bit(n, f);
            if cur[j] != upper {
                continue;
            }
            let mut next = cur.clone();
            next[j] = !upper;
            if compare(&value(&next), &here)? == Ordering::Less {
                cur = next;
                path.push(cur.clone());
                moved = true;
                break;
            }
        }
        if !moved {
            return Ok(path);
        }
        if path.len() > (1usize << n.min(30)) + 1 {
            return Err(Error::Cycling { iterations: path.len() });
        }
    }
}

/// Whether every facet missing `optimum` precedes every facet containing it.
pub fn is_good_ordering(n: usize, ordering: &[usize], optimum: &[bool]) -> bool {
    let contains = |f: usize| {
        let (j, upper) = facet_bit(n, f);
        optimum[j] == upper
    };
    let first_containing = ordering.iter().position(|&f| contains(f)).unwrap_or(ordering.len());
    ordering[first_containing..].iter().all(|&f| contains(f))
}

/// A uniformly random good ordering for `optimum`.
pub fn random_good_ordering<R: Rng>(n: usize, optimum: &[bool], rng: &mut R) -> Vec<usize> {
    let mut missing: Vec<usize> = (0..n).map(|j| if optimum[j] { j } else { n + j }).collect();
    let mut containing: Vec<usize> = (0..n).map(|j| if optimum[j] { n + j } else { j }).collect();
    missing.shuffle(rng);
    containing.shuffle(rng);
    missing.extend(containing);
    missing
}

/// Monotone-diameter results for one objective.
#[derive(Debug, Clone, Serialize)]
pub struct ObjectiveResult {
    pub label: String,
    pub objective: Objective,
    pub mono_diameter: usize,
    pub height: usize,
}

/// Objectives to analyze: lex, coordinate-led lex, and random rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObjectiveBattery {
    pub lex: bool,
    pub coordinate: bool,
    pub random: usize,
    pub seed: u64,
}

impl Default for ObjectiveBattery {
    fn default() -> Self {
        ObjectiveBattery {
            lex: true,
            coordinate: true,
            random: 64,
            seed: DEFAULT_SEED,
        }
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;

const PRIMES: [i64; 24] = [
    1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061, 1063, 1069, 1087, 1091, 1093, 1097, 1103,
    1109, 1117, 1123, 1129, 1151, 1153, 1163,
];

/// Random rational objective with numerators in `[-999, 999]` over distinct
/// primes (cycled past 24 coordinates).
pub fn random_objective<R: Rng>(dim: usize, rng: &mut R) -> Objective {
    let mut primes = PRIMES.to_vec();
    primes.shuffle(rng);
    Objective::numeric(
        (0..dim)
            .map(|j| {
                let mut num = rng.gen_range(-999i64..=999);
                if num == 0 {
                    num = 1;
                }
                Scalar::ratio(num, primes[j % primes.len()])
            })
            .collect(),
    )
}

/// Lex objective ranking coordinate `i` first, the rest in order.
pub fn coordinate_lex(dim: usize, i: usize) -> Objective {
    let mut rank = vec![0usize; dim];
    let mut r = 1;
    for (j, slot) in rank.iter_mut().enumerate() {
        if j == i {
            *slot = 0;
        } else {
            *slot = r;
            r += 1;
        }
    }
    Objective::lex(rank)
}

/// Attempts per random objective before giving up on degeneracy.
pub const MAX_RETRIES: usize = 32;

/// Runs `f` on the skeleton oriented by each objective of the battery.
/// Degenerate structured objectives are skipped; random ones are redrawn.
pub fn for_each_objective<T>(
    data: &SkeletonData,
    dim: usize,
    battery: &ObjectiveBattery,
    mut f: impl FnMut(&str, &Objective, &OrientedSkeleton) -> Result<T>,
) -> Result<Vec<T>> {
    let mut out = Vec::new();
    let mut structured = Vec::new();
    if battery.lex {
        structured.push(("lex".to_string(), Objective::lex_identity(dim)));
    }
    if battery.coordinate {
        for i in 0..dim {
            structured.push((format!("coordinate_{i}"), coordinate_lex(dim, i)));
        }
    }
    for (label, obj) in structured {
        match OrientedSkeleton::build(data, &obj) {
            Ok(sk) => out.push(f(&label, &obj, &sk)?),
            Err(Error::DegenerateObjective(..)) => {}
            Err(e) => return Err(e),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(battery.seed);
    for r in 0..battery.random {
        let mut tries = 0;
        loop {
            let obj = random_objective(dim, &mut rng);
            match OrientedSkeleton::build(data, &obj) {
                Ok(sk) => {
                    out.push(f(&format!("random_{r}"), &obj, &sk)?);
                    break;
                }
                Err(Error::DegenerateObjective(a, b)) => {
                    tries += 1;
                    if tries >= MAX_RETRIES {
                        return Err(Error::DegenerateObjective(a, b));
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

pub fn analyze_battery(data: &SkeletonData, dim: usize, battery: &ObjectiveBattery) -> Result<Vec<ObjectiveResult>> {
    for_each_objective(data, dim, battery, |label, obj, sk| {
        Ok(ObjectiveResult {
            label: label.to_string(),
            objective: obj.clone(),
            mono_diameter: sk.c_monotone_diameter()?,
            height: sk.c_height()?,
        })
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RefinementReport {
    pub family: String,
    pub objectives: usize,
    pub max_mono_diameter: usize,
    pub edge_directions: usize,
    /// `C(d, 2)` for matroid-style families.
    pub matroid_bound: Option<usize>,
    pub violations: Vec<String>,
}

impl RefinementReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks mono-diam(c) <= #edge directions for every battery objective and,
/// for permutahedra and spanning-tree polytopes, <= C(d, 2).
pub fn check_refinement_inequality(
    inst: &Instance,
    battery: &ObjectiveBattery,
    limit: usize,
) -> Result<RefinementReport> {
    let data = inst.skeleton(limit)?;
    let dirs = crate::zoo::directions::directions_of_edges(&data.points, &data.edges).len();
    let d = inst.natural_dim();
    let matroid_bound = matches!(inst.family(), "permutahedron" | "spanning_tree").then(|| d * (d - 1) / 2);
    let mut violations = Vec::new();
    let mut max_md = 0;
    let results = for_each_objective(&data, d, battery, |label, _, sk| {
        let md = sk.c_monotone_diameter()?;
        max_md = max_md.max(md);
        if md > dirs {
            violations.push(format!("{label}: mono-diam {md} > {dirs} directions"));
        }
        if let Some(b) = matroid_bound {
            if md > b {
                violations.push(format!("{label}: mono-diam {md} > C(d,2) = {b}"));
            }
        }
        Ok(())
    })?;
    Ok(RefinementReport {
        family: inst.family().to_string(),
        objectives: results.len(),
        max_mono_diameter: max_md,
        edge_directions: dirs,
        matroid_bound,
        violations,
    })
}
