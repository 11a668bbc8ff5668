//! Explicit monotone paths: the long TSP and shortest-path constructions,
//! Birkhoff face embeddings, and the 2 x n transportation walk.

pub mod embed;
pub mod sp;
pub mod transportation;
pub mod tsp;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{edge_key, Edge};
use crate::lp::{compare, Objective};
use crate::zoo::{CombinatorialVertex, Instance};

pub use embed::{check_embedding, embed_birkhoff_face, Embedding, EmbeddingTarget, FaceDescription};
pub use sp::{sp_long_path, SpConstruction};
pub use transportation::{improving_cycle_check, tp2xn_monotone_walk, valid_cycles, SolvedTransportation};
pub use tsp::{lex_min_tour, tsp_long_path};

/// Edges leaving and entering the support at one step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonePath {
    pub family: String,
    pub n: usize,
    pub objective: Objective,
    pub vertices: Vec<CombinatorialVertex>,
    pub certificates: Vec<Certificate>,
}

impl MonotonePath {
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Builds the path with certificates taken from the vertex supports.
    pub fn from_vertices(
        family: &str,
        n: usize,
        objective: Objective,
        vertices: Vec<CombinatorialVertex>,
    ) -> MonotonePath {
        let certificates = vertices.windows(2).map(|w| certificate(&w[0], &w[1], n)).collect();
        MonotonePath {
            family: family.to_string(),
            n,
            objective,
            vertices,
            certificates,
        }
    }

    pub fn to_file(&self, verified: bool) -> PathFile {
        PathFile {
            family: self.family.clone(),
            n: self.n,
            objective: if self.objective.is_numeric() { "numeric" } else { "lex" }.to_string(),
            objective_data: self.objective.clone(),
            vertices: self.vertices.clone(),
            certificates: self.certificates.clone(),
            length: self.length(),
            verified,
        }
    }
}

/// On-disk form of a monotone path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathFile {
    pub family: String,
    pub n: usize,
    pub objective: String,
    pub objective_data: Objective,
    pub vertices: Vec<CombinatorialVertex>,
    pub certificates: Vec<Certificate>,
    pub length: usize,
    pub verified: bool,
}

/// Support as edges; flows are read as `rows x cols` matrices.
fn support(v: &CombinatorialVertex, cols: usize) -> BTreeSet<Edge> {
    use CombinatorialVertex as V;
    match v {
        V::EdgeSet(es) => es.iter().map(|&(a, b)| edge_key(a, b)).collect(),
        V::Path(p) => p.windows(2).map(|w| (w[0], w[1])).collect(),
        V::Permutation(p) => p.iter().enumerate().map(|(i, &j)| (i, j)).collect(),
        V::Flow(x) => x
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, _)| (k / cols.max(1), k % cols.max(1)))
            .collect(),
        V::HalfIntegral(x) | V::Point(x) => {
            x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, _)| (k, k)).collect()
        }
        V::Bits(b) => b.iter().enumerate().filter(|(_, &v)| v).map(|(k, _)| (k, k)).collect(),
        V::Subset(s) => s.iter().map(|&k| (k, k)).collect(),
    }
}

pub fn certificate(u: &CombinatorialVertex, v: &CombinatorialVertex, cols: usize) -> Certificate {
    let (a, b) = (support(u, cols), support(v, cols));
    Certificate {
        removed: a.difference(&b).copied().collect(),
        added: b.difference(&a).copied().collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub passed: bool,
    pub length: usize,
    /// Index of the first failing step `vertices[i] -> vertices[i + 1]`.
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
}

/// Replays every step through the family adjacency oracle and an exact
/// objective comparison.
pub fn verify_monotone_path(path: &MonotonePath, instance: &Instance) -> PathReport {
    let fail = |i: usize, reason: String| PathReport {
        passed: false,
        length: path.length(),
        failed_step: Some(i),
        reason: Some(reason),
    };
    let values = match path
        .vertices
        .iter()
        .map(|v| instance.point(v).map(|p| path.objective.evaluate(&p)))
        .collect::<Result<Vec<_>>>()
    {
        Ok(v) => v,
        Err(e) => return fail(0, format!("vertex not in family: {e}")),
    };
    for (i, v) in path.vertices.iter().enumerate() {
        if !instance.is_vertex(v) {
            return fail(i.saturating_sub(1), format!("vertex {i} is not a vertex of the family"));
        }
    }
    if path.certificates.len() != path.length() {
        return fail(0, "certificate count differs from step count".into());
    }
    for i in 0..path.length() {
        let (u, v) = (&path.vertices[i], &path.vertices[i + 1]);
        match instance.adjacent(u, v) {
            Ok(true) => {}
            Ok(false) => return fail(i, "not adjacent".into()),
            Err(e) => return fail(i, e.to_string()),
        }
        if path.certificates[i] != certificate(u, v, path.n) {
            return fail(i, "certificate does not match the supports".into());
        }
        match compare(&values[i], &values[i + 1]) {
            Ok(Ordering::Greater) => {}
            Ok(_) => return fail(i, "objective does not strictly decrease".into()),
            Err(e) => return fail(i, e.to_string()),
        }
    }
    PathReport {
        passed: true,
        length: path.length(),
        failed_step: None,
        reason: None,
    }
}

/// `L~_4 = 1`, `L~_5 = 3`, `L~_n = L~_{n-1} + L~_{n-2} + 2`.
pub fn tsp_recurrence(n: usize) -> u64 {
    match n {
        0..=4 => 1,
        5 => 3,
        _ => {
            let (mut a, mut b) = (1u64, 3u64);
            for _ in 6..=n {
                let c = a + b + 2;
                a = b;
                b = c;
            }
            b
        }
    }
}

/// Fibonacci numbers with `F(4) = 3`, `F(5) = 5`.
pub fn fibonacci_shifted(n: usize) -> u64 {
    let (mut a, mut b) = (3u64, 5u64);
    if n <= 4 {
        return a;
    }
    for _ in 6..=n {
        let c = a + b;
        a = b;
        b = c;
    }
    b
}
