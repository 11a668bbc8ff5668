//! Birkhoff polytopes as faces of matching-type polytopes of `K_n`.
//!
//! With `E1 = {0..k}` and `E2 = {k..2k}`, the face `x_e = 0` off
//! `E1 x E2`, `x(delta(i)) = 1` on `E1 + E2` consists of the perfect
//! matchings of `K_{E1,E2}`. For odd `n` in the fractional perfect matching
//! polytope the last three nodes carry a fixed triangle of halves.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_key, Edge, Graph};
use crate::scalar::Scalar;
use crate::zoo::combinatorics::{permutations, relative_cycles};
use crate::zoo::{CombinatorialVertex, FamilySpec, Instance, DEFAULT_VERTEX_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingTarget {
    Matching,
    Fm,
    PerfectMatching,
    Fpm,
}

impl std::str::FromStr for EmbeddingTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matching" => Ok(EmbeddingTarget::Matching),
            "fm" => Ok(EmbeddingTarget::Fm),
            "perfect_matching" | "pm" => Ok(EmbeddingTarget::PerfectMatching),
            "fpm" => Ok(EmbeddingTarget::Fpm),
            other => Err(Error::InvalidTarget(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDescription {
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    /// Edges fixed to zero.
    pub zero_edges: Vec<Edge>,
    /// Nodes whose incident edges sum to one.
    pub tight_nodes: Vec<usize>,
    /// Edges fixed to one half.
    pub half_edges: Vec<Edge>,
}

impl FaceDescription {
    /// Whether a natural point of the target satisfies the face equalities.
    pub fn contains(&self, graph: &Graph, x: &[Scalar]) -> bool {
        let half = Scalar::ratio(1, 2);
        let value = |e: &Edge| graph.edge_index(e.0, e.1).map(|k| &x[k]);
        self.zero_edges.iter().all(|e| value(e).is_some_and(|v| v.is_zero()))
            && self.half_edges.iter().all(|e| value(e).is_some_and(|v| *v == half))
            && self.tight_nodes.iter().all(|&i| {
                let s: Scalar =
                    graph.edges.iter().zip(x).filter(|(e, _)| e.0 == i || e.1 == i).map(|(_, v)| v.clone()).sum();
                s == Scalar::one()
            })
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    pub target: Instance,
    pub birkhoff_n: usize,
    /// Image of each permutation of `0..birkhoff_n`.
    pub map: Vec<(Vec<usize>, CombinatorialVertex)>,
    pub face: FaceDescription,
}

pub fn embed_birkhoff_face(target: EmbeddingTarget, n: usize) -> Result<Embedding> {
    if n < 4 {
        return Err(Error::InvalidTarget(format!("n = {n} is too small, need n >= 4")));
    }
    let odd = n % 2 == 1;
    if odd && target == EmbeddingTarget::PerfectMatching {
        return Err(Error::InvalidTarget(format!("K_{n} has no perfect matching")));
    }
    if odd && target == EmbeddingTarget::Fpm && n < 7 {
        return Err(Error::InvalidTarget("odd n needs n >= 7 for fractional perfect matchings".into()));
    }
    let triangle = odd && target == EmbeddingTarget::Fpm;
    let k = if triangle { (n - 3) / 2 } else { n / 2 };
    let e1: Vec<usize> = (0..k).collect();
    let e2: Vec<usize> = (k..2 * k).collect();
    let half_edges: Vec<Edge> = if triangle { vec![(n - 3, n - 2), (n - 3, n - 1), (n - 2, n - 1)] } else { vec![] };
    let graph = Graph::complete(n);
    let zero_edges: Vec<Edge> = graph
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| !(a < k && (k..2 * k).contains(&b)) && !half_edges.contains(&(a, b)))
        .collect();
    let face = FaceDescription {
        e1,
        e2,
        zero_edges,
        tight_nodes: (0..2 * k).collect(),
        half_edges: half_edges.clone(),
    };
    let spec = match target {
        EmbeddingTarget::Matching => FamilySpec::Matching { graph: graph.clone() },
        EmbeddingTarget::Fm => FamilySpec::Fm { graph: graph.clone() },
        EmbeddingTarget::PerfectMatching => FamilySpec::PerfectMatching { graph: graph.clone() },
        EmbeddingTarget::Fpm => FamilySpec::Fpm { graph: graph.clone() },
    };
    let inst = Instance::generate(spec)?;
    let map = permutations(k)
        .into_iter()
        .map(|sigma| {
            let matching: Vec<Edge> = sigma.iter().enumerate().map(|(i, &j)| edge_key(i, k + j)).collect();
            let v = match target {
                EmbeddingTarget::Matching | EmbeddingTarget::PerfectMatching => CombinatorialVertex::EdgeSet(matching),
                EmbeddingTarget::Fm | EmbeddingTarget::Fpm => {
                    let mut x = vec![Scalar::zero(); graph.num_edges()];
                    for &(a, b) in &matching {
                        x[graph.edge_index(a, b).unwrap()] = Scalar::one();
                    }
                    for &(a, b) in &half_edges {
                        x[graph.edge_index(a, b).unwrap()] = Scalar::ratio(1, 2);
                    }
                    CombinatorialVertex::HalfIntegral(x)
                }
            };
            (sigma, v)
        })
        .collect();
    Ok(Embedding {
        target: inst,
        birkhoff_n: k,
        map,
        face,
    })
}

/// Checks that the images are exactly the target vertices on the face, and
/// that target adjacency among them equals Birkhoff adjacency.
pub fn check_embedding(emb: &Embedding) -> Result<bool> {
    let graph = match &emb.target.spec {
        FamilySpec::Matching { graph }
        | FamilySpec::PerfectMatching { graph }
        | FamilySpec::Fm { graph }
        | FamilySpec::Fpm { graph } => graph.clone(),
        _ => return Err(Error::InvalidTarget(emb.target.family().to_string())),
    };
    let on_face: BTreeSet<CombinatorialVertex> = emb
        .target
        .enumerate_vertices(DEFAULT_VERTEX_LIMIT)?
        .into_iter()
        .filter(|v| emb.target.point(v).is_ok_and(|x| emb.face.contains(&graph, &x)))
        .collect();
    let images: BTreeSet<CombinatorialVertex> = emb.map.iter().map(|(_, v)| v.clone()).collect();
    if images.len() != emb.map.len() || images != on_face {
        return Ok(false);
    }
    for (i, (s, u)) in emb.map.iter().enumerate() {
        if !emb.target.is_vertex(u) {
            return Ok(false);
        }
        for (t, v) in &emb.map[i + 1..] {
            let birkhoff = relative_cycles(s, t).len() == 1;
            if emb.target.adjacent(u, v)? != birkhoff {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
