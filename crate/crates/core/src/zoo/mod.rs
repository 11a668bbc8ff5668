//! Polytope families: generators, vertex enumeration, adjacency oracles,
//! LP forms and edge directions.

pub mod combinatorics;
pub mod directions;
pub mod lpgeom;
pub mod transport;
pub mod zonotope;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cyclomatic_number, edge_components, edge_key, Edge, Graph};
use crate::linalg::Matrix;
use crate::lp::{Basis, LinearProgram, LpFile, Objective};
use crate::scalar::Scalar;
use combinatorics::*;
use directions::{directions_of_edges, Direction};

/// Default cap on enumerated vertices.
pub const DEFAULT_VERTEX_LIMIT: usize = 200_000;

/// Distortion of the Klee-Minty cube.
pub fn klee_minty_epsilon() -> Scalar {
    Scalar::ratio(1, 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeKind {
    Standard,
    KleeMinty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum FamilySpec {
    Birkhoff { n: usize },
    Transportation { supplies: Vec<Scalar>, demands: Vec<Scalar> },
    Fm { graph: Graph },
    Fpm { graph: Graph },
    Matching { graph: Graph },
    PerfectMatching { graph: Graph },
    P2m { n: usize },
    TspSkeleton { n: usize },
    ShortestPath { n: usize },
    Cube { n: usize, kind: CubeKind },
    Zonotope { generators: Vec<Vec<Scalar>> },
    SpanningTree { graph: Graph },
    Permutahedron { n: usize },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Birkhoff { .. } => "birkhoff",
            FamilySpec::Transportation { .. } => "transportation",
            FamilySpec::Fm { .. } => "fm",
            FamilySpec::Fpm { .. } => "fpm",
            FamilySpec::Matching { .. } => "matching",
            FamilySpec::PerfectMatching { .. } => "perfect_matching",
            FamilySpec::P2m { .. } => "p2m",
            FamilySpec::TspSkeleton { .. } => "tsp_skeleton",
            FamilySpec::ShortestPath { .. } => "shortest_path",
            FamilySpec::Cube { kind: CubeKind::Standard, .. } => "cube",
            FamilySpec::Cube { kind: CubeKind::KleeMinty, .. } => "klee_minty",
            FamilySpec::Zonotope { .. } => "zonotope",
            FamilySpec::SpanningTree { .. } => "spanning_tree",
            FamilySpec::Permutahedron { .. } => "permutahedron",
        }
    }
}

/// Family-tagged vertex payloads.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum CombinatorialVertex {
    /// `p[i]` is the column (Birkhoff) or value (permutahedron) at row `i`.
    Permutation(Vec<usize>),
    /// Row-major `k x n` flow whose support is a spanning tree.
    Flow(Vec<Scalar>),
    /// Edge values in `{0, 1/2, 1}` over the graph's edges.
    HalfIntegral(Vec<Scalar>),
    EdgeSet(Vec<Edge>),
    /// Node sequence of a simple path from the first to the last node.
    Path(Vec<usize>),
    Bits(Vec<bool>),
    Subset(Vec<usize>),
    /// Raw LP vertex.
    Point(Vec<Scalar>),
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: FamilySpec,
    lp: Option<LinearProgram>,
    natural_dim: usize,
    names: Vec<String>,
    /// Arc index map for the shortest-path family.
    arcs: Vec<Edge>,
}

fn row_of(len: usize, entries: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut r = vec![Scalar::zero(); len];
    for (j, v) in entries {
        r[*j] += v.clone();
    }
    r
}

fn one() -> Scalar {
    Scalar::one()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidSpec(msg.into()))
    }
}

fn guard(what: &'static str, size: u128, limit: usize) -> Result<()> {
    if size > limit as u128 {
        Err(Error::TooLarge {
            what,
            size,
            limit: limit as u128,
        })
    } else {
        Ok(())
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

/// Arcs `(i, j)` of the shortest-path system on `n` nodes, `i != n - 1`,
/// `j != 0`, `i != j`, in row-major order.
pub fn shortest_path_arcs(n: usize) -> Vec<Edge> {
    (0..n - 1)
        .flat_map(|i| (1..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

impl Instance {
    pub fn generate(spec: FamilySpec) -> Result<Instance> {
        let mut inst = Instance {
            spec: spec.clone(),
            lp: None,
            natural_dim: 0,
            names: Vec::new(),
            arcs: Vec::new(),
        };
        let zero_obj = |n: usize| Objective::numeric(vec![Scalar::zero(); n]);
        match &spec {
            FamilySpec::Birkhoff { n } => {
                ensure(*n >= 2, "Birkhoff needs n >= 2")?;
                let ones = vec![one(); *n];
                let (lp, names) = transport::transportation_lp(&ones, &ones, "birkhoff")?;
                inst.natural_dim = n * n;
                inst.names = names;
                inst.lp = Some(lp);
            }
            FamilySpec::Transportation { supplies, demands } => {
                let (lp, names) = transport::transportation_lp(supplies, demands, "transportation")?;
                inst.natural_dim = supplies.len() * demands.len();
                inst.names = names;
                inst.lp = Some(lp);
            }
            FamilySpec::Fpm { graph } | FamilySpec::Fm { graph } => {
                let g = graph.normalized()?;
                ensure(g.nodes >= 2 && g.num_edges() >= 1, "graph needs an edge")?;
                let slack = matches!(spec, FamilySpec::Fm { .. });
                let e = g.num_edges();
                let nv = if slack { e + g.nodes } else { e };
                let mut a: Matrix = Vec::new();
                for v in 0..g.nodes {
                    let mut ent: Vec<(usize, Scalar)> = g
                        .edges
                        .iter()
                        .enumerate()
                        .filter(|(_, &(x, y))| x == v || y == v)
                        .map(|(k, _)| (k, one()))
                        .collect();
                    if slack {
                        ent.push((e + v, one()));
                    }
                    a.push(row_of(nv, &ent));
                }
                let mut names: Vec<String> =
                    g.edges.iter().map(|&(x, y)| format!("x{},{}", x + 1, y + 1)).collect();
                if slack {
                    names.extend((0..g.nodes).map(|v| format!("s{}", v + 1)));
                }
                let b = vec![one(); g.nodes];
                let lp = LinearProgram::from_equalities(spec.name(), a, b, zero_obj(nv), names.clone())?;
                inst.natural_dim = e;
                inst.names = names;
                inst.lp = Some(lp);
                inst.spec = match spec {
                    FamilySpec::Fm { .. } => FamilySpec::Fm { graph: g },
                    _ => FamilySpec::Fpm { graph: g },
                };
            }
            FamilySpec::ShortestPath { n } => {
                ensure(*n >= 3, "shortest path needs n >= 3")?;
                let n = *n;
                let arcs = shortest_path_arcs(n);
                let na = arcs.len();
                let nv = na + (n - 2);
                let idx: HashMap<Edge, usize> = arcs.iter().enumerate().map(|(k, &e)| (e, k)).collect();
                let mut a: Matrix = Vec::new();
                let out_of = |i: usize| -> Vec<(usize, Scalar)> {
                    (1..n).filter(|&j| j != i).map(|j| (idx[&(i, j)], one())).collect()
                };
                a.push(row_of(nv, &out_of(0)));
                for i in 1..n - 1 {
                    let mut ent = out_of(i);
                    for j in 0..n - 1 {
                        if j != i {
                            ent.push((idx[&(j, i)], -one()));
                        }
                    }
                    a.push(row_of(nv, &ent));
                }
                for i in 1..n - 1 {
                    let mut ent = out_of(i);
                    ent.push((na + i - 1, one()));
                    a.push(row_of(nv, &ent));
                }
                let mut b = vec![one()];
                b.extend((1..n - 1).map(|_| Scalar::zero()));
                b.extend((1..n - 1).map(|_| one()));
                let mut names: Vec<String> =
                    arcs.iter().map(|&(i, j)| format!("x{},{}", i + 1, j + 1)).collect();
                names.extend((1..n - 1).map(|i| format!("s{}", i + 1)));
                let lp = LinearProgram::from_equalities("shortest_path", a, b, zero_obj(nv), names.clone())?;
                inst.natural_dim = na;
                inst.names = names;
                inst.arcs = arcs;
                inst.lp = Some(lp);
            }
            FamilySpec::Cube { n, kind } => {
                ensure(*n >= 1, "cube needs n >= 1")?;
                let n = *n;
                let eps = klee_minty_epsilon();
                let (a, b, names) = match kind {
                    CubeKind::Standard => {
                        let nv = 2 * n;
                        let a: Matrix = (0..n).map(|j| row_of(nv, &[(j, one()), (n + j, one())])).collect();
                        let mut names: Vec<String> = (0..n).map(|j| format!("x{}", j + 1)).collect();
                        names.extend((0..n).map(|j| format!("s{}", j + 1)));
                        (a, vec![one(); n], names)
                    }
                    CubeKind::KleeMinty => {
                        // x, upper slacks s, lower surpluses r_2..r_n.
                        let nv = 3 * n - 1;
                        let mut a: Matrix = vec![row_of(nv, &[(0, one()), (n, one())])];
                        let mut b = vec![one()];
                        for j in 1..n {
                            a.push(row_of(nv, &[(j, one()), (j - 1, eps.clone()), (n + j, one())]));
                            b.push(one());
                            a.push(row_of(nv, &[(j, one()), (j - 1, -&eps), (2 * n + j - 1, -one())]));
                            b.push(Scalar::zero());
                        }
                        let mut names: Vec<String> = (0..n).map(|j| format!("x{}", j + 1)).collect();
                        names.extend((0..n).map(|j| format!("s{}", j + 1)));
                        names.extend((1..n).map(|j| format!("r{}", j + 1)));
                        (a, b, names)
                    }
                };
                let nv = names.len();
                inst.lp = Some(LinearProgram::new(spec.name(), a, b, zero_obj(nv), names.clone())?);
                inst.natural_dim = n;
                inst.names = names;
            }
            FamilySpec::Matching { graph }
            | FamilySpec::PerfectMatching { graph }
            | FamilySpec::SpanningTree { graph } => {
                let g = graph.normalized()?;
                inst.natural_dim = g.num_edges();
                inst.names = g.edges.iter().map(|&(x, y)| format!("x{},{}", x + 1, y + 1)).collect();
                inst.spec = match spec {
                    FamilySpec::Matching { .. } => FamilySpec::Matching { graph: g },
                    FamilySpec::PerfectMatching { .. } => FamilySpec::PerfectMatching { graph: g },
                    _ => FamilySpec::SpanningTree { graph: g },
                };
            }
            FamilySpec::P2m { n } | FamilySpec::TspSkeleton { n } => {
                ensure(*n >= 3, "2-matchings need n >= 3")?;
                let g = Graph::complete(*n);
                inst.natural_dim = g.num_edges();
                inst.names = g.edges.iter().map(|&(x, y)| format!("x{},{}", x + 1, y + 1)).collect();
            }
            FamilySpec::Zonotope { generators } => {
                let d = zonotope::check_generators(generators)?;
                ensure(!generators.is_empty(), "zonotope needs generators")?;
                inst.natural_dim = d;
                inst.names = (0..d).map(|i| format!("z{}", i + 1)).collect();
            }
            FamilySpec::Permutahedron { n } => {
                ensure(*n >= 1, "permutahedron needs n >= 1")?;
                inst.natural_dim = *n;
                inst.names = (0..*n).map(|i| format!("y{}", i + 1)).collect();
            }
        }
        Ok(inst)
    }

    pub fn lp(&self) -> Option<&LinearProgram> {
        self.lp.as_ref()
    }

    pub fn family(&self) -> &'static str {
        self.spec.name()
    }

    pub fn natural_dim(&self) -> usize {
        self.natural_dim
    }

    pub fn coordinate_names(&self) -> &[String] {
        &self.names[..self.natural_dim]
    }

    fn lp_or(&self) -> Result<&LinearProgram> {
        self.lp.as_ref().ok_or(Error::WrongFamily("LP-form family"))
    }

    /// The instance's LP with a natural-space objective; slacks cost zero
    /// and, for lexicographic objectives, rank after every natural variable.
    pub fn lp_objective(&self, natural: &Objective) -> Result<Objective> {
        let lp = self.lp_or()?;
        natural.validate(self.natural_dim)?;
        let extra = lp.num_vars() - self.natural_dim;
        Ok(match natural {
            Objective::Numeric { c } => {
                let mut c = c.clone();
                c.extend((0..extra).map(|_| Scalar::zero()));
                Objective::numeric(c)
            }
            Objective::Lex { rank } => {
                let mut r = rank.clone();
                r.extend(self.natural_dim..self.natural_dim + extra);
                Objective::lex(r)
            }
        })
    }

    pub fn lp_with(&self, natural: &Objective) -> Result<LinearProgram> {
        self.lp_or()?.with_objective(self.lp_objective(natural)?)
    }

    /// Lexicographic objective that ranks the natural coordinates in order.
    pub fn lex_objective(&self) -> Objective {
        Objective::lex_identity(self.natural_dim)
    }

    pub fn enumerate_vertices(&self, limit: usize) -> Result<Vec<CombinatorialVertex>> {
        use CombinatorialVertex as V;
        let out: Vec<CombinatorialVertex> = match &self.spec {
            FamilySpec::Birkhoff { n } => {
                guard("Birkhoff vertices", factorial(*n), limit)?;
                permutations(*n).into_iter().map(V::Permutation).collect()
            }
            FamilySpec::Permutahedron { n } => {
                guard("permutahedron vertices", factorial(*n), limit)?;
                permutations(*n).into_iter().map(V::Permutation).collect()
            }
            FamilySpec::Transportation { supplies, demands } => {
                transport::transport_vertices(supplies, demands, limit)?
                    .into_iter()
                    .map(V::Flow)
                    .collect()
            }
            FamilySpec::Fpm { graph } | FamilySpec::Fm { graph } => {
                guard("matching graph nodes", graph.nodes as u128, 16)?;
                let perfect = matches!(self.spec, FamilySpec::Fpm { .. });
                half_integral_matchings(graph, perfect).into_iter().map(V::HalfIntegral).collect()
            }
            FamilySpec::Matching { graph } | FamilySpec::PerfectMatching { graph } => {
                guard("matching graph nodes", graph.nodes as u128, 16)?;
                let perfect = matches!(self.spec, FamilySpec::PerfectMatching { .. });
                matchings(graph, perfect).into_iter().map(V::EdgeSet).collect()
            }
            FamilySpec::P2m { n } | FamilySpec::TspSkeleton { n } => {
                guard("2-factor vertices", factorial(n - 1) / 2, limit)?;
                let tours = matches!(self.spec, FamilySpec::TspSkeleton { .. });
                two_factors(*n, tours).into_iter().map(V::EdgeSet).collect()
            }
            FamilySpec::ShortestPath { n } => {
                guard("paths", factorial(n - 2).saturating_mul(3), limit)?;
                simple_paths(*n).into_iter().map(V::Path).collect()
            }
            FamilySpec::Cube { n, .. } => {
                guard("cube vertices", 1u128 << (*n).min(100), limit)?;
                (0..1u64 << n)
                    .map(|mask| V::Bits((0..*n).map(|j| mask >> j & 1 == 1).collect()))
                    .collect()
            }
            FamilySpec::Zonotope { generators } => zonotope::zonotope_vertices(generators)?
                .into_iter()
                .map(|(s, _)| V::Subset(s))
                .collect(),
            FamilySpec::SpanningTree { graph } => {
                guard("spanning-tree graph edges", graph.num_edges() as u128, 24)?;
                spanning_trees(graph.nodes, &graph.edges).into_iter().map(V::EdgeSet).collect()
            }
        };
        guard("vertices", out.len() as u128, limit)?;
        Ok(out)
    }

    /// Coordinates of a vertex in the family's natural space.
    pub fn point(&self, v: &CombinatorialVertex) -> Result<Vec<Scalar>> {
        use CombinatorialVertex as V;
        let wrong = || Error::WrongFamily(self.family());
        match (&self.spec, v) {
            (FamilySpec::Birkhoff { n }, V::Permutation(p)) if p.len() == *n => {
                let mut x = vec![Scalar::zero(); n * n];
                for (i, &j) in p.iter().enumerate() {
                    x[i * n + j] = one();
                }
                Ok(x)
            }
            (FamilySpec::Permutahedron { n }, V::Permutation(p)) if p.len() == *n => {
                Ok(p.iter().map(|&v| Scalar::from_int(v as i64 + 1)).collect())
            }
            (FamilySpec::Transportation { .. }, V::Flow(x)) if x.len() == self.natural_dim => Ok(x.clone()),
            (FamilySpec::Fpm { .. } | FamilySpec::Fm { .. }, V::HalfIntegral(x))
                if x.len() == self.natural_dim =>
            {
                Ok(x.clone())
            }
            (
                FamilySpec::Matching { graph }
                | FamilySpec::PerfectMatching { graph }
                | FamilySpec::SpanningTree { graph },
                V::EdgeSet(es),
            ) => indicator(graph, es).ok_or_else(wrong),
            (FamilySpec::P2m { n } | FamilySpec::TspSkeleton { n }, V::EdgeSet(es)) => {
                indicator(&Graph::complete(*n), es).ok_or_else(wrong)
            }
            (FamilySpec::ShortestPath { .. }, V::Path(p)) => {
                let mut x = vec![Scalar::zero(); self.natural_dim];
                for w in p.windows(2) {
                    let k = self.arcs.iter().position(|&a| a == (w[0], w[1])).ok_or_else(wrong)?;
                    x[k] = one();
                }
                Ok(x)
            }
            (FamilySpec::Cube { n, kind }, V::Bits(b)) if b.len() == *n => Ok(cube_point(*kind, b)),
            (FamilySpec::Zonotope { generators }, V::Subset(s)) => {
                Ok(zonotope::subset_point(generators, s))
            }
            (_, V::Point(x)) if self.lp.is_some() && x.len() == self.lp_or()?.num_vars() => {
                Ok(x[..self.natural_dim].to_vec())
            }
            _ => Err(wrong()),
        }
    }

    /// Full LP coordinates of a vertex, slacks included.
    pub fn lp_point(&self, v: &CombinatorialVertex) -> Result<Vec<Scalar>> {
        let lp = self.lp_or()?;
        if let CombinatorialVertex::Point(x) = v {
            return Ok(x.clone());
        }
        let mut x = self.point(v)?;
        match &self.spec {
            FamilySpec::Fm { graph } => {
                for u in 0..graph.nodes {
                    let deg: Scalar = graph
                        .edges
                        .iter()
                        .zip(&x[..graph.num_edges()])
                        .filter(|((a, b), _)| *a == u || *b == u)
                        .map(|(_, v)| v.clone())
                        .sum();
                    x.push(one() - deg);
                }
            }
            FamilySpec::ShortestPath { n } => {
                let CombinatorialVertex::Path(p) = v else { unreachable!() };
                for i in 1..n - 1 {
                    x.push(if p.contains(&i) { Scalar::zero() } else { one() });
                }
            }
            FamilySpec::Cube { n, kind } => {
                let eps = klee_minty_epsilon();
                let pts = x.clone();
                for j in 0..*n {
                    let lower = if j == 0 || *kind == CubeKind::Standard {
                        Scalar::zero()
                    } else {
                        &eps * &pts[j - 1]
                    };
                    x.push(one() - &lower - &pts[j]);
                }
                if *kind == CubeKind::KleeMinty {
                    for j in 1..*n {
                        x.push(&pts[j] - &(&eps * &pts[j - 1]));
                    }
                }
            }
            _ => {}
        }
        debug_assert!(lp.is_feasible_point(&x));
        Ok(x)
    }

    /// Vertex payload for an LP point where one is recognizable.
    pub fn decode_lp_point(&self, x: &[Scalar]) -> CombinatorialVertex {
        use CombinatorialVertex as V;
        let nat = &x[..self.natural_dim.min(x.len())];
        match &self.spec {
            FamilySpec::Birkhoff { n } => {
                let p: Option<Vec<usize>> =
                    (0..*n).map(|i| (0..*n).find(|&j| nat[i * n + j] == one())).collect();
                p.map(V::Permutation).unwrap_or_else(|| V::Point(x.to_vec()))
            }
            FamilySpec::Transportation { .. } => V::Flow(nat.to_vec()),
            FamilySpec::Fpm { .. } | FamilySpec::Fm { .. } => V::HalfIntegral(nat.to_vec()),
            FamilySpec::ShortestPath { n } => {
                let mut path = vec![0];
                let mut cur = 0;
                let mut used = 1;
                while cur != n - 1 && used <= *n {
                    let Some(k) = (0..self.arcs.len()).find(|&k| self.arcs[k].0 == cur && nat[k] == one())
                    else {
                        break;
                    };
                    cur = self.arcs[k].1;
                    path.push(cur);
                    used += 1;
                }
                let arcs_used = nat.iter().filter(|v| !v.is_zero()).count();
                if cur == n - 1 && arcs_used == path.len() - 1 {
                    V::Path(path)
                } else {
                    V::Point(x.to_vec())
                }
            }
            FamilySpec::Cube { n, .. } => {
                // Upper slack zero means the upper facet is tight.
                V::Bits((0..*n).map(|j| x[n + j].is_zero()).collect())
            }
            _ => V::Point(x.to_vec()),
        }
    }

    /// Exact combinatorial adjacency test.
    pub fn adjacent(&self, u: &CombinatorialVertex, v: &CombinatorialVertex) -> Result<bool> {
        use CombinatorialVertex as V;
        let wrong = Error::WrongFamily(self.family());
        if u == v {
            return Ok(false);
        }
        match (&self.spec, u, v) {
            (FamilySpec::Birkhoff { .. }, V::Permutation(a), V::Permutation(b)) => {
                Ok(relative_cycles(a, b).len() == 1)
            }
            (FamilySpec::Permutahedron { .. }, V::Permutation(a), V::Permutation(b)) => {
                let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
                Ok(diff.len() == 2
                    && a[diff[0]] == b[diff[1]]
                    && a[diff[1]] == b[diff[0]]
                    && a[diff[0]].abs_diff(a[diff[1]]) == 1)
            }
            (FamilySpec::Transportation { .. } | FamilySpec::Fpm { .. } | FamilySpec::Fm { .. }, _, _)
            | (FamilySpec::ShortestPath { .. }, V::Point(_), _)
            | (FamilySpec::ShortestPath { .. }, _, V::Point(_)) => {
                let (x, y) = (self.lp_point(u)?, self.lp_point(v)?);
                Ok(lpgeom::lp_edge(self.lp_or()?, &x, &y))
            }
            (FamilySpec::Matching { .. }, V::EdgeSet(a), V::EdgeSet(b)) => {
                let d = sym_diff(a, b);
                Ok(!d.is_empty() && edge_components(&d) == 1)
            }
            (FamilySpec::PerfectMatching { .. }, V::EdgeSet(a), V::EdgeSet(b)) => {
                let d = sym_diff(a, b);
                Ok(!d.is_empty() && edge_components(&d) == 1)
            }
            (FamilySpec::P2m { .. } | FamilySpec::TspSkeleton { .. }, V::EdgeSet(a), V::EdgeSet(b)) => {
                Ok(crate::graph::single_alternating_cycle(a, b))
            }
            (FamilySpec::SpanningTree { .. }, V::EdgeSet(a), V::EdgeSet(b)) => Ok(sym_diff(a, b).len() == 2),
            (FamilySpec::ShortestPath { .. }, V::Path(a), V::Path(b)) => Ok(paths_adjacent(a, b)),
            (FamilySpec::Cube { .. }, V::Bits(a), V::Bits(b)) if a.len() == b.len() => {
                Ok(a.iter().zip(b).filter(|(x, y)| x != y).count() == 1)
            }
            (FamilySpec::Zonotope { .. }, V::Subset(a), V::Subset(b)) => {
                Ok(a.len().abs_diff(b.len()) == 1 && sym_diff_usize(a, b) == 1)
            }
            _ => Err(wrong),
        }
    }

    /// Characterization predicate for a vertex payload of this family.
    pub fn is_vertex(&self, v: &CombinatorialVertex) -> bool {
        use CombinatorialVertex as V;
        match (&self.spec, v) {
            (FamilySpec::Fpm { graph } | FamilySpec::Fm { graph }, V::HalfIntegral(x)) => {
                let half = Scalar::ratio(1, 2);
                let perfect = matches!(self.spec, FamilySpec::Fpm { .. });
                let ones: Vec<Edge> =
                    graph.edges.iter().zip(x).filter(|(_, v)| **v == one()).map(|(e, _)| *e).collect();
                let halves: Vec<Edge> =
                    graph.edges.iter().zip(x).filter(|(_, v)| **v == half).map(|(e, _)| *e).collect();
                let values_ok = x.iter().all(|v| v.is_zero() || *v == one() || *v == half);
                let mut deg = vec![0usize; graph.nodes];
                for &(a, b) in &ones {
                    deg[a] += 2;
                    deg[b] += 2;
                }
                for &(a, b) in &halves {
                    deg[a] += 1;
                    deg[b] += 1;
                }
                let deg_ok = deg.iter().all(|&d| d == 2 || (!perfect && d == 0));
                let cycles_odd = crate::graph::two_factor_cycles(&halves)
                    .is_some_and(|cs| cs.iter().all(|c| c.len() % 2 == 1));
                values_ok && deg_ok && (halves.is_empty() || cycles_odd)
            }
            (FamilySpec::Transportation { supplies, demands }, V::Flow(x)) => {
                let n = demands.len();
                let support: Vec<Edge> =
                    (0..x.len()).filter(|&k| !x[k].is_zero()).map(|k| (k / n, supplies.len() + k % n)).collect();
                self.lp_point(v).is_ok_and(|p| self.lp_or().is_ok_and(|lp| lp.is_feasible_point(&p)))
                    && cyclomatic_number(&support) == 0
            }
            (FamilySpec::ShortestPath { n }, V::Path(p)) => {
                let mut seen = vec![false; *n];
                p.first() == Some(&0)
                    && p.last() == Some(&(n - 1))
                    && p.iter().all(|&v| v < *n && !std::mem::replace(&mut seen[v], true))
            }
            (FamilySpec::P2m { n } | FamilySpec::TspSkeleton { n }, V::EdgeSet(es)) => {
                let tours = matches!(self.spec, FamilySpec::TspSkeleton { .. });
                es.len() == *n
                    && crate::graph::two_factor_cycles(es)
                        .is_some_and(|cs| cs.iter().map(|c| c.len()).sum::<usize>() == *n && (!tours || cs.len() == 1))
            }
            (FamilySpec::Zonotope { generators }, V::Subset(s)) => {
                let flags: Vec<bool> = (0..generators.len()).map(|j| s.contains(&j)).collect();
                zonotope::sign_feasible(generators, &flags).unwrap_or(false)
            }
            _ => self.point(v).is_ok(),
        }
    }

    /// Vertices, natural points and adjacent pairs.
    pub fn skeleton(&self, limit: usize) -> Result<SkeletonData> {
        let vertices = self.enumerate_vertices(limit)?;
        let points = vertices.iter().map(|v| self.point(v)).collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                if self.adjacent(&vertices[i], &vertices[j])? {
                    edges.push((i, j));
                }
            }
        }
        Ok(SkeletonData { vertices, points, edges })
    }

    pub fn enumerate_edge_directions(&self, limit: usize) -> Result<BTreeSet<Direction>> {
        let sk = self.skeleton(limit)?;
        Ok(directions_of_edges(&sk.points, &sk.edges))
    }

    /// Every vertex of the LP system `{Ax = b, x >= 0}`.
    ///
    /// For the shortest-path system these are a path plus node-disjoint
    /// directed cycles on the unvisited interior nodes, a superset of the
    /// path vertices.
    pub fn lp_vertices(&self, limit: usize) -> Result<Vec<Vec<Scalar>>> {
        let lp = self.lp_or()?;
        if let FamilySpec::ShortestPath { n } = &self.spec {
            let n = *n;
            let idx: HashMap<Edge, usize> = self.arcs.iter().enumerate().map(|(k, &e)| (e, k)).collect();
            let mut out = Vec::new();
            for p in simple_paths(n) {
                let rest: Vec<usize> = (1..n - 1).filter(|v| !p.contains(v)).collect();
                for packing in directed_cycle_packings(&rest) {
                    let mut x = vec![Scalar::zero(); lp.num_vars()];
                    for w in p.windows(2) {
                        x[idx[&(w[0], w[1])]] = one();
                    }
                    let mut busy: Vec<usize> = p.clone();
                    for c in &packing {
                        for i in 0..c.len() {
                            x[idx[&(c[i], c[(i + 1) % c.len()])]] = one();
                        }
                        busy.extend(c);
                    }
                    for i in 1..n - 1 {
                        if !busy.contains(&i) {
                            x[self.arcs.len() + i - 1] = one();
                        }
                    }
                    if lp.basis_for_vertex(&x).is_ok() {
                        out.push(x);
                    }
                    guard("LP vertices", out.len() as u128, limit)?;
                }
            }
            out.sort();
            return Ok(out);
        }
        let mut out = self
            .enumerate_vertices(limit)?
            .iter()
            .map(|v| self.lp_point(v))
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// A feasible start basis at a known vertex.
    pub fn start_basis(&self) -> Result<Basis> {
        let lp = self.lp_or()?;
        let v = match &self.spec {
            FamilySpec::Birkhoff { n } => CombinatorialVertex::Permutation((0..*n).collect()),
            FamilySpec::Transportation { supplies, demands } => {
                CombinatorialVertex::Flow(transport::northwest_corner(supplies, demands))
            }
            FamilySpec::ShortestPath { n } => CombinatorialVertex::Path(vec![0, n - 1]),
            FamilySpec::Cube { n, .. } => CombinatorialVertex::Bits(vec![false; *n]),
            FamilySpec::Fm { .. } => CombinatorialVertex::HalfIntegral(vec![Scalar::zero(); self.natural_dim]),
            _ => self
                .enumerate_vertices(DEFAULT_VERTEX_LIMIT)?
                .into_iter()
                .next()
                .ok_or(Error::InfeasibleStart)?,
        };
        lp.basis_for_vertex(&self.lp_point(&v)?)
    }

    pub fn to_file(&self, with_skeleton: Option<usize>) -> Result<InstanceFile> {
        let skeleton = match with_skeleton {
            Some(limit) => Some(self.skeleton(limit)?),
            None => None,
        };
        Ok(InstanceFile {
            spec: self.spec.clone(),
            lp: self.lp.as_ref().map(|l| l.to_file()),
            skeleton,
        })
    }

    pub fn from_file(f: InstanceFile) -> Result<Instance> {
        let inst = Instance::generate(f.spec)?;
        if let (Some(lp), Some(file_lp)) = (&inst.lp, &f.lp) {
            if lp.a() != &file_lp.a || lp.b() != file_lp.b.as_slice() {
                return Err(Error::Format("LP data disagrees with the family parameters".into()));
            }
        }
        Ok(match (inst.lp.clone(), f.lp) {
            (Some(lp), Some(file_lp)) => {
                let lp = lp.with_objective(file_lp.objective)?;
                Instance { lp: Some(lp), ..inst }
            }
            _ => inst,
        })
    }
}

/// Serialized instance: family parameters plus the LP and, for small
/// instances, the explicit skeleton.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(flatten)]
    pub spec: FamilySpec,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub lp: Option<LpFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skeleton: Option<SkeletonData>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkeletonData {
    pub vertices: Vec<CombinatorialVertex>,
    pub points: Vec<Vec<Scalar>>,
    pub edges: Vec<(usize, usize)>,
}

fn indicator(g: &Graph, es: &[Edge]) -> Option<Vec<Scalar>> {
    let mut x = vec![Scalar::zero(); g.num_edges()];
    for &(u, v) in es {
        x[g.edge_index(u, v)?] = one();
    }
    Some(x)
}

fn sym_diff(a: &[Edge], b: &[Edge]) -> Vec<Edge> {
    let sa: BTreeSet<Edge> = a.iter().map(|&(u, v)| edge_key(u, v)).collect();
    let sb: BTreeSet<Edge> = b.iter().map(|&(u, v)| edge_key(u, v)).collect();
    sa.symmetric_difference(&sb).copied().collect()
}

fn sym_diff_usize(a: &[usize], b: &[usize]) -> usize {
    let sa: BTreeSet<usize> = a.iter().copied().collect();
    let sb: BTreeSet<usize> = b.iter().copied().collect();
    sa.symmetric_difference(&sb).count()
}

/// Paths of the shortest-path system as perfect matchings of the bipartite
/// graph joining out-copies `0..n-1` to in-copies `1..n`: arc `(i, j)` is
/// the edge `(i, j)` and an unvisited interior node `v` uses `(v, v)`.
fn path_matching(p: &[usize], n: usize) -> Vec<Edge> {
    let mut es: Vec<Edge> = p.windows(2).map(|w| (w[0], n + w[1])).collect();
    es.extend((1..n - 1).filter(|v| !p.contains(v)).map(|v| (v, n + v)));
    es.sort();
    es
}

/// Two simple paths are adjacent when the union of their supports, read in
/// the bipartite node-split form above, contains exactly one cycle.
pub fn paths_adjacent(a: &[usize], b: &[usize]) -> bool {
    let n = match (a.last(), b.last()) {
        (Some(&x), Some(&y)) if x == y => x + 1,
        _ => return false,
    };
    if a == b {
        return false;
    }
    let mut union: BTreeSet<Edge> = path_matching(a, n).into_iter().collect();
    union.extend(path_matching(b, n));
    let es: Vec<Edge> = union.into_iter().collect();
    cyclomatic_number(&es) == 1
}

/// Point of the cube vertex with the given tight-upper pattern.
pub fn cube_point(kind: CubeKind, bits: &[bool]) -> Vec<Scalar> {
    match kind {
        CubeKind::Standard => bits.iter().map(|&b| if b { one() } else { Scalar::zero() }).collect(),
        CubeKind::KleeMinty => {
            let eps = klee_minty_epsilon();
            let mut x: Vec<Scalar> = Vec::with_capacity(bits.len());
            for (j, &b) in bits.iter().enumerate() {
                let lower = if j == 0 { Scalar::zero() } else { &eps * &x[j - 1] };
                x.push(if b { one() - lower } else { lower });
            }
            x
        }
    }
}
