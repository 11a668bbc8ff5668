//! Engine runs against the bounds: the LP skeleton of an instance, the
//! bound inputs built from it, and per-start simplex cells.

use serde::Serialize;

use crate::bounds::{
    compute_constants, evaluate_bound, iteration_cap, steepest_checks, subdeterminant_extremes, BoundInput,
    BoundName, BoundReport, SteepestChecks,
};
use crate::error::{Error, Result};
use crate::lp::{Basis, LinearProgram, Objective};
use crate::pivot::PivotRule;
use crate::scalar::Scalar;
use crate::simplex::run_simplex;
use crate::skeleton::{ChainData, OrientedSkeleton};
use crate::zoo::lpgeom::lp_edge;
use crate::zoo::{CombinatorialVertex, FamilySpec, Instance, SkeletonData};

/// Vertices of the LP form with their LP edges and one basis per vertex.
#[derive(Debug, Clone)]
pub struct LpSkeleton {
    pub data: SkeletonData,
    pub bases: Vec<Basis>,
}

pub fn lp_skeleton(inst: &Instance, limit: usize) -> Result<LpSkeleton> {
    let lp = inst.lp().ok_or(Error::WrongFamily("LP-form family"))?;
    let points = inst.lp_vertices(limit)?;
    let bases = points.iter().map(|x| lp.basis_for_vertex(x)).collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if lp_edge(lp, &points[i], &points[j]) {
                edges.push((i, j));
            }
        }
    }
    let vertices = points.iter().map(|x| CombinatorialVertex::Point(x.clone())).collect();
    Ok(LpSkeleton {
        data: SkeletonData { vertices, points, edges },
        bases,
    })
}

/// Constants in LP coordinates plus the family parameters. The
/// subdeterminant constants are left out when too many column subsets exist.
pub fn bound_input(inst: &Instance, sk: &LpSkeleton) -> Result<BoundInput> {
    let lp = inst.lp().ok_or(Error::WrongFamily("LP-form family"))?;
    let mut constants = compute_constants(&sk.data.points, &sk.data.edges)?;
    match subdeterminant_extremes(lp) {
        Ok((hi, lo)) => {
            constants.delta_abs = Some(hi);
            constants.lambda_abs = Some(lo);
        }
        Err(Error::TooLarge { .. }) => {}
        Err(e) => return Err(e),
    }
    let (family_n, family_m) = match &inst.spec {
        FamilySpec::Fpm { graph } | FamilySpec::Fm { graph } => (Some(graph.nodes), Some(graph.num_edges())),
        FamilySpec::Birkhoff { n } | FamilySpec::ShortestPath { n } => (Some(*n), None),
        _ => (None, None),
    };
    if let FamilySpec::Transportation { supplies, .. } = &inst.spec {
        constants.total_supply = Some(supplies.iter().sum());
    }
    let b_inf = lp.b().iter().map(|v| v.abs()).max();
    Ok(BoundInput {
        num_vars: lp.num_vars(),
        num_rows: lp.num_rows(),
        constants,
        family_n,
        family_m,
        b_inf,
    })
}

/// Bounds covering `rule` on this instance that can be evaluated.
pub fn applicable_bounds(inst: &Instance, input: &BoundInput, rule: &PivotRule) -> Vec<(BoundName, u64)> {
    let generic = [
        BoundName::General,
        BoundName::Improved,
        BoundName::Steepest,
        BoundName::Subdeterminant,
    ];
    generic
        .iter()
        .chain(BoundName::family_bounds(inst.family()))
        .filter(|b| b.applies_to(rule))
        .filter_map(|&b| evaluate_bound(b, input).ok().map(|v| (b, v)))
        .collect()
}

/// One simplex run from one start vertex.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub rule: String,
    pub start: usize,
    pub pivots: usize,
    pub distinct_bfs: usize,
    /// Steps between distinct consecutive vertices.
    pub path_len: usize,
    pub reports: Vec<BoundReport>,
    pub chain_holds: bool,
    pub reached_optimum: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steepest: Option<SteepestChecks>,
}

/// Objective-specific data shared by all cells of one objective.
pub struct Prepared<'a> {
    pub lp: LinearProgram,
    pub sk: &'a LpSkeleton,
    pub chain: ChainData,
    pub z_star: Scalar,
    optimum: usize,
}

impl<'a> Prepared<'a> {
    /// `objective` is in LP coordinates and must be numeric and generic on
    /// the skeleton.
    pub fn new(inst: &Instance, sk: &'a LpSkeleton, objective: &Objective) -> Result<Prepared<'a>> {
        let base = inst.lp().ok_or(Error::WrongFamily("LP-form family"))?;
        let lp = base.with_objective(objective.clone())?;
        let oriented = OrientedSkeleton::build(&sk.data, objective)?;
        let chain = ChainData::new(&oriented)?;
        let z_star = objective
            .evaluate(&sk.data.points[oriented.sink])
            .as_numeric()
            .cloned()
            .ok_or(Error::KindMismatch)?;
        Ok(Prepared {
            lp,
            sk,
            chain,
            z_star,
            optimum: oriented.sink,
        })
    }

    pub fn run(&self, start: usize, rule: &PivotRule, input: &BoundInput, bounds: &[(BoundName, u64)]) -> Result<Cell> {
        let trace = run_simplex(&self.lp, &self.sk.bases[start], rule, iteration_cap(Some(input)))?;
        let distinct = trace.distinct_bfs();
        let path_len = trace.vertex_path().len() - 1;
        let reached = trace.final_vertex() == self.sk.data.points[self.optimum].as_slice();
        let steepest = match rule {
            PivotRule::SteepestEdge => {
                Some(steepest_checks(&trace, &self.z_star, self.lp.num_rows(), &input.constants)?)
            }
            _ => None,
        };
        Ok(Cell {
            rule: rule.name().to_string(),
            start,
            pivots: trace.steps.len(),
            distinct_bfs: distinct,
            path_len,
            reports: bounds.iter().map(|&(b, v)| BoundReport::new(rule, b, v, distinct)).collect(),
            chain_holds: reached && self.chain.holds(start, path_len),
            reached_optimum: reached,
            steepest,
        })
    }
}
