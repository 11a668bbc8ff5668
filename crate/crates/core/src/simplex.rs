//! Primal simplex driver with pluggable pivot rules and full tracing.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lp::{ratio_along, BasicSolution, Basis, BasisState, LinearProgram, Objective, ObjectiveValue};
use crate::pivot::{lambda_of, select_entering, PivotContext, PivotRule, Selection};
use crate::scalar::{norm_sq, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub basis: Basis,
    pub vertex: Vec<Scalar>,
    pub entering: usize,
    pub leaving: usize,
    pub theta: Scalar,
    pub objective_value: ObjectiveValue,
    /// Squared normalized reduced cost of the entering variable at the basis
    /// the step leaves. Recorded for steepest-edge runs only.
    pub lambda_sq: Option<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Optimal,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexTrace {
    pub start: BasicSolution,
    pub steps: Vec<Step>,
    pub status: Status,
    pub rule: PivotRule,
}

impl SimplexTrace {
    pub fn final_vertex(&self) -> &[Scalar] {
        self.steps.last().map_or(&self.start.x, |s| &s.vertex)
    }

    pub fn final_basis(&self) -> &Basis {
        self.steps.last().map_or(&self.start.basis, |s| &s.basis)
    }

    /// Vertices in visiting order with consecutive repeats collapsed.
    pub fn vertex_path(&self) -> Vec<&[Scalar]> {
        let mut out: Vec<&[Scalar]> = vec![&self.start.x];
        for s in &self.steps {
            if out.last().is_some_and(|v| *v != s.vertex.as_slice()) {
                out.push(&s.vertex);
            }
        }
        out
    }

    pub fn nondegenerate_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.theta.is_positive()).count()
    }

    pub fn distinct_bfs(&self) -> usize {
        distinct_bfs_count(self)
    }
}

/// Number of distinct vertex vectors visited by a trace, start included.
pub fn distinct_bfs_count(trace: &SimplexTrace) -> usize {
    let mut seen: HashSet<&[Scalar]> = HashSet::new();
    seen.insert(&trace.start.x);
    for s in &trace.steps {
        seen.insert(&s.vertex);
    }
    seen.len()
}

fn context(
    lp: &LinearProgram,
    state: &BasisState,
    rule: &PivotRule,
) -> Result<(PivotContext, Vec<Vec<Scalar>>)> {
    let nonbasic = state.basis.nonbasic().to_vec();
    let mut dirs = Vec::with_capacity(nonbasic.len());
    let mut reduced = Vec::with_capacity(nonbasic.len());
    for &q in &nonbasic {
        let eta = state.direction(lp, q);
        reduced.push(lp.objective().evaluate(&eta));
        dirs.push(eta);
    }
    let zeta_sq = rule
        .needs_norms()
        .then(|| dirs.iter().map(|d| norm_sq(d)).collect());
    let improvement = if rule.needs_improvements() {
        let mut imp = Vec::with_capacity(nonbasic.len());
        for (i, eta) in dirs.iter().enumerate() {
            if reduced[i].is_negative() {
                let (_, theta) = ratio_along(&state.x, eta, &state.basis, &|j| j)
                    .ok_or(Error::Unbounded { entering: nonbasic[i] })?;
                imp.push(reduced[i].neg().scale(&theta));
            } else {
                imp.push(reduced[i].zero_like());
            }
        }
        Some(imp)
    } else {
        None
    };
    Ok((
        PivotContext {
            nonbasic,
            reduced,
            zeta_sq,
            improvement,
        },
        dirs,
    ))
}

/// Runs the primal simplex method from a feasible basis.
///
/// A repeated basis is reported as [`Error::Cycling`].
pub fn run_simplex(
    lp: &LinearProgram,
    start: &Basis,
    rule: &PivotRule,
    max_iters: usize,
) -> Result<SimplexTrace> {
    rule.validate(lp.num_vars())?;
    let mut state = BasisState::new(lp, start).map_err(|e| match e {
        Error::SingularBasis => Error::InfeasibleStart,
        e => e,
    })?;
    if state.first_negative().is_some() {
        return Err(Error::InfeasibleStart);
    }
    let start_sol = state.solution(lp);
    let positions = rule.positions();
    let mut seen: HashSet<Basis> = HashSet::new();
    seen.insert(state.basis.clone());
    let mut steps = Vec::new();
    let mut status = Status::IterationLimit;
    for _ in 0..max_iters {
        let (ctx, dirs) = context(lp, &state, rule)?;
        let q = match select_entering(rule, &ctx)? {
            Selection::Optimal => {
                status = Status::Optimal;
                break;
            }
            Selection::Enter(q) => q,
        };
        let lambda_sq = if rule.needs_norms() {
            Some(lambda_of(&ctx)?.0)
        } else {
            None
        };
        let qi = ctx.nonbasic.iter().position(|&j| j == q).expect("entering is nonbasic");
        let eta = &dirs[qi];
        let (leaving, theta) = match &positions {
            Some(pos) => ratio_along(&state.x, eta, &state.basis, &|j| pos[j]),
            None => ratio_along(&state.x, eta, &state.basis, &|j| j),
        }
        .ok_or(Error::Unbounded { entering: q })?;
        let basis = state.basis.exchange(q, leaving);
        let next = BasisState::new(lp, &basis)?;
        debug_assert!(next
            .x
            .iter()
            .zip(state.x.iter().zip(eta))
            .all(|(n, (x, e))| *n == x + &(&theta * e)));
        if !seen.insert(basis.clone()) {
            return Err(Error::Cycling {
                iterations: steps.len() + 1,
            });
        }
        state = next;
        steps.push(Step {
            basis,
            objective_value: lp.objective().evaluate(&state.x),
            vertex: state.x.clone(),
            entering: q,
            leaving,
            theta,
            lambda_sq,
        });
    }
    Ok(SimplexTrace {
        start: start_sol,
        steps,
        status,
        rule: rule.clone(),
    })
}

/// Finds a point of `{x : Ax = b, x >= 0}` by minimizing the sum of
/// artificial variables with Bland's rule. `None` when the system is empty.
pub fn find_feasible_point(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if m == 0 {
        return Ok(Some(vec![Scalar::zero(); n]));
    }
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Scalar> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }));
        rows.push(r);
        rhs.push(if flip { -bi } else { bi.clone() });
    }
    let c: Vec<Scalar> = (0..n + m)
        .map(|j| if j < n { Scalar::zero() } else { Scalar::one() })
        .collect();
    let names = (0..n + m).map(|j| format!("v{j}")).collect();
    let aux = LinearProgram::new("phase1", rows, rhs, Objective::numeric(c), names)?;
    let start = Basis::new((n..n + m).collect(), n + m)?;
    let trace = run_simplex(&aux, &start, &PivotRule::bland_identity(n + m), usize::MAX)?;
    let x = trace.final_vertex();
    if x[n..].iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    Ok(Some(x[..n].to_vec()))
}
