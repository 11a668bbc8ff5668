//! Entering-variable selection for the four pivot rules.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{compare, ObjectiveValue};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum PivotRule {
    /// Enter the first improving variable in `ordering`.
    Bland { ordering: Vec<usize> },
    Dantzig,
    #[serde(rename = "greatest")]
    GreatestImprovement,
    #[serde(rename = "steepest")]
    SteepestEdge,
}

impl PivotRule {
    pub fn bland_identity(n: usize) -> Self {
        PivotRule::Bland {
            ordering: (0..n).collect(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PivotRule::Bland { .. } => "bland",
            PivotRule::Dantzig => "dantzig",
            PivotRule::GreatestImprovement => "greatest",
            PivotRule::SteepestEdge => "steepest",
        }
    }

    /// Parses `bland`, `dantzig`, `greatest` or `steepest`; Bland gets the
    /// identity ordering on `n` variables.
    pub fn parse(name: &str, n: usize) -> Result<Self> {
        match name.trim() {
            "bland" => Ok(PivotRule::bland_identity(n)),
            "dantzig" => Ok(PivotRule::Dantzig),
            "greatest" | "greatest_improvement" => Ok(PivotRule::GreatestImprovement),
            "steepest" | "steepest_edge" => Ok(PivotRule::SteepestEdge),
            other => Err(Error::InvalidSpec(format!("unknown pivot rule `{other}`"))),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if let PivotRule::Bland { ordering } = self {
            let mut seen = vec![false; n];
            if ordering.len() != n {
                return Err(Error::InvalidOrdering);
            }
            for &j in ordering {
                if j >= n || seen[j] {
                    return Err(Error::InvalidOrdering);
                }
                seen[j] = true;
            }
        }
        Ok(())
    }

    /// Position of every variable in the Bland ordering, if any.
    pub fn positions(&self) -> Option<Vec<usize>> {
        match self {
            PivotRule::Bland { ordering } => {
                let mut pos = vec![0; ordering.len()];
                for (p, &j) in ordering.iter().enumerate() {
                    pos[j] = p;
                }
                Some(pos)
            }
            _ => None,
        }
    }

    pub fn needs_norms(&self) -> bool {
        matches!(self, PivotRule::SteepestEdge)
    }

    pub fn needs_improvements(&self) -> bool {
        matches!(self, PivotRule::GreatestImprovement)
    }
}

/// Reduced-cost data over the nonbasic variables, all vectors aligned with
/// `nonbasic`.
#[derive(Debug, Clone, Default)]
pub struct PivotContext {
    pub nonbasic: Vec<usize>,
    pub reduced: Vec<ObjectiveValue>,
    pub zeta_sq: Option<Vec<Scalar>>,
    /// `theta_q * (-cbar_q)` for improving candidates, zero elsewhere.
    pub improvement: Option<Vec<ObjectiveValue>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    Enter(usize),
    Optimal,
}

impl PivotContext {
    fn improving(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nonbasic.len()).filter(|&i| self.reduced[i].is_negative())
    }
}

fn numeric<'a>(v: &'a ObjectiveValue, rule: &'static str) -> Result<&'a Scalar> {
    v.as_numeric().ok_or(Error::MissingContext(rule))
}

/// `cbar_a / zeta_a < cbar_b / zeta_b` for negative reduced costs, compared
/// through squares.
fn normalized_less(ca: &Scalar, za: &Scalar, cb: &Scalar, zb: &Scalar) -> bool {
    (ca.square() * zb).cmp(&(cb.square() * za)) == Ordering::Greater
}

pub fn select_entering(rule: &PivotRule, ctx: &PivotContext) -> Result<Selection> {
    let mut best: Option<usize> = None;
    match rule {
        PivotRule::Bland { ordering } => {
            let mut pos = vec![usize::MAX; ordering.len()];
            for (p, &j) in ordering.iter().enumerate() {
                pos[j] = p;
            }
            for i in ctx.improving() {
                let key = pos.get(ctx.nonbasic[i]).copied().unwrap_or(usize::MAX);
                if best.is_none_or(|b| key < pos[ctx.nonbasic[b]]) {
                    best = Some(i);
                }
            }
        }
        PivotRule::Dantzig => {
            for i in ctx.improving() {
                best = match best {
                    None => Some(i),
                    Some(b) => match compare(&ctx.reduced[i], &ctx.reduced[b])? {
                        Ordering::Less => Some(i),
                        Ordering::Equal if ctx.nonbasic[i] < ctx.nonbasic[b] => Some(i),
                        _ => Some(b),
                    },
                };
            }
        }
        PivotRule::GreatestImprovement => {
            let imp = ctx
                .improvement
                .as_ref()
                .ok_or(Error::MissingContext("greatest improvement needs step lengths"))?;
            for i in ctx.improving() {
                let v = numeric(&imp[i], "greatest improvement needs a numeric objective")?;
                best = match best {
                    None => Some(i),
                    Some(b) => {
                        let bv = numeric(&imp[b], "greatest improvement needs a numeric objective")?;
                        match v.cmp(bv) {
                            Ordering::Greater => Some(i),
                            Ordering::Equal if ctx.nonbasic[i] < ctx.nonbasic[b] => Some(i),
                            _ => Some(b),
                        }
                    }
                };
            }
        }
        PivotRule::SteepestEdge => {
            let z = ctx
                .zeta_sq
                .as_ref()
                .ok_or(Error::MissingContext("steepest edge needs edge norms"))?;
            for i in ctx.improving() {
                let c = numeric(&ctx.reduced[i], "steepest edge needs a numeric objective")?;
                best = match best {
                    None => Some(i),
                    Some(b) => {
                        let cb = numeric(&ctx.reduced[b], "steepest edge needs a numeric objective")?;
                        if normalized_less(c, &z[i], cb, &z[b])
                            || (!normalized_less(cb, &z[b], c, &z[i])
                                && ctx.nonbasic[i] < ctx.nonbasic[b])
                        {
                            Some(i)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
        }
    }
    Ok(best.map_or(Selection::Optimal, |i| Selection::Enter(ctx.nonbasic[i])))
}

/// `Lambda = -cbar_q / zeta_q` at the steepest-edge choice, returned as
/// `(Lambda^2, sign)` with sign always `+1`.
pub fn lambda_of(ctx: &PivotContext) -> Result<(Scalar, i32)> {
    let q = match select_entering(&PivotRule::SteepestEdge, ctx)? {
        Selection::Optimal => return Err(Error::AlreadyOptimal),
        Selection::Enter(q) => q,
    };
    let i = ctx.nonbasic.iter().position(|&j| j == q).expect("chosen variable is nonbasic");
    let z = &ctx.zeta_sq.as_ref().expect("checked by select_entering")[i];
    let c = numeric(&ctx.reduced[i], "steepest edge needs a numeric objective")?;
    Ok((c.square() / z, 1))
}
