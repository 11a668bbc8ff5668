//! Polytope constants and the pivot-count bounds built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{BasisState, LinearProgram};
use crate::pivot::PivotRule;
use crate::scalar::{norm_sq, Scalar};
use crate::simplex::SimplexTrace;

/// Most column subsets visited by [`subdeterminant_extremes`].
pub const MAX_SUBSETS: u128 = 400_000;

/// Iteration cap used when no bound is available.
pub const FALLBACK_ITERATION_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolytopeConstants {
    pub gamma: Scalar,
    pub delta: Scalar,
    /// `None` for a single-vertex polytope.
    pub nu_sq: Option<Scalar>,
    pub mu_sq: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_abs: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_abs: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_supply: Option<Scalar>,
}

/// gamma/delta over positive coordinates of `points`; nu/mu over the
/// squared lengths of `points[i] - points[j]` for the listed edges.
pub fn compute_constants(points: &[Vec<Scalar>], edges: &[(usize, usize)]) -> Result<PolytopeConstants> {
    let mut pos = points.iter().flatten().filter(|v| v.is_positive());
    let first = pos.next().ok_or(Error::InvalidSpec("no positive coordinate".into()))?.clone();
    let (gamma, delta) = pos.fold((first.clone(), first), |(g, d), v| (g.max(v.clone()), d.min(v.clone())));
    let mut nu_sq: Option<Scalar> = None;
    let mut mu_sq: Option<Scalar> = None;
    for &(i, j) in edges {
        let d: Vec<Scalar> = points[i].iter().zip(&points[j]).map(|(a, b)| a - b).collect();
        let l = norm_sq(&d);
        nu_sq = Some(nu_sq.map_or(l.clone(), |v| v.max(l.clone())));
        mu_sq = Some(mu_sq.map_or(l.clone(), |v| v.min(l)));
    }
    Ok(PolytopeConstants {
        gamma,
        delta,
        nu_sq,
        mu_sq,
        delta_abs: None,
        lambda_abs: None,
        total_supply: None,
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Largest and smallest nonzero `|det|` over `m x m` column submatrices.
pub fn subdeterminant_extremes(lp: &LinearProgram) -> Result<(Scalar, Scalar)> {
    let (m, n) = (lp.num_rows(), lp.num_vars());
    let count = binomial(n, m);
    if count > MAX_SUBSETS {
        return Err(Error::TooLarge {
            what: "column subsets",
            size: count,
            limit: MAX_SUBSETS,
        });
    }
    let ints = linalg::as_i64_matrix(lp.a());
    let mut best: Option<(Scalar, Scalar)> = None;
    let mut cols: Vec<usize> = (0..m).collect();
    loop {
        let det = match &ints {
            Some(a) => {
                let sub: Vec<Vec<i64>> = a.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect();
                match linalg::determinant_i128(&sub) {
                    Some(d) => Scalar::from(num_bigint::BigInt::from(d)),
                    None => rational_det(lp, &cols),
                }
            }
            None => rational_det(lp, &cols),
        };
        if !det.is_zero() {
            let d = det.abs();
            best = Some(match best {
                None => (d.clone(), d),
                Some((hi, lo)) => (hi.max(d.clone()), lo.min(d)),
            });
        }
        // Next combination in lexicographic order.
        let Some(i) = (0..m).rev().find(|&i| cols[i] < n - m + i) else {
            break;
        };
        cols[i] += 1;
        for k in i + 1..m {
            cols[k] = cols[k - 1] + 1;
        }
    }
    best.ok_or(Error::RankDeficient)
}

fn rational_det(lp: &LinearProgram, cols: &[usize]) -> Scalar {
    let sub: Vec<Vec<Scalar>> = lp.a().iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
    linalg::determinant(&sub)
}

/// `||B^{-1} A_k||^2 <= m Delta^2 / lambda^2`, exactly.
pub fn check_basis_column_bound(
    lp: &LinearProgram,
    basis: &crate::lp::Basis,
    k: usize,
    delta_abs: &Scalar,
    lambda_abs: &Scalar,
) -> Result<bool> {
    let st = BasisState::new(lp, basis)?;
    let col = st.solve_column(lp, k);
    let m = Scalar::from_int(lp.num_rows() as i64);
    Ok(norm_sq(&col) * lambda_abs.square() <= m * delta_abs.square())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    General,
    Improved,
    Steepest,
    Subdeterminant,
    Transportation,
    FpmDantzig,
    FmDantzig,
    BirkhoffDantzig,
    ShortestPathDantzig,
    FpmSteepest,
    FmSteepest,
    BirkhoffSteepest,
    ShortestPathSteepest,
}

impl BoundName {
    pub const ALL: [BoundName; 13] = [
        BoundName::General,
        BoundName::Improved,
        BoundName::Steepest,
        BoundName::Subdeterminant,
        BoundName::Transportation,
        BoundName::FpmDantzig,
        BoundName::FmDantzig,
        BoundName::BirkhoffDantzig,
        BoundName::ShortestPathDantzig,
        BoundName::FpmSteepest,
        BoundName::FmSteepest,
        BoundName::BirkhoffSteepest,
        BoundName::ShortestPathSteepest,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::General => "general",
            BoundName::Improved => "improved",
            BoundName::Steepest => "steepest",
            BoundName::Subdeterminant => "subdeterminant",
            BoundName::Transportation => "transportation",
            BoundName::FpmDantzig => "fpm_dantzig",
            BoundName::FmDantzig => "fm_dantzig",
            BoundName::BirkhoffDantzig => "birkhoff_dantzig",
            BoundName::ShortestPathDantzig => "shortest_path_dantzig",
            BoundName::FpmSteepest => "fpm_steepest",
            BoundName::FmSteepest => "fm_steepest",
            BoundName::BirkhoffSteepest => "birkhoff_steepest",
            BoundName::ShortestPathSteepest => "shortest_path_steepest",
        }
    }

    /// Whether the bound covers runs of `rule`.
    pub fn applies_to(&self, rule: &PivotRule) -> bool {
        let steepest = matches!(
            self,
            BoundName::Steepest
                | BoundName::Subdeterminant
                | BoundName::FpmSteepest
                | BoundName::FmSteepest
                | BoundName::BirkhoffSteepest
                | BoundName::ShortestPathSteepest
        );
        match rule {
            PivotRule::SteepestEdge => steepest,
            PivotRule::Dantzig | PivotRule::GreatestImprovement => !steepest,
            PivotRule::Bland { .. } => false,
        }
    }

    /// Bounds whose parameters only depend on the family.
    pub fn family_bounds(family: &str) -> &'static [BoundName] {
        match family {
            "fpm" => &[BoundName::FpmDantzig, BoundName::FpmSteepest],
            "fm" => &[BoundName::FmDantzig, BoundName::FmSteepest],
            "birkhoff" => &[BoundName::BirkhoffDantzig, BoundName::BirkhoffSteepest],
            "shortest_path" => &[BoundName::ShortestPathDantzig, BoundName::ShortestPathSteepest],
            "transportation" => &[BoundName::Transportation],
            _ => &[],
        }
    }
}

impl std::fmt::Display for BoundName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BoundName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundName::ALL
            .iter()
            .find(|b| b.as_str() == s)
            .copied()
            .ok_or_else(|| Error::InvalidSpec(format!("unknown bound {s}")))
    }
}

/// Parameters of a bound evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundInput {
    pub num_vars: usize,
    pub num_rows: usize,
    pub constants: PolytopeConstants,
    /// Node count of the family (graph nodes, Birkhoff order, path nodes).
    #[serde(default)]
    pub family_n: Option<usize>,
    /// Edge count of the underlying graph for FM/FPM.
    #[serde(default)]
    pub family_m: Option<usize>,
    #[serde(default)]
    pub b_inf: Option<Scalar>,
}

fn need<'a, T>(v: &'a Option<T>, bound: BoundName, constant: &'static str) -> Result<&'a T> {
    v.as_ref().ok_or(Error::MissingConstant {
        bound: bound.to_string(),
        constant,
    })
}

fn finish(outer: f64, bracket: f64) -> u64 {
    let v = outer * bracket.ceil();
    if v.is_finite() {
        (v.max(1.0)) as u64
    } else {
        u64::MAX
    }
}

/// Evaluates a bound: brackets are ceilings, logarithms natural, results at
/// least 1. Brackets that take square roots get a margin of 1 before the
/// ceiling.
pub fn evaluate_bound(name: BoundName, p: &BoundInput) -> Result<u64> {
    let c = &p.constants;
    let n = p.num_vars as f64;
    let m = p.num_rows as f64;
    let ratio = (&c.gamma / &c.delta).to_f64();
    let sqrt_of = |v: &Scalar| v.to_f64().sqrt();
    let fam_n = || need(&p.family_n, name, "family n").map(|&v| v as f64);
    let fam_m = || need(&p.family_m, name, "family m").map(|&v| v as f64);
    Ok(match name {
        BoundName::General => finish(n, m * ratio * (m * ratio).ln()),
        BoundName::Improved => {
            let k = m.min(n - m);
            finish(n - m, k * ratio * (k * ratio).ln())
        }
        BoundName::Steepest => {
            let nu = sqrt_of(need(&c.nu_sq, name, "nu")?);
            let mu = sqrt_of(need(&c.mu_sq, name, "mu")?);
            finish(n, m * ratio * nu / mu * (m * ratio).ln() + 1.0)
        }
        BoundName::Subdeterminant => {
            let d = need(&c.delta_abs, name, "Delta")?.to_f64();
            let l = need(&c.lambda_abs, name, "lambda")?.to_f64();
            finish(n, m * (2.0 * m).sqrt() * ratio * ratio * d / l * (m * ratio).ln() + 1.0)
        }
        BoundName::Transportation => {
            let s = need(&c.total_supply, name, "S")?.to_f64();
            let b = need(&p.b_inf, name, "b_inf")?.to_f64();
            finish(n, s * (m * b).ln())
        }
        BoundName::FpmDantzig => {
            let v = fam_n()?;
            finish(fam_m()?, v * (2.0 * v).ln())
        }
        BoundName::FmDantzig => {
            let v = fam_n()?;
            finish(fam_m()?, 2.0 * v * (2.0 * v).ln())
        }
        BoundName::BirkhoffDantzig => {
            let v = fam_n()?;
            finish(v * v, v * (2.0 * v - 1.0).ln())
        }
        BoundName::ShortestPathDantzig => {
            let v = fam_n()?;
            finish(v * v - 2.0 * v + 1.0, (v - 1.0) * (v - 1.0).ln())
        }
        BoundName::FpmSteepest => {
            let v = fam_n()?;
            finish(fam_m()?, 2.0 * v * v.sqrt() * (2.0 * v).ln() + 1.0)
        }
        BoundName::FmSteepest => {
            let v = fam_n()?;
            finish(fam_m()?, 4.0 * v * (2.0 * v).sqrt() * (2.0 * v).ln() + 1.0)
        }
        BoundName::BirkhoffSteepest => {
            let v = fam_n()?;
            finish(v * v, v * (v / 2.0).sqrt() * (2.0 * v - 1.0).ln() + 1.0)
        }
        BoundName::ShortestPathSteepest => {
            let v = fam_n()?;
            finish(v * v - 2.0 * v + 1.0, (v - 1.0) * (2.0 * v / 3.0).sqrt() * (v - 1.0).ln() + 1.0)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub rule: String,
    pub bound_name: BoundName,
    pub bound_value: u64,
    pub observed_distinct_bfs: u64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn new(rule: &PivotRule, bound_name: BoundName, bound_value: u64, observed: usize) -> Self {
        BoundReport {
            rule: rule.name().to_string(),
            bound_name,
            bound_value,
            observed_distinct_bfs: observed as u64,
            satisfied: observed as u64 <= bound_value,
        }
    }
}

/// Ten times the general bound, or a fixed cap without constants.
pub fn iteration_cap(input: Option<&BoundInput>) -> usize {
    input
        .and_then(|p| evaluate_bound(BoundName::General, p).ok())
        .map_or(FALLBACK_ITERATION_CAP, |b| b.saturating_mul(10).min(10_000_000) as usize)
}

/// Per-run outcome of the steepest-edge gap checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SteepestChecks {
    pub iterates: usize,
    pub gap_violations: usize,
    pub contraction_steps: usize,
    pub contraction_violations: usize,
}

impl SteepestChecks {
    pub fn passed(&self) -> bool {
        self.gap_violations == 0 && self.contraction_violations == 0
    }

    pub fn absorb(&mut self, other: &SteepestChecks) {
        self.iterates += other.iterates;
        self.gap_violations += other.gap_violations;
        self.contraction_steps += other.contraction_steps;
        self.contraction_violations += other.contraction_violations;
    }
}

/// Checks `z* >= c x_t - Lambda_t m nu gamma` at every iterate leaving a
/// basis, and `g_{t+1} <= (1 - mu delta / (m nu gamma)) g_t` for the gap
/// `g = c x - z*` on nondegenerate steps. Squared forms keep it exact.
pub fn steepest_checks(
    trace: &SimplexTrace,
    z_star: &Scalar,
    num_rows: usize,
    constants: &PolytopeConstants,
) -> Result<SteepestChecks> {
    if trace.steps.is_empty() {
        return Ok(SteepestChecks::default());
    }
    let nu_sq = need(&constants.nu_sq, BoundName::Steepest, "nu")?;
    let mu_sq = need(&constants.mu_sq, BoundName::Steepest, "mu")?;
    let m_sq = Scalar::from_int((num_rows * num_rows) as i64);
    let scale = &(&m_sq * nu_sq) * &constants.gamma.square();
    let gap_of = |v: &crate::lp::ObjectiveValue| -> Result<Scalar> {
        let c = v.as_numeric().ok_or(Error::KindMismatch)?;
        Ok(c - z_star)
    };
    let mut out = SteepestChecks::default();
    let mut prev_gap = gap_of(&trace.start.objective_value)?;
    for step in &trace.steps {
        let lambda_sq = step.lambda_sq.as_ref().ok_or(Error::MissingContext("lambda"))?;
        out.iterates += 1;
        if prev_gap.is_negative() || prev_gap.square() > lambda_sq * &scale {
            out.gap_violations += 1;
        }
        let gap = gap_of(&step.objective_value)?;
        if step.theta.is_positive() {
            out.contraction_steps += 1;
            let drop = &prev_gap - &gap;
            let lhs = &drop.square() * &scale;
            let rhs = &(mu_sq * &constants.delta.square()) * &prev_gap.square();
            if drop.is_negative() || lhs < rhs {
                out.contraction_violations += 1;
            }
        }
        prev_gap = gap;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Objective;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn lp(a: &[&[i64]]) -> LinearProgram {
        let a: Vec<Vec<Scalar>> = a.iter().map(|r| ints(r)).collect();
        let n = a[0].len();
        let b = vec![Scalar::one(); a.len()];
        let names = (0..n).map(|j| format!("x{j}")).collect();
        LinearProgram::new("t", a, b, Objective::numeric(vec![Scalar::zero(); n]), names).unwrap()
    }

    #[test]
    fn subdeterminants() {
        let (hi, lo) = subdeterminant_extremes(&lp(&[&[1, 0, 1], &[0, 1, 1]])).unwrap();
        assert_eq!((hi, lo), (Scalar::one(), Scalar::one()));
        let (hi, lo) = subdeterminant_extremes(&lp(&[&[1, 0, 2], &[0, 1, 3]])).unwrap();
        assert_eq!((hi, lo), (Scalar::from_int(3), Scalar::one()));
    }

    fn input(n: usize, m: usize, ratio: i64) -> BoundInput {
        BoundInput {
            num_vars: n,
            num_rows: m,
            constants: PolytopeConstants {
                gamma: Scalar::from_int(ratio),
                delta: Scalar::one(),
                nu_sq: None,
                mu_sq: None,
                delta_abs: None,
                lambda_abs: None,
                total_supply: None,
            },
            family_n: None,
            family_m: None,
            b_inf: None,
        }
    }

    #[test]
    fn bound_examples() {
        let mut p = input(9, 5, 1);
        p.family_n = Some(3);
        assert_eq!(evaluate_bound(BoundName::BirkhoffDantzig, &p).unwrap(), 45);
        let mut p = input(6, 5, 1);
        p.constants.total_supply = Some(Scalar::from_int(10));
        p.b_inf = Some(Scalar::from_int(4));
        assert_eq!(evaluate_bound(BoundName::Transportation, &p).unwrap(), 180);
        assert_eq!(evaluate_bound(BoundName::General, &input(2, 1, 1)).unwrap(), 1);
        assert!(matches!(
            evaluate_bound(BoundName::Steepest, &input(2, 1, 1)),
            Err(Error::MissingConstant { .. })
        ));
    }

    #[test]
    fn rule_applicability() {
        assert!(BoundName::General.applies_to(&PivotRule::Dantzig));
        assert!(!BoundName::General.applies_to(&PivotRule::SteepestEdge));
        assert!(BoundName::Subdeterminant.applies_to(&PivotRule::SteepestEdge));
        assert!(!BoundName::FpmDantzig.applies_to(&PivotRule::bland_identity(3)));
    }

    #[test]
    fn constants_of_square() {
        let pts = vec![ints(&[0, 0]), ints(&[2, 0]), ints(&[2, 1]), ints(&[0, 1])];
        let c = compute_constants(&pts, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(c.gamma, Scalar::from_int(2));
        assert_eq!(c.delta, Scalar::one());
        assert_eq!(c.nu_sq, Some(Scalar::from_int(4)));
        assert_eq!(c.mu_sq, Some(Scalar::one()));
    }
}
