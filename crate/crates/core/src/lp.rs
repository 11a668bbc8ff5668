//! Equality-form linear programs `min c^T x  s.t. Ax = b, x >= 0`, bases and
//! the basic algebra the simplex engine is built from.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{dot, norm_sq, Scalar};

/// Cost function: a rational vector, or a symbolic lexicographic order.
///
/// `Lex { rank }` stands for the cost `sum_j x_j * alpha^rank[j]` with an
/// infinitesimal `alpha > 0`; it is never instantiated numerically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Objective {
    Numeric { c: Vec<Scalar> },
    Lex { rank: Vec<usize> },
}

impl Objective {
    pub fn numeric(c: Vec<Scalar>) -> Self {
        Objective::Numeric { c }
    }

    pub fn lex(rank: Vec<usize>) -> Self {
        Objective::Lex { rank }
    }

    /// Lexicographic objective ranking variables in index order.
    pub fn lex_identity(n: usize) -> Self {
        Objective::Lex {
            rank: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Objective::Numeric { c } => c.len(),
            Objective::Lex { rank } => rank.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Objective::Numeric { .. })
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::InvalidSpec(format!(
                "objective has {} entries, expected {n}",
                self.len()
            )));
        }
        if let Objective::Lex { rank } = self {
            let set: BTreeSet<usize> = rank.iter().copied().collect();
            if set.len() != n || set.iter().next_back().is_some_and(|&r| r >= n) {
                return Err(Error::InvalidSpec(
                    "lexicographic rank must be a permutation of the variables".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[Scalar]) -> ObjectiveValue {
        match self {
            Objective::Numeric { c } => ObjectiveValue::Numeric(dot(c, x)),
            Objective::Lex { rank } => {
                let mut terms: Vec<(usize, Scalar)> = x
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (rank[j], v.clone()))
                    .collect();
                terms.sort_by_key(|t| t.0);
                ObjectiveValue::Lex(terms)
            }
        }
    }

    /// Cost of a single variable, as an objective value.
    pub fn coefficient(&self, j: usize) -> ObjectiveValue {
        match self {
            Objective::Numeric { c } => ObjectiveValue::Numeric(c[j].clone()),
            Objective::Lex { rank } => ObjectiveValue::Lex(vec![(rank[j], Scalar::one())]),
        }
    }

    /// Numeric instantiation `alpha^rank` of a lexicographic objective.
    pub fn instantiate(&self, alpha: &Scalar) -> Vec<Scalar> {
        match self {
            Objective::Numeric { c } => c.clone(),
            Objective::Lex { rank } => rank
                .iter()
                .map(|&r| (0..r).fold(Scalar::one(), |acc, _| acc * alpha))
                .collect(),
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Objective {
        match self {
            Objective::Numeric { c } => Objective::Numeric {
                c: c.iter().map(|v| v * factor).collect(),
            },
            Objective::Lex { .. } => self.clone(),
        }
    }
}

/// Value of an [`Objective`] at a point, or of a direction.
///
/// `Lex` holds the nonzero coefficients of the formal power series in
/// `alpha`, sorted by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectiveValue {
    Numeric(Scalar),
    Lex(Vec<(usize, Scalar)>),
}

impl ObjectiveValue {
    pub fn zero_like(&self) -> ObjectiveValue {
        match self {
            ObjectiveValue::Numeric(_) => ObjectiveValue::Numeric(Scalar::zero()),
            ObjectiveValue::Lex(_) => ObjectiveValue::Lex(Vec::new()),
        }
    }

    /// Sign of the value; for `Lex` the sign of the leading coefficient.
    pub fn signum(&self) -> i32 {
        match self {
            ObjectiveValue::Numeric(v) => v.signum(),
            ObjectiveValue::Lex(t) => t.first().map_or(0, |(_, c)| c.signum()),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn as_numeric(&self) -> Option<&Scalar> {
        match self {
            ObjectiveValue::Numeric(v) => Some(v),
            ObjectiveValue::Lex(_) => None,
        }
    }

    pub fn neg(&self) -> ObjectiveValue {
        match self {
            ObjectiveValue::Numeric(v) => ObjectiveValue::Numeric(-v),
            ObjectiveValue::Lex(t) => {
                ObjectiveValue::Lex(t.iter().map(|(r, c)| (*r, -c)).collect())
            }
        }
    }

    pub fn scale(&self, f: &Scalar) -> ObjectiveValue {
        match self {
            ObjectiveValue::Numeric(v) => ObjectiveValue::Numeric(v * f),
            ObjectiveValue::Lex(t) => {
                if f.is_zero() {
                    ObjectiveValue::Lex(Vec::new())
                } else {
                    ObjectiveValue::Lex(t.iter().map(|(r, c)| (*r, c * f)).collect())
                }
            }
        }
    }

    fn combine(&self, other: &ObjectiveValue, sign: i32) -> Result<ObjectiveValue> {
        match (self, other) {
            (ObjectiveValue::Numeric(a), ObjectiveValue::Numeric(b)) => Ok(ObjectiveValue::Numeric(
                if sign > 0 { a + b } else { a - b },
            )),
            (ObjectiveValue::Lex(a), ObjectiveValue::Lex(b)) => {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
                    let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
                    if take_a {
                        out.push(a[i].clone());
                        i += 1;
                    } else if take_b {
                        let c = if sign > 0 { b[j].1.clone() } else { -&b[j].1 };
                        out.push((b[j].0, c));
                        j += 1;
                    } else {
                        let c = if sign > 0 { &a[i].1 + &b[j].1 } else { &a[i].1 - &b[j].1 };
                        if !c.is_zero() {
                            out.push((a[i].0, c));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                Ok(ObjectiveValue::Lex(out))
            }
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn add(&self, other: &ObjectiveValue) -> Result<ObjectiveValue> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &ObjectiveValue) -> Result<ObjectiveValue> {
        self.combine(other, -1)
    }

    /// Evaluates a lexicographic value at a concrete `alpha`.
    pub fn instantiate(&self, alpha: &Scalar) -> Scalar {
        match self {
            ObjectiveValue::Numeric(v) => v.clone(),
            ObjectiveValue::Lex(t) => t
                .iter()
                .map(|(r, c)| c * &(0..*r).fold(Scalar::one(), |acc, _| acc * alpha))
                .sum(),
        }
    }
}

/// Total order on objective values of one kind.
///
/// Lexicographic values compare by the sign of the lowest-rank nonzero
/// coefficient of their difference.
pub fn compare(a: &ObjectiveValue, b: &ObjectiveValue) -> Result<Ordering> {
    match (a, b) {
        (ObjectiveValue::Numeric(x), ObjectiveValue::Numeric(y)) => Ok(x.cmp(y)),
        (ObjectiveValue::Lex(_), ObjectiveValue::Lex(_)) => {
            let d = a.sub(b)?;
            Ok(d.signum().cmp(&0))
        }
        _ => Err(Error::KindMismatch),
    }
}

/// Index sets of a basis. Both lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Basis {
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

impl Basis {
    pub fn new(mut basic: Vec<usize>, num_vars: usize) -> Result<Self> {
        basic.sort_unstable();
        basic.dedup();
        if basic.last().is_some_and(|&j| j >= num_vars) {
            return Err(Error::InvalidSpec("basis index out of range".into()));
        }
        let set: BTreeSet<usize> = basic.iter().copied().collect();
        let nonbasic = (0..num_vars).filter(|j| !set.contains(j)).collect();
        Ok(Basis { basic, nonbasic })
    }

    pub fn basic(&self) -> &[usize] {
        &self.basic
    }

    pub fn nonbasic(&self) -> &[usize] {
        &self.nonbasic
    }

    pub fn is_basic(&self, j: usize) -> bool {
        self.basic.binary_search(&j).is_ok()
    }

    /// Position of variable `j` inside the basic list.
    pub fn position(&self, j: usize) -> Option<usize> {
        self.basic.binary_search(&j).ok()
    }

    /// Basis after `entering` replaces `leaving`.
    pub fn exchange(&self, entering: usize, leaving: usize) -> Basis {
        let mut basic: Vec<usize> = self.basic.iter().copied().filter(|&j| j != leaving).collect();
        basic.push(entering);
        basic.sort_unstable();
        let mut nonbasic: Vec<usize> =
            self.nonbasic.iter().copied().filter(|&j| j != entering).collect();
        nonbasic.push(leaving);
        nonbasic.sort_unstable();
        Basis { basic, nonbasic }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasicSolution {
    pub basis: Basis,
    pub x: Vec<Scalar>,
    pub objective_value: ObjectiveValue,
}

impl BasicSolution {
    pub fn is_nondegenerate(&self) -> bool {
        self.basis.basic().iter().all(|&j| self.x[j].is_positive())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    name: String,
    a: Matrix,
    b: Vec<Scalar>,
    objective: Objective,
    variable_names: Vec<String>,
    dropped_rows: Vec<usize>,
}

impl LinearProgram {
    /// Builds an LP whose constraint matrix must already have full row rank.
    pub fn new(
        name: impl Into<String>,
        a: Matrix,
        b: Vec<Scalar>,
        objective: Objective,
        variable_names: Vec<String>,
    ) -> Result<Self> {
        let m = a.len();
        let n = variable_names.len();
        if b.len() != m || a.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSpec("inconsistent LP dimensions".into()));
        }
        if m > n {
            return Err(Error::InvalidSpec(format!("need m <= n, got m={m}, n={n}")));
        }
        objective.validate(n)?;
        if linalg::rank(&a) != m {
            return Err(Error::RankDeficient);
        }
        Ok(LinearProgram {
            name: name.into(),
            a,
            b,
            objective,
            variable_names,
            dropped_rows: Vec::new(),
        })
    }

    /// Builds an LP from a possibly redundant equality system, dropping
    /// dependent rows starting from the last one.
    pub fn from_equalities(
        name: impl Into<String>,
        mut a: Matrix,
        mut b: Vec<Scalar>,
        objective: Objective,
        variable_names: Vec<String>,
    ) -> Result<Self> {
        let full = linalg::rank(&a);
        let mut dropped = Vec::new();
        let mut i = a.len();
        while a.len() > full && i > 0 {
            i -= 1;
            let mut trial = a.clone();
            trial.remove(i);
            if linalg::rank(&trial) == full {
                a = trial;
                b.remove(i);
                dropped.push(i);
            }
        }
        dropped.reverse();
        let mut lp = LinearProgram::new(name, a, b, objective, variable_names)?;
        lp.dropped_rows = dropped;
        Ok(lp)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }

    pub fn num_vars(&self) -> usize {
        self.variable_names.len()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    pub fn dropped_rows(&self) -> &[usize] {
        &self.dropped_rows
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.a.iter().map(|r| r[j].clone()).collect()
    }

    pub fn with_objective(&self, objective: Objective) -> Result<LinearProgram> {
        objective.validate(self.num_vars())?;
        let mut lp = self.clone();
        lp.objective = objective;
        Ok(lp)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Checks `Ax = b` and `x >= 0` exactly.
    pub fn is_feasible_point(&self, x: &[Scalar]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.a.iter().zip(&self.b).all(|(row, bi)| &dot(row, x) == bi)
    }

    /// A basis whose basic solution is the vertex `x`: the support of `x`
    /// completed greedily in index order.
    pub fn basis_for_vertex(&self, x: &[Scalar]) -> Result<Basis> {
        let m = self.num_rows();
        let mut cols: Vec<usize> = (0..self.num_vars()).filter(|&j| !x[j].is_zero()).collect();
        if cols.len() > m || linalg::column_rank(&self.a, &cols) != cols.len() {
            return Err(Error::SingularBasis);
        }
        for j in 0..self.num_vars() {
            if cols.len() == m {
                break;
            }
            if x[j].is_zero() {
                cols.push(j);
                if linalg::column_rank(&self.a, &cols) != cols.len() {
                    cols.pop();
                }
            }
        }
        let basis = Basis::new(cols, self.num_vars())?;
        let sol = solve_basis(self, &basis)?;
        if sol.x != x {
            return Err(Error::InvalidSpec("point is not the basic solution of its support".into()));
        }
        Ok(basis)
    }

    pub fn to_file(&self) -> LpFile {
        LpFile {
            name: self.name.clone(),
            num_vars: self.num_vars(),
            num_rows: self.num_rows(),
            a: self.a.clone(),
            b: self.b.clone(),
            objective: self.objective.clone(),
            variable_names: self.variable_names.clone(),
            dropped_rows: self.dropped_rows.clone(),
        }
    }

    pub fn from_file(f: LpFile) -> Result<Self> {
        if f.a.len() != f.num_rows || f.variable_names.len() != f.num_vars {
            return Err(Error::Format("declared sizes disagree with data".into()));
        }
        let mut lp = LinearProgram::new(f.name, f.a, f.b, f.objective, f.variable_names)?;
        lp.dropped_rows = f.dropped_rows;
        Ok(lp)
    }
}

/// Serialized LP instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpFile {
    pub name: String,
    pub num_vars: usize,
    pub num_rows: usize,
    #[serde(rename = "A")]
    pub a: Matrix,
    pub b: Vec<Scalar>,
    pub objective: Objective,
    pub variable_names: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dropped_rows: Vec<usize>,
}

/// Per-basis workspace: `B^{-1}` and the basic solution.
#[derive(Debug, Clone)]
pub struct BasisState {
    pub basis: Basis,
    binv: Matrix,
    pub x: Vec<Scalar>,
}

impl BasisState {
    pub fn new(lp: &LinearProgram, basis: &Basis) -> Result<Self> {
        if basis.basic().len() != lp.num_rows() {
            return Err(Error::SingularBasis);
        }
        let bmat: Matrix = lp
            .a
            .iter()
            .map(|row| basis.basic().iter().map(|&j| row[j].clone()).collect())
            .collect();
        let binv = linalg::inverse(&bmat).ok_or(Error::SingularBasis)?;
        let xb = linalg::mat_vec(&binv, &lp.b);
        let mut x = vec![Scalar::zero(); lp.num_vars()];
        for (pos, &j) in basis.basic().iter().enumerate() {
            x[j] = xb[pos].clone();
        }
        Ok(BasisState {
            basis: basis.clone(),
            binv,
            x,
        })
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.basis.basic().iter().copied().find(|&j| self.x[j].is_negative())
    }

    /// `B^{-1} A_j`.
    pub fn solve_column(&self, lp: &LinearProgram, j: usize) -> Vec<Scalar> {
        let col = lp.column(j);
        linalg::mat_vec(&self.binv, &col)
    }

    /// Edge direction for `entering`: `+1` at the entering coordinate and
    /// `-B^{-1} A_q` on the basic coordinates.
    pub fn direction(&self, lp: &LinearProgram, entering: usize) -> Vec<Scalar> {
        let w = self.solve_column(lp, entering);
        let mut eta = vec![Scalar::zero(); lp.num_vars()];
        for (pos, &j) in self.basis.basic().iter().enumerate() {
            eta[j] = -&w[pos];
        }
        eta[entering] = Scalar::one();
        eta
    }

    pub fn solution(&self, lp: &LinearProgram) -> BasicSolution {
        BasicSolution {
            basis: self.basis.clone(),
            x: self.x.clone(),
            objective_value: lp.objective.evaluate(&self.x),
        }
    }
}

/// Exact basic solution `x_B = B^{-1} b`, `x_N = 0`.
pub fn solve_basis(lp: &LinearProgram, basis: &Basis) -> Result<BasicSolution> {
    let st = BasisState::new(lp, basis)?;
    if let Some(variable) = st.first_negative() {
        return Err(Error::InfeasibleBasis { variable });
    }
    Ok(st.solution(lp))
}

/// Reduced costs `c_N - c_B^T B^{-1} N`, paired with their nonbasic index.
pub fn reduced_costs(lp: &LinearProgram, basis: &Basis) -> Result<Vec<(usize, ObjectiveValue)>> {
    let st = BasisState::new(lp, basis)?;
    Ok(basis
        .nonbasic()
        .iter()
        .map(|&q| (q, lp.objective.evaluate(&st.direction(lp, q))))
        .collect())
}

/// Edge direction and its squared Euclidean norm.
pub fn edge_direction(
    lp: &LinearProgram,
    basis: &Basis,
    entering: usize,
) -> Result<(Vec<Scalar>, Scalar)> {
    if basis.is_basic(entering) {
        return Err(Error::InvalidSpec(format!("variable {entering} is basic")));
    }
    let st = BasisState::new(lp, basis)?;
    let eta = st.direction(lp, entering);
    let z = norm_sq(&eta);
    Ok((eta, z))
}

/// Minimum-ratio test along `eta` from `x`; ties go to the smallest key.
pub(crate) fn ratio_along(
    x: &[Scalar],
    eta: &[Scalar],
    basis: &Basis,
    tie_key: &dyn Fn(usize) -> usize,
) -> Option<(usize, Scalar)> {
    let mut best: Option<(usize, Scalar)> = None;
    for &j in basis.basic() {
        if !eta[j].is_negative() {
            continue;
        }
        let theta = &x[j] / &(-&eta[j]);
        best = match best {
            None => Some((j, theta)),
            Some((bj, bt)) => match theta.cmp(&bt) {
                Ordering::Less => Some((j, theta)),
                Ordering::Equal if tie_key(j) < tie_key(bj) => Some((j, theta)),
                _ => Some((bj, bt)),
            },
        };
    }
    best
}

/// Leaving variable and step length when `entering` enters at `sol`.
pub fn ratio_test(
    lp: &LinearProgram,
    sol: &BasicSolution,
    entering: usize,
) -> Result<(usize, Scalar)> {
    let (eta, _) = edge_direction(lp, &sol.basis, entering)?;
    ratio_along(&sol.x, &eta, &sol.basis, &|j| j).ok_or(Error::Unbounded { entering })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn simple(a: &[i64], c: &[i64]) -> LinearProgram {
        LinearProgram::new(
            "t",
            vec![a.iter().map(|&v| s(v)).collect()],
            vec![s(1)],
            Objective::numeric(c.iter().map(|&v| s(v)).collect()),
            (0..a.len()).map(|j| format!("x{j}")).collect(),
        )
        .unwrap()
    }

    #[test]
    fn solve_basis_on_segment() {
        let lp = simple(&[1, 1], &[0, 1]);
        let x0 = solve_basis(&lp, &Basis::new(vec![0], 2).unwrap()).unwrap();
        assert_eq!(x0.x, vec![s(1), s(0)]);
        let x1 = solve_basis(&lp, &Basis::new(vec![1], 2).unwrap()).unwrap();
        assert_eq!(x1.x, vec![s(0), s(1)]);
    }

    #[test]
    fn negative_basic_coordinate_is_infeasible() {
        let lp = LinearProgram::new(
            "neg",
            vec![vec![s(-1), s(1)]],
            vec![s(1)],
            Objective::numeric(vec![s(0), s(0)]),
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        let r = solve_basis(&lp, &Basis::new(vec![0], 2).unwrap());
        assert_eq!(r, Err(Error::InfeasibleBasis { variable: 0 }));
    }

    #[test]
    fn singular_basis_detected() {
        let lp = LinearProgram::new(
            "sing",
            vec![vec![s(1), s(1), s(0)], vec![s(1), s(1), s(1)]],
            vec![s(1), s(1)],
            Objective::numeric(vec![s(0); 3]),
            vec!["a".into(), "b".into(), "c".into()],
        )
        .unwrap();
        let r = solve_basis(&lp, &Basis::new(vec![0, 1], 3).unwrap());
        assert_eq!(r, Err(Error::SingularBasis));
    }

    #[test]
    fn reduced_cost_signs() {
        let b0 = Basis::new(vec![0], 2).unwrap();
        let rc = reduced_costs(&simple(&[1, 1], &[0, 1]), &b0).unwrap();
        assert_eq!(rc, vec![(1, ObjectiveValue::Numeric(s(1)))]);
        let rc = reduced_costs(&simple(&[1, 1], &[1, 0]), &b0).unwrap();
        assert_eq!(rc, vec![(1, ObjectiveValue::Numeric(s(-1)))]);
    }

    #[test]
    fn edge_directions_and_norms() {
        let b0 = Basis::new(vec![0], 2).unwrap();
        let (eta, z) = edge_direction(&simple(&[1, 1], &[0, 0]), &b0, 1).unwrap();
        assert_eq!(eta, vec![s(-1), s(1)]);
        assert_eq!(z, s(2));
        let (eta, z) = edge_direction(&simple(&[1, 2], &[0, 0]), &b0, 1).unwrap();
        assert_eq!(eta, vec![s(-2), s(1)]);
        assert_eq!(z, s(5));
    }

    #[test]
    fn ratio_test_on_segment() {
        let lp = simple(&[1, 1], &[1, 0]);
        let sol = solve_basis(&lp, &Basis::new(vec![0], 2).unwrap()).unwrap();
        assert_eq!(ratio_test(&lp, &sol, 1).unwrap(), (0, s(1)));
    }

    #[test]
    fn degenerate_ratio_test_takes_lowest_index() {
        // x0 + x2 = 0, x1 + x2 = 0 with x0, x1 basic at zero.
        let lp = LinearProgram::new(
            "deg",
            vec![vec![s(1), s(0), s(1)], vec![s(0), s(1), s(1)]],
            vec![s(0), s(0)],
            Objective::numeric(vec![s(0), s(0), s(-1)]),
            vec!["a".into(), "b".into(), "c".into()],
        )
        .unwrap();
        let sol = solve_basis(&lp, &Basis::new(vec![0, 1], 3).unwrap()).unwrap();
        assert_eq!(ratio_test(&lp, &sol, 2).unwrap(), (0, s(0)));
    }

    #[test]
    fn unbounded_edge_is_reported() {
        let lp = LinearProgram::new(
            "ray",
            vec![vec![s(1), s(-1)]],
            vec![s(1)],
            Objective::numeric(vec![s(0), s(-1)]),
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        let sol = solve_basis(&lp, &Basis::new(vec![0], 2).unwrap()).unwrap();
        assert_eq!(ratio_test(&lp, &sol, 1), Err(Error::Unbounded { entering: 1 }));
    }

    #[test]
    fn compare_numeric_and_lex() {
        let a = ObjectiveValue::Numeric(Scalar::ratio(3, 2));
        assert_eq!(compare(&a, &a.clone()).unwrap(), Ordering::Equal);
        // Rank 0 user beats anything that only differs at later ranks.
        let uses = ObjectiveValue::Lex(vec![(0, s(1)), (3, Scalar::ratio(1, 2))]);
        let not = ObjectiveValue::Lex(vec![(1, s(1)), (2, s(-1))]);
        assert_eq!(compare(&uses, &not).unwrap(), Ordering::Greater);
        assert_eq!(compare(&a, &uses), Err(Error::KindMismatch));
    }

    #[test]
    fn redundant_rows_are_dropped_from_the_end() {
        let a = vec![vec![s(1), s(1), s(0)], vec![s(0), s(0), s(1)], vec![s(1), s(1), s(1)]];
        let lp = LinearProgram::from_equalities(
            "r",
            a,
            vec![s(1), s(1), s(2)],
            Objective::numeric(vec![s(0); 3]),
            vec!["a".into(), "b".into(), "c".into()],
        )
        .unwrap();
        assert_eq!(lp.num_rows(), 2);
        assert_eq!(lp.dropped_rows(), &[2]);
    }

    #[test]
    fn lp_json_round_trip() {
        let lp = simple(&[1, 2], &[3, -1]);
        let text = serde_json::to_string(&lp.to_file()).unwrap();
        assert!(text.contains(r#""A":[["1","2"]]"#));
        assert!(text.contains(r#""objective":{"kind":"numeric","c":["3","-1"]}"#));
        let back = LinearProgram::from_file(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, lp);
        let lex = Objective::lex(vec![1, 0]);
        assert_eq!(serde_json::to_string(&lex).unwrap(), r#"{"kind":"lex","rank":[1,0]}"#);
    }
}
