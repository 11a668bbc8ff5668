//! Bound checks over (instance, objective, rule) cells.

use monopath::experiment::{applicable_bounds, bound_input, lp_skeleton, Cell, LpSkeleton, Prepared};
use monopath::bounds::BoundInput;
use monopath::pivot::PivotRule;
use monopath::skeleton::{random_objective, MAX_RETRIES};
use monopath::zoo::{FamilySpec, Instance};
use monopath::{Error, Objective};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Debug, Deserialize)]
pub struct SweepConfig {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_objectives")]
    pub objectives: usize,
    pub rules: Vec<String>,
    pub instances: Vec<SweepEntry>,
}

fn default_objectives() -> usize {
    2
}

#[derive(Debug, Deserialize)]
pub struct SweepEntry {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(flatten)]
    pub spec: FamilySpec,
}

pub struct BoundJob {
    pub name: String,
    pub inst: Instance,
    /// Random objectives drawn when the stored objective is zero.
    pub objectives: usize,
    pub seed: u64,
}

/// One line of the bound report. `observed` is the largest distinct-BFS
/// count over all objectives and start vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub instance: String,
    pub family: String,
    pub rule: String,
    pub bound_name: String,
    pub bound: u64,
    pub observed: usize,
    pub satisfied: bool,
}

pub struct Outcome {
    pub rows: Vec<Row>,
    /// Runs that missed the optimum or broke the chain or steepest-edge checks.
    pub problems: Vec<String>,
}

impl Outcome {
    pub fn into_result(self) -> Result<(), Failure> {
        let mut msgs: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.satisfied)
            .map(|r| format!("{} {} {}: observed {} > bound {}", r.instance, r.rule, r.bound_name, r.observed, r.bound))
            .collect();
        msgs.extend(self.problems);
        if msgs.is_empty() {
            Ok(())
        } else {
            Err(Failure::Verification(msgs.join("; ")))
        }
    }
}

struct Setup {
    job: BoundJob,
    sk: LpSkeleton,
    input: BoundInput,
}

fn is_zero(obj: &Objective) -> bool {
    matches!(obj, Objective::Numeric { c } if c.iter().all(|v| v.is_zero()))
}

/// The stored objective when it is nonzero, otherwise seeded random ones.
fn prepare<'a>(s: &'a Setup) -> Result<Vec<Prepared<'a>>, Failure> {
    let inst = &s.job.inst;
    let stored = inst.lp().map(|lp| lp.objective().clone()).ok_or(Error::WrongFamily("LP-form family"))?;
    if !is_zero(&stored) {
        return Ok(vec![Prepared::new(inst, &s.sk, &stored)?]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.job.seed);
    let mut out = Vec::new();
    for _ in 0..s.job.objectives {
        let mut tries = 0;
        loop {
            let obj = inst.lp_objective(&random_objective(inst.natural_dim(), &mut rng))?;
            match Prepared::new(inst, &s.sk, &obj) {
                Ok(p) => {
                    out.push(p);
                    break;
                }
                Err(Error::DegenerateObjective(..)) if tries + 1 < MAX_RETRIES => tries += 1,
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(out)
}

fn map_maybe_par<T: Sync, U: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

pub fn run_bounds(jobs: Vec<BoundJob>, rules: &[String], limit: usize, parallel: bool) -> Result<Outcome, Failure> {
    if rules.is_empty() {
        return Err(Failure::Usage("no pivot rules given".into()));
    }
    let setups: Vec<Setup> = map_maybe_par(&jobs, parallel, |job| -> Result<(LpSkeleton, BoundInput), Error> {
        let sk = lp_skeleton(&job.inst, limit)?;
        let input = bound_input(&job.inst, &sk)?;
        Ok((sk, input))
    })
    .into_iter()
    .zip(jobs)
    .map(|(r, job)| r.map(|(sk, input)| Setup { job, sk, input }))
    .collect::<Result<_, _>>()?;
    let prepared: Vec<Vec<Prepared>> = setups.iter().map(prepare).collect::<Result<_, _>>()?;
    let parsed: Vec<Vec<PivotRule>> = setups
        .iter()
        .map(|s| {
            let n = s.sk.data.points.first().map_or(0, |p| p.len());
            rules.iter().map(|r| PivotRule::parse(r, n)).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let mut tasks = Vec::new();
    for (si, preps) in prepared.iter().enumerate() {
        for ri in 0..rules.len() {
            for oi in 0..preps.len() {
                tasks.push((si, oi, ri));
            }
        }
    }
    let cells: Vec<Result<Vec<Cell>, Error>> = map_maybe_par(&tasks, parallel, |&(si, oi, ri)| {
        let s = &setups[si];
        let rule = &parsed[si][ri];
        let bounds = applicable_bounds(&s.job.inst, &s.input, rule);
        (0..s.sk.bases.len()).map(|start| prepared[si][oi].run(start, rule, &s.input, &bounds)).collect()
    });
    let mut rows = Vec::new();
    let mut problems = Vec::new();
    let mut cells = tasks.iter().zip(cells);
    for (si, s) in setups.iter().enumerate() {
        for rule in &parsed[si] {
            let bounds = applicable_bounds(&s.job.inst, &s.input, rule);
            let mut observed = 0;
            for _ in 0..prepared[si].len() {
                let (&(_, oi, _), result) = cells.next().expect("one result per task");
                for cell in result? {
                    observed = observed.max(cell.distinct_bfs);
                    let at = format!("{} {} objective {} start {}", s.job.name, cell.rule, oi, cell.start);
                    if !cell.reached_optimum {
                        problems.push(format!("{at}: optimum not reached"));
                    } else if !cell.chain_holds {
                        problems.push(format!("{at}: distance chain broken"));
                    }
                    if cell.steepest.as_ref().is_some_and(|c| !c.passed()) {
                        problems.push(format!("{at}: steepest-edge gap check failed"));
                    }
                }
            }
            for (b, v) in bounds {
                rows.push(Row {
                    instance: s.job.name.clone(),
                    family: s.job.inst.family().to_string(),
                    rule: rule.name().to_string(),
                    bound_name: b.to_string(),
                    bound: v,
                    observed,
                    satisfied: observed as u64 <= v,
                });
            }
        }
    }
    Ok(Outcome { rows, problems })
}

pub fn bound_csv(rows: &[Row]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if rows.is_empty() {
        w.write_record(["instance", "family", "rule", "bound_name", "bound", "observed", "satisfied"])
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Usage(e.to_string()))
}
