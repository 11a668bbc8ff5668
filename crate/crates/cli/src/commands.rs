use std::fs;
use std::io::Write;
use std::path::Path;

use monopath::constructions::{
    fibonacci_shifted, sp_long_path, tsp_long_path, tsp_recurrence, verify_monotone_path, MonotonePath,
};
use monopath::graph::{Edge, Graph};
use monopath::lp::ObjectiveValue;
use monopath::pivot::PivotRule;
use monopath::simplex::{run_simplex, Status};
use monopath::skeleton::{analyze_battery, random_objective, ObjectiveBattery, ObjectiveResult};
use monopath::zoo::transport::{perturb, random_margins};
use monopath::zoo::zonotope::random_generators;
use monopath::zoo::{CubeKind, FamilySpec, Instance, InstanceFile};
use monopath::bounds::iteration_cap;
use monopath::{Basis, Objective, Scalar};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::sweep::{bound_csv, run_bounds, BoundJob, SweepConfig};
use crate::{AnalyzeArgs, BoundsArgs, Cli, Command, Failure, GenArgs, LongpathArgs, PathFamily, SolveArgs, SweepArgs};

type Res<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn run(cli: &Cli) -> Res<()> {
    match &cli.command {
        Command::Gen(a) => gen(cli, a),
        Command::Solve(a) => solve(cli, a),
        Command::Analyze(a) => analyze(cli, a),
        Command::Longpath(a) => longpath(a),
        Command::Bounds(a) => bounds(cli, a),
        Command::Sweep(a) => sweep(cli, a),
    }
}

/// Writes to `out`, or standard output without one.
pub fn emit(out: Option<&Path>, text: &str) -> Res<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write to stdout: {e}"))),
    }
}

fn to_json<T: Serialize>(v: &T) -> Res<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn load_instance(path: &Path) -> Res<Instance> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let file: InstanceFile =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(Instance::from_file(file)?)
}

/// Name of an instance in reports: the file stem.
fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "instance".to_string(), |s| s.to_string_lossy().into_owned())
}

fn scalars(flag: &str, s: &str) -> Res<Vec<Scalar>> {
    s.split(',')
        .map(|t| t.parse::<Scalar>().map_err(|e| usage(format!("--{flag}: {e}"))))
        .collect()
}

fn dims(flag: &str, s: &str) -> Res<(usize, usize)> {
    let bad = || usage(format!("--{flag}: expected AxB, got `{s}`"));
    let (a, b) = s.split_once('x').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn need_n(a: &GenArgs) -> Res<usize> {
    a.n.ok_or_else(|| usage(format!("family `{}` needs --n", a.family)))
}

fn graph(a: &GenArgs) -> Res<Graph> {
    let n = need_n(a)?;
    match &a.edges {
        None => Ok(Graph::complete(n)),
        Some(list) => {
            let edges = list
                .split(',')
                .map(|t| {
                    let bad = || usage(format!("--edges: bad edge `{t}`"));
                    let (u, v) = t.split_once('-').ok_or_else(bad)?;
                    Ok::<Edge, Failure>((u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
                })
                .collect::<Res<Vec<Edge>>>()?;
            Ok(Graph::new(n, edges)?)
        }
    }
}

pub fn family_spec(a: &GenArgs, rng: &mut ChaCha8Rng) -> Res<FamilySpec> {
    Ok(match a.family.as_str() {
        "birkhoff" => FamilySpec::Birkhoff { n: need_n(a)? },
        "transportation" => {
            let (s, d) = match (&a.random_margins, &a.supplies, &a.demands) {
                (Some(r), _, _) => {
                    let (k, n) = dims("random-margins", r)?;
                    if k == 0 || n == 0 || a.max_margin < 1 {
                        return Err(usage("--random-margins needs positive sizes and --max-margin"));
                    }
                    random_margins(k, n, a.max_margin, rng)
                }
                (None, Some(s), Some(d)) => (scalars("supplies", s)?, scalars("demands", d)?),
                _ => return Err(usage("transportation needs --supplies and --demands, or --random-margins")),
            };
            let (supplies, demands) = if a.perturb { perturb(&s, &d) } else { (s, d) };
            FamilySpec::Transportation { supplies, demands }
        }
        "fm" => FamilySpec::Fm { graph: graph(a)? },
        "fpm" => FamilySpec::Fpm { graph: graph(a)? },
        "matching" => FamilySpec::Matching { graph: graph(a)? },
        "perfect_matching" | "pm" => FamilySpec::PerfectMatching { graph: graph(a)? },
        "spanning_tree" => FamilySpec::SpanningTree { graph: graph(a)? },
        "p2m" => FamilySpec::P2m { n: need_n(a)? },
        "tsp" | "tsp_skeleton" => FamilySpec::TspSkeleton { n: need_n(a)? },
        "sp" | "shortest_path" => FamilySpec::ShortestPath { n: need_n(a)? },
        "cube" => FamilySpec::Cube {
            n: need_n(a)?,
            kind: CubeKind::Standard,
        },
        "klee_minty" => FamilySpec::Cube {
            n: need_n(a)?,
            kind: CubeKind::KleeMinty,
        },
        "zonotope" => {
            let generators = match (&a.generators, &a.random_generators) {
                (Some(g), _) => g.split(';').map(|row| scalars("generators", row)).collect::<Res<Vec<_>>>()?,
                (None, Some(r)) => {
                    let (m, d) = dims("random-generators", r)?;
                    random_generators(m, d, rng)?
                }
                _ => return Err(usage("zonotope needs --generators or --random-generators")),
            };
            FamilySpec::Zonotope { generators }
        }
        "permutahedron" => FamilySpec::Permutahedron { n: need_n(a)? },
        other => return Err(usage(format!("unknown family `{other}`"))),
    })
}

fn gen(cli: &Cli, a: &GenArgs) -> Res<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let inst = Instance::generate(family_spec(a, &mut rng)?)?;
    let file = inst.to_file(a.skeleton.then_some(cli.vertex_limit))?;
    emit(a.out.as_deref(), &to_json(&file)?)
}

fn is_zero(obj: &Objective) -> bool {
    matches!(obj, Objective::Numeric { c } if c.iter().all(|v| v.is_zero()))
}

#[derive(Serialize)]
struct TraceStep {
    entering: usize,
    leaving: usize,
    theta: Scalar,
    objective: ObjectiveValue,
    basis: Vec<usize>,
}

#[derive(Serialize)]
struct TraceFile {
    instance: String,
    family: String,
    rule: String,
    objective: Objective,
    start_basis: Vec<usize>,
    start_vertex: Vec<Scalar>,
    steps: Vec<TraceStep>,
    pivots: usize,
    distinct_bfs: usize,
    status: Status,
    final_vertex: Vec<Scalar>,
}

fn solve(cli: &Cli, a: &SolveArgs) -> Res<()> {
    let inst = load_instance(&a.instance)?;
    let lp = inst.lp().ok_or_else(|| usage(format!("family `{}` has no LP form", inst.family())))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let random = |rng: &mut ChaCha8Rng| inst.lp_objective(&random_objective(inst.natural_dim(), rng));
    let objective = match a.objective.as_str() {
        "stored" => lp.objective().clone(),
        "lex" => inst.lp_objective(&inst.lex_objective())?,
        "random" => random(&mut rng)?,
        "auto" if is_zero(lp.objective()) => random(&mut rng)?,
        "auto" => lp.objective().clone(),
        other => return Err(usage(format!("--objective: unknown value `{other}`"))),
    };
    let lp = lp.with_objective(objective.clone())?;
    let basis = match a.start.as_str() {
        "default" => inst.start_basis()?,
        s if s.starts_with("basis:") => {
            let cols = s["basis:".len()..]
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("--start: bad column `{t}`"))))
                .collect::<Res<Vec<_>>>()?;
            Basis::new(cols, lp.num_vars())?
        }
        s => {
            let k: usize = s.parse().map_err(|_| usage(format!("--start: expected default, an index or basis:..., got `{s}`")))?;
            let vertices = inst.lp_vertices(cli.vertex_limit)?;
            let x = vertices
                .get(k)
                .ok_or_else(|| usage(format!("--start: index {k} out of range ({} vertices)", vertices.len())))?;
            lp.basis_for_vertex(x)?
        }
    };
    let rule = PivotRule::parse(&a.rule, lp.num_vars())?;
    let trace = run_simplex(&lp, &basis, &rule, iteration_cap(None))?;
    let file = TraceFile {
        instance: stem(&a.instance),
        family: inst.family().to_string(),
        rule: rule.name().to_string(),
        objective,
        start_basis: trace.start.basis.basic().to_vec(),
        start_vertex: trace.start.x.clone(),
        steps: trace
            .steps
            .iter()
            .map(|s| TraceStep {
                entering: s.entering,
                leaving: s.leaving,
                theta: s.theta.clone(),
                objective: s.objective_value.clone(),
                basis: s.basis.basic().to_vec(),
            })
            .collect(),
        pivots: trace.steps.len(),
        distinct_bfs: trace.distinct_bfs(),
        status: trace.status,
        final_vertex: trace.final_vertex().to_vec(),
    };
    emit(a.trace_out.as_deref(), &to_json(&file)?)
}

#[derive(Serialize)]
struct AnalysisFile {
    instance: String,
    family: String,
    vertices: usize,
    edges: usize,
    seed: u64,
    random_objectives: usize,
    /// Maxima over the battery only; the supremum over all objectives can
    /// be larger.
    max_mono_diameter: usize,
    max_height: usize,
    results: Vec<ObjectiveResult>,
}

fn analyze(cli: &Cli, a: &AnalyzeArgs) -> Res<()> {
    let inst = load_instance(&a.instance)?;
    let data = inst.skeleton(cli.vertex_limit)?;
    let battery = ObjectiveBattery {
        lex: !a.no_lex,
        coordinate: !a.no_coordinate,
        random: a.random,
        seed: cli.seed,
    };
    let results = analyze_battery(&data, inst.natural_dim(), &battery)?;
    let file = AnalysisFile {
        instance: stem(&a.instance),
        family: inst.family().to_string(),
        vertices: data.vertices.len(),
        edges: data.edges.len(),
        seed: cli.seed,
        random_objectives: a.random,
        max_mono_diameter: results.iter().map(|r| r.mono_diameter).max().unwrap_or(0),
        max_height: results.iter().map(|r| r.height).max().unwrap_or(0),
        results,
    };
    emit(a.out.as_deref(), &to_json(&file)?)
}

fn longpath(a: &LongpathArgs) -> Res<()> {
    let n = a.n;
    let (path, spec, lengths): (MonotonePath, FamilySpec, _) = match a.family {
        PathFamily::Tsp => (tsp_long_path(n)?, FamilySpec::TspSkeleton { n }, None),
        PathFamily::Sp => {
            let c = sp_long_path(n)?;
            (c.path, FamilySpec::ShortestPath { n }, Some(c.lengths))
        }
    };
    let mut problem = None;
    if a.verify {
        let inst = Instance::generate(spec)?;
        let report = verify_monotone_path(&path, &inst);
        let len = path.length() as u64;
        if !report.passed {
            problem = Some(format!(
                "step {}: {}",
                report.failed_step.unwrap_or(0),
                report.reason.unwrap_or_default()
            ));
        } else if a.family == PathFamily::Tsp && (len < tsp_recurrence(n) || len + 2 < fibonacci_shifted(n)) {
            problem = Some(format!("length {len} is below the recurrence for n = {n}"));
        } else if let Some(l) = &lengths {
            for (&m, &lm) in l.range(6..) {
                let want = l[&(m - 1)] + l[&(m - 2)] + (m - 4) * l[&(m - 3)] + 2 * (m - 3);
                if lm != want {
                    problem = Some(format!("length {lm} at {m} nodes differs from the recurrence value {want}"));
                }
            }
        }
    }
    let file = path.to_file(a.verify && problem.is_none());
    emit(a.out.as_deref(), &to_json(&file)?)?;
    match problem {
        Some(p) => Err(Failure::Verification(p)),
        None => Ok(()),
    }
}

fn bounds(cli: &Cli, a: &BoundsArgs) -> Res<()> {
    let inst = load_instance(&a.instance)?;
    let rules: Vec<String> = a.rules.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    let job = BoundJob {
        name: stem(&a.instance),
        inst,
        objectives: a.objectives,
        seed: cli.seed,
    };
    let outcome = run_bounds(vec![job], &rules, cli.vertex_limit, false)?;
    emit(a.out.as_deref(), &bound_csv(&outcome.rows)?)?;
    outcome.into_result()
}

fn sweep(cli: &Cli, a: &SweepArgs) -> Res<()> {
    let text = fs::read_to_string(&a.config).map_err(|e| usage(format!("cannot read {}: {e}", a.config.display())))?;
    let config: SweepConfig =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", a.config.display())))?;
    let seed = config.seed.unwrap_or(cli.seed);
    let jobs = config
        .instances
        .into_iter()
        .enumerate()
        .map(|(i, entry)| {
            Ok(BoundJob {
                name: entry.name.unwrap_or_else(|| format!("{}_{i}", entry.spec.name())),
                inst: Instance::generate(entry.spec)?,
                objectives: config.objectives,
                seed: seed.wrapping_add(i as u64),
            })
        })
        .collect::<Res<Vec<_>>>()?;
    let outcome = run_bounds(jobs, &config.rules, cli.vertex_limit, true)?;
    emit(a.out.as_deref(), &bound_csv(&outcome.rows)?)?;
    outcome.into_result()
}
