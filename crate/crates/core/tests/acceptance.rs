//! Acceptance run. Prints one PASS/FAIL line per criterion, with the time
//! taken against its budget, and exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::error::Error as StdError;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use monopath::bounds::{compute_constants, BoundName, SteepestChecks};
use monopath::constructions::*;
use monopath::experiment::{applicable_bounds, bound_input, lp_skeleton, Prepared};
use monopath::graph::Graph;
use monopath::pivot::PivotRule;
use monopath::skeleton::{
    cube_bland_walk, is_good_ordering, random_good_ordering, random_objective, check_refinement_inequality,
    ObjectiveBattery, OrientedSkeleton,
};
use monopath::zoo::combinatorics::{permutations, simple_paths};
use monopath::zoo::directions::{signed_alternating_cycles, transportation_direction_count_formula};
use monopath::zoo::transport::{perturb, random_margins};
use monopath::zoo::zonotope::{random_generators, zonotope_facet_count};
use monopath::zoo::{CombinatorialVertex, CubeKind, FamilySpec, Instance, SkeletonData, DEFAULT_VERTEX_LIMIT};
use monopath::{compare, Error, Objective, Scalar};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, Box<dyn StdError>>;

const SEED: u64 = 20_240_601;
const LIMIT: usize = DEFAULT_VERTEX_LIMIT;

macro_rules! fail {
    ($($t:tt)*) => { return Err(format!($($t)*).into()) };
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED.wrapping_add(salt))
}

fn generate(spec: FamilySpec) -> Result<Instance, Error> {
    Instance::generate(spec)
}

/// Orients `data` by fresh random objectives until one has no ties.
fn generic_orientation(data: &SkeletonData, dim: usize, rng: &mut ChaCha8Rng) -> Result<(Objective, OrientedSkeleton), Error> {
    for _ in 0..64 {
        let obj = random_objective(dim, rng);
        match OrientedSkeleton::build(data, &obj) {
            Ok(sk) => return Ok((obj, sk)),
            Err(Error::DegenerateObjective(..)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateObjective(0, 0))
}

fn cube_diameter() -> Outcome {
    let mut r = rng(1);
    for n in 2..=6 {
        let inst = generate(FamilySpec::Cube { n, kind: CubeKind::Standard })?;
        let data = inst.skeleton(LIMIT)?;
        for _ in 0..32 {
            let (_, sk) = generic_orientation(&data, n, &mut r)?;
            let d = sk.c_monotone_diameter()?;
            if d != n {
                fail!("n = {n}: monotone diameter {d}");
            }
        }
    }
    Ok("monotone diameter = n for n = 2..6, 32 objectives each".into())
}

fn bland_good_orderings() -> Outcome {
    let mut r = rng(2);
    let mut walks = 0usize;
    for n in 2..=5 {
        let inst = generate(FamilySpec::Cube { n, kind: CubeKind::Standard })?;
        let data = inst.skeleton(LIMIT)?;
        for _ in 0..2 {
            let (obj, sk) = generic_orientation(&data, n, &mut r)?;
            let optimum = match &sk.vertices[sk.sink] {
                CombinatorialVertex::Bits(b) => b.clone(),
                other => fail!("unexpected cube vertex {other:?}"),
            };
            let orderings: Vec<Vec<usize>> = if n <= 3 {
                let goods: Vec<Vec<usize>> =
                    permutations(2 * n).into_iter().filter(|o| is_good_ordering(n, o, &optimum)).collect();
                if n == 2 && goods.len() != 4 {
                    fail!("n = 2: {} good orderings of 24, expected 4", goods.len());
                }
                goods
            } else {
                (0..200).map(|_| random_good_ordering(n, &optimum, &mut r)).collect()
            };
            for ord in &orderings {
                if !is_good_ordering(n, ord, &optimum) {
                    fail!("sampled ordering {ord:?} is not good");
                }
                for start in &data.vertices {
                    let CombinatorialVertex::Bits(b) = start else { fail!("unexpected cube vertex") };
                    let walk = cube_bland_walk(CubeKind::Standard, n, ord, &obj, b)?;
                    walks += 1;
                    if walk.len() - 1 > n || walk.last() != Some(&optimum) {
                        fail!("n = {n}, ordering {ord:?}: walk of {} steps from {b:?}", walk.len() - 1);
                    }
                }
            }
        }
    }
    Ok(format!("{walks} walks of length <= n; 4 of 24 orderings good at n = 2"))
}

fn zonotope_laws() -> Outcome {
    let mut r = rng(3);
    for t in 0..50 {
        let m = r.gen_range(2..=8);
        let d = r.gen_range(2..=4);
        let gens = random_generators(m, d, &mut r)?;
        let facets = zonotope_facet_count(&gens)?;
        if facets < 2 * m {
            fail!("set {t}: {facets} facets for m = {m}");
        }
        let inst = generate(FamilySpec::Zonotope { generators: gens })?;
        let data = inst.skeleton(LIMIT)?;
        for _ in 0..4 {
            let (_, sk) = generic_orientation(&data, d, &mut r)?;
            let (h, md) = (sk.c_height()?, sk.c_monotone_diameter()?);
            if h != m || md != m {
                fail!("set {t} (m = {m}, d = {d}): height {h}, monotone diameter {md}");
            }
        }
    }
    Ok("50 generator sets: height = monotone diameter = m, facets >= 2m".into())
}

fn refinement_inequalities() -> Outcome {
    let battery = ObjectiveBattery {
        lex: false,
        coordinate: false,
        random: 64,
        seed: SEED,
    };
    let mut r = rng(4);
    let mut specs = Vec::new();
    for n in 2..=5 {
        let (s, d) = random_margins(2, n, 9, &mut r);
        let (supplies, demands) = perturb(&s, &d);
        specs.push(FamilySpec::Transportation { supplies, demands });
    }
    for n in 2..=5 {
        specs.push(FamilySpec::Permutahedron { n });
    }
    specs.push(FamilySpec::SpanningTree { graph: Graph::complete(4) });
    let mut lines = Vec::new();
    for spec in specs {
        let inst = generate(spec)?;
        let rep = check_refinement_inequality(&inst, &battery, LIMIT)?;
        if rep.objectives != 64 || !rep.passed() {
            fail!("{}: {} objectives, violations {:?}", rep.family, rep.objectives, rep.violations);
        }
        if matches!(rep.family.as_str(), "permutahedron" | "spanning_tree") && rep.matroid_bound.is_none() {
            fail!("{}: no C(n,2) bound checked", rep.family);
        }
        lines.push(format!("{} {}<={}", rep.family, rep.max_mono_diameter, rep.edge_directions));
    }
    Ok(format!("zero violations over 64 objectives each ({})", lines.join(", ")))
}

fn unsigned(v: &[i8]) -> Vec<BigInt> {
    let flip = v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
    v.iter().map(|&x| BigInt::from(if flip { -x } else { x })).collect()
}

fn transportation_directions() -> Outcome {
    let mut r = rng(5);
    let mut parts = Vec::new();
    for (k, n) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
        let (exact, bound) = transportation_direction_count_formula(k, n)?;
        let signed = signed_alternating_cycles(k, n);
        if exact != Scalar::from_int(signed.len() as i64) {
            fail!("({k},{n}): formula {exact}, brute force {}", signed.len());
        }
        if signed.len() as f64 > bound {
            fail!("({k},{n}): {} exceeds e k! n^k = {bound}", signed.len());
        }
        // Edge directions of an actual polytope are alternating cycles.
        let cycles: BTreeSet<Vec<BigInt>> = signed.iter().map(|v| unsigned(v)).collect();
        let (s, d) = random_margins(k, n, 9, &mut r);
        let (supplies, demands) = perturb(&s, &d);
        let dirs = generate(FamilySpec::Transportation { supplies, demands })?.enumerate_edge_directions(LIMIT)?;
        if !dirs.is_subset(&cycles) {
            fail!("({k},{n}): an edge direction is not an alternating cycle");
        }
        if cycles.len() * 2 != signed.len() {
            fail!("({k},{n}): signed cycles do not pair up");
        }
        parts.push(format!("({k},{n})={}", signed.len()));
    }
    Ok(format!("cycle-count sum equals brute force: {}", parts.join(" ")))
}

fn fibonacci_3_5(n: usize) -> u64 {
    let (mut a, mut b) = (3u64, 5u64);
    for _ in 6..=n {
        (a, b) = (b, a + b);
    }
    if n == 4 {
        a
    } else {
        b
    }
}

fn tsp_long_paths() -> Outcome {
    let mut lens = Vec::new();
    for n in 6..=10 {
        let path = tsp_long_path(n)?;
        let inst = generate(FamilySpec::TspSkeleton { n })?;
        let rep = verify_monotone_path(&path, &inst);
        if !rep.passed {
            fail!("n = {n}: step {:?}: {:?}", rep.failed_step, rep.reason);
        }
        let len = path.length() as u64;
        if len + 2 < fibonacci_3_5(n) {
            fail!("n = {n}: length {len} + 2 < F_n = {}", fibonacci_3_5(n));
        }
        if n <= 7 {
            let data = generate(FamilySpec::P2m { n })?.skeleton(LIMIT)?;
            let height = OrientedSkeleton::build(&data, &path.objective)?.c_height()?;
            if len as usize > height {
                fail!("n = {n}: length {len} exceeds the 2-matching height {height}");
            }
        }
        lens.push(format!("{n}:{len}"));
    }
    Ok(format!("verified, length + 2 >= F_n ({})", lens.join(" ")))
}

/// Longest strictly improving path from `(0..m)` to `(0, m-1)` among the
/// simple paths, by dynamic programming over decreasing objective value.
fn longest_sp_path(m: usize) -> Result<usize, Box<dyn StdError>> {
    let inst = generate(FamilySpec::ShortestPath { n: m })?;
    let obj = Objective::lex_identity(inst.natural_dim());
    let verts: Vec<CombinatorialVertex> = simple_paths(m).into_iter().map(CombinatorialVertex::Path).collect();
    let vals = verts.iter().map(|v| inst.point(v).map(|p| obj.evaluate(&p))).collect::<Result<Vec<_>, _>>()?;
    let mut order: Vec<usize> = (0..verts.len()).collect();
    let mut err = None;
    order.sort_by(|&a, &b| {
        compare(&vals[b], &vals[a]).unwrap_or_else(|e| {
            err = Some(e);
            std::cmp::Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let start = verts.iter().position(|v| *v == CombinatorialVertex::Path((0..m).collect())).ok_or("no full path")?;
    let target = verts.iter().position(|v| *v == CombinatorialVertex::Path(vec![0, m - 1])).ok_or("no direct path")?;
    let mut best: Vec<Option<usize>> = vec![None; verts.len()];
    best[start] = Some(0);
    for (pos, &u) in order.iter().enumerate() {
        let Some(bu) = best[u] else { continue };
        for &v in &order[pos + 1..] {
            if compare(&vals[u], &vals[v])? == std::cmp::Ordering::Greater && inst.adjacent(&verts[u], &verts[v])? {
                best[v] = Some(best[v].map_or(bu + 1, |b| b.max(bu + 1)));
            }
        }
    }
    best[target].ok_or_else(|| "direct path unreachable".into())
}

fn sp_long_paths() -> Outcome {
    const BASES: [(usize, usize); 3] = [(3, 1), (4, 4), (5, 14)];
    for (m, frozen) in BASES {
        let found = longest_sp_path(m)?;
        if found != frozen {
            fail!("exhaustive search at {m} nodes gives {found}, frozen base {frozen}");
        }
    }
    let mut lens = Vec::new();
    for n in 5..=9 {
        let c = sp_long_path(n)?;
        let inst = generate(FamilySpec::ShortestPath { n })?;
        let rep = verify_monotone_path(&c.path, &inst);
        if !rep.passed {
            fail!("n = {n}: step {:?}: {:?}", rep.failed_step, rep.reason);
        }
        for (m, frozen) in BASES {
            if c.lengths.get(&m).is_some_and(|&l| l != frozen) {
                fail!("n = {n}: recorded base at {m} nodes is {:?}", c.lengths.get(&m));
            }
        }
        let l = &c.lengths;
        for m in 6..=n {
            let (Some(&a), Some(&b), Some(&e), Some(&lm)) = (l.get(&(m - 1)), l.get(&(m - 2)), l.get(&(m - 3)), l.get(&m))
            else {
                fail!("n = {n}: sub-length for {m} nodes missing");
            };
            let want = a + b + (m - 4) * e + 2 * (m - 3);
            if lm != want {
                fail!("n = {n}: L_{m} = {lm}, recurrence gives {want}");
            }
        }
        if l.get(&n) != Some(&c.path.length()) {
            fail!("n = {n}: path length {} differs from recorded {:?}", c.path.length(), l.get(&n));
        }
        if c.path.vertices.last() != Some(&CombinatorialVertex::Path(vec![0, n - 1])) {
            fail!("n = {n}: path does not end at the direct path");
        }
        lens.push(format!("{n}:{}", c.path.length()));
    }
    Ok(format!("verified, recurrence exact over sub-lengths, bases 1/4/14 ({})", lens.join(" ")))
}

fn face_embeddings() -> Outcome {
    use EmbeddingTarget as T;
    let cases = [
        (T::Matching, 4),
        (T::Fm, 4),
        (T::PerfectMatching, 4),
        (T::Fpm, 4),
        (T::Matching, 6),
        (T::Fm, 6),
        (T::PerfectMatching, 6),
        (T::Fpm, 6),
        (T::Fpm, 7),
    ];
    for (target, n) in cases {
        let emb = embed_birkhoff_face(target, n)?;
        let k = if n % 2 == 1 { n / 2 - 1 } else { n / 2 };
        if emb.birkhoff_n != k || emb.map.len() != permutations(k).len() {
            fail!("{target:?} n = {n}: face of order {} with {} images", emb.birkhoff_n, emb.map.len());
        }
        if !check_embedding(&emb)? {
            fail!("{target:?} n = {n}: images are not the face vertices");
        }
        let birkhoff = generate(FamilySpec::Birkhoff { n: k })?;
        let mut edges = 0;
        for (i, (s, u)) in emb.map.iter().enumerate() {
            for (t, v) in &emb.map[i + 1..] {
                let b = birkhoff.adjacent(&CombinatorialVertex::Permutation(s.clone()), &CombinatorialVertex::Permutation(t.clone()))?;
                if b != emb.target.adjacent(u, v)? {
                    fail!("{target:?} n = {n}: adjacency of {s:?} and {t:?} differs");
                }
                edges += usize::from(b);
            }
        }
        if edges != birkhoff.skeleton(LIMIT)?.edges.len() {
            fail!("{target:?} n = {n}: edge counts differ");
        }
    }
    Ok("9 faces isomorphic to Birkhoff skeletons under the explicit map".into())
}

/// Aggregate of the pivot-bound sweep shared by criteria 9, 10 and 13.
#[derive(Default)]
struct BoundSweep {
    instances: usize,
    cells: usize,
    bound_checks: usize,
    violations: Vec<String>,
    /// Exceedances of the background Kitahara-Mizuno bounds, which the
    /// criterion does not cover.
    km_exceedances: Vec<String>,
    chain_failures: Vec<String>,
    steepest: SteepestChecks,
    errors: Vec<String>,
    elapsed: Duration,
}

fn bound_specs() -> Vec<(String, FamilySpec)> {
    let mut out = Vec::new();
    for n in 3..=6 {
        out.push((format!("fpm K{n}"), FamilySpec::Fpm { graph: Graph::complete(n) }));
    }
    for n in 2..=4 {
        out.push((format!("birkhoff {n}"), FamilySpec::Birkhoff { n }));
    }
    for n in 3..=6 {
        out.push((format!("shortest_path {n}"), FamilySpec::ShortestPath { n }));
    }
    let mut r = rng(9);
    for (k, n) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5)] {
        let (s, d) = random_margins(k, n, 9, &mut r);
        let (supplies, demands) = perturb(&s, &d);
        out.push((format!("transportation {k}x{n}"), FamilySpec::Transportation { supplies, demands }));
    }
    out
}

fn run_sweep() -> BoundSweep {
    let t = Instant::now();
    let mut out = BoundSweep::default();
    let mut r = rng(10);
    for (name, spec) in bound_specs() {
        if let Err(e) = sweep_instance(&name, spec, &mut r, &mut out) {
            out.errors.push(format!("{name}: {e}"));
        }
    }
    out.elapsed = t.elapsed();
    out
}

fn sweep_instance(name: &str, spec: FamilySpec, r: &mut ChaCha8Rng, out: &mut BoundSweep) -> Result<(), Box<dyn StdError>> {
    let inst = generate(spec)?;
    let sk = lp_skeleton(&inst, LIMIT)?;
    let input = bound_input(&inst, &sk)?;
    out.instances += 1;
    for _ in 0..2 {
        let mut prepared = None;
        for _ in 0..64 {
            let obj = inst.lp_objective(&random_objective(inst.natural_dim(), r))?;
            match Prepared::new(&inst, &sk, &obj) {
                Ok(p) => {
                    prepared = Some(p);
                    break;
                }
                Err(Error::DegenerateObjective(..)) => continue,
                Err(e) => return Err(e.into()),
            }
        }
        let prep = prepared.ok_or("no generic objective found")?;
        for rule_name in ["bland", "dantzig", "greatest", "steepest"] {
            let rule = PivotRule::parse(rule_name, sk.data.points[0].len())?;
            let bounds = applicable_bounds(&inst, &input, &rule);
            if rule_name != "bland" && sk.bases.len() > 1 && bounds.is_empty() {
                return Err(format!("no bound evaluates for {rule_name}").into());
            }
            for start in 0..sk.bases.len() {
                let cell = prep.run(start, &rule, &input, &bounds)?;
                out.cells += 1;
                for rep in &cell.reports {
                    let km = matches!(rep.bound_name, BoundName::General | BoundName::Improved);
                    out.bound_checks += usize::from(!km);
                    if !rep.satisfied {
                        let msg = format!(
                            "{name} {rule_name} start {start}: {} distinct BFS > {} = {}",
                            rep.observed_distinct_bfs, rep.bound_name, rep.bound_value
                        );
                        if km {
                            out.km_exceedances.push(msg);
                        } else {
                            out.violations.push(msg);
                        }
                    }
                }
                if !cell.chain_holds {
                    out.chain_failures.push(format!("{name} {rule_name} start {start}"));
                }
                if let Some(c) = &cell.steepest {
                    out.steepest.absorb(c);
                }
            }
        }
    }
    Ok(())
}

fn sweep() -> &'static BoundSweep {
    static SWEEP: OnceLock<BoundSweep> = OnceLock::new();
    SWEEP.get_or_init(run_sweep)
}

fn pivot_bounds() -> Outcome {
    let s = sweep();
    if !s.errors.is_empty() {
        fail!("errors: {}", s.errors.join("; "));
    }
    if !s.violations.is_empty() {
        fail!("{} violations: {}", s.violations.len(), s.violations.join("; "));
    }
    let km = if s.km_exceedances.is_empty() {
        String::new()
    } else {
        format!("; outside the criterion, {} Kitahara-Mizuno exceedances: {}", s.km_exceedances.len(), s.km_exceedances.join("; "))
    };
    Ok(format!(
        "{} instances, {} cells, {} bound checks, zero violations ({:.1}s){km}",
        s.instances,
        s.cells,
        s.bound_checks,
        s.elapsed.as_secs_f64()
    ))
}

fn steepest_analytics() -> Outcome {
    let s = sweep();
    if !s.errors.is_empty() {
        fail!("sweep errors: {}", s.errors.join("; "));
    }
    let c = &s.steepest;
    if c.iterates == 0 || c.contraction_steps == 0 {
        fail!("no steepest-edge iterates checked");
    }
    if !c.passed() {
        fail!("{} gap and {} contraction violations", c.gap_violations, c.contraction_violations);
    }
    Ok(format!(
        "gap inequality at {} iterates, contraction on {} steps, zero violations",
        c.iterates, c.contraction_steps
    ))
}

fn two_by_n_walk() -> Outcome {
    let mut r = rng(11);
    let mut walks = 0usize;
    let mut cycles = 0usize;
    for n in 3..=7 {
        let mut done = 0;
        while done < 50 {
            let (s, d) = random_margins(2, n, 9, &mut r);
            let (s, d) = perturb(&s, &d);
            let costs: Vec<Scalar> = (0..2 * n).map(|_| Scalar::ratio(r.gen_range(-50..=50), r.gen_range(1..=7))).collect();
            let solved = match SolvedTransportation::solve(s.clone(), d.clone(), costs.clone()) {
                Ok(t) => t,
                Err(Error::DegenerateObjective(..)) => continue,
                Err(e) => return Err(e.into()),
            };
            let fam = generate(FamilySpec::Transportation { supplies: s, demands: d })?;
            let data = fam.skeleton(LIMIT)?;
            let oriented = match OrientedSkeleton::build(&data, &Objective::numeric(costs)) {
                Ok(o) => o,
                Err(Error::DegenerateObjective(..)) => continue,
                Err(e) => return Err(e.into()),
            };
            for v in &solved.vertices {
                let path = tp2xn_monotone_walk(&solved, v)?;
                let rep = verify_monotone_path(&path, &fam);
                if !rep.passed || path.length() > n || path.vertices.last() != Some(&CombinatorialVertex::Flow(solved.optimum.clone())) {
                    fail!("n = {n}: walk of {} steps, report {rep:?}", path.length());
                }
                walks += 1;
            }
            let md = oriented.c_monotone_diameter()?;
            if md > n {
                fail!("n = {n}: monotone diameter {md}");
            }
            for c in valid_cycles(&solved, 3) {
                if !improving_cycle_check(&solved, &c)? {
                    fail!("n = {n}: cycle {c:?} at the optimum has nonnegative cost");
                }
                cycles += 1;
            }
            done += 1;
        }
    }
    Ok(format!("{walks} walks of <= n steps, monotone diameter <= n, {cycles} cycles with k <= 3 checked"))
}

fn sum(x: &[Scalar]) -> Scalar {
    x.iter().cloned().sum()
}

fn constants() -> Outcome {
    let half = Scalar::ratio(1, 2);
    let k5 = generate(FamilySpec::Fpm { graph: Graph::complete(5) })?.skeleton(LIMIT)?;
    if !k5.points.iter().flatten().all(|v| v.is_zero() || *v == Scalar::one() || *v == half) {
        fail!("FPM(K5) has an entry outside {{0, 1/2, 1}}");
    }
    if !k5.points.iter().flatten().any(|v| *v == half) {
        fail!("FPM(K5) has no half-integral vertex");
    }
    let c = compute_constants(&k5.points, &k5.edges)?;
    if c.gamma != Scalar::one() || c.delta != half {
        fail!("FPM(K5): gamma {}, delta {}", c.gamma, c.delta);
    }
    for n in 3..=6 {
        let pts = generate(FamilySpec::Fpm { graph: Graph::complete(n) })?.skeleton(LIMIT)?.points;
        let want = Scalar::ratio(n as i64, 2);
        if pts.iter().any(|x| sum(x) != want) {
            fail!("FPM(K{n}): a vertex has ||x||_1 != {want}");
        }
    }
    for n in 3..=4 {
        let data = generate(FamilySpec::Birkhoff { n })?.skeleton(LIMIT)?;
        let c = compute_constants(&data.points, &data.edges)?;
        if c.mu_sq != Some(Scalar::from_int(4)) || c.nu_sq != Some(Scalar::from_int(2 * n as i64)) {
            fail!("Birkhoff {n}: mu^2 {:?}, nu^2 {:?}", c.mu_sq, c.nu_sq);
        }
        if data.points.iter().any(|x| sum(x) != Scalar::from_int(n as i64)) {
            fail!("Birkhoff {n}: a vertex has ||x||_1 != {n}");
        }
    }
    for n in 3..=6 {
        let inst = generate(FamilySpec::ShortestPath { n })?;
        let cap = Scalar::from_int(n as i64 - 1);
        let norms: Vec<Scalar> = inst.lp_vertices(LIMIT)?.iter().map(|x| sum(&x[..inst.natural_dim()])).collect();
        if norms.iter().any(|v| *v > cap) || !norms.contains(&cap) {
            fail!("shortest path {n}: ||x||_1 exceeds or never reaches {cap}");
        }
    }
    Ok("FPM 0/1/2 with gamma 1, delta 1/2; Birkhoff mu^2 = 4, nu^2 = 2n; ||x||_1 laws hold".into())
}

fn chain_inequality() -> Outcome {
    let s = sweep();
    if !s.errors.is_empty() {
        fail!("sweep errors: {}", s.errors.join("; "));
    }
    if !s.chain_failures.is_empty() {
        fail!("{} cells break the chain, first: {}", s.chain_failures.len(), s.chain_failures[0]);
    }
    Ok(format!("chain holds on all {} cells", s.cells))
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 13] = [
        (1, "cube monotone diameter", 10, cube_diameter),
        (2, "Bland good orderings", 30, bland_good_orderings),
        (3, "zonotope laws", 60, zonotope_laws),
        (4, "refinement and matroid inequalities", 120, refinement_inequalities),
        (5, "transportation edge directions", 60, transportation_directions),
        (6, "TSP long path", 120, tsp_long_paths),
        (7, "shortest-path long path", 120, sp_long_paths),
        (8, "face embeddings", 60, face_embeddings),
        (9, "pivot-count bounds", 300, pivot_bounds),
        (10, "steepest-edge analytics", 300, steepest_analytics),
        (11, "2 x n transportation walk", 180, two_by_n_walk),
        (12, "constants", 60, constants),
        (13, "chain inequality", 300, chain_inequality),
    ];
    let mut timings = BTreeMap::new();
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let t = Instant::now();
        let result = std::panic::catch_unwind(check);
        let secs = t.elapsed().as_secs_f64();
        timings.insert(id, secs);
        let (ok, detail) = match result {
            Ok(Ok(d)) if secs <= budget as f64 => (true, d),
            Ok(Ok(d)) => (false, format!("{d}; over the {budget}s budget")),
            Ok(Err(e)) => (false, e.to_string()),
            Err(_) => (false, "panicked".to_string()),
        };
        failed += usize::from(!ok);
        println!(
            "{} criterion {id:>2} {name}: {detail} [{secs:.2}s, budget {budget}s]",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
