use std::collections::BTreeSet;

use monopath::pivot::PivotRule;
use monopath::simplex::{run_simplex, Status};
use monopath::zoo::combinatorics::permutations;
use monopath::zoo::transport::transport_vertices;
use monopath::zoo::{CubeKind, FamilySpec, Instance};
use monopath::{compare, Objective, Scalar};
use proptest::prelude::*;

const RULES: [&str; 4] = ["bland", "dantzig", "greatest", "steepest"];

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[test]
fn klee_minty_bland_from_origin_visits_all_vertices() {
    let inst = Instance::generate(FamilySpec::Cube { n: 3, kind: CubeKind::KleeMinty }).unwrap();
    let lp = inst.lp_with(&Objective::numeric(ints(&[0, 0, -1]))).unwrap();
    let start = inst.start_basis().unwrap();
    let trace = run_simplex(&lp, &start, &PivotRule::bland_identity(lp.num_vars()), 1000).unwrap();
    assert_eq!(trace.status, Status::Optimal);
    assert_eq!(trace.distinct_bfs(), 8);
    assert_eq!(trace.steps.len(), 7);
    assert_eq!(&trace.final_vertex()[..3], ints(&[0, 0, 1]).as_slice());
}

#[test]
fn klee_minty_every_rule_and_start_reaches_the_top() {
    for n in 2..=4 {
        let inst = Instance::generate(FamilySpec::Cube { n, kind: CubeKind::KleeMinty }).unwrap();
        let mut c = vec![Scalar::zero(); n];
        c[n - 1] = Scalar::from_int(-1);
        let lp = inst.lp_with(&Objective::numeric(c)).unwrap();
        let vertices = inst.lp_vertices(1000).unwrap();
        assert_eq!(vertices.len(), 1 << n);
        for rule in RULES {
            let rule = PivotRule::parse(rule, lp.num_vars()).unwrap();
            for x in &vertices {
                let trace = run_simplex(&lp, &lp.basis_for_vertex(x).unwrap(), &rule, 1000).unwrap();
                assert_eq!(trace.final_vertex()[n - 1], Scalar::one());
                assert!(trace.distinct_bfs() <= 1 << n);
            }
        }
    }
}

#[test]
fn birkhoff_three_matches_permutation_minimum() {
    let inst = Instance::generate(FamilySpec::Birkhoff { n: 3 }).unwrap();
    let c: Vec<Scalar> = [7, -3, 5, 2, 11, -8, 4, 6, -1].iter().enumerate().map(|(i, &v)| Scalar::ratio(v, i as i64 + 2)).collect();
    let best = permutations(3)
        .into_iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| c[3 * i + j].clone()).sum::<Scalar>())
        .min()
        .unwrap();
    let lp = inst.lp_with(&Objective::numeric(c.clone())).unwrap();
    for rule in RULES {
        let rule = PivotRule::parse(rule, lp.num_vars()).unwrap();
        let trace = run_simplex(&lp, &inst.start_basis().unwrap(), &rule, 1000).unwrap();
        assert_eq!(dot(&c, trace.final_vertex()), best);
    }
}

#[test]
fn fpm_dantzig_distinct_count_matches_replay() {
    let inst = Instance::generate(FamilySpec::Fpm { graph: monopath::graph::Graph::complete(4) }).unwrap();
    let c: Vec<Scalar> = (0..6).map(|i| Scalar::ratio(i * 7 % 5 - 2, i + 3)).collect();
    let lp = inst.lp_with(&Objective::numeric(c)).unwrap();
    for x in inst.lp_vertices(1000).unwrap() {
        let trace = run_simplex(&lp, &lp.basis_for_vertex(&x).unwrap(), &PivotRule::Dantzig, 1000).unwrap();
        let mut seen: BTreeSet<Vec<Scalar>> = BTreeSet::new();
        seen.insert(trace.start.x.clone());
        for s in &trace.steps {
            seen.insert(s.vertex.clone());
        }
        assert_eq!(trace.distinct_bfs(), seen.len());
    }
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Scalar::ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(a < b, a.to_f64() < b.to_f64() - 1e-12);
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn transportation_runs_reach_enumerated_minimum(
        s in prop::collection::vec(1i64..=9, 2),
        d in prop::collection::vec(1i64..=9, 2),
        costs in prop::collection::vec(-20i64..=20, 6),
    ) {
        let total: i64 = s.iter().sum();
        let last = total - d.iter().sum::<i64>();
        prop_assume!(last >= 1);
        let supplies = ints(&s);
        let mut demands = ints(&d);
        demands.push(Scalar::from_int(last));
        let c = ints(&costs);
        let best = transport_vertices(&supplies, &demands, 1000).unwrap().iter().map(|x| dot(&c, x)).min().unwrap();
        let inst = Instance::generate(FamilySpec::Transportation { supplies, demands }).unwrap();
        let lp = inst.lp_with(&Objective::numeric(c.clone())).unwrap();
        for rule in RULES {
            let rule = PivotRule::parse(rule, lp.num_vars()).unwrap();
            let trace = run_simplex(&lp, &inst.start_basis().unwrap(), &rule, 1000).unwrap();
            prop_assert_eq!(trace.status, Status::Optimal);
            prop_assert_eq!(dot(&c, trace.final_vertex()), best.clone());
            let mut prev = trace.start.objective_value.clone();
            for step in &trace.steps {
                let ord = compare(&step.objective_value, &prev).unwrap();
                if step.theta.is_positive() {
                    prop_assert_eq!(ord, std::cmp::Ordering::Less);
                } else {
                    prop_assert_eq!(ord, std::cmp::Ordering::Equal);
                }
                prev = step.objective_value.clone();
            }
        }
    }
}
