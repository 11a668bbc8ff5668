use monopath::constructions::*;
use monopath::zoo::{FamilySpec, Instance};

#[test]
fn tsp_paths_verify() {
    for n in 6..=10 {
        let p = tsp_long_path(n).unwrap();
        let inst = Instance::generate(FamilySpec::TspSkeleton { n }).unwrap();
        let r = verify_monotone_path(&p, &inst);
        assert!(r.passed, "{r:?}");
        assert!(p.length() as u64 + 2 >= fibonacci_shifted(n));
    }
}

#[test]
fn sp_paths_verify() {
    for n in 5..=9 {
        let c = sp_long_path(n).unwrap();
        let inst = Instance::generate(FamilySpec::ShortestPath { n }).unwrap();
        let r = verify_monotone_path(&c.path, &inst);
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn embeddings() {
    for (t, n) in [
        (EmbeddingTarget::Matching, 4),
        (EmbeddingTarget::Fm, 4),
        (EmbeddingTarget::PerfectMatching, 4),
        (EmbeddingTarget::Fpm, 4),
        (EmbeddingTarget::Matching, 6),
        (EmbeddingTarget::Fm, 6),
        (EmbeddingTarget::PerfectMatching, 6),
        (EmbeddingTarget::Fpm, 6),
        (EmbeddingTarget::Fpm, 7),
    ] {
        let e = embed_birkhoff_face(t, n).unwrap();
        let ok = check_embedding(&e).unwrap();
        assert!(ok);
    }
}

#[test]
fn walk() {
    use monopath::scalar::Scalar;
    use monopath::zoo::transport::{perturb, random_margins};
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for n in 3..=7 {
                for _ in 0..50 {
            let (s, d) = random_margins(2, n, 9, &mut rng);
            let (s, d) = perturb(&s, &d);
            let costs: Vec<Scalar> = (0..2 * n).map(|_| Scalar::ratio(rng.gen_range(-50..50), rng.gen_range(1..7))).collect();
            let inst = match SolvedTransportation::solve(s.clone(), d.clone(), costs) {
                Ok(i) => i,
                Err(_) => continue,
            };
            let fam = Instance::generate(FamilySpec::Transportation { supplies: s, demands: d }).unwrap();
            for v in inst.vertices.clone() {
                let p = tp2xn_monotone_walk(&inst, &v).unwrap();
                let r = verify_monotone_path(&p, &fam);
                assert!(r.passed, "{r:?}");
                assert!(p.length() <= n);
            }
            for c in valid_cycles(&inst, 3) {
                assert!(improving_cycle_check(&inst, &c).unwrap());
            }
        }
    }
}
