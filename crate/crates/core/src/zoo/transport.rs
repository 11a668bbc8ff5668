//! Transportation polytopes: LP form, spanning-tree vertex enumeration,
//! random instances and the nondegeneracy perturbation.

use std::collections::HashSet;

use rand::Rng;

use super::combinatorics::{spanning_trees, tree_flows};
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::linalg::Matrix;
use crate::lp::{LinearProgram, Objective};
use crate::scalar::Scalar;

/// Upper limit on spanning trees of `K_{k,n}` examined.
pub const MAX_TREES: u128 = 2_000_000;

pub fn check_margins(supplies: &[Scalar], demands: &[Scalar]) -> Result<()> {
    if supplies.len() < 2 || demands.len() < 2 {
        return Err(Error::InvalidSpec("transportation needs at least 2 supplies and 2 demands".into()));
    }
    if supplies.iter().chain(demands).any(|v| !v.is_positive()) {
        return Err(Error::InvalidSpec("supplies and demands must be positive".into()));
    }
    let s: Scalar = supplies.iter().sum();
    let d: Scalar = demands.iter().sum();
    if s != d {
        return Err(Error::InvalidSpec(format!("total supply {s} differs from total demand {d}")));
    }
    Ok(())
}

/// Variables `x_{i,j}` row-major; rows are supplies then demands, the last
/// demand row being dropped as redundant.
pub fn transportation_lp(
    supplies: &[Scalar],
    demands: &[Scalar],
    name: &str,
) -> Result<(LinearProgram, Vec<String>)> {
    check_margins(supplies, demands)?;
    let (k, n) = (supplies.len(), demands.len());
    let mut a: Matrix = Vec::with_capacity(k + n);
    for i in 0..k {
        a.push((0..k * n).map(|v| if v / n == i { Scalar::one() } else { Scalar::zero() }).collect());
    }
    for j in 0..n {
        a.push((0..k * n).map(|v| if v % n == j { Scalar::one() } else { Scalar::zero() }).collect());
    }
    let b: Vec<Scalar> = supplies.iter().chain(demands).cloned().collect();
    let names: Vec<String> = (0..k * n).map(|v| format!("x{},{}", v / n + 1, v % n + 1)).collect();
    let lp = LinearProgram::from_equalities(
        name,
        a,
        b,
        Objective::numeric(vec![Scalar::zero(); k * n]),
        names.clone(),
    )?;
    Ok((lp, names))
}

/// Vertices as row-major flows, sorted and deduplicated.
pub fn transport_vertices(supplies: &[Scalar], demands: &[Scalar], limit: usize) -> Result<Vec<Vec<Scalar>>> {
    check_margins(supplies, demands)?;
    let (k, n) = (supplies.len(), demands.len());
    let trees = (n as u128).saturating_pow(k as u32 - 1).saturating_mul((k as u128).saturating_pow(n as u32 - 1));
    if trees > MAX_TREES {
        return Err(Error::TooLarge {
            what: "bipartite spanning trees",
            size: trees,
            limit: MAX_TREES,
        });
    }
    let edges: Vec<Edge> = (0..k).flat_map(|i| (0..n).map(move |j| (i, k + j))).collect();
    let mut seen = HashSet::new();
    for t in spanning_trees(k + n, &edges) {
        let tree: Vec<Edge> = t.iter().map(|&(s, d)| (s, d - k)).collect();
        let x = tree_flows(supplies, demands, &tree);
        if x.iter().all(|v| !v.is_negative()) {
            seen.insert(x);
            if seen.len() > limit {
                return Err(Error::TooLarge {
                    what: "transportation vertices",
                    size: seen.len() as u128,
                    limit: limit as u128,
                });
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

pub fn northwest_corner(supplies: &[Scalar], demands: &[Scalar]) -> Vec<Scalar> {
    let (k, n) = (supplies.len(), demands.len());
    let mut s = supplies.to_vec();
    let mut d = demands.to_vec();
    let mut x = vec![Scalar::zero(); k * n];
    let (mut i, mut j) = (0, 0);
    while i < k && j < n {
        let f = s[i].clone().min(d[j].clone());
        s[i] -= &f;
        d[j] -= &f;
        x[i * n + j] = f;
        if s[i].is_zero() && i + 1 < k {
            i += 1;
        } else {
            j += 1;
        }
    }
    x
}

/// Random integer margins in `1..=max_value` with matching totals; the
/// last demand absorbs the difference.
pub fn random_margins<R: Rng>(k: usize, n: usize, max_value: i64, rng: &mut R) -> (Vec<Scalar>, Vec<Scalar>) {
    loop {
        let s: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=max_value)).collect();
        let mut d: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(1..=max_value)).collect();
        let rest = s.iter().sum::<i64>() - d.iter().sum::<i64>();
        if rest >= 1 {
            d.push(rest);
            let conv = |v: Vec<i64>| v.into_iter().map(Scalar::from_int).collect();
            return (conv(s), conv(d));
        }
    }
}

/// Adds `eps^i` to supply `i` (1-based) and their sum to the last demand,
/// where `eps = 1/(k+1)`. For integral margins no proper subset of supplies
/// then balances a subset of demands.
pub fn perturb(supplies: &[Scalar], demands: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let eps = Scalar::ratio(1, supplies.len() as i64 + 1);
    let mut pow = Scalar::one();
    let mut total = Scalar::zero();
    let s: Vec<Scalar> = supplies
        .iter()
        .map(|v| {
            pow = &pow * &eps;
            total += &pow;
            v + &pow
        })
        .collect();
    let mut d = demands.to_vec();
    if let Some(last) = d.last_mut() {
        *last += total;
    }
    (s, d)
}

/// Every basic solution has full support iff no partial sum of supplies
/// equals a partial sum of demands, apart from the empty and the full ones.
pub fn is_nondegenerate(supplies: &[Scalar], demands: &[Scalar]) -> Result<bool> {
    let (k, n) = (supplies.len(), demands.len());
    if k + n > 26 {
        return Err(Error::TooLarge {
            what: "margin subsets",
            size: (k + n) as u128,
            limit: 26,
        });
    }
    let sums = |v: &[Scalar]| -> Vec<Scalar> {
        (0u32..1 << v.len())
            .map(|mask| (0..v.len()).filter(|&i| mask >> i & 1 == 1).map(|i| v[i].clone()).sum())
            .collect()
    };
    let ds = sums(demands);
    let index: std::collections::HashMap<&Scalar, Vec<u32>> = ds.iter().enumerate().fold(
        std::collections::HashMap::new(),
        |mut m, (mask, s)| {
            m.entry(s).or_insert_with(Vec::new).push(mask as u32);
            m
        },
    );
    let full_s = (1u32 << k) - 1;
    let full_d = (1u32 << n) - 1;
    for (smask, s) in sums(supplies).iter().enumerate() {
        let smask = smask as u32;
        if let Some(masks) = index.get(s) {
            for &dmask in masks {
                let trivial = (smask == 0 && dmask == 0) || (smask == full_s && dmask == full_d);
                if !trivial {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn birkhoff_margins_are_degenerate() {
        assert!(!is_nondegenerate(&ints(&[1, 1]), &ints(&[1, 1])).unwrap());
        let (s, d) = perturb(&ints(&[1, 1]), &ints(&[1, 1]));
        assert!(is_nondegenerate(&s, &d).unwrap());
    }

    #[test]
    fn vertex_count_two_by_three() {
        // Nondegenerate 2x3: each vertex is one spanning tree.
        let (s, d) = perturb(&ints(&[3, 4]), &ints(&[2, 2, 3]));
        let v = transport_vertices(&s, &d, 1000).unwrap();
        assert!(v.iter().all(|x| x.iter().all(|e| !e.is_negative())));
        // Support of every vertex has k + n - 1 entries.
        assert!(v.iter().all(|x| x.iter().filter(|e| e.is_positive()).count() == 4));
        assert!(v.contains(&northwest_corner(&s, &d)));
    }

    #[test]
    fn random_margins_balance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (s, d) = random_margins(3, 5, 9, &mut rng);
            check_margins(&s, &d).unwrap();
        }
    }

    #[test]
    fn rejects_unbalanced() {
        assert!(transportation_lp(&ints(&[1, 2]), &ints(&[1, 1]), "t").is_err());
    }
}
