//! Edge-direction sets and the alternating-cycle count of transportation
//! polytopes.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{canonical_direction, Scalar};

pub type Direction = Vec<BigInt>;

/// Canonical directions `u - v` over the given vertex pairs.
pub fn directions_of_edges(points: &[Vec<Scalar>], edges: &[(usize, usize)]) -> BTreeSet<Direction> {
    edges
        .iter()
        .map(|&(i, j)| {
            let d: Vec<Scalar> = points[i].iter().zip(&points[j]).map(|(a, b)| a - b).collect();
            canonical_direction(&d)
        })
        .collect()
}

/// `sum_{p=2}^k (1/p) n! k! / ((n-p)! (k-p)!)` exactly, and `e k! n^k`.
pub fn transportation_direction_count_formula(k: usize, n: usize) -> Result<(Scalar, f64)> {
    if k < 2 || k > n {
        return Err(Error::InvalidSpec(format!("need 2 <= k <= n, got k={k}, n={n}")));
    }
    let falling = |a: usize, p: usize| -> BigInt { ((a - p + 1)..=a).map(BigInt::from).product() };
    let mut sum = Scalar::zero();
    for p in 2..=k {
        let num = falling(n, p) * falling(k, p);
        sum += Scalar::from_big(num, BigInt::from(p));
    }
    let kf: f64 = (1..=k).map(|v| v as f64).product();
    let bound = std::f64::consts::E * kf * (n as f64).powi(k as i32);
    Ok((sum, bound))
}

/// Signed alternating cycles of `K_{k,n}` by brute force: each cycle
/// `s_1 d_1 s_2 d_2 ... s_p d_p` contributes `+1` on `(s_i, d_i)` and `-1`
/// on `(s_{i+1}, d_i)`, as a `k x n` row-major vector. Opposite signings of
/// one cycle are distinct.
pub fn signed_alternating_cycles(k: usize, n: usize) -> BTreeSet<Vec<i8>> {
    fn rec(
        k: usize,
        n: usize,
        seq: &mut Vec<(usize, usize)>,
        used_s: &mut Vec<bool>,
        used_d: &mut Vec<bool>,
        out: &mut BTreeSet<Vec<i8>>,
    ) {
        let p = seq.len();
        if p >= 2 {
            let mut v = vec![0i8; k * n];
            for i in 0..p {
                let (s, d) = seq[i];
                let s_next = seq[(i + 1) % p].0;
                v[s * n + d] = 1;
                v[s_next * n + d] = -1;
            }
            out.insert(v);
        }
        for s in 0..k {
            if used_s[s] {
                continue;
            }
            for d in 0..n {
                if used_d[d] {
                    continue;
                }
                used_s[s] = true;
                used_d[d] = true;
                seq.push((s, d));
                rec(k, n, seq, used_s, used_d, out);
                seq.pop();
                used_s[s] = false;
                used_d[d] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(k, n, &mut Vec::new(), &mut vec![false; k], &mut vec![false; n], &mut out);
    out
}
