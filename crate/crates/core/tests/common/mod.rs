//! Brute-force oracles shared by the integration and acceptance tests.
//! None of them goes through the descent.
#![allow(dead_code)]

use std::collections::HashSet;

use rmcoset::boolean::low_degree_mask;
use rmcoset::group::{act, affine_group};
use rmcoset::{BooleanFunction, SpaceSpec};

/// Every function of `space`, by ANF.
pub fn all_functions(space: &SpaceSpec) -> Vec<BooleanFunction> {
    let basis = space.basis();
    (0..1u64 << basis.len())
        .map(|c| {
            let anf = basis
                .iter()
                .enumerate()
                .filter(|(i, _)| (c >> i) & 1 == 1)
                .fold(0u128, |a, (_, &x)| a | 1u128 << x);
            BooleanFunction::from_anf(space.m, anf).unwrap()
        })
        .collect()
}

/// Orbits of `AGL(m,2)` on `B(s,t,m)` by partitioning the space: each
/// unvisited element is pushed through the whole group.
pub fn orbit_partition_count(space: &SpaceSpec) -> usize {
    let group = affine_group(space.m);
    let low = low_degree_mask(space.m, space.s as i32 - 1);
    let mut seen = HashSet::new();
    let mut orbits = 0;
    for f in all_functions(space) {
        if seen.contains(&f.anf()) {
            continue;
        }
        orbits += 1;
        for g in &group {
            seen.insert(act(&f, g).anf() & !low);
        }
    }
    orbits
}

/// Walsh values by the defining sum.
pub fn walsh_naive(f: &BooleanFunction) -> Vec<i32> {
    let m = f.vars();
    (0..1usize << m)
        .map(|a| {
            (0..1usize << m)
                .map(|x| {
                    let bit = f.eval(x) as u32 ^ ((a & x).count_ones() & 1);
                    1 - 2 * bit as i32
                })
                .sum()
        })
        .collect()
}

/// `|W_f(a)| ∈ {0, 2^{(m+1)/2}}` for all `a`, from the truth table alone.
pub fn near_bent_tt(m: usize, tt: u128) -> bool {
    let n = 1usize << m;
    let mut w: Vec<i32> = (0..n).map(|x| 1 - 2 * ((tt >> x) & 1) as i32).collect();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (w[j], w[j + h]);
                w[j] = a + b;
                w[j + h] = a - b;
            }
        }
        h *= 2;
    }
    let top = 1i32 << m.div_ceil(2);
    w.iter().all(|&v| v == 0 || v.abs() == top)
}

/// Number of near-bent functions of `B(2, (m+1)/2, m)` by scanning it.
pub fn near_bent_scan(m: usize) -> u64 {
    let space = SpaceSpec::new(m, 2, m.div_ceil(2)).unwrap();
    let rows: Vec<u128> = space
        .basis()
        .into_iter()
        .map(|s| BooleanFunction::monomial(m, s).truth_table())
        .collect();
    let mut tt = 0u128;
    let mut count = near_bent_tt(m, tt) as u64;
    for i in 1u64..1 << rows.len() {
        tt ^= rows[i.trailing_zeros() as usize];
        count += near_bent_tt(m, tt) as u64;
    }
    count
}

/// Near-bent functions among all `2^{2^m}` functions.
pub fn near_bent_all(m: usize) -> u64 {
    (0..1u128 << (1 << m))
        .filter(|&tt| near_bent_tt(m, tt))
        .count() as u64
}

/// `max over f of min_{c ∈ RM(1,m)} wt(f + c)`, over all `f ∈ B(2,m,m)`.
pub fn rm1_covering_radius_scan(m: usize) -> u32 {
    let space = SpaceSpec::new(m, 2, m).unwrap();
    let rows: Vec<u128> = space
        .basis()
        .into_iter()
        .map(|s| BooleanFunction::monomial(m, s).truth_table())
        .collect();
    let n = 1usize << m;
    let mut best = 0;
    let mut tt = 0u128;
    let mut w = vec![0i32; n];
    for i in 0u64..1 << rows.len() {
        if i > 0 {
            tt ^= rows[i.trailing_zeros() as usize];
        }
        for (x, v) in w.iter_mut().enumerate() {
            *v = 1 - 2 * ((tt >> x) & 1) as i32;
        }
        let mut h = 1;
        while h < n {
            for a in (0..n).step_by(2 * h) {
                for j in a..a + h {
                    let (p, q) = (w[j], w[j + h]);
                    w[j] = p + q;
                    w[j + h] = p - q;
                }
            }
            h *= 2;
        }
        let peak = w.iter().map(|v| v.unsigned_abs()).max().unwrap();
        best = best.max((n as u32 - peak) / 2);
    }
    best
}
