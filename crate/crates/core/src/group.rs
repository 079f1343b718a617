//! The affine general linear group `AGL(m, 2)` and its right action on
//! Boolean functions by substitution, `f ↦ f∘σ`.

use std::fmt;

use rand::Rng;

use crate::boolean::{BooleanFunction, MAX_VARS};
use crate::error::{Error, Result};

mod schreier;

pub use schreier::SubgroupOracle;

/// An invertible affine map `x ↦ xA + b` of `F_2^m`.
///
/// `rows[i]` is the image of the basis vector `e_i` under the linear part,
/// i.e. the output coordinates that depend on input bit `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    m: u8,
    rows: [u8; MAX_VARS],
    translation: u8,
}

fn rank(rows: &[u8]) -> usize {
    let mut basis = [0u8; 8];
    let mut rank = 0;
    for &r in rows {
        let mut v = r;
        for &b in &basis[..rank] {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis[rank] = v;
            rank += 1;
            // keep the basis sorted by leading bit so `min` reduces correctly
            basis[..rank].sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    rank
}

impl AffineMap {
    pub fn identity(m: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&m));
        let mut rows = [0u8; MAX_VARS];
        for (i, r) in rows.iter_mut().enumerate().take(m) {
            *r = 1 << i;
        }
        AffineMap {
            m: m as u8,
            rows,
            translation: 0,
        }
    }

    pub fn new(m: usize, rows: &[u8], translation: u8) -> Result<Self> {
        if !(1..=MAX_VARS).contains(&m) || rows.len() != m {
            return Err(Error::invalid(format!(
                "affine map needs m in 1..={MAX_VARS} and m rows, got m = {m}, {} rows",
                rows.len()
            )));
        }
        let limit = 1u16 << m;
        if rows.iter().any(|&r| r as u16 >= limit) || translation as u16 >= limit {
            return Err(Error::invalid(format!(
                "row or translation wider than {m} bits"
            )));
        }
        if rank(rows) != m {
            return Err(Error::invalid("linear part is singular"));
        }
        let mut r = [0u8; MAX_VARS];
        r[..m].copy_from_slice(rows);
        Ok(AffineMap {
            m: m as u8,
            rows: r,
            translation,
        })
    }

    /// Builds a map from the images of the origin and of `e_1, …, e_m`.
    pub fn from_point_map(m: usize, map: &[u8]) -> Result<Self> {
        if map.len() != 1 << m {
            return Err(Error::invalid("point map length differs from 2^m"));
        }
        let t = map[0];
        let rows: Vec<u8> = (0..m).map(|i| map[1 << i] ^ t).collect();
        let candidate = AffineMap::new(m, &rows, t)?;
        if (0..1usize << m).any(|x| candidate.apply(x) != map[x] as usize) {
            return Err(Error::invalid("point map is not affine"));
        }
        Ok(candidate)
    }

    #[inline]
    pub fn vars(&self) -> usize {
        self.m as usize
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows[..self.vars()]
    }

    pub fn translation(&self) -> u8 {
        self.translation
    }

    #[inline]
    fn linear(&self, x: usize) -> usize {
        let mut out = 0u8;
        let mut x = x;
        let mut i = 0;
        while x != 0 {
            if x & 1 == 1 {
                out ^= self.rows[i];
            }
            x >>= 1;
            i += 1;
        }
        out as usize
    }

    /// Image of the point with index `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.linear(x) ^ self.translation as usize
    }

    /// Permutation table of the `2^m` points.
    pub fn point_map(&self) -> Vec<u8> {
        let n = 1usize << self.m;
        let mut map = vec![0u8; n];
        map[0] = self.translation;
        // Gray-code walk: each step adds one row
        let mut x = 0usize;
        let mut img = self.translation;
        for k in 1..n {
            let bit = k.trailing_zeros() as usize;
            x ^= 1 << bit;
            img ^= self.rows[bit];
            map[x] = img;
        }
        map
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineMap::identity(self.vars())
    }

    /// `σ.compose(τ)` applies `τ` first, then `σ`, so that
    /// `act(f, σ.compose(τ)) = act(act(f, σ), τ)`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        assert_eq!(self.m, other.m, "variable count mismatch");
        let mut rows = [0u8; MAX_VARS];
        for (i, r) in rows.iter_mut().enumerate().take(self.vars()) {
            *r = self.linear(other.rows[i] as usize) as u8;
        }
        AffineMap {
            m: self.m,
            rows,
            translation: self.apply(other.translation as usize) as u8,
        }
    }

    pub fn try_compose(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.m != other.m {
            return Err(Error::invalid("composition of maps on different spaces"));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> AffineMap {
        let m = self.vars();
        // pairs (A e_i, e_i), row-reduced until the first halves are unit vectors
        let mut pairs: Vec<(u8, u8)> = (0..m).map(|i| (self.rows[i], 1u8 << i)).collect();
        for col in 0..m {
            let bit = 1u8 << col;
            let piv = (col..m)
                .find(|&i| pairs[i].0 & bit != 0)
                .expect("affine map with singular linear part");
            pairs.swap(col, piv);
            let p = pairs[col];
            for (i, q) in pairs.iter_mut().enumerate() {
                if i != col && q.0 & bit != 0 {
                    q.0 ^= p.0;
                    q.1 ^= p.1;
                }
            }
        }
        let mut rows = [0u8; MAX_VARS];
        for (i, r) in rows.iter_mut().enumerate().take(m) {
            *r = pairs[i].1;
        }
        let mut inv = AffineMap {
            m: self.m,
            rows,
            translation: 0,
        };
        inv.translation = inv.linear(self.translation as usize) as u8;
        inv
    }

    /// Row masks from `e_m` down to `e_1`, then the translation, as
    /// two-digit hex groups: `rows:translation`.
    pub fn to_token(&self) -> String {
        let rows: String = self
            .rows()
            .iter()
            .rev()
            .map(|r| format!("{r:02x}"))
            .collect();
        format!("{rows}:{:02x}", self.translation)
    }

    pub fn from_token(m: usize, token: &str) -> Result<Self> {
        let (rows, t) = token
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("affine token {token:?} lacks ':'")))?;
        if rows.len() != 2 * m || t.len() != 2 {
            return Err(Error::invalid(format!(
                "affine token {token:?} has wrong width"
            )));
        }
        let byte = |s: &str| {
            u8::from_str_radix(s, 16).map_err(|e| Error::invalid(format!("bad hex {s:?}: {e}")))
        };
        let mut parsed: Vec<u8> = (0..m)
            .map(|i| byte(&rows[2 * i..2 * i + 2]))
            .collect::<Result<_>>()?;
        parsed.reverse();
        AffineMap::new(m, &parsed, byte(t)?)
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMap({})", self.to_token())
    }
}

/// `f∘σ`: the truth table at `x` becomes `f(σ(x))`.
pub fn act(f: &BooleanFunction, sigma: &AffineMap) -> BooleanFunction {
    assert_eq!(f.vars(), sigma.vars(), "variable count mismatch");
    let tt = f.truth_table();
    let map = sigma.point_map();
    let mut out = 0u128;
    for (x, &y) in map.iter().enumerate() {
        out |= ((tt >> y) & 1) << x;
    }
    BooleanFunction::from_tt_unchecked(f.vars(), out)
}

pub fn try_act(f: &BooleanFunction, sigma: &AffineMap) -> Result<BooleanFunction> {
    if f.vars() != sigma.vars() {
        return Err(Error::invalid(format!(
            "acting with a map on {} variables on a function of {}",
            sigma.vars(),
            f.vars()
        )));
    }
    Ok(act(f, sigma))
}

/// The cyclic shift `S`, the transvection `T` and the translation `U`.
///
/// With bit `j - 1` standing for `v_j`: `S` rotates `(v_1, …, v_m)` so that
/// `v_j` moves to position `j + 1` and `v_m` to position 1; `T` replaces
/// `v_1` by `v_1 + v_2`; `U` adds `e_1`.
pub fn generators_stu(m: usize) -> [AffineMap; 3] {
    let mut shift = [0u8; MAX_VARS];
    for (i, r) in shift.iter_mut().enumerate().take(m) {
        *r = 1 << ((i + 1) % m);
    }
    let s = AffineMap {
        m: m as u8,
        rows: shift,
        translation: 0,
    };
    let mut t = AffineMap::identity(m);
    if m >= 2 {
        t.rows[1] |= 1;
    }
    let mut u = AffineMap::identity(m);
    u.translation = 1;
    [s, t, u]
}

/// `|AGL(m, 2)| = 2^m ∏_{i<m} (2^m - 2^i)`.
pub fn group_order(m: usize) -> u128 {
    let n = 1u128 << m;
    (0..m).fold(n, |acc, i| acc * (n - (1u128 << i)))
}

/// Uniform element of `AGL(m, 2)` by rejection on singular matrices.
pub fn random_affine<R: Rng + ?Sized>(m: usize, rng: &mut R) -> AffineMap {
    random_affine_counted(m, rng).0
}

/// Same as [`random_affine`], also reporting the number of matrix draws.
pub fn random_affine_counted<R: Rng + ?Sized>(m: usize, rng: &mut R) -> (AffineMap, u32) {
    let limit = 1u16 << m;
    let mut attempts = 0;
    loop {
        attempts += 1;
        let mut rows = [0u8; MAX_VARS];
        for r in rows.iter_mut().take(m) {
            *r = rng.gen_range(0..limit) as u8;
        }
        if rank(&rows[..m]) == m {
            let translation = rng.gen_range(0..limit) as u8;
            return (
                AffineMap {
                    m: m as u8,
                    rows,
                    translation,
                },
                attempts,
            );
        }
    }
}

/// All invertible linear maps of `F_2^m`, as affine maps with zero translation.
pub fn linear_group(m: usize) -> Vec<AffineMap> {
    fn extend(m: usize, rows: &mut Vec<u8>, out: &mut Vec<AffineMap>) {
        if rows.len() == m {
            let mut r = [0u8; MAX_VARS];
            r[..m].copy_from_slice(rows);
            out.push(AffineMap {
                m: m as u8,
                rows: r,
                translation: 0,
            });
            return;
        }
        // span of the rows chosen so far
        let span: Vec<u8> = (0..1usize << rows.len())
            .map(|c| {
                rows.iter()
                    .enumerate()
                    .filter(|(i, _)| (c >> i) & 1 == 1)
                    .fold(0u8, |a, (_, &r)| a ^ r)
            })
            .collect();
        for v in 1..(1u16 << m) as usize {
            if !span.contains(&(v as u8)) {
                rows.push(v as u8);
                extend(m, rows, out);
                rows.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(m, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Every element of `AGL(m, 2)`.
pub fn affine_group(m: usize) -> Vec<AffineMap> {
    linear_group(m)
        .into_iter()
        .flat_map(|a| {
            (0..1u16 << m).map(move |t| AffineMap {
                translation: t as u8,
                ..a
            })
        })
        .collect()
}

/// Order of the subgroup generated by `gens`.
pub fn subgroup_order(m: usize, gens: &[AffineMap]) -> u128 {
    SubgroupOracle::from_generators(m, gens).order()
}

/// Parses an affine-map token of any width from 1 to [`MAX_VARS`].
pub fn parse_affine_token(token: &str) -> Result<AffineMap> {
    let rows = token.split_once(':').map(|(r, _)| r.len()).unwrap_or(0);
    if rows == 0 || !rows.is_multiple_of(2) {
        return Err(Error::invalid(format!("bad affine token {token:?}")));
    }
    AffineMap::from_token(rows / 2, token)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::full_mask;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn random_fn(m: usize, rng: &mut ChaCha8Rng) -> BooleanFunction {
        BooleanFunction::from_truth_table(m, rng.gen::<u128>() & full_mask(m)).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let s = random_affine(7, &mut rng);
            assert_eq!(s.compose(&AffineMap::identity(7)), s);
            assert_eq!(AffineMap::identity(7).compose(&s), s);
            assert!(s.compose(&s.inverse()).is_identity());
            assert!(s.inverse().compose(&s).is_identity());
        }
    }

    #[test]
    fn right_action_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let f = random_fn(5, &mut rng);
            let (s, t) = (random_affine(5, &mut rng), random_affine(5, &mut rng));
            // brute force: (f∘s)∘t evaluated pointwise
            let lhs = act(&f, &s.compose(&t));
            for x in 0..32 {
                assert_eq!(lhs.eval(x), f.eval(s.apply(t.apply(x))));
            }
            assert_eq!(lhs, act(&act(&f, &s), &t));
            assert_eq!(act(&act(&f, &s), &s.inverse()), f);
        }
    }

    #[test]
    fn act_examples() {
        let f = BooleanFunction::from_terms(2, &[&[1]]).unwrap();
        assert_eq!(act(&f, &AffineMap::identity(2)), f);
        let swap = AffineMap::new(2, &[0b10, 0b01], 0).unwrap();
        assert_eq!(
            act(&f, &swap),
            BooleanFunction::from_terms(2, &[&[2]]).unwrap()
        );
        assert!(try_act(&f, &AffineMap::identity(3)).is_err());
    }

    #[test]
    fn degree_is_invariant() {
        // exhaustive for m = 3
        let group = affine_group(3);
        assert_eq!(group.len(), 1344);
        for tt in 0..256u128 {
            let f = BooleanFunction::from_truth_table(3, tt).unwrap();
            for s in &group {
                assert_eq!(act(&f, s).degree(), f.degree());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let f = random_fn(7, &mut rng);
            let s = random_affine(7, &mut rng);
            assert_eq!(act(&f, &s).degree(), f.degree());
        }
    }

    #[test]
    fn inner_product_adjointness() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..500 {
            let f = random_fn(6, &mut rng);
            let g = random_fn(6, &mut rng);
            let s = random_affine(6, &mut rng);
            assert_eq!(
                act(&f, &s).inner_product(&g).unwrap(),
                f.inner_product(&act(&g, &s.inverse())).unwrap()
            );
        }
    }

    #[test]
    fn quotient_action_is_well_defined() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..300 {
            let m = rng.gen_range(2..=7);
            let r = rng.gen_range(-1..m as i32);
            let f = random_fn(m, &mut rng);
            let s = random_affine(m, &mut rng);
            let low = BooleanFunction::from_anf(
                m,
                rng.gen::<u128>() & crate::boolean::low_degree_mask(m, r),
            )
            .unwrap();
            let lhs = act(&f, &s).reduce_mod_rm(r);
            let rhs = (act(&f.reduce_mod_rm(r), &s) ^ low).reduce_mod_rm(r);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(1), 2);
        assert_eq!(group_order(3), 1344);
        assert_eq!(group_order(4), 322_560);
        let direct: u128 = (0..7).fold(128u128, |a, i| a * (128 - (1u128 << i)));
        assert_eq!(group_order(7), direct);
        for m in 1..=4 {
            assert_eq!(affine_group(m).len() as u128, group_order(m));
        }
    }

    #[test]
    fn stu_generate_the_full_group() {
        for m in 2..=7 {
            assert_eq!(
                subgroup_order(m, &generators_stu(m)),
                group_order(m),
                "m = {m}"
            );
        }
        let [_, _, u] = generators_stu(3);
        assert_eq!(subgroup_order(3, &[u]), 2);
        assert_eq!(subgroup_order(3, &[]), 1);
        let x1 = BooleanFunction::from_terms(3, &[&[1]]).unwrap();
        let x1p1 = BooleanFunction::from_terms(3, &[&[1], &[]]).unwrap();
        let img = act(&x1, &u);
        assert!(img == x1 || img == x1p1);
    }

    #[test]
    fn sampling_is_uniform_on_agl3() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let draws = 1_000_000usize;
        let mut counts: HashMap<AffineMap, usize> = HashMap::new();
        let mut attempts = 0u64;
        for _ in 0..draws {
            let (s, a) = random_affine_counted(3, &mut rng);
            attempts += a as u64;
            *counts.entry(s).or_default() += 1;
        }
        assert_eq!(counts.len(), 1344);
        let expected = draws as f64 / 1344.0;
        let sigma = (expected * (1.0 - 1.0 / 1344.0)).sqrt();
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        for &c in counts.values() {
            assert!((c as f64 - expected).abs() <= 5.0 * sigma, "count {c}");
        }
        // 1343 degrees of freedom: mean 1343, sd ≈ 51.8
        assert!(chi2 < 1343.0 + 5.0 * 51.8, "chi2 = {chi2}");
        // acceptance ≈ ∏_{i=1}^{3} (1 - 2^-i) = 0.328
        let rate = draws as f64 / attempts as f64;
        assert!((rate - 0.328125).abs() < 0.005, "rate = {rate}");
    }

    #[test]
    fn acceptance_rate_m7() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let n = 200_000;
        let attempts: u64 = (0..n)
            .map(|_| random_affine_counted(7, &mut rng).1 as u64)
            .sum();
        let expected: f64 = (1..=7).map(|i| 1.0 - 0.5f64.powi(i)).product();
        let rate = n as f64 / attempts as f64;
        assert!((rate - expected).abs() < 0.01, "rate {rate} vs {expected}");
        assert!((expected - 0.29).abs() < 0.005);
    }

    #[test]
    fn tokens_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for m in 1..=7 {
            let s = random_affine(m, &mut rng);
            let tok = s.to_token();
            assert_eq!(tok.len(), 2 * m + 3);
            assert_eq!(AffineMap::from_token(m, &tok).unwrap(), s);
            assert_eq!(parse_affine_token(&tok).unwrap(), s);
        }
        // most significant row first
        let a = AffineMap::new(2, &[0b01, 0b11], 0b10).unwrap();
        assert_eq!(a.to_token(), "0301:02");
        assert!(AffineMap::from_token(2, "0303:00").is_err());
    }

    #[test]
    fn point_map_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..50 {
            let s = random_affine(6, &mut rng);
            let map = s.point_map();
            let mut seen = map.clone();
            seen.sort_unstable();
            assert!(seen.iter().enumerate().all(|(i, &v)| v as usize == i));
            assert_eq!(AffineMap::from_point_map(6, &map).unwrap(), s);
        }
        assert!(AffineMap::new(2, &[1, 1], 0).is_err());
    }
}
