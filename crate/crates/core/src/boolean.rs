//! Boolean functions in at most [`MAX_VARS`] variables.
//!
//! A function is stored twice: as its truth table and as its algebraic
//! normal form (ANF). Both are 2^m-bit words packed into a `u128`.
//!
//! Index convention: bit `j - 1` of an index stands for variable `x_j`.
//! Bit `i` of the truth table is `f(point i)`, bit `S` of the ANF is the
//! coefficient of the monomial `X_S`.

use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use crate::covrad::GeneratorMatrix;
use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 7;

/// Valuation of the zero function.
pub const INFINITE_VALUATION: u32 = u32::MAX;

/// Masks selecting the indices whose bit `i` is clear, one per butterfly stage.
const STAGE_MASKS: [u128; 7] = [
    0x5555_5555_5555_5555_5555_5555_5555_5555,
    0x3333_3333_3333_3333_3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f_0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff_00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff_0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff_0000_0000_ffff_ffff,
    0x0000_0000_0000_0000_ffff_ffff_ffff_ffff,
];

const fn popcount_masks() -> [u128; 8] {
    let mut out = [0u128; 8];
    let mut i = 0;
    while i < 128 {
        let w = (i as u32).count_ones() as usize;
        out[w] |= 1u128 << i;
        i += 1;
    }
    out
}

/// `DEGREE_MASKS[d]` has bit `S` set iff `|S| = d`.
const DEGREE_MASKS: [u128; 8] = popcount_masks();

/// Mask of the `2^m` valid bit positions.
#[inline]
pub fn full_mask(m: usize) -> u128 {
    if m >= 7 {
        u128::MAX
    } else {
        (1u128 << (1usize << m)) - 1
    }
}

/// Mask of the monomials of degree exactly `d` in `m` variables.
#[inline]
pub fn degree_mask(m: usize, d: usize) -> u128 {
    if d > m {
        0
    } else {
        DEGREE_MASKS[d] & full_mask(m)
    }
}

/// Mask of the monomials of degree at most `r` (empty for `r < 0`).
#[inline]
pub fn low_degree_mask(m: usize, r: i32) -> u128 {
    (0..=r.min(m as i32))
        .map(|d| degree_mask(m, d as usize))
        .fold(0, |a, b| a | b)
}

/// Binary Möbius transform of a packed `2^m`-bit word.
#[inline]
pub fn mobius_word(mut v: u128, m: usize) -> u128 {
    for (i, mask) in STAGE_MASKS.iter().enumerate().take(m) {
        v ^= (v & mask) << (1u32 << i);
    }
    v
}

/// Binary Möbius transform of an arbitrary bit vector.
///
/// Maps a truth table to its ANF coefficients and back.
pub fn mobius(bits: &[bool]) -> Result<Vec<bool>> {
    let n = bits.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::invalid(format!(
            "Möbius transform needs a power-of-two length, got {n}"
        )));
    }
    let mut out = bits.to_vec();
    let mut h = 1;
    while h < n {
        for i in 0..n {
            if i & h != 0 {
                out[i] ^= out[i ^ h];
            }
        }
        h <<= 1;
    }
    Ok(out)
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn check_vars(m: usize) -> Result<()> {
    if m == 0 || m > MAX_VARS {
        return Err(Error::invalid(format!(
            "variable count must be in 1..={MAX_VARS}, got {m}"
        )));
    }
    Ok(())
}

/// A Boolean function `F_2^m -> F_2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    m: u8,
    truth_table: u128,
    anf: u128,
}

impl BooleanFunction {
    pub fn zero(m: usize) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&m),
            "unsupported variable count {m}"
        );
        BooleanFunction {
            m: m as u8,
            truth_table: 0,
            anf: 0,
        }
    }

    pub fn from_anf(m: usize, anf: u128) -> Result<Self> {
        check_vars(m)?;
        if anf & !full_mask(m) != 0 {
            return Err(Error::invalid(format!("ANF word wider than 2^{m} bits")));
        }
        Ok(Self::from_anf_unchecked(m, anf))
    }

    pub fn from_truth_table(m: usize, truth_table: u128) -> Result<Self> {
        check_vars(m)?;
        if truth_table & !full_mask(m) != 0 {
            return Err(Error::invalid(format!("truth table wider than 2^{m} bits")));
        }
        Ok(BooleanFunction {
            m: m as u8,
            truth_table,
            anf: mobius_word(truth_table, m),
        })
    }

    #[inline]
    pub(crate) fn from_anf_unchecked(m: usize, anf: u128) -> Self {
        BooleanFunction {
            m: m as u8,
            truth_table: mobius_word(anf, m),
            anf,
        }
    }

    #[inline]
    pub(crate) fn from_tt_unchecked(m: usize, truth_table: u128) -> Self {
        BooleanFunction {
            m: m as u8,
            truth_table,
            anf: mobius_word(truth_table, m),
        }
    }

    /// The monomial `X_S` for the subset encoded by `mask`.
    pub fn monomial(m: usize, mask: usize) -> Self {
        assert!(mask < 1 << m, "monomial mask {mask:#x} out of range");
        Self::from_anf_unchecked(m, 1u128 << mask)
    }

    /// Sum of monomials, each given as a list of 1-based variable indices.
    ///
    /// `from_terms(3, &[&[1, 2], &[3], &[]])` is `x1x2 + x3 + 1`.
    pub fn from_terms(m: usize, terms: &[&[usize]]) -> Result<Self> {
        check_vars(m)?;
        let mut anf = 0u128;
        for term in terms {
            let mut mask = 0usize;
            for &j in term.iter() {
                if j == 0 || j > m {
                    return Err(Error::invalid(format!("variable x{j} not in 1..={m}")));
                }
                mask |= 1 << (j - 1);
            }
            anf ^= 1u128 << mask;
        }
        Ok(Self::from_anf_unchecked(m, anf))
    }

    #[inline]
    pub fn vars(&self) -> usize {
        self.m as usize
    }

    #[inline]
    pub fn anf(&self) -> u128 {
        self.anf
    }

    #[inline]
    pub fn truth_table(&self) -> u128 {
        self.truth_table
    }

    pub fn eval(&self, point: usize) -> bool {
        (self.truth_table >> point) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.anf == 0
    }

    /// Hamming weight of the truth table.
    pub fn weight(&self) -> u32 {
        self.truth_table.count_ones()
    }

    /// Recomputes the ANF from the truth table and compares.
    pub fn is_consistent(&self) -> bool {
        mobius_word(self.truth_table, self.vars()) == self.anf
    }

    /// Largest monomial degree, `-1` for the zero function.
    pub fn degree(&self) -> i32 {
        (0..=self.vars())
            .rev()
            .find(|&d| self.anf & DEGREE_MASKS[d] != 0)
            .map_or(-1, |d| d as i32)
    }

    /// Smallest monomial degree, [`INFINITE_VALUATION`] for the zero function.
    pub fn valuation(&self) -> u32 {
        (0..=self.vars())
            .find(|&d| self.anf & DEGREE_MASKS[d] != 0)
            .map_or(INFINITE_VALUATION, |d| d as u32)
    }

    /// Canonical representative of `f + RM(r, m)`: drops every monomial of
    /// degree at most `r`. `r = -1` is the identity.
    pub fn reduce_mod_rm(&self, r: i32) -> Self {
        Self::from_anf_unchecked(self.vars(), self.anf & !low_degree_mask(self.vars(), r))
    }

    /// Degree-`r` homogeneous component.
    pub fn homogeneous_part(&self, r: usize) -> Self {
        Self::from_anf_unchecked(self.vars(), self.anf & degree_mask(self.vars(), r))
    }

    /// Keeps the monomials whose degree lies in `s..=t`.
    pub fn restrict_degrees(&self, s: i32, t: i32) -> Self {
        let m = self.vars();
        let keep = low_degree_mask(m, t) & !low_degree_mask(m, s - 1);
        Self::from_anf_unchecked(m, self.anf & keep)
    }

    /// Moves the coefficient of `X_S` to `X_{S̄}`.
    pub fn complement_transform(&self) -> Self {
        let m = self.vars();
        let anf = self.anf.reverse_bits() >> (128 - (1usize << m));
        Self::from_anf_unchecked(m, anf)
    }

    /// Walsh spectrum `W(a) = Σ_x (-1)^{f(x) + a·x}`.
    pub fn walsh(&self) -> WalshSpectrum {
        let n = 1usize << self.m;
        let mut values: Vec<i32> = (0..n).map(|x| if self.eval(x) { -1 } else { 1 }).collect();
        let mut h = 1;
        while h < n {
            for block in values.chunks_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = x + y;
                    *b = x - y;
                }
            }
            h <<= 1;
        }
        WalshSpectrum { values }
    }

    /// Near-bent test for odd `m`: every Walsh value is `0` or `±2^{(m+1)/2}`.
    pub fn is_near_bent(&self) -> Result<bool> {
        let m = self.vars();
        if m.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "near-bentness is defined for odd m, got m = {m}"
            )));
        }
        let peak = 1i32 << m.div_ceil(2);
        Ok(self
            .walsh()
            .values
            .iter()
            .all(|&w| w == 0 || w.abs() == peak))
    }

    /// `⟨f, g⟩ = Σ_x f(x) g(x)` over `F_2`.
    pub fn inner_product(&self, other: &Self) -> Result<u8> {
        if self.m != other.m {
            return Err(Error::invalid(format!(
                "inner product of functions in {} and {} variables",
                self.m, other.m
            )));
        }
        Ok(((self.truth_table & other.truth_table).count_ones() & 1) as u8)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::invalid(format!(
                "sum of functions in {} and {} variables",
                self.m, other.m
            )));
        }
        Ok(*self ^ *other)
    }

    /// Lowercase hex of the ANF, see [`to_hex`].
    pub fn anf_hex(&self) -> String {
        to_hex(self.anf, self.vars())
    }

    pub fn from_anf_hex(m: usize, s: &str) -> Result<Self> {
        Self::from_anf(m, parse_hex(s, m)?)
    }
}

impl BitXor for BooleanFunction {
    type Output = BooleanFunction;

    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.m, rhs.m, "variable count mismatch");
        BooleanFunction {
            m: self.m,
            truth_table: self.truth_table ^ rhs.truth_table,
            anf: self.anf ^ rhs.anf,
        }
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(m={}, anf={})", self.m, self)
    }
}

/// Polynomial notation, e.g. `x1x2 + x3 + 1`.
impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.anf == 0 {
            return f.write_str("0");
        }
        let mut terms: Vec<usize> = (0..1usize << self.m)
            .filter(|&s| (self.anf >> s) & 1 == 1)
            .collect();
        terms.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|s| {
                if s == 0 {
                    "1".to_string()
                } else {
                    (0..self.m as usize)
                        .filter(|j| (s >> j) & 1 == 1)
                        .map(|j| format!("x{}", j + 1))
                        .collect()
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Hex digits needed for a `2^m`-bit word.
pub fn hex_width(m: usize) -> usize {
    ((1usize << m) / 4).max(1)
}

/// Fixed-width lowercase hex; the rightmost digit holds bits 0-3.
pub fn to_hex(bits: u128, m: usize) -> String {
    format!("{:0width$x}", bits, width = hex_width(m))
}

pub fn parse_hex(s: &str, m: usize) -> Result<u128> {
    check_vars(m)?;
    if s.len() != hex_width(m) {
        return Err(Error::invalid(format!(
            "expected {} hex digits for m = {m}, got {:?}",
            hex_width(m),
            s
        )));
    }
    let v =
        u128::from_str_radix(s, 16).map_err(|e| Error::invalid(format!("bad hex {s:?}: {e}")))?;
    if v & !full_mask(m) != 0 {
        return Err(Error::invalid(format!("hex {s:?} wider than 2^{m} bits")));
    }
    Ok(v)
}

/// Walsh spectrum, one signed value per linear form `a·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    pub values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn parseval_sum(&self) -> i64 {
        self.values.iter().map(|&v| (v as i64) * (v as i64)).sum()
    }

    pub fn max_abs(&self) -> i32 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

/// The space `B(s, t, m)` of functions with valuation `>= s` and degree `<= t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    pub m: usize,
    pub s: usize,
    pub t: usize,
}

impl SpaceSpec {
    pub fn new(m: usize, s: usize, t: usize) -> Result<Self> {
        check_vars(m)?;
        if t > m {
            return Err(Error::invalid(format!(
                "degree ceiling {t} exceeds m = {m}"
            )));
        }
        if s > t + 1 {
            return Err(Error::invalid(format!(
                "valuation floor {s} above degree ceiling {t} + 1"
            )));
        }
        Ok(SpaceSpec { m, s, t })
    }

    pub fn dimension(&self) -> usize {
        (self.s..=self.t)
            .map(|k| binomial(self.m, k) as usize)
            .sum()
    }

    /// ANF mask of the monomials spanning the space.
    pub fn support_mask(&self) -> u128 {
        low_degree_mask(self.m, self.t as i32) & !low_degree_mask(self.m, self.s as i32 - 1)
    }

    /// Monomial basis in increasing mask order.
    pub fn basis(&self) -> Vec<usize> {
        let mask = self.support_mask();
        (0..1usize << self.m)
            .filter(|&s| (mask >> s) & 1 == 1)
            .collect()
    }

    pub fn contains(&self, f: &BooleanFunction) -> bool {
        f.vars() == self.m && f.anf() & !self.support_mask() == 0
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{},{})", self.s, self.t, self.m)
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// Parses `s,t,m`.
    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<usize> = text
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::invalid(format!("bad space {text:?}: {e}")))?;
        match parts[..] {
            [s, t, m] => SpaceSpec::new(m, s, t),
            _ => Err(Error::invalid(format!("expected s,t,m, got {text:?}"))),
        }
    }
}

/// Generator matrix of `RM(r, m)`: the truth tables of all monomials of
/// degree at most `r`.
pub fn rm_generator_matrix(r: usize, m: usize) -> Result<GeneratorMatrix> {
    check_vars(m)?;
    if r > m {
        return Err(Error::invalid(format!("order {r} exceeds m = {m}")));
    }
    let rows = SpaceSpec::new(m, 0, r)?
        .basis()
        .into_iter()
        .map(|s| BooleanFunction::monomial(m, s).truth_table())
        .collect();
    Ok(GeneratorMatrix::new(rows, 1 << m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bf(m: usize, terms: &[&[usize]]) -> BooleanFunction {
        BooleanFunction::from_terms(m, terms).unwrap()
    }

    /// Möbius by the subset-sum definition.
    fn mobius_naive(v: u128, m: usize) -> u128 {
        let mut out = 0u128;
        for x in 0..1usize << m {
            let mut acc = 0;
            for y in 0..1usize << m {
                if y & !x == 0 {
                    acc ^= (v >> y) & 1;
                }
            }
            out |= acc << x;
        }
        out
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(&[false; 8]).unwrap(), vec![false; 8]);
        // x1x2 in two variables: only point 3 is set
        let anf = mobius(&[false, false, false, true]).unwrap();
        assert_eq!(anf, vec![false, false, false, true]);
        assert!(mobius(&[true; 6]).is_err());
        assert!(mobius(&[]).is_err());
    }

    #[test]
    fn mobius_word_matches_definition_and_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in 1..=7 {
            for _ in 0..50 {
                let v: u128 = rng.gen::<u128>() & full_mask(m);
                assert_eq!(mobius_word(v, m), mobius_naive(v, m));
            }
        }
        for _ in 0..1000 {
            let v: u128 = rng.gen();
            assert_eq!(mobius_word(mobius_word(v, 7), 7), v);
        }
    }

    #[test]
    fn mobius_slice_agrees_with_word() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let v: u128 = rng.gen::<u128>() & full_mask(5);
            let bits: Vec<bool> = (0..32).map(|i| (v >> i) & 1 == 1).collect();
            let out = mobius(&bits).unwrap();
            let packed = out
                .iter()
                .enumerate()
                .fold(0u128, |a, (i, &b)| a | ((b as u128) << i));
            assert_eq!(packed, mobius_word(v, 5));
        }
    }

    #[test]
    fn degree_and_valuation() {
        assert_eq!(BooleanFunction::zero(4).degree(), -1);
        assert_eq!(BooleanFunction::zero(4).valuation(), INFINITE_VALUATION);
        assert_eq!(bf(7, &[&[1, 2, 3], &[1]]).degree(), 3);
        assert_eq!(bf(3, &[&[], &[1, 2]]).valuation(), 0);
        assert_eq!(bf(3, &[&[1, 2], &[1, 2, 3]]).valuation(), 2);
    }

    #[test]
    fn reduction_and_homogeneous_parts() {
        let f = bf(3, &[&[1], &[1, 2, 3]]);
        assert_eq!(f.reduce_mod_rm(1), bf(3, &[&[1, 2, 3]]));
        assert_eq!(f.reduce_mod_rm(3), BooleanFunction::zero(3));
        assert_eq!(f.reduce_mod_rm(-1), f);
        assert_eq!(
            bf(3, &[&[1], &[2, 3]]).homogeneous_part(2),
            bf(3, &[&[2, 3]])
        );

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let f = BooleanFunction::from_anf(6, rng.gen::<u128>() & full_mask(6)).unwrap();
            let sum = (0..=6).fold(BooleanFunction::zero(6), |acc, r| {
                acc ^ f.homogeneous_part(r)
            });
            assert_eq!(sum, f);
            for r in 0..=6i32 {
                let diff = f.reduce_mod_rm(r - 1) ^ f.reduce_mod_rm(r);
                assert_eq!(diff, f.homogeneous_part(r as usize));
            }
        }
    }

    #[test]
    fn walsh_examples() {
        assert_eq!(
            BooleanFunction::zero(3).walsh().values,
            vec![8, 0, 0, 0, 0, 0, 0, 0]
        );

        let q = bf(5, &[&[1, 2], &[3, 4]]);
        let spec = q.walsh();
        // brute-force spectrum
        for a in 0..32usize {
            let w: i32 = (0..32usize)
                .map(|x| {
                    let bit = q.eval(x) as u32 + (a & x).count_ones();
                    if bit.is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                })
                .sum();
            assert_eq!(spec.values[a], w);
            assert!(w.abs() == 0 || w.abs() == 8);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let f = BooleanFunction::from_truth_table(7, rng.gen()).unwrap();
            assert_eq!(f.walsh().parseval_sum(), 1 << 14);
        }
    }

    #[test]
    fn near_bent_examples() {
        assert!(bf(5, &[&[1, 2], &[3, 4]]).is_near_bent().unwrap());
        assert!(!BooleanFunction::zero(5).is_near_bent().unwrap());
        assert!(bf(7, &[&[1, 2], &[3, 4], &[5, 6]]).is_near_bent().unwrap());
        assert!(BooleanFunction::zero(4).is_near_bent().is_err());
    }

    #[test]
    fn inner_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = BooleanFunction::from_truth_table(5, rng.gen::<u128>() & full_mask(5)).unwrap();
        assert_eq!(f.inner_product(&BooleanFunction::zero(5)).unwrap(), 0);
        for m in 1..=7 {
            for s in 0..1usize << m {
                let a = BooleanFunction::monomial(m, s);
                let b = BooleanFunction::monomial(m, s ^ ((1 << m) - 1));
                assert_eq!(a.inner_product(&b).unwrap(), 1);
            }
        }
        assert!(f.inner_product(&BooleanFunction::zero(4)).is_err());
    }

    #[test]
    fn complement_transform_examples() {
        assert_eq!(bf(3, &[&[1]]).complement_transform(), bf(3, &[&[2, 3]]));
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let b247 = SpaceSpec::new(7, 2, 4).unwrap();
        let b357 = SpaceSpec::new(7, 3, 5).unwrap();
        for _ in 0..1000 {
            let f = BooleanFunction::from_anf(7, rng.gen::<u128>() & b247.support_mask()).unwrap();
            let g = f.complement_transform();
            assert!(b357.contains(&g));
            assert_eq!(g.complement_transform(), f);
        }
    }

    #[test]
    fn space_dimensions() {
        for m in 1..=7 {
            for t in 0..=m {
                for s in 0..=t {
                    let sp = SpaceSpec::new(m, s, t).unwrap();
                    let count = (0..1usize << m)
                        .filter(|x| (s..=t).contains(&(x.count_ones() as usize)))
                        .count();
                    assert_eq!(sp.dimension(), count);
                    assert_eq!(sp.basis().len(), count);
                    let dual = SpaceSpec::new(m, m - t, m - s).unwrap();
                    assert_eq!(dual.dimension(), count);
                }
            }
        }
        assert_eq!(SpaceSpec::new(7, 5, 4).unwrap().dimension(), 0);
        assert!(SpaceSpec::new(7, 6, 4).is_err());
        assert_eq!(
            "2,4,7".parse::<SpaceSpec>().unwrap(),
            SpaceSpec::new(7, 2, 4).unwrap()
        );
    }

    /// Every nonzero `g` in `B(m-t, m-s, m)` pairs to 1 with some monomial of
    /// `B(s, t, m)`.
    fn duality_pairing_holds(m: usize, s: usize, t: usize, g: &BooleanFunction) -> bool {
        SpaceSpec::new(m, s, t)
            .unwrap()
            .basis()
            .into_iter()
            .any(|x| BooleanFunction::monomial(m, x).inner_product(g).unwrap() == 1)
    }

    #[test]
    fn duality_pairing_exhaustive_small() {
        for m in 1..=4 {
            for t in 0..=m {
                for s in 0..=t {
                    let dual = SpaceSpec::new(m, m - t, m - s).unwrap();
                    let basis = dual.basis();
                    for coeffs in 1u64..1 << basis.len() {
                        let anf = basis
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| (coeffs >> i) & 1 == 1)
                            .fold(0u128, |a, (_, &x)| a | 1u128 << x);
                        let g = BooleanFunction::from_anf(m, anf).unwrap();
                        assert!(
                            duality_pairing_holds(m, s, t, &g),
                            "m={m} s={s} t={t} g={g}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn duality_pairing_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 5..=7 {
            for _ in 0..300 {
                let t = rng.gen_range(0..=m);
                let s = rng.gen_range(0..=t);
                let mask = SpaceSpec::new(m, m - t, m - s).unwrap().support_mask();
                let anf = rng.gen::<u128>() & mask;
                if anf == 0 {
                    continue;
                }
                let g = BooleanFunction::from_anf(m, anf).unwrap();
                assert!(duality_pairing_holds(m, s, t, &g));
            }
        }
    }

    #[test]
    fn hex_format() {
        let f = bf(3, &[&[1, 2, 3], &[]]);
        assert_eq!(f.anf_hex(), "81");
        assert_eq!(BooleanFunction::from_anf_hex(3, "81").unwrap(), f);
        assert_eq!(to_hex(1, 7).len(), 32);
        assert_eq!(to_hex(1, 1), "1");
        assert!(parse_hex("100", 3).is_err());
        assert!(parse_hex("1f", 2).is_err());
    }

    #[test]
    fn generator_matrix_shapes() {
        let g = rm_generator_matrix(0, 3).unwrap();
        assert_eq!((g.k(), g.n()), (1, 8));
        assert_eq!(g.rows()[0], 0xff);
        let g = rm_generator_matrix(3, 7).unwrap();
        assert_eq!((g.k(), g.n()), (64, 128));
        let g = rm_generator_matrix(1, 5).unwrap();
        assert_eq!((g.k(), g.n()), (6, 32));
    }

    #[test]
    fn display_uses_polynomial_notation() {
        assert_eq!(bf(3, &[&[1, 2], &[3], &[]]).to_string(), "x1x2 + x3 + 1");
        assert_eq!(BooleanFunction::zero(2).to_string(), "0");
    }
}
