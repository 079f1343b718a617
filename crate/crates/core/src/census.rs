//! Class counting independent of the descent (Burnside's formula over the
//! whole group), the duality `n(s,t,m) = n(m-t, m-s, m)`, and the count of
//! near-bent functions from a classification.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::boolean::{low_degree_mask, BooleanFunction, SpaceSpec};
use crate::classify::{Classification, ClassifyConfig};
use crate::error::{Error, Result};
use crate::group::{act, affine_group, group_order, AffineMap};

/// Largest `m` for which Burnside counting runs without the long-run flag.
pub const BURNSIDE_DESK_MAX: usize = 4;
/// Largest `m` for which Burnside counting runs at all.
pub const BURNSIDE_MAX: usize = 5;

fn gf2_rank(vectors: &mut [u128]) -> usize {
    let mut rank = 0;
    for i in 0..vectors.len() {
        let Some(p) = (i..vectors.len()).max_by_key(|&j| vectors[j]) else {
            break;
        };
        if vectors[p] == 0 {
            break;
        }
        vectors.swap(i, p);
        let lead = 127 - vectors[i].leading_zeros();
        let v = vectors[i];
        for w in vectors[i + 1..].iter_mut() {
            if (*w >> lead) & 1 == 1 {
                *w ^= v;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_2` of a list of packed vectors.
pub fn rank(vectors: &[u128]) -> usize {
    gf2_rank(&mut vectors.to_vec())
}

/// `(X∘σ + X)` for every monomial `X`, indexed by mask.
fn monomial_differences(m: usize, sigma: &AffineMap) -> Vec<u128> {
    (0..1usize << m)
        .map(|s| {
            let x = BooleanFunction::monomial(m, s);
            (act(&x, sigma) ^ x).anf()
        })
        .collect()
}

fn fixed_dimension(space: &SpaceSpec, diffs: &[u128]) -> usize {
    let keep = !low_degree_mask(space.m, space.s as i32 - 1);
    let mut image: Vec<u128> = space.basis().into_iter().map(|x| diffs[x] & keep).collect();
    space.dimension() - gf2_rank(&mut image)
}

/// `#{f ∈ B(s,t,m) : f∘σ ≡ f mod RM(s-1, m)}`, as `2^{nullity}` of
/// `f ↦ f∘σ + f` reduced modulo `RM(s-1, m)`.
pub fn fix_count(space: &SpaceSpec, sigma: &AffineMap) -> Result<u128> {
    if sigma.vars() != space.m {
        return Err(Error::invalid("map and space have different m"));
    }
    Ok(1u128 << fixed_dimension(space, &monomial_differences(space.m, sigma)))
}

fn burnside_guard(m: usize, allow_long: bool) -> Result<()> {
    if m > BURNSIDE_MAX {
        return Err(Error::ResourceRefused(format!(
            "Burnside counting enumerates AGL(m,2); m = {m} is out of reach, \
             use the classification instead"
        )));
    }
    if m > BURNSIDE_DESK_MAX && !allow_long {
        return Err(Error::ResourceRefused(format!(
            "Burnside counting for m = {m} walks {} group elements; \
             pass --allow-long to run it (hours)",
            group_order(m)
        )));
    }
    Ok(())
}

/// Number of classes of `B(s, t, m)` by Burnside's formula over every
/// element of `AGL(m, 2)`.
pub fn burnside_count(s: usize, t: usize, m: usize, allow_long: bool) -> Result<u128> {
    let space = SpaceSpec::new(m, s, t)?;
    let table = burnside_table_for(m, &[space], allow_long)?;
    Ok(table.get(s, t).expect("requested cell"))
}

/// Every `n(s, t, m)` with `0 <= s <= t <= m` by Burnside's formula.
pub fn burnside_table(m: usize, allow_long: bool) -> Result<ClassCountTable> {
    let spaces: Vec<SpaceSpec> = (0..=m)
        .flat_map(|t| (0..=t).map(move |s| SpaceSpec { m, s, t }))
        .collect();
    burnside_table_for(m, &spaces, allow_long)
}

fn burnside_table_for(m: usize, spaces: &[SpaceSpec], allow_long: bool) -> Result<ClassCountTable> {
    burnside_guard(m, allow_long)?;
    let group = affine_group(m);
    let zero = || vec![0u128; spaces.len()];
    let sums = group
        .par_iter()
        .fold(zero, |mut acc, sigma| {
            let diffs = monomial_differences(m, sigma);
            for (a, sp) in acc.iter_mut().zip(spaces) {
                *a += 1u128 << fixed_dimension(sp, &diffs);
            }
            acc
        })
        .reduce(zero, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    let order = group_order(m);
    let mut table = ClassCountTable::new(m);
    for (sp, total) in spaces.iter().zip(sums) {
        if total % order != 0 {
            return Err(Error::internal(format!(
                "Burnside sum {total} for {sp} not divisible by {order}"
            )));
        }
        table.set(sp.s, sp.t, total / order);
    }
    Ok(table)
}

/// Class numbers `n(s, t, m)`; cells not computed are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassCountTable {
    pub m: usize,
    entries: BTreeMap<(usize, usize), u128>,
}

impl ClassCountTable {
    pub fn new(m: usize) -> Self {
        ClassCountTable {
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, s: usize, t: usize, n: u128) {
        assert!(s <= t && t <= self.m, "cell ({s},{t}) outside the table");
        self.entries.insert((s, t), n);
    }

    pub fn get(&self, s: usize, t: usize) -> Option<u128> {
        self.entries.get(&(s, t)).copied()
    }

    /// Computed cells as `((s, t), n)`.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), u128)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Machine-readable lines `s t m count`.
    pub fn to_lines(&self) -> String {
        self.cells()
            .map(|((s, t), n)| format!("{s} {t} {} {n}\n", self.m))
            .collect()
    }
}

/// Cells compared by [`duality_check`]: `(s, t)`, its dual, and both values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityPair {
    pub cell: (usize, usize),
    pub dual: (usize, usize),
    pub left: u128,
    pub right: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualityReport {
    pub checked: Vec<DualityPair>,
    pub violations: Vec<DualityPair>,
}

impl DualityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `n(s,t,m)` with `n(m-t, m-s, m)` wherever both are present.
pub fn duality_check(table: &ClassCountTable) -> DualityReport {
    let m = table.m;
    let mut report = DualityReport::default();
    for ((s, t), left) in table.cells() {
        let dual = (m - t, m - s);
        if dual < (s, t) {
            continue;
        }
        if let Some(right) = table.get(dual.0, dual.1) {
            let pair = DualityPair {
                cell: (s, t),
                dual,
                left,
                right,
            };
            if left != right {
                report.violations.push(pair.clone());
            }
            report.checked.push(pair);
        }
    }
    report
}

fn render_count(n: u128) -> String {
    if n < 1_000_000 {
        n.to_string()
    } else {
        format!("10^{:.1}", (n as f64).log10())
    }
}

/// Upper-triangular text table, rows `s`, columns `t`; counts of a million
/// or more are shown as `10^x`.
pub fn table_render(table: &ClassCountTable) -> String {
    let m = table.m;
    let width = 9;
    let mut out = String::new();
    let _ = write!(out, "{:>4} |", "s\\t");
    for t in 0..=m {
        let _ = write!(out, "{t:>width$}");
    }
    out.push('\n');
    if table.is_empty() {
        return out;
    }
    let _ = writeln!(out, "{}", "-".repeat(6 + width * (m + 1)));
    for s in 0..=m {
        let _ = write!(out, "{s:>4} |");
        for t in 0..=m {
            let cell = if t < s {
                String::new()
            } else {
                table
                    .get(s, t)
                    .map_or_else(|| ".".to_string(), render_count)
            };
            let _ = write!(out, "{cell:>width$}");
        }
        out.push('\n');
    }
    out
}

/// Classification counts for every cell reachable within `max_records`
/// classes: one descent per degree ceiling `t`, recording each level.
pub fn classification_table(
    m: usize,
    cfg: &ClassifyConfig,
    max_records: usize,
) -> Result<ClassCountTable> {
    let mut table = ClassCountTable::new(m);
    for t in 0..=m {
        let mut current = Classification::top(m, t)?;
        while current.level >= 0 {
            if current.preflight(cfg).is_err() {
                break;
            }
            let mut produced = 0usize;
            let next = current.descend_from(cfg, Vec::new(), 0, |_, kids| {
                produced += kids.len();
                if produced > max_records {
                    Err(Error::ResourceRefused(format!(
                        "more than {max_records} classes"
                    )))
                } else {
                    Ok(())
                }
            });
            match next {
                Ok(c) => {
                    table.set(c.space().s, t, c.len() as u128);
                    current = c;
                }
                Err(Error::ResourceRefused(_)) => break,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(table)
}

/// Near-bent functions counted from a classification of
/// `B(3, (m+1)/2, m)` at level 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearBentCensus {
    pub m: usize,
    /// `(representative, stabilizer order, N(f))` with `N(f)` the number of
    /// quadratic forms `q` such that `f + q` is near-bent.
    pub per_representative: Vec<(BooleanFunction, u128, u64)>,
    /// `Σ N(f) |AGL(m,2)| / |Stab_2(f)|`: near-bent functions in
    /// `B(2, (m+1)/2, m)`, i.e. counted modulo affine functions.
    pub modulo_affine: u128,
    /// All near-bent functions in `m` variables: `2^{m+1}` times the above.
    pub total: u128,
}

/// Number of quadratic forms `q` with `f + q` near-bent.
pub fn near_bent_quadratic_count(f: &BooleanFunction) -> Result<u64> {
    let m = f.vars();
    if m.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "near-bent census needs odd m, got {m}"
        )));
    }
    let quads: Vec<u128> = SpaceSpec::new(m, 2, 2)?
        .basis()
        .into_iter()
        .map(|s| BooleanFunction::monomial(m, s).truth_table())
        .collect();
    let dim = quads.len();
    let count_range = |lo: u64, hi: u64| -> u64 {
        // Gray-code walk over q, starting from the code word of `lo`
        let gray = |i: u64| i ^ (i >> 1);
        let coeffs = gray(lo);
        let mut tt = quads
            .iter()
            .enumerate()
            .filter(|(j, _)| (coeffs >> j) & 1 == 1)
            .fold(f.truth_table(), |a, (_, &q)| a ^ q);
        let mut count = 0;
        for i in lo..hi {
            if i > lo {
                tt ^= quads[i.trailing_zeros() as usize];
            }
            let g = BooleanFunction::from_tt_unchecked(m, tt);
            if g.is_near_bent().unwrap_or(false) {
                count += 1;
            }
        }
        count
    };
    let total = 1u64 << dim;
    let blocks = 64u64.min(total);
    let step = total / blocks;
    Ok((0..blocks)
        .into_par_iter()
        .map(|b| count_range(b * step, (b + 1) * step))
        .sum())
}

/// Weighted count over the level-2 classes of `B(3, (m+1)/2, m)`.
pub fn near_bent_census(classification: &Classification) -> Result<NearBentCensus> {
    let m = classification.m;
    if m.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "near-bent census needs odd m, got {m}"
        )));
    }
    let expected = SpaceSpec::new(m, 3, m.div_ceil(2))?;
    if classification.level != 2 || classification.space() != expected {
        return Err(Error::DependencyMissing(format!(
            "near-bent census needs the level-2 classification of {expected}, got {}",
            classification.space()
        )));
    }
    let order = group_order(m);
    let per_representative: Vec<(BooleanFunction, u128, u64)> = classification
        .records
        .iter()
        .map(|r| {
            Ok((
                r.representative,
                r.stab_order,
                near_bent_quadratic_count(&r.representative)?,
            ))
        })
        .collect::<Result<_>>()?;
    let modulo_affine = per_representative
        .iter()
        .map(|&(_, stab, n)| n as u128 * (order / stab))
        .sum::<u128>();
    Ok(NearBentCensus {
        m,
        per_representative,
        modulo_affine,
        total: modulo_affine << (m + 1),
    })
}

/// Classifies `B(3, (m+1)/2, m)` and runs the census on it.
pub fn near_bent_census_for(m: usize, cfg: &ClassifyConfig) -> Result<NearBentCensus> {
    if m.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "near-bent census needs odd m, got {m}"
        )));
    }
    let c = crate::classify::classify_space(3, m.div_ceil(2), m, cfg)?;
    near_bent_census(&c)
}
