//! Randomized search for small-weight words in a coset `f + RM(r, m)`, the
//! exact coset minimum weight for small codes, and covering-radius bounds
//! over the representatives of a classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::boolean::{rm_generator_matrix, BooleanFunction};
use crate::classify::Classification;
use crate::error::{Error, Result};
use crate::group::{act, random_affine};

/// Default trial budget of [`distance`].
pub const DEFAULT_MAX_ITER: u64 = 2048;
/// Largest code dimension [`exact_coset_min_weight`] enumerates.
pub const EXACT_MAX_DIM: usize = 28;

/// `k × n` generator matrix over `F_2`, rows packed into `u128` (`n <= 128`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    rows: Vec<u128>,
    n: usize,
    pivots: Option<Vec<usize>>,
}

impl GeneratorMatrix {
    pub fn new(rows: Vec<u128>, n: usize) -> Self {
        assert!(n <= 128, "row length {n} exceeds 128");
        let mask = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        assert!(rows.iter().all(|r| r & !mask == 0), "row wider than n");
        GeneratorMatrix {
            rows,
            n,
            pivots: None,
        }
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    /// Pivot column of each row, once [`pivoting`] has run.
    pub fn pivots(&self) -> Option<&[usize]> {
        self.pivots.as_deref()
    }
}

/// Gauss-Jordan elimination with a random pivot in each row: rows are
/// taken in order and the pivot of row `i` is drawn uniformly among the set
/// columns of the row after elimination by the earlier rows.
pub fn pivoting<R: Rng + ?Sized>(g: &mut GeneratorMatrix, rng: &mut R) -> Result<()> {
    let k = g.rows.len();
    let mut pivots = Vec::with_capacity(k);
    for i in 0..k {
        let row = g.rows[i];
        if row == 0 {
            return Err(Error::invalid(format!(
                "generator matrix has rank < {k}: row {i} is dependent"
            )));
        }
        let mut pick = rng.gen_range(0..row.count_ones());
        let mut rest = row;
        while pick > 0 {
            rest &= rest - 1;
            pick -= 1;
        }
        let p = rest.trailing_zeros() as usize;
        for (j, other) in g.rows.iter_mut().enumerate() {
            if j != i && (*other >> p) & 1 == 1 {
                *other ^= row;
            }
        }
        pivots.push(p);
    }
    g.pivots = Some(pivots);
    Ok(())
}

/// Adds row `i` to `word` whenever `word` has a 1 at the pivot of row `i`.
pub fn reduce(word: u128, g: &GeneratorMatrix) -> Result<u128> {
    let pivots = g
        .pivots
        .as_ref()
        .ok_or_else(|| Error::invalid("reduce needs a pivoted generator matrix"))?;
    Ok(g.rows.iter().zip(pivots).fold(
        word,
        |w, (row, &p)| if (w >> p) & 1 == 1 { w ^ row } else { w },
    ))
}

/// Outcome of one [`distance`] run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialReport {
    pub trials: u64,
    /// Smallest weight seen; an upper bound on the coset minimum weight.
    pub best: u32,
    pub threshold: u32,
    pub seed: u64,
    pub hit: bool,
}

/// Random trials until a word of weight at most `threshold` turns up in
/// `f + C` (up to the group action) or `max_iter` trials are spent.
pub fn distance<R: Rng + ?Sized>(
    f: &BooleanFunction,
    g: &mut GeneratorMatrix,
    threshold: u32,
    max_iter: u64,
    rng: &mut R,
) -> Result<TrialReport> {
    let m = f.vars();
    if g.n() != 1 << m {
        return Err(Error::invalid(format!(
            "code length {} does not match 2^{m}",
            g.n()
        )));
    }
    let mut best = g.n() as u32;
    let mut trials = 0;
    while best > threshold && trials < max_iter {
        let word = act(f, &random_affine(m, rng)).truth_table();
        pivoting(g, rng)?;
        best = best.min(reduce(word, g)?.count_ones());
        trials += 1;
    }
    Ok(TrialReport {
        trials,
        best,
        threshold,
        seed: 0,
        hit: best <= threshold,
    })
}

/// RNG for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// [`distance`] against `RM(r, m)` on its own RNG stream.
pub fn distance_seeded(
    f: &BooleanFunction,
    r: usize,
    threshold: u32,
    max_iter: u64,
    seed: u64,
    stream: u64,
) -> Result<TrialReport> {
    let mut g = rm_generator_matrix(r, f.vars())?;
    let mut rng = stream_rng(seed, stream);
    let mut report = distance(f, &mut g, threshold, max_iter, &mut rng)?;
    report.seed = seed;
    Ok(report)
}

/// `min_{c ∈ RM(r,m)} wt(f + c)` by walking the code in Gray-code order.
pub fn exact_coset_min_weight(f: &BooleanFunction, r: usize) -> Result<u32> {
    let g = rm_generator_matrix(r, f.vars())?;
    let k = g.k();
    if k > EXACT_MAX_DIM {
        return Err(Error::ResourceRefused(format!(
            "RM({r},{}) has dimension {k}; exact enumeration is limited to {EXACT_MAX_DIM}",
            f.vars()
        )));
    }
    let rows = g.rows();
    let total = 1u64 << k;
    let blocks = 256u64.min(total);
    let step = total / blocks;
    let scan = |lo: u64| -> u32 {
        let code = lo ^ (lo >> 1);
        let mut word = rows
            .iter()
            .enumerate()
            .filter(|(j, _)| (code >> j) & 1 == 1)
            .fold(f.truth_table(), |a, (_, &row)| a ^ row);
        let mut best = word.count_ones();
        for i in lo + 1..lo + step {
            word ^= rows[i.trailing_zeros() as usize];
            best = best.min(word.count_ones());
        }
        best
    };
    Ok((0..blocks)
        .into_par_iter()
        .map(|b| scan(b * step))
        .min()
        .expect("at least one block"))
}

/// Per-representative reports and aggregate trial statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringReport {
    pub m: usize,
    pub r: usize,
    pub threshold: u32,
    pub max_iter: u64,
    pub seed: u64,
    pub entries: Vec<(BooleanFunction, TrialReport)>,
}

impl CoveringReport {
    /// Every representative reached the threshold: the covering radius of
    /// `RM(r, m)` inside the classified space is at most `threshold`.
    pub fn certified(&self) -> bool {
        self.entries.iter().all(|(_, t)| t.hit)
    }

    /// Largest best score over the representatives.
    pub fn max_best(&self) -> Option<u32> {
        self.entries.iter().map(|(_, t)| t.best).max()
    }

    /// Mean and population standard deviation of the trial counts.
    pub fn trial_stats(&self) -> (f64, f64) {
        let n = self.entries.len() as f64;
        if n == 0.0 {
            return (0.0, 0.0);
        }
        let mean = self
            .entries
            .iter()
            .map(|(_, t)| t.trials as f64)
            .sum::<f64>()
            / n;
        let var = self
            .entries
            .iter()
            .map(|(_, t)| (t.trials as f64 - mean).powi(2))
            .sum::<f64>()
            / n;
        (mean, var.sqrt())
    }
}

/// Runs [`distance`] on every representative, representative `i` drawing
/// from RNG stream `i` of `seed`. `r` must be the level of `classification`,
/// where the coset minimum weight is a class invariant.
pub fn covering_radius_bound(
    classification: &Classification,
    r: usize,
    threshold: u32,
    max_iter: u64,
    seed: u64,
) -> Result<CoveringReport> {
    if classification.level != r as i32 {
        return Err(Error::invalid(format!(
            "classification is at level {}, not r = {r}",
            classification.level
        )));
    }
    let entries = classification
        .records
        .par_iter()
        .enumerate()
        .map(|(i, rec)| {
            let rep = rec.representative;
            distance_seeded(&rep, r, threshold, max_iter, seed, i as u64).map(|t| (rep, t))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoveringReport {
        m: classification.m,
        r,
        threshold,
        max_iter,
        seed,
        entries,
    })
}
