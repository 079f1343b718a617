//! Descending classification of `B(s, t, m)`.
//!
//! A classification at level `r` of degree `k` is a set of orbit
//! representatives of `B(r + 1, k, m)` modulo `RM(r, m)`, each with the order
//! and a generating set of its level-`r` stabilizer. Level `r - 1` is
//! obtained from level `r` by splitting every representative `f` into
//! `f + u`, one per orbit of degree-`r` forms `u` under the boundary action
//! of the stabilizer of `f`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::boolean::{BooleanFunction, SpaceSpec};
use crate::error::{Error, Result};
use crate::group::{act, generators_stu, group_order, AffineMap, SubgroupOracle};

mod boundary;

pub use boundary::{
    boundary_act, generator_set, orbit_enumerate, stab_order_from_class_formula, BoundaryAction,
    Form, FormSpace, Orbit, OrbitSet, VisitedSet, MAX_FORM_DIM,
};

/// One orbit at a given level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub level: i32,
    pub representative: BooleanFunction,
    pub stab_order: u128,
    pub stab_gens: Vec<AffineMap>,
}

impl ClassRecord {
    /// Checks that every generator fixes the representative modulo
    /// `RM(level, m)` and that they generate a group of the recorded order.
    pub fn verify(&self) -> Result<()> {
        for g in &self.stab_gens {
            let moved = act(&self.representative, g) ^ self.representative;
            if !moved.reduce_mod_rm(self.level).is_zero() {
                return Err(Error::internal(format!(
                    "{g:?} does not fix {} at level {}",
                    self.representative, self.level
                )));
            }
        }
        let m = self.representative.vars();
        let order = SubgroupOracle::from_generators(m, &self.stab_gens).order();
        if order != self.stab_order {
            return Err(Error::internal(format!(
                "generators of {} span order {order}, recorded {}",
                self.representative, self.stab_order
            )));
        }
        if !group_order(m).is_multiple_of(self.stab_order) {
            return Err(Error::internal(format!(
                "stabilizer order {} does not divide |AGL({m},2)|",
                self.stab_order
            )));
        }
        Ok(())
    }

    /// Size of the orbit of the representative at its level.
    pub fn orbit_size(&self) -> u128 {
        group_order(self.representative.vars()) / self.stab_order
    }
}

/// Resource limits for a classification run.
#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    /// Largest form-space dimension kept as a flat bit array; larger spaces
    /// fall back to a hash set.
    pub flat_max_dim: usize,
    /// Memory budget in bytes for the orbit enumerations running at once.
    pub mem_limit: u64,
    /// Allows form spaces of dimension at least [`LONG_RUN_DIM`].
    pub allow_long: bool,
    /// Number of parent representatives handed to the worker pool at a time.
    pub chunk: usize,
}

/// Form-space dimension from which a level counts as a long run.
pub const LONG_RUN_DIM: usize = 30;

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            flat_max_dim: MAX_FORM_DIM,
            mem_limit: 2 << 30,
            allow_long: false,
            chunk: 256,
        }
    }
}

impl ClassifyConfig {
    /// Bytes needed to enumerate one form space of dimension `dim` under a
    /// group of order `group`.
    pub fn estimate_bytes(&self, dim: usize, group: u128) -> u64 {
        let space = 1u128 << dim;
        let marks = if dim <= self.flat_max_dim {
            space / 8
        } else {
            // hash set entry plus overhead
            space * 24
        };
        let stack = space.min(group) * 8;
        (marks + stack).min(u64::MAX as u128) as u64
    }
}

/// A complete classification at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub m: usize,
    /// Degree ceiling `k`.
    pub degree: usize,
    pub level: i32,
    pub records: Vec<ClassRecord>,
}

impl Classification {
    /// The single class `{0}` of `B(k + 1, k, m)` at level `k`, stabilized by
    /// the whole group.
    pub fn top(m: usize, degree: usize) -> Result<Self> {
        SpaceSpec::new(m, degree + 1, degree)?;
        Ok(Classification {
            m,
            degree,
            level: degree as i32,
            records: vec![ClassRecord {
                level: degree as i32,
                representative: BooleanFunction::zero(m),
                stab_order: group_order(m),
                stab_gens: generators_stu(m).to_vec(),
            }],
        })
    }

    /// The space whose classes are listed: `B(level + 1, degree, m)`.
    pub fn space(&self) -> SpaceSpec {
        SpaceSpec {
            m: self.m,
            s: (self.level + 1) as usize,
            t: self.degree,
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// `Σ |AGL(m,2)| / stab_order = 2^{dim}`: the orbits partition the space.
    pub fn mass_check(&self) -> Result<()> {
        let g = group_order(self.m);
        let mut mass = 0u128;
        for r in &self.records {
            if r.stab_order == 0 || !g.is_multiple_of(r.stab_order) {
                return Err(Error::internal(format!(
                    "stabilizer order {} does not divide {g}",
                    r.stab_order
                )));
            }
            mass = mass
                .checked_add(g / r.stab_order)
                .ok_or_else(|| Error::internal("orbit mass overflows 128 bits"))?;
        }
        let dim = self.space().dimension();
        let expected = 1u128
            .checked_shl(dim as u32)
            .filter(|_| dim < 128)
            .ok_or_else(|| Error::invalid(format!("space dimension {dim} too large")))?;
        if mass != expected {
            return Err(Error::internal(format!(
                "orbit mass {mass} != 2^{dim} at level {}",
                self.level
            )));
        }
        Ok(())
    }

    /// Pre-flight memory estimate for the next descent step.
    pub fn preflight(&self, cfg: &ClassifyConfig) -> Result<u64> {
        if self.level < 0 {
            return Err(Error::invalid("classification already at level -1"));
        }
        let dim = FormSpace::new(self.m, self.level as usize).dim();
        if dim >= LONG_RUN_DIM && !cfg.allow_long {
            return Err(Error::ResourceRefused(format!(
                "level {} -> {} enumerates 2^{dim} forms per representative; \
                 rerun with --allow-long (expect hours; up to {} bytes per worker, raise --mem-limit to match)",
                self.level,
                self.level - 1,
                cfg.estimate_bytes(dim, group_order(self.m))
            )));
        }
        if dim > MAX_FORM_DIM {
            return Err(Error::ResourceRefused(format!(
                "form space dimension {dim} exceeds {MAX_FORM_DIM}"
            )));
        }
        let worst = self
            .records
            .iter()
            .map(|r| cfg.estimate_bytes(dim, r.stab_order))
            .max()
            .unwrap_or(0);
        if worst > cfg.mem_limit {
            return Err(Error::ResourceRefused(format!(
                "level {} -> {} needs about {worst} bytes for one representative, \
                 limit is {} bytes",
                self.level,
                self.level - 1,
                cfg.mem_limit
            )));
        }
        Ok(worst)
    }

    /// Classification at the next level down.
    pub fn descend(&self, cfg: &ClassifyConfig) -> Result<Classification> {
        self.descend_from(cfg, Vec::new(), 0, |_, _| Ok(()))
    }

    /// Resumable descent. `done` holds the children of the first
    /// `done_parents` representatives; `on_chunk(parents_done, children)` is
    /// called after each batch of parents completes.
    pub fn descend_from<F>(
        &self,
        cfg: &ClassifyConfig,
        done: Vec<ClassRecord>,
        done_parents: usize,
        mut on_chunk: F,
    ) -> Result<Classification>
    where
        F: FnMut(usize, &[ClassRecord]) -> Result<()>,
    {
        let per_rep = self.preflight(cfg)?.max(1);
        let threads = rayon::current_num_threads();
        let workers = ((cfg.mem_limit / per_rep) as usize).clamp(1, threads);
        let batch = cfg.chunk.max(1);
        let level = self.level as usize;
        let mut children = done;
        let mut next = done_parents;
        while next < self.records.len() {
            let end = (next + batch).min(self.records.len());
            let parents = &self.records[next..end];
            let split = |rec: &ClassRecord| split_record(rec, level, cfg);
            // at most `workers` enumerations in flight
            let results: Vec<Result<Vec<ClassRecord>>> = if workers == threads {
                parents.par_iter().with_max_len(1).map(split).collect()
            } else {
                parents
                    .chunks(workers)
                    .flat_map(|sub| sub.par_iter().map(split).collect::<Vec<_>>())
                    .collect()
            };
            let start = children.len();
            for r in results {
                children.extend(r?);
            }
            on_chunk(end, &children[start..])?;
            next = end;
        }
        let out = Classification {
            m: self.m,
            degree: self.degree,
            level: self.level - 1,
            records: children,
        };
        out.mass_check()?;
        Ok(out)
    }

    /// Stabilizer order → number of classes.
    pub fn stab_histogram(&self) -> BTreeMap<u128, usize> {
        stab_histogram(&self.records)
    }

    pub fn verify_all(&self) -> Result<()> {
        self.records.par_iter().try_for_each(ClassRecord::verify)
    }
}

/// Children of one representative at the next level down.
fn split_record(rec: &ClassRecord, level: usize, cfg: &ClassifyConfig) -> Result<Vec<ClassRecord>> {
    let ctx = BoundaryAction::new(rec.representative, level, &rec.stab_gens)?;
    let orbits = orbit_enumerate(&ctx, cfg.flat_max_dim);
    let mut out = Vec::with_capacity(orbits.len());
    for orbit in orbits {
        let order = stab_order_from_class_formula(rec.stab_order, orbit.size)?;
        let gens = generator_set(orbit.seed, order, &ctx)?;
        out.push(ClassRecord {
            level: level as i32 - 1,
            representative: rec.representative ^ ctx.space().to_function(orbit.seed),
            stab_order: order,
            stab_gens: gens,
        });
    }
    Ok(out)
}

/// Classes of `B(s, t, m)`: descends from `{0}` at level `t` to level `s - 1`,
/// checking the orbit mass at every level.
pub fn classify_space(
    s: usize,
    t: usize,
    m: usize,
    cfg: &ClassifyConfig,
) -> Result<Classification> {
    classify_space_with(s, t, m, cfg, |_| Ok(()))
}

/// Like [`classify_space`], calling `on_level` with each completed level.
pub fn classify_space_with<F>(
    s: usize,
    t: usize,
    m: usize,
    cfg: &ClassifyConfig,
    mut on_level: F,
) -> Result<Classification>
where
    F: FnMut(&Classification) -> Result<()>,
{
    SpaceSpec::new(m, s, t)?;
    let mut current = Classification::top(m, t)?;
    current.mass_check()?;
    on_level(&current)?;
    while current.level > s as i32 - 1 {
        current = current.descend(cfg)?;
        on_level(&current)?;
    }
    Ok(current)
}

/// Stabilizer order → multiplicity.
pub fn stab_histogram(records: &[ClassRecord]) -> BTreeMap<u128, usize> {
    let mut hist = BTreeMap::new();
    for r in records {
        *hist.entry(r.stab_order).or_insert(0) += 1;
    }
    hist
}

/// Orbit sizes of the records under the full group at their level.
pub fn orbit_sizes(records: &[ClassRecord]) -> Vec<u128> {
    records.iter().map(ClassRecord::orbit_size).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cfg() -> ClassifyConfig {
        ClassifyConfig::default()
    }

    #[test]
    fn top_level_is_singleton() {
        let c = Classification::top(5, 3).unwrap();
        assert_eq!(c.len(), 1);
        c.mass_check().unwrap();
        let hist = c.stab_histogram();
        assert_eq!(
            hist.into_iter().collect::<Vec<_>>(),
            vec![(group_order(5), 1)]
        );
    }

    #[test]
    fn quadratic_classes_match_rank_count() {
        // quadratic forms up to affine equivalence: ranks 0, 2, …, 2⌊m/2⌋
        for (m, expected) in [(3, 2), (4, 3), (5, 3), (6, 4), (7, 4)] {
            let c = classify_space(2, 2, m, &cfg()).unwrap();
            assert_eq!(c.len(), expected, "m = {m}");
            c.verify_all().unwrap();
        }
    }

    #[test]
    fn first_step_equals_top_form_classification() {
        let c = Classification::top(4, 3).unwrap().descend(&cfg()).unwrap();
        assert_eq!(c.level, 2);
        assert_eq!(c.space(), SpaceSpec::new(4, 3, 3).unwrap());
        assert_eq!(c, classify_space(3, 3, 4, &cfg()).unwrap());
    }

    #[test]
    fn every_level_passes_the_mass_check_m5() {
        let mut levels = 0;
        classify_space_with(0, 5, 5, &cfg(), |c| {
            c.mass_check()?;
            c.verify_all()?;
            levels += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(levels, 7);
    }

    #[test]
    fn representatives_respect_degree_and_valuation() {
        let c = classify_space(2, 4, 5, &cfg()).unwrap();
        for r in &c.records {
            assert!(r.representative.degree() <= 4);
            assert!(r.representative.valuation() >= 2);
            assert_eq!(r.level, 1);
        }
        let reps: HashSet<_> = c.records.iter().map(|r| r.representative).collect();
        assert_eq!(reps.len(), c.len());
    }

    #[test]
    fn orbit_of_size_one_keeps_parent_order() {
        let c = Classification::top(3, 3).unwrap().descend(&cfg()).unwrap();
        // 0 and x1x2x3 are both fixed by everything modulo RM(2,3)
        assert_eq!(c.len(), 2);
        for r in &c.records {
            assert_eq!(r.stab_order, 1344);
            assert_eq!(
                SubgroupOracle::from_generators(3, &r.stab_gens).order(),
                1344
            );
        }
    }

    #[test]
    fn chunked_resume_matches_single_pass() {
        let parent = classify_space(3, 5, 5, &cfg()).unwrap();
        let whole = parent.descend(&cfg()).unwrap();
        let small = ClassifyConfig { chunk: 2, ..cfg() };
        let mut seen = Vec::new();
        let first = parent
            .descend_from(&small, Vec::new(), 0, |n, kids| {
                seen.push((n, kids.len()));
                Ok(())
            })
            .unwrap();
        assert_eq!(first, whole);
        assert!(seen.len() > 1);
        // resume after the first chunk
        let (n0, k0) = seen[0];
        let resumed = parent
            .descend_from(&small, whole.records[..k0].to_vec(), n0, |_, _| Ok(()))
            .unwrap();
        assert_eq!(resumed, whole);
    }

    #[test]
    fn long_levels_are_refused_without_flag() {
        let top = Classification::top(7, 4).unwrap();
        assert!(matches!(
            top.preflight(&cfg()),
            Err(Error::ResourceRefused(_))
        ));
        let tight = ClassifyConfig {
            mem_limit: 1000,
            ..cfg()
        };
        let top = Classification::top(7, 2).unwrap();
        let err = top.preflight(&tight).unwrap_err();
        assert!(matches!(err, Error::ResourceRefused(ref s) if s.contains("bytes")));
    }
}
