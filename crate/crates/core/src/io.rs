//! Result files, checkpoints and run manifests.
//!
//! A classification file holds one record per line:
//!
//! ```text
//! level anf_hex stab_order gen_count gen_1 ... gen_k
//! ```
//!
//! preceded by `#` header lines `# key=value`. A checkpoint is the same
//! file under a `.partial` suffix with `# done N` lines marking that the
//! children of the first `N` parents are complete.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::boolean::{BooleanFunction, SpaceSpec};
use crate::census::{ClassCountTable, NearBentCensus};
use crate::classify::{ClassRecord, Classification, ClassifyConfig};
use crate::covrad::{CoveringReport, TrialReport};
use crate::error::{Error, Result};
use crate::group::AffineMap;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "RMCOSET_OUT";

pub fn record_line(rec: &ClassRecord) -> String {
    let mut line = format!(
        "{} {} {} {}",
        rec.level,
        rec.representative.anf_hex(),
        rec.stab_order,
        rec.stab_gens.len()
    );
    for g in &rec.stab_gens {
        line.push(' ');
        line.push_str(&g.to_token());
    }
    line
}

pub fn parse_record(m: usize, line: &str) -> Result<ClassRecord> {
    let bad = |what: &str| Error::invalid(format!("bad record ({what}): {line:?}"));
    let mut it = line.split_whitespace();
    let level = it
        .next()
        .ok_or_else(|| bad("level"))?
        .parse()
        .map_err(|_| bad("level"))?;
    let representative = BooleanFunction::from_anf_hex(m, it.next().ok_or_else(|| bad("anf"))?)?;
    let stab_order = it
        .next()
        .ok_or_else(|| bad("order"))?
        .parse()
        .map_err(|_| bad("order"))?;
    let count: usize = it
        .next()
        .ok_or_else(|| bad("count"))?
        .parse()
        .map_err(|_| bad("count"))?;
    let stab_gens = it
        .map(|tok| AffineMap::from_token(m, tok))
        .collect::<Result<Vec<_>>>()?;
    if stab_gens.len() != count {
        return Err(bad("generator count"));
    }
    Ok(ClassRecord {
        level,
        representative,
        stab_order,
        stab_gens,
    })
}

fn header(c: &Classification) -> String {
    format!(
        "# space={}\n# m={}\n# degree={}\n# level={}\n",
        c.space(),
        c.m,
        c.degree,
        c.level
    )
}

/// Output file of one level: `B(s,t,m)` as `b_s_t_m.txt`.
pub fn level_path(dir: &Path, space: &SpaceSpec) -> PathBuf {
    dir.join(format!("b_{}_{}_{}.txt", space.s, space.t, space.m))
}

fn partial_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".partial");
    PathBuf::from(name)
}

pub fn write_classification(path: &Path, c: &Classification) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(header(c).as_bytes())?;
    for rec in &c.records {
        writeln!(w, "{}", record_line(rec))?;
    }
    w.flush()?;
    Ok(())
}

struct Parsed {
    m: usize,
    degree: usize,
    level: i32,
    records: Vec<ClassRecord>,
    /// `(parents done, records at that point)` of the last complete marker.
    done: Option<(usize, usize)>,
}

fn parse_file(path: &Path) -> Result<Parsed> {
    let reader = BufReader::new(File::open(path)?);
    let mut keys = BTreeMap::new();
    let mut records = Vec::new();
    let mut done = None;
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(n) = rest.strip_prefix("done ") {
                let n = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad marker {line:?}")))?;
                done = Some((n, records.len()));
            } else if let Some((k, v)) = rest.split_once('=') {
                keys.insert(k.to_string(), v.to_string());
            }
            continue;
        }
        let m = keys
            .get("m")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::invalid(format!("{}: record before header", path.display())))?;
        match parse_record(m, line) {
            Ok(r) => records.push(r),
            // a torn final line of an interrupted checkpoint
            Err(_) if path.extension().is_some_and(|e| e == "partial") => break,
            Err(e) => return Err(e),
        }
    }
    let get = |k: &str| -> Result<i64> {
        keys.get(k)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::invalid(format!("{}: missing header {k}", path.display())))
    };
    Ok(Parsed {
        m: get("m")? as usize,
        degree: get("degree")? as usize,
        level: get("level")? as i32,
        records,
        done,
    })
}

pub fn read_classification(path: &Path) -> Result<Classification> {
    let p = parse_file(path)?;
    if let Some(r) = p.records.iter().find(|r| r.level != p.level) {
        return Err(Error::invalid(format!(
            "{}: record at level {} in a level-{} file",
            path.display(),
            r.level,
            p.level
        )));
    }
    Ok(Classification {
        m: p.m,
        degree: p.degree,
        level: p.level,
        records: p.records,
    })
}

/// Completed prefix of a checkpoint: children and the number of parents
/// they cover.
pub fn read_checkpoint(path: &Path) -> Result<(Vec<ClassRecord>, usize)> {
    let mut p = parse_file(path)?;
    match p.done {
        Some((parents, records)) => {
            p.records.truncate(records);
            Ok((p.records, parents))
        }
        None => Ok((Vec::new(), 0)),
    }
}

/// Flat `key=value` description of a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunManifest {
    entries: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        let mut m = RunManifest::default();
        m.set("subcommand", subcommand);
        m.set("version", env!("CARGO_PKG_VERSION"));
        m
    }

    /// Inserts or replaces `key`, keeping first-insertion order.
    pub fn set(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn stamp(&mut self, key: &str) {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        self.set(key, secs);
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut m = RunManifest::default();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("manifest line without '=': {line:?}")))?;
            m.set(k.trim(), v.trim());
        }
        Ok(m)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.render())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

/// Where and how far [`run_classification`] goes.
#[derive(Clone, Debug)]
pub struct RunPlan {
    pub space: SpaceSpec,
    /// Stop after this level instead of `s - 1`.
    pub to_level: Option<i32>,
    pub out: PathBuf,
    pub resume: bool,
}

/// Classifies `plan.space` level by level, writing each level file and a
/// checkpoint during every descent. With `resume`, finished level files are
/// reloaded and an interrupted level restarts after its last marker.
pub fn run_classification(
    plan: &RunPlan,
    cfg: &ClassifyConfig,
    manifest: &mut RunManifest,
    mut progress: impl FnMut(&Classification),
) -> Result<Classification> {
    let SpaceSpec { m, s, t } = plan.space;
    let target = plan.to_level.unwrap_or(s as i32 - 1);
    if target < s as i32 - 1 || target > t as i32 {
        return Err(Error::invalid(format!(
            "level {target} is outside {}..={t}",
            s as i32 - 1
        )));
    }
    fs::create_dir_all(&plan.out)?;
    let manifest_path = plan.out.join("classify.manifest");
    let mut current = Classification::top(m, t)?;
    write_classification(&level_path(&plan.out, &current.space()), &current)?;
    manifest.set(&format!("level.{}", current.level), current.len());
    while current.level > target {
        let space = SpaceSpec::new(m, current.level as usize, t)?;
        let path = level_path(&plan.out, &space);
        if plan.resume && path.exists() {
            let c = read_classification(&path)?;
            c.mass_check()?;
            current = c;
        } else {
            let ckpt = partial_path(&path);
            let (done, done_parents) = if plan.resume && ckpt.exists() {
                read_checkpoint(&ckpt)?
            } else {
                (Vec::new(), 0)
            };
            let mut file = if done_parents > 0 {
                let mut f = OpenOptions::new().append(true).open(&ckpt)?;
                writeln!(f)?;
                f
            } else {
                let mut f = File::create(&ckpt)?;
                let shell = Classification {
                    m,
                    degree: t,
                    level: current.level - 1,
                    records: Vec::new(),
                };
                f.write_all(header(&shell).as_bytes())?;
                f
            };
            let next = current.descend_from(cfg, done, done_parents, |parents, kids| {
                let mut buf = String::new();
                for r in kids {
                    buf.push_str(&record_line(r));
                    buf.push('\n');
                }
                buf.push_str(&format!("# done {parents}\n"));
                file.write_all(buf.as_bytes())?;
                Ok(())
            })?;
            drop(file);
            write_classification(&path, &next)?;
            fs::remove_file(&ckpt)?;
            current = next;
        }
        manifest.set(&format!("level.{}", current.level), current.len());
        manifest.write(&manifest_path)?;
        progress(&current);
    }
    manifest.write(&manifest_path)?;
    Ok(current)
}

/// Lines `s t m count`, then the rendered table.
pub fn count_report(table: &ClassCountTable) -> String {
    format!(
        "{}\n{}",
        table.to_lines(),
        crate::census::table_render(table)
    )
}

/// Per-representative `anf_hex stab_order N(f)` lines and totals.
pub fn near_bent_report(c: &NearBentCensus) -> String {
    let mut out = String::new();
    for (f, stab, n) in &c.per_representative {
        out.push_str(&format!("{} {} {}\n", f.anf_hex(), stab, n));
    }
    out.push_str(&format!("modulo_affine {}\n", c.modulo_affine));
    out.push_str(&format!("total {}\n", c.total));
    out
}

pub fn trial_line(f: &BooleanFunction, t: &TrialReport) -> String {
    format!(
        "{} {} {} {} {}",
        f.anf_hex(),
        t.best,
        t.trials,
        if t.hit { "hit" } else { "miss" },
        t.seed
    )
}

/// One line per representative, then `aggregate count mean stddev`.
pub fn covering_report(r: &CoveringReport) -> String {
    let mut out = String::new();
    for (f, t) in &r.entries {
        out.push_str(&trial_line(f, t));
        out.push('\n');
    }
    let (mean, sd) = r.trial_stats();
    out.push_str(&format!(
        "aggregate {} {:.2} {:.2}\n",
        r.entries.len(),
        mean,
        sd
    ));
    out
}
