use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rmcoset::census::{
    burnside_table, classification_table, duality_check, near_bent_census_for, table_render,
    ClassCountTable,
};
use rmcoset::classify::{classify_space, stab_histogram, Classification, ClassifyConfig};
use rmcoset::covrad::{covering_radius_bound, DEFAULT_MAX_ITER};
use rmcoset::io::{
    count_report, covering_report, near_bent_report, read_classification, run_classification,
    RunManifest, RunPlan, OUT_DIR_ENV,
};
use rmcoset::{Error, Result, SpaceSpec};

#[derive(Parser)]
#[command(
    name = "rmcoset",
    version,
    about = "Affine classes of Reed-Muller cosets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output directory.
    #[arg(long, env = OUT_DIR_ENV, default_value = "rmcoset-out")]
    out: PathBuf,
    /// Memory budget per level, e.g. 512M or 8G.
    #[arg(long, default_value = "2G", value_parser = parse_bytes)]
    mem_limit: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Permit runs with multi-hour or multi-gigabyte estimates.
    #[arg(long)]
    allow_long: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Burnside,
    Classify,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Classify B(s,t,m), writing one record file per level.
    Classify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Stop at this level instead of s-1.
        #[arg(long)]
        to_level: Option<i32>,
        /// Reuse finished levels and checkpoints in the output directory.
        #[arg(long)]
        resume: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Class numbers n(s,t,m) by Burnside's formula and/or classification.
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        /// Skip classification cells with more classes than this.
        #[arg(long, default_value_t = 200_000)]
        max_records: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check n(s,t,m) = n(m-t,m-s,m) on every computable cell.
    DualCheck {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 200_000)]
        max_records: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Count near-bent functions in an odd number of variables.
    Nearbent {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized coset search over the representatives of a classification.
    Distance {
        #[arg(long)]
        m: usize,
        /// Reed-Muller order; the representatives must be at level r.
        #[arg(long)]
        r: usize,
        #[arg(long)]
        threshold: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: u64,
        /// Classification file; without it B(r+1, t, m) is classified first.
        #[arg(long)]
        reps: Option<PathBuf>,
        #[arg(long)]
        t: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Stabilizer order multiplicities of a classification.
    StabHist {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        reps: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_bytes(text: &str) -> std::result::Result<u64, String> {
    let text = text.trim();
    let (digits, shift) = match text.chars().last() {
        Some('K' | 'k') => (&text[..text.len() - 1], 10),
        Some('M' | 'm') => (&text[..text.len() - 1], 20),
        Some('G' | 'g') => (&text[..text.len() - 1], 30),
        _ => (text, 0),
    };
    digits
        .parse::<u64>()
        .map(|v| v << shift)
        .map_err(|e| format!("bad size {text:?}: {e}"))
}

fn setup(sub: &str, common: &Common) -> Result<(ClassifyConfig, RunManifest)> {
    if let Some(n) = common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    }
    fs::create_dir_all(&common.out)?;
    let cfg = ClassifyConfig {
        mem_limit: common.mem_limit,
        allow_long: common.allow_long,
        ..ClassifyConfig::default()
    };
    let mut manifest = RunManifest::new(sub);
    manifest.set("mem_limit", common.mem_limit);
    manifest.set("threads", rayon::current_num_threads());
    manifest.set("allow_long", common.allow_long);
    manifest.stamp("started");
    Ok((cfg, manifest))
}

/// Writes `text` as the result file of `sub` and its manifest, and echoes it.
fn finish(common: &Common, sub: &str, mut manifest: RunManifest, text: &str) -> Result<()> {
    let result = format!("{sub}.txt");
    fs::write(common.out.join(&result), text)?;
    manifest.set("result", result);
    manifest.stamp("finished");
    manifest.write(&common.out.join(format!("{sub}.manifest")))?;
    print!("{text}");
    Ok(())
}

fn load_or_classify(
    reps: Option<&Path>,
    m: usize,
    s: usize,
    t: usize,
    cfg: &ClassifyConfig,
) -> Result<Classification> {
    let c = match reps {
        Some(path) => read_classification(path)?,
        None => classify_space(s, t, m, cfg)?,
    };
    if c.m != m {
        return Err(Error::InvalidInput(format!(
            "representatives are for m = {}",
            c.m
        )));
    }
    Ok(c)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Classify {
            m,
            s,
            t,
            to_level,
            resume,
            common,
        } => {
            let (cfg, mut manifest) = setup("classify", &common)?;
            let space = SpaceSpec::new(m, s, t)?;
            for (k, v) in [("m", m), ("s", s), ("t", t)] {
                manifest.set(k, v);
            }
            let plan = RunPlan {
                space,
                to_level,
                out: common.out.clone(),
                resume,
            };
            let c = run_classification(&plan, &cfg, &mut manifest, |c| {
                println!("level {}: {} classes of {}", c.level, c.len(), c.space());
            })?;
            manifest.stamp("finished");
            manifest.write(&common.out.join("classify.manifest"))?;
            println!("{}: {} classes", c.space(), c.len());
        }
        Command::Count {
            m,
            method,
            max_records,
            common,
        } => {
            let (cfg, mut manifest) = setup("count", &common)?;
            manifest.set("m", m);
            let burnside = matches!(method, Method::Burnside | Method::Both)
                .then(|| burnside_table(m, common.allow_long))
                .transpose()?;
            let classified = matches!(method, Method::Classify | Method::Both)
                .then(|| classification_table(m, &cfg, max_records))
                .transpose()?;
            let mut text = String::new();
            if let Some(b) = &burnside {
                text.push_str("# burnside\n");
                text.push_str(&count_report(b));
            }
            if let Some(c) = &classified {
                text.push_str("# classification\n");
                text.push_str(&count_report(c));
            }
            if let (Some(b), Some(c)) = (&burnside, &classified) {
                let bad: Vec<String> = c
                    .cells()
                    .filter(|&((s, t), n)| b.get(s, t) != Some(n))
                    .map(|((s, t), n)| {
                        format!("({s},{t}): classify {n} vs burnside {:?}", b.get(s, t))
                    })
                    .collect();
                text.push_str(&format!("# agreement {} cells\n", c.len() - bad.len()));
                if !bad.is_empty() {
                    finish(&common, "count", manifest, &text)?;
                    return Err(Error::InternalConsistency(bad.join("; ")));
                }
            }
            finish(&common, "count", manifest, &text)?;
        }
        Command::DualCheck {
            m,
            max_records,
            common,
        } => {
            let (cfg, mut manifest) = setup("dual-check", &common)?;
            manifest.set("m", m);
            let table: ClassCountTable = classification_table(m, &cfg, max_records)?;
            let report = duality_check(&table);
            let mut text = table_render(&table);
            for p in &report.checked {
                text.push_str(&format!(
                    "n{:?} = {} n{:?} = {} {}\n",
                    p.cell,
                    p.left,
                    p.dual,
                    p.right,
                    if p.left == p.right { "ok" } else { "VIOLATION" }
                ));
            }
            text.push_str(&format!(
                "# {} pairs checked, {} violations\n",
                report.checked.len(),
                report.violations.len()
            ));
            finish(&common, "dual-check", manifest, &text)?;
            if !report.is_clean() {
                return Err(Error::InternalConsistency("duality violated".into()));
            }
        }
        Command::Nearbent { m, common } => {
            let (cfg, mut manifest) = setup("nearbent", &common)?;
            manifest.set("m", m);
            let census = near_bent_census_for(m, &cfg)?;
            finish(&common, "nearbent", manifest, &near_bent_report(&census))?;
        }
        Command::Distance {
            m,
            r,
            threshold,
            seed,
            max_iter,
            reps,
            t,
            common,
        } => {
            let (cfg, mut manifest) = setup("distance", &common)?;
            let t = t.unwrap_or(m);
            for (k, v) in [
                ("m", m as u64),
                ("r", r as u64),
                ("threshold", threshold as u64),
            ] {
                manifest.set(k, v);
            }
            manifest.set("max_iter", max_iter);
            manifest.set("seed", seed);
            let c = load_or_classify(reps.as_deref(), m, r + 1, t, &cfg)?;
            manifest.set("space", c.space());
            let report = covering_radius_bound(&c, r, threshold, max_iter, seed)?;
            let mut text = covering_report(&report);
            text.push_str(&if report.certified() {
                format!(
                    "# covering radius of RM({r},{m}) in {} <= {threshold}\n",
                    c.space()
                )
            } else {
                format!("# inconclusive: some representative missed {threshold}\n")
            });
            finish(&common, "distance", manifest, &text)?;
        }
        Command::StabHist {
            m,
            s,
            t,
            reps,
            common,
        } => {
            let (cfg, mut manifest) = setup("stab-hist", &common)?;
            manifest.set("m", m);
            if reps.is_none() && (s.is_none() || t.is_none()) {
                return Err(Error::InvalidInput(
                    "give --reps or both --s and --t".into(),
                ));
            }
            let c = load_or_classify(reps.as_deref(), m, s.unwrap_or(0), t.unwrap_or(0), &cfg)?;
            manifest.set("space", c.space());
            let text: String = stab_histogram(&c.records)
                .into_iter()
                .map(|(order, n)| format!("{order} {n}\n"))
                .collect();
            finish(&common, "stab-hist", manifest, &text)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rmcoset: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
