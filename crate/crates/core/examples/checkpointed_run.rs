//! Level files, checkpoints and the run manifest in an output directory.
//!
//! cargo run --release --example checkpointed_run -- /tmp/b255

use std::path::PathBuf;

use rmcoset::classify::ClassifyConfig;
use rmcoset::io::{run_classification, RunManifest, RunPlan};
use rmcoset::SpaceSpec;

fn main() -> rmcoset::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("rmcoset-b255"), PathBuf::from);
    let plan = RunPlan {
        space: SpaceSpec::new(5, 2, 5)?,
        to_level: None,
        out: out.clone(),
        resume: true,
    };
    let cfg = ClassifyConfig {
        chunk: 4,
        ..ClassifyConfig::default()
    };
    let mut manifest = RunManifest::new("classify");
    let c = run_classification(&plan, &cfg, &mut manifest, |c| {
        println!("level {}: {} classes", c.level, c.len());
    })?;
    println!(
        "{}: {} classes, files in {}",
        c.space(),
        c.len(),
        out.display()
    );
    print!("{}", manifest.render());
    Ok(())
}
