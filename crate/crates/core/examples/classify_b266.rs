use std::time::Instant;

use rmcoset::classify::{classify_space_with, ClassifyConfig};

fn main() -> rmcoset::Result<()> {
    let start = Instant::now();
    let cfg = ClassifyConfig::default();
    let result = classify_space_with(2, 6, 6, &cfg, |c| {
        println!(
            "level {:>2}: {:>7} classes of {}  ({:.1?})",
            c.level,
            c.len(),
            c.space(),
            start.elapsed()
        );
        Ok(())
    })?;
    let hist = result.stab_histogram();
    println!("n(2,6,6) = {}", result.len());
    for (order, count) in hist.iter().take(10) {
        println!("  stabilizer order {order:>6}: {count}");
    }
    Ok(())
}
