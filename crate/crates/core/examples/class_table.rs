//! Class numbers n(s,t,m) by descent for every cell that stays below a
//! record cap, then the duality check.
//!
//! cargo run --release --example class_table -- 7 200000

use rmcoset::census::{classification_table, duality_check, table_render};
use rmcoset::classify::ClassifyConfig;

fn main() -> rmcoset::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map_or(5, |a| a.parse().expect("m"));
    let cap: usize = args.next().map_or(200_000, |a| a.parse().expect("cap"));
    let table = classification_table(m, &ClassifyConfig::default(), cap)?;
    print!("{}", table_render(&table));
    let report = duality_check(&table);
    for p in &report.checked {
        println!("n{:?} = {:<8} n{:?} = {}", p.cell, p.left, p.dual, p.right);
    }
    println!(
        "{} dual pairs, {} violations",
        report.checked.len(),
        report.violations.len()
    );
    Ok(())
}
