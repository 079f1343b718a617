//! Burnside's formula over all of AGL(m,2) against the descent, m <= 4.

use rmcoset::census::{burnside_table, classification_table, table_render};
use rmcoset::classify::ClassifyConfig;

fn main() -> rmcoset::Result<()> {
    for m in 1..=4 {
        let burnside = burnside_table(m, false)?;
        let descent = classification_table(m, &ClassifyConfig::default(), usize::MAX)?;
        println!("m = {m}");
        print!("{}", table_render(&burnside));
        println!("descent agrees: {}\n", burnside == descent);
    }
    Ok(())
}
