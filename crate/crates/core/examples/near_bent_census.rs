//! Near-bent functions counted from the classification of B(3,(m+1)/2,m).
//!
//! m = 7 needs the long-run flag in the classification and days of scanning.

use rmcoset::census::near_bent_census_for;
use rmcoset::classify::ClassifyConfig;

fn main() -> rmcoset::Result<()> {
    for m in [3, 5] {
        let c = near_bent_census_for(m, &ClassifyConfig::default())?;
        println!("m = {m}: {} classes", c.per_representative.len());
        for (f, stab, n) in &c.per_representative {
            println!("  {:<40} stab {stab:>10}  N(f) = {n}", f.to_string());
        }
        println!("  modulo affine functions: {}", c.modulo_affine);
        println!("  near-bent functions:     {}", c.total);
    }
    Ok(())
}
