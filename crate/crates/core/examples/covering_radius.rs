//! Randomized coset search against the exact minimum weight, and covering
//! radius bounds from class representatives.

use rmcoset::classify::{classify_space, ClassifyConfig};
use rmcoset::covrad::{
    covering_radius_bound, distance_seeded, exact_coset_min_weight, DEFAULT_MAX_ITER,
};

fn main() -> rmcoset::Result<()> {
    let cfg = ClassifyConfig::default();

    let reps = classify_space(2, 5, 5, &cfg)?;
    let radius = reps
        .records
        .iter()
        .map(|r| exact_coset_min_weight(&r.representative, 1))
        .collect::<rmcoset::Result<Vec<_>>>()?;
    println!(
        "covering radius of RM(1,5): {}",
        radius.iter().max().unwrap()
    );

    let reps = classify_space(3, 3, 5, &cfg)?;
    for rec in &reps.records {
        let f = rec.representative;
        let exact = exact_coset_min_weight(&f, 2)?;
        let found = distance_seeded(&f, 2, exact, DEFAULT_MAX_ITER, 1, 0)?;
        println!(
            "{:<30} exact {exact:>2}  search {:>2} after {} trials",
            f.to_string(),
            found.best,
            found.trials
        );
    }

    let reps = classify_space(3, 6, 6, &cfg)?;
    let report = covering_radius_bound(&reps, 2, 18, DEFAULT_MAX_ITER, 1)?;
    let (mean, sd) = report.trial_stats();
    println!(
        "RM(2,6) within {}: {} representatives, bound 18 certified: {}, trials mean {mean:.2} sd {sd:.2}",
        reps.space(),
        report.entries.len(),
        report.certified()
    );
    Ok(())
}
