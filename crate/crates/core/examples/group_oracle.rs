//! The three generators of AGL(m,2), the action on functions and the
//! stabilizer-chain oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmcoset::group::{act, generators_stu, group_order, random_affine, subgroup_order};
use rmcoset::{AffineMap, BooleanFunction, SubgroupOracle};

fn main() -> rmcoset::Result<()> {
    for m in 2..=7 {
        let gens = generators_stu(m);
        println!(
            "m = {m}: |<S,T,U>| = {} = |AGL| {}",
            subgroup_order(m, &gens),
            group_order(m)
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sigma = random_affine(4, &mut rng);
    let f = BooleanFunction::from_terms(4, &[&[1, 2, 3], &[4]])?;
    println!(
        "sigma = {}, f = {f}, f.sigma = {}",
        sigma.to_token(),
        act(&f, &sigma)
    );

    // stabilizer of x1x2 + x3x4 among linear maps, by filtering the group
    let q = BooleanFunction::from_terms(4, &[&[1, 2], &[3, 4]])?;
    let stab: Vec<AffineMap> = rmcoset::group::linear_group(4)
        .into_iter()
        .filter(|g| act(&q, g) == q)
        .collect();
    let oracle = SubgroupOracle::from_generators(4, &stab);
    println!(
        "{} linear maps fix {q}; oracle order {}, {} strong generators",
        stab.len(),
        oracle.order(),
        oracle.strong_generators().len()
    );
    Ok(())
}
