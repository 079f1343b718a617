//! Algebraic normal form, Walsh spectrum and the inner product that pairs
//! B(s,t,m) with B(m-t,m-s,m).

use rmcoset::boolean::rm_generator_matrix;
use rmcoset::BooleanFunction;

fn main() -> rmcoset::Result<()> {
    let f = BooleanFunction::from_terms(5, &[&[1, 2], &[3, 4], &[5]])?;
    println!("f = {f}");
    println!("truth table {:08x}, anf {}", f.truth_table(), f.anf_hex());
    println!(
        "degree {}, valuation {}, weight {}",
        f.degree(),
        f.valuation(),
        f.weight()
    );
    let w = f.walsh();
    println!(
        "max |W_f| = {}, Parseval sum = {}",
        w.max_abs(),
        w.parseval_sum()
    );
    println!("near-bent: {}", f.is_near_bent()?);

    let g = BooleanFunction::from_terms(7, &[&[1, 2], &[3, 4, 5, 6]])?;
    let h = g.complement_transform();
    println!("g = {g}  ->  {h}");
    let x = BooleanFunction::from_terms(7, &[&[1, 2, 3]])?;
    let y = BooleanFunction::from_terms(7, &[&[4, 5, 6, 7]])?;
    println!("<{x}, {y}> = {}", x.inner_product(&y)?);

    let g = rm_generator_matrix(1, 5)?;
    println!("RM(1,5): k = {}, n = {}", g.k(), g.n());
    Ok(())
}
