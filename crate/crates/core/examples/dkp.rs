//! The five-component first-order form of the scalar wave equation.

use spinstat::exact::{int, ratio};
use spinstat::invariance::constraint_split;
use spinstat::reduction::{dkp_minimal_polynomial_check, duffin_kemmer_construct, verify_dkp_algebra, Metric, PSI_LAYOUT};
use spinstat::theory::{KinematicMatrix, Statistics};

fn main() -> spinstat::Result<()> {
    let betas = duffin_kemmer_construct(int(1))?;
    println!("psi = {PSI_LAYOUT:?}");
    for mu in 0..4 {
        println!("beta_{mu} = {}", betas.beta(mu));
    }
    let report = verify_dkp_algebra(&betas);
    println!("metric {}: {}/64 triples", report.metric, report.standard_passed());
    for r in report.printed_failures() {
        println!("  printed {} fails at {:?}", r.relation, r.indices);
    }
    let flipped = verify_dkp_algebra(&betas.clone().with_metric(Metric::MOSTLY_PLUS));
    println!("metric {}: {}/64 triples", flipped.metric, flipped.standard_passed());

    let k = [ratio(3, 2), int(1), int(-2), ratio(1, 3)];
    let m = dkp_minimal_polynomial_check(&betas, &k);
    println!("(beta.k)^3 = (k.k)(beta.k) with k.k = {}: {}", m.k_squared, m.holds);

    let split = constraint_split(&KinematicMatrix::bare(betas.beta(0).clone())?, Statistics::Bose);
    println!("canonical {:?}, constraints {:?}", split.canonical_indices, split.constraint_indices);
    println!("non-singular block {}", split.nonsingular_block);
    Ok(())
}
