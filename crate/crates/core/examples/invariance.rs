//! Rotational invariance of K0 and the symmetry it forces.

use spinstat::exact::{ExactMatrix, Scalar};
use spinstat::invariance::{check_su2_invariance, required_symmetry, theory_generators};
use spinstat::su2::SpinLabel;
use spinstat::theory::{build_kinematic, parse_theory, KinematicMatrix};

fn main() -> spinstat::Result<()> {
    for two_j in 0..=3 {
        let j = SpinLabel::from_two_j(two_j);
        println!("spin {j}: K0 must be {}", required_symmetry(j));
    }
    let spec = parse_theory("theory v\nfield A spin=1 copies=2\n")?;
    let gens = theory_generators(&spec)?;
    let k = build_kinematic(&spec)?.kinematic;
    println!("auto K0 invariant: {}", check_su2_invariance(&k, &gens)?.passes);

    // a K0 that only couples the first component breaks the symmetry
    let mut broken = ExactMatrix::zeros(6, 6);
    broken.set(0, 3, Scalar::i());
    broken.set(3, 0, -Scalar::i());
    let report = check_su2_invariance(&KinematicMatrix::bare(broken)?, &gens)?;
    println!("broken K0 invariant: {}, {} violating entries", report.passes, report.violations.len());
    if let Some(v) = report.violations.first() {
        println!("  first: {} at ({}, {}) = {}", v.generator, v.row, v.col, v.value.compact());
    }
    Ok(())
}
