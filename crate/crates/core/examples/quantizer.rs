//! Which statistics the action principle admits for a given K0.

use spinstat::exact::ExactMatrix;
use spinstat::quantizer::{canonical_momenta, spin_statistics_verdict, surface_variation_consistency};
use spinstat::theory::{parse_theory, KinematicMatrix, Statistics};

fn main() -> spinstat::Result<()> {
    let sym = KinematicMatrix::bare(ExactMatrix::identity(2))?;
    let anti = KinematicMatrix::bare(ExactMatrix::from_ints(&[[0, 1], [-1, 0]]))?;
    for (name, k) in [("symmetric", &sym), ("antisymmetric", &anti)] {
        for s in [Statistics::Bose, Statistics::Fermi] {
            println!("{name} K0 with {s}: {:?}", surface_variation_consistency(k, s));
        }
    }
    let c = canonical_momenta(&anti, Statistics::Bose)?;
    println!("bose momenta {} brackets {:?} [xi, Pi] = {}", c.momentum_map, c.bracket_type, c.coefficients);

    for text in [
        "theory a\nfield psi spin=1/2\n",
        "theory b\nfield A spin=1 copies=2\n",
        "theory c\nfield psi spin=3/2 statistics=bose\n",
    ] {
        for v in spin_statistics_verdict(&parse_theory(text)?)? {
            println!(
                "{} (spin {}): {:?}, parity {:+}, contradiction {}",
                v.field, v.spin, v.consistent_statistics, v.michel_parity, v.contradiction
            );
        }
    }
    Ok(())
}
