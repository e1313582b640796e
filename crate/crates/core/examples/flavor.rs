//! Flavor antisymmetrization: diagonalization, sector signs and the
//! negative-norm state it produces.

use spinstat::exact::ExactMatrix;
use spinstat::flavor::{analyze_flavor_block, detect_flavor_antisymmetry, diagonalize_flavor, flavor_pair};
use spinstat::su2::SpinLabel;

fn main() -> spinstat::Result<()> {
    let lambda = ExactMatrix::from_ints(&[[0, 1], [-1, 0]]);
    let d = diagonalize_flavor(&lambda)?;
    let e = d.exact.as_ref().expect("rational spectrum");
    println!("S0 = {}, column norms {:?}", e.columns, e.norms.iter().map(|n| n.compact()).collect::<Vec<_>>());
    println!("D = {}", e.diagonal);
    println!("S = {}", e.unitary().map_or("irrational normalization".to_string(), |s| s.to_string()));

    let irrational = ExactMatrix::from_ints(&[[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]);
    for ev in diagonalize_flavor(&irrational)?.eigenvalues {
        println!("  eigenvalue ~ {} i, sign {:+}", ev.approx, ev.sign);
    }

    let pair = flavor_pair(lambda)?;
    println!("antisymmetric in flavor: {}", detect_flavor_antisymmetry(&pair)?.is_flavor_antisymmetric);
    let diag = analyze_flavor_block(&pair, 1, SpinLabel::from_two_j(0))?;
    println!("sector signs {:?}, negative norm {}", diag.sector_signs, diag.negative_norm);
    if let Some(w) = diag.witness {
        print!("{}", w.relation_table);
        println!("<0| {} ^dag {} |0> = {}", w.state, w.state, w.squared_norm.compact());
    }
    Ok(())
}
