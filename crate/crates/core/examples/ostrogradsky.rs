//! First-order form of a higher-derivative Lagrangian.

use spinstat::reduction::{ostrogradsky_reduce, DerivativePolynomial};

fn main() -> spinstat::Result<()> {
    for text in ["d^2 + 1", "d^4 - 1", "2*d^6 - 3*d^2 + 1/2"] {
        let f: DerivativePolynomial = text.parse()?;
        let r = ostrogradsky_reduce(&f)?;
        println!("F = {f}");
        println!("  fields {:?}", r.auxiliary_fields);
        println!("  K0 = {} ({})", r.first_order_k0.matrix, r.first_order_k0.matrix.symmetry_class());
        println!("  M  = {}", r.hamiltonian);
        for p in &r.momentum_combinations {
            let terms: Vec<String> = p.terms.iter().map(|(m, c)| format!("{} xi{m}", c.compact())).collect();
            println!("  p{} = {}", p.conjugate_to, terms.join(" + "));
        }
        println!("  det(2Ks - M) ~ {}, recovers F: {}", r.elimination.determinant, r.elimination.recovers_f());
    }
    for bad in ["d^3 + 1", "d^4 + d"] {
        let f: DerivativePolynomial = bad.parse()?;
        println!("{bad}: {}", ostrogradsky_reduce(&f).unwrap_err());
    }
    Ok(())
}
