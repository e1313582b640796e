//! Spin generators, invariant bilinear forms and hermitian field bases.

use spinstat::su2::{hermitian_basis, invariant_bilinear, invariant_form_space, spin_generators, SpinLabel};

fn main() {
    for two_j in 0..=4 {
        let j = SpinLabel::from_two_j(two_j);
        let gens = spin_generators(j);
        let form = invariant_bilinear(j);
        let h = hermitian_basis(j);
        let space = invariant_form_space(&h.generators);
        println!(
            "j = {j}: dim {}, commutators {}, C is {}, hermitian dim {}, invariant forms sym {} antisym {}",
            j.multiplet_dim(),
            gens.commutators_hold(),
            form.class,
            h.change_of_basis.cols(),
            space.sym_dim(),
            space.antisym_dim()
        );
        if two_j <= 1 {
            println!("  C = {}", form.matrix);
        }
    }
}
