//! Gaussian-rational scalars and matrices: no floating point anywhere.

use spinstat::exact::{antisym_eigensplit, ratio, symmetry_decompose, ExactMatrix, Scalar};

fn main() -> spinstat::Result<()> {
    let z: Scalar = "3/4-1/2i".parse()?;
    let w = Scalar::gauss(1, 2);
    println!("z = {}, w = {}", z.compact(), w.compact());
    println!("z*w = {}, z/w = {}", (&z * &w).compact(), (&z * &w.inv().unwrap()).compact());

    let m = ExactMatrix::from_ints(&[[2, 1, 0], [3, 1, 4], [0, -1, 5]]);
    println!("det = {}", m.determinant()?.compact());
    let inv = m.inverse().expect("invertible");
    println!("inverse = {inv}");
    assert_eq!(&m * &inv, ExactMatrix::identity(3));

    let d = symmetry_decompose(&m)?;
    println!("class {}, sym {}, antisym {}", d.class, d.sym, d.antisym);

    let singular = ExactMatrix::from_ints(&[[1, 2], [2, 4]]);
    println!("rank {} kernel {:?}", singular.rank(), singular.kernel().iter().map(|v| v.len()).collect::<Vec<_>>());

    let a = ExactMatrix::from_ints(&[[0, 1, 2], [-1, 0, 3], [-2, -3, 0]]).scale_rational(&ratio(1, 2));
    let split = antisym_eigensplit(&a)?;
    for p in &split.pairs {
        println!("eigenvalues ±i·{:?} (x{})", p.magnitude, p.multiplicity);
    }
    println!("zero eigenvalues: {}", split.zero_multiplicity);
    Ok(())
}
