use serde::Serialize;

use super::{FieldSpec, FlavorCoupling, KinematicMatrix, KinematicSpec, TheorySpec};
use crate::error::Result;
use crate::exact::{ExactMatrix, Scalar, SymmetryClass};
use crate::su2::{cached_hermitian_basis, symmetric_invariant_form};

/// A field for which no invariant form of the required symmetry exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MissingForm {
    pub field: String,
    pub required: SymmetryClass,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KinematicBuild {
    pub kinematic: KinematicMatrix,
    /// Fields whose block had to be left zero.
    pub missing: Vec<MissingForm>,
}

/// Builds `K⁰` on the full index space.
///
/// Auto mode, flavor-diagonal: `I_flavors ⊗ B` where `B` acts on copies ⊗
/// components. Half-integer spin gets `B = I_copies ⊗ S` with `S` the
/// positive symmetric invariant form (the identity for spin 1/2). Integer
/// spin needs an antisymmetric form, which exists only across copies: copies
/// are paired as `i[[0,1],[−1,0]] ⊗ S`; an unpaired last copy stays zero,
/// and a single copy yields no kinematic term at all.
///
/// Auto mode, antisymmetric pair: `[[0, Kb], [−Kb, 0]]` over the two flavors
/// with `Kb = I_copies ⊗ C` and `C` the hermitian-basis invariant form
/// (symmetric for integer spin, antisymmetric for half-integer spin).
pub fn build_kinematic(spec: &TheorySpec) -> Result<KinematicBuild> {
    spec.validate()?;
    let index_map = spec.index_map();
    if let KinematicSpec::Explicit(m) = &spec.kinematic {
        return Ok(KinematicBuild { kinematic: KinematicMatrix::new(m.clone(), index_map)?, missing: Vec::new() });
    }
    let mut blocks = Vec::with_capacity(spec.fields.len());
    let mut missing = Vec::new();
    for f in &spec.fields {
        let block = match spec.flavor_coupling {
            FlavorCoupling::Diagonal => match diagonal_block(f)? {
                Some(b) => ExactMatrix::identity(f.flavors).kron(&b),
                None => {
                    missing.push(MissingForm {
                        field: f.name.clone(),
                        required: SymmetryClass::Antisymmetric,
                        reason: format!(
                            "no valid kinematic form; field doubling required (spin {} with {} cop{} admits no antisymmetric invariant form)",
                            f.spin,
                            f.copies,
                            if f.copies == 1 { "y" } else { "ies" }
                        ),
                    });
                    ExactMatrix::zeros(f.dim(), f.dim())
                }
            },
            FlavorCoupling::AntisymmetricPair => {
                let form = &cached_hermitian_basis(f.spin)?.form.matrix;
                let kb = ExactMatrix::identity(f.copies).kron(form);
                ExactMatrix::from_ints(&[[0, 1], [-1, 0]]).kron(&kb)
            }
        };
        blocks.push(block);
    }
    let matrix = ExactMatrix::block_diag(&blocks);
    Ok(KinematicBuild { kinematic: KinematicMatrix::new(matrix, index_map)?, missing })
}

fn diagonal_block(f: &FieldSpec) -> Result<Option<ExactMatrix>> {
    f.spin.check_supported()?;
    let s = symmetric_invariant_form(f.spin);
    if !f.spin.is_integer() {
        return Ok(Some(ExactMatrix::identity(f.copies).kron(&s)));
    }
    let pairs = f.copies / 2;
    if pairs == 0 {
        return Ok(None);
    }
    let pair = ExactMatrix::from_ints(&[[0, 1], [-1, 0]]).scale(&Scalar::i()).kron(&s);
    let mut parts = vec![ExactMatrix::identity(pairs).kron(&pair)];
    if f.copies % 2 == 1 {
        parts.push(ExactMatrix::zeros(s.rows(), s.rows()));
    }
    Ok(Some(ExactMatrix::block_diag(&parts)))
}
