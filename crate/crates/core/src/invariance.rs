//! Rotational invariance of `K⁰`, the symmetry it forces, and the split into
//! canonical and constraint directions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Scalar, SymmetryClass, Vector};
use crate::su2::{cached_hermitian_basis, RepGenerators, SpinLabel};
use crate::theory::{KinematicMatrix, Statistics, TheorySpec};

/// Generators on the full index space of a theory; flavors and copies carry
/// the trivial action.
pub fn theory_generators(spec: &TheorySpec) -> Result<RepGenerators> {
    let mut parts = Vec::with_capacity(spec.fields.len());
    for f in &spec.fields {
        let g = &cached_hermitian_basis(f.spin)?.generators;
        parts.push(g.repeated(f.flavors * f.copies));
    }
    Ok(RepGenerators::direct_sum(&parts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceViolation {
    pub generator: &'static str,
    pub row: usize,
    pub col: usize,
    /// Entry of `Jᵀ K⁰ + K⁰ J`.
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub passes: bool,
    pub violations: Vec<InvarianceViolation>,
}

/// `Jₐᵀ K⁰ + K⁰ Jₐ = 0` for `a = x, y, z`.
pub fn check_su2_invariance(k: &KinematicMatrix, gens: &RepGenerators) -> Result<InvarianceReport> {
    if gens.dim != k.dim() {
        return Err(Error::Dimension {
            op: "check_su2_invariance",
            detail: format!("generators act on {} indices, K⁰ has {}", gens.dim, k.dim()),
        });
    }
    let mut violations = Vec::new();
    for (name, g) in ["Jx", "Jy", "Jz"].into_iter().zip(gens.all()) {
        let r = &(&g.transpose() * &k.matrix) + &(&k.matrix * g);
        for row in 0..r.rows() {
            for col in 0..r.cols() {
                if !r.get(row, col).is_zero() {
                    violations.push(InvarianceViolation { generator: name, row, col, value: r.get(row, col).clone() });
                }
            }
        }
    }
    Ok(InvarianceReport { passes: violations.is_empty(), violations })
}

/// Symmetry of `K⁰` that gives a nontrivial rotationally invariant kinematic
/// term: the opposite of the invariant scalar product's symmetry.
pub fn required_symmetry(j: SpinLabel) -> SymmetryClass {
    if j.is_integer() {
        SymmetryClass::Antisymmetric
    } else {
        SymmetryClass::Symmetric
    }
}

/// `Λ_rs = K⁰_rs (∂_t^{(r)} − ∂_t^{(s)})`, carried through its numeric part.
#[derive(Clone, Debug)]
pub struct LambdaOperator {
    pub k0: KinematicMatrix,
}

impl LambdaOperator {
    /// The derivative factor is odd under `r ↔ s`, so `Λ` has the opposite
    /// symmetry of `K⁰`.
    pub fn symmetry_class(&self) -> SymmetryClass {
        self.k0.matrix.symmetry_class().opposite()
    }
}

/// How placeholder symbols behave when two of them are exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Placeholders {
    Commuting,
    Anticommuting,
}

impl Placeholders {
    pub fn for_statistics(s: Statistics) -> Self {
        match s {
            Statistics::Bose => Placeholders::Commuting,
            Statistics::Fermi => Placeholders::Anticommuting,
        }
    }

    /// Placeholders that realize the exchange symmetry of the invariant
    /// scalar product of spin `j`.
    pub fn for_scalar_product(j: SpinLabel) -> Self {
        if j.is_integer() {
            Placeholders::Commuting
        } else {
            Placeholders::Anticommuting
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Symbol {
    X(usize),
    Y(usize),
}

/// Expands `½ Σ K_rs (x_r y_s − y_r x_s)` over placeholder symbols and
/// brings every monomial to the order `x … y`. Returns the coefficient of
/// `x_a y_b` at `(a, b)`.
///
/// With `y = ξ̇` this is the kinematic bilinear; with `y = δξ` it is the
/// surface-variation generator.
pub fn expand_bilinear(k: &ExactMatrix, placeholders: Placeholders) -> Result<ExactMatrix> {
    k.require_square("expand_bilinear")?;
    let n = k.rows();
    let half = Scalar::from_ratio(1, 2);
    let mut out = ExactMatrix::zeros(n, n);
    for r in 0..n {
        for s in 0..n {
            let c = k.get(r, s);
            if c.is_zero() {
                continue;
            }
            let c = c * &half;
            for (coef, word) in [(c.clone(), [Symbol::X(r), Symbol::Y(s)]), (-&c, [Symbol::Y(r), Symbol::X(s)])] {
                let (coef, a, b) = match word {
                    [Symbol::X(a), Symbol::Y(b)] => (coef, a, b),
                    [Symbol::Y(b), Symbol::X(a)] => match placeholders {
                        Placeholders::Commuting => (coef, a, b),
                        Placeholders::Anticommuting => (-coef, a, b),
                    },
                    _ => unreachable!("mixed bilinear"),
                };
                let v = out.get(a, b) + &coef;
                out.set(a, b, v);
            }
        }
    }
    Ok(out)
}

/// The kinematic term vanishes identically when `K⁰` has the same symmetry as
/// the invariant scalar product of spin `j`.
pub fn lagrangian_is_trivial(k: &ExactMatrix, j: SpinLabel) -> Result<bool> {
    Ok(expand_bilinear(k, Placeholders::for_scalar_product(j))?.is_zero())
}

/// `Π = P ξ` with `P = (K⁰ᵀ − K⁰)/2` for Bose and `(K⁰ᵀ + K⁰)/2` for Fermi.
pub fn momentum_map(k: &ExactMatrix, statistics: Statistics) -> ExactMatrix {
    let t = k.transpose();
    let half = crate::exact::ratio(1, 2);
    match statistics {
        Statistics::Bose => (&t - k).scale_rational(&half),
        Statistics::Fermi => (&t + k).scale_rational(&half),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSplit {
    pub statistics: Statistics,
    /// Pivot columns of the momentum map, leftmost first.
    pub canonical_indices: Vec<usize>,
    pub constraint_indices: Vec<usize>,
    /// Kernel basis of the momentum map.
    pub constraint_directions: Vec<Vector>,
    pub momentum_map: ExactMatrix,
    /// The statistics-relevant part of `K⁰` (antisymmetric part for Bose,
    /// symmetric part for Fermi) on the canonical indices.
    pub nonsingular_block: ExactMatrix,
    /// The momentum map on the canonical indices; equals `−nonsingular_block`
    /// for Bose and `nonsingular_block` for Fermi.
    pub momentum_block: ExactMatrix,
}

/// Separates canonical fields from constraint variables.
pub fn constraint_split(k: &KinematicMatrix, statistics: Statistics) -> ConstraintSplit {
    let p = momentum_map(&k.matrix, statistics);
    let canonical_indices = p.rref().pivots;
    let constraint_indices: Vec<usize> = (0..k.dim()).filter(|i| !canonical_indices.contains(i)).collect();
    let constraint_directions = p.kernel();
    let momentum_block = p.submatrix(&canonical_indices, &canonical_indices);
    let nonsingular_block = match statistics {
        Statistics::Bose => -&momentum_block,
        Statistics::Fermi => momentum_block.clone(),
    };
    ConstraintSplit {
        statistics,
        canonical_indices,
        constraint_indices,
        constraint_directions,
        momentum_map: p,
        nonsingular_block,
        momentum_block,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{hermitian_basis, invariant_form_space, spin_generators, RepGenerators};

    fn spin(s: &str) -> SpinLabel {
        s.parse().unwrap()
    }

    #[test]
    fn duffin_kemmer_block_on_scalar_doublet_passes() {
        let k = KinematicMatrix::bare(ExactMatrix::from_strs(&[["0", "i"], ["-i", "0"]])).unwrap();
        assert!(check_su2_invariance(&k, &RepGenerators::trivial(2)).unwrap().passes);
    }

    #[test]
    fn majorana_symmetric_form_passes() {
        let h = hermitian_basis(spin("1/2"));
        let k = KinematicMatrix::bare(ExactMatrix::identity(4)).unwrap();
        assert!(check_su2_invariance(&k, &h.generators).unwrap().passes);
    }

    #[test]
    fn jz_on_spin_one_fails() {
        let g = spin_generators(spin("1"));
        let k = KinematicMatrix::bare(g.jz.clone()).unwrap();
        let r = check_su2_invariance(&k, &g).unwrap();
        assert!(!r.passes);
        assert!(r.violations.iter().any(|v| v.generator == "Jx"));
    }

    #[test]
    fn dimension_mismatch() {
        let k = KinematicMatrix::bare(ExactMatrix::identity(3)).unwrap();
        assert!(check_su2_invariance(&k, &RepGenerators::trivial(2)).is_err());
    }

    #[test]
    fn required_symmetry_by_parity() {
        assert_eq!(required_symmetry(spin("0")), SymmetryClass::Antisymmetric);
        assert_eq!(required_symmetry(spin("1/2")), SymmetryClass::Symmetric);
        assert_eq!(required_symmetry(spin("2")), SymmetryClass::Antisymmetric);
    }

    #[test]
    fn invariant_forms_on_irreducible_spaces_are_pure() {
        for two_j in 0..=8 {
            let j = SpinLabel::from_two_j(two_j);
            let space = invariant_form_space(&hermitian_basis(j).generators);
            // the invariant scalar product has the opposite symmetry of K⁰
            for m in space.basis_of(required_symmetry(j).opposite()) {
                assert!(m.symmetry_class().is_pure());
                assert!(lagrangian_is_trivial(m, j).unwrap(), "2j={two_j}");
            }
        }
    }

    #[test]
    fn wrong_symmetry_gives_trivial_lagrangian() {
        let sym = ExactMatrix::from_ints(&[[1, 2], [2, 5]]);
        let anti = ExactMatrix::from_ints(&[[0, 3], [-3, 0]]);
        assert!(lagrangian_is_trivial(&sym, spin("0")).unwrap());
        assert!(!lagrangian_is_trivial(&anti, spin("0")).unwrap());
        assert!(lagrangian_is_trivial(&anti, spin("1/2")).unwrap());
        assert!(!lagrangian_is_trivial(&sym, spin("1/2")).unwrap());
    }

    #[test]
    fn lambda_has_opposite_symmetry() {
        let k = KinematicMatrix::bare(ExactMatrix::from_ints(&[[0, 1], [-1, 0]])).unwrap();
        assert_eq!(LambdaOperator { k0: k }.symmetry_class(), SymmetryClass::Symmetric);
    }

    #[test]
    fn split_nonsingular_antisymmetric() {
        let k = KinematicMatrix::bare(ExactMatrix::from_ints(&[[0, 2], [-2, 0]])).unwrap();
        let s = constraint_split(&k, Statistics::Bose);
        assert_eq!(s.canonical_indices, vec![0, 1]);
        assert!(s.constraint_indices.is_empty());
        assert!(s.nonsingular_block.inverse().is_some());
    }

    #[test]
    fn split_zero_matrix() {
        let k = KinematicMatrix::bare(ExactMatrix::zeros(3, 3)).unwrap();
        let s = constraint_split(&k, Statistics::Bose);
        assert!(s.canonical_indices.is_empty());
        assert_eq!(s.constraint_indices, vec![0, 1, 2]);
    }
}
