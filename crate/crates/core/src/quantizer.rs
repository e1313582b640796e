//! Statistics from the surface variation of the action, canonical brackets,
//! and the per-field spin-statistics verdict.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Scalar, SymmetryClass};
use crate::flavor::{analyze_flavor_block, FlavorDiagnosis};
use crate::invariance::{
    check_su2_invariance, expand_bilinear, momentum_map, required_symmetry, theory_generators, Placeholders,
};
use crate::su2::SpinLabel;
use crate::theory::{build_kinematic, FlavorCoupling, KinematicBuild, KinematicMatrix, Statistics, TheorySpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "reason", rename_all = "lowercase")]
pub enum Consistency {
    Consistent,
    Degenerate(String),
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Consistency::Consistent)
    }
}

/// Whether `δI = ½ Σ K_rs (ξ_r δξ_s − δξ_r ξ_s)` can generate `δξ` when the
/// variation commutes (Bose) or anticommutes (Fermi) with the fields.
pub fn surface_variation_consistency(k: &KinematicMatrix, statistics: Statistics) -> Consistency {
    let generator = expand_bilinear(&k.matrix, Placeholders::for_statistics(statistics)).expect("square K⁰");
    if !generator.is_zero() {
        return Consistency::Consistent;
    }
    let killed_by = match statistics {
        Statistics::Bose => "symmetric",
        Statistics::Fermi => "antisymmetric",
    };
    let reason = if k.matrix.is_zero() {
        "generator commutes with all fields: K⁰ vanishes".to_string()
    } else {
        format!("generator commutes with all fields: the {killed_by} K⁰ drops out of [ξ, δI]")
    };
    Consistency::Degenerate(reason)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketType {
    Commutator,
    Anticommutator,
}

impl From<Statistics> for BracketType {
    fn from(s: Statistics) -> Self {
        match s {
            Statistics::Bose => BracketType::Commutator,
            Statistics::Fermi => BracketType::Anticommutator,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalRelationSet {
    pub statistics: Statistics,
    /// `Π = P ξ` on the full index space.
    pub momentum_map: ExactMatrix,
    pub bracket_type: BracketType,
    pub canonical_indices: Vec<usize>,
    /// `[ξ_n, Π_m]∓` on the canonical block: `i δ_nm` (ħ = 1).
    pub coefficients: ExactMatrix,
    /// `[ξ_n, ξ_m]∓` on the canonical block, `i (P_cᵀ)⁻¹`.
    pub field_brackets: ExactMatrix,
}

/// Canonical momenta and brackets for the given statistics.
pub fn canonical_momenta(k: &KinematicMatrix, statistics: Statistics) -> Result<CanonicalRelationSet> {
    let p = momentum_map(&k.matrix, statistics);
    if k.matrix.is_zero() {
        return Ok(CanonicalRelationSet {
            statistics,
            momentum_map: p,
            bracket_type: statistics.into(),
            canonical_indices: Vec::new(),
            coefficients: ExactMatrix::zeros(0, 0),
            field_brackets: ExactMatrix::zeros(0, 0),
        });
    }
    if let Consistency::Degenerate(reason) = surface_variation_consistency(k, statistics) {
        return Err(Error::InconsistentStatistics { statistics: statistics.to_string(), reason });
    }
    let canonical = p.rref().pivots;
    let pc = p.submatrix(&canonical, &canonical);
    let inv = pc.transpose().inverse().expect("principal block on pivot columns is invertible");
    let n = canonical.len();
    Ok(CanonicalRelationSet {
        statistics,
        bracket_type: statistics.into(),
        coefficients: ExactMatrix::identity(n).scale(&Scalar::i()),
        field_brackets: inv.scale(&Scalar::i()),
        canonical_indices: canonical,
        momentum_map: p,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConsistentStatistics {
    Bose,
    Fermi,
    None,
}

impl From<Statistics> for ConsistentStatistics {
    fn from(s: Statistics) -> Self {
        match s {
            Statistics::Bose => ConsistentStatistics::Bose,
            Statistics::Fermi => ConsistentStatistics::Fermi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatisticsVerdict {
    pub field: String,
    pub spin: SpinLabel,
    /// Symmetry of the spin-index structure of `K⁰` that a nontrivial,
    /// rotationally invariant kinematic term needs.
    pub required_k0_symmetry: SymmetryClass,
    /// Symmetry actually found in the spin-index structure of `K⁰`.
    pub kinematic_symmetry: SymmetryClass,
    pub bose: Consistency,
    pub fermi: Consistency,
    pub consistent_statistics: ConsistentStatistics,
    pub pinned_statistics: Option<Statistics>,
    /// `(−1)^{2s}`
    pub michel_parity: i8,
    pub contradiction: bool,
    pub explanation: Option<String>,
    /// Integer spin paired with anticommuting statistics (or the reverse)
    /// through flavor antisymmetrization.
    pub inverted_connection: bool,
    pub flavor: Option<FlavorDiagnosis>,
    pub has_kinematic_term: bool,
}

/// Everything the verdict pipeline derived for a theory.
#[derive(Clone, Debug)]
pub struct TheoryAnalysis {
    pub build: KinematicBuild,
    pub verdicts: Vec<StatisticsVerdict>,
}

/// Combines the rotational-invariance requirement with the action-principle
/// requirement for every field of the theory.
pub fn spin_statistics_verdict(spec: &TheorySpec) -> Result<Vec<StatisticsVerdict>> {
    Ok(analyze_theory(spec)?.verdicts)
}

pub fn analyze_theory(spec: &TheorySpec) -> Result<TheoryAnalysis> {
    let build = build_kinematic(spec)?;
    let gens = theory_generators(spec)?;
    let mut verdicts = Vec::with_capacity(spec.fields.len());
    for (fi, f) in spec.fields.iter().enumerate() {
        let range: Vec<usize> = spec.field_range(fi).collect();
        let block = build.kinematic.restrict(&range);
        let missing = build.missing.iter().any(|m| m.field == f.name);
        let field_gens = crate::su2::RepGenerators {
            dim: range.len(),
            jx: gens.jx.submatrix(&range, &range),
            jy: gens.jy.submatrix(&range, &range),
            jz: gens.jz.submatrix(&range, &range),
        };
        let invariant = check_su2_invariance(&block, &field_gens)?.passes;
        let verdict = match spec.flavor_coupling {
            FlavorCoupling::Diagonal => field_verdict(&f.name, f.spin, &block, invariant, f.statistics.pinned(), missing),
            FlavorCoupling::AntisymmetricPair => {
                let half = f.flavor_block_dim();
                let diagnosis = analyze_flavor_block(&block, half, f.spin)?;
                pair_verdict(&f.name, f.spin, &block, invariant, f.statistics.pinned(), diagnosis)
            }
        };
        verdicts.push(verdict);
    }
    Ok(TheoryAnalysis { build, verdicts })
}

fn statistics_for(class: SymmetryClass) -> ConsistentStatistics {
    match class {
        SymmetryClass::Antisymmetric => ConsistentStatistics::Bose,
        SymmetryClass::Symmetric => ConsistentStatistics::Fermi,
        _ => ConsistentStatistics::None,
    }
}

fn field_verdict(
    name: &str,
    spin: SpinLabel,
    block: &KinematicMatrix,
    invariant: bool,
    pinned: Option<Statistics>,
    missing: bool,
) -> StatisticsVerdict {
    let required = required_symmetry(spin);
    let class = block.matrix.symmetry_class();
    let bose = surface_variation_consistency(block, Statistics::Bose);
    let fermi = surface_variation_consistency(block, Statistics::Fermi);
    let consistent = match (bose.is_consistent(), fermi.is_consistent()) {
        (true, false) => ConsistentStatistics::Bose,
        (false, true) => ConsistentStatistics::Fermi,
        _ => ConsistentStatistics::None,
    };
    let mut problems = Vec::new();
    if !invariant {
        problems.push("K⁰ is not SU(2)-invariant".to_string());
    }
    if class == SymmetryClass::Mixed {
        problems.push(
            "K⁰ has mixed symmetry: its antisymmetric part supports Bose, its symmetric part supports Fermi".into(),
        );
    } else if class.is_pure() && class != required {
        problems.push(format!(
            "spin {spin} needs a {required} K⁰ for a nontrivial invariant kinematic term, found {class}"
        ));
    }
    push_pinned_conflict(&mut problems, pinned, spin, required, consistent);
    StatisticsVerdict {
        field: name.to_string(),
        spin,
        required_k0_symmetry: required,
        kinematic_symmetry: class,
        bose,
        fermi,
        consistent_statistics: consistent,
        pinned_statistics: pinned,
        michel_parity: spin.parity(),
        contradiction: !problems.is_empty(),
        explanation: (!problems.is_empty()).then(|| problems.join("; ")),
        inverted_connection: false,
        flavor: None,
        has_kinematic_term: !missing && !block.matrix.is_zero(),
    }
}

fn push_pinned_conflict(
    problems: &mut Vec<String>,
    pinned: Option<Statistics>,
    spin: SpinLabel,
    required: SymmetryClass,
    consistent: ConsistentStatistics,
) {
    let Some(p) = pinned else { return };
    let derived = statistics_for(required);
    if ConsistentStatistics::from(p) != derived {
        problems.push(format!(
            "statistics={p} pinned, but rotational invariance for spin {spin} requires a {required} K⁰ \
             and the action principle accepts a {required} K⁰ only for {}",
            p.other()
        ));
    } else if consistent != ConsistentStatistics::None && ConsistentStatistics::from(p) != consistent {
        problems.push(format!("statistics={p} pinned, but the given K⁰ is consistent only with {}", p.other()));
    }
}

fn pair_verdict(
    name: &str,
    spin: SpinLabel,
    block: &KinematicMatrix,
    invariant: bool,
    pinned: Option<Statistics>,
    diagnosis: FlavorDiagnosis,
) -> StatisticsVerdict {
    // the statistics follow the spin-index symmetry of K⁰_{1r,2s}
    let kb = &diagnosis.block;
    let class = kb.symmetry_class();
    let kb_matrix = KinematicMatrix::bare(kb.clone()).expect("square block");
    let bose = surface_variation_consistency(&kb_matrix, Statistics::Bose);
    let fermi = surface_variation_consistency(&kb_matrix, Statistics::Fermi);
    let consistent = match (bose.is_consistent(), fermi.is_consistent()) {
        (true, false) => ConsistentStatistics::Bose,
        (false, true) => ConsistentStatistics::Fermi,
        _ => ConsistentStatistics::None,
    };
    // K⁰_{1r,2s} must carry the symmetry of the scalar product itself
    let required = if diagnosis.is_flavor_antisymmetric { required_symmetry(spin).opposite() } else { required_symmetry(spin) };
    let mut problems = Vec::new();
    if !invariant {
        problems.push("K⁰ is not SU(2)-invariant".to_string());
    }
    if !diagnosis.is_flavor_antisymmetric {
        problems.push("flavor coupling declared antisymmetric-pair, but K⁰ is not antisymmetric in the flavor index".into());
    }
    if let Some(p) = pinned {
        if consistent != ConsistentStatistics::None && ConsistentStatistics::from(p) != consistent {
            problems.push(format!("statistics={p} pinned, but K⁰_{{1r,2s}} is consistent only with {}", p.other()));
        }
    }
    StatisticsVerdict {
        field: name.to_string(),
        spin,
        required_k0_symmetry: required,
        kinematic_symmetry: class,
        bose,
        fermi,
        consistent_statistics: consistent,
        pinned_statistics: pinned,
        michel_parity: spin.parity(),
        contradiction: !problems.is_empty(),
        explanation: (!problems.is_empty()).then(|| problems.join("; ")),
        inverted_connection: diagnosis.inverted_connection_attempt,
        has_kinematic_term: !block.matrix.is_zero(),
        flavor: Some(diagnosis),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::parse_theory;

    fn bare(m: ExactMatrix) -> KinematicMatrix {
        KinematicMatrix::bare(m).unwrap()
    }

    #[test]
    fn duffin_kemmer_block_is_bose() {
        let k = bare(ExactMatrix::from_strs(&[["0", "i"], ["-i", "0"]]));
        assert_eq!(surface_variation_consistency(&k, Statistics::Bose), Consistency::Consistent);
        assert!(!surface_variation_consistency(&k, Statistics::Fermi).is_consistent());
    }

    #[test]
    fn identity_is_fermi() {
        let k = bare(ExactMatrix::identity(2));
        assert!(!surface_variation_consistency(&k, Statistics::Bose).is_consistent());
        assert!(surface_variation_consistency(&k, Statistics::Fermi).is_consistent());
    }

    #[test]
    fn scalar_doublet_momentum_is_the_velocity() {
        let k = bare(ExactMatrix::from_strs(&[["0", "i"], ["-i", "0"]]));
        let c = canonical_momenta(&k, Statistics::Bose).unwrap();
        // Π_φ = P_{0,1} φ̇
        assert!(c.momentum_map.get(0, 0).is_zero() && !c.momentum_map.get(0, 1).is_zero());
        assert!(c.momentum_map.is_antisymmetric());
        // [ξ, Π] = i on the canonical block
        let brackets = &c.field_brackets * &c.momentum_map.submatrix(&[0, 1], &[0, 1]).transpose();
        assert_eq!(brackets, ExactMatrix::identity(2).scale(&Scalar::i()));
    }

    #[test]
    fn majorana_momentum_is_linear_in_field() {
        let k = bare(ExactMatrix::identity(4));
        let c = canonical_momenta(&k, Statistics::Fermi).unwrap();
        assert_eq!(c.momentum_map, ExactMatrix::identity(4));
        assert_eq!(c.bracket_type, BracketType::Anticommutator);
        assert!(canonical_momenta(&k, Statistics::Bose).is_err());
    }

    #[test]
    fn zero_k_gives_empty_set() {
        let c = canonical_momenta(&bare(ExactMatrix::zeros(2, 2)), Statistics::Bose).unwrap();
        assert!(c.canonical_indices.is_empty());
    }

    #[test]
    fn verdicts_for_worked_cases() {
        let v = spin_statistics_verdict(&parse_theory("theory d\nfield phi spin=0 copies=2\n").unwrap()).unwrap();
        assert_eq!(v[0].consistent_statistics, ConsistentStatistics::Bose);
        assert_eq!(v[0].michel_parity, 1);
        assert!(!v[0].contradiction);
        let v = spin_statistics_verdict(&parse_theory("theory m\nfield psi spin=1/2\n").unwrap()).unwrap();
        assert_eq!(v[0].consistent_statistics, ConsistentStatistics::Fermi);
        assert_eq!(v[0].michel_parity, -1);
    }

    #[test]
    fn pinned_bose_spinor_contradicts() {
        let v = spin_statistics_verdict(&parse_theory("theory m\nfield psi spin=1/2 statistics=bose\n").unwrap())
            .unwrap();
        assert!(v[0].contradiction);
        let why = v[0].explanation.as_deref().unwrap();
        assert!(why.contains("symmetric K⁰") && why.contains("fermi"), "{why}");
    }
}
