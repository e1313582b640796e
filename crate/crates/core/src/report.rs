//! The aggregated verdict for a theory, in text and JSON form.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::exact::{ExactMatrix, SymmetryClass};
use crate::flavor::{kirchoff_check, FlavorDiagnosis, KirchoffResult};
use crate::fock::ModeExpansion;
use crate::invariance::{check_su2_invariance, constraint_split, theory_generators, InvarianceReport};
use crate::quantizer::{analyze_theory, surface_variation_consistency, StatisticsVerdict};
use crate::theory::{FlavorCoupling, MissingForm, Statistics, TheorySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OverallStatus {
    Consistent,
    Contradiction,
    RejectedNegativeNorm,
    NoKinematicTerm,
}

impl OverallStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            OverallStatus::Consistent => 0,
            OverallStatus::Contradiction => 2,
            OverallStatus::RejectedNegativeNorm => 3,
            OverallStatus::NoKinematicTerm => 4,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            OverallStatus::Consistent => "CONSISTENT",
            OverallStatus::Contradiction => "CONTRADICTION",
            OverallStatus::RejectedNegativeNorm => "REJECTED_NEGATIVE_NORM",
            OverallStatus::NoKinematicTerm => "NO_KINEMATIC_TERM",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintSummary {
    pub field: String,
    pub statistics: Statistics,
    /// Indices within the full theory.
    pub canonical: Vec<usize>,
    pub constraints: Vec<usize>,
    pub nonsingular_block: ExactMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KinematicSummary {
    pub matrix: ExactMatrix,
    pub symmetry: SymmetryClass,
    pub invariant: bool,
    pub invariance: InvarianceReport,
    pub constraints: Vec<ConstraintSummary>,
    pub missing: Vec<MissingForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KirchoffEntry {
    pub field: String,
    pub result: KirchoffResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub theory: String,
    pub fields: Vec<StatisticsVerdict>,
    pub kinematic: KinematicSummary,
    pub flavor: Vec<FlavorDiagnosis>,
    pub kirchoff: Vec<KirchoffEntry>,
    pub status: OverallStatus,
    pub reasons: Vec<String>,
}

impl VerdictReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Negative norm outranks contradictions, which outrank a missing kinematic
/// term.
pub fn overall_status(verdicts: &[StatisticsVerdict]) -> (OverallStatus, Vec<String>) {
    let mut reasons = Vec::new();
    let negative: Vec<&StatisticsVerdict> =
        verdicts.iter().filter(|v| v.flavor.as_ref().is_some_and(|f| f.negative_norm)).collect();
    for v in &negative {
        reasons.push(format!("field {}: negative-norm states", v.field));
    }
    for v in verdicts.iter().filter(|v| v.contradiction) {
        reasons.push(format!("field {}: {}", v.field, v.explanation.as_deref().unwrap_or("contradiction")));
    }
    for v in verdicts.iter().filter(|v| !v.has_kinematic_term) {
        reasons.push(format!("field {}: no kinematic term", v.field));
    }
    let status = if !negative.is_empty() {
        OverallStatus::RejectedNegativeNorm
    } else if verdicts.iter().any(|v| v.contradiction) {
        OverallStatus::Contradiction
    } else if verdicts.iter().any(|v| !v.has_kinematic_term) {
        OverallStatus::NoKinematicTerm
    } else {
        OverallStatus::Consistent
    };
    (status, reasons)
}

pub fn build_report(spec: &TheorySpec) -> Result<VerdictReport> {
    let analysis = analyze_theory(spec)?;
    let k = &analysis.build.kinematic;
    let invariance = check_su2_invariance(k, &theory_generators(spec)?)?;
    let mut constraints = Vec::new();
    for (fi, f) in spec.fields.iter().enumerate() {
        let range: Vec<usize> = spec.field_range(fi).collect();
        let block = k.restrict(&range);
        // split with the statistics under which the field's own block generates variations
        let statistics = if surface_variation_consistency(&block, Statistics::Bose).is_consistent() {
            Statistics::Bose
        } else if surface_variation_consistency(&block, Statistics::Fermi).is_consistent() {
            Statistics::Fermi
        } else {
            Statistics::Bose
        };
        let split = constraint_split(&block, statistics);
        constraints.push(ConstraintSummary {
            field: f.name.clone(),
            statistics,
            canonical: split.canonical_indices.iter().map(|i| range[*i]).collect(),
            constraints: split.constraint_indices.iter().map(|i| range[*i]).collect(),
            nonsingular_block: split.nonsingular_block,
        });
    }
    let kirchoff = spec
        .fields
        .iter()
        .map(|f| {
            // hermitian fields expand into matched annihilation and creation parts
            let e = ModeExpansion::hermitian(&f.name, &[("k", crate::exact::int(1))]);
            KirchoffEntry { field: f.name.clone(), result: kirchoff_check(&e) }
        })
        .collect();
    let flavor = match spec.flavor_coupling {
        FlavorCoupling::Diagonal => Vec::new(),
        FlavorCoupling::AntisymmetricPair => analysis.verdicts.iter().filter_map(|v| v.flavor.clone()).collect(),
    };
    let (status, reasons) = overall_status(&analysis.verdicts);
    Ok(VerdictReport {
        theory: spec.name.clone(),
        kinematic: KinematicSummary {
            symmetry: k.matrix.symmetry_class(),
            invariant: invariance.passes,
            matrix: k.matrix.clone(),
            invariance,
            constraints,
            missing: analysis.build.missing.clone(),
        },
        fields: analysis.verdicts,
        flavor,
        kirchoff,
        status,
        reasons,
    })
}

fn stats_token(v: &StatisticsVerdict) -> String {
    serde_json::to_value(v.consistent_statistics).ok().and_then(|x| x.as_str().map(str::to_string)).unwrap_or_default()
}

/// Human-readable rendering; carries the same verdict tokens as the JSON.
pub fn render_text(r: &VerdictReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theory {}", r.theory);
    let _ = writeln!(
        out,
        "kinematic: dim {} symmetry {} invariant {}",
        r.kinematic.matrix.rows(),
        r.kinematic.symmetry,
        r.kinematic.invariant
    );
    for v in &r.fields {
        let _ = writeln!(
            out,
            "field {}: spin {} requires {} {}, found {}; statistics {}; parity {:+}{}",
            v.field,
            v.spin,
            v.required_k0_symmetry,
            if v.flavor.is_some() { "K0_{1r,2s}" } else { "K0" },
            v.kinematic_symmetry,
            stats_token(v),
            v.michel_parity,
            if v.contradiction { "; CONTRADICTION" } else { "" }
        );
        if let Some(e) = &v.explanation {
            let _ = writeln!(out, "  {e}");
        }
        if let Some(d) = &v.flavor {
            let signs: Vec<String> = d.sector_signs.iter().map(|s| format!("{s:+}")).collect();
            let _ = writeln!(
                out,
                "  flavor antisymmetric {}; sector signs ({}); negative norm {}; inverted connection {}",
                d.is_flavor_antisymmetric,
                signs.join(", "),
                d.negative_norm,
                d.inverted_connection_attempt
            );
            if let Some(w) = &d.witness {
                let _ = writeln!(out, "  witness {}|0>: squared norm {}", w.state, w.squared_norm.compact());
            }
        }
    }
    for c in &r.kinematic.constraints {
        let _ = writeln!(out, "constraints {}: canonical {:?}, constraint {:?}", c.field, c.canonical, c.constraints);
    }
    for m in &r.kinematic.missing {
        let _ = writeln!(out, "missing {}: {}", m.field, m.reason);
    }
    for k in &r.kirchoff {
        let verdict = match &k.result {
            KirchoffResult::Compliant => "compliant".to_string(),
            KirchoffResult::Violation(d) => format!("violation: {d}"),
        };
        let _ = writeln!(out, "kirchoff {}: {verdict}", k.field);
    }
    for reason in &r.reasons {
        let _ = writeln!(out, "reason: {reason}");
    }
    let _ = writeln!(out, "status {}", r.status.token());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::parse_theory;

    fn report(text: &str) -> VerdictReport {
        build_report(&parse_theory(text).unwrap()).unwrap()
    }

    #[test]
    fn statuses() {
        assert_eq!(report("theory m\nfield psi spin=1/2\n").status, OverallStatus::Consistent);
        assert_eq!(report("theory s\nfield phi spin=0\n").status, OverallStatus::NoKinematicTerm);
        assert_eq!(
            report("theory a\nfield phi spin=0 flavors=2\nflavor antisymmetric-pair\n").status,
            OverallStatus::RejectedNegativeNorm
        );
        assert_eq!(report("theory m\nfield psi spin=1/2 statistics=bose\n").status, OverallStatus::Contradiction);
    }

    #[test]
    fn text_and_json_agree() {
        let r = report("theory d\nfield phi spin=0 copies=2\n");
        let text = render_text(&r);
        let json = r.to_json();
        assert!(text.contains("status CONSISTENT"));
        assert!(json.contains("\"status\": \"CONSISTENT\""));
        assert_eq!(json, report("theory d\nfield phi spin=0 copies=2\n").to_json());
    }

    #[test]
    fn doubled_scalar_split() {
        let r = report("theory d\nfield phi spin=0 copies=2\n");
        assert_eq!(r.kinematic.constraints[0].canonical, vec![0, 1]);
        assert!(r.kinematic.constraints[0].constraints.is_empty());
    }
}
