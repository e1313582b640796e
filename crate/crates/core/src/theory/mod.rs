//! Declarative theory specifications and the kinematic matrix they induce.

mod kinematic;
mod parse;

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::su2::SpinLabel;

pub use kinematic::{build_kinematic, KinematicBuild, MissingForm};
pub use parse::{parse_theory, parse_theory_in, serialize_theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Bose,
    Fermi,
}

impl Statistics {
    pub fn other(self) -> Self {
        match self {
            Statistics::Bose => Statistics::Fermi,
            Statistics::Fermi => Statistics::Bose,
        }
    }

    /// Exchange parity `+1` for Bose, `−1` for Fermi.
    pub fn parity(self) -> i8 {
        match self {
            Statistics::Bose => 1,
            Statistics::Fermi => -1,
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Bose => "bose",
            Statistics::Fermi => "fermi",
        })
    }
}

/// Statistics requested for a field in the specification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StatisticsChoice {
    Auto,
    Bose,
    Fermi,
}

impl StatisticsChoice {
    pub fn pinned(self) -> Option<Statistics> {
        match self {
            StatisticsChoice::Auto => None,
            StatisticsChoice::Bose => Some(Statistics::Bose),
            StatisticsChoice::Fermi => Some(Statistics::Fermi),
        }
    }
}

impl fmt::Display for StatisticsChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatisticsChoice::Auto => "auto",
            StatisticsChoice::Bose => "bose",
            StatisticsChoice::Fermi => "fermi",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub name: String,
    pub spin: SpinLabel,
    pub flavors: usize,
    pub copies: usize,
    pub hermitian: bool,
    pub statistics: StatisticsChoice,
}

impl FieldSpec {
    pub fn new(name: impl Into<String>, spin: SpinLabel) -> Self {
        Self {
            name: name.into(),
            spin,
            flavors: 1,
            copies: 1,
            hermitian: true,
            statistics: StatisticsChoice::Auto,
        }
    }

    pub fn with_flavors(mut self, n: usize) -> Self {
        self.flavors = n;
        self
    }

    pub fn with_copies(mut self, n: usize) -> Self {
        self.copies = n;
        self
    }

    pub fn with_statistics(mut self, s: StatisticsChoice) -> Self {
        self.statistics = s;
        self
    }

    /// Hermitian components per multiplet.
    pub fn component_dim(&self) -> usize {
        self.spin.hermitian_dim()
    }

    /// `copies × components`, the index space of one flavor.
    pub fn flavor_block_dim(&self) -> usize {
        self.copies * self.component_dim()
    }

    pub fn dim(&self) -> usize {
        self.flavors * self.flavor_block_dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KinematicSpec {
    Auto,
    Explicit(ExactMatrix),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlavorCoupling {
    Diagonal,
    AntisymmetricPair,
}

impl fmt::Display for FlavorCoupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlavorCoupling::Diagonal => "diagonal",
            FlavorCoupling::AntisymmetricPair => "antisymmetric-pair",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheorySpec {
    pub name: String,
    pub fields: Vec<FieldSpec>,
    pub kinematic: KinematicSpec,
    pub flavor_coupling: FlavorCoupling,
}

impl TheorySpec {
    pub fn new(name: impl Into<String>, fields: Vec<FieldSpec>) -> Self {
        Self {
            name: name.into(),
            fields,
            kinematic: KinematicSpec::Auto,
            flavor_coupling: FlavorCoupling::Diagonal,
        }
    }

    pub fn dim(&self) -> usize {
        self.fields.iter().map(FieldSpec::dim).sum()
    }

    /// One entry per index of the full space, ordered field, flavor, copy,
    /// component (component fastest).
    pub fn index_map(&self) -> Vec<IndexLabel> {
        let mut out = Vec::with_capacity(self.dim());
        for (field, f) in self.fields.iter().enumerate() {
            for flavor in 0..f.flavors {
                for copy in 0..f.copies {
                    for component in 0..f.component_dim() {
                        out.push(IndexLabel { field, flavor, copy, component });
                    }
                }
            }
        }
        out
    }

    /// Global indices belonging to `field`.
    pub fn field_range(&self, field: usize) -> std::ops::Range<usize> {
        let start: usize = self.fields[..field].iter().map(FieldSpec::dim).sum();
        start..start + self.fields[field].dim()
    }

    /// Checks the structural invariants that the parser enforces.
    pub fn validate(&self) -> Result<()> {
        if self.fields.is_empty() {
            return Err(Error::Precondition("theory declares no fields".into()));
        }
        for f in &self.fields {
            if !f.hermitian {
                return Err(Error::NonHermitian(f.name.clone()));
            }
            f.spin.check_supported()?;
            if f.flavors == 0 || f.copies == 0 {
                return Err(Error::Precondition(format!("field `{}` needs flavors and copies >= 1", f.name)));
            }
            if self.flavor_coupling == FlavorCoupling::AntisymmetricPair && f.flavors != 2 {
                return Err(Error::Precondition(format!(
                    "antisymmetric-pair coupling needs flavors=2, field `{}` has {}",
                    f.name, f.flavors
                )));
            }
        }
        for (k, f) in self.fields.iter().enumerate() {
            if self.fields[..k].iter().any(|g| g.name == f.name) {
                return Err(Error::Precondition(format!("duplicate field `{}`", f.name)));
            }
        }
        if let KinematicSpec::Explicit(m) = &self.kinematic {
            let n = self.dim();
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension {
                    op: "explicit kinematic matrix",
                    detail: format!("expected {n}x{n}, found {}x{}", m.rows(), m.cols()),
                });
            }
        }
        Ok(())
    }
}

/// Position of one index in the (field, flavor, copy, component) product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IndexLabel {
    pub field: usize,
    pub flavor: usize,
    pub copy: usize,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KinematicMatrix {
    pub matrix: ExactMatrix,
    pub index_map: Vec<IndexLabel>,
}

impl KinematicMatrix {
    pub fn new(matrix: ExactMatrix, index_map: Vec<IndexLabel>) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != index_map.len() {
            return Err(Error::Dimension {
                op: "kinematic matrix",
                detail: format!("{}x{} with {} labels", matrix.rows(), matrix.cols(), index_map.len()),
            });
        }
        Ok(Self { matrix, index_map })
    }

    /// A single field with trivial labels, for matrices that come without a theory.
    pub fn bare(matrix: ExactMatrix) -> Result<Self> {
        let n = matrix.rows();
        let labels = (0..n).map(|component| IndexLabel { field: 0, flavor: 0, copy: 0, component }).collect();
        Self::new(matrix, labels)
    }

    pub fn dim(&self) -> usize {
        self.index_map.len()
    }

    /// Restriction to the given global indices.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        Self {
            matrix: self.matrix.submatrix(indices, indices),
            index_map: indices.iter().map(|&i| self.index_map[i]).collect(),
        }
    }
}

/// Reads and parses a specification file; relative matrix paths resolve
/// against the file's directory.
pub fn load_theory(path: &Path) -> Result<TheorySpec> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_theory_in(&text, path.parent())
}
