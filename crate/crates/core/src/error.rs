use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed scalar {0:?}")]
    ScalarSyntax(String),

    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported spin 2j={0} (the analyzer handles 2j <= 8)")]
    UnsupportedSpin(u32),

    #[error(
        "field `{0}` is declared non-hermitian; only hermitian fields are analyzed \
         (creation and annihilation parts must appear together, see the Kirchoff check)"
    )]
    NonHermitian(String),

    #[error("unknown operator symbol `{0}`")]
    UnknownSymbol(String),

    #[error("relation table: {0}")]
    RelationTable(String),

    #[error("statistics {statistics} is not consistent with this kinematic matrix: {reason}")]
    InconsistentStatistics { statistics: String, reason: String },

    #[error("reduction rejected: {0}")]
    Reduction(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("matrix file: {0}")]
    MatrixFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
