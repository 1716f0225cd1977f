use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("expected {expected} entries, found {found}")]
pub struct ArityError {
    pub expected: usize,
    pub found: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("edge lengths are not classically allowed (det G = {det_g:e})")]
    NotClassicallyAllowed { det_g: f64 },
    #[error("degenerate angle: {0}")]
    DegenerateAngle(&'static str),
    #[error("edge length {0} is not positive")]
    NonPositiveLength(f64),
    #[error("({0}, {1}, {2}) do not form a triangle")]
    NotATriangle(f64, f64, f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymError {
    /// A d-matrix index exceeds its spin.
    #[error("index {index_twice}/2 out of range for spin {spin_twice}/2")]
    IndexOutOfRange { spin_twice: u32, index_twice: i64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    /// A phase exponent came out half-odd, i.e. the layout is wrong.
    #[error("non-integer phase exponent {0}/2")]
    NonIntegerPhase(i64),
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("no rows to summarize")]
    EmptyInput,
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}
