//! Exact computations with crossed products R #_σ H of finite-dimensional algebras by
//! finite-dimensional Hopf algebras: construction, module theory, projective
//! resolutions, Ext/Tor, global and weak dimension, and a catalog of checks comparing
//! the homological dimensions of R and R #_σ H.

pub mod algebra;
pub mod crossed;
pub mod harness;
pub mod homology;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod module;
pub mod structure;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use algebra::{Algebra, AlgebraMap, CayleyTable};
pub use crossed::CrossedSystem;
pub use homology::{Dimension, Resolution};
pub use hopf::HopfAlgebra;
pub use harness::{Report, Status};
pub use linalg::{FieldSpec, Matrix, Scalar};
pub use module::Module;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("malformed Hopf algebra: {0}")]
    MalformedHopf(String),
    #[error("action is not measuring: {0}")]
    NotMeasuring(String),
    #[error("cocycle is not normal: {0}")]
    NotNormalCocycle(String),
    #[error("cocycle is not convolution invertible: {0}")]
    NotInvertibleCocycle(String),
    #[error("crossed product is not associative on basis triple {triple:?}: {detail}")]
    NotAssociative { triple: Vec<usize>, detail: String },
    #[error("group element {0} does not act as an algebra automorphism")]
    NotAutomorphism(String),
    #[error("not a group action: {0}")]
    NotGroupAction(String),
    #[error("Hopf algebra is not semisimple (no normalized integral)")]
    NotSemisimple,
    #[error("map is not linear over the subalgebra R")]
    NotRLinear,
    #[error("radical not computable in characteristic {characteristic} for dimension {dim}: trace forms degenerate")]
    UnsupportedCharacteristic { characteristic: u64, dim: usize },
    #[error("could not split the semisimple quotient: {0}")]
    DecompositionFailed(String),
    #[error("resolution has {available} terms but degree {needed} was requested")]
    ResolutionTooShort { needed: usize, available: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

/// Names of the axiom families that were checked exhaustively and held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub checked: Vec<String>,
}

impl Certificate {
    pub fn new<I, S>(checks: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Certificate { checked: checks.into_iter().map(Into::into).collect() }
    }

    pub fn merge(mut self, other: Certificate) -> Self {
        self.checked.extend(other.checked);
        self
    }
}

/// The first failing check, with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(check: &str, witness: Vec<usize>, detail: String) -> Self {
        Violation { check: check.to_string(), witness, detail }
    }
}
