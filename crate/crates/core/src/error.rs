use serde::Serialize;
use thiserror::Error;

/// Machine-readable failure classes, one per invariant family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorClass {
    Input,
    Reflexivity,
    Transitivity,
    TimelikeNotCausal,
    ReverseTriangle,
    InfiniteSeparation,
    Antisymmetry,
    Distinguishing,
    SpacelikeBoundary,
    Monotonicity,
    NonCausalChain,
    Lipschitz,
    Positivity,
    MeshMismatch,
    Inextendibility,
    Inconclusive,
    BallLeavesRegion,
}

impl ErrorClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorClass::Input => "input",
            ErrorClass::Reflexivity => "reflexivity",
            ErrorClass::Transitivity => "transitivity",
            ErrorClass::TimelikeNotCausal => "timelike-not-causal",
            ErrorClass::ReverseTriangle => "reverse-triangle",
            ErrorClass::InfiniteSeparation => "infinite-separation",
            ErrorClass::Antisymmetry => "antisymmetry",
            ErrorClass::Distinguishing => "distinguishing",
            ErrorClass::SpacelikeBoundary => "spacelike-boundary",
            ErrorClass::Monotonicity => "monotonicity",
            ErrorClass::NonCausalChain => "non-causal-chain",
            ErrorClass::Lipschitz => "lipschitz",
            ErrorClass::Positivity => "positivity",
            ErrorClass::MeshMismatch => "mesh-mismatch",
            ErrorClass::Inextendibility => "inextendibility",
            ErrorClass::Inconclusive => "inconclusive",
            ErrorClass::BallLeavesRegion => "ball-leaves-region",
        }
    }

    /// Input problems exit with 3, invariant failures with 2.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Input | ErrorClass::MeshMismatch => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{class} violated at {witness:?}: {detail}")]
    Invariant {
        class: ErrorClass,
        witness: Vec<usize>,
        detail: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invariant(class: ErrorClass, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        Error::Invariant {
            class,
            witness,
            detail: detail.into(),
        }
    }

    pub(crate) fn input(detail: impl Into<String>) -> Self {
        Error::Input(detail.into())
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Invariant { class, .. } => *class,
            _ => ErrorClass::Input,
        }
    }

    pub fn witness(&self) -> &[usize] {
        match self {
            Error::Invariant { witness, .. } => witness,
            Error::IndexOutOfRange { .. } | Error::Input(_) | Error::Io(_) | Error::Json(_) => &[],
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
