use thiserror::Error;

use crate::multicurve::ComponentClass;
use crate::surface::SurfaceSignature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported signature {0}")]
    UnsupportedSignature(SurfaceSignature),
    #[error("malformed triangulation: {0}")]
    MalformedTriangulation(String),
    #[error("non-integer genus (2 - q - chi = {0} is odd)")]
    NonIntegerGenus(i64),
    #[error("weight vector has {got} entries, surface has {expected} edges")]
    WeightCount { expected: usize, got: usize },
    #[error("parity violation in triangle {triangle}: edge weights sum to an odd number")]
    ParityViolation { triangle: usize },
    #[error("triangle inequality violated in triangle {triangle} at edge {edge}")]
    TriangleInequalityViolation { triangle: usize, edge: usize },
    #[error("invalid coordinates: {0}")]
    InvalidCoordinates(String),
    #[error("operands live on different surfaces")]
    SurfaceMismatch,
    #[error("expected a single curve, found {0} components")]
    MultipleComponents(usize),
    #[error("component {0} is not generic ({1:?})")]
    NonGenericComponent(usize, ComponentClass),
    #[error("components {0} and {1} are isotopic")]
    IsotopicPair(usize, usize),
    #[error("twist curve must be a single generic curve")]
    NonGenericTwistCurve,
    #[error("curve is not disjoint from family member {0}")]
    NotDisjoint(usize),
    #[error("no transversal curve found for family member {0}")]
    NoTransversal(usize),
    #[error("index {index} out of range for family of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("step budget of {0} exceeded")]
    StepBudgetExceeded(u64),
    #[error("surface {0} admits no pantalon decomposition")]
    NoPantalonDecomposition(SurfaceSignature),
    #[error("alpha is a face of beta")]
    FacePrecondition,
    #[error("the two classes are equal")]
    EqualClasses,
    #[error("no self-commensurating chain exists on {0}")]
    NoChain(SurfaceSignature),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable tag, used by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnsupportedSignature(_) => "UnsupportedSignature",
            Error::MalformedTriangulation(_) => "MalformedTriangulation",
            Error::NonIntegerGenus(_) => "NonIntegerGenus",
            Error::WeightCount { .. } => "WeightCount",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::TriangleInequalityViolation { .. } => "TriangleInequalityViolation",
            Error::InvalidCoordinates(_) => "InvalidCoordinates",
            Error::SurfaceMismatch => "SurfaceMismatch",
            Error::MultipleComponents(_) => "MultipleComponents",
            Error::NonGenericComponent(..) => "NonGenericComponent",
            Error::IsotopicPair(..) => "IsotopicPair",
            Error::NonGenericTwistCurve => "NonGenericTwistCurve",
            Error::NotDisjoint(_) => "NotDisjoint",
            Error::NoTransversal(_) => "NoTransversal",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::StepBudgetExceeded(_) => "StepBudgetExceeded",
            Error::NoPantalonDecomposition(_) => "NoPantalonDecomposition",
            Error::FacePrecondition => "FacePrecondition",
            Error::EqualClasses => "EqualClasses",
            Error::NoChain(_) => "NoChain",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
