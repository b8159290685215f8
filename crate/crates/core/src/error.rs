use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the zero form cannot be analyzed")]
    ZeroForm,
    #[error("the zero polynomial has no roots or factors")]
    ZeroPolynomial,
    #[error("degree {found} is below the required minimum {required}")]
    DegreeTooLow { required: usize, found: usize },
    #[error("linear map is singular")]
    SingularMap,
    #[error("interval endpoint {endpoint} is a root of the query polynomial")]
    EndpointIsRoot { endpoint: String },
    #[error("gradient vanishes at the given point")]
    CriticalPoint,
    #[error("vector is not tangent to the level set")]
    NotTangent,
    #[error("the zero vector has no direction")]
    ZeroVector,
    #[error("matrix is not an infinitesimal symmetry of the form")]
    NotASymmetry,
    #[error("the zero matrix does not generate a flow")]
    DegenerateGenerator,
    #[error("direction lies outside the component's arc")]
    DirectionOutsideArc,
    #[error("component is not hyperbolic")]
    NotHyperbolic,
    #[error("k = {k} is outside 1..={max} for degree {tau}")]
    InvalidK { tau: usize, k: usize, max: usize },
    #[error("form lies outside the two-line family handled by the equivalence test")]
    OutsideClassifiedFamily,
    #[error("operation requires the exact backend")]
    ExactBackendRequired,
    #[error("non-finite floating point value")]
    NonFinite,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
