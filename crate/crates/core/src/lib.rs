//! Special homogeneous plane curves.
//!
//! A binary form `h` of degree `τ ≥ 3` defines the curve `{h = 1}` in the
//! plane. This crate isolates the real roots that organise such curves,
//! decides hyperbolicity of each connected component, computes the linear
//! symmetries of `h`, classifies special forms up to `GL(2, R)` via the
//! monomial normal form `x^(τ-k) y^k`, and evaluates the centro-affine
//! fundamental form.
//!
//! Most algorithms are generic over the coefficient type: exact rationals
//! ([`Rational`]) or `f64`.

pub mod centroaffine;
pub mod classify;
pub mod error;
pub mod hyperbolicity;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod realroots;
pub mod scalar;
pub mod symmetry;

pub use classify::{
    enumerate, equivalent, factor_real, is_special_homogeneous_curve, monomial_normal_form,
    ClassificationResult, Factorization, NormalForm, RealFactor, Transform, Verdict,
};
pub use error::{Error, Result};
pub use parse::{parse_exact, parse_float, ParseError, ParseErrorKind};
pub use poly::{BinaryForm, Chart, LinearMap, Point, UnivariatePoly, Variable};
pub use scalar::{Backend, QuadSurd, Rational, RealScalar, Scalar, Sign, Tolerance, Value};
