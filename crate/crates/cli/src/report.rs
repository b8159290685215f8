//! The `report_v1` JSON document. Field order here is the serialized
//! order; see `docs/report_v1.md` for the field-by-field description.

use std::collections::BTreeMap;

use homcurve::hyperbolicity::{Lift, ProjectiveDirection};
use homcurve::{LinearMap, RealScalar, Scalar, Value};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "report_v1";

/// A number tagged with how it is known.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Num {
    /// Rational `p/q` or a quadratic surd such as `1/2*sqrt(2)`.
    Exact {
        value: String,
        approx: f64,
    },
    Approx {
        value: f64,
    },
}

impl Num {
    pub fn approx(v: f64) -> Num {
        Num::Approx { value: v }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Exact { approx, .. } => *approx,
            Num::Approx { value } => *value,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact { .. })
    }

    pub fn of<S: Scalar>(s: &S) -> Num {
        Num::from(&s.to_value())
    }
}

impl From<&Value> for Num {
    fn from(v: &Value) -> Num {
        match v {
            Value::Float(f) => Num::Approx { value: *f },
            exact => Num::Exact {
                value: exact.to_string(),
                approx: exact.to_f64(),
            },
        }
    }
}

pub type Matrix = [[Num; 2]; 2];

pub fn matrix_of<S: Scalar>(a: &LinearMap<S>) -> Matrix {
    let e = |i, j| Num::of(a.entry(i, j));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn matrix_of_values(e: &[[Value; 2]; 2]) -> Matrix {
    [
        [Num::from(&e[0][0]), Num::from(&e[0][1])],
        [Num::from(&e[1][0]), Num::from(&e[1][1])],
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    /// `axis`, `point` (rational slope) or `root` (slope known by an
    /// isolating interval).
    pub kind: String,
    pub vector: [Num; 2],
    /// Isolating interval of the slope `t` in `±(1, t)`, for roots.
    pub slope_interval: Option<[Num; 2]>,
    pub angle: Num,
    pub display: String,
}

impl Direction {
    pub fn of<S: RealScalar + std::fmt::Display>(d: &ProjectiveDirection<S>) -> Direction {
        let kind = match d {
            ProjectiveDirection::Axis(_) => "axis",
            ProjectiveDirection::Point { .. } => "point",
            ProjectiveDirection::Root { .. } => "root",
        };
        let vector = match (d.vector(), d) {
            (Some(v), _) => [Num::of(&v[0]), Num::of(&v[1])],
            (None, ProjectiveDirection::Root { lift, approx, .. }) => {
                let s = if *lift == Lift::Plus { 1.0 } else { -1.0 };
                [Num::approx(s), Num::approx(s * approx)]
            }
            (None, _) => {
                let [x, y] = d.approx_vector();
                [Num::approx(x), Num::approx(y)]
            }
        };
        let slope_interval = match d {
            ProjectiveDirection::Root { interval, .. } if interval.exact_point.is_none() => {
                Some([Num::of(&interval.lo), Num::of(&interval.hi)])
            }
            _ => None,
        };
        Direction {
            kind: kind.into(),
            vector,
            slope_interval,
            angle: Num::approx(d.approx_angle()),
            display: d.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputBlock {
    /// The parsed form printed in normal order.
    pub polynomial: String,
    pub backend: String,
    pub degree: usize,
    pub coefficients: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorBlock {
    /// `linear` or `irreducible-quadratic`.
    pub kind: String,
    pub multiplicity: u32,
    /// Coefficients of `x^(d-j) y^j`.
    pub coefficients: Vec<Num>,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationBlock {
    pub constant: Num,
    pub factors: Vec<FactorBlock>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictBlock {
    /// `special`, `hyperbolic-but-not-special` or `not-hyperbolic`.
    pub verdict: String,
    pub tau: usize,
    pub k: Option<usize>,
    /// `x^(τ-k) y^k`, for special forms.
    pub normal_form: Option<String>,
    /// `A` with `h ∘ A` equal to the normal form.
    pub normalizer: Option<Matrix>,
    /// Largest coefficient deviation of `h ∘ A` from the normal form.
    pub normalizer_residual: Option<Num>,
    pub component_count: usize,
    pub hyperbolic_component_count: usize,
    pub singular_at_infinity: Option<bool>,
    /// A direction with `h > 0` and `det ∂²h < 0`, checked pointwise.
    pub hyperbolic_witness: Option<[Num; 2]>,
    pub factorization: FactorizationBlock,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentBlock {
    pub index: usize,
    /// Boundary rays, counterclockwise; absent for the full circle.
    pub start: Option<Direction>,
    pub end: Option<Direction>,
    pub sample_direction: Direction,
    /// The point of `{h = 1}` on `sample_direction`.
    pub sample_point: [Num; 2],
    pub hyperbolic: bool,
    pub mixed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentsBlock {
    pub count: usize,
    pub hyperbolic_count: usize,
    pub components: Vec<ComponentBlock>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupBlock {
    pub label: String,
    /// Infinitesimal generator in normal-form coordinates.
    pub lie_generator: Matrix,
    /// Discrete generators in normal-form coordinates.
    pub generators: Vec<Matrix>,
    /// The same generators conjugated into input coordinates.
    pub input_generators: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryBlock {
    /// Dimension of the Lie algebra, when it was computed.
    pub dimension: Option<usize>,
    pub basis: Vec<Matrix>,
    pub group: Option<GroupBlock>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayBlock {
    pub direction: Direction,
    pub gradient_vanishes: bool,
    pub hessian_degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryBlock {
    pub component: usize,
    /// `regular` or `singular-at-infinity`.
    pub label: String,
    pub rays: Vec<RayBlock>,
    pub witnesses: Vec<Direction>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryBlock {
    pub boundary: Vec<BoundaryBlock>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub backend: String,
    pub epsilon: f64,
    pub timings_ms: BTreeMap<String, f64>,
    pub messages: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub input: InputBlock,
    pub verdict: VerdictBlock,
    /// Absent in `classify` output.
    pub components: Option<ComponentsBlock>,
    pub symmetry: Option<SymmetryBlock>,
    pub geometry: Option<GeometryBlock>,
    pub diagnostics: Diagnostics,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// The JSON value without the `diagnostics` block, for comparisons
    /// that must ignore timings.
    pub fn stable_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("reports always serialize");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("diagnostics");
        }
        v
    }
}
