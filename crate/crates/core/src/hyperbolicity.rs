//! Hyperbolic points and the connected components of `{h = 1}`.
//!
//! A ray `R_{>0}·u` meets `{h = 1}` exactly once when `h(u) > 0` and not at
//! all otherwise, so components of the level set are the maximal arcs of
//! the direction circle on which `h` is positive. The circle is cut into
//! events (roots of `h(1,t)` or `det ∂²h(1,t)` on either lift, plus the
//! two axis directions `(0, ±1)`) and the open gaps between them. Signs
//! are constant on each gap, so all the bookkeeping is combinatorial once
//! the roots are isolated.
//!
//! Elements are indexed counterclockwise starting at `(0, -1)`:
//! `(0,-1)`, the roots of the `+(1,t)` lift in ascending `t`, `(0,1)`, the
//! roots of the `-(1,t)` lift in ascending `t`, each event followed by the
//! gap after it.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{BinaryForm, Chart, Point, UnivariatePoly};
use crate::realroots::{JointRoots, RootBackend, RootInterval};
use crate::scalar::{RealScalar, Sign, Tolerance};

/// Which of the two antipodal directions `±(1, t)` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lift {
    Plus,
    Minus,
}

impl Lift {
    pub fn sign(self) -> Sign {
        match self {
            Lift::Plus => Sign::Positive,
            Lift::Minus => Sign::Negative,
        }
    }

    fn factor(self) -> f64 {
        match self {
            Lift::Plus => 1.0,
            Lift::Minus => -1.0,
        }
    }
}

/// A ray from the origin.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjectiveDirection<S> {
    /// `(0, 1)` for [`Lift::Plus`], `(0, -1)` for [`Lift::Minus`].
    Axis(Lift),
    /// `±(1, t)` with a known parameter.
    Point { lift: Lift, t: S },
    /// `±(1, t)` where `t` is a root known through an isolating interval.
    Root {
        lift: Lift,
        index: usize,
        interval: RootInterval<S>,
        approx: f64,
    },
}

impl<S: RealScalar> ProjectiveDirection<S> {
    /// Direction of a nonzero point.
    pub fn of_point(p: &Point<S>) -> Result<Self> {
        match (p[0].sign(), p[1].sign()) {
            (Sign::Zero, Sign::Zero) => Err(Error::ZeroVector),
            (Sign::Zero, Sign::Positive) => Ok(ProjectiveDirection::Axis(Lift::Plus)),
            (Sign::Zero, Sign::Negative) => Ok(ProjectiveDirection::Axis(Lift::Minus)),
            (sx, _) => Ok(ProjectiveDirection::Point {
                lift: if sx == Sign::Positive {
                    Lift::Plus
                } else {
                    Lift::Minus
                },
                t: p[1].clone() / p[0].clone(),
            }),
        }
    }

    /// A representative vector, when it is exactly known.
    pub fn vector(&self) -> Option<Point<S>> {
        let signed = |lift: Lift, v: S| match lift {
            Lift::Plus => v,
            Lift::Minus => -v,
        };
        match self {
            ProjectiveDirection::Axis(lift) => Some([S::zero(), signed(*lift, S::one())]),
            ProjectiveDirection::Point { lift, t } => {
                Some([signed(*lift, S::one()), signed(*lift, t.clone())])
            }
            ProjectiveDirection::Root { lift, interval, .. } => interval
                .exact_point
                .as_ref()
                .map(|t| [signed(*lift, S::one()), signed(*lift, t.clone())]),
        }
    }

    /// Unit vector in floating point.
    pub fn approx_vector(&self) -> [f64; 2] {
        let (lift, t) = match self {
            ProjectiveDirection::Axis(lift) => return [0.0, lift.factor()],
            ProjectiveDirection::Point { lift, t } => (*lift, t.to_f64()),
            ProjectiveDirection::Root { lift, approx, .. } => (*lift, *approx),
        };
        if !t.is_finite() {
            return [0.0, lift.factor() * t.signum()];
        }
        let n = t.hypot(1.0);
        [lift.factor() / n, lift.factor() * t / n]
    }

    /// Angle in `(-π, π]`.
    pub fn approx_angle(&self) -> f64 {
        let [x, y] = self.approx_vector();
        y.atan2(x)
    }

    pub fn is_exact(&self) -> bool {
        self.vector().is_some()
    }
}

impl<S: RealScalar + fmt::Display> fmt::Display for ProjectiveDirection<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |lift: &Lift| if *lift == Lift::Plus { "" } else { "-" };
        match self {
            ProjectiveDirection::Axis(Lift::Plus) => write!(f, "(0, 1)"),
            ProjectiveDirection::Axis(Lift::Minus) => write!(f, "(0, -1)"),
            ProjectiveDirection::Point { lift, t } => write!(f, "{}(1, {t})", sign(lift)),
            ProjectiveDirection::Root {
                lift,
                interval,
                approx,
                ..
            } => match &interval.exact_point {
                Some(t) => write!(f, "{}(1, {t})", sign(lift)),
                None => write!(
                    f,
                    "{}(1, t), t in ({}, {}) ~ {approx}",
                    sign(lift),
                    interval.lo,
                    interval.hi
                ),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Event,
    Gap,
}

/// One event or gap of the circle with the signs of `h` and `det ∂²h`.
#[derive(Clone, Debug)]
pub struct CircleElement<S> {
    pub kind: ElementKind,
    /// The event itself, or a sample direction inside the gap.
    pub direction: ProjectiveDirection<S>,
    pub h: Sign,
    pub det: Sign,
}

impl<S> CircleElement<S> {
    fn is_hyperbolic(&self) -> bool {
        self.h == Sign::Positive && self.det == Sign::Negative
    }
}

/// The sign pattern of `h` and `det ∂²h` around the circle.
#[derive(Clone, Debug)]
pub struct CircleSignData<S> {
    pub form: BinaryForm<S>,
    pub hessian_det: BinaryForm<S>,
    /// Joint roots of `h(1,t)` (index 0) and `det ∂²h(1,t)` (index 1).
    pub roots: JointRoots<S>,
    pub elements: Vec<CircleElement<S>>,
    /// `det ∂²h ≡ 0`, which happens exactly for powers of a linear form.
    pub det_vanishes: bool,
}

/// A maximal run of circle elements sharing a sign pattern.
#[derive(Clone, Debug)]
pub struct Arc<S> {
    /// Boundary events, `None` for the whole circle.
    pub start: Option<ProjectiveDirection<S>>,
    pub end: Option<ProjectiveDirection<S>>,
    /// Index of the first interior element.
    pub first: usize,
    /// Number of interior elements.
    pub len: usize,
    /// `det ∂²h` sign on each interior element.
    pub det_signs: Vec<Sign>,
}

impl<S> Arc<S> {
    pub fn is_full_circle(&self) -> bool {
        self.start.is_none()
    }

    /// Interior element indices in counterclockwise order.
    pub fn element_indices(&self, total: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |i| (self.first + i) % total)
    }

    pub fn contains_element(&self, index: usize, total: usize) -> bool {
        (index + total - self.first) % total < self.len
    }
}

/// One connected component of `{h = 1}` (or of its hyperbolic part).
#[derive(Clone, Debug)]
pub struct ComponentDescriptor<S> {
    pub arc: Arc<S>,
    /// An interior direction with an exactly known vector.
    pub direction: ProjectiveDirection<S>,
    /// The point of `{h = 1}` on `direction`, in floating point.
    pub sample_point: [f64; 2],
    /// The same point exactly, when `h(u)^(1/τ)` is exact.
    pub sample_exact: Option<Point<S>>,
    /// `det ∂²h < 0` on the whole open arc.
    pub hyperbolic: bool,
    /// Some but not all points of the arc are hyperbolic.
    pub mixed: bool,
}

/// `h(p) > 0` and `det ∂²h_p < 0`: in two variables, `-∂²h_p` then has
/// one positive and one negative eigenvalue.
pub fn is_hyperbolic_point<S: RealScalar>(h: &BinaryForm<S>, p: &Point<S>) -> Result<bool> {
    if p[0].is_zero() && p[1].is_zero() {
        return Err(Error::ZeroVector);
    }
    h.ensure_nonzero()?;
    if h.eval(p).sign() != Sign::Positive {
        return Ok(false);
    }
    Ok(h.hessian_det()?.eval(p).sign() == Sign::Negative)
}

fn leading_sign<S: RealScalar>(p: &UnivariatePoly<S>, full_degree: usize) -> Sign {
    match p.degree() {
        Some(d) if d == full_degree => p.leading().sign(),
        _ => Sign::Zero,
    }
}

fn lifted(sign: Sign, lift: Lift, degree: usize) -> Sign {
    if lift == Lift::Minus && degree % 2 == 1 {
        sign.flip()
    } else {
        sign
    }
}

/// Cuts the circle into events and gaps and records the signs of `h` and
/// `det ∂²h` on each piece.
pub fn circle_sign_data<S: RootBackend>(
    h: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<CircleSignData<S>> {
    h.ensure_nonzero()?;
    let tau = h.degree();
    let det = if tau >= 2 {
        h.hessian_det()?
    } else {
        BinaryForm::zero(0)
    };
    let det_degree = det.degree();
    let ph = S::trim(&h.dehomogenize(Chart::X), tol);
    let pd = S::trim(&det.dehomogenize(Chart::X), tol);
    if ph.is_zero() {
        return Err(Error::ZeroForm);
    }
    let det_vanishes = pd.is_zero();
    let polys = [ph.clone(), pd.clone()];
    let roots = S::joint_roots(&polys, tol)?;
    let samples = roots.gap_samples();
    let n = roots.len();

    let h_top = leading_sign(&ph, tau);
    let d_top = if det_vanishes {
        Sign::Zero
    } else {
        leading_sign(&pd, det_degree)
    };

    let gap_signs = |t: &S| {
        let d = if det_vanishes {
            Sign::Zero
        } else {
            pd.sign_at(t)
        };
        (ph.sign_at(t), d)
    };

    let mut elements = Vec::with_capacity(4 * n + 4);
    // (0,-1) precedes the +(1,t) chart, (0,1) precedes the -(1,t) chart
    for (axis, chart_lift) in [(Lift::Minus, Lift::Plus), (Lift::Plus, Lift::Minus)] {
        elements.push(CircleElement {
            kind: ElementKind::Event,
            direction: ProjectiveDirection::Axis(axis),
            h: lifted(h_top, axis, tau),
            det: d_top,
        });
        for g in 0..=n {
            let (sh, sd) = gap_signs(&samples[g]);
            elements.push(CircleElement {
                kind: ElementKind::Gap,
                direction: ProjectiveDirection::Point {
                    lift: chart_lift,
                    t: samples[g].clone(),
                },
                h: lifted(sh, chart_lift, tau),
                det: sd,
            });
            if g < n {
                let root = &roots.roots[g];
                let (sh, sd) = (
                    if root.is_root_of(0) { Sign::Zero } else { sh },
                    if root.is_root_of(1) || det_vanishes {
                        Sign::Zero
                    } else {
                        sd
                    },
                );
                elements.push(CircleElement {
                    kind: ElementKind::Event,
                    direction: ProjectiveDirection::Root {
                        lift: chart_lift,
                        index: g,
                        interval: root.interval.clone(),
                        approx: root.approx,
                    },
                    h: lifted(sh, chart_lift, tau),
                    det: sd,
                });
            }
        }
    }
    Ok(CircleSignData {
        form: h.clone(),
        hessian_det: det,
        roots,
        elements,
        det_vanishes,
    })
}

impl<S: RootBackend> CircleSignData<S> {
    /// Index of the element containing the direction.
    pub fn locate(&self, dir: &ProjectiveDirection<S>) -> usize {
        let n = self.roots.len();
        let base = |lift: Lift| if lift == Lift::Plus { 1 } else { n + 2 };
        let event = match dir {
            ProjectiveDirection::Axis(Lift::Minus) => return 0,
            ProjectiveDirection::Axis(Lift::Plus) => return 2 * (n + 1),
            ProjectiveDirection::Root { lift, index, .. } => base(*lift) + index,
            ProjectiveDirection::Point { lift, t } => match self.roots.locate(t) {
                Ok(i) => base(*lift) + i,
                // gap g of a chart follows the event before it
                Err(g) => return 2 * (base(*lift) + g - 1) + 1,
            },
        };
        2 * event
    }

    /// Whether the direction lies in the open arc.
    pub fn arc_contains(&self, arc: &Arc<S>, dir: &ProjectiveDirection<S>) -> bool {
        arc.contains_element(self.locate(dir), self.elements.len())
    }

    fn runs(&self, pred: impl Fn(&CircleElement<S>) -> bool) -> Vec<Arc<S>> {
        let total = self.elements.len();
        let holds: Vec<bool> = self.elements.iter().map(&pred).collect();
        let arc_of = |first: usize, len: usize, bounded: bool| Arc {
            start: bounded.then(|| self.elements[(first + total - 1) % total].direction.clone()),
            end: bounded.then(|| self.elements[(first + len) % total].direction.clone()),
            first,
            len,
            det_signs: (0..len)
                .map(|i| self.elements[(first + i) % total].det)
                .collect(),
        };
        let Some(anchor) = holds.iter().position(|b| !b) else {
            return vec![arc_of(0, total, false)];
        };
        let mut arcs = Vec::new();
        let mut i = 1;
        while i <= total {
            let idx = (anchor + i) % total;
            if holds[idx] {
                let mut len = 0;
                while holds[(idx + len) % total] {
                    len += 1;
                }
                arcs.push(arc_of(idx, len, true));
                i += len;
            } else {
                i += 1;
            }
        }
        arcs.sort_by_key(|a| a.first);
        arcs
    }

    /// Maximal arcs with `h > 0`.
    pub fn positive_arcs(&self) -> Vec<Arc<S>> {
        self.runs(|e| e.h == Sign::Positive)
    }

    /// Maximal arcs with `h > 0` and `det ∂²h < 0`.
    pub fn hyperbolic_arcs(&self) -> Vec<Arc<S>> {
        self.runs(CircleElement::is_hyperbolic)
    }

    /// Gap sample directions inside the arc, in counterclockwise order.
    pub fn interior_samples<'a>(
        &'a self,
        arc: &'a Arc<S>,
    ) -> impl Iterator<Item = &'a CircleElement<S>> + 'a {
        arc.element_indices(self.elements.len())
            .map(|i| &self.elements[i])
            .filter(|e| e.kind == ElementKind::Gap)
    }

    fn describe(&self, arc: Arc<S>) -> ComponentDescriptor<S> {
        let hyperbolic = arc.det_signs.iter().all(|s| *s == Sign::Negative);
        let mixed = !hyperbolic && arc.det_signs.contains(&Sign::Negative);
        let sample = self
            .interior_samples(&arc)
            .find(|e| e.det == Sign::Negative)
            .or_else(|| self.interior_samples(&arc).next())
            .expect("arcs contain a gap")
            .direction
            .clone();
        let tau = self.form.degree();
        let u = sample.vector().expect("gap samples are exact");
        let hu = self.form.eval(&u);
        let scale = S::exact_root(&hu, tau as u32);
        let sample_exact = scale.map(|s| [u[0].clone() / s.clone(), u[1].clone() / s]);
        let root = hu.to_f64().powf(1.0 / tau as f64);
        let sample_point = match &sample_exact {
            Some(p) => [p[0].to_f64(), p[1].to_f64()],
            None => [u[0].to_f64() / root, u[1].to_f64() / root],
        };
        ComponentDescriptor {
            arc,
            direction: sample,
            sample_point,
            sample_exact,
            hyperbolic,
            mixed,
        }
    }

    pub fn components(&self) -> Vec<ComponentDescriptor<S>> {
        self.positive_arcs()
            .into_iter()
            .map(|a| self.describe(a))
            .collect()
    }

    pub fn hyperbolic_components(&self) -> Vec<ComponentDescriptor<S>> {
        self.hyperbolic_arcs()
            .into_iter()
            .map(|a| self.describe(a))
            .collect()
    }
}

/// The connected components of `{h = 1}`, one per maximal arc of
/// directions with `h > 0`. Empty when `h ≤ 0` everywhere.
pub fn components<S: RootBackend>(
    h: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<Vec<ComponentDescriptor<S>>> {
    Ok(circle_sign_data(h, tol)?.components())
}

/// The connected components of the hyperbolic part of `{h = 1}`.
pub fn hyperbolic_components<S: RootBackend>(
    h: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<Vec<ComponentDescriptor<S>>> {
    Ok(circle_sign_data(h, tol)?.hyperbolic_components())
}
