//! Centro-affine geometry of the curve `{h = 1}`.
//!
//! The fundamental form is `g = -(1/τ) ∂²h` on tangent vectors; it is
//! positive exactly at hyperbolic points. This module also measures arc
//! length in `g`, classifies the boundary rays of the cone over a
//! component, and intersects tangent lines with that cone.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::hyperbolicity::{
    circle_sign_data, CircleSignData, ComponentDescriptor, ProjectiveDirection,
};
use crate::poly::{BinaryForm, Chart, Point};
use crate::realroots::RootBackend;
use crate::scalar::{Backend, RealScalar, Scalar, Sign, Tolerance};

/// `v = (-∂h/∂y, ∂h/∂x)(p)`, spanning `ker dh_p`.
pub fn tangent_vector<S: Scalar>(h: &BinaryForm<S>, p: &Point<S>) -> Result<Point<S>> {
    let [hx, hy] = h.gradient()?;
    let (gx, gy) = (hx.eval(p), hy.eval(p));
    if gx.is_zero() && gy.is_zero() {
        return Err(Error::CriticalPoint);
    }
    Ok([-gy, gx])
}

/// `-(1/τ) ∂²h_p(v, v)` for a tangent vector `v`.
pub fn fundamental_form<S: RealScalar>(
    h: &BinaryForm<S>,
    p: &Point<S>,
    v: &Point<S>,
    tol: &Tolerance,
) -> Result<S> {
    if v[0].is_zero() && v[1].is_zero() {
        return Err(Error::ZeroVector);
    }
    let [hx, hy] = h.gradient()?;
    let (gx, gy) = (hx.eval(p), hy.eval(p));
    let dh = gx.clone() * v[0].clone() + gy.clone() * v[1].clone();
    let tangent = match S::BACKEND {
        Backend::Exact => dh.is_zero(),
        Backend::Float => {
            let scale = gx.to_f64().hypot(gy.to_f64()) * v[0].to_f64().hypot(v[1].to_f64());
            dh.to_f64().abs() <= tol.epsilon.sqrt() * scale
        }
    };
    if !tangent {
        return Err(Error::NotTangent);
    }
    let tau = S::from_usize(h.degree());
    Ok(-h.hessian_bilinear(p, v, v)? / tau)
}

/// Float copies of `h`, its gradient and Hessian for repeated evaluation.
struct FloatJet {
    tau: f64,
    h: BinaryForm<f64>,
    grad: [BinaryForm<f64>; 2],
    hess: [[BinaryForm<f64>; 2]; 2],
}

impl FloatJet {
    fn new<S: Scalar>(h: &BinaryForm<S>) -> Result<Self> {
        let h = h.to_f64();
        Ok(FloatJet {
            tau: h.degree() as f64,
            grad: h.gradient()?,
            hess: h.hessian()?,
            h,
        })
    }

    /// `√g(c', c')` for the curve `θ ↦ u(θ) / h(u(θ))^(1/τ)`.
    fn speed(&self, theta: f64) -> f64 {
        let u = [theta.cos(), theta.sin()];
        let du = [-theta.sin(), theta.cos()];
        let hu = self.h.eval(&u);
        let dh = self.grad[0].eval(&u) * du[0] + self.grad[1].eval(&u) * du[1];
        let c = dh / (self.tau * hu);
        let w = [du[0] - c * u[0], du[1] - c * u[1]];
        let m = [
            [self.hess[0][0].eval(&u), self.hess[0][1].eval(&u)],
            [self.hess[1][0].eval(&u), self.hess[1][1].eval(&u)],
        ];
        let q = w[0] * (m[0][0] * w[0] + m[0][1] * w[1]) + w[1] * (m[1][0] * w[0] + m[1][1] * w[1]);
        (-q / (self.tau * hu)).max(0.0).sqrt()
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature to relative tolerance `rel`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    // a coarse pass fixes the absolute tolerance
    let n = 16;
    let step = (b - a) / n as f64;
    let coarse: f64 = (0..n)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * step, a + (i + 1) as f64 * step);
            simpson(x0, x1, f(x0), f(0.5 * (x0 + x1)), f(x1))
        })
        .sum();
    let abs_tol = (rel * coarse.abs()).max(f64::MIN_POSITIVE);
    (0..n)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * step, a + (i + 1) as f64 * step);
            let (f0, fm, f1) = (f(x0), f(0.5 * (x0 + x1)), f(x1));
            let whole = simpson(x0, x1, f0, fm, f1);
            adaptive_simpson(f, x0, x1, f0, fm, f1, whole, abs_tol / n as f64, 40)
        })
        .sum()
}

/// Counterclockwise angle from the arc start to `dir`, in `[0, 2π)`.
fn offset_angle<S: RealScalar>(start: f64, dir: &ProjectiveDirection<S>) -> f64 {
    (dir.approx_angle() - start).rem_euclid(2.0 * PI)
}

/// Centro-affine length of the piece of a hyperbolic component between
/// the rays `d1` and `d2`, by adaptive quadrature over the direction
/// angle to relative tolerance `1e-8`.
pub fn arc_length<S: RootBackend>(
    h: &BinaryForm<S>,
    component: &ComponentDescriptor<S>,
    d1: &ProjectiveDirection<S>,
    d2: &ProjectiveDirection<S>,
    tol: &Tolerance,
) -> Result<f64> {
    if !component.hyperbolic {
        return Err(Error::NotHyperbolic);
    }
    let data = circle_sign_data(h, tol)?;
    for d in [d1, d2] {
        if !data.arc_contains(&component.arc, d) {
            return Err(Error::DirectionOutsideArc);
        }
    }
    let start = match &component.arc.start {
        Some(s) => s.approx_angle(),
        None => 0.0,
    };
    let (a, b) = (offset_angle(start, d1), offset_angle(start, d2));
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let jet = FloatJet::new(h)?;
    let f = |phi: f64| jet.speed(start + phi);
    Ok(integrate(&f, a, b, 1e-8))
}

/// Classification of the boundary of the cone over a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryLabel {
    Regular,
    SingularAtInfinity,
}

impl BoundaryLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryLabel::Regular => "regular",
            BoundaryLabel::SingularAtInfinity => "singular-at-infinity",
        }
    }
}

impl fmt::Display for BoundaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What was checked on one boundary ray.
#[derive(Clone, Debug)]
pub struct BoundaryRay<S> {
    pub direction: ProjectiveDirection<S>,
    /// `dh` is zero along the whole ray.
    pub gradient_vanishes: bool,
    /// `∂²h_u(u, u) = 0` on the ray. By Euler this is `τ(τ-1)h(u)`, so it
    /// holds on every ray in `{h = 0}` and never decides the label.
    pub hessian_degenerate: bool,
}

#[derive(Clone, Debug)]
pub struct BoundaryBehaviour<S> {
    pub label: BoundaryLabel,
    pub rays: Vec<BoundaryRay<S>>,
    /// Boundary rays on which `dh` vanishes.
    pub witnesses: Vec<ProjectiveDirection<S>>,
}

/// Whether the univariate restriction of `f` to the chart vanishes at the
/// boundary direction.
fn vanishes_on_ray<S: RootBackend>(
    f: &BinaryForm<S>,
    dir: &ProjectiveDirection<S>,
    data: &CircleSignData<S>,
    tol: &Tolerance,
) -> bool {
    match dir {
        ProjectiveDirection::Root { index, .. } => {
            let p = f.dehomogenize(Chart::X);
            S::vanishes_at(&p, &data.roots, *index, tol)
        }
        _ => {
            let v = dir.vector().expect("axis and sample directions are exact");
            let value = f.eval(&v);
            match S::BACKEND {
                Backend::Exact => value.is_zero(),
                Backend::Float => {
                    value.to_f64().abs() <= tol.epsilon.sqrt() * f.max_abs_coeff().max(1.0)
                }
            }
        }
    }
}

/// Examines the boundary rays of `R_{>0}·H` for the component `H`: the
/// curve is singular at infinity iff `dh` vanishes on one of them.
pub fn boundary_behavior<S: RootBackend>(
    h: &BinaryForm<S>,
    component: &ComponentDescriptor<S>,
    tol: &Tolerance,
) -> Result<BoundaryBehaviour<S>> {
    let (Some(start), Some(end)) = (&component.arc.start, &component.arc.end) else {
        return Ok(BoundaryBehaviour {
            label: BoundaryLabel::Regular,
            rays: Vec::new(),
            witnesses: Vec::new(),
        });
    };
    let data = circle_sign_data(h, tol)?;
    let [hx, hy] = h.gradient()?;
    let h_at_ray = |dir: &ProjectiveDirection<S>| vanishes_on_ray(h, dir, &data, tol);
    let mut rays = Vec::new();
    for dir in [start, end] {
        let gradient_vanishes =
            vanishes_on_ray(&hx, dir, &data, tol) && vanishes_on_ray(&hy, dir, &data, tol);
        rays.push(BoundaryRay {
            direction: dir.clone(),
            gradient_vanishes,
            hessian_degenerate: h_at_ray(dir),
        });
    }
    let witnesses: Vec<_> = rays
        .iter()
        .filter(|r| r.gradient_vanishes)
        .map(|r| r.direction.clone())
        .collect();
    Ok(BoundaryBehaviour {
        label: if witnesses.is_empty() {
            BoundaryLabel::Regular
        } else {
            BoundaryLabel::SingularAtInfinity
        },
        rays,
        witnesses,
    })
}

/// One end of a [`ConeInterval`].
#[derive(Clone, Debug, PartialEq)]
pub enum ConeBound<S> {
    NegInfinity,
    PosInfinity,
    Finite { approx: f64, exact: Option<S> },
}

impl<S> ConeBound<S> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ConeBound::Finite { .. })
    }

    pub fn approx(&self) -> f64 {
        match self {
            ConeBound::NegInfinity => f64::NEG_INFINITY,
            ConeBound::PosInfinity => f64::INFINITY,
            ConeBound::Finite { approx, .. } => *approx,
        }
    }
}

/// `{t : p + t v ∈ U}` around `t = 0`, for the cone `U` over a component.
#[derive(Clone, Debug)]
pub struct ConeInterval<S> {
    pub lo: ConeBound<S>,
    pub hi: ConeBound<S>,
    pub basepoint: Point<S>,
    pub direction: Point<S>,
}

impl<S> ConeInterval<S> {
    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.approx() < 0.0 && 0.0 < self.hi.approx()
    }
}

fn cross<S: Scalar>(a: &Point<S>, b: &Point<S>) -> S {
    a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
}

/// Intersects the tangent line at `p` with the cone over the component.
/// `p` may be any point of the open cone; the tangent line is that of the
/// level set through `p`.
pub fn tangent_cone_intersection<S: RootBackend>(
    h: &BinaryForm<S>,
    component: &ComponentDescriptor<S>,
    p: &Point<S>,
) -> Result<ConeInterval<S>> {
    let v = tangent_vector(h, p)?;
    let mut lo = ConeBound::NegInfinity;
    let mut hi = ConeBound::PosInfinity;
    let boundaries = [&component.arc.start, &component.arc.end];
    for e in boundaries.into_iter().flatten() {
        let crossing = match e.vector() {
            Some(e) => {
                let denom = cross(&e, &v);
                if denom.is_zero() {
                    continue;
                }
                let t = -cross(&e, p) / denom;
                let q = [
                    p[0].clone() + t.clone() * v[0].clone(),
                    p[1].clone() + t.clone() * v[1].clone(),
                ];
                let lambda = q[0].clone() * e[0].clone() + q[1].clone() * e[1].clone();
                if lambda.sign() != Sign::Positive {
                    continue;
                }
                let exact = (S::BACKEND == Backend::Exact).then(|| t.clone());
                (t.to_f64(), exact)
            }
            None => {
                let e = e.approx_vector();
                let (pf, vf) = (
                    [p[0].to_f64(), p[1].to_f64()],
                    [v[0].to_f64(), v[1].to_f64()],
                );
                let denom = e[0] * vf[1] - e[1] * vf[0];
                if denom == 0.0 {
                    continue;
                }
                let t = -(e[0] * pf[1] - e[1] * pf[0]) / denom;
                let lambda = (pf[0] + t * vf[0]) * e[0] + (pf[1] + t * vf[1]) * e[1];
                if lambda <= 0.0 {
                    continue;
                }
                (t, None)
            }
        };
        let (t, exact) = crossing;
        if t < 0.0 && t > lo.approx() {
            lo = ConeBound::Finite { approx: t, exact };
        } else if t > 0.0 && t < hi.approx() {
            hi = ConeBound::Finite { approx: t, exact };
        }
    }
    Ok(ConeInterval {
        lo,
        hi,
        basepoint: p.clone(),
        direction: v,
    })
}

/// `∂²h_p(v, v)` by a central second difference of `t ↦ h(p + t v)`.
pub fn second_difference(h: &BinaryForm<f64>, p: &[f64; 2], v: &[f64; 2], step: f64) -> f64 {
    let at = |t: f64| h.eval(&[p[0] + t * v[0], p[1] + t * v[1]]);
    (at(step) - 2.0 * at(0.0) + at(-step)) / (step * step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolicity::{components, Lift};
    use crate::scalar::Rational;

    type Q = Rational;

    fn form(c: &[i64]) -> BinaryForm<Q> {
        BinaryForm::from_ints(c)
    }

    fn pt(x: i64, y: i64) -> Point<Q> {
        [Q::from_i64(x), Q::from_i64(y)]
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn tangent_vector_examples() {
        let x2y = form(&[0, 1, 0, 0]);
        assert_eq!(tangent_vector(&x2y, &pt(1, 1)).unwrap(), pt(-1, 2));
        let x2y2 = form(&[0, 0, 1, 0, 0]);
        assert_eq!(tangent_vector(&x2y2, &pt(1, 1)).unwrap(), pt(-2, 2));
        assert!(matches!(
            tangent_vector(&x2y, &pt(0, 1)),
            Err(Error::CriticalPoint)
        ));
        let h = form(&[2, -1, 3, 5]);
        let p = [q(3, 7), q(-2, 5)];
        let v = tangent_vector(&h, &p).unwrap();
        assert_eq!(h.differential(&p, &v).unwrap(), Q::from_i64(0));
    }

    #[test]
    fn fundamental_form_examples() {
        let tol = Tolerance::default();
        let x2y = form(&[0, 1, 0, 0]);
        assert_eq!(
            fundamental_form(&x2y, &pt(1, 1), &pt(-1, 2), &tol).unwrap(),
            Q::from_i64(2)
        );
        assert_eq!(
            fundamental_form(&x2y, &pt(1, 1), &pt(-2, 4), &tol).unwrap(),
            Q::from_i64(8)
        );
        let x2y2 = form(&[0, 0, 1, 0, 0]);
        let g = fundamental_form(&x2y2, &pt(1, 1), &pt(-1, 1), &tol).unwrap();
        assert_eq!(g, Q::from_i64(1));
        assert!(matches!(
            fundamental_form(&x2y, &pt(1, 1), &pt(1, 0), &tol),
            Err(Error::NotTangent)
        ));
        assert!(matches!(
            fundamental_form(&x2y, &pt(1, 1), &pt(0, 0), &tol),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn fundamental_form_matches_finite_differences() {
        let tol = Tolerance::default();
        let h = form(&[0, 1, 0, 0]).to_f64();
        let p = [1.3, 0.7];
        let v = tangent_vector(&h, &p).unwrap();
        let g = fundamental_form(&h, &p, &v, &tol).unwrap();
        let fd = -second_difference(&h, &p, &v, 1e-4) / 3.0;
        assert!((g - fd).abs() <= 1e-5 * g.abs());
    }

    #[test]
    fn arc_length_along_the_flow() {
        // x^2 y with a = diag(1, -2): g(ap, ap) = 2 on the curve, so the
        // flow covers length sqrt(2)|t| in time t
        let tol = Tolerance::default();
        let h = form(&[0, 1, 0, 0]);
        let comps = components(&h, &tol).unwrap();
        let first = comps
            .iter()
            .find(|c| c.direction.approx_vector()[0] > 0.0)
            .unwrap();
        let base = [1.0f64, 1.0f64];
        for t in [-0.7f64, -0.2, 0.3, 0.9, 1.4] {
            let moved = [base[0] * t.exp(), base[1] * (-2.0 * t).exp()];
            let d1 = ProjectiveDirection::Point {
                lift: Lift::Plus,
                t: Q::from_i64(1),
            };
            let d2 = ProjectiveDirection::Point {
                lift: Lift::Plus,
                t: crate::scalar::f64_to_rational(moved[1] / moved[0]).unwrap(),
            };
            let len = arc_length(&h, first, &d1, &d2, &tol).unwrap();
            assert!((len - 2f64.sqrt() * t.abs()).abs() <= 1e-6, "t={t}: {len}");
        }
    }

    #[test]
    fn arc_length_is_additive() {
        let tol = Tolerance::default();
        let h = form(&[1, 0, -3, 0]);
        let comps = components(&h, &tol).unwrap();
        let c = &comps[0];
        let data = circle_sign_data(&h, &tol).unwrap();
        let inside: Vec<ProjectiveDirection<Q>> = [q(-1, 2), q(-1, 3), q(0, 1), q(1, 5)]
            .into_iter()
            .map(|t| ProjectiveDirection::Point {
                lift: Lift::Plus,
                t,
            })
            .filter(|d| data.arc_contains(&c.arc, d))
            .collect();
        assert!(inside.len() >= 3);
        let l01 = arc_length(&h, c, &inside[0], &inside[1], &tol).unwrap();
        let l12 = arc_length(&h, c, &inside[1], &inside[2], &tol).unwrap();
        let l02 = arc_length(&h, c, &inside[0], &inside[2], &tol).unwrap();
        assert!((l01 + l12 - l02).abs() <= 1e-6);
        assert_eq!(
            arc_length(&h, c, &inside[0], &inside[0], &tol).unwrap(),
            0.0
        );
    }

    #[test]
    fn boundary_examples() {
        let tol = Tolerance::default();
        let x2y = form(&[0, 1, 0, 0]);
        for c in components(&x2y, &tol).unwrap() {
            let b = boundary_behavior(&x2y, &c, &tol).unwrap();
            assert_eq!(b.label, BoundaryLabel::SingularAtInfinity);
            assert_eq!(b.witnesses, vec![ProjectiveDirection::Axis(Lift::Plus)]);
            assert!(b.rays.iter().all(|r| r.hessian_degenerate));
        }
        let quartic = form(&[1, 0, 0, 0, 1]);
        let c = &components(&quartic, &tol).unwrap()[0];
        let b = boundary_behavior(&quartic, c, &tol).unwrap();
        assert_eq!(b.label, BoundaryLabel::Regular);
        assert!(b.witnesses.is_empty());
        // three simple lines: dh never vanishes on a boundary ray
        let h = form(&[1, 0, -3, 0]);
        for c in components(&h, &tol).unwrap() {
            assert_eq!(
                boundary_behavior(&h, &c, &tol).unwrap().label,
                BoundaryLabel::Regular
            );
        }
    }

    #[test]
    fn tangent_cone_example() {
        let tol = Tolerance::default();
        let x2y = form(&[0, 1, 0, 0]);
        let comps = components(&x2y, &tol).unwrap();
        let c = comps
            .iter()
            .find(|c| c.direction.approx_vector()[0] > 0.0)
            .unwrap();
        let iv = tangent_cone_intersection(&x2y, c, &pt(1, 1)).unwrap();
        assert_eq!(iv.direction, pt(-1, 2));
        assert_eq!(
            iv.lo,
            ConeBound::Finite {
                approx: -0.5,
                exact: Some(q(-1, 2))
            }
        );
        assert_eq!(
            iv.hi,
            ConeBound::Finite {
                approx: 1.0,
                exact: Some(q(1, 1))
            }
        );
        assert!(iv.contains_zero());
    }
}
