//! Real factorization, the monomial normal form `x^(τ-k) y^k`, and the
//! decision procedure for special homogeneous curves.
//!
//! A form is special exactly when it is a product of powers of two
//! distinct real lines that can be scaled to `+x^(τ-k) y^k`. The lines
//! come from the roots of `h(1, t)` plus the line `x = 0` for the degree
//! drop, so everything reduces to univariate root finding.

use std::fmt;

use nalgebra::Complex;
use num_traits::{One, Signed, Zero};

use crate::centroaffine::{boundary_behavior, BoundaryLabel};
use crate::error::{Error, Result};
use crate::hyperbolicity::{circle_sign_data, is_hyperbolic_point};
use crate::poly::{BinaryForm, Chart, LinearMap, UnivariatePoly};
use crate::realroots::approx::{complex_roots, root_clusters};
use crate::realroots::{square_free_decomposition, RootBackend};
use crate::scalar::{
    bezout, rational_nth_root, rational_sqrt, rational_to_f64, QuadSurd, Rational, Scalar,
    Tolerance, Value,
};
use crate::symmetry::{group_structure, GroupStructure};

type Complex64 = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Linear,
    IrreducibleQuadratic,
}

/// An irrational root of a rational polynomial of degree three or more.
#[derive(Clone, Debug)]
pub struct AlgebraicRoot {
    pub lo: Rational,
    pub hi: Rational,
    /// Square-free polynomial with exactly one root in `(lo, hi)`.
    pub carrier: Vec<Rational>,
    pub approx: f64,
}

/// A real irreducible factor of `h` with its multiplicity.
#[derive(Clone, Debug)]
pub struct RealFactor {
    pub kind: FactorKind,
    pub multiplicity: u32,
    /// Coefficients of `x^(d-j) y^j`, `d` being the factor's degree.
    pub coeffs: Vec<Value>,
    /// Set when a linear factor `y - t x` has `t` of degree three or more;
    /// `coeffs` then holds approximations.
    pub algebraic: Option<AlgebraicRoot>,
}

impl RealFactor {
    fn x_line(multiplicity: u32) -> Self {
        RealFactor {
            kind: FactorKind::Linear,
            multiplicity,
            coeffs: vec![
                Value::Rational(Rational::one()),
                Value::Rational(Rational::zero()),
            ],
            algebraic: None,
        }
    }

    /// `y - t x`.
    fn line(t: Value, multiplicity: u32) -> Self {
        let neg = match t {
            Value::Rational(r) => Value::Rational(-r),
            Value::Surd(s) => Value::Surd(-s),
            Value::Float(f) => Value::Float(-f),
        };
        RealFactor {
            kind: FactorKind::Linear,
            multiplicity,
            coeffs: vec![neg, Value::Rational(Rational::one())],
            algebraic: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_f64(&self) -> BinaryForm<f64> {
        BinaryForm::new(self.coeffs.iter().map(Value::to_f64).collect())
    }

    fn to_surd(&self) -> Option<BinaryForm<QuadSurd>> {
        self.coeffs
            .iter()
            .map(|c| match c {
                Value::Rational(r) => Some(QuadSurd::rational(r.clone())),
                Value::Surd(s) => Some(s.clone()),
                Value::Float(_) => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(BinaryForm::new)
    }
}

impl fmt::Display for RealFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match self.to_surd() {
            Some(form) => form.to_string(),
            None => self.to_f64().to_string(),
        };
        if self.multiplicity > 1 && (body == "x" || body == "y") {
            write!(f, "{body}^{}", self.multiplicity)
        } else if self.multiplicity > 1 {
            write!(f, "({body})^{}", self.multiplicity)
        } else {
            write!(f, "{body}")
        }
    }
}

/// `h = constant · Π factor^multiplicity`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub constant: Value,
    pub factors: Vec<RealFactor>,
}

impl Factorization {
    /// The product in floating point.
    pub fn expand_f64(&self) -> BinaryForm<f64> {
        self.factors
            .iter()
            .fold(BinaryForm::new(vec![self.constant.to_f64()]), |acc, f| {
                acc.mul(&f.to_f64().pow(f.multiplicity as usize))
            })
    }

    /// The exact product, when every factor is exact over one common
    /// quadratic field.
    pub fn expand_exact(&self) -> Option<BinaryForm<QuadSurd>> {
        let constant = match &self.constant {
            Value::Rational(r) => QuadSurd::rational(r.clone()),
            Value::Surd(s) => s.clone(),
            Value::Float(_) => return None,
        };
        let forms = self
            .factors
            .iter()
            .map(|f| f.to_surd())
            .collect::<Option<Vec<_>>>()?;
        let all: Vec<&QuadSurd> = forms.iter().flat_map(|f| f.coeffs()).collect();
        if all.iter().any(|a| all.iter().any(|b| !a.same_field(b))) {
            return None;
        }
        Some(
            self.factors
                .iter()
                .zip(&forms)
                .fold(BinaryForm::new(vec![constant]), |acc, (f, form)| {
                    acc.mul(&form.pow(f.multiplicity as usize))
                }),
        )
    }
}

/// A normalizing map `A` with `h ∘ A = x^(τ-k) y^k`.
#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    Rational(LinearMap<Rational>),
    /// Entries in one real quadratic field.
    Quadratic(LinearMap<QuadSurd>),
    Approx(LinearMap<f64>),
}

impl Transform {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Transform::Approx(_))
    }

    pub fn to_f64(&self) -> LinearMap<f64> {
        match self {
            Transform::Rational(a) => a.to_f64(),
            Transform::Quadratic(a) => a.to_f64(),
            Transform::Approx(a) => a.clone(),
        }
    }

    pub fn entries(&self) -> [[Value; 2]; 2] {
        let v = |i: usize, j: usize| match self {
            Transform::Rational(a) => Value::Rational(a.entry(i, j).clone()),
            Transform::Quadratic(a) => a.entry(i, j).to_value(),
            Transform::Approx(a) => Value::Float(*a.entry(i, j)),
        };
        [[v(0, 0), v(0, 1)], [v(1, 0), v(1, 1)]]
    }

    fn to_surd(&self) -> Option<LinearMap<QuadSurd>> {
        match self {
            Transform::Rational(a) => Some(a.map(|q| QuadSurd::rational(q.clone()))),
            Transform::Quadratic(a) => Some(a.clone()),
            Transform::Approx(_) => None,
        }
    }

    fn from_surd(a: LinearMap<QuadSurd>) -> Transform {
        let e = a.entries();
        if e.iter().flatten().all(QuadSurd::is_rational) {
            Transform::Rational(a.map(|s| s.as_rational().expect("checked rational")))
        } else {
            Transform::Quadratic(a)
        }
    }

    pub fn inverse(&self) -> Result<Transform> {
        Ok(match self {
            Transform::Rational(a) => Transform::Rational(a.inverse()?),
            Transform::Quadratic(a) => Transform::Quadratic(a.inverse()?),
            Transform::Approx(a) => Transform::Approx(a.inverse()?),
        })
    }

    /// `self ∘ other`, exact when both factors share a field.
    pub fn compose(&self, other: &Transform) -> Transform {
        if let (Some(a), Some(b)) = (self.to_surd(), other.to_surd()) {
            let all: Vec<&QuadSurd> = a.entries().iter().chain(b.entries()).flatten().collect();
            if all.iter().all(|x| all.iter().all(|y| x.same_field(y))) {
                return Transform::from_surd(a.compose(&b));
            }
        }
        Transform::Approx(self.to_f64().compose(&other.to_f64()))
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.entries();
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e[0][0], e[0][1], e[1][0], e[1][1]
        )
    }
}

/// `h ∘ transform = witness = x^(τ-k) y^k`.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub tau: usize,
    pub k: usize,
    pub transform: Transform,
    pub witness: BinaryForm<Rational>,
    /// Largest coefficient deviation of the pullback from the witness;
    /// zero for exact transforms.
    pub residual: f64,
}

impl NormalForm {
    /// Whether the pullback was certified in exact arithmetic.
    pub fn is_exact(&self) -> bool {
        self.transform.is_exact()
    }
}

/// Backends that support factorization and normal forms.
pub trait Classifiable: RootBackend {
    fn factor_real(h: &BinaryForm<Self>, tol: &Tolerance) -> Result<Factorization>;

    fn monomial_normal_form(h: &BinaryForm<Self>, tol: &Tolerance) -> Result<Option<NormalForm>>;
}

/// Complete factorization of `h` into real linear and irreducible
/// quadratic factors.
pub fn factor_real<S: Classifiable>(h: &BinaryForm<S>, tol: &Tolerance) -> Result<Factorization> {
    h.ensure_nonzero()?;
    S::factor_real(h, tol)
}

/// The normal form `x^(τ-k) y^k` of `h`, if `h` is equivalent to one.
pub fn monomial_normal_form<S: Classifiable>(
    h: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<Option<NormalForm>> {
    h.ensure_nonzero()?;
    S::monomial_normal_form(h, tol)
}

/// Slope data of a line: `x = 0`, or `y - t x = 0`.
#[derive(Clone, Debug)]
enum Slope<T> {
    XAxis,
    Of(T),
}

/// Splits the `h > 0` scaling problem `α^m1 β^m2 = target` into a
/// Bezout exponent pair. Returns `(g, u, v)` with `u m1 + v m2 = g`.
fn scaling_exponents(m1: u32, m2: u32) -> (u32, i64, i64) {
    let (g, u, v) = bezout(m1 as i64, m2 as i64);
    (g as u32, u, v)
}

fn powi<S: Scalar>(x: &S, e: i64) -> S {
    let p = x.pow(e.unsigned_abs() as usize);
    if e < 0 {
        S::one() / p
    } else {
        p
    }
}

/// Rows of `M` for the lines `L1, L2` as `a x + b y`.
fn line_rows<T: Scalar>(lines: &[(Slope<T>, u32); 2]) -> LinearMap<T> {
    let row = |s: &Slope<T>| match s {
        Slope::XAxis => [T::one(), T::zero()],
        Slope::Of(t) => [-t.clone(), T::one()],
    };
    LinearMap::new([row(&lines[0].0), row(&lines[1].0)])
}

/// Sorts two lines by multiplicity, larger first, keeping `x = 0` first
/// on ties.
fn order_lines<T>(mut lines: Vec<(Slope<T>, u32)>) -> [(Slope<T>, u32); 2] {
    lines.sort_by(|a, b| b.1.cmp(&a.1));
    let [a, b]: [(Slope<T>, u32); 2] = lines.try_into().ok().expect("two lines");
    [a, b]
}

/// Largest coefficient deviation of `h ∘ a` from the monomial, and the
/// same normalized by the natural rounding scale of the computation.
fn float_residual(
    h: &BinaryForm<f64>,
    a: &LinearMap<f64>,
    witness: &BinaryForm<f64>,
) -> Result<(f64, f64)> {
    let pulled = h.pullback(a)?;
    let mags = h.map(|c| c.abs()).pullback(&a.map(|c| c.abs()))?;
    let mut abs = 0.0f64;
    let mut rel = 0.0f64;
    for ((p, w), m) in pulled
        .coeffs()
        .iter()
        .zip(witness.coeffs())
        .zip(mags.coeffs())
    {
        let d = (p - w).abs();
        abs = abs.max(d);
        rel = rel.max(d / m.max(1.0));
    }
    Ok((abs, rel))
}

fn float_scaling(target: f64, m1: u32, m2: u32) -> Option<(f64, f64)> {
    let (g, u, v) = scaling_exponents(m1, m2);
    if target < 0.0 && g % 2 == 0 {
        return None;
    }
    let e = target.signum() * target.abs().powf(1.0 / g as f64);
    Some((e.powi(u as i32), e.powi(v as i32)))
}

/// Exact lines of a rational form: `None` when some factor is not a real
/// line over a quadratic field.
fn exact_lines(
    h: &BinaryForm<Rational>,
) -> Result<Option<(Rational, Vec<(Slope<QuadSurd>, u32)>)>> {
    let p = h.dehomogenize(Chart::X);
    let mx = h.dropped_line_multiplicity(Chart::X) as u32;
    let dec = square_free_decomposition(&p)?;
    let mut lines = Vec::new();
    if mx > 0 {
        lines.push((Slope::XAxis, mx));
    }
    for (q, m) in &dec.factors {
        let c = q.coeffs();
        match q.degree() {
            Some(1) => lines.push((Slope::Of(QuadSurd::rational(-c[0].clone() / &c[1])), *m)),
            Some(2) => {
                // monic t^2 + b t + c0
                let (c0, b) = (&c[0], &c[1]);
                let disc = b * b - Rational::from_i64(4) * c0;
                if disc.is_negative() {
                    return Ok(None);
                }
                let half = Rational::new(1.into(), 2.into());
                let mid = -b.clone() * &half;
                let root = QuadSurd::new(Rational::zero(), half, disc);
                let mid = QuadSurd::rational(mid);
                lines.push((Slope::Of(mid.clone() - root.clone()), *m));
                lines.push((Slope::Of(mid + root), *m));
            }
            _ => return Ok(None),
        }
    }
    Ok(Some((dec.constant, lines)))
}

impl Classifiable for Rational {
    fn factor_real(h: &BinaryForm<Rational>, _tol: &Tolerance) -> Result<Factorization> {
        let p = h.dehomogenize(Chart::X);
        let mx = h.dropped_line_multiplicity(Chart::X) as u32;
        let dec = square_free_decomposition(&p)?;
        let mut factors = Vec::new();
        if mx > 0 {
            factors.push(RealFactor::x_line(mx));
        }
        for (q, m) in &dec.factors {
            let c = q.coeffs();
            match q.degree() {
                Some(1) => {
                    factors.push(RealFactor::line(Value::Rational(-c[0].clone() / &c[1]), *m))
                }
                Some(2) => {
                    let (c0, b) = (&c[0], &c[1]);
                    let disc = b * b - Rational::from_i64(4) * c0;
                    if disc.is_negative() {
                        factors.push(RealFactor {
                            kind: FactorKind::IrreducibleQuadratic,
                            multiplicity: *m,
                            coeffs: vec![
                                Value::Rational(c0.clone()),
                                Value::Rational(b.clone()),
                                Value::Rational(Rational::one()),
                            ],
                            algebraic: None,
                        });
                        continue;
                    }
                    let half = Rational::new(1.into(), 2.into());
                    let mid = QuadSurd::rational(-b.clone() * &half);
                    let root = QuadSurd::new(Rational::zero(), half, disc);
                    for t in [mid.clone() - root.clone(), mid + root] {
                        factors.push(RealFactor::line(t.to_value(), *m));
                    }
                }
                _ => {
                    let real =
                        Rational::joint_roots(std::slice::from_ref(q), &Tolerance::default())?;
                    for r in &real.roots {
                        match &r.interval.exact_point {
                            Some(t) => {
                                factors.push(RealFactor::line(Value::Rational(t.clone()), *m))
                            }
                            None => {
                                let mut f = RealFactor::line(Value::Float(r.approx), *m);
                                f.algebraic = Some(AlgebraicRoot {
                                    lo: r.interval.lo.clone(),
                                    hi: r.interval.hi.clone(),
                                    carrier: q.coeffs().to_vec(),
                                    approx: r.approx,
                                });
                                factors.push(f);
                            }
                        }
                    }
                    let n_complex = q.degree().unwrap_or(0) - real.len();
                    let qf = q.to_f64();
                    let mut zs: Vec<_> = complex_roots(&qf)?
                        .into_iter()
                        .map(|z| polish_simple_root(&qf, z))
                        .collect();
                    zs.sort_by(|a, b| b.im.abs().total_cmp(&a.im.abs()));
                    for z in zs.into_iter().take(n_complex).filter(|z| z.im > 0.0) {
                        factors.push(RealFactor {
                            kind: FactorKind::IrreducibleQuadratic,
                            multiplicity: *m,
                            coeffs: vec![
                                Value::Float(z.norm_sqr()),
                                Value::Float(-2.0 * z.re),
                                Value::Rational(Rational::one()),
                            ],
                            algebraic: None,
                        });
                    }
                }
            }
        }
        Ok(Factorization {
            constant: Value::Rational(dec.constant),
            factors,
        })
    }

    fn monomial_normal_form(
        h: &BinaryForm<Rational>,
        _tol: &Tolerance,
    ) -> Result<Option<NormalForm>> {
        let tau = h.degree();
        let Some((c, lines)) = exact_lines(h)? else {
            return Ok(None);
        };
        if lines.len() != 2 {
            return Ok(None);
        }
        let lines = order_lines(lines);
        let (m1, m2) = (lines[0].1, lines[1].1);
        let k = m2 as usize;
        let witness = BinaryForm::<Rational>::monomial(tau, k);
        let target = Rational::one() / &c;
        let (g, u, v) = scaling_exponents(m1, m2);
        if target.is_negative() && g % 2 == 0 {
            return Ok(None);
        }
        let m = line_rows(&lines);
        let field_of_lines: Vec<QuadSurd> = m.entries().iter().flatten().cloned().collect();
        let in_field = |e: &QuadSurd| field_of_lines.iter().all(|x| x.same_field(e));
        let exact_e = rational_nth_root(&target, g)
            .map(QuadSurd::rational)
            .or_else(|| {
                if g % 2 != 0 {
                    return None;
                }
                let s = rational_nth_root(&target, g / 2)?;
                let e = match rational_sqrt(&s) {
                    Some(r) => QuadSurd::rational(r),
                    None => QuadSurd::sqrt_of(s),
                };
                in_field(&e).then_some(e)
            });
        if let Some(e) = exact_e {
            let scale = LinearMap::diag(powi(&e, u), powi(&e, v));
            let a = m.inverse()?.compose(&scale);
            let lifted = h.lift(|q| QuadSurd::rational(q.clone()));
            let pulled = lifted.pullback(&a)?;
            if pulled != witness.lift(|q| QuadSurd::rational(q.clone())) {
                return Err(Error::NotASymmetry);
            }
            return Ok(Some(NormalForm {
                tau,
                k,
                transform: Transform::from_surd(a),
                witness,
                residual: 0.0,
            }));
        }
        let (alpha, beta) =
            float_scaling(rational_to_f64(&target), m1, m2).expect("sign checked above");
        let a = m.to_f64().inverse()?.compose(&LinearMap::diag(alpha, beta));
        let (abs, rel) = float_residual(&h.to_f64(), &a, &witness.to_f64())?;
        if rel > 1e-12 {
            return Ok(None);
        }
        Ok(Some(NormalForm {
            tau,
            k,
            transform: Transform::Approx(a),
            witness,
            residual: abs,
        }))
    }
}

/// A few Newton steps on a simple complex root of a real polynomial.
fn polish_simple_root(p: &UnivariatePoly<f64>, z0: Complex64) -> Complex64 {
    let c = p.coeffs();
    let mut z = z0;
    for _ in 0..8 {
        let (mut v, mut dv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for a in c.iter().rev() {
            dv = dv * z + v;
            v = v * z + *a;
        }
        if dv.norm() == 0.0 {
            break;
        }
        let next = z - v / dv;
        if !(next.re.is_finite() && next.im.is_finite()) {
            break;
        }
        z = next;
    }
    if (z - z0).norm() <= 1e-6 * z0.norm().max(1.0) {
        z
    } else {
        z0
    }
}

/// Newton polish of an `m`-fold root on the `(m-1)`-th derivative, where
/// it is simple.
fn polish_multiple_root(p: &UnivariatePoly<f64>, x0: f64, m: u32, radius: f64) -> f64 {
    let mut d = p.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    let dd = d.derivative();
    let mut x = x0;
    for _ in 0..50 {
        let slope = dd.eval(&x);
        if slope == 0.0 {
            break;
        }
        let step = d.eval(&x) / slope;
        x -= step;
        if step.abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    if x.is_finite() && (x - x0).abs() <= radius.max(f64::EPSILON) * x0.abs().max(1.0) {
        x
    } else {
        x0
    }
}

/// Real lines of a float form: `None` if a complex root is present.
fn float_lines(
    h: &BinaryForm<f64>,
    tol: &Tolerance,
) -> Result<(f64, Vec<(Slope<f64>, u32)>, bool)> {
    let tau = h.degree();
    let p = h.dehomogenize(Chart::X).trimmed(tol.epsilon);
    let deg = p.degree().ok_or(Error::ZeroForm)?;
    let mut lines = Vec::new();
    if deg < tau {
        lines.push((Slope::XAxis, (tau - deg) as u32));
    }
    let mut all_real = true;
    if deg > 0 {
        for c in root_clusters(&p, tol)? {
            if c.is_real(tol) {
                let t = polish_multiple_root(&p, c.center.re, c.multiplicity, tol.cluster_radius());
                lines.push((Slope::Of(t), c.multiplicity));
            } else {
                all_real = false;
            }
        }
    }
    Ok((p.leading(), lines, all_real))
}

impl Classifiable for f64 {
    fn factor_real(h: &BinaryForm<f64>, tol: &Tolerance) -> Result<Factorization> {
        let tau = h.degree();
        let p = h.dehomogenize(Chart::X).trimmed(tol.epsilon);
        let deg = p.degree().ok_or(Error::ZeroForm)?;
        let mut factors = Vec::new();
        if deg < tau {
            factors.push(RealFactor::x_line((tau - deg) as u32));
        }
        if deg > 0 {
            let mut clusters = root_clusters(&p, tol)?;
            clusters.sort_by(|a, b| a.center.re.total_cmp(&b.center.re));
            for c in clusters {
                if c.is_real(tol) {
                    let t =
                        polish_multiple_root(&p, c.center.re, c.multiplicity, tol.cluster_radius());
                    factors.push(RealFactor::line(Value::Float(t), c.multiplicity));
                } else if c.center.im > 0.0 {
                    factors.push(RealFactor {
                        kind: FactorKind::IrreducibleQuadratic,
                        multiplicity: c.multiplicity,
                        coeffs: vec![
                            Value::Float(c.center.norm_sqr()),
                            Value::Float(-2.0 * c.center.re),
                            Value::Float(1.0),
                        ],
                        algebraic: None,
                    });
                }
            }
        }
        Ok(Factorization {
            constant: Value::Float(p.leading()),
            factors,
        })
    }

    fn monomial_normal_form(h: &BinaryForm<f64>, tol: &Tolerance) -> Result<Option<NormalForm>> {
        let tau = h.degree();
        let (c, lines, all_real) = float_lines(h, tol)?;
        if !all_real || lines.len() != 2 {
            return Ok(None);
        }
        let lines = order_lines(lines);
        let (m1, m2) = (lines[0].1, lines[1].1);
        let k = m2 as usize;
        let witness = BinaryForm::<Rational>::monomial(tau, k);
        let Some((alpha, beta)) = float_scaling(1.0 / c, m1, m2) else {
            return Ok(None);
        };
        let a = line_rows(&lines)
            .inverse()?
            .compose(&LinearMap::diag(alpha, beta));
        let (abs, rel) = float_residual(h, &a, &witness.to_f64())?;
        if rel > WITNESS_TOLERANCE {
            return Ok(None);
        }
        Ok(Some(NormalForm {
            tau,
            k,
            transform: Transform::Approx(a),
            witness,
            residual: abs,
        }))
    }
}

/// Per-coefficient tolerance for float normal forms.
pub const WITNESS_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Special,
    HyperbolicNotSpecial,
    NotHyperbolic,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Special => "special",
            Verdict::HyperbolicNotSpecial => "hyperbolic-but-not-special",
            Verdict::NotHyperbolic => "not-hyperbolic",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub tau: usize,
    pub k: Option<usize>,
    pub normal_form: Option<NormalForm>,
    /// For special forms, 2 or 4 by the parity of `τ` and `k`; otherwise
    /// the number of components of `{h = 1}`.
    pub component_count: usize,
    /// Components found by the circle analysis of `h` itself.
    pub measured_components: usize,
    pub hyperbolic_components: usize,
    pub group: Option<GroupStructure>,
    pub singular_at_infinity: Option<bool>,
    /// A direction with `h > 0` and `det ∂²h < 0`, checked pointwise.
    pub hyperbolic_witness: Option<[Value; 2]>,
    pub diagnostics: Vec<String>,
}

/// Number of components of `{x^(τ-k) y^k = 1}`.
pub fn parity_component_count(tau: usize, k: usize) -> usize {
    if tau.is_multiple_of(2) && k.is_multiple_of(2) {
        4
    } else {
        2
    }
}

/// Whether every hyperbolic component of `x^(τ-k) y^k = 1` is singular at
/// infinity. The property is invariant under linear equivalence, so it is
/// evaluated on the normal form.
fn monomial_singular_at_infinity(tau: usize, k: usize, tol: &Tolerance) -> Result<bool> {
    let m = BinaryForm::<Rational>::monomial(tau, k);
    let comps = circle_sign_data(&m, tol)?.hyperbolic_components();
    for c in &comps {
        if boundary_behavior(&m, c, tol)?.label != BoundaryLabel::SingularAtInfinity {
            return Ok(false);
        }
    }
    Ok(!comps.is_empty())
}

/// Decides whether `{h = 1}` carries special homogeneous curves, and
/// describes them.
pub fn is_special_homogeneous_curve<S: Classifiable>(
    h: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<ClassificationResult> {
    h.ensure_nonzero()?;
    let tau = h.degree();
    if tau < 3 {
        return Err(Error::DegreeTooLow {
            required: 3,
            found: tau,
        });
    }
    let data = circle_sign_data(h, tol)?;
    let measured = data.positive_arcs().len();
    let hyperbolic = data.hyperbolic_components();
    let mut diagnostics = Vec::new();
    let mut result = ClassificationResult {
        verdict: Verdict::NotHyperbolic,
        tau,
        k: None,
        normal_form: None,
        component_count: measured,
        measured_components: measured,
        hyperbolic_components: hyperbolic.len(),
        group: None,
        singular_at_infinity: None,
        hyperbolic_witness: None,
        diagnostics: Vec::new(),
    };
    if let Some(nf) = monomial_normal_form(h, tol)? {
        let k = nf.k;
        let rule = parity_component_count(tau, k);
        if measured != rule {
            diagnostics.push(format!(
                "circle analysis found {measured} components, the normal form has {rule}"
            ));
        }
        result.verdict = Verdict::Special;
        result.k = Some(k);
        result.component_count = rule;
        result.group = Some(group_structure(tau, k)?);
        result.singular_at_infinity = Some(monomial_singular_at_infinity(tau, k, tol)?);
        result.normal_form = Some(nf);
    } else if let Some(c) = hyperbolic.first() {
        let v = c.direction.vector().expect("gap samples are exact");
        if is_hyperbolic_point(h, &v)? {
            result.verdict = Verdict::HyperbolicNotSpecial;
            result.hyperbolic_witness = Some([v[0].to_value(), v[1].to_value()]);
        } else {
            diagnostics.push("hyperbolic arc sample failed the pointwise check".into());
        }
    }
    result.diagnostics = diagnostics;
    Ok(result)
}

/// The `⌊τ/2⌋` special forms `x^(τ-k) y^k` of degree `τ`, classified.
pub fn enumerate(tau: usize) -> Result<Vec<ClassificationResult>> {
    if tau < 3 {
        return Err(Error::DegreeTooLow {
            required: 3,
            found: tau,
        });
    }
    let tol = Tolerance::default();
    (1..=tau / 2)
        .map(|k| is_special_homogeneous_curve(&BinaryForm::<Rational>::monomial(tau, k), &tol))
        .collect()
}

/// A map `A` with `h1 ∘ A = h2`, when both forms are special with the
/// same `k`; `None` when their `k` differ.
pub fn equivalent<S: Classifiable>(
    h1: &BinaryForm<S>,
    h2: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<Option<Transform>> {
    let (Some(n1), Some(n2)) = (
        monomial_normal_form(h1, tol)?,
        monomial_normal_form(h2, tol)?,
    ) else {
        return Err(Error::OutsideClassifiedFamily);
    };
    if n1.tau != n2.tau || n1.k != n2.k {
        return Ok(None);
    }
    Ok(Some(n1.transform.compose(&n2.transform.inverse()?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn form(c: &[i64]) -> BinaryForm<Q> {
        BinaryForm::from_ints(c)
    }

    fn h1() -> BinaryForm<Q> {
        BinaryForm::new(vec![q(1, 1), q(0, 1), q(-1, 1), q(0, 1), q(1, 4)])
    }

    fn h2() -> BinaryForm<f64> {
        BinaryForm::new(vec![1.0, 0.0, -1.0, 0.5443310539518174, -1.0 / 12.0])
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn surd_form(h: &BinaryForm<Q>) -> BinaryForm<QuadSurd> {
        h.lift(|c| QuadSurd::rational(c.clone()))
    }

    #[test]
    fn factor_examples() {
        let f = factor_real(&form(&[0, 1, 0, 0]), &tol()).unwrap();
        assert_eq!(f.constant, Value::Rational(q(1, 1)));
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.factors[0].multiplicity, 2);
        assert_eq!(f.expand_exact().unwrap(), surd_form(&form(&[0, 1, 0, 0])));

        let f = factor_real(&h1(), &tol()).unwrap();
        assert_eq!(f.constant, Value::Rational(q(1, 4)));
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|f| f.multiplicity == 2));
        assert_eq!(f.expand_exact().unwrap(), surd_form(&h1()));

        let h = form(&[1, 0, -3, 0]);
        let f = factor_real(&h, &tol()).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand_exact().unwrap(), surd_form(&h));
    }

    #[test]
    fn factor_with_complex_and_cubic_irrational_parts() {
        // (y^2 + x^2)(y^3 - 2x^3)
        let h = form(&[1, 0, 1, 0, 0, 0]).mul(&form(&[-2, 0, 0, 1]));
        let f = factor_real(&h, &tol()).unwrap();
        assert!(f
            .factors
            .iter()
            .any(|f| f.kind == FactorKind::IrreducibleQuadratic));
        let cubic_root = f.factors.iter().find(|f| f.algebraic.is_some()).unwrap();
        assert!((cubic_root.algebraic.as_ref().unwrap().approx - 2f64.cbrt()).abs() < 1e-12);
        assert!(f.expand_exact().is_none());
        assert!(f.expand_f64().approx_eq(&h.to_f64(), 1e-9));
    }

    #[test]
    fn float_factorization_reexpands() {
        let f = factor_real(&h2(), &tol()).unwrap();
        let e = f.expand_f64();
        assert!(e.approx_eq(&h2(), 1e-9), "{e:?}");
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn normal_form_examples() {
        let nf = monomial_normal_form(&form(&[0, 8, 0, 0, 0]), &tol())
            .unwrap()
            .unwrap();
        assert_eq!(nf.k, 1);
        let Transform::Rational(a) = &nf.transform else {
            panic!("rational expected")
        };
        assert_eq!(
            form(&[0, 8, 0, 0, 0]).pullback(a).unwrap(),
            form(&[0, 1, 0, 0, 0])
        );

        let nf = monomial_normal_form(&h1(), &tol()).unwrap().unwrap();
        assert_eq!(nf.k, 2);
        assert!(nf.is_exact());
        assert_eq!(nf.witness, form(&[0, 0, 1, 0, 0]));

        assert!(monomial_normal_form(&form(&[0, 0, -1, 0, 0]), &tol())
            .unwrap()
            .is_none());
        assert!(monomial_normal_form(&form(&[1, 0, -3, 0]), &tol())
            .unwrap()
            .is_none());
        assert!(monomial_normal_form(&form(&[1, 0, 0, 0, 1]), &tol())
            .unwrap()
            .is_none());
    }

    #[test]
    fn irrational_scalings() {
        // 2 x^2 y^2 needs sqrt(1/2)
        let nf = monomial_normal_form(&form(&[0, 0, 2, 0, 0]), &tol())
            .unwrap()
            .unwrap();
        assert!(matches!(nf.transform, Transform::Quadratic(_)));
        // 2 x^3 y^3 needs a cube root
        let h = form(&[0, 0, 0, 2, 0, 0, 0]);
        let nf = monomial_normal_form(&h, &tol()).unwrap().unwrap();
        assert!(matches!(nf.transform, Transform::Approx(_)));
        assert!(nf.residual < 1e-12);
        // -x^3 y^2: the sign is absorbed by x -> -x
        let nf = monomial_normal_form(&form(&[0, 0, -1, 0, 0, 0]), &tol())
            .unwrap()
            .unwrap();
        assert_eq!(nf.k, 2);
        assert!(nf.is_exact());
    }

    #[test]
    fn h2_float_normal_form() {
        let nf = monomial_normal_form(&h2(), &tol()).unwrap().unwrap();
        assert_eq!(nf.k, 1);
        assert!(nf.residual <= 1e-6, "{}", nf.residual);
    }

    #[test]
    fn classification_examples() {
        let r = is_special_homogeneous_curve(&form(&[0, 1, 0, 0]), &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::Special);
        assert_eq!(
            (r.k, r.component_count, r.measured_components),
            (Some(1), 2, 2)
        );
        assert_eq!(r.singular_at_infinity, Some(true));
        assert!(r.diagnostics.is_empty());

        let r = is_special_homogeneous_curve(&h1(), &tol()).unwrap();
        assert_eq!(
            (r.verdict, r.k, r.component_count),
            (Verdict::Special, Some(2), 4)
        );

        let r = is_special_homogeneous_curve(&h2(), &tol()).unwrap();
        assert_eq!(
            (r.verdict, r.k, r.component_count),
            (Verdict::Special, Some(1), 2)
        );
        assert!(r.diagnostics.is_empty(), "{:?}", r.diagnostics);

        let r = is_special_homogeneous_curve(&form(&[1, 0, -3, 0]), &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::HyperbolicNotSpecial);
        let w = r.hyperbolic_witness.unwrap();
        let p = [w[0].to_f64(), w[1].to_f64()];
        assert!(is_hyperbolic_point(&form(&[1, 0, -3, 0]).to_f64(), &p).unwrap());

        let r = is_special_homogeneous_curve(&form(&[1, 0, 0, 0, 1]), &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::NotHyperbolic);
        let r = is_special_homogeneous_curve(&form(&[0, 0, -1, 0, 0]), &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::NotHyperbolic);

        assert!(matches!(
            is_special_homogeneous_curve(&form(&[1, 0, 1]), &tol()),
            Err(Error::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(3).unwrap().len(), 1);
        let four = enumerate(4).unwrap();
        assert_eq!(
            four.iter().map(|r| r.k.unwrap()).collect::<Vec<_>>(),
            vec![1, 2]
        );
        assert_eq!(enumerate(7).unwrap().len(), 3);
        for r in enumerate(6).unwrap() {
            let Transform::Rational(a) = &r.normal_form.unwrap().transform else {
                panic!()
            };
            assert_eq!(a, &LinearMap::identity());
        }
    }

    #[test]
    fn equivalence_examples() {
        let x3y = form(&[0, 1, 0, 0, 0]);
        let a = equivalent(&x3y, &form(&[0, 5, 0, 0, 0]), &tol())
            .unwrap()
            .unwrap();
        let Transform::Rational(a) = a else { panic!() };
        assert_eq!(x3y.pullback(&a).unwrap(), form(&[0, 5, 0, 0, 0]));
        assert!(equivalent(&x3y, &form(&[0, 0, 1, 0, 0]), &tol())
            .unwrap()
            .is_none());
        let a = equivalent(&h1(), &form(&[0, 0, 1, 0, 0]), &tol())
            .unwrap()
            .unwrap();
        let Transform::Quadratic(a) = a else { panic!() };
        assert_eq!(
            surd_form(&h1()).pullback(&a).unwrap(),
            surd_form(&form(&[0, 0, 1, 0, 0]))
        );
        assert!(matches!(
            equivalent(&x3y, &form(&[1, 0, 0, 0, 1]), &tol()),
            Err(Error::OutsideClassifiedFamily)
        ));
    }
}
