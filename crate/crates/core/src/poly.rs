//! Binary forms, univariate polynomials and 2×2 linear maps.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Rational, RealScalar, Scalar, Sign};

/// A homogeneous polynomial `h = Σ f_k x^(τ−k) y^k`, stored densely with
/// `coeffs[k] = f_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<S> {
    coeffs: Vec<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    X,
    Y,
}

/// Dehomogenization charts: `X` gives `p(t) = h(1, t)`, `Y` gives
/// `q(s) = h(s, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    X,
    Y,
}

pub type Point<S> = [S; 2];

impl<S: Scalar> BinaryForm<S> {
    /// Builds a form from `f_0..f_τ`. Panics on an empty vector.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a binary form needs at least one coefficient"
        );
        BinaryForm { coeffs }
    }

    /// Like [`BinaryForm::new`] but rejects non-finite float coefficients.
    pub fn try_new(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self::new(coeffs))
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![S::zero(); degree + 1],
        }
    }

    /// `x^(τ−k) y^k`.
    pub fn monomial(degree: usize, k: usize) -> Self {
        assert!(k <= degree);
        let mut f = Self::zero(degree);
        f.coeffs[k] = S::one();
        f
    }

    /// The linear form `a·x + b·y`.
    pub fn linear(a: S, b: S) -> Self {
        BinaryForm { coeffs: vec![a, b] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rejects the zero form; used by every analysis entry point.
    pub fn ensure_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroForm)
        } else {
            Ok(())
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BinaryForm<T> {
        BinaryForm {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> BinaryForm<f64> {
        self.map(|c| c.to_f64())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|f| f.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![S::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs }
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = BinaryForm::new(vec![S::one()]);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at `(x, y)`, Horner-style in `y` with precomputed powers
    /// of `x`.
    pub fn eval(&self, p: &Point<S>) -> S {
        let [x, y] = p;
        let tau = self.degree();
        let mut xpow = Vec::with_capacity(tau + 1);
        xpow.push(S::one());
        for i in 0..tau {
            xpow.push(xpow[i].clone() * x.clone());
        }
        let mut acc = S::zero();
        for k in (0..=tau).rev() {
            acc = acc * y.clone() + self.coeffs[k].clone() * xpow[tau - k].clone();
        }
        acc
    }

    pub fn partial(&self, var: Variable) -> Result<Self> {
        let tau = self.degree();
        if tau == 0 {
            return Err(Error::DegreeTooLow {
                required: 1,
                found: 0,
            });
        }
        let coeffs = match var {
            Variable::X => (0..tau)
                .map(|k| self.coeffs[k].clone() * S::from_usize(tau - k))
                .collect(),
            Variable::Y => (0..tau)
                .map(|j| self.coeffs[j + 1].clone() * S::from_usize(j + 1))
                .collect(),
        };
        Ok(BinaryForm { coeffs })
    }

    /// Gradient `(∂h/∂x, ∂h/∂y)`.
    pub fn gradient(&self) -> Result<[Self; 2]> {
        Ok([self.partial(Variable::X)?, self.partial(Variable::Y)?])
    }

    /// The symmetric matrix of second partials, entries of degree τ−2.
    pub fn hessian(&self) -> Result<[[Self; 2]; 2]> {
        if self.degree() < 2 {
            return Err(Error::DegreeTooLow {
                required: 2,
                found: self.degree(),
            });
        }
        let [hx, hy] = self.gradient()?;
        let hxx = hx.partial(Variable::X)?;
        let hxy = hx.partial(Variable::Y)?;
        let hyy = hy.partial(Variable::Y)?;
        Ok([[hxx, hxy.clone()], [hxy, hyy]])
    }

    /// `det ∂²h` as a form of degree 2(τ−2).
    pub fn hessian_det(&self) -> Result<Self> {
        let [[hxx, hxy], [_, hyy]] = self.hessian()?;
        Ok(hxx.mul(&hyy).sub(&hxy.mul(&hxy)))
    }

    /// `(A*h)(v) = h(A v)`.
    pub fn pullback(&self, a: &LinearMap<S>) -> Result<Self> {
        if a.det().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(self.substitute(a))
    }

    /// Substitution `h(A v)` without the invertibility check.
    pub(crate) fn substitute(&self, a: &LinearMap<S>) -> Self {
        let [[a11, a12], [a21, a22]] = a.entries().clone();
        let tau = self.degree();
        let first = BinaryForm::linear(a11, a12);
        let second = BinaryForm::linear(a21, a22);
        let mut first_pows = vec![BinaryForm::new(vec![S::one()])];
        let mut second_pows = vec![BinaryForm::new(vec![S::one()])];
        for i in 0..tau {
            first_pows.push(first_pows[i].mul(&first));
            second_pows.push(second_pows[i].mul(&second));
        }
        let mut out = BinaryForm::zero(tau);
        for (k, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let term = first_pows[tau - k].mul(&second_pows[k]).scale(f);
            out = out.add(&term);
        }
        out
    }

    pub fn dehomogenize(&self, chart: Chart) -> UnivariatePoly<S> {
        match chart {
            Chart::X => UnivariatePoly::new(self.coeffs.clone()),
            Chart::Y => UnivariatePoly::new(self.coeffs.iter().rev().cloned().collect()),
        }
    }

    /// Multiplicity of the line dropped by the chart: `x = 0` for the
    /// X-chart, `y = 0` for the Y-chart.
    pub fn dropped_line_multiplicity(&self, chart: Chart) -> usize {
        let tau = self.degree();
        match chart {
            Chart::X => tau - self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0),
            Chart::Y => self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(tau),
        }
    }

    /// Evaluates `∂²h_p(u, v)`.
    pub fn hessian_bilinear(&self, p: &Point<S>, u: &Point<S>, v: &Point<S>) -> Result<S> {
        let h = self.hessian()?;
        let m = [
            [h[0][0].eval(p), h[0][1].eval(p)],
            [h[1][0].eval(p), h[1][1].eval(p)],
        ];
        Ok(
            u[0].clone() * (m[0][0].clone() * v[0].clone() + m[0][1].clone() * v[1].clone())
                + u[1].clone() * (m[1][0].clone() * v[0].clone() + m[1][1].clone() * v[1].clone()),
        )
    }

    /// Evaluates `dh_p(v)`.
    pub fn differential(&self, p: &Point<S>, v: &Point<S>) -> Result<S> {
        let [hx, hy] = self.gradient()?;
        Ok(hx.eval(p) * v[0].clone() + hy.eval(p) * v[1].clone())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// `true` when every coefficient agrees to `eps` (exactly, for exact
    /// backends).
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.degree() == other.degree()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.approx_eq(b, eps))
    }
}

impl BinaryForm<Rational> {
    /// Embeds into another exact field.
    pub fn lift<T: Scalar>(&self, f: impl Fn(&Rational) -> T) -> BinaryForm<T> {
        self.map(f)
    }
}

impl<S: Scalar> fmt::Display for BinaryForm<S>
where
    S: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tau = self.degree();
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if wrote {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            let mut factors = Vec::new();
            if magnitude != "1" || tau == 0 {
                factors.push(if magnitude.contains(['+', ' ']) {
                    format!("({magnitude})")
                } else {
                    magnitude
                });
            }
            for (var, e) in [("x", tau - k), ("y", k)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            f.write_str(&factors.join("*"))?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariatePoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UnivariatePoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `t − r`.
    pub fn linear_root(r: S) -> Self {
        Self::new(vec![-r, S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, t: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_usize(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::constant(S::one()), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![S::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
            }
            // exact cancellation of the leading term
            rem[i + dd] = S::zero();
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn exact_div(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).0
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        self.scale(&(S::one() / lead))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p(t + shift)`.
    pub fn translate(&self, shift: &S) -> Self {
        let base = Self::new(vec![shift.clone(), S::one()]);
        let mut out = Self::zero();
        for c in self.coeffs.iter().rev() {
            out = out.mul(&base).add(&Self::constant(c.clone()));
        }
        out
    }

    pub fn to_f64(&self) -> UnivariatePoly<f64> {
        UnivariatePoly::new(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }
}

impl<S: RealScalar> UnivariatePoly<S> {
    pub fn sign_at(&self, t: &S) -> Sign {
        self.eval(t).sign()
    }
}

impl UnivariatePoly<f64> {
    /// Drops leading coefficients below `eps` relative to the largest one.
    pub fn trimmed(&self, eps: f64) -> Self {
        let scale = self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.abs() <= eps * scale) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }
}

/// An element of the 2×2 matrix algebra acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<S> {
    entries: [[S; 2]; 2],
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(entries: [[S; 2]; 2]) -> Self {
        LinearMap { entries }
    }

    pub fn from_ints(e: [[i64; 2]; 2]) -> Self {
        LinearMap::new(e.map(|row| row.map(S::from_i64)))
    }

    pub fn identity() -> Self {
        Self::diag(S::one(), S::one())
    }

    pub fn diag(a: S, b: S) -> Self {
        LinearMap::new([[a, S::zero()], [S::zero(), b]])
    }

    /// `(x, y) ↦ (y, x)`.
    pub fn swap() -> Self {
        LinearMap::new([[S::zero(), S::one()], [S::one(), S::zero()]])
    }

    pub fn zero() -> Self {
        Self::diag(S::zero(), S::zero())
    }

    pub fn entries(&self) -> &[[S; 2]; 2] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[i][j]
    }

    pub fn det(&self) -> S {
        let [[a, b], [c, d]] = self.entries.clone();
        a * d - b * c
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn apply(&self, v: &Point<S>) -> Point<S> {
        let [[a, b], [c, d]] = self.entries.clone();
        [
            a * v[0].clone() + b * v[1].clone(),
            c * v[0].clone() + d * v[1].clone(),
        ]
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let e = |i: usize, j: usize| {
            self.entries[i][0].clone() * other.entries[0][j].clone()
                + self.entries[i][1].clone() * other.entries[1][j].clone()
        };
        LinearMap::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMap);
        }
        let [[a, b], [c, d]] = self.entries.clone();
        Ok(LinearMap::new([
            [d / det.clone(), -b / det.clone()],
            [-c / det.clone(), a / det],
        ]))
    }

    pub fn scale(&self, c: &S) -> Self {
        LinearMap::new(self.entries.clone().map(|row| row.map(|e| e * c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = |i: usize, j: usize| self.entries[i][j].clone() + other.entries[i][j].clone();
        LinearMap::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LinearMap<T> {
        LinearMap::new([
            [f(&self.entries[0][0]), f(&self.entries[0][1])],
            [f(&self.entries[1][0]), f(&self.entries[1][1])],
        ])
    }

    pub fn to_f64(&self) -> LinearMap<f64> {
        self.map(|e| e.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn x2y() -> BinaryForm<Q> {
        BinaryForm::from_ints(&[0, 1, 0, 0])
    }

    fn h1() -> BinaryForm<Q> {
        BinaryForm::new(vec![q(1, 1), q(0, 1), q(-1, 1), q(0, 1), q(1, 4)])
    }

    fn pt(x: i64, y: i64) -> Point<Q> {
        [Q::from_i64(x), Q::from_i64(y)]
    }

    /// Term-by-term evaluation, independent of the Horner scheme.
    fn eval_terms(h: &BinaryForm<Q>, p: &Point<Q>) -> Q {
        let tau = h.degree();
        h.coeffs()
            .iter()
            .enumerate()
            .map(|(k, f)| f.clone() * Scalar::pow(&p[0], tau - k) * Scalar::pow(&p[1], k))
            .fold(Q::from_i64(0), |a, b| a + b)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(x2y().eval(&pt(1, 1)), q(1, 1));
        assert_eq!(x2y().eval(&pt(2, 3)), q(12, 1));
        assert_eq!(h1().eval(&pt(1, 1)), q(1, 4));
        assert_eq!(eval_terms(&h1(), &pt(1, 1)), q(1, 4));
        let p = [q(-3, 7), q(5, 2)];
        assert_eq!(h1().eval(&p), eval_terms(&h1(), &p));
    }

    #[test]
    fn partials() {
        let h = x2y();
        assert_eq!(
            h.partial(Variable::X).unwrap(),
            BinaryForm::from_ints(&[0, 2, 0])
        );
        assert_eq!(
            h.partial(Variable::Y).unwrap(),
            BinaryForm::from_ints(&[1, 0, 0])
        );
        for tau in 3..8 {
            for k in 1..tau {
                let h = BinaryForm::<Q>::monomial(tau, k);
                let mut expected = BinaryForm::<Q>::monomial(tau - 1, k);
                expected = expected.scale(&Q::from_usize(tau - k));
                assert_eq!(h.partial(Variable::X).unwrap(), expected);
            }
        }
        assert!(BinaryForm::<Q>::from_ints(&[3])
            .partial(Variable::X)
            .is_err());
    }

    #[test]
    fn hessian_examples() {
        let [[hxx, hxy], [hyx, hyy]] = x2y().hessian().unwrap();
        assert_eq!(hxx, BinaryForm::from_ints(&[0, 2]));
        assert_eq!(hxy, BinaryForm::from_ints(&[2, 0]));
        assert_eq!(hyx, hxy);
        assert_eq!(hyy, BinaryForm::from_ints(&[0, 0]));
        let [[hxx, hxy], [_, hyy]] = BinaryForm::<Q>::from_ints(&[1, 0, 0, 0]).hessian().unwrap();
        assert_eq!(hxx, BinaryForm::from_ints(&[6, 0]));
        assert!(hxy.is_zero() && hyy.is_zero());
        assert!(BinaryForm::<Q>::from_ints(&[1, 1]).hessian().is_err());
    }

    #[test]
    fn hessian_det_examples() {
        assert_eq!(
            x2y().hessian_det().unwrap(),
            BinaryForm::from_ints(&[-4, 0, 0])
        );
        let quartic = BinaryForm::<Q>::from_ints(&[1, 0, 0, 0, 1]);
        assert_eq!(
            quartic.hessian_det().unwrap(),
            BinaryForm::from_ints(&[0, 0, 144, 0, 0])
        );
    }

    #[test]
    fn hessian_det_matches_finite_differences() {
        let h = BinaryForm::<f64>::from_ints(&[1, 0, 0, 0, 1]);
        let det = h.hessian_det().unwrap();
        let step = 1e-3;
        for &(x, y) in &[
            (0.3, 0.7),
            (-1.2, 0.4),
            (0.9, -0.9),
            (2.0, 0.1),
            (-0.5, -1.5),
        ] {
            let f = |a: f64, b: f64| h.eval(&[a, b]);
            let fxx = (f(x + step, y) - 2.0 * f(x, y) + f(x - step, y)) / (step * step);
            let fyy = (f(x, y + step) - 2.0 * f(x, y) + f(x, y - step)) / (step * step);
            let fxy = (f(x + step, y + step) - f(x + step, y - step) - f(x - step, y + step)
                + f(x - step, y - step))
                / (4.0 * step * step);
            let fd = fxx * fyy - fxy * fxy;
            let exact = det.eval(&[x, y]);
            assert!(
                (fd - exact).abs() <= 1e-4 * exact.abs().max(1.0),
                "{fd} vs {exact}"
            );
        }
    }

    #[test]
    fn pullback_examples() {
        let h = x2y();
        assert_eq!(
            h.pullback(&LinearMap::swap()).unwrap(),
            BinaryForm::from_ints(&[0, 0, 1, 0])
        );
        let (l, m) = (q(2, 3), q(-5, 1));
        let scaled = h.pullback(&LinearMap::diag(l.clone(), m.clone())).unwrap();
        assert_eq!(scaled, h.scale(&(l.clone() * l * m)));
        let x2y2 = BinaryForm::<Q>::monomial(4, 2);
        let shear = LinearMap::from_ints([[1, 1], [0, 1]]);
        let pulled = x2y2.pullback(&shear).unwrap();
        // (x + y)^2 y^2
        assert_eq!(pulled, BinaryForm::from_ints(&[0, 0, 1, 2, 1]));
        let pts = [
            (1, 2),
            (-3, 1),
            (2, -5),
            (0, 1),
            (4, 4),
            (-1, -2),
            (3, 0),
            (5, -1),
            (-2, 7),
            (1, -1),
        ];
        for (x, y) in pts {
            let p = pt(x, y);
            assert_eq!(pulled.eval(&p), x2y2.eval(&shear.apply(&p)));
        }
        assert_eq!(h.pullback(&LinearMap::zero()), Err(Error::SingularMap));
    }

    #[test]
    fn dehomogenize_examples() {
        let h = x2y();
        assert_eq!(h.dehomogenize(Chart::X), UnivariatePoly::from_ints(&[0, 1]));
        assert_eq!(
            h.dehomogenize(Chart::Y),
            UnivariatePoly::from_ints(&[0, 0, 1])
        );
        assert_eq!(
            h1().dehomogenize(Chart::X),
            UnivariatePoly::new(vec![q(1, 1), q(0, 1), q(-1, 1), q(0, 1), q(1, 4)])
        );
        assert_eq!(h.dropped_line_multiplicity(Chart::X), 2);
        assert_eq!(h.dropped_line_multiplicity(Chart::Y), 1);
    }

    #[test]
    fn univariate_division_and_gcd() {
        let a = UnivariatePoly::<Q>::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = UnivariatePoly::<Q>::from_ints(&[-1, 1]); // t - 1
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, UnivariatePoly::from_ints(&[1, 1]));
        assert!(rem.is_zero());
        let c = UnivariatePoly::<Q>::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&c), UnivariatePoly::from_ints(&[1, 1]));
        assert_eq!(
            UnivariatePoly::<Q>::from_ints(&[0, 0, 1]).translate(&q(1, 1)),
            UnivariatePoly::from_ints(&[1, 2, 1])
        );
    }

    #[test]
    fn display_round_trips_simple_forms() {
        assert_eq!(x2y().to_string(), "x^2*y");
        assert_eq!(h1().to_string(), "x^4 - x^2*y^2 + 1/4*y^4");
        assert_eq!(
            BinaryForm::<Q>::from_ints(&[0, -2, 0, 0]).to_string(),
            "-2*x^2*y"
        );
        assert_eq!(BinaryForm::<Q>::zero(3).to_string(), "0");
    }

    #[test]
    fn linear_map_algebra() {
        let a = LinearMap::<Q>::from_ints([[1, 2], [3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.compose(&inv), LinearMap::identity());
        assert_eq!(a.det(), q(-2, 1));
        assert!(LinearMap::<Q>::from_ints([[1, 2], [2, 4]])
            .inverse()
            .is_err());
    }
}
