//! Coefficient fields.
//!
//! Every form lives entirely in one backend: exact rationals, binary
//! floating point, or (for normalizing maps only) a real quadratic field
//! `Q(sqrt d)`. Generic code is written against [`Scalar`]; ordered
//! backends additionally implement [`RealScalar`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// Arithmetic backend tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_f64(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

/// A field element usable as a coefficient.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Sub<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn from_i64(n: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer) / Self::from_i64(denom)
    }

    fn to_f64(&self) -> f64;

    fn to_value(&self) -> Value;

    /// Exact rational view, when the value is one.
    fn as_rational(&self) -> Option<Rational>;

    fn is_finite(&self) -> bool {
        true
    }

    /// Equality up to `eps` relative to the magnitudes involved. Exact
    /// backends ignore `eps`.
    fn approx_eq(&self, other: &Self, eps: f64) -> bool;

    fn from_usize(n: usize) -> Self {
        Self::from_i64(n as i64)
    }

    fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Ordered scalars with an exactly decidable (or, for floats, literal) sign.
pub trait RealScalar: Scalar + PartialOrd {
    fn sign(&self) -> Sign;

    fn magnitude(&self) -> Self {
        if self.sign() == Sign::Negative {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()) / Self::from_i64(2)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_value(&self) -> Value {
        Value::Rational(self.clone())
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn approx_eq(&self, other: &Self, _eps: f64) -> bool {
        self == other
    }
}

impl RealScalar for Rational {
    fn sign(&self) -> Sign {
        match self.numer().sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_value(&self) -> Value {
        Value::Float(*self)
    }

    fn as_rational(&self) -> Option<Rational> {
        None
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        let scale = 1.0f64.max(f64::abs(*self)).max(f64::abs(*other));
        f64::abs(self - other) <= eps * scale
    }
}

impl RealScalar for f64 {
    fn sign(&self) -> Sign {
        Sign::of_f64(*self)
    }
}

/// Converts without overflowing for huge numerators and denominators.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both to about 60 significant bits.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (q.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

/// Best-effort exact conversion of a finite float into a rational.
pub fn f64_to_rational(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Integer `n`-th root of a non-negative rational, when it is exact.
pub fn rational_nth_root(q: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if q.is_negative() {
        if n.is_multiple_of(2) {
            return None;
        }
        return rational_nth_root(&-q.clone(), n).map(|r| -r);
    }
    let numer = exact_int_root(q.numer(), n)?;
    let denom = exact_int_root(q.denom(), n)?;
    Some(Rational::new(numer, denom))
}

fn exact_int_root(v: &BigInt, n: u32) -> Option<BigInt> {
    let r = v.nth_root(n);
    (num_traits::Pow::pow(&r, n) == *v).then_some(r)
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    rational_nth_root(q, 2)
}

/// Element `a + b·sqrt(d)` of a real quadratic field.
///
/// `d` is a positive rational that is not a square. Values with `b = 0`
/// are ordinary rationals and combine with any field; mixing two different
/// radicands is an invariant violation and panics.
#[derive(Clone, Debug)]
pub struct QuadSurd {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl QuadSurd {
    pub fn rational(a: Rational) -> Self {
        QuadSurd {
            a,
            b: Rational::zero(),
            d: Rational::zero(),
        }
    }

    /// `a + b·sqrt(d)`; collapses to a rational when `d` is a square. The
    /// radicand is stored as an integer with small square factors removed.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(d.is_positive() || b.is_zero(), "radicand must be positive");
        if b.is_zero() {
            return QuadSurd::rational(a);
        }
        if let Some(root) = rational_sqrt(&d) {
            return QuadSurd::rational(a + b * root);
        }
        // sqrt(n/m) = sqrt(n m) / m
        let mut n = d.numer() * d.denom();
        let mut b = b / Rational::from_integer(d.denom().clone());
        let mut p = BigInt::from(2);
        while &p * &p <= n && p < BigInt::from(1000) {
            let sq = &p * &p;
            while (&n % &sq).is_zero() {
                n /= &sq;
                b *= Rational::from_integer(p.clone());
            }
            p += 1;
        }
        QuadSurd {
            a,
            b,
            d: Rational::from_integer(n),
        }
    }

    pub fn sqrt_of(d: Rational) -> Self {
        QuadSurd::new(Rational::zero(), Rational::one(), d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn radicand(&self) -> Option<&Rational> {
        (!self.b.is_zero()).then_some(&self.d)
    }

    /// Whether both values lie in a common quadratic field.
    pub fn same_field(&self, other: &Self) -> bool {
        match (self.radicand(), other.radicand()) {
            (Some(d1), Some(d2)) => d1 == d2 || rational_sqrt(&(d2 / d1)).is_some(),
            _ => true,
        }
    }

    /// Rewrites `other` over this value's radicand.
    fn aligned(&self, other: Self) -> (Rational, Self) {
        match (self.radicand(), other.radicand()) {
            (Some(d1), Some(d2)) if d1 != d2 => {
                let r = rational_sqrt(&(d2 / d1)).expect("mixed quadratic fields");
                let d = d1.clone();
                let b = other.b * r;
                (d.clone(), QuadSurd { a: other.a, b, d })
            }
            (Some(d), _) | (None, Some(d)) => (d.clone(), other),
            (None, None) => (Rational::zero(), other),
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadSurd {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Exact sign.
    pub fn sign(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Sign::Zero {
            return sa;
        }
        if sa == Sign::Zero || sa == sb {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Sign::Zero,
        }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let magnitude = self.b.abs();
        let root = if magnitude.is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{magnitude}*sqrt({})", self.d)
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{root}"),
            (true, true) => write!(f, "-{root}"),
            (false, false) => write!(f, "{} + {root}", self.a),
            (false, true) => write!(f, "{} - {root}", self.a),
        }
    }
}

impl PartialEq for QuadSurd {
    fn eq(&self, other: &Self) -> bool {
        if !self.same_field(other) {
            return false;
        }
        let (_, other) = self.aligned(other.clone());
        self.a == other.a && self.b == other.b
    }
}

impl Add for QuadSurd {
    type Output = QuadSurd;
    fn add(self, rhs: QuadSurd) -> QuadSurd {
        let (d, rhs) = self.aligned(rhs);
        QuadSurd {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            d,
        }
    }
}

impl Sub for QuadSurd {
    type Output = QuadSurd;
    fn sub(self, rhs: QuadSurd) -> QuadSurd {
        self + (-rhs)
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for QuadSurd {
    type Output = QuadSurd;
    fn mul(self, rhs: QuadSurd) -> QuadSurd {
        let (d, rhs) = self.aligned(rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadSurd { a, b, d }
    }
}

impl Div for QuadSurd {
    type Output = QuadSurd;
    fn div(self, rhs: QuadSurd) -> QuadSurd {
        let (d, rhs) = self.aligned(rhs);
        let norm = &rhs.a * &rhs.a - &rhs.b * &rhs.b * &d;
        assert!(!norm.is_zero(), "division by zero in quadratic field");
        let num = self * rhs.conjugate();
        QuadSurd {
            a: num.a / &norm,
            b: num.b / &norm,
            d: num.d,
        }
    }
}

impl Zero for QuadSurd {
    fn zero() -> Self {
        QuadSurd::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadSurd {
    fn one() -> Self {
        QuadSurd::rational(Rational::one())
    }
}

impl Scalar for QuadSurd {
    const BACKEND: Backend = Backend::Exact;

    fn from_i64(n: i64) -> Self {
        QuadSurd::rational(Rational::from_i64(n))
    }

    fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            return rational_to_f64(&self.a);
        }
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * rational_to_f64(&self.d).sqrt()
    }

    fn to_value(&self) -> Value {
        if self.b.is_zero() {
            Value::Rational(self.a.clone())
        } else {
            Value::Surd(self.clone())
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn approx_eq(&self, other: &Self, _eps: f64) -> bool {
        self == other
    }
}

/// A backend-erased scalar, used in results that outlive the generic
/// computation (normalizers, witnesses, reports).
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Rational(Rational),
    Surd(QuadSurd),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Rational(q) => rational_to_f64(q),
            Value::Surd(s) => s.to_f64(),
            Value::Float(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Value::Float(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(q) => write!(f, "{q}"),
            Value::Surd(s) => write!(f, "{s}"),
            Value::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Extended gcd on small integers: returns `(g, u, v)` with `u·a + v·b = g`.
pub fn bezout(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// Tolerances for the floating backend. Exact computations ignore them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative comparison tolerance for coefficients and residuals.
    pub epsilon: f64,
}

impl Tolerance {
    pub fn new(epsilon: f64) -> Self {
        Tolerance { epsilon }
    }

    /// Relative radius within which floating roots are merged into one
    /// multiple root.
    pub fn cluster_radius(&self) -> f64 {
        self.epsilon.cbrt()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { epsilon: 1e-9 }
    }
}
