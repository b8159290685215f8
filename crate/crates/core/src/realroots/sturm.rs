//! Exact root isolation over the rationals.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::{JointRoot, JointRoots, RootBackend, RootInterval, SignPartition};
use crate::error::{Error, Result};
use crate::poly::UnivariatePoly;
use crate::scalar::{
    f64_to_rational, rational_sqrt, rational_to_f64, Rational, RealScalar, Scalar, Sign, Tolerance,
};

type Poly = UnivariatePoly<Rational>;

/// `p = constant · Π factor^multiplicity` with monic, square-free,
/// pairwise coprime factors.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareFreeDecomposition {
    pub constant: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl SquareFreeDecomposition {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.constant.clone()), |acc, (q, m)| {
                acc.mul(&q.pow(*m as usize))
            })
    }

    /// Product of the distinct factors.
    pub fn square_free_part(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(Rational::one()), |acc, (q, _)| acc.mul(q))
    }
}

/// Yun's algorithm.
pub fn square_free_decomposition(p: &Poly) -> Result<SquareFreeDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let constant = p.leading();
    let monic = p.monic();
    let mut factors = Vec::new();
    if monic.degree() == Some(0) {
        return Ok(SquareFreeDecomposition { constant, factors });
    }
    let dp = monic.derivative();
    let a0 = monic.gcd(&dp);
    let mut b = monic.exact_div(&a0);
    let mut c = dp.exact_div(&a0);
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    while b.degree() != Some(0) {
        let a = b.gcd(&d);
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = c.sub(&b.derivative());
        if a.degree().is_some_and(|deg| deg > 0) {
            factors.push((a, i));
        }
        i += 1;
    }
    Ok(SquareFreeDecomposition { constant, factors })
}

/// Cauchy bound `1 + max |a_i / a_n|`: every real root lies strictly inside
/// `(−B, B)`.
pub fn cauchy_bound(p: &Poly) -> Rational {
    let lead = p.leading().magnitude();
    let n = p.coeffs().len().saturating_sub(1);
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| c.magnitude() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    max + Rational::one()
}

/// Sturm sequence of a square-free polynomial, each member scaled by a
/// positive constant to keep coefficients small.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Poly>,
}

fn positive_normalize(p: Poly) -> Poly {
    let lead = p.leading().magnitude();
    if lead.is_zero() {
        p
    } else {
        p.scale(&(Rational::one() / lead))
    }
}

impl SturmSequence {
    pub fn new(p: &Poly) -> Self {
        let mut seq = vec![positive_normalize(p.clone())];
        if p.degree().unwrap_or(0) > 0 {
            seq.push(positive_normalize(p.derivative()));
            loop {
                let n = seq.len();
                let r = seq[n - 2].rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(positive_normalize(r.scale(&-Rational::one())));
            }
        }
        SturmSequence { seq }
    }

    pub fn poly(&self) -> &Poly {
        &self.seq[0]
    }

    fn variations_of(signs: impl Iterator<Item = Sign>) -> usize {
        let mut last = Sign::Zero;
        let mut count = 0;
        for s in signs.filter(|s| *s != Sign::Zero) {
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations(&self, t: &Rational) -> usize {
        Self::variations_of(self.seq.iter().map(|q| q.sign_at(t)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations_of(self.seq.iter().map(|q| {
            let s = q.leading().sign();
            let odd = q.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                s.flip()
            } else {
                s
            }
        }))
    }

    /// Distinct roots in `(lo, hi]`; neither endpoint may be a root.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> Result<usize> {
        for e in [lo, hi] {
            if self.poly().eval(e).is_zero() {
                return Err(Error::EndpointIsRoot {
                    endpoint: e.to_string(),
                });
            }
        }
        Ok(self.variations(lo).saturating_sub(self.variations(hi)))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

/// Number of distinct real roots of a square-free `p` in `(lo, hi]`.
pub fn sturm_count(p: &Poly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    SturmSequence::new(p).count(lo, hi)
}

/// Roots of a square-free polynomial, multiplicity 1 each, ascending.
fn isolate_square_free(p: &Poly) -> Vec<RootInterval<Rational>> {
    match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => {
            let c = p.coeffs();
            return vec![RootInterval::exact(-c[0].clone() / c[1].clone(), 1)];
        }
        Some(2) => {
            let c = p.coeffs();
            let disc = &c[1] * &c[1] - Rational::from_i64(4) * &c[0] * &c[2];
            if disc.is_negative() {
                return Vec::new();
            }
            if let Some(root) = rational_sqrt(&disc) {
                let two_a = Rational::from_i64(2) * &c[2];
                let mut roots = [
                    (-c[1].clone() - root.clone()) / two_a.clone(),
                    (-c[1].clone() + root) / two_a,
                ];
                roots.sort();
                return roots
                    .into_iter()
                    .map(|r| RootInterval::exact(r, 1))
                    .collect();
            }
        }
        _ => {}
    }
    let sturm = SturmSequence::new(p);
    let bound = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let n = sturm.variations(&a).saturating_sub(sturm.variations(&b));
        match n {
            0 => {}
            1 => out.push(RootInterval::open(a, b, 1)),
            _ => {
                let mid = Rational::midpoint(&a, &b);
                if p.eval(&mid).is_zero() {
                    let mut eps = (&b - &a) / Rational::from_i64(4);
                    loop {
                        let (l, r) = (&mid - &eps, &mid + &eps);
                        if !p.eval(&l).is_zero()
                            && !p.eval(&r).is_zero()
                            && sturm.variations(&l) - sturm.variations(&r) == 1
                        {
                            stack.push((a.clone(), l));
                            stack.push((r, b.clone()));
                            break;
                        }
                        eps /= Rational::from_i64(2);
                    }
                    out.push(RootInterval::exact(mid, 1));
                } else {
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// One bisection step on an open isolating interval of a root of the
/// square-free `p`. Degenerate intervals are returned unchanged.
pub fn refine(interval: &RootInterval<Rational>, p: &Poly) -> RootInterval<Rational> {
    if interval.is_degenerate() {
        return interval.clone();
    }
    let mid = Rational::midpoint(&interval.lo, &interval.hi);
    let sm = p.sign_at(&mid);
    if sm == Sign::Zero {
        return RootInterval::exact(mid, interval.multiplicity);
    }
    // a simple root is the only sign change inside the interval
    if sm == p.sign_at(&interval.lo) {
        RootInterval::open(mid, interval.hi.clone(), interval.multiplicity)
    } else {
        RootInterval::open(interval.lo.clone(), mid, interval.multiplicity)
    }
}

/// Float Newton from the midpoint, accepted only if exact signs bracket the
/// result within a couple of ulps inside the isolating interval.
fn newton_f64(iv: &RootInterval<Rational>, p: &Poly) -> Option<f64> {
    let (lo, hi) = (rational_to_f64(&iv.lo), rational_to_f64(&iv.hi));
    let f = p.to_f64();
    let df = f.derivative();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..60 {
        let d = df.eval(&x);
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let next = (x - f.eval(&x) / d).clamp(lo, hi);
        if next == x {
            break;
        }
        x = next;
    }
    let q = f64_to_rational(x)?;
    if p.sign_at(&q) == Sign::Zero {
        return Some(x);
    }
    let ulp = 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
    let a = f64_to_rational(x - ulp)?;
    let b = f64_to_rational(x + ulp)?;
    let inside = iv.lo < a && b < iv.hi;
    let brackets = matches!(
        (p.sign_at(&a), p.sign_at(&b)),
        (Sign::Negative, Sign::Positive) | (Sign::Positive, Sign::Negative)
    );
    (inside && brackets).then_some(x)
}

fn refine_to_f64(interval: &RootInterval<Rational>, p: &Poly) -> f64 {
    if !interval.is_degenerate() {
        if let Some(x) = newton_f64(interval, p) {
            return x;
        }
    }
    let mut iv = interval.clone();
    for _ in 0..200 {
        if iv.is_degenerate() {
            break;
        }
        let (lo, hi) = (rational_to_f64(&iv.lo), rational_to_f64(&iv.hi));
        if hi - lo <= f64::EPSILON * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        iv = refine(&iv, p);
    }
    iv.midpoint_f64()
}

/// Isolating intervals for every distinct real root, ascending, with
/// multiplicities from the square-free decomposition.
pub fn isolate_roots(p: &Poly) -> Result<Vec<RootInterval<Rational>>> {
    let joint = Rational::joint_roots(std::slice::from_ref(p), &Tolerance::default())?;
    Ok(joint
        .roots
        .into_iter()
        .map(|r| {
            let mut iv = r.interval;
            iv.multiplicity = r.multiplicities[0];
            iv
        })
        .collect())
}

/// Exact signs of `p` between and around its real roots.
pub fn sign_partition(p: &Poly) -> Result<SignPartition<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let joint = Rational::joint_roots(std::slice::from_ref(p), &Tolerance::default())?;
    let signs = joint.gap_samples().iter().map(|t| p.sign_at(t)).collect();
    let breakpoints = joint
        .roots
        .into_iter()
        .map(|r| {
            let mut iv = r.interval;
            iv.multiplicity = r.multiplicities[0];
            iv
        })
        .collect();
    Ok(SignPartition { breakpoints, signs })
}

/// Splits a family of square-free polynomials into pairwise coprime
/// square-free pieces with the same roots.
fn coprime_basis(polys: impl IntoIterator<Item = Poly>) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for p in polys {
        let mut rest = p;
        let mut next = Vec::with_capacity(basis.len() + 1);
        for b in basis {
            let g = b.gcd(&rest);
            if g.degree().unwrap_or(0) == 0 {
                next.push(b);
                continue;
            }
            let reduced = b.exact_div(&g);
            rest = rest.exact_div(&g);
            if reduced.degree().unwrap_or(0) > 0 {
                next.push(reduced);
            }
            next.push(g);
        }
        if rest.degree().unwrap_or(0) > 0 {
            next.push(rest.monic());
        }
        basis = next;
    }
    basis
}

/// Smallest-height rational in the open interval `(a, b)`, `b = None`
/// meaning `+∞`; requires `a ≥ 0`.
fn simplest_nonnegative(a: &Rational, b: Option<&Rational>) -> Rational {
    let next_int = a.floor() + Rational::one();
    if b.is_none_or(|b| &next_int < b) {
        return next_int;
    }
    let b = b.expect("bounded");
    let m = a.floor();
    let fa = a - &m;
    let fb = b - &m;
    let lo = Rational::one() / fb;
    let hi = (!fa.is_zero()).then(|| Rational::one() / fa);
    m + Rational::one() / simplest_nonnegative(&lo, hi.as_ref())
}

/// The rational of smallest height strictly between `a < b`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    if a.is_negative() && b.is_positive() {
        Rational::zero()
    } else if !a.is_negative() {
        simplest_nonnegative(a, Some(b))
    } else {
        -simplest_nonnegative(&-b.clone(), Some(&-a.clone()))
    }
}

impl RootBackend for Rational {
    fn joint_roots(polys: &[Poly], _tol: &Tolerance) -> Result<JointRoots<Rational>> {
        let decompositions = polys
            .iter()
            .map(|p| {
                (!p.is_zero())
                    .then(|| square_free_decomposition(p))
                    .transpose()
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = coprime_basis(
            decompositions
                .iter()
                .flatten()
                .flat_map(|d| d.factors.iter().map(|(q, _)| q.clone())),
        );
        let mut roots = Vec::new();
        for (bi, b) in basis.iter().enumerate() {
            let multiplicities: Vec<u32> = decompositions
                .iter()
                .map(|d| {
                    d.as_ref()
                        .and_then(|d| {
                            d.factors
                                .iter()
                                .find(|(q, _)| q.rem(b).is_zero())
                                .map(|(_, m)| *m)
                        })
                        .unwrap_or(0)
                })
                .collect();
            for iv in isolate_square_free(b) {
                roots.push(JointRoot {
                    interval: iv,
                    multiplicities: multiplicities.clone(),
                    basis_index: Some(bi),
                    approx: 0.0,
                });
            }
        }
        // refine until the intervals are pairwise disjoint
        loop {
            roots.sort_by(|x, y| {
                x.interval
                    .lo
                    .cmp(&y.interval.lo)
                    .then_with(|| x.interval.hi.cmp(&y.interval.hi))
            });
            let mut changed = false;
            for i in 0..roots.len().saturating_sub(1) {
                if roots[i].interval.overlaps(&roots[i + 1].interval) {
                    for j in [i, i + 1] {
                        let b = &basis[roots[j].basis_index.expect("exact roots carry a basis")];
                        roots[j].interval = refine(&roots[j].interval, b);
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for r in &mut roots {
            let b = &basis[r.basis_index.expect("exact roots carry a basis")];
            r.approx = refine_to_f64(&r.interval, b);
        }
        Ok(JointRoots { roots, basis })
    }

    fn compare_with_root(roots: &JointRoots<Rational>, index: usize, t: &Rational) -> Ordering {
        let root = &roots.roots[index];
        let mut iv = root.interval.clone();
        if let Some(p) = &iv.exact_point {
            return t.cmp(p);
        }
        let b = &roots.basis[root.basis_index.expect("exact roots carry a basis")];
        if b.eval(t).is_zero() && iv.lo < *t && *t < iv.hi {
            return Ordering::Equal;
        }
        loop {
            if *t <= iv.lo {
                return Ordering::Less;
            }
            if *t >= iv.hi {
                return Ordering::Greater;
            }
            iv = refine(&iv, b);
            if let Some(p) = &iv.exact_point {
                return t.cmp(p);
            }
        }
    }

    fn vanishes_at(
        poly: &Poly,
        roots: &JointRoots<Rational>,
        index: usize,
        _tol: &Tolerance,
    ) -> bool {
        let root = &roots.roots[index];
        if let Some(p) = &root.interval.exact_point {
            return poly.eval(p).is_zero();
        }
        if poly.is_zero() {
            return true;
        }
        let b = &roots.basis[root.basis_index.expect("exact roots carry a basis")];
        let g = poly.gcd(b);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        // g divides the square-free carrier, so it has at most this one
        // root in the interval and changes sign across it
        g.sign_at(&root.interval.lo) != g.sign_at(&root.interval.hi)
    }

    fn between(a: &Rational, b: &Rational) -> Rational {
        simplest_between(a, b)
    }

    fn below(a: &Rational) -> Rational {
        let f = a.floor();
        if &f < a {
            f
        } else {
            f - Rational::one()
        }
    }

    fn above(a: &Rational) -> Rational {
        let c = a.ceil();
        if &c > a {
            c
        } else {
            c + Rational::one()
        }
    }

    fn exact_root(value: &Rational, n: u32) -> Option<Rational> {
        crate::scalar::rational_nth_root(value, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn poly(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn square_free_examples() {
        let d = square_free_decomposition(&poly(&[0, 0, 1])).unwrap();
        assert_eq!(d.factors, vec![(poly(&[0, 1]), 2)]);
        // t (t - 1)^2 = t^3 - 2t^2 + t
        let d = square_free_decomposition(&poly(&[0, 1, -2, 1])).unwrap();
        assert_eq!(d.factors, vec![(poly(&[0, 1]), 1), (poly(&[-1, 1]), 2)]);
        // 1 - t^2 + t^4/4 = (t^2 - 2)^2 / 4
        let h1 = Poly::new(vec![q(1, 1), q(0, 1), q(-1, 1), q(0, 1), q(1, 4)]);
        let d = square_free_decomposition(&h1).unwrap();
        assert_eq!(d.factors, vec![(poly(&[-2, 0, 1]), 2)]);
        assert_eq!(d.constant, q(1, 4));
        assert_eq!(d.expand(), h1);
        assert_eq!(
            square_free_decomposition(&Poly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn sturm_count_examples() {
        let p = poly(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &q(0, 1), &q(2, 1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &q(-2, 1), &q(2, 1)).unwrap(), 2);
        assert_eq!(
            sturm_count(&poly(&[1, 0, 1]), &q(-10, 1), &q(10, 1)).unwrap(),
            0
        );
        assert!(matches!(
            sturm_count(&poly(&[-1, 1]), &q(0, 1), &q(1, 1)),
            Err(Error::EndpointIsRoot { .. })
        ));
    }

    #[test]
    fn isolate_examples() {
        let roots = isolate_roots(&poly(&[0, 1, -2, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact_point, Some(q(0, 1)));
        assert_eq!(roots[0].multiplicity, 1);
        assert_eq!(roots[1].exact_point, Some(q(1, 1)));
        assert_eq!(roots[1].multiplicity, 2);

        let p = poly(&[-2, 0, 1]);
        let roots = isolate_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        let target = Rational::new(1.into(), num_bigint::BigInt::from(1u64 << 30));
        for r in &roots {
            let mut iv = r.clone();
            while iv.width() >= target {
                let before = iv.width();
                iv = refine(&iv, &p);
                assert_eq!(iv.width() * q(2, 1), before);
                assert_ne!(p.sign_at(&iv.lo), p.sign_at(&iv.hi));
            }
            assert!((iv.midpoint_f64().abs() - 2f64.sqrt()).abs() < 1e-9);
        }

        let squared = p.mul(&p);
        let roots2 = isolate_roots(&squared).unwrap();
        assert_eq!(roots2.len(), 2);
        assert!(roots2.iter().all(|r| r.multiplicity == 2));
        assert_eq!(squared.gcd(&squared.derivative()).degree(), Some(2));
    }

    #[test]
    fn sign_partition_examples() {
        let sp = sign_partition(&poly(&[0, 1])).unwrap();
        assert_eq!(sp.signs, vec![Sign::Negative, Sign::Positive]);
        let sp = sign_partition(&poly(&[0, 0, -1])).unwrap();
        assert_eq!(sp.signs, vec![Sign::Negative, Sign::Negative]);
        let sp = sign_partition(&poly(&[0, -1, 0, 1])).unwrap();
        assert_eq!(
            sp.signs,
            vec![
                Sign::Negative,
                Sign::Positive,
                Sign::Negative,
                Sign::Positive
            ]
        );
        assert_eq!(sp.breakpoints.len(), 3);
    }

    #[test]
    fn irrational_roots_of_higher_degree() {
        // (t^2 - 2)(t^2 - 3)(t - 1/2) mixes exact and open intervals
        let p = poly(&[-2, 0, 1])
            .mul(&poly(&[-3, 0, 1]))
            .mul(&Poly::linear_root(q(1, 2)));
        let roots = isolate_roots(&p).unwrap();
        let approx: Vec<f64> = roots.iter().map(|r| r.midpoint_f64()).collect();
        assert_eq!(roots.len(), 5);
        assert!(approx.windows(2).all(|w| w[0] < w[1]));
        assert!(roots.windows(2).all(|w| !w[0].overlaps(&w[1])));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&q(-1, 2), &q(3, 1)), q(0, 1));
        assert_eq!(simplest_between(&q(1, 3), &q(1, 2)), q(2, 5));
        assert_eq!(simplest_between(&q(0, 1), &q(1, 3)), q(1, 4));
        assert_eq!(simplest_between(&q(2, 1), &q(7, 2)), q(3, 1));
        assert_eq!(simplest_between(&q(-7, 2), &q(-3, 1)), q(-10, 3));
    }

    #[test]
    fn joint_roots_share_common_roots() {
        // t^2 (t - 1) and (t - 1)^3 (t + 2)
        let a = poly(&[0, 0, -1, 1]);
        let b = poly(&[-1, 1]).pow(3).mul(&poly(&[2, 1]));
        let j = Rational::joint_roots(&[a, b], &Tolerance::default()).unwrap();
        let mults: Vec<Vec<u32>> = j.roots.iter().map(|r| r.multiplicities.clone()).collect();
        assert_eq!(mults, vec![vec![0, 1], vec![2, 0], vec![1, 3]]);
        assert_eq!(j.gap_samples(), vec![q(-3, 1), q(-1, 1), q(1, 2), q(2, 1)]);
        assert_eq!(j.locate(&q(1, 1)), Ok(2));
        assert_eq!(j.locate(&q(5, 1)), Err(3));
    }
}
