//! Real-root isolation and sign analysis of univariate polynomials.
//!
//! The exact engine ([`sturm`]) works over the rationals with Sturm
//! sequences on square-free parts. The floating engine ([`approx`]) finds
//! complex roots numerically and merges clusters into multiple roots.
//! Both feed the [`RootBackend`] trait, which is what the circle analysis
//! is written against.

pub mod approx;
pub mod sturm;

use std::cmp::Ordering;

use crate::error::Result;
use crate::poly::UnivariatePoly;
use crate::scalar::{RealScalar, Sign, Tolerance};

pub use sturm::{
    cauchy_bound, isolate_roots, refine, sign_partition, square_free_decomposition, sturm_count,
    SquareFreeDecomposition, SturmSequence,
};

/// An isolating interval for one distinct real root.
///
/// Either `lo < hi` and the open interval `(lo, hi)` holds exactly one
/// distinct root (endpoints are never roots), or `lo = hi` is the root
/// itself and `exact_point` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval<S> {
    pub lo: S,
    pub hi: S,
    pub multiplicity: u32,
    pub exact_point: Option<S>,
}

impl<S: RealScalar> RootInterval<S> {
    pub fn exact(root: S, multiplicity: u32) -> Self {
        RootInterval {
            lo: root.clone(),
            hi: root.clone(),
            multiplicity,
            exact_point: Some(root),
        }
    }

    pub fn open(lo: S, hi: S, multiplicity: u32) -> Self {
        RootInterval {
            lo,
            hi,
            multiplicity,
            exact_point: None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.exact_point.is_some()
    }

    pub fn width(&self) -> S {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint_f64(&self) -> f64 {
        match &self.exact_point {
            Some(p) => p.to_f64(),
            None => 0.5 * (self.lo.to_f64() + self.hi.to_f64()),
        }
    }

    /// `true` when the two intervals cannot be told apart yet.
    pub(crate) fn overlaps(&self, next: &Self) -> bool {
        match self.hi.partial_cmp(&next.lo) {
            Some(Ordering::Less) => false,
            Some(Ordering::Equal) => self.is_degenerate() || next.is_degenerate(),
            _ => true,
        }
    }
}

/// Signs of a polynomial on the maximal root-free open intervals of the
/// real line, `signs.len() == breakpoints.len() + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignPartition<S> {
    pub breakpoints: Vec<RootInterval<S>>,
    pub signs: Vec<Sign>,
}

/// A real root shared by a family of polynomials.
#[derive(Clone, Debug)]
pub struct JointRoot<S> {
    pub interval: RootInterval<S>,
    /// Multiplicity of this root in each input polynomial, zero when it is
    /// not a root of that polynomial.
    pub multiplicities: Vec<u32>,
    /// Index into [`JointRoots::basis`] of the square-free factor carrying
    /// the root (exact backend only).
    pub basis_index: Option<usize>,
    /// Approximation accurate to about machine precision.
    pub approx: f64,
}

impl<S> JointRoot<S> {
    pub fn is_root_of(&self, poly: usize) -> bool {
        self.multiplicities.get(poly).copied().unwrap_or(0) > 0
    }
}

/// The ordered distinct real roots of several polynomials at once.
#[derive(Clone, Debug)]
pub struct JointRoots<S> {
    pub roots: Vec<JointRoot<S>>,
    /// Pairwise coprime square-free polynomials whose roots are exactly
    /// `roots` (empty for the floating backend).
    pub basis: Vec<UnivariatePoly<S>>,
}

/// Root machinery that the circle analysis needs from a backend.
pub trait RootBackend: RealScalar {
    /// Distinct real roots of all `polys` in ascending order with pairwise
    /// disjoint intervals. Zero polynomials are ignored.
    fn joint_roots(polys: &[UnivariatePoly<Self>], tol: &Tolerance) -> Result<JointRoots<Self>>;

    /// Position of `t` relative to root `index`: `Less` means `t` is below
    /// the root.
    fn compare_with_root(roots: &JointRoots<Self>, index: usize, t: &Self) -> Ordering;

    /// Whether `poly` vanishes at the given root.
    fn vanishes_at(
        poly: &UnivariatePoly<Self>,
        roots: &JointRoots<Self>,
        index: usize,
        tol: &Tolerance,
    ) -> bool;

    /// A representative strictly between `a` and `b` (`a < b`), preferring
    /// simple values.
    fn between(a: &Self, b: &Self) -> Self;

    /// A representative strictly below `a`.
    fn below(a: &Self) -> Self;

    /// A representative strictly above `a`.
    fn above(a: &Self) -> Self;

    /// Drops leading coefficients that are zero at this backend's
    /// resolution.
    fn trim(poly: &UnivariatePoly<Self>, _tol: &Tolerance) -> UnivariatePoly<Self> {
        poly.clone()
    }

    /// The positive `n`-th root of a positive value, when the backend can
    /// represent it exactly.
    fn exact_root(_value: &Self, _n: u32) -> Option<Self> {
        None
    }
}

impl<S: RootBackend> JointRoots<S> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Sample points of the `len() + 1` gaps between consecutive roots.
    pub fn gap_samples(&self) -> Vec<S> {
        let n = self.roots.len();
        if n == 0 {
            return vec![S::zero()];
        }
        let mut out = Vec::with_capacity(n + 1);
        out.push(S::below(&self.roots[0].interval.lo));
        for w in self.roots.windows(2) {
            let (a, b) = (&w[0].interval.hi, &w[1].interval.lo);
            if a < b {
                out.push(S::between(a, b));
            } else {
                // touching open intervals share a non-root endpoint
                out.push(a.clone());
            }
        }
        out.push(S::above(&self.roots[n - 1].interval.hi));
        out
    }

    /// Locates `t`: `Ok(i)` when `t` is root `i`, `Err(g)` when it lies in
    /// gap `g`.
    pub fn locate(&self, t: &S) -> std::result::Result<usize, usize> {
        for i in 0..self.roots.len() {
            match S::compare_with_root(self, i, t) {
                Ordering::Less => return Err(i),
                Ordering::Equal => return Ok(i),
                Ordering::Greater => {}
            }
        }
        Err(self.roots.len())
    }
}
