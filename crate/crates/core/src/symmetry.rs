//! Linear symmetries of binary forms.
//!
//! `a ∈ gl(2)` is an infinitesimal symmetry of `h` when `dh_p(a p) = 0` for
//! all `p`; a finite symmetry is an invertible `A` with `h ∘ A = h`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hyperbolicity::{circle_sign_data, ComponentDescriptor, ProjectiveDirection};
use crate::linalg::nullspace;
use crate::poly::{BinaryForm, LinearMap};
use crate::scalar::{Rational, Scalar, Tolerance};

/// An element of the symmetry Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinitesimalSymmetry {
    pub matrix: LinearMap<Rational>,
}

impl InfinitesimalSymmetry {
    pub fn new(matrix: LinearMap<Rational>) -> Self {
        InfinitesimalSymmetry { matrix }
    }

    /// The form `p ↦ dh_p(a p)`.
    pub fn residual(
        h: &BinaryForm<Rational>,
        a: &LinearMap<Rational>,
    ) -> Result<BinaryForm<Rational>> {
        directional_form(h, a)
    }
}

impl fmt::Display for InfinitesimalSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.matrix.entries();
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e[0][0], e[0][1], e[1][0], e[1][1]
        )
    }
}

/// `h_x·(a₁₁x + a₁₂y) + h_y·(a₂₁x + a₂₂y)` for any coefficient type.
pub fn directional_form<S: Scalar>(h: &BinaryForm<S>, a: &LinearMap<S>) -> Result<BinaryForm<S>> {
    let [hx, hy] = h.gradient()?;
    let e = a.entries();
    let first = BinaryForm::linear(e[0][0].clone(), e[0][1].clone());
    let second = BinaryForm::linear(e[1][0].clone(), e[1][1].clone());
    Ok(hx.mul(&first).add(&hy.mul(&second)))
}

/// A basis of the Lie algebra of linear symmetries of `h`, from the exact
/// nullspace of the `(τ+1) × 4` system in the entries of `a`. Basis
/// matrices are primitive integer matrices.
pub fn infinitesimal_symmetries(h: &BinaryForm<Rational>) -> Result<Vec<InfinitesimalSymmetry>> {
    h.ensure_nonzero()?;
    let tau = h.degree();
    if tau == 0 {
        return Ok((0..4)
            .map(unit_matrix)
            .map(InfinitesimalSymmetry::new)
            .collect());
    }
    let columns: Vec<BinaryForm<Rational>> = (0..4)
        .map(|i| directional_form(h, &unit_matrix(i)))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<Rational>> = (0..=tau)
        .map(|k| columns.iter().map(|c| c.coeff(k).clone()).collect())
        .collect();
    Ok(nullspace(&rows, 4)
        .into_iter()
        .map(|v| {
            let [a, b, c, d]: [Rational; 4] = v.try_into().expect("four unknowns");
            InfinitesimalSymmetry::new(LinearMap::new([[a, b], [c, d]]))
        })
        .collect())
}

fn unit_matrix(i: usize) -> LinearMap<Rational> {
    let mut e = [
        [Rational::zero(), Rational::zero()],
        [Rational::zero(), Rational::zero()],
    ];
    e[i / 2][i % 2] = Rational::from_i64(1);
    LinearMap::new(e)
}

/// `((τ-k)r + ks)·f_k = 0` for every coefficient: the symmetry condition
/// for the diagonal generator `diag(r, s)`.
pub fn reduced_symmetry_condition(h: &BinaryForm<Rational>, r: &Rational, s: &Rational) -> bool {
    let tau = h.degree();
    h.coeffs().iter().enumerate().all(|(k, f)| {
        f.is_zero() || (Rational::from_usize(tau - k) * r + Rational::from_usize(k) * s).is_zero()
    })
}

/// `h ∘ A = h`, exactly or to `tol.epsilon` per coefficient.
pub fn check_finite_symmetry<S: Scalar>(
    h: &BinaryForm<S>,
    a: &LinearMap<S>,
    tol: &Tolerance,
) -> Result<bool> {
    let pulled = h.pullback(a)?;
    Ok(pulled.approx_eq(h, tol.epsilon))
}

/// Discrete symmetry type of `x^(τ-k) y^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    /// `R × Z2`, the `Z2` acting by `x → -x`.
    RxZ2XFlip,
    /// `R × Z2`, the `Z2` acting by `y → -y`.
    RxZ2YFlip,
    /// `R × Z2`, the `Z2` acting by `(x, y) → (-x, -y)`.
    RxZ2PointFlip,
    /// `(R × Z2) ⋊ Z2`: point reflection, extended by the swap.
    RxZ2PointFlipSemidirectSwap,
    /// `R × Z2 × Z2` via `x → -x` and `y → -y`.
    RxZ2xZ2,
    /// `(R × Z2 × Z2) ⋊ Z2` with the swap `(x, y) → (y, x)`.
    RxZ2xZ2SemidirectSwap,
}

impl GroupLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupLabel::RxZ2XFlip => "R_x_Z2_xflip",
            GroupLabel::RxZ2YFlip => "R_x_Z2_yflip",
            GroupLabel::RxZ2PointFlip => "R_x_Z2_pointflip",
            GroupLabel::RxZ2PointFlipSemidirectSwap => "R_x_Z2_pointflip_semidirect_swap",
            GroupLabel::RxZ2xZ2 => "R_x_Z2_x_Z2",
            GroupLabel::RxZ2xZ2SemidirectSwap => "R_x_Z2_x_Z2_semidirect_swap",
        }
    }

    pub fn is_semidirect(self) -> bool {
        matches!(
            self,
            GroupLabel::RxZ2PointFlipSemidirectSwap | GroupLabel::RxZ2xZ2SemidirectSwap
        )
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The automorphism group of `x^(τ-k) y^k`: the identity component
/// `t ↦ exp(t·diag(k, k-τ))` together with discrete generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupStructure {
    pub tau: usize,
    pub k: usize,
    pub label: GroupLabel,
    pub lie_generator: LinearMap<Rational>,
    /// Discrete generators; the swap, when present, is last.
    pub generators: Vec<LinearMap<Rational>>,
}

fn signed_diag(x: i64, y: i64) -> LinearMap<Rational> {
    LinearMap::from_ints([[x, 0], [0, y]])
}

/// The eight sign changes and swaps that preserve the coordinate axes.
pub fn axis_preserving_maps() -> Vec<LinearMap<Rational>> {
    let mut out = Vec::with_capacity(8);
    for (x, y) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        out.push(signed_diag(x, y));
    }
    for (x, y) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        out.push(LinearMap::swap().compose(&signed_diag(x, y)));
    }
    out
}

/// Group structure of `x^(τ-k) y^k` for `1 ≤ k ≤ ⌊τ/2⌋`.
///
/// `x → -x` multiplies the monomial by `(-1)^(τ-k)` and `y → -y` by
/// `(-1)^k`, so for `τ` even and `k` odd neither reflection is a symmetry
/// and the point reflection `-I` is. The swap is a symmetry iff `τ = 2k`.
pub fn group_structure(tau: usize, k: usize) -> Result<GroupStructure> {
    if tau < 3 || k < 1 || k > tau / 2 {
        return Err(Error::InvalidK {
            tau,
            k,
            max: tau / 2,
        });
    }
    let x_flip = signed_diag(-1, 1);
    let y_flip = signed_diag(1, -1);
    let point_flip = signed_diag(-1, -1);
    let swap = LinearMap::swap();
    let (label, generators) = match (tau.is_multiple_of(2), k.is_multiple_of(2), 2 * k == tau) {
        (false, false, _) => (GroupLabel::RxZ2XFlip, vec![x_flip]),
        (false, true, _) => (GroupLabel::RxZ2YFlip, vec![y_flip]),
        (true, false, false) => (GroupLabel::RxZ2PointFlip, vec![point_flip]),
        (true, false, true) => (
            GroupLabel::RxZ2PointFlipSemidirectSwap,
            vec![point_flip, swap],
        ),
        (true, true, false) => (GroupLabel::RxZ2xZ2, vec![x_flip, y_flip]),
        (true, true, true) => (
            GroupLabel::RxZ2xZ2SemidirectSwap,
            vec![x_flip, y_flip, swap],
        ),
    };
    let h = BinaryForm::<Rational>::monomial(tau, k);
    let tol = Tolerance::default();
    for g in &generators {
        if !check_finite_symmetry(&h, g, &tol)? {
            return Err(Error::NotASymmetry);
        }
    }
    Ok(GroupStructure {
        tau,
        k,
        label,
        lie_generator: LinearMap::new([
            [Rational::from_usize(k), Rational::zero()],
            [
                Rational::zero(),
                Rational::from_usize(k) - Rational::from_usize(tau),
            ],
        ]),
        generators,
    })
}

/// Whether the flow of `a` moves every point of the component: the vector
/// field `p ↦ a p` must not vanish on the component's arc.
pub fn verify_transitivity(
    h: &BinaryForm<Rational>,
    component: &ComponentDescriptor<Rational>,
    a: &InfinitesimalSymmetry,
    tol: &Tolerance,
) -> Result<bool> {
    if a.matrix.is_zero() {
        return Err(Error::DegenerateGenerator);
    }
    if !directional_form(h, &a.matrix)?.is_zero() {
        return Err(Error::NotASymmetry);
    }
    if !a.matrix.det().is_zero() {
        return Ok(true);
    }
    let e = a.matrix.entries();
    let kernel = if !e[0][0].is_zero() || !e[0][1].is_zero() {
        [-e[0][1].clone(), e[0][0].clone()]
    } else {
        [-e[1][1].clone(), e[1][0].clone()]
    };
    let data = circle_sign_data(h, tol)?;
    for v in [kernel.clone(), [-kernel[0].clone(), -kernel[1].clone()]] {
        let dir = ProjectiveDirection::of_point(&v)?;
        if data.arc_contains(&component.arc, &dir) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolicity::components;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn form(c: &[i64]) -> BinaryForm<Rational> {
        BinaryForm::from_ints(c)
    }

    #[test]
    fn lie_algebra_examples() {
        let alg = infinitesimal_symmetries(&form(&[0, 1, 0, 0])).unwrap();
        assert_eq!(alg.len(), 1);
        assert_eq!(alg[0].matrix, LinearMap::from_ints([[1, 0], [0, -2]]));
        let alg = infinitesimal_symmetries(&form(&[0, 0, 1, 0, 0])).unwrap();
        assert_eq!(alg.len(), 1);
        assert_eq!(alg[0].matrix, LinearMap::from_ints([[1, 0], [0, -1]]));
        assert!(infinitesimal_symmetries(&form(&[1, 0, 0, 0, 1]))
            .unwrap()
            .is_empty());
        // x^3: only a11 = a12 = 0 is forced
        assert_eq!(
            infinitesimal_symmetries(&form(&[1, 0, 0, 0]))
                .unwrap()
                .len(),
            2
        );
        assert!(matches!(
            infinitesimal_symmetries(&form(&[0, 0, 0])),
            Err(Error::ZeroForm)
        ));
    }

    #[test]
    fn basis_elements_annihilate_the_form() {
        for h in [
            form(&[0, 1, 0, 0]),
            form(&[1, 0, -3, 0]),
            form(&[1, 3, 3, 1]),
            form(&[0, 0, 1, 2, 1]),
        ] {
            for a in infinitesimal_symmetries(&h).unwrap() {
                assert!(InfinitesimalSymmetry::residual(&h, &a.matrix)
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn reduced_condition_examples() {
        let x2y = form(&[0, 1, 0, 0]);
        assert!(reduced_symmetry_condition(&x2y, &q(1), &q(-2)));
        assert!(!reduced_symmetry_condition(&x2y, &q(1), &q(1)));
        let h = form(&[0, 1, 0, 1, 0]);
        assert!(!reduced_symmetry_condition(&h, &q(1), &q(-1)));
        assert!(reduced_symmetry_condition(&h, &q(0), &q(0)));
    }

    #[test]
    fn finite_symmetry_examples() {
        let tol = Tolerance::default();
        let x2y2 = form(&[0, 0, 1, 0, 0]);
        assert!(check_finite_symmetry(&x2y2, &signed_diag(-1, 1), &tol).unwrap());
        let x2y = form(&[0, 1, 0, 0]);
        assert!(check_finite_symmetry(&x2y, &signed_diag(-1, 1), &tol).unwrap());
        assert!(!check_finite_symmetry(&x2y, &signed_diag(1, -1), &tol).unwrap());
        let x3y = form(&[0, 1, 0, 0, 0]);
        assert!(!check_finite_symmetry(&x3y, &LinearMap::swap(), &tol).unwrap());
        assert!(matches!(
            check_finite_symmetry(&x3y, &LinearMap::zero(), &tol),
            Err(Error::SingularMap)
        ));
    }

    #[test]
    fn group_structure_examples() {
        assert_eq!(group_structure(5, 2).unwrap().label, GroupLabel::RxZ2YFlip);
        assert_eq!(group_structure(5, 1).unwrap().label, GroupLabel::RxZ2XFlip);
        assert_eq!(group_structure(6, 2).unwrap().label, GroupLabel::RxZ2xZ2);
        let g = group_structure(4, 2).unwrap();
        assert_eq!(g.label, GroupLabel::RxZ2xZ2SemidirectSwap);
        assert_eq!(g.generators.last(), Some(&LinearMap::swap()));
        assert_eq!(
            group_structure(4, 1).unwrap().label,
            GroupLabel::RxZ2PointFlip
        );
        assert_eq!(
            group_structure(6, 3).unwrap().label,
            GroupLabel::RxZ2PointFlipSemidirectSwap
        );
        assert!(matches!(group_structure(4, 3), Err(Error::InvalidK { .. })));
        assert!(matches!(group_structure(4, 0), Err(Error::InvalidK { .. })));
    }

    #[test]
    fn group_structure_matches_brute_force() {
        let tol = Tolerance::default();
        for tau in 3..=12 {
            for k in 1..=tau / 2 {
                let h = BinaryForm::<Rational>::monomial(tau, k);
                let g = group_structure(tau, k).unwrap();
                let found: Vec<LinearMap<Rational>> = axis_preserving_maps()
                    .into_iter()
                    .filter(|a| check_finite_symmetry(&h, a, &tol).unwrap())
                    .collect();
                // the group generated by the listed generators is exactly
                // the set of symmetric candidates
                let mut closure = vec![LinearMap::identity()];
                loop {
                    let mut grew = false;
                    for a in closure.clone() {
                        for b in &g.generators {
                            let c = a.compose(b);
                            if !closure.contains(&c) {
                                closure.push(c);
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                assert_eq!(closure.len(), found.len(), "tau={tau} k={k}");
                assert!(closure.iter().all(|c| found.contains(c)));
            }
        }
    }

    #[test]
    fn transitivity_examples() {
        let tol = Tolerance::default();
        let x2y = form(&[0, 1, 0, 0]);
        let comps = components(&x2y, &tol).unwrap();
        let a = InfinitesimalSymmetry::new(LinearMap::from_ints([[1, 0], [0, -2]]));
        for c in &comps {
            assert!(verify_transitivity(&x2y, c, &a, &tol).unwrap());
        }
        let zero = InfinitesimalSymmetry::new(LinearMap::zero());
        assert!(matches!(
            verify_transitivity(&x2y, &comps[0], &zero, &tol),
            Err(Error::DegenerateGenerator)
        ));
        let scaling = InfinitesimalSymmetry::new(LinearMap::identity());
        assert!(matches!(
            verify_transitivity(&x2y, &comps[0], &scaling, &tol),
            Err(Error::NotASymmetry)
        ));
        // x^3 is fixed by the nilpotent shear generator [[0,0],[1,0]],
        // whose flow fixes the y-axis, which lies in no component
        let cube = form(&[1, 0, 0, 0]);
        let shear = InfinitesimalSymmetry::new(LinearMap::from_ints([[0, 0], [1, 0]]));
        let comps = components(&cube, &tol).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(verify_transitivity(&cube, &comps[0], &shear, &tol).unwrap());
        // [[0,0],[0,1]] fixes the x-axis direction, which lies on x^3 = 1
        let fix_x = InfinitesimalSymmetry::new(LinearMap::from_ints([[0, 0], [0, 1]]));
        assert!(!verify_transitivity(&cube, &comps[0], &fix_x, &tol).unwrap());
    }
}
