use homcurve::symmetry::{
    axis_preserving_maps, check_finite_symmetry, group_structure, infinitesimal_symmetries,
    GroupLabel, InfinitesimalSymmetry,
};
use homcurve::{BinaryForm, LinearMap, Rational, Scalar, Tolerance};
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn family() -> impl Iterator<Item = (usize, usize)> {
    (3..=12).flat_map(|tau| (1..=tau / 2).map(move |k| (tau, k)))
}

fn invertible_map() -> impl Strategy<Value = LinearMap<Rational>> {
    [[-3i64..=3, -3i64..=3], [-3i64..=3, -3i64..=3]]
        .prop_map(LinearMap::from_ints)
        .prop_filter("invertible", |a| a.det() != Rational::from_i64(0))
}

/// `max |h(E p) - h(p)|` over fixed points, `E = I + εa + ε²a²/2`.
fn flow_defect(h: &BinaryForm<f64>, a: &LinearMap<f64>, eps: f64) -> f64 {
    let e = LinearMap::identity()
        .add(&a.scale(&eps))
        .add(&a.compose(a).scale(&(0.5 * eps * eps)));
    let points = [
        [0.3, 0.7],
        [1.1, 0.2],
        [-0.5, 0.9],
        [0.8, -0.6],
        [-1.0, -0.4],
        [0.25, 1.3],
        [1.2, 1.0],
        [-0.7, 0.1],
        [0.05, -0.95],
        [0.6, 0.6],
    ];
    points
        .iter()
        .map(|p| (h.eval(&e.apply(p)) - h.eval(p)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn monomials_have_a_one_dimensional_algebra() {
    for (tau, k) in family() {
        let h = BinaryForm::<Rational>::monomial(tau, k);
        let basis = infinitesimal_symmetries(&h).unwrap();
        assert_eq!(basis.len(), 1, "tau={tau} k={k}");
        let expected = LinearMap::new([
            [Rational::from_usize(k), Rational::from_i64(0)],
            [
                Rational::from_i64(0),
                Rational::from_usize(k) - Rational::from_usize(tau),
            ],
        ]);
        let m = &basis[0].matrix;
        // proportional to diag(k, k - τ)
        let ratio = m.entry(0, 0).clone() / expected.entry(0, 0).clone();
        assert_eq!(m, &expected.scale(&ratio), "tau={tau} k={k}");
        assert!(InfinitesimalSymmetry::residual(&h, &expected)
            .unwrap()
            .is_zero());
    }
}

#[test]
fn flow_converges_to_third_order() {
    for (tau, k) in family().filter(|(tau, _)| *tau <= 8) {
        let h = BinaryForm::<Rational>::monomial(tau, k).to_f64();
        for a in infinitesimal_symmetries(&BinaryForm::monomial(tau, k)).unwrap() {
            let a = a.matrix.to_f64();
            let e2 = flow_defect(&h, &a, 1e-2);
            let e3 = flow_defect(&h, &a, 1e-3);
            let e4 = flow_defect(&h, &a, 1e-4);
            let c = e2 / 1e-6;
            assert!(e3 <= 2.0 * c * 1e-9, "tau={tau} k={k}: {e2} {e3}");
            assert!(e4 <= 2.0 * c * 1e-12 + 1e-12, "tau={tau} k={k}: {e3} {e4}");
            // a first-order error would shrink only tenfold per step
            assert!(e2 / e3 > 300.0, "tau={tau} k={k}: {e2} {e3}");
        }
    }
}

#[test]
fn slope_ratio_is_strictly_increasing() {
    for tau in 3..=12i64 {
        let r: Vec<Rational> = (1..tau).map(|k| Rational::from_ratio(k - tau, k)).collect();
        assert!(r.windows(2).all(|w| w[0] < w[1]), "tau={tau}");
    }
}

/// Closure of the generators inside the eight axis-preserving maps.
fn generated(gens: &[LinearMap<Rational>]) -> Vec<LinearMap<Rational>> {
    let mut group = vec![LinearMap::identity()];
    loop {
        let mut grew = false;
        for g in group.clone() {
            for s in gens {
                let n = g.compose(s);
                if !group.contains(&n) {
                    group.push(n);
                    grew = true;
                }
            }
        }
        if !grew {
            return group;
        }
    }
}

#[test]
fn group_structure_matches_brute_force() {
    for (tau, k) in family() {
        let h = BinaryForm::<Rational>::monomial(tau, k);
        let gs = group_structure(tau, k).unwrap();
        for g in &gs.generators {
            assert!(check_finite_symmetry(&h, g, &tol()).unwrap());
        }
        let group = generated(&gs.generators);
        for m in axis_preserving_maps() {
            let is_symmetry = check_finite_symmetry(&h, &m, &tol()).unwrap();
            assert_eq!(is_symmetry, group.contains(&m), "tau={tau} k={k} {m:?}");
        }
        let swap = LinearMap::<Rational>::swap();
        assert_eq!(
            check_finite_symmetry(&h, &swap, &tol()).unwrap(),
            2 * k == tau
        );
        assert_eq!(gs.label.is_semidirect(), 2 * k == tau);
        if gs.label.is_semidirect() {
            let conj = swap.compose(&gs.lie_generator).compose(&swap);
            assert_eq!(conj, gs.lie_generator.scale(&Rational::from_i64(-1)));
        } else {
            for a in &gs.generators {
                for b in &gs.generators {
                    assert_eq!(a.compose(b), b.compose(a));
                }
            }
        }
        if tau % 2 == 0 && k % 2 == 1 {
            assert!(matches!(
                gs.label,
                GroupLabel::RxZ2PointFlip | GroupLabel::RxZ2PointFlipSemidirectSwap
            ));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nullspace_certificate(c in prop::collection::vec(-4i64..=4, 4..=8)) {
        let h = BinaryForm::<Rational>::from_ints(&c);
        prop_assume!(!h.is_zero());
        for a in infinitesimal_symmetries(&h).unwrap() {
            prop_assert!(InfinitesimalSymmetry::residual(&h, &a.matrix).unwrap().is_zero());
        }
    }

    #[test]
    fn conjugated_monomials_keep_one_generator(tau in 3usize..=9, k in 1usize..=4, a in invertible_map()) {
        prop_assume!(k <= tau / 2);
        let h = BinaryForm::<Rational>::monomial(tau, k).pullback(&a).unwrap();
        let basis = infinitesimal_symmetries(&h).unwrap();
        prop_assert_eq!(basis.len(), 1);
        prop_assert!(InfinitesimalSymmetry::residual(&h, &basis[0].matrix).unwrap().is_zero());
    }
}
