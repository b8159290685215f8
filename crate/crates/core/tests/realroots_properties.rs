use homcurve::realroots::{
    isolate_roots, refine, sign_partition, square_free_decomposition, sturm_count,
};
use homcurve::{Rational, Scalar, Sign, UnivariatePoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

type Poly = UnivariatePoly<Rational>;

fn poly() -> impl Strategy<Value = Poly> {
    (1usize..=12)
        .prop_flat_map(|deg| {
            (
                prop::collection::vec((-4i64..=4, 1i64..=3), deg),
                prop_oneof![-4i64..=-1, 1i64..=4],
            )
        })
        .prop_map(|(lower, lead)| {
            let mut c: Vec<Rational> = lower
                .into_iter()
                .map(|(n, d)| Rational::from_ratio(n, d))
                .collect();
            c.push(Rational::from_i64(lead));
            Poly::new(c)
        })
}

/// Products of small linear factors, so multiple roots are common.
fn poly_with_repeats() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, 1u32..=3), 1..=4).prop_map(|roots| {
        roots
            .into_iter()
            .fold(Poly::from_ints(&[2]), |acc, (r, m)| {
                acc.mul(&Poly::linear_root(Rational::from_i64(r)).pow(m as usize))
            })
    })
}

/// Sign changes of `p` on a uniform grid of spacing `1e-4` over `[-b, b]`.
fn scan_sign_changes(p: &UnivariatePoly<f64>, b: f64) -> usize {
    let n = (2.0 * b / 1e-4).ceil() as usize;
    let mut last = Sign::Zero;
    let mut changes = 0;
    for i in 0..=n {
        let t = -b + 2.0 * b * i as f64 / n as f64;
        let s = Sign::of_f64(p.eval(&t));
        if s != Sign::Zero {
            if last != Sign::Zero && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn root_count_matches_dense_scan(p in poly()) {
        let roots = isolate_roots(&p).unwrap();
        let sf = square_free_decomposition(&p).unwrap().square_free_part();
        for r in &roots {
            match &r.exact_point {
                Some(t) => prop_assert!(sf.eval(t).is_zero()),
                None => prop_assert_eq!(sf.sign_at(&r.lo).times(sf.sign_at(&r.hi)), Sign::Negative),
            }
        }
        let approx: Vec<f64> = roots.iter().map(|r| r.midpoint_f64()).collect();
        let crowded = approx.windows(2).any(|w| w[1] - w[0] < 4e-4);
        // every root lies within 5 of the origin for these coefficient ranges
        let scanned = scan_sign_changes(&sf.to_f64(), 6.0);
        if !crowded {
            prop_assert_eq!(scanned, roots.len());
        }
    }
}

proptest! {
    #[test]
    fn multiplicities_account_for_the_degree(p in prop_oneof![poly(), poly_with_repeats()]) {
        let dec = square_free_decomposition(&p).unwrap();
        let total: usize = dec.factors.iter().map(|(q, m)| q.degree().unwrap() * *m as usize).sum();
        prop_assert_eq!(total, p.degree().unwrap());
        prop_assert_eq!(dec.expand(), p.clone());
        let roots = isolate_roots(&p).unwrap();
        for r in &roots {
            let t = r.exact_point.clone().unwrap_or_else(|| r.lo.clone());
            if r.exact_point.is_some() {
                // (t - r)^m divides p, (t - r)^(m+1) does not
                let lin = Poly::linear_root(t);
                prop_assert!(p.rem(&lin.pow(r.multiplicity as usize)).is_zero());
                prop_assert!(!p.rem(&lin.pow(r.multiplicity as usize + 1)).is_zero());
            }
        }
    }

    #[test]
    fn refinement_halves_and_keeps_the_root(p in poly()) {
        let sf = square_free_decomposition(&p).unwrap().square_free_part();
        for r in isolate_roots(&p).unwrap() {
            if r.is_degenerate() {
                continue;
            }
            let next = refine(&r, &sf);
            if next.is_degenerate() {
                prop_assert!(sf.eval(next.exact_point.as_ref().unwrap()).is_zero());
                continue;
            }
            prop_assert_eq!(next.width() * Rational::from_i64(2), r.width());
            prop_assert_eq!(sturm_count(&sf, &next.lo, &next.hi).unwrap(), 1);
        }
    }

    #[test]
    fn sign_partition_matches_evaluation(p in prop_oneof![poly(), poly_with_repeats()]) {
        let part = sign_partition(&p).unwrap();
        prop_assert_eq!(part.signs.len(), part.breakpoints.len() + 1);
        let bp = &part.breakpoints;
        for (i, s) in part.signs.iter().enumerate() {
            let t = match (i.checked_sub(1).map(|j| &bp[j]), bp.get(i)) {
                (None, None) => Rational::zero(),
                (None, Some(b)) => b.lo.clone() - Rational::one(),
                (Some(a), None) => a.hi.clone() + Rational::one(),
                (Some(a), Some(b)) => (a.hi.clone() + b.lo.clone()) / Rational::from_i64(2),
            };
            prop_assert_eq!(p.sign_at(&t), *s);
        }
    }
}
