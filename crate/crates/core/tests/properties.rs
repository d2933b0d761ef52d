mod common;

use common::*;
use dream_core::blowup::minimal_root;
use dream_core::center::CenterPresentation;
use dream_core::invariant::multiorder;
use dream_core::oracle::monomial_center_oracle;
use dream_core::parse::parse_polynomial;
use dream_core::{is_in_mord, Ambient, ExponentVector, LatticeIdeal, MultiOrder, Polynomial, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn xy() -> Ambient {
    Ambient::new(["x", "y"])
}

prop_compose! {
    fn small_poly()(terms in prop::collection::vec((0u32..4, 0u32..4, -5i64..=5, 1i64..=3), 0..5)) -> Polynomial {
        let a = xy();
        Polynomial::from_terms(&a, terms.into_iter().map(|(i, j, n, d)| (ExponentVector::new(vec![i, j]), q(n, d))))
    }
}

prop_compose! {
    /// Weakly increasing tuples with entries in [1, 9] and small denominators.
    fn tuple()(raw in prop::collection::vec((3i64..=27, 1i64..=3), 1..=3)) -> MultiOrder {
        let mut e: Vec<Rational> = raw.into_iter().map(|(n, d)| q(n, d).max(q(1, 1))).collect();
        e.sort();
        MultiOrder::new(e).unwrap()
    }
}

/// Direct search for prefix witnesses `a` with `a_i ≥ 1` and `Σ a_j/d_j = 1`.
fn brute_in_mord(d: &MultiOrder) -> bool {
    let e = d.entries();
    (0..e.len()).all(|i| {
        let bounds: Vec<u32> = e[..=i].iter().map(|q| q.floor().to_integer().try_into().unwrap()).collect();
        let mut a = vec![0u32; i + 1];
        loop {
            if a[i] >= 1 {
                let s: Rational = a.iter().zip(e).map(|(k, q)| Rational::from_integer((*k).into()) / q).sum();
                if s == q(1, 1) {
                    return true;
                }
            }
            let mut k = 0;
            while k <= i && a[k] == bounds[k] {
                a[k] = 0;
                k += 1;
            }
            if k > i {
                return false;
            }
            a[k] += 1;
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in small_poly(), r in small_poly(), s in small_poly()) {
        prop_assert_eq!(&(&p + &r) * &s, &(&p * &s) + &(&r * &s));
        prop_assert_eq!(&p * &r, &r * &p);
        prop_assert_eq!(&(&p - &p), &Polynomial::zero(&xy()));
    }

    #[test]
    fn polynomial_text_round_trip(p in small_poly()) {
        let back = parse_polynomial(&format!("{p}"), &xy(), 64).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn multiorder_text_round_trip(d in tuple()) {
        prop_assert_eq!(MultiOrder::parse(&format!("{d}")).unwrap(), d);
    }

    #[test]
    fn mord_membership_matches_search(d in tuple()) {
        prop_assert_eq!(is_in_mord(&d), brute_in_mord(&d), "{}", d);
    }

    #[test]
    fn lattice_complement_matches_enumeration(d in tuple()) {
        let l = LatticeIdeal::new(&d).unwrap();
        prop_assert_eq!(l.complement_count(), brute_complement(d.entries()).len());
        let w: Vec<Rational> = d.entries().iter().map(|q| q.recip()).collect();
        for g in l.minimal_generators() {
            prop_assert!(g.dot(&w) >= q(1, 1));
            for j in 0..g.arity() {
                if g.get(j) > 0 {
                    let mut h = g.clone();
                    h.set(j, g.get(j) - 1);
                    prop_assert!(h.dot(&w) < q(1, 1));
                }
            }
        }
    }

    #[test]
    fn rounding_recovers_integral_centers(d in tuple()) {
        let names = ["x", "y", "z"];
        let a = Ambient::new(names[..d.len()].iter().copied());
        let t: Vec<(usize, Rational)> = d.entries().iter().cloned().enumerate().collect();
        let j = CenterPresentation::aligned(&a, &[], &t, 64).unwrap();
        let back = multiorder(&j.rounding().unwrap()).unwrap().mord;
        // A non-integral center rounds to the ideal of a strictly larger one.
        if is_in_mord(&d) {
            prop_assert_eq!(back, d);
        } else {
            prop_assert!(back > d, "{} -> {}", d, back);
        }
    }

    #[test]
    fn minimal_root_clears_denominators(d in tuple()) {
        prop_assume!(is_in_mord(&d));
        let n = minimal_root(&d).unwrap();
        let ok = |m: u32| d.entries().iter().all(|q| (Rational::from_integer(m.into()) / q).is_integer());
        prop_assert!(ok(n));
        prop_assert!((1..n).all(|m| !ok(m)));
    }

    #[test]
    fn oracle_agrees(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_monomial_ideal(&mut rng, n, 12);
        prop_assert_eq!(multiorder(&i).unwrap().mord, monomial_center_oracle(&i).unwrap().mord, "{}", i);
    }

    #[test]
    fn invariant_survives_coordinate_changes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_monomial_ideal(&mut rng, 2, 8);
        let sigma = random_triangular(&mut rng, i.ambient());
        let before = multiorder(&i).unwrap();
        let after = multiorder(&i.substitute(&sigma, 64).unwrap()).unwrap();
        prop_assert_eq!(&after.mord, &before.mord, "{} under {}", i, sigma);
        prop_assert!(after.center.same_center(&before.center.substitute(&sigma).unwrap()).unwrap());
    }
}
