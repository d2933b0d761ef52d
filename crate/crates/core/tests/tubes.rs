mod common;

use common::*;
use dream_core::center::CenterPresentation;
use dream_core::invariant::multiorder;
use dream_core::tube::*;
use dream_core::{Ambient, ExponentVector, LatticeIdeal, PolyIdeal, Polynomial, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const WIDTHS: &[&str] = &["(2)", "(3)", "(2, 2)", "(2, 3)", "(5, 7)", "(5, 15/2)", "(4, 16/3, 32/5)", "(2, 4, 4)"];

#[test]
fn rank_is_complement_count() {
    for d in WIDTHS {
        let d = mord(d);
        let t = constant_tube(&d, &[]).unwrap();
        assert_eq!(t.rank().unwrap(), brute_complement(d.entries()).len(), "{d}");
        assert_eq!(t.basis().unwrap().len(), brute_complement(d.entries()).len());
    }
    assert_eq!(constant_tube(&mord("(5, 7)"), &[]).unwrap().rank().unwrap(), 23);
}

#[test]
fn graded_pieces_count_levels() {
    for d in WIDTHS {
        let d = mord(d);
        let t = constant_tube(&d, &["x".into()]).unwrap();
        let brute = brute_complement(d.entries());
        for (k, r) in t.graded_ranks().unwrap().iter().enumerate() {
            let count = brute.iter().filter(|a| a.iter().sum::<u32>() as usize == k).count();
            assert_eq!(*r, count, "{d} degree {k}");
        }
    }
}

#[test]
fn constant_tube_rejects_widths_outside_mord() {
    assert!(constant_tube(&mord("(14/5, 7/2)"), &[]).is_err());
    assert!(constant_tube(&mord("(1, 3)"), &[]).is_err());
}

#[test]
fn width_is_independent_of_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in ["(2, 3)", "(3, 3)", "(5, 7)", "(2, 4, 4)"] {
        let t = constant_tube(&mord(d), &[]).unwrap();
        for _ in 0..6 {
            let params = filtered_change(&mut rng, &t);
            assert!(parameter_check(&t, &params).unwrap(), "{d}");
            assert!(verify_split_tube(&t, &params, t.width()).unwrap(), "{d}");
            let moved = t.with_parameters(params).unwrap();
            assert_eq!(moved.width(), t.width());
        }
    }
}

#[test]
fn width_survives_presentation_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in ["(2, 3)", "(5, 7)"] {
        let t = constant_tube(&mord(d), &[]).unwrap();
        for _ in 0..4 {
            let sigma = random_triangular(&mut rng, t.ambient());
            let moved = t.transform(&sigma).unwrap();
            assert_eq!(moved.width(), t.width(), "{d} under {sigma}");
            assert_eq!(moved.rank().unwrap(), t.rank().unwrap());
        }
    }
}

#[test]
fn parameters_below_their_level_are_rejected() {
    let t = constant_tube(&mord("(2, 3)"), &[]).unwrap();
    let a = t.ambient().clone();
    assert!(!parameter_check(&t, &[poly(&a, "t2"), poly(&a, "t1")]).unwrap());
    assert!(!parameter_check(&t, &[poly(&a, "t1 + t2"), poly(&a, "t2")]).unwrap());
    // ν(t1 + t2) = 1/3 meets the bound for the second parameter.
    assert!(parameter_check(&t, &[poly(&a, "t1"), poly(&a, "t1 + t2")]).unwrap());
    assert!(parameter_check(&t, &[poly(&a, "t1 - t2^2"), poly(&a, "t2 + t1")]).unwrap());
}

#[test]
fn width_of_a_non_monomial_presentation() {
    let a = Ambient::new(["u", "v"]);
    let params = vec![poly(&a, "u"), poly(&a, "v")];
    let rels = vec![poly(&a, "u^2 + v^3"), poly(&a, "u*v^2 - v^3"), poly(&a, "v^3")];
    let t = TubeAlgebra::from_presentation(&[], &a, rels, params.clone()).unwrap();
    assert_eq!(t.width(), &mord("(2, 3)"));
    // u*v = 0 kills a basis monomial of every candidate width.
    let rels = vec![poly(&a, "u^2"), poly(&a, "u*v"), poly(&a, "v^3")];
    assert!(matches!(
        TubeAlgebra::from_presentation(&[], &a, rels, params),
        Err(dream_core::Error::NotATube(_))
    ));
}

#[test]
fn center_round_trips() {
    let a = Ambient::new(["x", "y", "z"]);
    for c in ["[x^5, y^7]", "[x^2, y^3]", "[x^4, y^(16/3), z^(32/5)]", "[x | y^2, z^4]", "[(x + y^2) | z^3]"] {
        let j = CenterPresentation::parse(c, &a, 64).unwrap();
        let v = tube_center_correspondence(&j).unwrap();
        let tail: Vec<Rational> = j.multiorder().entries().iter().filter(|q| **q > Rational::from_integer(1.into())).cloned().collect();
        assert_eq!(v.width.entries(), &tail[..], "{c}");
        let back = center_of_tube(&v.ideal).unwrap();
        assert!(back.same_center(&j).unwrap(), "{c}: {back}");
    }
}

#[test]
fn tight_presentations() {
    let a = Ambient::new(["x", "y"]);
    let (x, y) = (Polynomial::var(&a, 0), Polynomial::var(&a, 1));
    let z = ideal_in(&a, "y^2");
    assert!(tight_presentation_check(&z, &[], std::slice::from_ref(&y), &mord("(2)")).unwrap().tight);
    let plane = PolyIdeal::zero(&a);
    let v = tight_presentation_check(&plane, std::slice::from_ref(&x), std::slice::from_ref(&y), &mord("(2)")).unwrap();
    assert_eq!((v.gap, v.consistent, v.tight), (1, true, false));
    let j = CenterPresentation::parse("[x^2, y^3]", &a, 64).unwrap();
    let round = j.rounding().unwrap();
    let v = tight_presentation_check(&round, &[], &[x, y], &mord("(2, 3)")).unwrap();
    assert!(v.tight && v.consistent);
}

#[test]
fn rees_pieces() {
    let a = Ambient::new(["x", "y"]);
    let j = CenterPresentation::parse("[x^5, y^7]", &a, 64).unwrap();
    let v = tube_center_correspondence(&j).unwrap();
    let top = tubular_rees_piece(&v, 35, 35).unwrap();
    let lattice = LatticeIdeal::new(&mord("(5, 7)")).unwrap();
    let mut expected = lattice.minimal_generators().to_vec();
    let mut got = top.clone();
    expected.sort();
    got.sort();
    assert_eq!(got, expected);
    assert_eq!(tubular_rees_piece(&v, 35, 0).unwrap(), vec![ExponentVector::zeros(2)]);
    let with_s = EmbeddedTube::new(&a, vec![Polynomial::var(&a, 0)], vec![Polynomial::var(&a, 1)], &mord("(2)")).unwrap();
    assert!(tubular_rees_piece(&with_s, 2, 1).is_err());
}

#[test]
fn rees_pieces_are_multiplicative() {
    let a = Ambient::new(["x", "y", "z"]);
    let v = EmbeddedTube::new(&a, vec![], (0..3).map(|i| Polynomial::var(&a, i)).collect(), &mord("(2, 3, 6)")).unwrap();
    let pieces: Vec<_> = (0..=12).map(|n| tubular_rees_piece(&v, 6, n).unwrap()).collect();
    for m in 0..=6 {
        for n in 0..=6 {
            for g in &pieces[m] {
                for h in &pieces[n] {
                    let gh = g.add(h);
                    assert!(pieces[m + n].iter().any(|k| k.divides(&gh)), "{gh} at {m} + {n}");
                }
            }
        }
    }
}

#[test]
fn rees_restriction() {
    let a = Ambient::new(["x", "y"]);
    let j = CenterPresentation::parse("[x^2, y^3]", &a, 64).unwrap();
    let v = tube_center_correspondence(&j).unwrap();
    let z = j.rounding().unwrap();
    assert!(rees_restriction_check(&j, &z, &v, 6, 6).unwrap());
    assert!(rees_restriction_check(&j, &PolyIdeal::zero(&a), &v, 6, 6).unwrap());
    let wrong = EmbeddedTube::new(&a, vec![], v.t_part.clone(), &mord("(2, 5)")).unwrap();
    assert!(!rees_restriction_check(&j, &z, &wrong, 6, 6).unwrap());
}

#[test]
fn tubular_blowup_matches_strict_transform() {
    let a = Ambient::new(["x", "y"]);
    let cusp = ideal_in(&a, "y^2 - x^3");
    let j = multiorder(&cusp).unwrap().center;
    let v = tube_center_correspondence(&j).unwrap();
    assert_eq!(v.width, mord("(2, 3)"));
    assert!(tubular_blowup_check(&cusp, &v, 6).unwrap());
    assert!(tubular_blowup_check(&PolyIdeal::zero(&a), &v, 6).unwrap());
    let x = Polynomial::var(&a, 0);
    let v = EmbeddedTube::new(&a, vec![], vec![x], &mord("(2)")).unwrap();
    assert!(tubular_blowup_check(&ideal_in(&a, "x^2*y"), &v, 2).unwrap());
}

#[test]
fn invariant_ordering() {
    let small = TubeInvariant { width: mord("(2, 3)"), support: vec!["p".into()] };
    let big = TubeInvariant { width: mord("(2, 3)"), support: vec!["p".into(), "q".into()] };
    let wider = TubeInvariant { width: mord("(2, 4)"), support: vec![] };
    assert!(small < big);
    assert!(big < wider);
}
