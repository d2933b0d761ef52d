mod common;

use common::*;
use dream_core::center::CenterPresentation;
use dream_core::invariant::multiorder;
use dream_core::mord::{dominating_sequence, witness_vectors};
use dream_core::tschirnhaus::{make_tschirnhaus, verify_tschirnhaus};
use dream_core::{is_in_mord, Ambient, LatticeIdeal};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn witness_set_of_the_three_variable_example() {
    let d = mord("(4, 16/3, 32/5)");
    assert!(is_in_mord(&d));
    let mut found = Vec::new();
    for i in 1..=3 {
        for w in witness_vectors(&d, i).unwrap() {
            if w.last_nonzero {
                let mut e = w.exponent.entries().to_vec();
                e.resize(3, 0);
                found.push(e);
            }
        }
    }
    found.sort();
    assert_eq!(found, vec![vec![0, 2, 4], vec![1, 4, 0], vec![2, 1, 2], vec![4, 0, 0]]);
}

#[test]
fn dominating_sequence_outside_mord() {
    let d = mord("(14/5, 7/2)");
    assert!(!is_in_mord(&d));
    let e = dominating_sequence(&d).unwrap().expect("a dominating tuple");
    assert!(e > d);
    let w: Vec<_> = e.entries().iter().map(|q| q.recip()).collect();
    for a in LatticeIdeal::new(&d).unwrap().minimal_generators() {
        assert!(a.dot(&w) >= q(1, 1), "{a}");
    }
    assert_eq!(dominating_sequence(&mord("(5, 7)")).unwrap(), None);
}

#[test]
fn rounding_lists() {
    let a = Ambient::new(["x", "y"]);
    for (c, text) in [
        ("[x^5, y^7]", "(x^5, x^4*y^2, x^3*y^3, x^2*y^5, x*y^6, y^7)"),
        ("[x^5, y^(15/2)]", "(x^5, x^4*y^2, x^3*y^3, x^2*y^5, x*y^6, y^8)"),
    ] {
        let j = CenterPresentation::parse(c, &a, 64).unwrap();
        let r = j.rounding().unwrap();
        assert_eq!(format!("{r}"), text);
        assert_eq!(format!("{}", multiorder(&r).unwrap().center), c);
    }
}

#[test]
fn leading_term_bases() {
    let a = Ambient::new(["x", "y", "z"]);
    for (c, basis) in [
        ("[x^5, y^7]", vec!["x^5", "y^7"]),
        ("[x^5, y^(15/2)]", vec!["x^5", "x^3*y^3", "x*y^6"]),
        ("[x^4, y^(16/3), z^(32/5)]", vec!["x^4", "x*y^4", "x^2*y*z^2", "y^2*z^4"]),
    ] {
        let j = CenterPresentation::parse(c, &a, 64).unwrap();
        let mut got: Vec<String> = j.basis_monomials().iter().map(|m| format!("{m}")).collect();
        let mut want: Vec<String> = basis.iter().map(|s| s.to_string()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want, "{c}");
    }
}

#[test]
fn tschirnhaus_certifies_canonical_centers() {
    for (s, _) in CORPUS {
        let i = ideal(s);
        let j = multiorder(&i).unwrap().center;
        let cert = make_tschirnhaus(&i, &j).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert!(cert.presentation.same_center(&j).unwrap());
        assert!(verify_tschirnhaus(&i, &cert.presentation).unwrap().is_some(), "{s}");
    }
}

#[test]
fn tschirnhaus_refuses_non_maximal_centers() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut total = 0;
    for (s, d) in CORPUS.iter().take(3) {
        let i = ideal(s);
        let canonical = mord(d);
        for j in non_maximal_centers(&mut rng, &i, &canonical, 10) {
            assert!(j.multiorder() < canonical, "{s}: {j}");
            assert!(verify_tschirnhaus(&i, &j).unwrap().is_none(), "{s}: {j}");
            assert!(make_tschirnhaus(&i, &j).is_err(), "{s}: {j}");
            total += 1;
        }
    }
    assert!(total >= 20, "only {total} samples");
}
