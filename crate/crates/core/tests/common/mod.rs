#![allow(dead_code)]

use dream_core::parse::{collect_variables, parse_ideal, parse_polynomial};
use dream_core::poly::{Ambient, ExponentVector, PolyIdeal, Polynomial, Substitution};
use dream_core::{MultiOrder, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// Ideals with known invariants, as `(generators, mord)`.
pub const CORPUS: &[(&str, &str)] = &[
    ("x^5 + x^3*y^3 + y^7", "(5, 7)"),
    ("x^5 + x^3*y^3 + y^8", "(5, 15/2)"),
    ("x^4, x*y^4, x^2*y*z^2", "(4, 16/3, 32/5)"),
    ("x*y + y^3", "(2, 2)"),
    ("x*y^2 + y^4", "(3, 3)"),
    ("x*y^3 + y^5", "(4, 4)"),
    ("x*y^4 + y^6", "(5, 5)"),
    ("x*y^5 + y^7", "(6, 6)"),
    ("y^2 - x^3", "(2, 3)"),
    ("x^2, y^2, x*y*z", "(2, 2)"),
];

pub fn ambient_of(s: &str) -> Ambient {
    Ambient::new(collect_variables(s).unwrap())
}

pub fn ideal(s: &str) -> PolyIdeal {
    parse_ideal(s, &ambient_of(s), 64).unwrap()
}

pub fn ideal_in(a: &Ambient, s: &str) -> PolyIdeal {
    parse_ideal(s, a, 64).unwrap()
}

pub fn poly(a: &Ambient, s: &str) -> Polynomial {
    parse_polynomial(s, a, 64).unwrap()
}

pub fn mord(s: &str) -> MultiOrder {
    MultiOrder::parse(s).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `x_σ(k) ↦ c_k x_σ(k) + p_k(x_σ(k+1), …)` for a random variable order `σ`, with `p_k`
/// of order at least one and degree at most two.
pub fn random_triangular<R: Rng>(rng: &mut R, a: &Ambient) -> Substitution {
    let n = a.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut images = vec![Polynomial::zero(a); n];
    for (k, &v) in order.iter().enumerate() {
        let mut terms = vec![(ExponentVector::unit(n, v), q(*[1, -1, 2, -2].choose(rng).unwrap(), 1))];
        for &w in &order[k + 1..] {
            for e in [ExponentVector::unit(n, w), ExponentVector::unit(n, w).add(&ExponentVector::unit(n, w))] {
                if rng.gen_bool(0.4) {
                    terms.push((e, q(rng.gen_range(-2..=2), 1)));
                }
            }
        }
        images[v] = Polynomial::from_terms(a, terms);
    }
    Substitution::new(a.clone(), a.clone(), images).unwrap()
}

/// A random monomial ideal in `n` variables with generators of degree at most `max_degree`.
pub fn random_monomial_ideal<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> PolyIdeal {
    let names = ["x", "y", "z", "w"];
    let a = Ambient::new(names[..n].iter().copied());
    let k = rng.gen_range(1..=4);
    let gens: Vec<ExponentVector> = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=max_degree);
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            ExponentVector::new(e)
        })
        .collect();
    PolyIdeal::monomial(&a, &gens)
}

/// All `a ∈ ℕ^n` with `Σ a_j/d_j < 1`, by direct enumeration.
pub fn brute_complement(d: &[Rational]) -> Vec<Vec<u32>> {
    fn rec(j: usize, d: &[Rational], acc: Rational, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc >= Rational::from_integer(1.into()) {
            return;
        }
        if j == d.len() {
            out.push(cur.clone());
            return;
        }
        let mut k = 0u32;
        loop {
            let v = &acc + Rational::from_integer(k.into()) / &d[j];
            if v >= Rational::from_integer(1.into()) {
                break;
            }
            cur.push(k);
            rec(j + 1, d, v, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(0, d, Rational::from_integer(0.into()), &mut Vec::new(), &mut out);
    out
}

/// Admissible centers for `i` on permuted and sheared variables whose multiorder differs
/// from `canonical`, drawn at random.
pub fn non_maximal_centers<R: Rng>(
    rng: &mut R,
    i: &PolyIdeal,
    canonical: &MultiOrder,
    limit: usize,
) -> Vec<dream_core::center::CenterPresentation> {
    use dream_core::center::CenterPresentation;
    let a = i.ambient();
    let n = a.len();
    let grid: Vec<Rational> = (2..=20).map(|k| q(k, 2)).chain((4..=20).filter(|k| k % 3 != 0).map(|k| q(k, 3))).collect();
    let mut out: Vec<CenterPresentation> = Vec::new();
    for _ in 0..4000 {
        if out.len() >= limit {
            break;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut coords: Vec<Polynomial> = order.iter().map(|&v| Polynomial::var(a, v)).collect();
        if n >= 2 && rng.gen_bool(0.5) {
            let c = q(rng.gen_range(1..=3), 1);
            let k = rng.gen_range(2..=3);
            coords[0] = &coords[0] + &Polynomial::var(a, order[1]).pow(k, 64).unwrap().scale(&c);
        }
        let mut ex: Vec<Rational> = (0..n).map(|_| grid.choose(rng).unwrap().clone()).collect();
        ex.sort();
        let Ok(j) = CenterPresentation::with_exponents(a, coords, ex, 64) else { continue };
        if j.multiorder() != *canonical
            && j.is_admissible(i).unwrap_or(false)
            && !out.iter().any(|o| format!("{o}") == format!("{j}"))
        {
            out.push(j);
        }
    }
    out
}

/// New parameters `c_i t_i + Σ r_a t^a` with every extra monomial of filtration level at least `1/d_i`.
pub fn filtered_change<R: Rng>(rng: &mut R, t: &dream_core::tube::TubeAlgebra) -> Vec<Polynomial> {
    let a = t.ambient();
    let n = a.len();
    let w: Vec<Rational> = t.width().entries().iter().map(|q| q.recip()).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let mut terms = vec![(ExponentVector::unit(n, i), q(*[1, -1, 2, 3].get(rng.gen_range(0..4)).unwrap(), 1))];
        for k in 1..=3u32 {
            for e in monomials(n, k) {
                if e != ExponentVector::unit(n, i) && e.dot(&w) >= w[i] && rng.gen_bool(0.3) {
                    terms.push((e, q(rng.gen_range(-3..=3), rng.gen_range(1..=2))));
                }
            }
        }
        out.push(Polynomial::from_terms(a, terms));
    }
    out
}

pub fn monomials(n: usize, k: u32) -> Vec<ExponentVector> {
    if n == 1 {
        return vec![ExponentVector::new(vec![k])];
    }
    (0..=k)
        .flat_map(|j| {
            monomials(n - 1, k - j).into_iter().map(move |rest| {
                let mut v = vec![j];
                v.extend_from_slice(rest.entries());
                ExponentVector::new(v)
            })
        })
        .collect()
}

