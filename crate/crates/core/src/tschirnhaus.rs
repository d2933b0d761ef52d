//! Tschirnhaus presentations: certificates that an admissible center is the canonical one.
//!
//! Write `t_J(f) = Σ b_a u^a` over the leading-term basis. A presentation is Tschirnhaus for
//! `I` when for every level `i` some `f ∈ I` has
//!
//! * (i1) a unit coefficient `b_c` with `c = (c_1, …, c_i, 0, …, 0)` and `c_i ≠ 0`, and
//! * (i2) `b_a = 0` for every basis exponent `a` beginning `(c_1, …, c_{i-1}, c_i - 1)`.
//!
//! Elements of `I` are searched among the generators and the combinations `α g + β h` of two
//! generators with `|α|, |β| ≤ 5`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::center::CenterPresentation;
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, PolyIdeal, Polynomial};
use crate::rational::Rational;

const COMBINATION_BOUND: i64 = 5;
const SHEAR_TRIALS: i64 = 12;

/// The element certifying one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Zero-based index of the center coordinate.
    pub level: usize,
    pub element: Polynomial,
    /// The exponent `c` of condition (i1), over the center coordinates.
    pub exponent: ExponentVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TschirnhausCertificate {
    pub presentation: CenterPresentation,
    /// One witness per center coordinate, in order.
    pub witnesses: Vec<Witness>,
}

fn candidates(ideal: &PolyIdeal) -> Vec<Polynomial> {
    let gens = ideal.generators();
    let mut out: Vec<Polynomial> = gens.to_vec();
    let scalars: Vec<Rational> = (-COMBINATION_BOUND..=COMBINATION_BOUND)
        .filter(|&k| k != 0)
        .map(|k| Rational::from_integer(k.into()))
        .collect();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            for alpha in &scalars {
                for beta in &scalars {
                    let f = &gens[a].scale(alpha) + &gens[b].scale(beta);
                    if !f.is_zero() {
                        out.push(f);
                    }
                }
            }
        }
    }
    out
}

fn is_unit(c: &Polynomial) -> bool {
    !c.constant_term().is_zero()
}

/// An exponent `c` meeting (i1) and (i2) at `level`, given the leading coefficients `rows`.
fn check_level(basis: &[ExponentVector], rows: &[Polynomial], level: usize) -> Option<ExponentVector> {
    let n = basis.first().map_or(0, ExponentVector::arity);
    basis.iter().zip(rows).find_map(|(c, b)| {
        let shaped = c.get(level) > 0 && (level + 1..n).all(|j| c.get(j) == 0);
        if !shaped || !is_unit(b) {
            return None;
        }
        let clean = basis.iter().zip(rows).all(|(a, r)| {
            let starts = (0..level).all(|j| a.get(j) == c.get(j)) && a.get(level) + 1 == c.get(level);
            !starts || r.is_zero()
        });
        clean.then(|| c.clone())
    })
}

struct Candidates {
    elements: Vec<Polynomial>,
}

impl Candidates {
    fn find(&self, center: &CenterPresentation, level: usize) -> Result<Option<Witness>> {
        let basis = center.leading_term_basis();
        for f in &self.elements {
            let rows = center.leading_coefficients(f)?;
            if let Some(c) = check_level(&basis, &rows, level) {
                return Ok(Some(Witness { level, element: f.clone(), exponent: c }));
            }
        }
        Ok(None)
    }
}

/// Checks whether `center` is a Tschirnhaus presentation for `ideal`.
///
/// Returns `Ok(None)` when some level has no witness in the search space.
pub fn verify_tschirnhaus(ideal: &PolyIdeal, center: &CenterPresentation) -> Result<Option<TschirnhausCertificate>> {
    if !center.is_admissible(ideal)? {
        return Err(Error::Inadmissible);
    }
    let cands = Candidates { elements: candidates(ideal) };
    let mut witnesses = Vec::new();
    for level in 0..center.len() {
        match cands.find(center, level)? {
            Some(w) => witnesses.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(TschirnhausCertificate { presentation: center.clone(), witnesses }))
}

fn monomial_in(coords: &[Polynomial], a: &ExponentVector, from: usize, cap: u32) -> Result<Polynomial> {
    let ambient = coords[0].ambient();
    let mut m = Polynomial::one(ambient);
    for (j, u) in coords.iter().enumerate().skip(from) {
        if a.get(j) > 0 {
            m = m.try_mul(&u.pow(a.get(j), cap)?)?;
        }
    }
    Ok(m)
}

fn shear_values() -> impl Iterator<Item = i64> {
    core::iter::once(0).chain((1..=SHEAR_TRIALS / 2).flat_map(|k| [k, -k]))
}

/// Turns an admissible presentation into a Tschirnhaus presentation of the same center.
///
/// Level by level: pick an element whose leading term involves the current block of equal
/// weights, shear that block until a pure power `x·u_i^e` appears, then complete the power by
/// the substitution `u_i ↦ u_i + (1/e) Σ b_j y_j`.
pub fn make_tschirnhaus(ideal: &PolyIdeal, center: &CenterPresentation) -> Result<TschirnhausCertificate> {
    if !center.is_admissible(ideal)? {
        return Err(Error::Inadmissible);
    }
    let ambient = center.ambient().clone();
    let cap = center.degree_cap();
    let exps: Vec<Rational> = center.exponents().to_vec();
    let n = exps.len();
    let cands = Candidates { elements: candidates(ideal) };
    let mut coords: Vec<Polynomial> = center.coordinates().to_vec();
    let mut current = center.clone();
    let fails = || Error::FailsToCertify;

    for i in 0..n {
        if cands.find(&current, i)?.is_some() {
            continue;
        }
        // Weights with the tail flattened to 1/d_i.
        let w0: Vec<Rational> = (0..n).map(|j| exps[j.min(i)].recip()).collect();
        let basis = current.leading_term_basis();
        let one = Rational::one();
        let mut pick: Option<(Polynomial, ExponentVector)> = None;
        'search: for f in &cands.elements {
            let rows = current.leading_coefficients(f)?;
            for (c, b) in basis.iter().zip(&rows) {
                if is_unit(b) && (i..n).any(|j| c.get(j) > 0) && c.dot(&w0) <= one {
                    pick = Some((f.clone(), c.clone()));
                    break 'search;
                }
            }
        }
        let (f, c) = pick.ok_or_else(fails)?;
        let e: u32 = (i..n).map(|j| c.get(j)).sum();
        let mut target = c.clone();
        for j in i..n {
            target.set(j, 0);
        }
        target.set(i, e);
        let block: Vec<usize> = (i + 1..n).filter(|&j| exps[j] == exps[i]).collect();

        let mut sheared = None;
        for b in shear_values() {
            if b != 0 && block.is_empty() {
                break;
            }
            let bq = Rational::from_integer(b.into());
            let mut trial = coords.clone();
            for &j in &block {
                trial[j] = &coords[j] + &coords[i].scale(&bq);
            }
            let pres = CenterPresentation::with_exponents(&ambient, trial.clone(), exps.clone(), cap)?;
            let rows = pres.leading_coefficients(&f)?;
            let idx = pres.leading_term_basis().iter().position(|a| *a == target).ok_or_else(fails)?;
            if is_unit(&rows[idx]) {
                sheared = Some((trial, pres, rows[idx].constant_term()));
                break;
            }
        }
        let (trial, pres, lc) = sheared.ok_or_else(fails)?;
        coords = trial;
        let f = f.scale(&lc.recip());

        let rows = pres.leading_coefficients(&f)?;
        let e_inv = Rational::from_integer(e.into()).recip();
        let mut shift = Polynomial::zero(&ambient);
        for (a, b) in pres.leading_term_basis().iter().zip(&rows) {
            let starts = (0..i).all(|j| a.get(j) == target.get(j)) && a.get(i) + 1 == e;
            if starts && !b.is_zero() {
                shift = &shift + &b.try_mul(&monomial_in(&coords, a, i + 1, cap)?)?.scale(&e_inv);
            }
        }
        coords[i] = &coords[i] + &shift;
        current = CenterPresentation::with_exponents(&ambient, coords.clone(), exps.clone(), cap)?;
        let rows = current.leading_coefficients(&f)?;
        if check_level(&current.leading_term_basis(), &rows, i).is_none() {
            return Err(fails());
        }
    }

    if !current.same_center(center)? {
        return Err(Error::Internal("coordinate change moved the center".into()));
    }
    verify_tschirnhaus(ideal, &current)?.ok_or_else(fails)
}

/// Basis exponents carrying a nonzero coefficient for some witness, for display.
pub fn witness_support(cert: &TschirnhausCertificate) -> Result<Vec<Vec<ExponentVector>>> {
    let basis = cert.presentation.leading_term_basis();
    cert.witnesses
        .iter()
        .map(|w| {
            let rows = cert.presentation.leading_coefficients(&w.element)?;
            Ok(basis.iter().zip(&rows).filter(|(_, r)| !r.is_zero()).map(|(a, _)| a.clone()).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::multiorder;
    use crate::parse::{collect_variables, parse_ideal};
    use crate::poly::Ambient;
    use alloc::format;
    use alloc::vec;

    fn setup(i: &str, c: &str) -> (PolyIdeal, CenterPresentation) {
        let a = Ambient::new(collect_variables(i).unwrap());
        (parse_ideal(i, &a, 64).unwrap(), CenterPresentation::parse(c, &a, 64).unwrap())
    }

    #[test]
    fn worked_examples_verify() {
        let (i, c) = setup("x^5 + x^3*y^3 + y^7", "[x^5, y^7]");
        let cert = verify_tschirnhaus(&i, &c).unwrap().unwrap();
        assert_eq!(cert.witnesses[0].exponent, ExponentVector::new(vec![5, 0]));
        assert_eq!(cert.witnesses[1].exponent, ExponentVector::new(vec![0, 7]));
        let (i, c) = setup("x^5 + x^3*y^3 + y^8", "[x^5, y^(15/2)]");
        let cert = verify_tschirnhaus(&i, &c).unwrap().unwrap();
        assert_eq!(cert.witnesses[1].exponent, ExponentVector::new(vec![3, 3]));
    }

    #[test]
    fn pure_powers() {
        let (i, c) = setup("x", "[x]");
        assert!(verify_tschirnhaus(&i, &c).unwrap().is_some());
        let (i, c) = setup("y^3", "[y^3]");
        assert!(verify_tschirnhaus(&i, &c).unwrap().is_some());
    }

    #[test]
    fn twisted_power() {
        let (i, c) = setup("(x + y^2)^5 + y^11", "[x^5, y^10]");
        assert!(verify_tschirnhaus(&i, &c).unwrap().is_none());
        let (i, c) = setup("(x + y^2)^5 + y^11", "[x^5, y^11]");
        assert_eq!(verify_tschirnhaus(&i, &c).unwrap_err(), Error::Inadmissible);
        let (i, c) = setup("(x + y^2)^5 + y^11", "[(x + y^2)^5, y^11]");
        assert!(verify_tschirnhaus(&i, &c).unwrap().is_some());
    }

    #[test]
    fn make_completes_the_power() {
        let (i, c) = setup("(x + y^2)^5 + y^10", "[x^5, y^10]");
        assert!(verify_tschirnhaus(&i, &c).unwrap().is_none());
        let cert = make_tschirnhaus(&i, &c).unwrap();
        assert_eq!(format!("{}", cert.presentation), "[(x + y^2)^5, y^10]");
        assert!(cert.presentation.same_center(&c).unwrap());
        // Admissible but not canonical: no Tschirnhaus presentation exists.
        let (i, c) = setup("(x + y^2)^5 + y^11", "[x^5, y^10]");
        assert_eq!(make_tschirnhaus(&i, &c).unwrap_err(), Error::FailsToCertify);
    }

    #[test]
    fn make_on_canonical_centers() {
        for s in ["x^5 + x^3*y^3 + y^7", "x^2 + y^3", "x^2*y + z^4, y^3", "x*y + z^3"] {
            let a = Ambient::new(collect_variables(s).unwrap());
            let i = parse_ideal(s, &a, 64).unwrap();
            let c = multiorder(&i).unwrap().center;
            let cert = make_tschirnhaus(&i, &c).unwrap();
            assert!(cert.presentation.same_center(&c).unwrap(), "{s}");
        }
    }

    #[test]
    fn shear_needed_for_equal_weights() {
        // t(f) = x*y has no pure power until the block is sheared.
        let (i, c) = setup("x*y", "[x^2, y^2]");
        assert!(verify_tschirnhaus(&i, &c).unwrap().is_none());
        let cert = make_tschirnhaus(&i, &c).unwrap();
        assert!(cert.presentation.same_center(&c).unwrap());
    }
}
