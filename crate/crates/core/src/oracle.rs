//! A combinatorial cross-check of [`multiorder`](crate::invariant::multiorder) on monomial ideals.
//!
//! For monomial ideals the canonical center is a monomial center `[x_σ1^{d_1}, …]`. It is
//! the admissible one of largest multiorder. The search below walks over orderings of the
//! variables. Given a prefix, the largest feasible next entry is found by giving every
//! remaining variable the weight `1/d`: any admissible completion has weights at most that.
//! No derivatives or restrictions are involved.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::center::CenterPresentation;
use crate::error::{Error, Result};
use crate::invariant::InvariantResult;
use crate::mord::{is_in_mord, MultiOrder};
use crate::poly::{ExponentVector, PolyIdeal};
use crate::rational::Rational;

struct Search<'a> {
    gens: &'a [ExponentVector],
    n: usize,
    best: Option<(MultiOrder, Vec<usize>)>,
}

impl Search<'_> {
    fn values(&self, order: &[usize], d: &[Rational]) -> Vec<Rational> {
        self.gens
            .iter()
            .map(|e| {
                order
                    .iter()
                    .zip(d)
                    .fold(Rational::zero(), |acc, (&v, q)| acc + Rational::from_integer(e.get(v).into()) / q)
            })
            .collect()
    }

    fn offer(&mut self, order: &[usize], d: &[Rational]) {
        let m = MultiOrder::new(d.to_vec()).expect("increasing by construction");
        if self.best.as_ref().is_none_or(|(b, _)| m > *b) {
            self.best = Some((m, order.to_vec()));
        }
    }

    fn dfs(&mut self, order: &mut Vec<usize>, d: &mut Vec<Rational>) {
        let one = Rational::one();
        let vals = self.values(order, d);
        if vals.iter().all(|v| *v >= one) {
            // A proper extension compares smaller.
            self.offer(order, d);
            return;
        }
        if order.len() == self.n {
            return;
        }
        // Largest next entry compatible with some completion.
        let mut next: Option<Rational> = None;
        for (e, s) in self.gens.iter().zip(&vals) {
            if *s >= one {
                continue;
            }
            let rest: u32 = (0..self.n).filter(|v| !order.contains(v)).map(|v| e.get(v)).sum();
            if rest == 0 {
                return;
            }
            let cand = Rational::from_integer(rest.into()) / (&one - s);
            if next.as_ref().is_none_or(|x| cand < *x) {
                next = Some(cand);
            }
        }
        let Some(dn) = next else { return };
        for v in 0..self.n {
            if order.contains(&v) {
                continue;
            }
            order.push(v);
            d.push(dn.clone());
            self.dfs(order, d);
            d.pop();
            order.pop();
        }
    }
}

/// The canonical center of a monomial ideal by search over variable orders.
pub fn monomial_center_oracle(ideal: &PolyIdeal) -> Result<InvariantResult> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let gens = ideal.minimal_monomials()?;
    let ambient = ideal.ambient();
    if gens.iter().any(ExponentVector::is_zero) {
        return Ok(InvariantResult {
            mord: MultiOrder::zero(),
            center: CenterPresentation::empty(ambient),
            chain: Vec::new(),
        });
    }
    let mut search = Search { gens: &gens, n: ambient.len(), best: None };
    search.dfs(&mut Vec::new(), &mut Vec::new());
    let (mord, order) = search.best.ok_or_else(|| Error::Internal("no admissible monomial center".into()))?;
    if !is_in_mord(&mord) {
        return Err(Error::Internal("oracle maximum is not integral".into()));
    }
    let t: Vec<(usize, Rational)> = order.iter().cloned().zip(mord.entries().iter().cloned()).collect();
    let center = CenterPresentation::aligned(ambient, &[], &t, crate::DEFAULT_DEGREE_CAP)?;
    Ok(InvariantResult { mord, center, chain: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{collect_variables, parse_ideal};
    use crate::poly::Ambient;
    use alloc::format;

    fn run(s: &str) -> InvariantResult {
        let a = Ambient::new(collect_variables(s).unwrap());
        monomial_center_oracle(&parse_ideal(s, &a, 64).unwrap()).unwrap()
    }

    #[test]
    fn fractional_roundings() {
        let r = run("x^5, x^4*y^2, x^3*y^3, x^2*y^5, x*y^6, y^7");
        assert_eq!(format!("{}", r.center), "[x^5, y^7]");
        let r = run("x^5, x^4*y^2, x^3*y^3, x^2*y^5, x*y^6, y^8");
        assert_eq!(format!("{}", r.center), "[x^5, y^(15/2)]");
        let r = run("x^4, x*y^4, x^2*y*z^2");
        assert_eq!(format!("{}", r.center), "[x^4, y^(16/3), z^(32/5)]");
        assert_eq!(format!("{}", run("x^2").center), "[x^2]");
    }

    #[test]
    fn large_second_entry() {
        assert_eq!(run("x^2, x*y^10").mord, MultiOrder::from_integers(&[2, 20]).unwrap());
    }

    #[test]
    fn rejects_non_monomial() {
        let a = Ambient::new(["x", "y"]);
        let i = parse_ideal("x + y^2", &a, 64).unwrap();
        assert_eq!(monomial_center_oracle(&i).unwrap_err(), Error::NotMonomial);
    }
}
