//! Dense univariate polynomials over ℚ: gcds, square-freeness and rational roots.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Largest integer whose divisors are enumerated in the rational root search.
const DIVISOR_LIMIT: u64 = 1 << 40;

/// Coefficients in ascending degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Univariate(Vec<Rational>);

impl Univariate {
    pub(crate) fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Univariate(c)
    }

    /// `p` as a polynomial in variable `var`; `None` if other variables occur.
    pub(crate) fn from_polynomial(p: &Polynomial, var: usize) -> Option<Self> {
        let mut c = Vec::new();
        for (e, q) in p.terms() {
            if e.degree() != e.get(var) {
                return None;
            }
            let k = e.get(var) as usize;
            if c.len() <= k {
                c.resize(k + 1, Rational::zero());
            }
            c[k] = q.clone();
        }
        Some(Univariate::new(c))
    }

    pub(crate) fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        Univariate(self.0.iter().map(|c| c * &inv).collect())
    }

    pub(crate) fn derivative(&self) -> Self {
        Univariate::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        let inv = d.lead().recip();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().expect("nonempty") * &inv;
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] = &r[k + j] - &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Univariate::new(q), Univariate::new(r))
    }

    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Whether the polynomial has no repeated complex roots.
    pub(crate) fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub(crate) fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Removes the factor `(x - root)` once.
    pub(crate) fn deflate(&self, root: &Rational) -> Self {
        let d = Univariate::new(vec![-root.clone(), Rational::one()]);
        self.div_rem(&d).0
    }

    /// Multiplicity of `root`.
    pub(crate) fn multiplicity(&self, root: &Rational) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(root).is_zero() {
            p = p.deflate(root);
            m += 1;
        }
        m
    }

    fn integer_coefficients(&self) -> Vec<BigInt> {
        let l = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.0.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
    }

    /// The distinct rational roots, in increasing order.
    pub(crate) fn rational_roots(&self) -> Result<Vec<Rational>> {
        let mut roots = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return Ok(roots);
        }
        let mut p = self.clone();
        if p.0[0].is_zero() {
            roots.push(Rational::zero());
            while p.0[0].is_zero() {
                p = Univariate(p.0[1..].to_vec());
            }
        }
        let c = p.integer_coefficients();
        let a0 = c[0].abs();
        let an = c[c.len() - 1].abs();
        let ps = divisors(&a0)?;
        let qs = divisors(&an)?;
        for pn in &ps {
            for qd in &qs {
                for sign in [1, -1] {
                    let r = Rational::new(BigInt::from(sign) * BigInt::from(*pn), BigInt::from(*qd));
                    if !roots.contains(&r) && p.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        Ok(roots)
    }
}

fn divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .to_u64()
        .filter(|&v| v <= DIVISOR_LIMIT)
        .ok_or_else(|| Error::Unrepresentable("coefficients too large for the rational root search".to_string()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Ok(out)
}
