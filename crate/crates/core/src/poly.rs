//! Sparse multivariate polynomials over ℚ with named variables.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{nat, Rational};

/// Default bound on the total degree produced by powers and substitutions.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// Ordered list of variable names shared by polynomials of one ring.
#[derive(Clone, Debug)]
pub struct Ambient(Arc<Vec<String>>);

impl Ambient {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ambient(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// A name not yet used in this ring: `base`, then `base1`, `base2`, ...
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        let mut k = 1usize;
        loop {
            let candidate = alloc::format!("{base}{k}");
            if self.index_of(&candidate).is_none() {
                return candidate;
            }
            k += 1;
        }
    }

    /// This ring with extra variables appended at the end.
    pub fn extended<I, S>(&self, extra: I) -> Ambient
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names = (*self.0).clone();
        names.extend(extra.into_iter().map(Into::into));
        Ambient(Arc::new(names))
    }

    /// This ring with extra variables placed before the existing ones.
    pub fn prepended<I, S>(&self, extra: I) -> Ambient
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = extra.into_iter().map(Into::into).collect();
        names.extend(self.0.iter().cloned());
        Ambient(Arc::new(names))
    }
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ambient {}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(", "))
    }
}

/// A point of ℕⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, v: u32) {
        self.0[i] = v;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `Σ a_i · w_i`.
    pub fn dot(&self, weights: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(weights)
            .filter(|(a, _)| **a != 0)
            .map(|(a, w)| nat(*a) * w)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Graded lexicographic comparison (degree first, then lexicographic).
    pub fn cmp_grlex(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Order at the origin; the zero polynomial has infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(d) => Some(d),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(d) => write!(f, "{d}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// A polynomial over ℚ. Terms are keyed by exponent vectors; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ambient: Ambient,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(ambient: &Ambient) -> Self {
        Polynomial { ambient: ambient.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::constant(ambient, Rational::one())
    }

    pub fn constant(ambient: &Ambient, c: Rational) -> Self {
        Self::monomial(ambient, ExponentVector::zeros(ambient.len()), c)
    }

    pub fn var(ambient: &Ambient, i: usize) -> Self {
        Self::monomial(ambient, ExponentVector::unit(ambient.len(), i), Rational::one())
    }

    pub fn var_named(ambient: &Ambient, name: &str) -> Option<Self> {
        ambient.index_of(name).map(|i| Self::var(ambient, i))
    }

    pub fn monomial(ambient: &Ambient, exponent: ExponentVector, c: Rational) -> Self {
        assert_eq!(exponent.arity(), ambient.len(), "exponent arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Polynomial { ambient: ambient.clone(), terms }
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<I>(ambient: &Ambient, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(ambient);
        for (e, c) in terms {
            assert_eq!(e.arity(), ambient.len(), "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> + '_ {
        self.terms.iter()
    }

    /// Terms by increasing total degree, ties broken lexicographically with `x_1` first.
    pub fn terms_display(&self) -> Vec<(&ExponentVector, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| b.0.cmp(a.0)));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::zeros(self.ambient.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_zero)
    }

    /// A single term (including the constant 1, but not 0).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Exponent of the unique term of a monomial.
    pub fn monomial_exponent(&self) -> Option<&ExponentVector> {
        if self.is_monomial() {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    pub fn order(&self) -> Order {
        self.terms
            .keys()
            .map(ExponentVector::degree)
            .min()
            .map_or(Order::Infinite, Order::Finite)
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(i)).max()
    }

    /// Largest `k` such that `x_i^k` divides every term; `None` for zero.
    pub fn var_valuation(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(i)).min()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e.get(i) > 0)
    }

    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.ambient.len()).filter(|&i| self.involves(i)).collect()
    }

    /// Coefficients of the degree-one part, one per variable.
    pub fn linear_part(&self) -> Vec<Rational> {
        let n = self.ambient.len();
        (0..n)
            .map(|i| self.coefficient(&ExponentVector::unit(n, i)))
            .collect()
    }

    /// Terms of total degree below `precision`.
    pub fn truncated(&self, precision: u32) -> Self {
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() < precision)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter_terms<F: Fn(&ExponentVector) -> bool>(&self, keep: F) -> Self {
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ambient);
        }
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c·x^e`.
    pub fn mul_monomial(&self, e: &ExponentVector, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ambient);
        }
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.add(e), v * c)).collect(),
        }
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_grlex(b.0))
    }

    /// Scales so that the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(self * other)
    }

    fn mul_impl(&self, other: &Self, precision: Option<u32>) -> Self {
        let mut out = Polynomial::zero(&self.ambient);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                if let Some(p) = precision {
                    if e.degree() >= p {
                        continue;
                    }
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Product with terms of total degree `≥ precision` dropped.
    pub fn mul_truncated(&self, other: &Self, precision: u32) -> Self {
        self.mul_impl(other, Some(precision))
    }

    /// `self^k`, refusing results above the degree cap.
    pub fn pow(&self, k: u32, cap: u32) -> Result<Self> {
        if let Some(d) = self.total_degree() {
            if u64::from(d) * u64::from(k) > u64::from(cap) {
                return Err(Error::DegreeCap { cap });
            }
        }
        let mut acc = Polynomial::one(&self.ambient);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Polynomial::zero(&self.ambient);
        for (e, c) in &self.terms {
            let a = e.get(i);
            if a == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.set(i, a - 1);
            out.add_term(e2, c * nat(a));
        }
        out
    }

    /// Divides by `x_i^k` when every term allows it.
    pub fn div_var_power(&self, i: usize, k: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let a = e.get(i);
            if a < k {
                return None;
            }
            let mut e2 = e.clone();
            e2.set(i, a - k);
            terms.insert(e2, c.clone());
        }
        Some(Polynomial { ambient: self.ambient.clone(), terms })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() || self.ambient != d.ambient {
            return None;
        }
        let (ld, cd) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = Polynomial::zero(&self.ambient);
        while let Some((lr, cr)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let m = lr.checked_sub(&ld)?;
            let c = cr / &cd;
            r = &r - &d.mul_monomial(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Sets variable `i` to the constant `value`.
    pub fn evaluate_var(&self, i: usize, value: &Rational) -> Self {
        let mut out = Polynomial::zero(&self.ambient);
        for (e, c) in &self.terms {
            let a = e.get(i);
            let mut e2 = e.clone();
            e2.set(i, 0);
            let mut coeff = c.clone();
            if a > 0 {
                coeff *= num_traits::pow::pow(value.clone(), a as usize);
            }
            out.add_term(e2, coeff);
        }
        out
    }

    /// Value at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, a) in e.entries().iter().enumerate() {
                if *a > 0 {
                    v *= num_traits::pow::pow(point[i].clone(), *a as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Translates so that `point` moves to the origin: `x_i ↦ x_i + p_i`.
    pub fn translate(&self, point: &[Rational], cap: u32) -> Result<Self> {
        let images = (0..self.ambient.len())
            .map(|i| {
                let x = Polynomial::var(&self.ambient, i);
                &x + &Polynomial::constant(&self.ambient, point[i].clone())
            })
            .collect();
        let s = Substitution::new(self.ambient.clone(), self.ambient.clone(), images)?;
        s.apply(self, cap)
    }

    /// Re-expresses the polynomial in a ring containing all of its used variables, matching by name.
    pub fn embed(&self, target: &Ambient) -> Result<Self> {
        let map: Vec<Option<usize>> = (0..self.ambient.len())
            .map(|i| target.index_of(self.ambient.name(i)))
            .collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = ExponentVector::zeros(target.len());
            for (i, a) in e.entries().iter().enumerate() {
                if *a == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e2.set(j, *a),
                    None => {
                        return Err(Error::Unrepresentable(alloc::format!(
                            "variable {} missing from target ring",
                            self.ambient.name(i)
                        )))
                    }
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ambient == rhs.ambient, "ambient mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ambient == rhs.ambient, "ambient mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ambient == rhs.ambient, "ambient mismatch");
        self.mul_impl(rhs, None)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ambient: &Ambient, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, a) in e.entries().iter().enumerate() {
        if *a == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ambient.name(i))?;
        if *a > 1 {
            write!(f, "^{a}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms_display().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if e.is_zero() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.ambient, e)?;
            }
        }
        Ok(())
    }
}

/// A ring map sending each source variable to a polynomial in the target ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    source: Ambient,
    target: Ambient,
    images: Vec<Polynomial>,
}

impl Substitution {
    pub fn identity(ambient: &Ambient) -> Self {
        let images = (0..ambient.len()).map(|i| Polynomial::var(ambient, i)).collect();
        Substitution { source: ambient.clone(), target: ambient.clone(), images }
    }

    pub fn new(source: Ambient, target: Ambient, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::ArityMismatch { expected: source.len(), found: images.len() });
        }
        if images.iter().any(|p| p.ambient != target) {
            return Err(Error::AmbientMismatch);
        }
        Ok(Substitution { source, target, images })
    }

    /// Identity on `ambient` except for the listed variables.
    pub fn with_images(ambient: &Ambient, changes: &[(usize, Polynomial)]) -> Result<Self> {
        let mut s = Self::identity(ambient);
        for (i, p) in changes {
            if p.ambient != *ambient {
                return Err(Error::AmbientMismatch);
            }
            s.images[*i] = p.clone();
        }
        Ok(s)
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn target(&self) -> &Ambient {
        &self.target
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, p)| *p == Polynomial::var(&self.target, i))
    }

    fn apply_impl(&self, f: &Polynomial, cap: Option<u32>, precision: Option<u32>) -> Result<Polynomial> {
        if f.ambient != self.source {
            return Err(Error::AmbientMismatch);
        }
        let n = self.source.len();
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); n];
        let mut out = Polynomial::zero(&self.target);
        for (e, c) in &f.terms {
            let mut term = Polynomial::constant(&self.target, c.clone());
            for i in 0..n {
                let a = e.get(i) as usize;
                if a == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(&self.target));
                }
                while cache.len() <= a {
                    let next = match precision {
                        Some(p) => cache[cache.len() - 1].mul_truncated(&self.images[i], p),
                        None => &cache[cache.len() - 1] * &self.images[i],
                    };
                    if let (Some(cap), Some(d)) = (cap, next.total_degree()) {
                        if d > cap {
                            return Err(Error::DegreeCap { cap });
                        }
                    }
                    cache.push(next);
                }
                term = match precision {
                    Some(p) => term.mul_truncated(&cache[a], p),
                    None => &term * &cache[a],
                };
                if let (Some(cap), Some(d)) = (cap, term.total_degree()) {
                    if d > cap {
                        return Err(Error::DegreeCap { cap });
                    }
                }
            }
            for (k, v) in term.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// `f(images)`, refusing intermediate results above the degree cap.
    pub fn apply(&self, f: &Polynomial, cap: u32) -> Result<Polynomial> {
        self.apply_impl(f, Some(cap), None)
    }

    /// `f(images)` modulo terms of total degree `≥ precision`.
    pub fn apply_truncated(&self, f: &Polynomial, precision: u32) -> Result<Polynomial> {
        self.apply_impl(f, None, Some(precision))
    }

    /// First `self`, then `next`: the map `x ↦ next(self(x))`.
    pub fn then(&self, next: &Substitution, cap: u32) -> Result<Substitution> {
        let images = self
            .images
            .iter()
            .map(|p| next.apply(p, cap))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(self.source.clone(), next.target.clone(), images)
    }

    /// Like [`Substitution::then`] but truncating at the given precision.
    pub fn then_truncated(&self, next: &Substitution, precision: u32) -> Result<Substitution> {
        let images = self
            .images
            .iter()
            .map(|p| next.apply_truncated(p, precision))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(self.source.clone(), next.target.clone(), images)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (i, p) in self.images.iter().enumerate() {
            if self.source == self.target && *p == Polynomial::var(&self.target, i) {
                continue;
            }
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{} -> {}", self.source.name(i), p)?;
        }
        f.write_str("}")
    }
}

/// Row-echelon bookkeeping for ℚ-linear independence of polynomials.
#[derive(Clone, Debug, Default)]
pub(crate) struct LinearSpan {
    rows: BTreeMap<ExponentVector, Polynomial>,
}

impl LinearSpan {
    pub(crate) fn new() -> Self {
        LinearSpan { rows: BTreeMap::new() }
    }

    pub(crate) fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut r = p.clone();
        let mut bound: Option<ExponentVector> = None;
        loop {
            let lead = match &bound {
                None => r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())),
                Some(b) => r
                    .terms
                    .range(..b.clone())
                    .next_back()
                    .map(|(e, c)| (e.clone(), c.clone())),
            };
            let Some((e, c)) = lead else { break };
            match self.rows.get(&e) {
                Some(row) => {
                    r = &r - &row.scale(&c);
                }
                None => bound = Some(e),
            }
        }
        r
    }

    /// Adds `p` when it is independent of the rows so far; reports whether it was.
    pub(crate) fn insert(&mut self, p: &Polynomial) -> bool {
        let r = self.reduce(p);
        match r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            None => false,
            Some((e, c)) => {
                let row = r.scale(&c.recip());
                self.rows.insert(e, row);
                true
            }
        }
    }

    pub(crate) fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// An ideal given by a list of nonzero generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdeal {
    ambient: Ambient,
    generators: Vec<Polynomial>,
}

impl PolyIdeal {
    /// Zero generators are dropped.
    pub fn new(ambient: &Ambient, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| g.ambient != *ambient) {
            return Err(Error::AmbientMismatch);
        }
        Ok(PolyIdeal {
            ambient: ambient.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ambient: &Ambient) -> Self {
        PolyIdeal { ambient: ambient.clone(), generators: Vec::new() }
    }

    pub fn unit(ambient: &Ambient) -> Self {
        PolyIdeal { ambient: ambient.clone(), generators: vec![Polynomial::one(ambient)] }
    }

    pub fn principal(f: Polynomial) -> Self {
        let ambient = f.ambient.clone();
        PolyIdeal::new(&ambient, vec![f]).expect("single generator")
    }

    pub fn monomial(ambient: &Ambient, exponents: &[ExponentVector]) -> Self {
        PolyIdeal {
            ambient: ambient.clone(),
            generators: exponents
                .iter()
                .map(|e| Polynomial::monomial(ambient, e.clone(), Rational::one()))
                .collect(),
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn order(&self) -> Order {
        self.generators.iter().map(Polynomial::order).min().unwrap_or(Order::Infinite)
    }

    /// Whether the ideal is the unit ideal in the local ring at the origin.
    pub fn is_unit_at_origin(&self) -> bool {
        self.generators.iter().any(|g| !g.constant_term().is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Polynomial::is_monomial)
    }

    /// `I + J`.
    pub fn sum(&self, other: &PolyIdeal) -> Result<PolyIdeal> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ok(PolyIdeal { ambient: self.ambient.clone(), generators: g })
    }

    pub fn map<F>(&self, target: &Ambient, f: F) -> Result<PolyIdeal>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let gens = self.generators.iter().map(f).collect::<Result<Vec<_>>>()?;
        PolyIdeal::new(target, gens)
    }

    pub fn substitute(&self, s: &Substitution, cap: u32) -> Result<PolyIdeal> {
        self.map(s.target(), |g| s.apply(g, cap))
    }

    pub fn embed(&self, target: &Ambient) -> Result<PolyIdeal> {
        self.map(target, |g| g.embed(target))
    }

    /// Minimal monomial generators, for a monomial ideal.
    pub fn minimal_monomials(&self) -> Result<Vec<ExponentVector>> {
        let mut exps: Vec<ExponentVector> = self
            .generators
            .iter()
            .map(|g| g.monomial_exponent().cloned().ok_or(Error::NotMonomial))
            .collect::<Result<_>>()?;
        exps.sort_by(|a, b| a.cmp_grlex(b));
        exps.dedup();
        let mut kept: Vec<ExponentVector> = Vec::new();
        for e in exps {
            if !kept.iter().any(|k| k.divides(&e)) {
                kept.push(e);
            }
        }
        Ok(kept)
    }

    /// Membership of a monomial in a monomial ideal.
    pub fn contains_monomial(&self, e: &ExponentVector) -> Result<bool> {
        Ok(self.minimal_monomials()?.iter().any(|g| g.divides(e)))
    }

    /// `D^k(I)`: `I` together with all partial derivatives of its generators up to order `k`.
    ///
    /// Generators are kept in construction order and only ℚ-linearly independent ones are
    /// recorded, so the result spans the same space as the full derivative list.
    pub fn derivative_ideal(&self, k: u32) -> PolyIdeal {
        let n = self.ambient.len();
        let mut span = LinearSpan::new();
        let mut gens = Vec::new();
        let mut frontier = Vec::new();
        for g in &self.generators {
            if span.insert(g) {
                gens.push(g.clone());
                frontier.push(g.clone());
            }
        }
        for _ in 0..k {
            let mut next = Vec::new();
            for g in &frontier {
                for i in 0..n {
                    let d = g.derivative(i);
                    if !d.is_zero() && span.insert(&d) {
                        gens.push(d.clone());
                        next.push(d);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        PolyIdeal { ambient: self.ambient.clone(), generators: gens }
    }
}

impl fmt::Display for PolyIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}
