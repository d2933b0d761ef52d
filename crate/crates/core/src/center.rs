//! Weighted centers `[s_1, …, s_c, t_1^{d_1}, …, t_n^{d_n}]` on polynomial coordinates.
//!
//! A center stores its coordinates `u_k` as polynomials in the ambient variables, each with
//! a lead variable. The inverse coordinate change `σ` rewrites a polynomial so that the lead
//! variable of `u_k` stands for `u_k` itself; valuations and leading terms are read off the
//! rewritten polynomial term by term.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mord::{is_in_mord, LatticeIdeal, MultiOrder};
use crate::parse::parse_center_items;
use crate::poly::{Ambient, ExponentVector, PolyIdeal, Polynomial, Substitution};
use crate::rational::{ceil_u32, Extended, Rational};
use crate::series::{invert_coordinates, CoordinateInverse};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterPresentation {
    ambient: Ambient,
    coords: Vec<Polynomial>,
    leads: Vec<usize>,
    exponents: Vec<Rational>,
    s_count: usize,
    inverse: CoordinateInverse,
    cap: u32,
}

fn is_triangular_in(c: &Polynomial, v: usize) -> bool {
    c.terms().all(|(e, _)| e.get(v) == 0 || (e.get(v) == 1 && e.degree() == 1))
}

/// Picks lead variables so that the lead block of the linear parts is invertible,
/// preferring variables in which the coordinate is triangular.
fn pick_leads(ambient: &Ambient, coords: &[Polynomial]) -> Result<Vec<usize>> {
    let n = ambient.len();
    let mut pivots: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut leads = Vec::new();
    for c in coords {
        let mut row = c.linear_part();
        for (p, prow) in &pivots {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for j in 0..n {
                    row[j] = &row[j] - &prow[j] * &f;
                }
            }
        }
        let candidates: Vec<usize> = (0..n).filter(|&j| !row[j].is_zero()).collect();
        let lead = candidates
            .iter()
            .copied()
            .find(|&j| is_triangular_in(c, j))
            .or_else(|| candidates.first().copied())
            .ok_or_else(|| {
                Error::Unrepresentable("center coordinates are not part of a coordinate system".to_string())
            })?;
        let inv = row[lead].recip();
        let prow: Vec<Rational> = row.iter().map(|q| q * &inv).collect();
        pivots.push((lead, prow));
        leads.push(lead);
    }
    Ok(leads)
}

fn format_exponent(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.is_one() {
        Ok(())
    } else if q.is_integer() {
        write!(f, "^{q}")
    } else {
        write!(f, "^({q})")
    }
}

/// Leading-term data of an admissible ideal: the basis monomials on the face `ν = 1` and,
/// for each generator, its coefficients on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    /// Exponents over the center coordinates.
    pub basis: Vec<ExponentVector>,
    /// `rows[g][b]`: coefficient of basis monomial `b` in generator `g`, a polynomial in the
    /// variables off the center.
    pub rows: Vec<Vec<Polynomial>>,
}

impl LeadingTerm {
    /// Basis monomials carrying a nonzero coefficient in some generator.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(b, _)| self.rows.iter().any(|r| !r[*b].is_zero()))
            .map(|(_, e)| e.clone())
            .collect()
    }

    /// Rank over ℚ of the coefficient vectors evaluated at the origin.
    pub fn rank_at_origin(&self) -> usize {
        let mut rows: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Polynomial::constant_term).collect())
            .collect();
        let cols = self.basis.len();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
            rows.swap(rank, p);
            let inv = rows[rank][c].recip();
            let pivot: Vec<Rational> = rows[rank].iter().map(|q| q * &inv).collect();
            for r in 0..rows.len() {
                if r != rank && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for k in 0..cols {
                        rows[r][k] = &rows[r][k] - &pivot[k] * &f;
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }
}

impl CenterPresentation {
    fn build(
        ambient: &Ambient,
        coords: Vec<Polynomial>,
        exponents: Vec<Rational>,
        leads: Option<Vec<usize>>,
        cap: u32,
    ) -> Result<Self> {
        if coords.len() != exponents.len() {
            return Err(Error::ArityMismatch { expected: coords.len(), found: exponents.len() });
        }
        if coords.iter().any(|c| c.ambient() != ambient) {
            return Err(Error::AmbientMismatch);
        }
        if exponents.iter().any(|q| *q < Rational::one()) {
            return Err(Error::InvalidMultiOrder("center exponents must be at least 1".to_string()));
        }
        if exponents.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMultiOrder("center exponents must be weakly increasing".to_string()));
        }
        let leads = match leads {
            Some(l) => l,
            None => pick_leads(ambient, &coords)?,
        };
        let d_max = exponents.last().cloned().unwrap_or_else(Rational::one);
        let inverse = invert_coordinates(ambient, &coords, &leads, ceil_u32(&d_max) + 1, cap)?;
        let s_count = exponents.iter().take_while(|q| q.is_one()).count();
        Ok(CenterPresentation { ambient: ambient.clone(), coords, leads, exponents, s_count, inverse, cap })
    }

    /// A center from coordinate polynomials. Exponents must be weakly increasing; t-block
    /// items with exponent 1 join the s-block.
    pub fn from_coordinates(
        ambient: &Ambient,
        s_block: Vec<Polynomial>,
        t_block: Vec<(Polynomial, Rational)>,
        cap: u32,
    ) -> Result<Self> {
        let mut coords = s_block;
        let mut exponents: Vec<Rational> = coords.iter().map(|_| Rational::one()).collect();
        for (c, q) in t_block {
            coords.push(c);
            exponents.push(q);
        }
        Self::build(ambient, coords, exponents, None, cap)
    }

    /// A center from coordinates and weakly increasing exponents; leads are chosen.
    pub fn with_exponents(
        ambient: &Ambient,
        coords: Vec<Polynomial>,
        exponents: Vec<Rational>,
        cap: u32,
    ) -> Result<Self> {
        Self::build(ambient, coords, exponents, None, cap)
    }

    /// Like [`from_coordinates`](Self::from_coordinates) with prescribed lead variables.
    pub fn with_leads(
        ambient: &Ambient,
        coords: Vec<Polynomial>,
        exponents: Vec<Rational>,
        leads: Vec<usize>,
        cap: u32,
    ) -> Result<Self> {
        Self::build(ambient, coords, exponents, Some(leads), cap)
    }

    /// A center on plain variables.
    pub fn aligned(ambient: &Ambient, s_vars: &[usize], t: &[(usize, Rational)], cap: u32) -> Result<Self> {
        let s = s_vars.iter().map(|&i| Polynomial::var(ambient, i)).collect();
        let t = t.iter().map(|(i, q)| (Polynomial::var(ambient, *i), q.clone())).collect();
        Self::from_coordinates(ambient, s, t, cap)
    }

    /// Parses `[x^5, y^(15/2)]` or `[s | (x + y^2)^5]`.
    pub fn parse(text: &str, ambient: &Ambient, cap: u32) -> Result<Self> {
        let items = parse_center_items(text, ambient, cap)?;
        Self::from_coordinates(ambient, items.s_block, items.t_block, cap)
    }

    /// The empty center.
    pub fn empty(ambient: &Ambient) -> Self {
        Self::build(ambient, Vec::new(), Vec::new(), Some(Vec::new()), crate::DEFAULT_DEGREE_CAP)
            .expect("empty center")
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn degree_cap(&self) -> u32 {
        self.cap
    }

    pub fn coordinates(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn leads(&self) -> &[usize] {
        &self.leads
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn s_count(&self) -> usize {
        self.s_count
    }

    /// `d` of the t-block, all entries > 1.
    pub fn t_exponents(&self) -> MultiOrder {
        MultiOrder::new(self.exponents[self.s_count..].to_vec()).expect("validated exponents")
    }

    /// `(1^c, d)`.
    pub fn multiorder(&self) -> MultiOrder {
        MultiOrder::new(self.exponents.clone()).expect("validated exponents")
    }

    pub fn is_integral(&self) -> bool {
        is_in_mord(&self.multiorder())
    }

    /// Weights `1/e_k` of the coordinates.
    pub fn weights(&self) -> Vec<Rational> {
        self.exponents.iter().map(|q| q.recip()).collect()
    }

    pub fn inverse(&self) -> &CoordinateInverse {
        &self.inverse
    }

    /// Whether every coordinate is a plain variable.
    pub fn is_aligned(&self) -> bool {
        self.coords.iter().zip(&self.leads).all(|(c, &l)| *c == Polynomial::var(&self.ambient, l))
    }

    /// Variables that are not lead variables of the center.
    pub fn free_variables(&self) -> Vec<usize> {
        (0..self.ambient.len()).filter(|i| !self.leads.contains(i)).collect()
    }

    /// `ν` of a monomial written in aligned coordinates.
    pub fn aligned_weight(&self, e: &ExponentVector) -> Rational {
        self.leads
            .iter()
            .zip(&self.exponents)
            .fold(Rational::zero(), |acc, (&l, q)| acc + Rational::from_integer(e.get(l).into()) / q)
    }

    /// Exponent over the center coordinates of an aligned monomial.
    pub fn center_part(&self, e: &ExponentVector) -> ExponentVector {
        ExponentVector::new(self.leads.iter().map(|&l| e.get(l)).collect())
    }

    /// The aligned monomial for an exponent over the center coordinates.
    pub fn aligned_exponent(&self, a: &ExponentVector) -> ExponentVector {
        let mut e = ExponentVector::zeros(self.ambient.len());
        for (k, &l) in self.leads.iter().enumerate() {
            e.set(l, a.get(k));
        }
        e
    }

    /// `σ(f)` in aligned coordinates, correct below total degree `precision` for series changes.
    fn aligned_at(&self, f: &Polynomial, precision: u32) -> Result<(Polynomial, Option<u32>)> {
        if self.inverse.is_exact() {
            return Ok((self.inverse.apply(f, self.cap)?, None));
        }
        let inv = invert_coordinates(&self.ambient, &self.coords, &self.leads, precision, self.cap)?;
        Ok((inv.apply(f, self.cap)?, inv.precision()))
    }

    /// `σ(f)` in aligned coordinates.
    ///
    /// For a series change the result is truncated; see [`CoordinateInverse::precision`].
    pub fn to_aligned(&self, f: &Polynomial) -> Result<Polynomial> {
        self.inverse.apply(f, self.cap)
    }

    fn min_weight(&self, g: &Polynomial) -> Extended {
        g.terms()
            .map(|(e, _)| self.aligned_weight(e))
            .min()
            .map_or(Extended::Infinite, Extended::Finite)
    }

    /// Known minimum of `ν` together with a lower bound on every term not yet computed.
    fn nu_bounds(&self, f: &Polynomial, precision: u32) -> Result<(Extended, Option<Rational>)> {
        let (g, p) = self.aligned_at(f, precision)?;
        let m = self.min_weight(&g);
        let bound = p.map(|p| {
            if self.free_variables().is_empty() {
                let d_max = self.exponents.last().cloned().unwrap_or_else(Rational::one);
                Rational::from_integer(p.into()) / d_max
            } else {
                Rational::zero()
            }
        });
        Ok((m, bound))
    }

    fn precisions(&self) -> impl Iterator<Item = u32> {
        let d_max = self.exponents.last().cloned().unwrap_or_else(Rational::one);
        let start = ceil_u32(&d_max) + 1;
        let cap = self.cap.max(start);
        core::iter::successors(Some(start), move |&p| (p < cap).then(|| (2 * p).min(cap)))
    }

    /// The weight `1/d_k` when `f` is a nonzero multiple of the coordinate `u_k`.
    fn coordinate_weight(&self, f: &Polynomial) -> Option<Rational> {
        let (e, c) = f.leading_term()?;
        self.coords.iter().zip(&self.exponents).find_map(|(u, d)| {
            let (eu, cu) = u.leading_term()?;
            (eu == e && u.scale(&(c / cu)) == *f).then(|| d.recip())
        })
    }

    /// `ν_J(f)`: the minimal weight of a term of `f` in aligned coordinates; `+∞` for zero.
    pub fn nu(&self, f: &Polynomial) -> Result<Extended> {
        if f.is_zero() {
            return Ok(Extended::Infinite);
        }
        if let Some(w) = self.coordinate_weight(f) {
            return Ok(Extended::Finite(w));
        }
        let mut last = 0;
        for p in self.precisions() {
            last = p;
            let (m, bound) = self.nu_bounds(f, p)?;
            match bound {
                None => return Ok(m),
                Some(b) => {
                    if m == Extended::zero() || m < Extended::Finite(b) {
                        return Ok(m);
                    }
                }
            }
        }
        Err(Error::PrecisionExhausted { precision: last })
    }

    /// Whether `ν_J(f) ≥ r`.
    pub fn nu_at_least(&self, f: &Polynomial, r: &Rational) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if let Some(w) = self.coordinate_weight(f) {
            return Ok(w >= *r);
        }
        let r = Extended::Finite(r.clone());
        let mut last = 0;
        for p in self.precisions() {
            last = p;
            let (m, bound) = self.nu_bounds(f, p)?;
            match bound {
                None => return Ok(m >= r),
                Some(b) => {
                    if m < r && (m == Extended::zero() || m < Extended::Finite(b.clone())) {
                        return Ok(false);
                    }
                    if m >= r && Extended::Finite(b) >= r {
                        return Ok(true);
                    }
                }
            }
        }
        Err(Error::PrecisionExhausted { precision: last })
    }

    /// `I ⊆ J`: `ν_J ≥ 1` on every generator.
    pub fn is_admissible(&self, ideal: &PolyIdeal) -> Result<bool> {
        if ideal.ambient() != &self.ambient {
            return Err(Error::AmbientMismatch);
        }
        let one = Rational::one();
        for g in ideal.generators() {
            if !self.nu_at_least(g, &one)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minimal generators of `I_d` over the t-block, as exponents over the t-coordinates.
    pub fn lattice_generators(&self) -> Vec<ExponentVector> {
        if self.s_count == self.coords.len() {
            return Vec::new();
        }
        LatticeIdeal::new(&self.t_exponents())
            .expect("t-block exponents are positive")
            .minimal_generators()
            .to_vec()
    }

    /// The monomial ideal `(s, u^{I_d})` in the center coordinates, mapped back to the
    /// ambient variables.
    pub fn rounding(&self) -> Result<PolyIdeal> {
        let mut gens: Vec<Polynomial> = self.coords[..self.s_count].to_vec();
        let t = &self.coords[self.s_count..];
        for a in self.lattice_generators() {
            let mut g = Polynomial::one(&self.ambient);
            for (k, u) in t.iter().enumerate() {
                if a.get(k) > 0 {
                    g = g.try_mul(&u.pow(a.get(k), self.cap)?)?;
                }
            }
            if g.total_degree().unwrap_or(0) > self.cap {
                return Err(Error::DegreeCap { cap: self.cap });
            }
            gens.push(g);
        }
        PolyIdeal::new(&self.ambient, gens)
    }

    /// All exponents over the center coordinates with `a·w = 1`.
    pub fn leading_term_basis(&self) -> Vec<ExponentVector> {
        let w = self.weights();
        let mut out = Vec::new();
        fn rec(
            j: usize,
            rem: Rational,
            w: &[Rational],
            e: &[Rational],
            cur: &mut Vec<u32>,
            out: &mut Vec<ExponentVector>,
        ) {
            if j == w.len() {
                if rem.is_zero() {
                    out.push(ExponentVector::new(cur.clone()));
                }
                return;
            }
            let max = crate::rational::floor_u32(&(&rem * &e[j]));
            for a in (0..=max).rev() {
                cur.push(a);
                rec(j + 1, &rem - Rational::from_integer(a.into()) * &w[j], w, e, cur, out);
                cur.pop();
            }
        }
        rec(0, Rational::one(), &w, &self.exponents, &mut Vec::new(), &mut out);
        out
    }

    /// Basis monomials as ambient polynomials in aligned coordinates.
    pub fn basis_monomials(&self) -> Vec<Polynomial> {
        self.leading_term_basis()
            .iter()
            .map(|a| Polynomial::monomial(&self.ambient, self.aligned_exponent(a), Rational::one()))
            .collect()
    }

    /// Coefficients of `f` on the leading-term basis. Fails when `ν_J(f) < 1`.
    pub fn leading_coefficients(&self, f: &Polynomial) -> Result<Vec<Polynomial>> {
        let basis = self.leading_term_basis();
        let p = self.precisions().next().unwrap_or(self.cap);
        let (g, _) = self.aligned_at(f, p)?;
        let one = Rational::one();
        let mut rows: Vec<Polynomial> = basis.iter().map(|_| Polynomial::zero(&self.ambient)).collect();
        for (e, c) in g.terms() {
            let w = self.aligned_weight(e);
            if w < one {
                return Err(Error::Inadmissible);
            }
            if w == one {
                let a = self.center_part(e);
                let idx = basis.iter().position(|b| *b == a).expect("weight-one exponent is a basis element");
                let mut rest = e.clone();
                for &l in &self.leads {
                    rest.set(l, 0);
                }
                rows[idx] = &rows[idx] + &Polynomial::monomial(&self.ambient, rest, c.clone());
            }
        }
        Ok(rows)
    }

    /// The leading term `t_J(I)` of an admissible ideal.
    pub fn leading_term(&self, ideal: &PolyIdeal) -> Result<LeadingTerm> {
        if ideal.ambient() != &self.ambient {
            return Err(Error::AmbientMismatch);
        }
        let basis = self.leading_term_basis();
        let rows = ideal
            .generators()
            .iter()
            .map(|g| self.leading_coefficients(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(LeadingTerm { basis, rows })
    }

    /// Whether two presentations define the same center.
    pub fn same_center(&self, other: &CenterPresentation) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        if self.exponents != other.exponents {
            return Ok(false);
        }
        for (a, b) in [(self, other), (other, self)] {
            for (u, e) in a.coords.iter().zip(&a.exponents) {
                if !b.nu_at_least(u, &e.recip())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The center with coordinates `u_k ∘ σ`.
    pub fn substitute(&self, sub: &Substitution) -> Result<CenterPresentation> {
        let coords = self
            .coords
            .iter()
            .map(|u| sub.apply(u, self.cap))
            .collect::<Result<Vec<_>>>()?;
        Self::build(sub.target(), coords, self.exponents.clone(), None, self.cap)
    }

    /// The same center in a larger ambient containing these variables by name.
    pub fn embed(&self, target: &Ambient) -> Result<CenterPresentation> {
        let coords = self.coords.iter().map(|u| u.embed(target)).collect::<Result<Vec<_>>>()?;
        let leads = self
            .leads
            .iter()
            .map(|&l| target.index_of(self.ambient.name(l)).ok_or(Error::AmbientMismatch))
            .collect::<Result<Vec<_>>>()?;
        Self::build(target, coords, self.exponents.clone(), Some(leads), self.cap)
    }

    /// Formats one coordinate with its exponent, e.g. `y^(15/2)` or `(x + y^2)^5`.
    pub fn item_string(&self, k: usize) -> alloc::string::String {
        struct Item<'a>(&'a CenterPresentation, usize);
        impl fmt::Display for Item<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let (c, k) = (self.0, self.1);
                let u = &c.coords[k];
                let q = &c.exponents[k];
                if u.num_terms() == 1 {
                    write!(f, "{u}")?;
                } else {
                    write!(f, "({u})")?;
                }
                format_exponent(f, q)
            }
        }
        alloc::format!("{}", Item(self, k))
    }
}

impl fmt::Display for CenterPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for k in 0..self.coords.len() {
            if k > 0 {
                if k == self.s_count {
                    f.write_str(" | ")?;
                } else {
                    f.write_str(", ")?;
                }
            }
            f.write_str(&self.item_string(k))?;
        }
        f.write_str("]")
    }
}
