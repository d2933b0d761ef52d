//! The multiorder `mord(I)` and canonical center of an ideal at the origin.
//!
//! The computation runs on marked ideal collections `{(J_k, w_k)}`. At each level the order
//! `d_i = min ord(J_k)/w_k` is read off, a maximal contact `t_i` is taken from
//! `D^{e-1}(J_k)` of a minimizing entry (`e = ord J_k`), and the next collection is
//!
//! ```text
//! M_{i+1} = { (D^j(J_k)|_{t_i = 0}, w_k - j/d_i) : w_k - j/d_i > 0 }.
//! ```
//!
//! The recursion stops when every entry restricts to zero.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::center::CenterPresentation;
use crate::error::{Error, Result};
use crate::mord::{is_in_mord, MultiOrder};
use crate::poly::{Ambient, ExponentVector, LinearSpan, Order, PolyIdeal, Polynomial, Substitution, DEFAULT_DEGREE_CAP};
use crate::rational::{Extended, Rational};
use crate::series::solve_for_leads;

/// Resource bounds for the invariant computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub degree_cap: u32,
    /// Initial truncation order for non-polynomial restrictions; doubled on demand up to
    /// `degree_cap`.
    pub precision: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { degree_cap: DEFAULT_DEGREE_CAP, precision: 16 }
    }
}

impl Limits {
    pub fn with_degree_cap(cap: u32) -> Self {
        Limits { degree_cap: cap, precision: 16.min(cap) }
    }
}

/// A list of `(ideal, weight)` pairs with positive weights; zero ideals are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedIdealCollection {
    ambient: Ambient,
    entries: Vec<(PolyIdeal, Rational)>,
}

impl MarkedIdealCollection {
    pub fn new(ambient: &Ambient, entries: Vec<(PolyIdeal, Rational)>) -> Result<Self> {
        if entries.iter().any(|(i, _)| i.ambient() != ambient) {
            return Err(Error::AmbientMismatch);
        }
        if entries.iter().any(|(_, w)| *w <= Rational::zero()) {
            return Err(Error::InvalidMultiOrder("weights must be positive".to_string()));
        }
        Ok(MarkedIdealCollection {
            ambient: ambient.clone(),
            entries: entries.into_iter().filter(|(i, _)| !i.is_zero()).collect(),
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn entries(&self) -> &[(PolyIdeal, Rational)] {
        &self.entries
    }

    /// `min ord(J_k)/w_k`; `+∞` when empty and `0` when some entry is a unit.
    pub fn delta(&self) -> Extended {
        self.entries
            .iter()
            .filter_map(|(i, w)| match i.order() {
                Order::Finite(o) => Some(Rational::from_integer(o.into()) / w),
                Order::Infinite => None,
            })
            .min()
            .map_or(Extended::Infinite, Extended::Finite)
    }
}

/// `delta` of a marked collection.
pub fn delta(m: &MarkedIdealCollection) -> Extended {
    m.delta()
}

/// One level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactStep {
    /// 1-based level.
    pub level: usize,
    pub order: Rational,
    /// The normalized order-one element of the derivative ideal.
    pub contact: Polynomial,
    /// Center coordinate recorded for this level.
    pub coordinate: Polynomial,
    pub lead: usize,
    /// `lead ↦ φ(others)` parametrising the contact hypersurface.
    pub restriction: Substitution,
    /// Whether `restriction` is an exact polynomial map.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub mord: MultiOrder,
    pub center: CenterPresentation,
    pub chain: Vec<ContactStep>,
}

fn is_triangular_in(c: &Polynomial, v: usize) -> bool {
    c.terms().all(|(e, _)| e.get(v) == 0 || (e.get(v) == 1 && e.degree() == 1))
}

/// An element of the ℚ-span of `gens` of the form `x_v + (terms free of x_v)`, if any.
fn triangular_combination(gens: &[Polynomial], v: usize) -> Option<Polynomial> {
    let n = gens.first()?.ambient().len();
    let unit = ExponentVector::unit(n, v);
    let bad = |g: &Polynomial| g.filter_terms(|e| e.get(v) > 0 && *e != unit);
    let mut rows: BTreeMap<ExponentVector, (Polynomial, Polynomial)> = BTreeMap::new();
    for g in gens {
        let (mut b, mut f) = (bad(g), g.clone());
        loop {
            let Some((e, c)) = b.terms().next_back().map(|(e, c)| (e.clone(), c.clone())) else {
                let c = f.coefficient(&unit);
                if !c.is_zero() {
                    return Some(f.scale(&c.recip()));
                }
                break;
            };
            match rows.get(&e) {
                Some((rb, rf)) => {
                    b = &b - &rb.scale(&c);
                    f = &f - &rf.scale(&c);
                }
                None => {
                    let inv = c.recip();
                    rows.insert(e, (b.scale(&inv), f.scale(&inv)));
                    break;
                }
            }
        }
    }
    None
}

/// Picks an order-one element in scan order, preferring one that is linear in some
/// variable and free of it otherwise. Returns the normalized element and its lead.
fn choose_contact(gens: &[Polynomial]) -> Option<(Polynomial, usize)> {
    if let Some(n) = gens.first().map(|g| g.ambient().len()) {
        if let Some(found) = gens
            .iter()
            .filter(|g| g.order() == Order::Finite(1))
            .find_map(|g| (0..n).find(|&v| is_triangular_in(g, v) && !g.linear_part()[v].is_zero()).map(|v| (g, v)))
        {
            let c = found.0.linear_part()[found.1].recip();
            return Some((found.0.scale(&c), found.1));
        }
        if let Some(found) = (0..n).find_map(|v| triangular_combination(gens, v).map(|g| (g, v))) {
            return Some(found);
        }
    }
    let order_one: Vec<&Polynomial> = gens.iter().filter(|g| g.order() == Order::Finite(1)).collect();
    let lead_of = |g: &Polynomial, triangular: bool| {
        let lin = g.linear_part();
        (0..lin.len()).find(|&v| !lin[v].is_zero() && (!triangular || is_triangular_in(g, v)))
    };
    let (g, v) = order_one
        .iter()
        .find_map(|g| lead_of(g, true).map(|v| (*g, v)))
        .or_else(|| order_one.first().and_then(|g| lead_of(g, false).map(|v| (*g, v))))?;
    let c = g.linear_part()[v].recip();
    Some((g.scale(&c), v))
}

/// Cumulative derivative layers: `layers[j]` is the number of generators of `D^j`.
fn derivative_layers(gens: &[Polynomial], k: u32, n: usize) -> (Vec<Polynomial>, Vec<usize>) {
    let mut span = LinearSpan::new();
    let mut out = Vec::new();
    let mut frontier = Vec::new();
    for g in gens {
        if span.insert(g) {
            out.push(g.clone());
            frontier.push(g.clone());
        }
    }
    let mut ends = alloc::vec![out.len()];
    for _ in 0..k {
        let mut next = Vec::new();
        for g in &frontier {
            for i in 0..n {
                let d = g.derivative(i);
                if !d.is_zero() && span.insert(&d) {
                    out.push(d.clone());
                    next.push(d);
                }
            }
        }
        ends.push(out.len());
        frontier = next;
    }
    (out, ends)
}

/// An order-one element of `D^{d-1}(I)`, normalized so its lead variable has coefficient 1.
pub fn maximal_contact(ideal: &PolyIdeal, d: u32) -> Result<Polynomial> {
    if d == 0 {
        return Err(Error::NoContact);
    }
    let dd = ideal.derivative_ideal(d - 1);
    choose_contact(dd.generators()).map(|(t, _)| t).ok_or(Error::NoContact)
}

struct Entry {
    gens: Vec<Polynomial>,
    weight: Rational,
    /// Generators are known modulo terms of this total degree.
    precision: Option<u32>,
}

enum EntryOrder {
    Known(u32),
    AtLeast(u32),
}

impl Entry {
    fn order(&self) -> EntryOrder {
        let o = self
            .gens
            .iter()
            .map(|g| match self.precision {
                Some(p) => g.truncated(p).order(),
                None => g.order(),
            })
            .min()
            .unwrap_or(Order::Infinite);
        match (o, self.precision) {
            (Order::Finite(o), _) => EntryOrder::Known(o),
            (Order::Infinite, Some(p)) => EntryOrder::AtLeast(p),
            (Order::Infinite, None) => EntryOrder::AtLeast(u32::MAX),
        }
    }
}

fn run(ideal: &PolyIdeal, limits: &Limits, precision: u32) -> Result<InvariantResult> {
    let ambient = ideal.ambient().clone();
    let n = ambient.len();
    let cap = limits.degree_cap;
    let mut entries =
        alloc::vec![Entry { gens: ideal.generators().to_vec(), weight: Rational::one(), precision: None }];
    let mut orders: Vec<Rational> = Vec::new();
    let mut coords = Vec::new();
    let mut leads = Vec::new();
    let mut chain = Vec::new();

    while orders.len() < n {
        let mut best: Option<(Rational, usize, u32)> = None;
        let mut lower: Option<Rational> = None;
        for (k, e) in entries.iter().enumerate() {
            match e.order() {
                EntryOrder::Known(o) => {
                    let v = Rational::from_integer(o.into()) / &e.weight;
                    if best.as_ref().is_none_or(|b| v < b.0) {
                        best = Some((v, k, o));
                    }
                }
                EntryOrder::AtLeast(p) => {
                    let lb = Rational::from_integer(p.into()) / &e.weight;
                    if lower.as_ref().is_none_or(|l| lb < *l) {
                        lower = Some(lb);
                    }
                }
            }
        }
        if let Some(lb) = &lower {
            if best.as_ref().is_none_or(|b| *lb <= b.0) {
                return Err(Error::PrecisionExhausted { precision });
            }
        }
        let Some((d, k, e)) = best else { break };
        if orders.last().is_some_and(|last| d < *last) {
            return Err(Error::Internal("level orders decreased".to_string()));
        }

        let entry = &entries[k];
        let (dgens, ends) = derivative_layers(&entry.gens, e - 1, n);
        let mut scan: Vec<Polynomial> = dgens[..ends[(e - 1) as usize]].to_vec();
        if let Some(p) = entry.precision {
            let q = p.saturating_sub(e - 1);
            scan.iter_mut().for_each(|g| *g = g.truncated(q));
        }
        let (contact, lead) = choose_contact(&scan).ok_or(Error::NoContact)?;
        let phi = solve_for_leads(&ambient, core::slice::from_ref(&contact), &[lead], precision, cap)?;
        let restriction = phi.substitution().clone();
        let exact = phi.is_exact();
        let coordinate = if exact {
            &Polynomial::var(&ambient, lead) - restriction.image(lead)
        } else {
            contact.clone()
        };

        let mut next = Vec::new();
        for entry in &entries {
            let jmax = {
                // Largest j with w - j/d > 0.
                let x = &entry.weight * &d;
                let f = x.floor().to_integer();
                let f: u32 = f.try_into().unwrap_or(u32::MAX);
                if Rational::from_integer(f.into()) == x { f.saturating_sub(1) } else { f }
            };
            let (dgens, ends) = derivative_layers(&entry.gens, jmax, n);
            for j in 0..=jmax {
                let weight = &entry.weight - Rational::from_integer(j.into()) / &d;
                if weight <= Rational::zero() {
                    break;
                }
                let mut prec = entry.precision.map(|p| p.saturating_sub(j));
                let mut restricted = Vec::new();
                for g in &dgens[..ends[j as usize]] {
                    if exact {
                        restricted.push(restriction.apply(g, cap)?);
                    } else if !g.involves(lead) {
                        restricted.push(g.clone());
                    } else if entry.precision.is_none() && g.div_exact(&contact).is_some() {
                        continue;
                    } else {
                        let q = prec.map_or(precision, |p| p.min(precision));
                        prec = Some(q);
                        restricted.push(restriction.apply_truncated(g, q)?);
                    }
                }
                let mut span = LinearSpan::new();
                let mut gens = Vec::new();
                for r in restricted {
                    let r = match prec {
                        Some(p) => r.truncated(p),
                        None => r,
                    };
                    if !r.is_zero() && span.insert(&r) {
                        gens.push(r);
                    }
                }
                if !gens.is_empty() || prec.is_some() {
                    next.push(Entry { gens, weight, precision: prec });
                }
            }
        }

        chain.push(ContactStep {
            level: orders.len() + 1,
            order: d.clone(),
            contact,
            coordinate: coordinate.clone(),
            lead,
            restriction,
            exact,
        });
        orders.push(d);
        coords.push(coordinate);
        leads.push(lead);
        entries = next;
    }

    let mord = MultiOrder::new(orders.clone())?;
    if !is_in_mord(&mord) {
        return Err(Error::Internal("computed multiorder is not in Mord".to_string()));
    }
    let center = CenterPresentation::with_leads(&ambient, coords, orders, leads, cap)?;
    Ok(InvariantResult { mord, center, chain })
}

/// `mord(I)` and the canonical center, with explicit limits.
pub fn multiorder_with(ideal: &PolyIdeal, limits: &Limits) -> Result<InvariantResult> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit_at_origin() {
        return Ok(InvariantResult {
            mord: MultiOrder::zero(),
            center: CenterPresentation::empty(ideal.ambient()),
            chain: Vec::new(),
        });
    }
    let mut p = limits.precision.max(2);
    loop {
        match run(ideal, limits, p) {
            Err(Error::PrecisionExhausted { .. }) if p < limits.degree_cap => {
                p = (2 * p).min(limits.degree_cap);
            }
            other => return other,
        }
    }
}

/// `mord(I)` and the canonical center with default limits.
pub fn multiorder(ideal: &PolyIdeal) -> Result<InvariantResult> {
    multiorder_with(ideal, &Limits::default())
}

/// Checks `mord(I + (s_1, …, s_c)) = (1^c, mord(I))` in the ambient extended by `c`
/// fresh variables.
pub fn reembedding_check(ideal: &PolyIdeal, c: usize) -> Result<bool> {
    let (lhs, rhs) = reembedded_multiorders(ideal, c)?;
    Ok(lhs == rhs)
}

/// The two sides of the re-embedding identity: the computed and the predicted multiorder.
pub fn reembedded_multiorders(ideal: &PolyIdeal, c: usize) -> Result<(MultiOrder, MultiOrder)> {
    let base = ideal.ambient();
    let mut names = Vec::new();
    let mut probe = base.clone();
    for _ in 0..c {
        let name = probe.fresh_name("s");
        probe = probe.extended([name.clone()]);
        names.push(name);
    }
    let ambient = base.prepended(names.iter().cloned());
    let mut gens = ideal.embed(&ambient)?.generators().to_vec();
    for i in 0..c {
        gens.push(Polynomial::var(&ambient, i));
    }
    let big = PolyIdeal::new(&ambient, gens)?;
    let lhs = multiorder(&big)?.mord;
    let inner = multiorder(ideal)?.mord;
    let rhs = if inner.is_zero_invariant() { inner } else { inner.with_leading_ones(c) };
    Ok((lhs, rhs))
}
