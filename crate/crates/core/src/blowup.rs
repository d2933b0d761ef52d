//! Weighted blowups `Bl_{J^{1/N}}` chart by chart, and the principalization and
//! embedded-resolution drivers built on them.
//!
//! Charts are affine coordinate rings. The stack structure is kept as metadata: the
//! stabilizer order `w_k` of chart `k` and a `μ_{w_k}`-grading under which pulled-back
//! functions are invariant.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::center::CenterPresentation;
use crate::error::{Error, ErrorClass, Result};
use crate::invariant::{multiorder_with, Limits};
use crate::mord::{is_in_mord, MultiOrder};
use crate::poly::{Ambient, ExponentVector, PolyIdeal, Polynomial, Substitution};
use crate::rational::{ceil_u32, Rational};
use crate::roots::Univariate;

const SATURATION_ROUNDS: usize = 16;

/// The least `N` with `N/d_k ∈ ℕ` for every entry.
pub fn minimal_root(d: &MultiOrder) -> Result<u32> {
    if d.is_zero_invariant() {
        return Err(Error::InvalidRoot);
    }
    if !is_in_mord(d) {
        return Err(Error::NotInMord);
    }
    let n = d.entries().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.numer()));
    n.to_u32().ok_or(Error::DegreeCap { cap: u32::MAX })
}

fn chart_weights(center: &CenterPresentation, root: u32) -> Result<Vec<u32>> {
    center
        .exponents()
        .iter()
        .map(|d| {
            let w = Rational::from_integer(root.into()) / d;
            if w.is_integer() {
                w.to_integer().to_u32().ok_or(Error::DegreeCap { cap: u32::MAX })
            } else {
                Err(Error::InvalidRoot)
            }
        })
        .collect()
}

/// Minimal exponents `a` with `a·w ≥ r`, in lexicographically decreasing order.
pub(crate) fn minimal_at_least(w: &[Rational], r: &Rational) -> Vec<ExponentVector> {
    fn rec(j: usize, acc: Rational, w: &[Rational], r: &Rational, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if acc >= *r {
            let mut e = cur.clone();
            e.resize(w.len(), 0);
            out.push(ExponentVector::new(e));
            return;
        }
        if j == w.len() {
            return;
        }
        let max = ceil_u32(&((r - &acc) / &w[j]));
        for a in (0..=max).rev() {
            cur.push(a);
            rec(j + 1, &acc + Rational::from_integer(a.into()) * &w[j], w, r, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(0, Rational::zero(), w, r, &mut Vec::new(), &mut all);
    let mut out: Vec<ExponentVector> = Vec::new();
    for e in &all {
        if !all.iter().any(|f| f != e && f.divides(e)) && !out.contains(e) {
            out.push(e.clone());
        }
    }
    out.sort();
    out.reverse();
    out
}

/// Graded pieces `R_0, …, R_N` of the Rees algebra of `J^{1/N}`: piece `n` is generated by
/// the monomials `u^a` with `N·ν_J(u^a) ≥ n`. Exponents are over the center coordinates.
pub fn rees_generators(center: &CenterPresentation, root: u32) -> Result<Vec<Vec<ExponentVector>>> {
    if root == 0 {
        return Err(Error::InvalidRoot);
    }
    chart_weights(center, root)?;
    let w = center.weights();
    Ok((0..=root)
        .map(|n| minimal_at_least(&w, &Rational::new(n.into(), root.into())))
        .collect())
}

/// One affine chart of the weighted blowup of `J^{1/N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedChart {
    center: CenterPresentation,
    root: u32,
    index: usize,
    weights: Vec<u32>,
    target: Ambient,
    map: Substitution,
    exceptional: usize,
}

impl WeightedChart {
    /// The chart where center coordinate `index` becomes `s^{w_index}`.
    pub fn new(center: &CenterPresentation, root: u32, index: usize) -> Result<Self> {
        if index >= center.len() {
            return Err(Error::IndexOutOfRange { index, len: center.len() });
        }
        let weights = chart_weights(center, root)?;
        let source = center.ambient();
        let leads = center.leads();
        let mut names: Vec<String> = source.names().to_vec();
        let taken = |names: &[String], cand: &str| names.iter().any(|n| n == cand);
        let chart_lead = leads[index];
        let mut s_name = "s".to_string();
        if source.name(chart_lead) != "s" {
            let mut k = 1;
            while taken(&names, &s_name) {
                s_name = format!("s{k}");
                k += 1;
            }
        }
        names[chart_lead] = s_name;
        for (k, &l) in leads.iter().enumerate() {
            if k == index {
                continue;
            }
            let mut cand = format!("{}'", source.name(l));
            while taken(&names, &cand) {
                cand.push('\'');
            }
            names[l] = cand;
        }
        let target = Ambient::new(names);
        let s = Polynomial::var(&target, chart_lead);
        let mut images: Vec<Polynomial> = (0..source.len()).map(|i| Polynomial::var(&target, i)).collect();
        for (k, &l) in leads.iter().enumerate() {
            let sw = s.pow(weights[k], center.degree_cap())?;
            images[l] = if k == index { sw } else { sw.try_mul(&Polynomial::var(&target, l))? };
        }
        let map = Substitution::new(source.clone(), target.clone(), images)?;
        Ok(WeightedChart { center: center.clone(), root, index, weights, target, map, exceptional: chart_lead })
    }

    /// All charts of the blowup.
    pub fn all(center: &CenterPresentation, root: u32) -> Result<Vec<Self>> {
        (0..center.len()).map(|k| Self::new(center, root, k)).collect()
    }

    pub fn center(&self) -> &CenterPresentation {
        &self.center
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// `w_k = N/d_k`.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn stabilizer_order(&self) -> u32 {
        self.weights[self.index]
    }

    /// The chart's coordinate ring.
    pub fn ambient(&self) -> &Ambient {
        &self.target
    }

    /// Index of the exceptional coordinate `s` in the chart ring.
    pub fn exceptional_variable(&self) -> usize {
        self.exceptional
    }

    /// Aligned coordinates in terms of chart coordinates.
    pub fn substitution(&self) -> &Substitution {
        &self.map
    }

    /// Name of the variable carried by the chart coordinate, e.g. `x` for the x-chart.
    pub fn label(&self) -> &str {
        self.center.ambient().name(self.center.leads()[self.index])
    }

    /// Chart positions of the primed coordinates, with their center indices.
    pub fn fiber_variables(&self) -> Vec<(usize, usize)> {
        self.center
            .leads()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != self.index)
            .map(|(k, &l)| (k, l))
            .collect()
    }

    /// Positions of variables off the center.
    pub fn free_variables(&self) -> Vec<usize> {
        self.center.free_variables()
    }

    /// The pullback of `f` to this chart.
    pub fn pullback(&self, f: &Polynomial) -> Result<Polynomial> {
        let inv = self.center.inverse();
        if !inv.is_exact() {
            return Err(Error::Unrepresentable(
                "chart of a center whose coordinate change is not polynomial".to_string(),
            ));
        }
        let g = inv.apply(f, self.center.degree_cap())?;
        self.map.apply(&g, self.center.degree_cap())
    }

    /// `μ_{w}`-degree of a monomial in chart coordinates: `s` has degree `-1`, the primed
    /// coordinate of center index `j` has degree `w_j`.
    fn mu_degree(&self, e: &ExponentVector) -> i64 {
        let mut deg = -i64::from(e.get(self.exceptional));
        for (k, l) in self.fiber_variables() {
            deg += i64::from(self.weights[k]) * i64::from(e.get(l));
        }
        deg
    }

    /// Whether every term of every generator has `μ_{w}`-degree `shift` modulo `w`.
    pub fn is_homogeneous(&self, ideal: &PolyIdeal, shift: u32) -> bool {
        let w = i64::from(self.stabilizer_order());
        ideal
            .generators()
            .iter()
            .all(|g| g.terms().all(|(e, _)| (self.mu_degree(e) - i64::from(shift)).rem_euclid(w) == 0))
    }
}

/// `I·O(J·O)^{-1}`: pull back and divide every generator by `s^N`.
pub fn controlled_transform(ideal: &PolyIdeal, chart: &WeightedChart) -> Result<PolyIdeal> {
    if ideal.ambient() != chart.center.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let s = chart.exceptional;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| {
            chart.pullback(g)?.div_var_power(s, chart.root).ok_or(Error::InexactDivision)
        })
        .collect::<Result<Vec<_>>>()?;
    PolyIdeal::new(&chart.target, gens)
}

fn strip_s(p: &Polynomial, s: usize) -> Polynomial {
    match p.var_valuation(s) {
        Some(v) if v > 0 => p.div_var_power(s, v).expect("valuation divides"),
        _ => p.clone(),
    }
}

/// Divides out `s` from generators and from ℚ-combinations whose restrictions to `s = 0`
/// cancel, until the restrictions are linearly independent.
fn saturate(mut gens: Vec<Polynomial>, s: usize) -> Result<Vec<Polynomial>> {
    gens = gens.iter().filter(|g| !g.is_zero()).map(|g| strip_s(g, s)).collect();
    for _ in 0..SATURATION_ROUNDS {
        let mut basis: Vec<(ExponentVector, Polynomial, Polynomial)> = Vec::new();
        let mut changed = false;
        let mut next = Vec::new();
        for g in &gens {
            let mut r = g.evaluate_var(s, &Rational::zero());
            let mut comb = g.clone();
            while let Some((lead, c)) = r.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
                let Some((_, br, bg)) = basis.iter().find(|(l, _, _)| *l == lead) else { break };
                let f = c / br.coefficient(&lead);
                r = &r - &br.scale(&f);
                comb = &comb - &bg.scale(&f);
            }
            if r.is_zero() {
                changed = true;
                if !comb.is_zero() {
                    next.push(strip_s(&comb, s));
                }
            } else {
                let lead = r.leading_term().map(|(e, _)| e.clone()).expect("nonzero");
                basis.push((lead, r, comb.clone()));
                next.push(comb);
            }
        }
        gens = next;
        if !changed {
            return Ok(gens);
        }
    }
    Err(Error::SaturationUnstable)
}

/// The strict transform: pull back and saturate by the exceptional coordinate.
pub fn strict_transform(z: &PolyIdeal, chart: &WeightedChart) -> Result<PolyIdeal> {
    if z.ambient() != chart.center.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let pulled = z.generators().iter().map(|g| chart.pullback(g)).collect::<Result<Vec<_>>>()?;
    PolyIdeal::new(&chart.target, saturate(pulled, chart.exceptional)?)
}

/// Which transform a driver applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    Controlled,
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedPoint {
    /// Chart coordinates of the point.
    pub coords: Vec<Rational>,
    pub mord_after: MultiOrder,
    /// The transform with the point moved to the origin.
    pub local: PolyIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartRecord {
    pub chart: WeightedChart,
    pub transform: PolyIdeal,
    pub points: Vec<TrackedPoint>,
    /// Univariate factors on the exceptional fiber whose roots are irrational and simple;
    /// the transform has order one there.
    pub certified: Vec<Polynomial>,
    /// Whether every point of the transform on the fiber over the origin was accounted for.
    pub complete: bool,
    /// A point without a rational representative could not be certified.
    pub irrational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// Path from the original origin to the blown-up point.
    pub label: String,
    pub input: PolyIdeal,
    pub mord: MultiOrder,
    pub center: CenterPresentation,
    pub root: u32,
    pub charts: Vec<ChartRecord>,
}

/// A point where embedded resolution stops because the center contains a generic point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stop {
    pub label: String,
    pub mord: MultiOrder,
    pub center: CenterPresentation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStatus {
    Principalized,
    Resolved,
    GenericPointStop,
    ResourceCapped,
    IrrationalPoint,
}

impl TraceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceStatus::Principalized => "principalized",
            TraceStatus::Resolved => "resolved",
            TraceStatus::GenericPointStop => "generic-point-stop",
            TraceStatus::ResourceCapped => "resource-capped",
            TraceStatus::IrrationalPoint => "irrational-point",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalizationTrace {
    pub steps: Vec<Step>,
    pub stops: Vec<Stop>,
    pub status: TraceStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DriverOptions {
    pub limits: Limits,
    pub max_steps: usize,
}

impl Default for DriverOptions {
    fn default() -> Self {
        DriverOptions { limits: Limits::default(), max_steps: 24 }
    }
}

fn local_mord(local: &PolyIdeal, limits: &Limits) -> Result<MultiOrder> {
    if local.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(multiorder_with(local, limits)?.mord)
}

fn fiber_restriction(t: &PolyIdeal, chart: &WeightedChart) -> Vec<Polynomial> {
    let zero = Rational::zero();
    t.generators()
        .iter()
        .map(|g| {
            let mut r = g.evaluate_var(chart.exceptional, &zero);
            for v in chart.free_variables() {
                r = r.evaluate_var(v, &zero);
            }
            r
        })
        .collect()
}

fn univariate_gcd(restrictions: &[Polynomial], var: usize) -> Univariate {
    restrictions.iter().fold(Univariate::new(Vec::new()), |acc, r| {
        let u = Univariate::from_polynomial(r, var).expect("only the fiber variable remains");
        acc.gcd(&u)
    })
}

fn track(chart: WeightedChart, transform: PolyIdeal, mord: &MultiOrder, limits: &Limits) -> Result<ChartRecord> {
    let n = chart.target.len();
    let origin = vec![Rational::zero(); n];
    let mut points = vec![origin.clone()];
    let mut certified = Vec::new();
    let mut complete = true;
    let mut irrational = false;
    let restr = fiber_restriction(&transform, &chart);
    let fiber = chart.fiber_variables();
    let unit_on_fiber = restr.iter().any(|r| r.is_constant() && !r.is_zero());
    if !unit_on_fiber && fiber.len() >= 2 && transform.is_monomial() {
        // The local ideal only depends on which coordinates vanish, so {0, 1}-points cover the fiber.
        let fresh: Vec<usize> = fiber.iter().filter(|(j, _)| *j >= chart.index).map(|(_, v)| *v).collect();
        for mask in 1u64..(1u64 << fresh.len().min(16)) {
            let mut p = origin.clone();
            for (k, &v) in fresh.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    p[v] = Rational::one();
                }
            }
            points.push(p);
        }
        complete = fresh.len() <= 16;
    } else if !unit_on_fiber {
        if fiber.len() >= 2 {
            complete = false;
        }
        for &(j, var) in &fiber {
            // Points with a nonzero coordinate of an earlier index lie in that earlier chart.
            if j < chart.index {
                continue;
            }
            let on_axis: Vec<Polynomial> = restr
                .iter()
                .map(|r| {
                    fiber.iter().filter(|(_, v)| *v != var).fold(r.clone(), |acc, (_, v)| {
                        acc.evaluate_var(*v, &Rational::zero())
                    })
                })
                .collect();
            let g = univariate_gcd(&on_axis, var);
            if g.is_zero() {
                complete = false;
                continue;
            }
            let roots = g.rational_roots()?;
            let mut rest = g.clone();
            for r in &roots {
                for _ in 0..g.multiplicity(r) {
                    rest = rest.deflate(r);
                }
                if !r.is_zero() {
                    let mut p = origin.clone();
                    p[var] = r.clone();
                    points.push(p);
                }
            }
            if fiber.len() == 1 && rest.degree().is_some_and(|d| d > 0) {
                let principal = transform.generators().len() == 1;
                let drops = MultiOrder::ones(1) < *mord;
                if principal && drops && rest.is_squarefree() {
                    certified.push(univariate_polynomial(&chart.target, var, &rest));
                } else {
                    irrational = true;
                }
            }
        }
    }
    let mut tracked = Vec::new();
    for p in points {
        let local = PolyIdeal::new(
            &chart.target,
            transform
                .generators()
                .iter()
                .map(|g| g.translate(&p, limits.degree_cap))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let mord_after = if local.is_zero() { MultiOrder::empty() } else { local_mord(&local, limits)? };
        tracked.push(TrackedPoint { coords: p, mord_after, local });
    }
    Ok(ChartRecord { chart, transform, points: tracked, certified, complete, irrational })
}

fn univariate_polynomial(ambient: &Ambient, var: usize, u: &Univariate) -> Polynomial {
    Polynomial::from_terms(
        ambient,
        u.coefficients().iter().enumerate().map(|(k, c)| {
            let mut e = ExponentVector::zeros(ambient.len());
            e.set(var, k as u32);
            (e, c.clone())
        }),
    )
}

/// Blows up `center` (with `mord` recorded as the invariant before the blowup) and tracks
/// the chart origins and the rational points of the transform on the exceptional fiber.
pub fn blow_up(
    ideal: &PolyIdeal,
    mord: &MultiOrder,
    center: &CenterPresentation,
    kind: TransformKind,
    limits: &Limits,
) -> Result<Step> {
    let root = minimal_root(&center.multiorder())?;
    // With mord = (1, …, 1) the ideal equals its center, so the controlled transform is the
    // unit ideal even when the coordinate change has no polynomial inverse.
    let equals_center = kind == TransformKind::Controlled
        && mord.is_all_ones()
        && center.multiorder() == *mord
        && !center.inverse().is_exact();
    let mut charts = Vec::new();
    for chart in WeightedChart::all(center, root)? {
        if equals_center {
            let transform = PolyIdeal::unit(chart.ambient());
            charts.push(track(chart, transform, mord, limits)?);
            continue;
        }
        let transform = match kind {
            TransformKind::Controlled => controlled_transform(ideal, &chart)?,
            TransformKind::Strict => strict_transform(ideal, &chart)?,
        };
        charts.push(track(chart, transform, mord, limits)?);
    }
    Ok(Step {
        label: String::new(),
        input: ideal.clone(),
        mord: mord.clone(),
        center: center.clone(),
        root,
        charts,
    })
}

fn point_label(parent: &str, record: &ChartRecord, p: &TrackedPoint) -> String {
    let coords: Vec<String> = record
        .chart
        .fiber_variables()
        .iter()
        .filter(|(_, v)| !p.coords[*v].is_zero())
        .map(|(_, v)| format!("{}={}", record.chart.target.name(*v), p.coords[*v]))
        .collect();
    let here = if coords.is_empty() { "origin".to_string() } else { coords.join(",") };
    format!("{parent} > {}-chart {here}", record.chart.label())
}

fn drive(ideal: &PolyIdeal, kind: TransformKind, codim: Option<usize>, opts: &DriverOptions) -> Result<PrincipalizationTrace> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let mut queue: VecDeque<(String, PolyIdeal)> = VecDeque::new();
    queue.push_back(("origin".to_string(), ideal.clone()));
    let mut steps = Vec::new();
    let mut stops = Vec::new();
    let (mut capped, mut irrational, mut generic) = (false, false, false);
    while let Some((label, local)) = queue.pop_front() {
        if local.is_unit_at_origin() {
            continue;
        }
        let inv = match multiorder_with(&local, &opts.limits) {
            Ok(inv) => inv,
            Err(e) if e.class() == ErrorClass::Resource => {
                capped = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        if inv.mord.is_zero_invariant() {
            continue;
        }
        if let Some(c) = codim {
            if inv.center.len() <= c {
                generic |= !inv.mord.is_all_ones();
                stops.push(Stop { label, mord: inv.mord, center: inv.center });
                continue;
            }
        }
        if steps.len() >= opts.max_steps {
            capped = true;
            break;
        }
        let mut step = match blow_up(&local, &inv.mord, &inv.center, kind, &opts.limits) {
            Ok(s) => s,
            Err(e) if e.class() == ErrorClass::Resource || matches!(e, Error::Unrepresentable(_)) => {
                capped = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        step.label = label.clone();
        for rec in &step.charts {
            capped |= !rec.complete;
            irrational |= rec.irrational;
            for p in &rec.points {
                if !p.mord_after.is_zero_invariant() {
                    queue.push_back((point_label(&label, rec, p), p.local.clone()));
                }
            }
        }
        steps.push(step);
    }
    let status = if generic {
        TraceStatus::GenericPointStop
    } else if irrational {
        TraceStatus::IrrationalPoint
    } else if capped {
        TraceStatus::ResourceCapped
    } else if kind == TransformKind::Controlled {
        TraceStatus::Principalized
    } else {
        TraceStatus::Resolved
    };
    Ok(PrincipalizationTrace { steps, stops, status })
}

/// Principalizes `I` by repeated weighted blowups of the canonical center at tracked points.
pub fn principalize(ideal: &PolyIdeal, opts: &DriverOptions) -> Result<PrincipalizationTrace> {
    drive(ideal, TransformKind::Controlled, None, opts)
}

/// Embedded resolution of `Z` of codimension `codim`: blow up canonical centers of the strict
/// transforms until the center at each tracked point has `codim` coordinates.
pub fn embedded_resolve(z: &PolyIdeal, codim: usize, opts: &DriverOptions) -> Result<PrincipalizationTrace> {
    if codim == 0 {
        return Err(Error::InvalidMultiOrder("codimension must be positive".to_string()));
    }
    drive(z, TransformKind::Strict, Some(codim), opts)
}

/// Whether the invariant drops strictly at every tracked point of every step.
pub fn invariant_drop_check(trace: &PrincipalizationTrace) -> bool {
    trace
        .steps
        .iter()
        .all(|s| s.charts.iter().all(|c| c.points.iter().all(|p| p.mord_after < s.mord)))
}
