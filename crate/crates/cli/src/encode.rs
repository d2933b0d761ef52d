//! JSON encodings. Rationals are strings `"p/q"` (or `"p"`), never floats.

use dream_core::blowup::{ChartRecord, PrincipalizationTrace, Step, Stop};
use dream_core::center::CenterPresentation;
use dream_core::invariant::InvariantResult;
use dream_core::tschirnhaus::TschirnhausCertificate;
use dream_core::tube::{EmbeddedTube, TubeAlgebra};
use dream_core::{Error, MultiOrder, PolyIdeal, Rational};
use serde_json::{json, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn mord(d: &MultiOrder) -> Value {
    if d.is_zero_invariant() {
        return json!(["0"]);
    }
    Value::Array(d.entries().iter().map(rational).collect())
}

pub fn ideal(i: &PolyIdeal) -> Value {
    Value::Array(i.generators().iter().map(|g| json!(g.to_string())).collect())
}

pub fn error(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}

pub fn invariant(r: &InvariantResult) -> Value {
    let chain: Vec<Value> = r
        .chain
        .iter()
        .map(|c| {
            json!({
                "level": c.level,
                "order": rational(&c.order),
                "contact": c.contact.to_string(),
                "exact": c.exact,
            })
        })
        .collect();
    json!({
        "mord": mord(&r.mord),
        "center": r.center.to_string(),
        "leading_term_basis": r.center.basis_monomials().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "chain": chain,
    })
}

pub fn certificate(c: &TschirnhausCertificate) -> Value {
    let witnesses: Vec<Value> = c
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "level": w.level,
                "element": w.element.to_string(),
                "exponent": w.exponent.entries(),
            })
        })
        .collect();
    json!({ "center": c.presentation.to_string(), "witnesses": witnesses })
}

fn chart(rec: &ChartRecord) -> Value {
    let points: Vec<Value> = rec
        .points
        .iter()
        .map(|p| json!({ "coords": p.coords.iter().map(rational).collect::<Vec<_>>(), "mord_after": mord(&p.mord_after) }))
        .collect();
    json!({
        "index": rec.chart.index(),
        "label": rec.chart.label(),
        "variables": rec.chart.ambient().names(),
        "weights": rec.chart.weights(),
        "stabilizer_order": rec.chart.stabilizer_order(),
        "substitution": rec.chart.substitution().to_string(),
        "transform": ideal(&rec.transform),
        "tracked_points": points,
        "certified_factors": rec.certified.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "complete": rec.complete,
        "irrational": rec.irrational,
    })
}

fn step(s: &Step) -> Value {
    json!({
        "label": s.label,
        "variables": s.input.ambient().names(),
        "input_ideal": ideal(&s.input),
        "mord": mord(&s.mord),
        "center": s.center.to_string(),
        "N": s.root,
        "charts": s.charts.iter().map(chart).collect::<Vec<_>>(),
    })
}

fn stop(s: &Stop) -> Value {
    json!({ "label": s.label, "mord": mord(&s.mord), "center": s.center.to_string() })
}

pub fn trace(t: &PrincipalizationTrace) -> Value {
    json!({
        "steps": t.steps.iter().map(step).collect::<Vec<_>>(),
        "stops": t.stops.iter().map(stop).collect::<Vec<_>>(),
        "status": t.status.as_str(),
    })
}

pub fn tube(t: &TubeAlgebra) -> Result<Value, Error> {
    Ok(json!({
        "base_vars": t.base(),
        "width": mord(t.width()),
        "params": t.params().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "relations": t.relations().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "rank": t.rank()?,
    }))
}

pub fn embedded_tube(v: &EmbeddedTube, center: &CenterPresentation) -> Result<Value, Error> {
    let mut out = tube(&v.algebra)?;
    out["center"] = json!(center.to_string());
    out["ideal"] = ideal(&v.ideal);
    Ok(out)
}
