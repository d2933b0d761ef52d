//! Re-running a recorded trace step by step and comparing it with what was recorded.

use dream_core::blowup::{blow_up, TransformKind};
use dream_core::center::CenterPresentation;
use dream_core::invariant::{multiorder_with, Limits};
use dream_core::parse::parse_ideal;
use dream_core::{Ambient, Error, PolyIdeal};
use serde_json::Value;

use crate::encode;

/// The result of a replay: how many steps were re-run and what disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReplayReport {
    pub steps: usize,
    pub charts: usize,
    pub mismatches: Vec<String>,
}

impl ReplayReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn malformed(what: &str) -> Error {
    Error::Parse { position: 0, message: format!("malformed trace: {what}") }
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>, Error> {
    v.as_array()
        .ok_or_else(|| malformed(what))?
        .iter()
        .map(|s| s.as_str().map(str::to_string).ok_or_else(|| malformed(what)))
        .collect()
}

fn ideal_of(v: &Value, ambient: &Ambient, cap: u32, what: &str) -> Result<PolyIdeal, Error> {
    let gens = strings(v, what)?;
    parse_ideal(&format!("({})", gens.join(", ")), ambient, cap)
}

/// Replays every step of a trace in the JSON shape produced by `principalize` or
/// `embed-resolve`: recomputes the invariant and the blowup of each recorded input and
/// compares the invariant, the center, the root and every chart transform.
pub fn replay(trace: &Value, cap: u32) -> Result<ReplayReport, Error> {
    let limits = Limits::with_degree_cap(cap);
    let kind = match trace["status"].as_str() {
        Some("resolved") | Some("generic-point-stop") => TransformKind::Strict,
        Some(_) => TransformKind::Controlled,
        None => return Err(malformed("status")),
    };
    let steps = trace["steps"].as_array().ok_or_else(|| malformed("steps"))?;
    let mut report = ReplayReport::default();
    for step in steps {
        let label = step["label"].as_str().unwrap_or("?");
        let ambient = Ambient::new(strings(&step["variables"], "variables")?);
        let input = ideal_of(&step["input_ideal"], &ambient, cap, "input_ideal")?;
        let inv = multiorder_with(&input, &limits)?;
        if encode::mord(&inv.mord) != step["mord"] {
            report.mismatches.push(format!("{label}: mord {} recorded as {}", encode::mord(&inv.mord), step["mord"]));
        }
        let recorded = step["center"].as_str().ok_or_else(|| malformed("center"))?;
        let center = CenterPresentation::parse(recorded, &ambient, cap)?;
        if !inv.center.same_center(&center)? {
            report.mismatches.push(format!("{label}: center {} recorded as {recorded}", inv.center));
        }
        let redone = blow_up(&input, &inv.mord, &center, kind, &limits)?;
        if step["N"].as_u64() != Some(redone.root.into()) {
            report.mismatches.push(format!("{label}: N = {} recorded as {}", redone.root, step["N"]));
        }
        let charts = step["charts"].as_array().ok_or_else(|| malformed("charts"))?;
        if charts.len() != redone.charts.len() {
            report.mismatches.push(format!("{label}: {} charts recorded as {}", redone.charts.len(), charts.len()));
        }
        for (rec, json) in redone.charts.iter().zip(charts) {
            let expected = ideal_of(&json["transform"], rec.chart.ambient(), cap, "transform")?;
            if expected != rec.transform {
                report.mismatches.push(format!(
                    "{label}: chart {} transform {} recorded as {expected}",
                    rec.chart.label(),
                    rec.transform
                ));
            }
            report.charts += 1;
        }
        report.steps += 1;
    }
    Ok(report)
}
