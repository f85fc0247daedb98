//! Rendering analysis results as text or JSON.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use super::analyzer::{AbstractState, AnalysisReport, Verdict};
use crate::json::object_to_json;
use crate::word::Alphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn env_json(s: &AbstractState, sigma: &Alphabet) -> Value {
    let env: Map<String, Value> = s.env.iter().map(|(k, o)| (k.clone(), object_to_json(o, sigma))).collect();
    let mut m = Map::new();
    m.insert("env".into(), Value::Object(env));
    if !s.reachable {
        m.insert("reachable".into(), Value::Bool(false));
    }
    Value::Object(m)
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::UnreachableLine(n) => json!({ "kind": "unreachable", "line": n }),
        Verdict::ProvenNonEmpty(x, n) => json!({ "kind": "proven_nonempty", "var": x, "line": n }),
        Verdict::LoopExitUnreachable(n) => json!({ "kind": "loop_exit_unreachable", "line": n }),
    }
}

pub fn report_json(r: &AnalysisReport, sigma: &Alphabet) -> Value {
    let lines: Vec<Value> = r
        .lines
        .iter()
        .map(|(n, s)| {
            let mut v = env_json(s, sigma);
            v.as_object_mut().unwrap().insert("line".into(), json!(n));
            v
        })
        .collect();
    json!({
        "lines": lines,
        "verdicts": r.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
    })
}

pub fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::UnreachableLine(n) => format!("line {n}: unreachable"),
        Verdict::ProvenNonEmpty(x, n) => format!("line {n}: {x} is never empty"),
        Verdict::LoopExitUnreachable(n) => format!("line {n}: loop never exits"),
    }
}

pub fn report_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    for (n, s) in &r.lines {
        if !s.reachable {
            let _ = writeln!(out, "{n}: unreachable");
            continue;
        }
        let _ = writeln!(out, "{n}:");
        for (x, o) in &s.env {
            let _ = writeln!(out, "  {x} = {o}");
        }
    }
    if !r.verdicts.is_empty() {
        out.push_str("verdicts:\n");
        for v in &r.verdicts {
            let _ = writeln!(out, "  {}", verdict_text(v));
        }
    }
    out
}

pub fn render_report(r: &AnalysisReport, sigma: &Alphabet, format: Format) -> String {
    match format {
        Format::Text => report_text(r),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(r, sigma)).expect("JSON values always serialize");
            s.push('\n');
            s
        }
    }
}
