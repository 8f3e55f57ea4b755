//! Report sections as JSON values. Expressions are written in the
//! expression grammar; frame indices are 1-based.

use serde_json::{json, Map, Value};

use crate::contact::{AxiomCheck, IdentitySuite};
use crate::soliton::{CheckReport, ConformalKilling, EtaEinstein, TorseOutcome};
use crate::{Expr, Rational, StructureReport, TensorField};

pub(crate) fn expr(e: &Expr) -> Value {
    Value::String(e.to_string())
}

pub(crate) fn vector(v: &[Expr]) -> Value {
    Value::Array(v.iter().map(expr).collect())
}

pub(crate) fn matrix(t: &TensorField) -> Value {
    let d = t.dim();
    Value::Array(
        (0..d)
            .map(|i| Value::Array((0..d).map(|j| expr(t.get(&[i, j]))).collect()))
            .collect(),
    )
}

/// `-e5`, `e1 + x1*e2`, `0`.
pub(crate) fn combination(v: &[Expr]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let k = k + 1;
            if c.is_one() {
                format!("e{k}")
            } else if (-c).is_one() {
                format!("-e{k}")
            } else if c.term_count() == 1 {
                format!("{c}*e{k}")
            } else {
                format!("({c})*e{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub(crate) fn residual(t: &TensorField) -> Value {
    Value::Array(
        t.nonzero()
            .into_iter()
            .map(|(idx, v)| {
                let idx: Vec<usize> = idx.iter().map(|i| i + 1).collect();
                json!({ "index": idx, "value": expr(&v) })
            })
            .collect(),
    )
}

pub(crate) fn axiom(a: &AxiomCheck<Rational>) -> Value {
    json!({
        "id": a.id,
        "statement": a.statement,
        "holds": a.holds(),
        "residual": residual(&a.residual),
    })
}

pub(crate) fn structure(s: &StructureReport) -> Value {
    json!({
        "status": "checked",
        "almost_contact": s.almost_contact(),
        "kenmotsu": s.kenmotsu,
        "axioms": s.axioms.iter().map(axiom).collect::<Vec<_>>(),
        "alternate_phi_derivative": axiom(&s.alternate_phi_derivative),
    })
}

pub(crate) fn identities(s: &IdentitySuite<Rational>) -> Value {
    json!({
        "status": if s.informational { "informational" } else { "required" },
        "all_hold": s.all_hold(),
        "identities": s.identities.iter().map(axiom).collect::<Vec<_>>(),
    })
}

pub(crate) fn not_applicable(why: &str) -> Value {
    json!({ "status": "not_applicable", "reason": why })
}

pub(crate) fn error(msg: impl ToString) -> Value {
    json!({ "error": msg.to_string() })
}

pub(crate) fn torse(t: &TorseOutcome<Rational>) -> Value {
    match t {
        TorseOutcome::NotTorseForming => json!({ "torse_forming": false }),
        TorseOutcome::Certified(c) => json!({
            "torse_forming": true,
            "psi": expr(&c.psi),
            "theta_form": vector(&c.theta),
            "theta_of_field": expr(&c.theta_of_field),
            "subtype": c.subtype,
            "flags": c.flags(),
        }),
    }
}

pub(crate) fn conformal(c: &ConformalKilling<Rational>) -> Value {
    json!({
        "class": c.class,
        "lambda": c.lambda.as_ref().map(expr),
    })
}

pub(crate) fn eta_einstein(c: &Option<EtaEinstein<Rational>>) -> Value {
    match c {
        None => Value::Null,
        Some(c) => json!({
            "alpha": expr(&c.alpha),
            "beta": expr(&c.beta),
            "einstein": c.beta.is_zero(),
        }),
    }
}

pub(crate) fn theorem(r: &CheckReport<Rational>) -> Value {
    json!({
        "id": r.id,
        "title": r.title,
        "outcome": r.outcome,
        "hypotheses": r.hypotheses.iter().map(|(h, ok)| json!({ "name": h, "holds": ok })).collect::<Vec<_>>(),
        "comparisons": r.comparisons.iter().map(|c| json!({
            "label": c.label,
            "engine": expr(&c.engine),
            "stated": expr(&c.stated),
            "discrepancy": expr(&c.discrepancy),
            "verdict": if c.matches() { "MATCH" } else { "MISMATCH" },
            "hard": c.hard,
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

/// Indented plain-text rendering of a report tree.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::String(_) | Value::Number(_))) => Some(format!(
            "[{}]",
            a.iter().map(|x| scalar_text(x).unwrap()).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => render_map(map, depth, out),
        Value::Array(items) => {
            for item in items {
                match scalar_text(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).unwrap_or_default())),
    }
}

fn render_map(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        match scalar_text(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                render(v, depth + 1, out);
            }
        }
    }
}
