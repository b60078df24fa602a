//! JSON documents and plain-text tables for computed results.
//!
//! Degrees that may be infinite are written as integers when finite and as
//! the strings `"-inf"`, `"+inf"` or `">=k"` otherwise. Every table cell
//! carries a `certified` flag.

use std::fmt::Write as _;

use fihom_core::fimod::MaxDeg;
use fihom_core::ideal::{GoodIdealReport, NuValue};
use fihom_core::koszul::{RegularityReport, TorTable};
use fihom_core::loccoh::{LocCohTable, Termination};
use fihom_core::verify::{NuCertificate, NuPrediction, TheoremReport, Verdict};
use serde_json::{json, Value};

pub fn opt_deg<T: Into<i64>>(d: Option<T>) -> Value {
    match d {
        Some(v) => json!(v.into()),
        None => json!("-inf"),
    }
}

pub fn opt_usize(d: Option<usize>) -> Value {
    opt_deg(d.map(|v| v as i64))
}

pub fn maxdeg_json(m: MaxDeg) -> Value {
    match m {
        MaxDeg::NegInf => json!("-inf"),
        MaxDeg::Finite(d) => json!(d),
        MaxDeg::AtLeast(d) => json!(format!(">={d}")),
        MaxDeg::PosInf => json!("+inf"),
    }
}

pub fn nu_json(v: NuValue) -> Value {
    match v {
        NuValue::Finite(x) => json!(x),
        NuValue::Infinite => json!("+inf"),
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Uncertified => "uncertified",
    }
}

pub fn termination_json(t: Termination) -> Value {
    match t {
        Termination::SemiInduced => json!("semi-induced"),
        Termination::WindowExhausted { level } => json!(format!("window-exhausted at level {level}")),
        Termination::DepthExceeded => json!("depth-exceeded"),
    }
}

pub fn regularity_json(r: &RegularityReport) -> Value {
    json!({
        "reg": opt_deg(r.reg),
        "witnesses": r.witnesses.iter().map(|&(i, n)| json!({"i": i, "n": n})).collect::<Vec<_>>(),
    })
}

pub fn tor_json(t: &TorTable) -> Value {
    let rows: Vec<Value> = (0..=t.i_max)
        .map(|i| {
            let cells: Vec<Value> = (0..=t.window)
                .filter_map(|n| t.cell(i, n).map(|c| json!({"n": n, "dim": c.dim, "certified": c.certified})))
                .collect();
            json!({"i": i, "t": opt_usize(t.t(i)), "cells": cells})
        })
        .collect();
    json!({
        "i_max": t.i_max,
        "window": t.window,
        "valid_through": t.valid_through,
        "rows": rows,
        "regularity": regularity_json(&t.regularity()),
    })
}

pub fn loccoh_json(t: &LocCohTable) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let cells: Vec<Value> = r
                .dims
                .iter()
                .enumerate()
                .map(|(n, &d)| json!({"n": n, "dim": d, "certified": n <= r.valid_through}))
                .collect();
            json!({"i": i, "valid_through": r.valid_through, "maxdeg": maxdeg_json(r.maxdeg), "cells": cells})
        })
        .collect();
    let trace: Vec<Value> = t
        .trace
        .iter()
        .map(|s| json!({"shift": s.shift, "window": s.window, "valid_through": s.valid_through, "dims": s.module_dims}))
        .collect();
    json!({
        "rows": rows,
        "trace": trace,
        "termination": termination_json(t.termination),
        "certified": t.is_certified(),
        "depth": t.depth(),
        "max_shifted": opt_deg(t.max_shifted()),
    })
}

pub fn certificate_json(c: &NuCertificate) -> Value {
    let predicted = match c.predicted {
        NuPrediction::Equal(v) => json!(v),
        NuPrediction::AtLeast(v) => json!(format!(">={v}")),
    };
    json!({
        "n": c.n,
        "degree": c.degree,
        "predicted": predicted,
        "computed": nu_json(c.computed),
        "in_range": c.in_range,
        "holds": c.holds(),
    })
}

pub fn theorem_json(r: &TheoremReport) -> Value {
    json!({
        "verdict": verdict_str(r.verdict),
        "lhs": opt_deg(r.lhs),
        "rhs": opt_deg(r.rhs),
        "t0": opt_usize(r.t0),
        "max_shifted": opt_deg(r.max_shifted),
        "stable": r.stable.iter().map(|&(n, t)| json!({"n": n, "t": opt_usize(t)})).collect::<Vec<_>>(),
        "stabilization": r.stabilization,
        "bridge": r.bridge.iter().map(|b| json!({"n": b.n, "degree": b.degree, "module": b.module, "complex": b.complex})).collect::<Vec<_>>(),
        "nu_certificates": r.nu_certificates.iter().map(certificate_json).collect::<Vec<_>>(),
        "min_rule": r.min_rule.iter().map(|m| json!({
            "level": m.level,
            "degree": m.degree,
            "sub": nu_json(m.sub),
            "middle": nu_json(m.middle),
            "quotient": nu_json(m.quotient),
            "holds": m.holds(),
        })).collect::<Vec<_>>(),
        "notes": r.notes,
        "tor": tor_json(&r.tor),
        "loccoh": loccoh_json(&r.loccoh),
    })
}

pub fn good_ideal_json(r: &GoodIdealReport) -> Value {
    json!({
        "p": r.p,
        "field": r.field,
        "quotient_dim": r.quotient_dim,
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({"axiom": c.axiom, "detail": c.detail, "passed": c.passed})).collect::<Vec<_>>(),
    })
}

/// Row index and `(n, dim, certified)` cells.
pub type BettiRow = (usize, Vec<(usize, usize, bool)>);

/// Betti-diagram layout: one line per row `i`, column `n - i`. Zeros print
/// as `.`, uncertified cells get a trailing `?`.
pub fn betti_table(title: &str, rows: &[BettiRow]) -> String {
    let shifted: Vec<(usize, Vec<(i64, String)>)> = rows
        .iter()
        .map(|(i, cells)| {
            let entries = cells
                .iter()
                .map(|&(n, d, cert)| {
                    let mut s = if d == 0 { ".".to_string() } else { d.to_string() };
                    if !cert {
                        s.push('?');
                    }
                    (n as i64 - *i as i64, s)
                })
                .collect();
            (*i, entries)
        })
        .collect();
    let cols: Vec<i64> = shifted.iter().flat_map(|(_, e)| e.iter().map(|(c, _)| *c)).collect();
    let (Some(&lo), Some(&hi)) = (cols.iter().min(), cols.iter().max()) else {
        return format!("{title}\n  (empty)\n");
    };
    let width = shifted
        .iter()
        .flat_map(|(_, e)| e.iter().map(|(_, s)| s.len()))
        .chain((lo..=hi).map(|c| c.to_string().len()))
        .max()
        .unwrap_or(1)
        + 1;
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = write!(out, "{:>6}", "n-i");
    for c in lo..=hi {
        let _ = write!(out, "{c:>width$}");
    }
    out.push('\n');
    for (i, entries) in &shifted {
        let _ = write!(out, "{:>6}", format!("{i}:"));
        for c in lo..=hi {
            let s = entries.iter().find(|(k, _)| *k == c).map_or("", |(_, s)| s.as_str());
            let _ = write!(out, "{s:>width$}");
        }
        out.push('\n');
    }
    out
}

pub fn tor_text(t: &TorTable) -> String {
    let rows: Vec<BettiRow> = (0..=t.i_max)
        .map(|i| (i, (i..=t.window).filter_map(|n| t.cell(i, n).map(|c| (n, c.dim, c.certified))).collect()))
        .collect();
    let mut s = betti_table(&format!("Tor (window {}, valid through {})", t.window, t.valid_through), &rows);
    let _ = writeln!(s, "  reg = {}", fmt_deg(t.regularity().reg));
    s
}

pub fn loccoh_text(t: &LocCohTable) -> String {
    let rows: Vec<BettiRow> = t
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.dims.iter().enumerate().map(|(n, &d)| (n, d, n <= r.valid_through)).collect()))
        .collect();
    let mut s = betti_table("local cohomology H^i", &rows);
    for (i, r) in t.rows.iter().enumerate() {
        let _ = writeln!(s, "  h^{i} = {}", maxdeg_json(r.maxdeg).to_string().trim_matches('"'));
    }
    let _ = writeln!(s, "  termination: {}", termination_json(t.termination).as_str().unwrap_or(""));
    s
}

pub fn fmt_deg(d: Option<i64>) -> String {
    d.map_or_else(|| "-inf".to_string(), |v| v.to_string())
}

pub fn theorem_text(r: &TheoremReport) -> String {
    let mut s = tor_text(&r.tor);
    s.push_str(&loccoh_text(&r.loccoh));
    let _ = writeln!(
        s,
        "reg = {}  max(t0, max(h^i + i)) = {}  stabilization = {}",
        fmt_deg(r.lhs),
        fmt_deg(r.rhs),
        r.stabilization.map_or("-".to_string(), |v| v.to_string())
    );
    let held = r.nu_certificates.iter().filter(|c| c.in_range && c.holds()).count();
    let in_range = r.nu_certificates.iter().filter(|c| c.in_range).count();
    let _ = writeln!(s, "nu certificates: {held}/{in_range} in range hold");
    for note in &r.notes {
        let _ = writeln!(s, "note: {note}");
    }
    let _ = writeln!(s, "verdict: {}", verdict_str(r.verdict).to_uppercase());
    s
}
