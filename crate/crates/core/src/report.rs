//! JSON and text rendering of results.
//!
//! Every JSON document carries `"schema": "reesmult/1"`. Integers that fit in
//! an `i64` are JSON numbers, larger ones decimal strings; [`parse_int`] reads
//! either form back.

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use crate::dsl::Span;
use crate::rees::{ReductionInfo, ReesReport};
use crate::theorems::{CheckMode, CheckResult, CheckStatus, ExploreSummary, RingFamily};

pub const SCHEMA: &str = "reesmult/1";

pub fn int(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(n) => Value::from(n),
        Err(_) => Value::from(v.to_string()),
    }
}

pub fn uint(v: &BigUint) -> Value {
    int(&BigInt::from(v.clone()))
}

/// Inverse of [`int`]; `None` for anything that is not an integer.
pub fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// `{"schema", "command", ...fields, "timingMs"}`.
pub fn envelope(command: &str, fields: Map<String, Value>, timing_ms: u128) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), SCHEMA.into());
    out.insert("command".into(), command.into());
    out.extend(fields);
    out.insert("timingMs".into(), Value::from(timing_ms as u64));
    Value::Object(out)
}

pub fn error_json(kind: &str, message: &str, span: Option<Span>) -> Value {
    let mut err = Map::new();
    err.insert("kind".into(), kind.into());
    err.insert("message".into(), message.into());
    if let Some(s) = span {
        err.insert("line".into(), s.line.into());
        err.insert("column".into(), s.column.into());
    }
    json!({ "schema": SCHEMA, "error": err })
}

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Checked => "checked",
        CheckStatus::Vacuous => "vacuous",
        CheckStatus::Unknown => "unknown",
    }
}

fn mode_name(m: CheckMode) -> &'static str {
    match m {
        CheckMode::Inequality => "inequality",
        CheckMode::Implication => "implication",
        CheckMode::Equality => "equality",
    }
}

pub fn check_json(c: &CheckResult) -> Value {
    json!({
        "name": c.name,
        "instance": c.instance,
        "lhs": c.lhs.as_ref().map_or(Value::Null, int),
        "relation": c.relation.symbol(),
        "rhs": c.rhs.as_ref().map_or(Value::Null, int),
        "mode": mode_name(c.mode),
        "status": status_name(c.status),
        "holds": c.holds,
        "note": c.note,
    })
}

pub fn checks_json(checks: &[CheckResult]) -> Value {
    Value::Array(checks.iter().map(check_json).collect())
}

pub fn analysis_json(report: &ReesReport, checks: &[CheckResult], timing_ms: u128) -> Value {
    let per_ideal: Vec<Value> = report
        .per_ideal
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "generators": s.ideal,
                "mu": s.mu,
                "eTop": uint(&s.e_top),
                "reductionNumber": match s.reduction {
                    ReductionInfo::Number(r) => Value::from(r),
                    ReductionInfo::Unknown => Value::Null,
                },
            })
        })
        .collect();
    let mut f = Map::new();
    f.insert(
        "instance".into(),
        json!({
            "description": report.instance,
            "ring": report.ring,
            "d": report.d,
            "g": report.g,
            "ringMu": report.ring_mu,
            "ringE": uint(&report.ring_e),
        }),
    );
    f.insert("dim".into(), report.dim_b.into());
    f.insert("muN".into(), uint(&report.mu_n));
    f.insert("muNOracle".into(), report.mu_n_direct.as_ref().map_or(Value::Null, uint));
    f.insert("eN".into(), uint(&report.e_n_formula));
    f.insert("eNOracle".into(), report.e_n_direct.as_ref().map_or(Value::Null, uint));
    f.insert("bound".into(), int(&report.bound));
    f.insert("equationHolds".into(), report.equation_holds.into());
    f.insert("oracleAgrees".into(), report.oracle_agrees().into());
    f.insert("perIdeal".into(), Value::Array(per_ideal));
    f.insert("checks".into(), checks_json(checks));
    envelope("analyze", f, timing_ms)
}

pub fn explore_json(summary: &ExploreSummary, timing_ms: u128) -> Value {
    let c = &summary.config;
    let tallies: Map<String, Value> = summary
        .tallies
        .iter()
        .map(|(name, t)| {
            (
                name.clone(),
                json!({
                    "checked": t.checked,
                    "vacuous": t.vacuous,
                    "unknown": t.unknown,
                    "violations": t.violations,
                    "stabilizationFailures": t.stabilization_failures,
                    "errors": t.errors,
                }),
            )
        })
        .collect();
    let mut f = Map::new();
    f.insert(
        "config".into(),
        json!({
            "family": match c.family { RingFamily::Polynomial => "polynomial", RingFamily::Semigroup => "semigroup" },
            "d": c.d,
            "g": c.g,
            "generators": [c.gen_count.0, c.gen_count.1],
            "exponentBound": c.exponent_bound,
            "trials": c.trials,
            "seed": c.seed,
            "checks": c.checks.iter().map(|k| k.name()).collect::<Vec<_>>(),
        }),
    );
    f.insert("tallies".into(), Value::Object(tallies));
    f.insert("violations".into(), checks_json(&summary.violations));
    f.insert("errors".into(), summary.errors.clone().into());
    f.insert("stabilizationFailures".into(), summary.stabilization_failures().into());
    envelope("explore", f, timing_ms)
}

/// Two-column table with the keys padded to a common width.
pub fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn opt(v: &Option<BigUint>) -> String {
    v.as_ref().map_or_else(|| "-".into(), BigUint::to_string)
}

pub fn analysis_text(report: &ReesReport, checks: &[CheckResult]) -> String {
    let mut rows = vec![
        ("instance".to_string(), report.instance.clone()),
        ("ring".into(), report.ring.clone()),
        ("mu(m), e(m)".into(), format!("{}, {}", report.ring_mu, report.ring_e)),
        ("dim B".into(), report.dim_b.to_string()),
        ("mu(N)".into(), report.mu_n.to_string()),
        ("mu(N) oracle".into(), opt(&report.mu_n_direct)),
        ("e(N)".into(), report.e_n_formula.to_string()),
        ("e(N) oracle".into(), opt(&report.e_n_direct)),
        ("mu(N) - dim B + 1".into(), report.bound.to_string()),
        ("equation holds".into(), report.equation_holds.to_string()),
    ];
    if !report.oracle_agrees() {
        rows.push(("ORACLE".into(), "DISAGREES".into()));
    }
    for s in &report.per_ideal {
        let r = match s.reduction {
            ReductionInfo::Number(r) => r.to_string(),
            ReductionInfo::Unknown => "-".into(),
        };
        rows.push((
            format!("ideal {}", s.name),
            format!("{}  mu={}  e_top={}  r={}", s.ideal, s.mu, s.e_top, r),
        ));
    }
    rows.extend(checks.iter().map(check_row));
    table(&rows)
}

fn check_row(c: &CheckResult) -> (String, String) {
    let rest = c.to_string();
    let body = rest.strip_prefix(&format!("{}: ", c.name)).unwrap_or(&rest).to_string();
    (c.name.clone(), body)
}

pub fn checks_text(checks: &[CheckResult]) -> String {
    table(&checks.iter().map(check_row).collect::<Vec<_>>())
}

pub fn explore_text(summary: &ExploreSummary) -> String {
    let mut rows: Vec<(String, String)> = summary
        .tallies
        .iter()
        .map(|(name, t)| {
            (
                name.clone(),
                format!(
                    "checked={} vacuous={} unknown={} violations={} stabilization_failures={} errors={}",
                    t.checked, t.vacuous, t.unknown, t.violations, t.stabilization_failures, t.errors
                ),
            )
        })
        .collect();
    rows.push(("total violations".into(), summary.total_violations().to_string()));
    let mut out = table(&rows);
    for v in &summary.violations {
        out.push_str(&format!("VIOLATION {}: {v}\n", v.instance));
    }
    for e in &summary.errors {
        out.push_str(&format!("ERROR {e}\n"));
    }
    out
}
