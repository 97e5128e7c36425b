//! Task orchestration and deterministic report emission.
//!
//! Each task runs in isolation: one failure never aborts the others. Reports
//! render byte-identically for byte-identical scenarios; wall-clock timings
//! are collected but excluded from the default rendering.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hodge::{MixedHodgeTable, PWTable, PerverseRule};
use crate::lg::{self, DiscriminantVariant, Line};
use crate::mirror::{self, MirrorPair};
use crate::perverse;
use crate::scenario::{AnyTable, Scenario, Task};
use crate::weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Refused,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct TaskOutcome {
    pub name: String,
    pub op: String,
    pub status: Status,
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub payload: Value,
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub scenario: String,
    pub tasks: Vec<TaskOutcome>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.tasks.iter().all(|t| t.status == Status::Pass)
    }

    /// 0 when every task passed, 1 otherwise. Load failures exit with 2 at
    /// the call site.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Run every task (optionally restricted to the named ops / task name).
pub fn run(sc: &Scenario, ops: Option<&[&str]>, task_filter: Option<&str>) -> Report {
    let mut outcomes = Vec::new();
    for task in &sc.tasks {
        if let Some(ops) = ops {
            if !ops.contains(&task.op.as_str()) {
                continue;
            }
        }
        if let Some(f) = task_filter {
            if task.name != f {
                continue;
            }
        }
        let start = Instant::now();
        let mut outcome = match run_task(sc, task) {
            Ok(outcome) => outcome,
            Err(Error::HypothesisFailed { witness, s, p, w }) => {
                let refused_expected = task.expect.as_deref() == Some("refused");
                TaskOutcome {
                    name: task.name.clone(),
                    op: task.op.clone(),
                    status: if refused_expected {
                        Status::Pass
                    } else {
                        Status::Refused
                    },
                    details: vec![format!(
                        "refused: witness {witness} fails Hodge-Tate at (s={s}, p={p}, w={w})"
                    )],
                    payload: Value::Null,
                    millis: 0,
                }
            }
            Err(e) => TaskOutcome {
                name: task.name.clone(),
                op: task.op.clone(),
                status: Status::Error,
                details: vec![e.to_string()],
                payload: Value::Null,
                millis: 0,
            },
        };
        outcome.millis = start.elapsed().as_millis();
        outcomes.push(outcome);
    }
    Report {
        scenario: sc.name.clone(),
        tasks: outcomes,
    }
}

fn get_mixed<'a>(sc: &'a Scenario, name: &str) -> Result<&'a MixedHodgeTable> {
    match sc.tables.get(name) {
        Some(AnyTable::Mixed(t)) => Ok(t),
        Some(_) => Err(Error::validation(name, "expected a mixed table")),
        None => Err(Error::validation(name, "unknown table")),
    }
}

fn get_pw<'a>(sc: &'a Scenario, name: &str) -> Result<&'a PWTable> {
    match sc.tables.get(name) {
        Some(AnyTable::Pw(t)) => Ok(t),
        Some(_) => Err(Error::validation(name, "expected a pw table")),
        None => Err(Error::validation(name, "unknown table")),
    }
}

fn outcome(task: &Task, ok: bool, details: Vec<String>, payload: Value) -> TaskOutcome {
    // a task may declare that the check is expected to find a violation
    let expect_violation = task.expect.as_deref() == Some("violation");
    let status = match (ok, expect_violation) {
        (true, false) | (false, true) => Status::Pass,
        _ => Status::Fail,
    };
    TaskOutcome {
        name: task.name.clone(),
        op: task.op.clone(),
        status,
        details,
        payload,
        millis: 0,
    }
}

fn table_to_value(t: &MixedHodgeTable) -> Value {
    let cells: Vec<Value> = t
        .dims
        .iter()
        .map(|(&(s, p, w), &d)| json!({"s": s, "p": p, "w": w, "dim": d}))
        .collect();
    json!({"n": t.ambient_dim, "entries": cells})
}

fn run_task(sc: &Scenario, task: &Task) -> Result<TaskOutcome> {
    let missing = |what: &str| Error::validation(task.name.clone(), format!("missing {what}"));
    match task.op.as_str() {
        "pw_eval" => {
            let name = task.table.as_ref().ok_or_else(|| missing("table"))?;
            let t = get_pw(sc, name)?;
            let poly = t.pw_polynomial();
            let rendered = poly.to_string();
            let mut ok = true;
            let mut details = vec![format!("PW = {rendered}")];
            if let Some(expect) = &task.expect_poly {
                ok = &rendered == expect;
                if !ok {
                    details.push(format!("expected {expect}"));
                }
            }
            Ok(outcome(
                task,
                ok,
                details,
                json!({ "polynomial": rendered }),
            ))
        }
        "mirror" => {
            let n = task.n.ok_or_else(|| missing("n"))? as u32;
            let u = get_pw(sc, task.u_side.as_ref().ok_or_else(|| missing("u_side"))?)?;
            let v = get_pw(sc, task.v_side.as_ref().ok_or_else(|| missing("v_side"))?)?;
            let pair = MirrorPair {
                n,
                u_side: u.clone(),
                v_side: v.clone(),
            };
            let residual = mirror::check_mirror_pw(&pair)?;
            let ok = residual.is_zero();
            Ok(outcome(
                task,
                ok,
                vec![format!("residual = {residual}")],
                json!({ "residual": residual.to_string() }),
            ))
        }
        "one_sided" => {
            let n = task.n.ok_or_else(|| missing("n"))?;
            let u = get_mixed(sc, task.u_side.as_ref().ok_or_else(|| missing("u_side"))?)?;
            let v = match sc
                .tables
                .get(task.v_side.as_ref().ok_or_else(|| missing("v_side"))?)
            {
                Some(AnyTable::Perverse(t)) => t.clone(),
                Some(AnyTable::Pw(t)) => t.perverse_marginal(),
                _ => {
                    return Err(Error::validation(
                        &task.name,
                        "v_side must be perverse or pw",
                    ))
                }
            };
            let mismatches = mirror::one_sided_check(u, &v, n);
            let details: Vec<String> = mismatches
                .iter()
                .map(|m| format!("(p,q,r) = {:?}: {} vs {}", m.at, m.left, m.right))
                .collect();
            Ok(outcome(task, mismatches.is_empty(), details, Value::Null))
        }
        "graded_correspondence" => {
            let n = task.n.ok_or_else(|| missing("n"))?;
            let potentials = task.potentials.ok_or_else(|| missing("potentials"))?;
            let u = get_mixed(sc, task.u_side.as_ref().ok_or_else(|| missing("u_side"))?)?;
            let y = match sc.tables.get(
                task.y_perverse
                    .as_ref()
                    .ok_or_else(|| missing("y_perverse"))?,
            ) {
                Some(AnyTable::Levels(t)) => t.clone(),
                _ => {
                    return Err(Error::validation(
                        &task.name,
                        "y_perverse must be a levels table",
                    ))
                }
            };
            let mismatches = mirror::graded_correspondence_check(u, &y, n, potentials);
            let details: Vec<String> = mismatches
                .iter()
                .map(|m| format!("(a,i) = {:?}: {} vs {}", m.at, m.left, m.right))
                .collect();
            Ok(outcome(task, mismatches.is_empty(), details, Value::Null))
        }
        "hodge_tate_pw" => {
            let w = get_mixed(sc, task.weight.as_ref().ok_or_else(|| missing("weight"))?)?;
            let level = task.level.ok_or_else(|| missing("level"))?;
            let pw = mirror::hodge_tate_pw(w, &PerverseRule::AllAtLevel(level))?;
            let mut ok = true;
            let mut details = vec![format!("PW = {}", pw.pw_polynomial())];
            if let Some(expected) = &task.expect_table {
                let e = get_pw(sc, expected)?;
                ok = &pw == e;
                if !ok {
                    details.push("assembled table differs from the expected one".into());
                }
            }
            Ok(outcome(task, ok, details, Value::Null))
        }
        "is_hodge_tate" => {
            let name = task.table.as_ref().ok_or_else(|| missing("table"))?;
            let t = get_mixed(sc, name)?;
            let witness = t.hodge_tate_witness();
            let details = match witness {
                Some((s, p, w)) => vec![format!("witness (s={s}, p={p}, w={w})")],
                None => vec!["Hodge-Tate".into()],
            };
            Ok(outcome(task, witness.is_none(), details, Value::Null))
        }
        "weight_graded" => {
            let name = task.strata.as_ref().ok_or_else(|| missing("strata"))?;
            let table = sc.strata[name].weight_graded()?;
            let mut ok = true;
            let mut details = Vec::new();
            for b in &task.expect_betti {
                let got = table.betti(b.degree);
                if got != b.dim {
                    ok = false;
                    details.push(format!("b_{} = {got}, expected {}", b.degree, b.dim));
                }
            }
            if let Some(expected) = &task.expect_table {
                let e = get_mixed(sc, expected)?;
                if &table != e {
                    ok = false;
                    details.push("weight table differs from the expected one".into());
                }
            }
            Ok(outcome(task, ok, details, table_to_value(&table)))
        }
        "nc_cohomology" | "simplicial_weight" => {
            let name = task
                .simplicial
                .as_ref()
                .ok_or_else(|| missing("simplicial"))?;
            let sw = &sc.simplicial[name];
            let table = if task.op == "nc_cohomology" {
                weight::nc_cohomology(sw)?
            } else {
                weight::simplicial_weight_ss(sw)?
            };
            let mut ok = true;
            let mut details = Vec::new();
            for b in &task.expect_betti {
                let got = table.betti(b.degree);
                if got != b.dim {
                    ok = false;
                    details.push(format!("b_{} = {got}, expected {}", b.degree, b.dim));
                }
            }
            if let Some(expected) = &task.expect_table {
                let e = get_mixed(sc, expected)?;
                if &table != e {
                    ok = false;
                    details.push("table differs from the expected one".into());
                }
            }
            Ok(outcome(task, ok, details, table_to_value(&table)))
        }
        "flag_filtration" => {
            let name = task.flag.as_ref().ok_or_else(|| missing("flag"))?;
            let f = perverse::flag_filtration(&sc.flags[name])?;
            let cells: Vec<Value> = f
                .levels
                .iter()
                .map(|(&(k, b), &d)| json!({"degree": k, "level": b, "dim": d}))
                .collect();
            Ok(outcome(
                task,
                true,
                Vec::new(),
                json!({ "filtration": cells }),
            ))
        }
        "perverse_e2" => {
            let name = task.flag.as_ref().ok_or_else(|| missing("flag"))?;
            let fc = &sc.flags[name];
            let mut cells = Vec::new();
            for k in 0..=(2 * fc.ambient_dim as i64) {
                for (&b, &d) in &perverse::perverse_e2(fc, k)? {
                    if d > 0 {
                        cells.push(json!({"degree": k, "level": b, "dim": d}));
                    }
                }
            }
            Ok(outcome(task, true, Vec::new(), json!({ "graded": cells })))
        }
        "oracle_compare" => {
            let name = task.flag.as_ref().ok_or_else(|| missing("flag"))?;
            let out = perverse::oracle_compare(&sc.flags[name])?;
            let mut details: Vec<String> = out
                .discrepancies
                .iter()
                .map(|d| {
                    format!(
                        "degree {} level {}: flag {} vs cech {}",
                        d.degree, d.level, d.flag_dim, d.cech_dim
                    )
                })
                .collect();
            details.extend(out.warnings.iter().map(|w| format!("warning: {w}")));
            Ok(outcome(task, out.is_ok(), details, Value::Null))
        }
        "de_rham" => {
            let name = task.flag.as_ref().ok_or_else(|| missing("flag"))?;
            let dims: BTreeMap<(i64, i64), u64> = task
                .image_dims
                .iter()
                .map(|r| ((r.degree, r.level), r.dim))
                .collect();
            let g = perverse::de_rham_relabel(&dims)?;
            let mismatches = perverse::de_rham_check(&sc.flags[name], &g)?;
            let details: Vec<String> = mismatches
                .iter()
                .map(|(k, b, f, gd)| format!("degree {k} level {b}: perverse {f} vs G^f {gd}"))
                .collect();
            Ok(outcome(task, mismatches.is_empty(), details, Value::Null))
        }
        "filtration_length" => {
            let name = task.flag.as_ref().ok_or_else(|| missing("flag"))?;
            let violations = perverse::filtration_length_check(&sc.flags[name])?;
            let details: Vec<String> = violations
                .iter()
                .map(|v| format!("degree {}: {}", v.degree, v.reason))
                .collect();
            Ok(outcome(task, violations.is_empty(), details, Value::Null))
        }
        "multiplicativity" => {
            let name = task.ring.as_ref().ok_or_else(|| missing("ring"))?;
            let violation = perverse::multiplicativity_check(&sc.rings[name])?;
            let details = match &violation {
                Some(v) => vec![format!(
                    "P_{{{}+{}}} x P_{{{}+{}}} escapes the bound (vectors {} and {})",
                    v.degrees.0, v.offsets.0, v.degrees.1, v.offsets.1, v.vectors.0, v.vectors.1
                )],
                None => Vec::new(),
            };
            Ok(outcome(task, violation.is_none(), details, Value::Null))
        }
        "discriminant" => {
            let name = task.lg_spec.as_ref().ok_or_else(|| missing("lg_spec"))?;
            let spec = &sc.lg_specs[name];
            let variant = parse_variant(task.variant.as_deref())?;
            let locus = lg::discriminant(spec, variant)?;
            let rendered = locus.to_string();
            let mut ok = true;
            let mut details = vec![rendered.clone()];
            if lg::variants_disagree(spec) {
                details.push(
                    "note: two-component and general formulas disagree on coordinate components"
                        .into(),
                );
            }
            if let Some(expected) = &task.expect_locus {
                ok = &rendered == expected;
                if !ok {
                    details.push(format!("expected {expected}"));
                }
            }
            Ok(outcome(task, ok, details, json!({ "locus": rendered })))
        }
        "line_counts" => {
            let name = task.lg_spec.as_ref().ok_or_else(|| missing("lg_spec"))?;
            let spec = &sc.lg_specs[name];
            let variant = parse_variant(task.variant.as_deref())?;
            let locus = lg::discriminant(spec, variant)?;
            let line = parse_line(task.line.as_ref())?;
            let count = lg::line_counts(&locus, line);
            let mut ok = true;
            let mut details = vec![format!("{count} intersection points")];
            if let Some(expected) = task.expect_count {
                ok = count == expected;
                if !ok {
                    details.push(format!("expected {expected}"));
                }
            }
            Ok(outcome(task, ok, details, json!({ "count": count })))
        }
        "gluing" => {
            let name = task.gluing.as_ref().ok_or_else(|| missing("gluing"))?;
            let (total, parts) = &sc.gluing[name];
            let mismatches = lg::gluing_check(total, parts);
            let details: Vec<String> = mismatches
                .iter()
                .map(|m| format!("degree {}: {} vs {}", m.degree, m.total, m.parts_sum))
                .collect();
            Ok(outcome(task, mismatches.is_empty(), details, Value::Null))
        }
        "kkp" => {
            let name = task
                .lg_tables
                .as_ref()
                .ok_or_else(|| missing("lg_tables"))?;
            let left = task.left.as_ref().ok_or_else(|| missing("left"))?;
            let right = task.right.as_ref().ok_or_else(|| missing("right"))?;
            let mismatches = lg::kkp_check(&sc.lg_tables[name], left, right)?;
            let details: Vec<String> = mismatches
                .iter()
                .map(|m| format!("(p,q) = ({},{}): {} vs {}", m.p, m.q, m.left, m.right))
                .collect();
            Ok(outcome(task, mismatches.is_empty(), details, Value::Null))
        }
        "hodge_tate_kkp" => {
            let name = task.limiting.as_ref().ok_or_else(|| missing("limiting"))?;
            let limiting = get_mixed(sc, name)?;
            let mut witnesses = Vec::new();
            for w in &task.witnesses {
                witnesses.push((w.clone(), get_mixed(sc, w)?.clone()));
            }
            let h = lg::hodge_tate_kkp(limiting, &witnesses)?;
            let mut ok = true;
            let mut details = Vec::new();
            if let (Some(tables), Some(flavor)) = (&task.lg_tables, &task.compare_flavor) {
                let mut both = sc.lg_tables[tables].clone();
                both.insert("derived", h.clone());
                let mismatches = lg::kkp_check(&both, "derived", flavor)?;
                ok = mismatches.is_empty();
                details.extend(
                    mismatches
                        .iter()
                        .map(|m| format!("(p,q) = ({},{}): {} vs {}", m.p, m.q, m.left, m.right)),
                );
            }
            let cells: Vec<Value> = h
                .iter()
                .map(|(&(p, q), &d)| json!({"p": p, "q": q, "dim": d}))
                .collect();
            Ok(outcome(task, ok, details, json!({ "h_table": cells })))
        }
        other => Err(Error::validation(
            &task.name,
            format!("unknown op {other:?}"),
        )),
    }
}

fn parse_variant(v: Option<&str>) -> Result<DiscriminantVariant> {
    match v {
        Some("two_component") => Ok(DiscriminantVariant::TwoComponent),
        Some("general") | None => Ok(DiscriminantVariant::General),
        Some(other) => Err(Error::validation(
            "variant",
            format!("unknown variant {other:?}"),
        )),
    }
}

fn parse_line(v: Option<&Value>) -> Result<Line> {
    match v {
        None => Ok(Line::AntiDiagonal),
        Some(Value::String(s)) if s == "anti_diagonal" => Ok(Line::AntiDiagonal),
        Some(Value::Object(o)) => match o.get("coordinate").and_then(Value::as_u64) {
            Some(i) => Ok(Line::Coordinate(i as usize)),
            None => Err(Error::validation("line", "expected {\"coordinate\": i}")),
        },
        Some(other) => Err(Error::validation("line", format!("unknown line {other}"))),
    }
}

/// Canonical rendering; byte-identical across runs unless timings are asked
/// for.
pub fn emit(report: &Report, format: Format, include_timings: bool) -> String {
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(report).expect("report serializes");
            if include_timings {
                if let Value::Object(ref mut top) = v {
                    if let Some(Value::Array(tasks)) = top.get_mut("tasks") {
                        for (t, o) in tasks.iter_mut().zip(&report.tasks) {
                            if let Value::Object(m) = t {
                                m.insert("millis".into(), json!(o.millis));
                            }
                        }
                    }
                }
            }
            let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!("scenario {}\n", report.scenario);
            for t in &report.tasks {
                let status = match t.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Refused => "refused",
                    Status::Error => "ERROR",
                };
                let timing = if include_timings {
                    format!(" ({} ms)", t.millis)
                } else {
                    String::new()
                };
                out.push_str(&format!("  [{status}] {} ({}){timing}\n", t.name, t.op));
                for d in &t.details {
                    out.push_str(&format!("      {d}\n"));
                }
            }
            let (pass, total) = (
                report
                    .tasks
                    .iter()
                    .filter(|t| t.status == Status::Pass)
                    .count(),
                report.tasks.len(),
            );
            out.push_str(&format!("{pass}/{total} tasks passed\n"));
            out
        }
    }
}
