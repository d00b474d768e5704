use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value as Json};

use super::ast::*;
use super::eval::{at, build_workspace, Scope, Workspace};
use super::parse::parse_session;
use crate::base_ring::BasePoly;
use crate::dg_algebra::{check_axioms, AxiomConfig, Flavor, Tower};
use crate::dg_module::{BidegreeWindow, SemifreeModule};
use crate::envelope::{envelope_basis, filtration_level, to_omega, EnvelopeElement};
use crate::error::{Error, Result};
use crate::homological::{
    ext_dims, minimal_lift_window, naive_lift_check_in, natural_window, tensor_filtration_quotient, SplitResult,
};
use crate::tate::{homology_dims, tate_resolution};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status of a session: success (or SPLIT), an obstruction, or an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    Ok,
    Obstructed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Obstructed => 10,
            Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Json>>,
}

/// Machine-readable outcome of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub window: Option<String>,
    pub result: String,
    pub tables: Vec<Table>,
    pub certificates: Vec<String>,
    pub seed: u64,
    pub version: String,
    #[serde(skip)]
    pub status: Status,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    /// Used by commands that take a window when the command line gives none.
    pub window: Option<BidegreeWindow>,
}

#[derive(Clone, Debug)]
pub struct SessionOutput {
    pub reports: Vec<Report>,
    pub status: Status,
}

impl SessionOutput {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.reports).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Parses, validates and runs every command of a session.
pub fn run_session(text: &str, options: &RunOptions) -> Result<SessionOutput> {
    let model = parse_session(text)?;
    let ws = build_workspace(&model)?;
    let reports: Vec<Report> = model.commands.iter().map(|c| run_command(&ws, c, options)).collect();
    let status = reports.iter().map(|r| r.status).max().unwrap_or(Status::Ok);
    Ok(SessionOutput { reports, status })
}

struct Outcome {
    window: Option<BidegreeWindow>,
    result: String,
    tables: Vec<Table>,
    certificates: Vec<String>,
    status: Status,
}

impl Outcome {
    fn ok(result: impl Into<String>) -> Outcome {
        Outcome {
            window: None,
            result: result.into(),
            tables: Vec::new(),
            certificates: Vec::new(),
            status: Status::Ok,
        }
    }
}

/// Runs one command; failures become reports with an `ERROR` result.
pub fn run_command(ws: &Workspace, cmd: &Command, options: &RunOptions) -> Report {
    let outcome = execute(ws, cmd, options).unwrap_or_else(|e| {
        let e = match e {
            Error::Parse { .. } => e,
            other => at(cmd.span, other),
        };
        Outcome {
            status: Status::Error,
            ..Outcome::ok(format!("ERROR: {e}"))
        }
    });
    Report {
        command: cmd.kind.to_string(),
        window: outcome.window.map(|w| w.to_string()),
        result: outcome.result,
        tables: outcome.tables,
        certificates: outcome.certificates,
        seed: options.seed,
        version: VERSION.to_string(),
        status: outcome.status,
    }
}

fn module(ws: &Workspace, name: &str, span: Span) -> Result<Arc<SemifreeModule>> {
    ws.module(name).ok_or_else(|| at(span, format!("unknown module `{name}`")))
}

fn window_or(cmd: Option<BidegreeWindow>, options: &RunOptions, span: Span) -> Result<BidegreeWindow> {
    cmd.or(options.window)
        .ok_or_else(|| at(span, "this command needs a window (hmin:hmax:wmax) or --window"))
}

fn execute(ws: &Workspace, cmd: &Command, options: &RunOptions) -> Result<Outcome> {
    let tower = &ws.tower;
    let scope = ws.scope();
    match &cmd.kind {
        CommandKind::CheckAxioms { weight_bound, samples } => {
            let config = AxiomConfig {
                weight_bound: weight_bound.unwrap_or(4),
                samples: samples.unwrap_or(200),
                seed: options.seed,
                ..AxiomConfig::default()
            };
            let report = check_axioms(tower, &config);
            let rows = report
                .laws
                .iter()
                .map(|l| vec![json!(l.law), json!(l.checked), json!(l.failures), json!(l.skipped)])
                .collect();
            let failing: Vec<String> = report
                .laws
                .iter()
                .filter(|l| !l.passed())
                .map(|l| format!("{}: {}", l.law, l.witness.clone().unwrap_or_default()))
                .collect();
            let passed = report.all_passed();
            Ok(Outcome {
                window: None,
                result: if passed {
                    format!(
                        "PASS: {} laws on {} monomials of weight ≤ {} and {} samples",
                        report.laws.len(),
                        report.monomials,
                        report.weight_bound,
                        report.samples
                    )
                } else {
                    format!("FAIL: {} of {} laws violated", failing.len(), report.laws.len())
                },
                tables: vec![Table {
                    name: "laws".into(),
                    columns: vec!["law".into(), "checked".into(), "failures".into(), "skipped".into()],
                    rows,
                }],
                certificates: failing,
                status: if passed { Status::Ok } else { Status::Error },
            })
        }
        CommandKind::Eval(e) => Ok(Outcome::ok(match scope.eval(e)? {
            super::eval::Value::Algebra(x) => x.to_string(),
            super::eval::Value::Envelope(x) => x.to_string(),
            super::eval::Value::Module(_) => return Err(at(e.span, "module elements cannot be evaluated here")),
        })),
        CommandKind::EnvelopeBasis(w) => {
            let window = window_or(*w, options, cmd.span)?;
            let printer = EnvelopeElement::one(tower);
            let mut rows = Vec::new();
            let mut certificates = Vec::new();
            for (h, wt) in window.bidegrees() {
                let basis = envelope_basis(tower, h, wt);
                rows.push(vec![json!(h), json!(wt), json!(basis.len())]);
                for m in &basis {
                    let s = printer.format_mono(m);
                    certificates.push(format!("({h}, {wt}): {}", if s.is_empty() { "1" } else { &s }));
                }
            }
            let total: usize = rows.iter().map(|r| r[2].as_u64().unwrap_or(0) as usize).sum();
            Ok(Outcome {
                window: Some(window),
                tables: vec![Table {
                    name: "dimensions".into(),
                    columns: vec!["h".into(), "w".into(), "dim".into()],
                    rows,
                }],
                certificates,
                ..Outcome::ok(format!("{total} basis elements"))
            })
        }
        CommandKind::Omega(e) => {
            let x = scope.envelope(e)?;
            let coords = to_omega(&x);
            let check = coords.expand() == x;
            Ok(Outcome {
                certificates: vec![format!(
                    "expanding the coordinates {} the input",
                    if check { "reproduces" } else { "does NOT reproduce" }
                )],
                status: if check { Status::Ok } else { Status::Error },
                ..Outcome::ok(coords.to_string())
            })
        }
        CommandKind::FiltrationLevel(e) => {
            let x = scope.envelope(e)?;
            Ok(Outcome::ok(match filtration_level(&x) {
                Some(l) => l.to_string(),
                None => "infinite (zero element)".to_string(),
            }))
        }
        CommandKind::Ext {
            m,
            l,
            i_min,
            i_max,
            window,
        } => ext_command(ws, cmd.span, m, l, *i_min, *i_max, window.or(options.window)),
        CommandKind::NaiveLift(name) => {
            let n = module(ws, name, cmd.span)?;
            let lift_window = options.window.unwrap_or_else(|| minimal_lift_window(&n));
            let result = naive_lift_check_in(&n, &lift_window)?;
            let window = Some(lift_window);
            Ok(match &result {
                SplitResult::Split {
                    rho,
                    base_change,
                    transcript,
                } => Outcome {
                    window,
                    result: format!("SPLIT (base change of dimension {} in the window)", base_change.module.rank()),
                    tables: vec![Table {
                        name: "rho".into(),
                        columns: vec!["generator".into(), "image".into()],
                        rows: rho.table().into_iter().map(|(g, i)| vec![json!(g), json!(i)]).collect(),
                    }],
                    certificates: transcript.clone(),
                    status: Status::Ok,
                },
                SplitResult::Obstructed { value, locus, .. } => {
                    let mut certificates = vec![locus.clone()];
                    for (c, eq) in result.witness_equations() {
                        certificates.push(format!("{c} × {eq}"));
                    }
                    certificates.push(format!("sum of the weighted equations: 0 = {value}"));
                    Outcome {
                        window,
                        result: "OBSTRUCTED".into(),
                        tables: Vec::new(),
                        certificates,
                        status: Status::Obstructed,
                    }
                }
            })
        }
        CommandKind::Tate { ideal, hbound, wbound } => {
            let bare = Tower::new(ws.base.clone(), Flavor::Divided);
            let bare_scope = Scope { tower: &bare, gens: &[] };
            let mut gens = Vec::with_capacity(ideal.len());
            for g in ideal {
                let x = bare_scope.algebra(g)?;
                gens.push(BasePoly::from_terms(
                    &ws.base,
                    x.terms().iter().map(|(m, c)| (m.base.clone(), c.clone())),
                ));
            }
            let t = tate_resolution(&ws.base, &gens, *hbound, *wbound, tower.flavor())?;
            let mut certificates = Vec::new();
            for (i, v) in t.vars().iter().enumerate() {
                let d = crate::dg_algebra::AlgebraElement::variable(&t, i).differential();
                certificates.push(format!("{} : deg {}, wt {}, d = {d}", v.name, v.degree, v.weight));
            }
            certificates.extend(t.provenance().iter().cloned());
            let mut rows = Vec::new();
            for j in 0..*hbound {
                let h = homology_dims(&t, j, *wbound);
                let mut row = vec![json!(j)];
                row.extend(h.dims.values().map(|d| json!(d)));
                rows.push(row);
            }
            let mut columns = vec!["H_j".to_string()];
            columns.extend((0..=*wbound).map(|w| format!("w={w}")));
            let degrees: Vec<String> = t.vars().iter().map(|v| v.degree.to_string()).collect();
            Ok(Outcome {
                window: Some(BidegreeWindow::new(0, *hbound, *wbound)?),
                tables: vec![Table {
                    name: "homology".into(),
                    columns,
                    rows,
                }],
                certificates,
                ..Outcome::ok(format!(
                    "adjoined {} variables of degrees [{}]",
                    t.nvars(),
                    degrees.join(", ")
                ))
            })
        }
        CommandKind::Homology { hdeg, wbound } => {
            let h = homology_dims(tower, *hdeg, *wbound);
            let mut certificates = Vec::new();
            for (w, reps) in &h.representatives {
                for r in reps {
                    certificates.push(format!("w={w}: {r}"));
                }
            }
            Ok(Outcome {
                window: Some(BidegreeWindow::new(*hdeg, *hdeg, *wbound)?),
                tables: vec![Table {
                    name: "homology".into(),
                    columns: vec!["w".into(), "dim".into()],
                    rows: h.rows().into_iter().map(|(w, d)| vec![json!(w), json!(d)]).collect(),
                }],
                certificates,
                ..Outcome::ok(format!("dim H_{hdeg} = {} up to weight {wbound}", h.total()))
            })
        }
    }
}

fn ext_command(
    ws: &Workspace,
    span: Span,
    m: &ModuleRef,
    l: &ModuleRef,
    i_min: i64,
    i_max: i64,
    window: Option<BidegreeWindow>,
) -> Result<Outcome> {
    if m.level.is_some() {
        return Err(at(span, "the source of ext must be a semifree module, not a filtration quotient"));
    }
    let src = module(ws, &m.name, span)?;
    let base = module(ws, &l.name, span)?;
    let (target, window) = match l.level {
        None => {
            let w = window.unwrap_or_else(|| natural_window(&src, &base, i_min..=i_max));
            (base, w)
        }
        Some(level) => {
            let max_src_wt = src.max_weight().unwrap_or(0);
            let (h_max, w_max) = match window {
                Some(w) => (w.h_max, w.w_max),
                None => {
                    let nw = natural_window(&src, &base, i_min..=i_max);
                    let step = ws.tower.vars()[ws.tower.sub_len()..]
                        .iter()
                        .map(|v| v.weight as i64)
                        .max()
                        .unwrap_or(0);
                    (nw.h_max, nw.w_max + level as i64 * step)
                }
            };
            let q = Arc::new(tensor_filtration_quotient(&base, level, h_max, max_src_wt + w_max)?);
            let w = window.unwrap_or_else(|| natural_window(&src, &q, i_min..=i_max));
            (q, w)
        }
    };
    let table = ext_dims(&src, &target, i_min..=i_max, &window)?;
    let columns: Vec<String> = std::iter::once("i".to_string())
        .chain(table.weights().map(|w| format!("w={w}")))
        .collect();
    let rows = table
        .rows()
        .into_iter()
        .map(|(i, dims)| std::iter::once(json!(i)).chain(dims.into_iter().map(|d| json!(d))).collect())
        .collect();
    let nonzero = table.nonzero();
    let result = if nonzero.is_empty() {
        format!("Ext^i = 0 for {i_min} ≤ i ≤ {i_max} in the window")
    } else {
        let parts: Vec<String> = nonzero.iter().map(|(i, w, d)| format!("Ext^{i}(w={w}) = {d}")).collect();
        parts.join(", ")
    };
    Ok(Outcome {
        window: Some(window),
        tables: vec![Table {
            name: "ext".into(),
            columns,
            rows,
        }],
        ..Outcome::ok(result)
    })
}
