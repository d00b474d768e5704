//! Python bindings: sessions, workspaces and the main homological operations.

use std::collections::BTreeMap;

use ::dglift::dg_algebra::{check_axioms, AlgebraElement, AxiomConfig};
use ::dglift::dg_module::BidegreeWindow;
use ::dglift::homological::{ext_dims, naive_lift_check_in, minimal_lift_window, natural_window, SplitResult};
use ::dglift::session::{
    build_workspace, parse_command_line, parse_expression, parse_session, run_command, run_session, Report,
    RunOptions, SessionOutput, Status,
};
use ::dglift::Error;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn options(seed: u64, window: Option<&str>) -> PyResult<RunOptions> {
    let window = window.map(str::parse::<BidegreeWindow>).transpose().map_err(py_err)?;
    Ok(RunOptions { seed, window })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Obstructed => "obstructed",
        Status::Error => "error",
    }
}

/// Outcome of one command.
#[pyclass(name = "Report", frozen)]
struct PyReport {
    inner: Report,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn command(&self) -> &str {
        &self.inner.command
    }

    #[getter]
    fn window(&self) -> Option<&str> {
        self.inner.window.as_deref()
    }

    #[getter]
    fn result(&self) -> &str {
        &self.inner.result
    }

    #[getter]
    fn certificates(&self) -> Vec<String> {
        self.inner.certificates.clone()
    }

    /// `"ok"`, `"obstructed"` or `"error"`.
    #[getter]
    fn status(&self) -> &'static str {
        status_name(self.inner.status)
    }

    /// The report as a JSON object, tables included.
    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("reports serialize")
    }

    fn __repr__(&self) -> String {
        format!("Report({:?}: {:?})", self.inner.command, self.inner.result)
    }
}

/// All reports of a session run plus the overall status.
#[pyclass(name = "SessionResult", frozen)]
struct PySessionResult {
    inner: SessionOutput,
}

#[pymethods]
impl PySessionResult {
    #[getter]
    fn status(&self) -> &'static str {
        status_name(self.inner.status)
    }

    /// The command-line exit code: 0, 10 for an obstruction, 1 for an error.
    #[getter]
    fn exit_code(&self) -> i32 {
        self.inner.status.exit_code()
    }

    #[getter]
    fn reports(&self) -> Vec<PyReport> {
        self.inner.reports.iter().map(|r| PyReport { inner: r.clone() }).collect()
    }

    /// The same bytes the command line writes with `--report`.
    fn to_json(&self) -> String {
        self.inner.to_json()
    }
}

/// Result of the naive-liftability check.
#[pyclass(name = "LiftResult", frozen, get_all)]
struct PyLiftResult {
    split: bool,
    window: String,
    /// The transcript of a splitting, or the weighted equations of an obstruction.
    lines: Vec<String>,
    reverified: bool,
}

#[pymethods]
impl PyLiftResult {
    fn __repr__(&self) -> String {
        format!(
            "LiftResult({} in {})",
            if self.split { "SPLIT" } else { "OBSTRUCTED" },
            self.window
        )
    }
}

/// A parsed session: base ring, tower and modules, ready to run commands.
#[pyclass(name = "Workspace", frozen)]
struct PyWorkspace {
    inner: ::dglift::session::Workspace,
    options: RunOptions,
}

impl PyWorkspace {
    fn module(&self, name: &str) -> PyResult<std::sync::Arc<::dglift::dg_module::SemifreeModule>> {
        self.inner
            .module(name)
            .ok_or_else(|| PyKeyError::new_err(format!("unknown module `{name}`")))
    }
}

#[pymethods]
impl PyWorkspace {
    #[new]
    #[pyo3(signature = (text, seed = 0, window = None))]
    fn new(text: &str, seed: u64, window: Option<&str>) -> PyResult<Self> {
        let model = parse_session(text).map_err(py_err)?;
        Ok(PyWorkspace {
            inner: build_workspace(&model).map_err(py_err)?,
            options: options(seed, window)?,
        })
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field.name()
    }

    #[getter]
    fn tower_name(&self) -> &str {
        &self.inner.tower_name
    }

    /// `(name, degree, weight, differential)` for every variable of the tower.
    #[getter]
    fn variables(&self) -> Vec<(String, u32, u32, String)> {
        let t = &self.inner.tower;
        t.vars()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let d = AlgebraElement::variable(t, i).differential();
                (v.name.clone(), v.degree, v.weight, d.to_string())
            })
            .collect()
    }

    #[getter]
    fn modules(&self) -> Vec<String> {
        self.inner.modules.iter().map(|(n, _)| n.clone()).collect()
    }

    /// `(name, degree, weight, differential)` for every basis element of a module.
    fn generators(&self, module: &str) -> PyResult<Vec<(String, i64, i64, String)>> {
        let m = self.module(module)?;
        Ok(m.gens()
            .iter()
            .enumerate()
            .map(|(k, g)| (g.name.clone(), g.degree, g.weight, m.format_element(m.diff_of(k))))
            .collect())
    }

    /// Evaluates an expression in the tower, its envelope or a module.
    fn eval(&self, expr: &str) -> PyResult<String> {
        let cmd = parse_command_line(&format!("eval {expr}")).map_err(py_err)?;
        let report = run_command(&self.inner, &cmd, &self.options);
        match report.status {
            Status::Error => Err(PyValueError::new_err(report.result)),
            _ => Ok(report.result),
        }
    }

    /// Runs one command line such as `"ext N N 0..2"` or `"tate (x^2, x*y) 3 6"`.
    fn run(&self, command: &str) -> PyResult<PyReport> {
        let cmd = parse_command_line(command).map_err(py_err)?;
        Ok(PyReport {
            inner: run_command(&self.inner, &cmd, &self.options),
        })
    }

    /// `{law: (checked, failures)}` from the axiom checker.
    #[pyo3(signature = (weight_bound = 4, samples = 200, seed = 0))]
    fn check_axioms(&self, weight_bound: i64, samples: usize, seed: u64) -> BTreeMap<String, (usize, usize)> {
        let config = AxiomConfig {
            weight_bound,
            samples,
            seed,
            ..AxiomConfig::default()
        };
        check_axioms(&self.inner.tower, &config)
            .laws
            .into_iter()
            .map(|l| (l.law, (l.checked, l.failures)))
            .collect()
    }

    /// `{(i, weight): dim}` for Ext^i(M, L), in the natural window unless one is given.
    #[pyo3(signature = (source, target, i_min, i_max, window = None))]
    fn ext(
        &self,
        source: &str,
        target: &str,
        i_min: i64,
        i_max: i64,
        window: Option<&str>,
    ) -> PyResult<BTreeMap<(i64, i64), usize>> {
        let (m, l) = (self.module(source)?, self.module(target)?);
        let window = match window {
            Some(w) => w.parse().map_err(py_err)?,
            None => natural_window(&m, &l, i_min..=i_max),
        };
        let table = ext_dims(&m, &l, i_min..=i_max, &window).map_err(py_err)?;
        Ok(table.entries.clone())
    }

    /// Decides whether `π_N` splits, returning the section or the obstruction.
    #[pyo3(signature = (module, window = None))]
    fn naive_lift(&self, module: &str, window: Option<&str>) -> PyResult<PyLiftResult> {
        let n = self.module(module)?;
        let window = match window {
            Some(w) => w.parse().map_err(py_err)?,
            None => minimal_lift_window(&n),
        };
        let result = naive_lift_check_in(&n, &window).map_err(py_err)?;
        let lines = match &result {
            SplitResult::Split { transcript, .. } => transcript.clone(),
            SplitResult::Obstructed { .. } => result
                .witness_equations()
                .into_iter()
                .map(|(c, eq)| format!("{c} × {eq}"))
                .collect(),
        };
        Ok(PyLiftResult {
            split: result.is_split(),
            window: window.to_string(),
            lines,
            reverified: result.reverify(&n),
        })
    }
}

/// Parses and runs a whole session.
#[pyfunction]
#[pyo3(signature = (text, seed = 0, window = None))]
fn run(text: &str, seed: u64, window: Option<&str>) -> PyResult<PySessionResult> {
    let out = run_session(text, &options(seed, window)?).map_err(py_err)?;
    Ok(PySessionResult { inner: out })
}

/// Checks that an expression parses, returning its canonical form.
#[pyfunction]
fn canonical(expr: &str) -> PyResult<String> {
    parse_expression(expr).map(|e| e.to_string()).map_err(py_err)
}

#[pymodule(name = "dglift")]
fn dglift_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", ::dglift::session::VERSION)?;
    m.add_class::<PyWorkspace>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PySessionResult>()?;
    m.add_class::<PyLiftResult>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    Ok(())
}
