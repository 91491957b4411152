//! Python bindings: automata, zeta functions, language matrices and checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sofic_dyck::automaton::{
    builtin, builtin_names, check_h_codeterminism, check_h_determinism, stack_equivalence_check, DeterminismReport,
    DyckAutomaton,
};
use sofic_dyck::languages::{circularity_check, h_matrix, HKind};
use sofic_dyck::series::{exp_series, inverse, log_series, star, MultiSeries, Series, TruncatedSeries};
use sofic_dyck::zeta::{
    counts_from_zeta, decomposition_check, periodic_patterns, pn_bruteforce, zeta_bruteforce, zeta_det_route,
    zeta_subst_route, ZetaError,
};

create_exception!(soficdyck, PreconditionError, PyValueError);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn zeta_error(e: ZetaError) -> PyErr {
    match e {
        ZetaError::Precondition(_) | ZetaError::Ambiguous { .. } | ZetaError::AmbiguousGraph { .. } => {
            PreconditionError::new_err(e.to_string())
        }
        other => value_error(other),
    }
}

fn kind(name: &str) -> PyResult<HKind> {
    name.parse().map_err(value_error)
}

/// An integer coefficient as `int`, anything else as `fractions.Fraction`.
fn rational<'py>(py: Python<'py>, c: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    if c.is_integer() {
        return Ok(c.numer().into_pyobject(py)?.into_any());
    }
    py.import("fractions")?.getattr("Fraction")?.call1((c.numer(), c.denom()))
}

/// A truncated power series in `z` with rational coefficients.
#[pyclass(name = "Series", module = "soficdyck", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySeries(TruncatedSeries);

#[pymethods]
impl PySeries {
    /// Builds `c[0] + c[1] z + ...` truncated at `cap` (default `len(c) - 1`).
    #[new]
    #[pyo3(signature = (coeffs, cap=None))]
    fn new(coeffs: Vec<BigInt>, cap: Option<usize>) -> Self {
        let cap = cap.unwrap_or(coeffs.len().saturating_sub(1));
        PySeries(TruncatedSeries::from_bigints(coeffs, cap))
    }

    #[getter]
    fn cap(&self) -> usize {
        self.0.cap()
    }

    /// Coefficients of `z^0 .. z^cap`.
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        (0..=self.0.cap()).map(|n| rational(py, &self.0.coeff(n))).collect()
    }

    fn coeff<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        if n > self.0.cap() {
            return Err(PyIndexError::new_err(format!("z^{n} is above the cap {}", self.0.cap())));
        }
        rational(py, &self.0.coeff(n))
    }

    fn first_difference(&self, other: &PySeries) -> Option<usize> {
        self.0.first_difference(&other.0)
    }

    fn star(&self) -> PyResult<PySeries> {
        star(&self.0).map(PySeries).map_err(value_error)
    }

    fn inverse(&self) -> PyResult<PySeries> {
        inverse(&self.0).map(PySeries).map_err(value_error)
    }

    fn log(&self) -> PyResult<PySeries> {
        log_series(&self.0).map(PySeries).map_err(value_error)
    }

    fn exp(&self) -> PyResult<PySeries> {
        exp_series(&self.0).map(PySeries).map_err(value_error)
    }

    /// Reads this series as a zeta function: `p_n = n [z^n] log`, for `n = 1..cap`.
    fn periodic_counts(&self) -> PyResult<Vec<BigInt>> {
        let table = counts_from_zeta(&self.0).map_err(zeta_error)?;
        Ok(table.iter().map(|(_, c)| c.clone()).collect())
    }

    /// Primitive orbit counts by length, for `n = 1..cap`.
    fn orbit_counts(&self) -> PyResult<Vec<BigInt>> {
        let table = counts_from_zeta(&self.0).map_err(zeta_error)?;
        Ok(table.orbit_counts().map_err(zeta_error)?.into_values().collect())
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PySeries> {
        TruncatedSeries::from_json(text).map(PySeries).map_err(value_error)
    }

    fn __add__(&self, other: &PySeries) -> PySeries {
        PySeries(self.0.plus(&other.0))
    }

    fn __sub__(&self, other: &PySeries) -> PySeries {
        PySeries(self.0.minus(&other.0))
    }

    fn __mul__(&self, other: &PySeries) -> PySeries {
        PySeries(self.0.times(&other.0))
    }

    fn __neg__(&self) -> PySeries {
        PySeries(self.0.negate())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series({}, cap={})", self.0, self.0.cap())
    }
}

/// A truncated series in commuting letter variables.
#[pyclass(name = "MultiSeries", module = "soficdyck", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMultiSeries(MultiSeries);

#[pymethods]
impl PyMultiSeries {
    #[getter]
    fn cap(&self) -> usize {
        self.0.cap()
    }

    fn variables(&self) -> Vec<String> {
        self.0.variables()
    }

    /// `(exponents, coefficient)` pairs, exponents as a dict from variable to power.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Bound<'py, PyDict>, Bound<'py, PyAny>)>> {
        self.0
            .terms()
            .map(|(m, c)| {
                let exps = PyDict::new(py);
                for (v, e) in m.exponents() {
                    exps.set_item(v, e)?;
                }
                Ok((exps, rational(py, c)?))
            })
            .collect()
    }

    /// Sends every variable to `z`.
    fn theta(&self) -> PySeries {
        PySeries(self.0.theta())
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MultiSeries({}, cap={})", self.0, self.0.cap())
    }
}

/// A Dyck automaton presenting a sofic-Dyck shift.
#[pyclass(name = "Automaton", module = "soficdyck", frozen)]
struct PyAutomaton(DyckAutomaton);

enum Method {
    Determinant,
    Substitution,
}

fn method(name: &str) -> PyResult<Method> {
    match name {
        "determinant" => Ok(Method::Determinant),
        "substitution" => Ok(Method::Substitution),
        _ => Err(PyValueError::new_err(format!(
            "unknown method `{name}`; expected determinant or substitution"
        ))),
    }
}

fn report<'py>(py: Python<'py>, passed: bool, witness: Option<String>) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("passed", passed)?;
    d.set_item("witness", witness)?;
    Ok(d)
}

impl PyAutomaton {
    fn determinism<'py>(&self, py: Python<'py>, r: DeterminismReport) -> PyResult<Bound<'py, PyDict>> {
        let witness = r.witness.as_ref().map(|w| self.0.render(&w.word));
        report(py, r.passed(), witness)
    }

    fn parse(&self, word: &str) -> PyResult<sofic_dyck::words::Word> {
        self.0.parse_word(word).map_err(value_error)
    }

    fn state(&self, id: &str) -> PyResult<usize> {
        self.0
            .state_index(id)
            .ok_or_else(|| PyValueError::new_err(format!("unknown state `{id}`")))
    }
}

#[pymethods]
impl PyAutomaton {
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<PyAutomaton> {
        builtin(name).map(PyAutomaton).map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyAutomaton> {
        DyckAutomaton::from_json(text).map(PyAutomaton).map_err(value_error)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.0.states().to_vec()
    }

    #[getter]
    fn letters(&self) -> Vec<String> {
        self.0.alphabet().letters().map(|l| self.0.render(&[l])).collect()
    }

    /// `word` is space-separated letter names.
    fn is_admissible(&self, word: &str) -> PyResult<bool> {
        Ok(self.0.is_admissible_word(&self.parse(word)?))
    }

    fn is_periodic_pattern(&self, word: &str) -> PyResult<bool> {
        self.0.is_periodic_pattern(&self.parse(word)?).map_err(value_error)
    }

    /// Number of words `u` of length `n` with `u^∞` in the shift.
    fn periodic_count(&self, n: usize) -> PyResult<u128> {
        pn_bruteforce(&self.0, n).map_err(zeta_error)
    }

    fn periodic_patterns(&self, n: usize) -> PyResult<Vec<String>> {
        let words = periodic_patterns(&self.0, n).map_err(zeta_error)?;
        Ok(words.iter().map(|w| self.0.render(w)).collect())
    }

    /// The zeta function up to `z^cap`. `right` is a separate right-reduced
    /// presentation of the same shift; by default this automaton serves as both.
    #[pyo3(signature = (cap=12, method="determinant", right=None))]
    fn zeta(&self, cap: usize, method: &str, right: Option<&PyAutomaton>) -> PyResult<PySeries> {
        let right = right.map_or(&self.0, |r| &r.0);
        let s = match method {
            "bruteforce" => zeta_bruteforce(&self.0, cap, 0),
            m => match self::method(m)? {
                Method::Determinant => zeta_det_route(&self.0, right, cap),
                Method::Substitution => zeta_subst_route(&self.0, right, cap),
            },
        };
        s.map(PySeries).map_err(zeta_error)
    }

    /// The zeta function with letters kept as variables.
    #[pyo3(signature = (cap=8, method="determinant", right=None))]
    fn zeta_multivariate(&self, cap: usize, method: &str, right: Option<&PyAutomaton>) -> PyResult<PyMultiSeries> {
        let right = right.map_or(&self.0, |r| &r.0);
        let s = match self::method(method)? {
            Method::Determinant => zeta_det_route(&self.0, right, cap),
            Method::Substitution => zeta_subst_route(&self.0, right, cap),
        };
        s.map(PyMultiSeries).map_err(zeta_error)
    }

    /// A language matrix (`D`, `C`, `Mc`, `Mr`, `CStarMc`, `MrPlusC`) as rows of series.
    #[pyo3(signature = (matrix, cap=12))]
    fn matrix(&self, matrix: &str, cap: usize) -> PyResult<Vec<Vec<PySeries>>> {
        let h = h_matrix::<TruncatedSeries>(&self.0, kind(matrix)?, cap);
        Ok((0..h.dim())
            .map(|p| (0..h.dim()).map(|q| PySeries(h.get(p, q).clone())).collect())
            .collect())
    }

    /// One entry of a language matrix, addressed by state ids.
    #[pyo3(signature = (matrix, row, col, cap=12))]
    fn series_of(&self, matrix: &str, row: &str, col: &str, cap: usize) -> PyResult<PySeries> {
        let (p, q) = (self.state(row)?, self.state(col)?);
        let h = h_matrix::<TruncatedSeries>(&self.0, kind(matrix)?, cap);
        Ok(PySeries(h.get(p, q).clone()))
    }

    #[pyo3(signature = (kind="CStarMc", max_length=6))]
    fn check_determinism<'py>(&self, py: Python<'py>, kind: &str, max_length: usize) -> PyResult<Bound<'py, PyDict>> {
        self.determinism(py, check_h_determinism(&self.0, self::kind(kind)?, max_length))
    }

    #[pyo3(signature = (kind="MrPlusC", max_length=6))]
    fn check_codeterminism<'py>(&self, py: Python<'py>, kind: &str, max_length: usize) -> PyResult<Bound<'py, PyDict>> {
        self.determinism(py, check_h_codeterminism(&self.0, self::kind(kind)?, max_length))
    }

    /// The witness, if any, is the cyclic word with two factorizations.
    #[pyo3(signature = (kind, max_total_length=6))]
    fn check_circularity<'py>(&self, py: Python<'py>, kind: &str, max_total_length: usize) -> PyResult<Bound<'py, PyDict>> {
        let r = circularity_check(&self.0, self::kind(kind)?, max_total_length).map_err(value_error)?;
        report(py, r.passed(), r.witness.map(|w| self.0.render(&w.word)))
    }

    #[pyo3(signature = (max_length=6))]
    fn check_decomposition<'py>(&self, py: Python<'py>, max_length: usize) -> PyResult<Bound<'py, PyDict>> {
        let r = decomposition_check(&self.0, max_length).map_err(zeta_error)?;
        let witness = r.violations.first().map(|v| self.0.render(&v.word));
        report(py, r.passed(), witness)
    }

    #[pyo3(signature = (max_length=6))]
    fn check_stack_equivalence<'py>(&self, py: Python<'py>, max_length: usize) -> PyResult<Bound<'py, PyDict>> {
        let r = stack_equivalence_check(&self.0, max_length);
        report(py, r.passed(), r.witness.map(|w| self.0.render(&w)))
    }

    fn __repr__(&self) -> String {
        format!(
            "Automaton(states={}, edges={})",
            self.0.state_count(),
            self.0.edges().len()
        )
    }
}

#[pyfunction(name = "builtin_names")]
fn py_builtin_names() -> Vec<&'static str> {
    builtin_names()
}

#[pymodule]
fn soficdyck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAutomaton>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<PyMultiSeries>()?;
    m.add_function(wrap_pyfunction!(py_builtin_names, m)?)?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    Ok(())
}
