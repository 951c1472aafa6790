//! Python bindings. Letters and words are 1-based, as on the command line.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use stringcone::cluster::{self, Seed as CoreSeed};
use stringcone::cone::{self, StringSystem};
use stringcone::headline::{compare_printed, headline_report, D4_CORRECTED, D4_PRINTED};
use stringcone::lie::{CartanDatum, Word};
use stringcone::poly::{format_rational, LaurentPolynomial};
use stringcone::polyhedral::{classify_redundancy, InequalitySystem};
use stringcone::scan::{scan_conjectures, ScanOptions, WordSource};
use stringcone::special::{self, SubwordVariant, TrailConvention, DEFAULT_WEYL_CAP};
use stringcone::Error;

fn err(e: Error) -> PyErr {
    if e.is_usage_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

#[derive(FromPyObject)]
enum WordArg {
    Text(String),
    Letters(Vec<usize>),
}

impl WordArg {
    fn resolve(&self, c: &CartanDatum) -> PyResult<Word> {
        let w = match self {
            WordArg::Text(s) => c.parse_word(s),
            WordArg::Letters(v) => Word::from_one_based(v).and_then(|w| c.check_word(&w).map(|_| w)),
        };
        w.map_err(err)
    }
}

fn letter(c: &CartanDatum, l: usize) -> PyResult<usize> {
    if l == 0 || l > c.rank() {
        return Err(err(Error::LetterOutOfRange { letter: l, rank: c.rank() }));
    }
    Ok(l - 1)
}

fn json_to_py<T: serde::Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

/// A simply-laced Cartan type such as "A3" or "D4".
#[pyclass(name = "CartanType", frozen)]
struct PyCartan(CartanDatum);

#[pymethods]
impl PyCartan {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        name.parse().map(PyCartan).map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn num_positive_roots(&self) -> usize {
        self.0.num_positive_roots()
    }

    fn weyl_order(&self) -> u128 {
        self.0.weyl_order()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.0.matrix().to_vec()
    }

    fn longest_word(&self) -> Vec<usize> {
        self.0.longest_word().one_based()
    }

    #[pyo3(signature = (cap=None))]
    fn reduced_words(&self, cap: Option<usize>) -> Vec<Vec<usize>> {
        self.0.all_longest_words().take(cap.unwrap_or(usize::MAX)).map(|w| w.one_based()).collect()
    }

    fn is_longest_word(&self, word: WordArg) -> PyResult<bool> {
        Ok(self.0.is_longest_word(&word.resolve(&self.0)?))
    }

    fn is_minuscule(&self, l: usize) -> PyResult<bool> {
        Ok(self.0.is_minuscule(letter(&self.0, l)?))
    }

    fn dual_letter(&self, l: usize) -> PyResult<usize> {
        Ok(self.0.i_star(letter(&self.0, l)?) + 1)
    }

    fn __repr__(&self) -> String {
        format!("CartanType('{}{}')", self.0.family(), self.0.rank())
    }
}

/// Exact Laurent polynomial with rational coefficients.
#[pyclass(name = "LaurentPolynomial", frozen)]
struct PyPoly(LaurentPolynomial);

#[pymethods]
impl PyPoly {
    #[staticmethod]
    fn parse(text: &str, nvars: usize) -> PyResult<Self> {
        LaurentPolynomial::parse(text, nvars).map(PyPoly).map_err(err)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.0.nvars()
    }

    fn num_terms(&self) -> usize {
        self.0.num_terms()
    }

    /// `[(coefficient as string, exponent list)]`, highest term first.
    fn terms(&self) -> Vec<(String, Vec<i64>)> {
        self.0.terms().rev().map(|(e, c)| (format_rational(c), e.as_i64())).collect()
    }

    fn is_multiplicity_free(&self) -> bool {
        self.0.is_multiplicity_free()
    }

    /// Exponent vectors of the min-plus tropicalization.
    fn tropical_forms(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(self.0.tropicalize().map_err(err)?.vectors())
    }

    fn tropical_eval(&self, point: Vec<i64>) -> PyResult<Option<i64>> {
        Ok(self.0.tropicalize().map_err(err)?.eval(&point))
    }

    fn to_json(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        json_to_py(py, &self.0.to_json())
    }

    fn __add__(&self, o: &PyPoly) -> PyResult<Self> {
        self.0.checked_add(&o.0).map(PyPoly).map_err(err)
    }

    fn __sub__(&self, o: &PyPoly) -> PyResult<Self> {
        self.0.checked_sub(&o.0).map(PyPoly).map_err(err)
    }

    fn __mul__(&self, o: &PyPoly) -> PyResult<Self> {
        self.0.checked_mul(&o.0).map(PyPoly).map_err(err)
    }

    fn __eq__(&self, o: &PyPoly) -> bool {
        self.0 == o.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPolynomial('{}')", self.0)
    }
}

/// Seed of a reduced word: exchange matrix plus frozen vertices.
#[pyclass(name = "Seed", frozen)]
struct PySeed(CoreSeed);

#[pymethods]
impl PySeed {
    #[staticmethod]
    fn from_word(cartan: &PyCartan, word: WordArg) -> PyResult<Self> {
        let w = word.resolve(&cartan.0)?;
        CoreSeed::from_word(&cartan.0, &w).map(PySeed).map_err(err)
    }

    fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        self.0.omega().to_vec()
    }

    fn frozen(&self) -> Vec<usize> {
        self.0.frozen().iter().map(|k| k + 1).collect()
    }

    fn mutate(&self, vertex: usize) -> PyResult<Self> {
        if vertex == 0 || vertex > self.0.len() {
            return Err(PyValueError::new_err(format!("vertex {vertex} out of range")));
        }
        self.0.mutate(vertex - 1).map(PySeed).map_err(err)
    }

    fn optimized_frozen(&self) -> Vec<usize> {
        self.0.optimized_frozen().iter().map(|k| k + 1).collect()
    }

    fn __eq__(&self, o: &PySeed) -> bool {
        self.0.same_quiver(&o.0)
    }
}

fn cartan(name: &str) -> PyResult<CartanDatum> {
    name.parse().map_err(err)
}

/// Potential summand of `letter` in the cluster chart of `word`.
#[pyfunction]
fn potential(cartan_type: &str, word: WordArg, l: usize) -> PyResult<PyPoly> {
    let c = cartan(cartan_type)?;
    let i = word.resolve(&c)?;
    cluster::potential(&c, &i, letter(&c, l)?).map(PyPoly).map_err(err)
}

/// Potential summand pulled back to string coordinates.
#[pyfunction]
fn varsigma(cartan_type: &str, word: WordArg, l: usize) -> PyResult<PyPoly> {
    let c = cartan(cartan_type)?;
    let i = word.resolve(&c)?;
    cone::varsigma(&c, &i, letter(&c, l)?).map(PyPoly).map_err(err)
}

/// Every letter's ς and tropical forms, as a dict.
#[pyfunction]
fn string_cone(py: Python<'_>, cartan_type: &str, word: WordArg) -> PyResult<Py<PyAny>> {
    let c = cartan(cartan_type)?;
    let i = word.resolve(&c)?;
    json_to_py(py, &StringSystem::new(&c, &i).map_err(err)?.to_json())
}

/// Facet classification with Farkas certificates for the chosen letters (all by default).
#[pyfunction]
#[pyo3(signature = (cartan_type, word, letters=None))]
fn facets(py: Python<'_>, cartan_type: &str, word: WordArg, letters: Option<Vec<usize>>) -> PyResult<Py<PyAny>> {
    let c = cartan(cartan_type)?;
    let i = word.resolve(&c)?;
    let sys = StringSystem::new(&c, &i).map_err(err)?;
    let ls = letters.map(|v| v.into_iter().map(|l| letter(&c, l)).collect::<PyResult<Vec<_>>>()).transpose()?;
    let isys = InequalitySystem::from_string_system(&sys, ls.as_deref()).map_err(err)?;
    json_to_py(py, &classify_redundancy(&isys).map_err(err)?.to_json())
}

/// Image of a string-cone point under the piecewise-linear map between two words.
#[pyfunction]
fn psi(cartan_type: &str, source: WordArg, target: WordArg, point: Vec<i64>) -> PyResult<Vec<i64>> {
    let c = cartan(cartan_type)?;
    let i = source.resolve(&c)?;
    let j = target.resolve(&c)?;
    cone::psi(&c, &i, &j).and_then(|m| m.apply(&point)).map_err(err)
}

/// Trails of a minuscule letter: list of `{weights, c, d}`.
#[pyfunction]
#[pyo3(signature = (cartan_type, word, l, literal=false))]
fn trails(py: Python<'_>, cartan_type: &str, word: WordArg, l: usize, literal: bool) -> PyResult<Py<PyAny>> {
    let c = cartan(cartan_type)?;
    let i = word.resolve(&c)?;
    let conv = if literal { TrailConvention::Literal } else { TrailConvention::Dual };
    json_to_py(py, &special::enumerate_trails(&c, &i, letter(&c, l)?, conv).map_err(err)?)
}

/// Linear forms from the subword description of a minuscule letter.
#[pyfunction]
fn subword_forms(cartan_type: &str, word: WordArg, l: usize) -> PyResult<Vec<Vec<i64>>> {
    let c = cartan(cartan_type)?;
    let i = word.resolve(&c)?;
    Ok(special::trail_forms_subword(&c, &i, letter(&c, l)?, SubwordVariant::Prefix).map_err(err)?.into_iter().collect())
}

/// Move list (as strings) of a simply-braided witness, or None.
#[pyfunction]
fn simply_braided(cartan_type: &str, word: WordArg, l: usize) -> PyResult<Option<Vec<String>>> {
    let c = cartan(cartan_type)?;
    let i = word.resolve(&c)?;
    let w = special::simply_braided(&c, &i, letter(&c, l)?).map_err(err)?;
    Ok(w.map(|w| w.moves.moves.iter().map(|m| m.to_string()).collect()))
}

/// Nice words of the type, 1-based.
#[pyfunction]
#[pyo3(signature = (cartan_type, weyl_cap=DEFAULT_WEYL_CAP))]
fn nice_words(cartan_type: &str, weyl_cap: u128) -> PyResult<Vec<Vec<usize>>> {
    let c = cartan(cartan_type)?;
    Ok(special::nice_machinery(&c, weyl_cap).map_err(err)?.nice_words.iter().map(|w| w.one_based()).collect())
}

/// Conjecture scan summary; all words, or a seeded sample of `cap` words.
#[pyfunction]
#[pyo3(signature = (cartan_type, cap=None, seed=0, output=None))]
fn scan(
    py: Python<'_>,
    cartan_type: &str,
    cap: Option<usize>,
    seed: u64,
    output: Option<std::path::PathBuf>,
) -> PyResult<Py<PyAny>> {
    let c = cartan(cartan_type)?;
    let (summary, _) = py
        .detach(|| scan_conjectures(&c, &WordSource::All { cap, seed }, &ScanOptions::default(), output.as_deref()))
        .map_err(err)?;
    json_to_py(py, &summary)
}

/// The D4 example bundle on the printed word and on (2,1,3,4)^3.
#[pyfunction]
fn verify_d4(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let c = cartan("D4")?;
    let mut out = Vec::new();
    for w in [D4_PRINTED, D4_CORRECTED] {
        let i = Word::from_one_based(&w).map_err(err)?;
        let rep = headline_report(&c, &i, 1).map_err(err)?;
        let cmp = compare_printed(&c, &i).map_err(err)?;
        out.push(serde_json::json!({ "ok": rep.ok(), "report": rep, "printed_comparison": cmp }));
    }
    json_to_py(py, &out)
}

#[pymodule]
fn pystringcone(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCartan>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PySeed>()?;
    m.add_function(wrap_pyfunction!(potential, m)?)?;
    m.add_function(wrap_pyfunction!(varsigma, m)?)?;
    m.add_function(wrap_pyfunction!(string_cone, m)?)?;
    m.add_function(wrap_pyfunction!(facets, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(trails, m)?)?;
    m.add_function(wrap_pyfunction!(subword_forms, m)?)?;
    m.add_function(wrap_pyfunction!(simply_braided, m)?)?;
    m.add_function(wrap_pyfunction!(nice_words, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(verify_d4, m)?)?;
    Ok(())
}
