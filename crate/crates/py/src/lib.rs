//! Python bindings. Integers cross the boundary as Python `int`, so entries
//! of any size are exact on both sides.

use nakajima_core::oracle::{full_report, Level};
use nakajima_core::polytope::polytope_vertices;
use nakajima_core::{
    corpus, dual_generators, elimination_plan, full_presentation, is_admissible, render,
    Admissibility, Format, FreeParamMatrix, InputDocument,
};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An admissible-shaped free-parameter matrix. Row `i` holds the free
/// entries `m_{i,1..i}`.
#[pyclass(name = "ParamMatrix", frozen, module = "nakajima")]
struct PyParamMatrix {
    inner: FreeParamMatrix,
}

impl PyParamMatrix {
    fn admissible(&self) -> PyResult<&FreeParamMatrix> {
        match is_admissible(&self.inner) {
            Admissibility::Admissible => Ok(&self.inner),
            Admissibility::Violation(v) => Err(value_error(format!(
                "inadmissible at level {}: epsilon {:?}, pairing {}",
                v.level,
                v.epsilon.bits(),
                v.pairing
            ))),
        }
    }
}

#[pymethods]
impl PyParamMatrix {
    #[new]
    fn new(rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let d = rows.len() + 1;
        FreeParamMatrix::new(d, rows)
            .map(|inner| Self { inner })
            .map_err(value_error)
    }

    /// Parses `{"d": ..., "rows": [...]}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = InputDocument::from_json(text).map_err(value_error)?;
        doc.into_params()
            .map(|inner| Self { inner })
            .map_err(value_error)
    }

    /// A built-in example such as `"fig3"` or `"simplex(4,2)"`.
    #[staticmethod]
    #[pyo3(signature = (name, *args))]
    fn example(name: &str, args: Vec<i64>) -> PyResult<Self> {
        corpus::lookup(name, &args)
            .map(|inner| Self { inner })
            .map_err(value_error)
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.inner.free_rows().to_vec()
    }

    fn to_json(&self) -> String {
        self.inner.to_document().to_json()
    }

    fn is_admissible(&self) -> bool {
        is_admissible(&self.inner).is_admissible()
    }

    /// `None` when admissible, otherwise the failing level, epsilon and pairing.
    fn admissibility_witness<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        match is_admissible(&self.inner) {
            Admissibility::Admissible => Ok(None),
            Admissibility::Violation(v) => {
                let dict = PyDict::new(py);
                dict.set_item("level", v.level)?;
                // A Vec<u8> would arrive as bytes.
                let bits: Vec<u32> = v.epsilon.bits().iter().map(|&b| u32::from(b)).collect();
                dict.set_item("epsilon", bits)?;
                dict.set_item("pairing", v.pairing)?;
                Ok(Some(dict))
            }
        }
    }

    fn vertices(&self) -> PyResult<Vec<Vec<BigInt>>> {
        Ok(polytope_vertices(self.admissible()?))
    }

    fn dual_generators(&self) -> Vec<Vec<BigInt>> {
        dual_generators(&self.inner).gens
    }

    fn hilbert_basis(&self) -> PyResult<Vec<Vec<BigInt>>> {
        let plan = elimination_plan(self.admissible()?);
        Ok(plan.hilbert.into_iter().map(|h| h.covector).collect())
    }

    /// The binomials as strings like `"z1^2 - z2*z4"`.
    #[pyo3(signature = (minimal = false))]
    fn equations(&self, minimal: bool) -> PyResult<Vec<String>> {
        let p = full_presentation(self.admissible()?).map_err(value_error)?;
        let text = render(&p, Format::Text, minimal);
        Ok(text.lines().map(str::to_owned).collect())
    }

    #[pyo3(signature = (minimal = false))]
    fn equations_json(&self, minimal: bool) -> PyResult<String> {
        let mut p = full_presentation(self.admissible()?).map_err(value_error)?;
        if !minimal {
            p.minimal = None;
        }
        Ok(render(&p, Format::Json, minimal))
    }

    /// Runs the brute-force verifiers; returns the JSON report.
    #[pyo3(signature = (level = "quick", seed = 0))]
    fn verify(&self, level: &str, seed: u64) -> PyResult<String> {
        let level = match level {
            "quick" => Level::Quick,
            "exhaustive" => Level::Exhaustive,
            other => return Err(value_error(format!("unknown level {other:?}"))),
        };
        Ok(full_report(&self.inner.to_document(), level, seed).to_json())
    }

    fn __repr__(&self) -> String {
        format!("ParamMatrix({})", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

#[pymodule]
pub fn nakajima(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParamMatrix>()?;
    m.add("EXAMPLES", corpus::NAMES.to_vec())?;
    Ok(())
}
