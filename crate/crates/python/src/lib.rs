//! Python bindings: circuits, builders, verification, counts and lowering.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ripple_adder as core;
use ripple_adder::{BasisBatch, CommutationPolicy, Function, Gate, Style, VariantSpec};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spec(variant: &str, n: usize, incoming_carry: bool) -> PyResult<VariantSpec> {
    let f = Function::from_name(variant)
        .ok_or_else(|| value_error(format!("unknown variant `{variant}`")))?;
    Ok(VariantSpec::new(f, n).with_incoming_carry(incoming_carry))
}

/// An immutable reversible circuit.
#[pyclass(frozen, eq, skip_from_py_object, module = "pyripple")]
#[derive(Clone, PartialEq)]
struct Circuit {
    inner: core::Circuit,
}

#[pymethods]
impl Circuit {
    /// Parses the line-based text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Circuit> {
        let inner = core::text::parse(text).map_err(value_error)?;
        Ok(Circuit { inner })
    }

    fn render(&self) -> String {
        core::text::render(&self.inner)
    }

    fn diagram(&self) -> String {
        core::diagram::diagram(&self.inner)
    }

    #[getter]
    fn wire_count(&self) -> usize {
        self.inner.wire_count()
    }

    /// Number of moments, negation-only ones included.
    #[getter]
    fn moments(&self) -> usize {
        self.inner.depth()
    }

    #[getter]
    fn gate_count(&self) -> usize {
        self.inner.gate_count()
    }

    /// Role name to wire index.
    fn roles(&self) -> BTreeMap<String, usize> {
        self.inner
            .roles()
            .iter()
            .map(|(r, w)| (r.name(), w.0))
            .collect()
    }

    /// Moments as lists of `(kind, wires)` with kind one of
    /// not, cnot, ccnot, cv, cvdg.
    fn gates(&self) -> Vec<Vec<(String, Vec<usize>)>> {
        self.inner
            .moments()
            .iter()
            .map(|m| {
                m.iter()
                    .map(|g| {
                        let text = g.to_string();
                        let kind = text.split(' ').next().unwrap_or_default().to_string();
                        (kind, g.wires().iter().map(|w| w.0).collect())
                    })
                    .collect()
            })
            .collect()
    }

    /// Gate and slice counts as a dict.
    fn report(&self) -> BTreeMap<&'static str, usize> {
        core::report(&self.inner).entries().into_iter().collect()
    }

    fn invert(&self) -> Circuit {
        Circuit {
            inner: self.inner.invert(),
        }
    }

    #[pyo3(signature = (diagonal_aware = false))]
    fn reschedule(&self, diagonal_aware: bool) -> Circuit {
        let policy = if diagonal_aware {
            CommutationPolicy::DiagonalAware
        } else {
            CommutationPolicy::Disjoint
        };
        Circuit {
            inner: core::reschedule(&self.inner, policy),
        }
    }

    /// Lowers every Toffoli; returns `(circuit, depth, cancelled_cnots)`.
    fn lower(&self) -> PyResult<(Circuit, usize, usize)> {
        let r = core::lower_circuit(&self.inner).map_err(value_error)?;
        Ok((
            Circuit { inner: r.circuit },
            r.lowered_depth,
            r.cancelled_cnots,
        ))
    }

    /// Runs a classical circuit on one basis state given as a bitmask over
    /// wires (bit `w` is wire `w`).
    fn run(&self, state: u64) -> PyResult<u64> {
        let w = self.inner.wire_count();
        if w > 64 {
            return Err(value_error("run supports at most 64 wires"));
        }
        let mut batch = BasisBatch::zeros(w, 1);
        for i in 0..w {
            batch.set_bit(i, 0, (state >> i) & 1 == 1);
        }
        let out = core::run_basis(&self.inner, &batch).map_err(value_error)?;
        Ok((0..w).map(|i| u64::from(out.bit(i, 0)) << i).sum())
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(wires={}, moments={}, gates={})",
            self.inner.wire_count(),
            self.inner.depth(),
            self.inner.gate_count()
        )
    }
}

/// Builds an adder variant: add, add-mod, high-bit, compare or subtract.
#[pyfunction]
#[pyo3(signature = (variant, n, incoming_carry = false, simple = false))]
fn build(variant: &str, n: usize, incoming_carry: bool, simple: bool) -> PyResult<Circuit> {
    let style = if simple {
        Style::Simple
    } else {
        Style::Optimized
    };
    let spec = spec(variant, n, incoming_carry)?.with_style(style);
    let inner = core::build(&spec).map_err(value_error)?;
    Ok(Circuit { inner })
}

/// Checks `circuit` against the arithmetic oracle. Exhaustive unless
/// `samples` is given. Returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (circuit, variant, n, incoming_carry = false, samples = None, seed = 0))]
fn verify(
    circuit: &Circuit,
    variant: &str,
    n: usize,
    incoming_carry: bool,
    samples: Option<u64>,
    seed: u64,
) -> PyResult<BTreeMap<&'static str, Py<PyAny>>> {
    let spec = spec(variant, n, incoming_carry)?;
    let report = match samples {
        Some(k) => core::check_random(&circuit.inner, &spec, k, seed),
        None => core::check_exhaustive(&circuit.inner, &spec),
    }
    .map_err(value_error)?;
    Python::attach(|py| {
        let mut out = BTreeMap::new();
        out.insert(
            "passed",
            report
                .passed()
                .into_pyobject(py)?
                .to_owned()
                .into_any()
                .unbind(),
        );
        out.insert(
            "inputs_checked",
            report.inputs_checked.into_pyobject(py)?.into_any().unbind(),
        );
        out.insert(
            "mismatches",
            report
                .mismatches
                .len()
                .into_pyobject(py)?
                .into_any()
                .unbind(),
        );
        out.insert(
            "text",
            report.to_kv(20).into_pyobject(py)?.into_any().unbind(),
        );
        Ok(out)
    })
}

/// The reference table evaluated at `n`, with measured counts.
#[pyfunction]
fn table(n: usize) -> PyResult<String> {
    if n < core::table::MIN_TABLE_WIDTH {
        return Err(value_error("the table is stated for n >= 3"));
    }
    let results = core::table::ReferenceTable::default().evaluate(n);
    Ok(core::table::render_table(n, &results))
}

/// The five controlled-rotation gates replacing `Toffoli(a, b, t)`.
#[pyfunction]
fn lower_toffoli(a: usize, b: usize, t: usize) -> PyResult<Vec<String>> {
    let gates = core::lower_toffoli(&Gate::toffoli(a, b, t)).map_err(value_error)?;
    Ok(gates.iter().map(Gate::to_string).collect())
}

#[pymodule]
fn pyripple(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Circuit>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(lower_toffoli, m)?)?;
    Ok(())
}
