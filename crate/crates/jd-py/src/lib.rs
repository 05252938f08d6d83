use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use jd_core::dsl::{pretty, to_generic};
use jd_core::maps::bu as blow_up;
use jd_core::necklace::{enumerate, kernel_report};
use jd_core::relations::Presentation;
use jd_core::weight::{evaluate, StructureConstants};
use jd_core::JdError;

fn err(e: JdError) -> PyErr {
    match e {
        JdError::Cap { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Canonical generic form of a diagram.
#[pyfunction]
fn canonical(expr: &str) -> PyResult<String> {
    let d = jd_core::parse(expr).map_err(err)?;
    Ok(to_generic(&jd_core::canon::canonicalize(&d)))
}

/// `(sign, name)` with `expr = sign * name` modulo AS.
#[pyfunction]
fn name(expr: &str) -> PyResult<(i8, String)> {
    Ok(pretty(&jd_core::parse(expr).map_err(err)?))
}

/// `(ideg, betti, legs, connected)`.
#[pyfunction]
fn stats(expr: &str) -> PyResult<(usize, usize, usize, bool)> {
    let s = jd_core::parse(expr).map_err(err)?.stats();
    Ok((s.ideg, s.betti, s.legs, s.connected))
}

/// `(rank, torsion factors)` of a stratum.
#[pyfunction]
#[pyo3(signature = (n, loops, genus=1))]
fn module(n: usize, loops: usize, genus: u8) -> PyResult<(usize, Vec<String>)> {
    let p = Presentation::cached(n, loops, genus).map_err(err)?;
    Ok((p.rank(), p.torsion().iter().map(|t| t.to_string()).collect()))
}

#[pyfunction]
fn bu(expr: &str) -> PyResult<String> {
    let d = blow_up(&jd_core::parse(expr).map_err(err)?).map_err(err)?;
    Ok(pretty(&d).1)
}

/// sl2 weight as `[(coefficient, [(label, index), ...]), ...]`.
#[pyfunction]
fn weight(expr: &str) -> PyResult<Vec<(i64, Vec<(String, u8)>)>> {
    let w = evaluate(&StructureConstants::sl2(), &jd_core::parse(expr).map_err(err)?);
    Ok(w.terms().map(|(m, c)| (c, m.iter().map(|(l, e)| (l.to_string(), *e)).collect())).collect())
}

/// `(prime, double prime)` counts for `2m` beads.
#[pyfunction]
fn necklace_counts(m: usize, genus: u8) -> PyResult<(usize, usize)> {
    let (p, d) = enumerate(m, genus).map_err(err)?;
    Ok((p.len(), d.len()))
}

/// `(kernel rank, expected rank)` for the one-loop kernel computation.
#[pyfunction]
fn kernel_rank(m: usize, genus: u8) -> PyResult<(usize, u64)> {
    let r = kernel_report(m, genus).map_err(err)?;
    Ok((r.kernel_rank, r.expected))
}

#[pymodule]
fn jd_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(name, m)?)?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    m.add_function(wrap_pyfunction!(module, m)?)?;
    m.add_function(wrap_pyfunction!(bu, m)?)?;
    m.add_function(wrap_pyfunction!(weight, m)?)?;
    m.add_function(wrap_pyfunction!(necklace_counts, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_rank, m)?)?;
    Ok(())
}
