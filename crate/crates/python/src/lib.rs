//! Python bindings for `permseq`.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use permseq::almost_decomp::{self, FPriority};
use permseq::enumerate;
use permseq::injections;
use permseq::partitions::{self, Family, Partition};
use permseq::qseries;
use permseq::report;
use permseq::PatternBasis;

fn err(e: permseq::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_basis(s: &str) -> PyResult<PatternBasis> {
    PatternBasis::parse(s).map_err(err)
}

fn partition(parts: Vec<usize>) -> PyResult<Partition> {
    Partition::new(parts).map_err(err)
}

/// A permutation in one-line notation with values `1..=n`.
#[pyclass(name = "Permutation", module = "permseq_py", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation(permseq::Permutation);

impl PyPermutation {
    fn wrap(p: permseq::Permutation) -> Self {
        PyPermutation(p)
    }
}

#[derive(FromPyObject)]
enum PermLike {
    Text(String),
    Values(Vec<usize>),
}

#[pymethods]
impl PyPermutation {
    /// Accepts `"34152"`, `"10,9,8,..."` or a list of values.
    #[new]
    fn new(p: PermLike) -> PyResult<Self> {
        let p = match p {
            PermLike::Text(s) => s.parse().map_err(err)?,
            PermLike::Values(v) => permseq::Permutation::new(v).map_err(err)?,
        };
        Ok(PyPermutation(p))
    }

    #[getter]
    fn values(&self) -> Vec<usize> {
        self.0.values().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}')", self.0.to_text())
    }

    fn inv(&self) -> usize {
        self.0.inv()
    }

    fn lehmer_code(&self) -> Vec<usize> {
        self.0.lehmer_code().entries().to_vec()
    }

    fn inverse(&self) -> Self {
        Self::wrap(self.0.inverse())
    }

    fn reverse(&self) -> Self {
        Self::wrap(self.0.reverse())
    }

    fn complement(&self) -> Self {
        Self::wrap(self.0.complement())
    }

    fn reverse_complement(&self) -> Self {
        Self::wrap(self.0.reverse_complement())
    }

    fn direct_sum(&self, other: &PyPermutation) -> Self {
        Self::wrap(self.0.direct_sum(&other.0))
    }

    fn skew_sum(&self, other: &PyPermutation) -> Self {
        Self::wrap(self.0.skew_sum(&other.0))
    }

    fn components(&self) -> Vec<Self> {
        self.0.components().into_iter().map(Self::wrap).collect()
    }

    fn contains(&self, pattern: &PyPermutation) -> bool {
        self.0.contains(&pattern.0)
    }

    /// `basis` is a comma separated list such as `"1324,1342"`.
    fn avoids(&self, basis: &str) -> PyResult<bool> {
        Ok(self.0.avoids(&parse_basis(basis)?))
    }

    fn delete(&self, values: Vec<usize>) -> PyResult<Self> {
        self.0.delete(&values).map(Self::wrap).map_err(err)
    }
}

#[pyfunction]
fn generate_avoiders(basis: &str, n: usize, k_max: usize) -> PyResult<Vec<PyPermutation>> {
    let v = enumerate::generate_avoiders(&parse_basis(basis)?, n, k_max).map_err(err)?;
    Ok(v.into_iter().map(PyPermutation::wrap).collect())
}

/// Rows `n = 1..=n_max`, columns `k = 0..=k_max`.
#[pyfunction]
fn count_table(basis: &str, n_max: usize, k_max: usize) -> PyResult<Vec<Vec<u64>>> {
    let t = enumerate::count_table(&parse_basis(basis)?, n_max, k_max).map_err(err)?;
    Ok(t.rows().to_vec())
}

/// Rows `n = 1..n_max`; `None` marks blank cells.
#[pyfunction]
fn row_differences(basis: &str, n_max: usize, k_max: usize) -> PyResult<Vec<Vec<Option<i64>>>> {
    let t = enumerate::count_table(&parse_basis(basis)?, n_max, k_max).map_err(err)?;
    Ok(enumerate::row_differences(&t).rows().to_vec())
}

/// Stabilized limit values `c_0, c_1, ...` from a table of size `n_max`.
#[pyfunction]
#[pyo3(signature = (basis, n_max, k_max, tail_window = enumerate::DEFAULT_TAIL_WINDOW))]
fn limit_sequence(basis: &str, n_max: usize, k_max: usize, tail_window: usize) -> PyResult<Vec<u64>> {
    let t = enumerate::count_table(&parse_basis(basis)?, n_max, k_max).map_err(err)?;
    Ok(enumerate::limit_report(&t, tail_window).stable_prefix())
}

/// Image and certificate line of the `{1324,231}` injection.
#[pyfunction]
fn inject_1324_231(p: &PyPermutation) -> PyResult<(PyPermutation, String)> {
    let (s, b) = injections::inject_1324_231(&p.0).map_err(err)?;
    Ok((PyPermutation(s), b.to_string()))
}

#[pyfunction]
fn inject_1324_231_inverse(s: &PyPermutation) -> PyResult<PyPermutation> {
    injections::inject_1324_231_inverse(&s.0).map(PyPermutation).map_err(err)
}

fn priority(alternate: bool) -> FPriority {
    if alternate {
        FPriority::Alternate
    } else {
        FPriority::Paper
    }
}

#[pyfunction]
#[pyo3(signature = (p, alternate = false))]
fn f_map(p: &PyPermutation, alternate: bool) -> PyResult<PyPermutation> {
    almost_decomp::f_map_with(&p.0, priority(alternate)).map(PyPermutation).map_err(err)
}

/// The f-map case name, or `None` for permutations outside its domain.
#[pyfunction]
fn f_case(p: &PyPermutation) -> Option<String> {
    almost_decomp::f_case(&p.0, FPriority::Paper).map(|c| format!("{:?}", c.tag))
}

#[pyfunction]
fn classify_necessary(p: &PyPermutation) -> bool {
    almost_decomp::classify_necessary(&p.0)
}

#[pyfunction]
fn classify_sufficient(p: &PyPermutation) -> bool {
    almost_decomp::classify_sufficient(&p.0)
}

/// The bounds row for patterns of length `n` as a dict.
#[pyfunction]
#[pyo3(signature = (n, alternate = false))]
fn compat_row(py: Python<'_>, n: usize, alternate: bool) -> PyResult<Py<pyo3::types::PyDict>> {
    let (row, _) = almost_decomp::compat_table(n, priority(alternate)).map_err(err)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("n", row.n)?;
    d.set_item("total", row.total)?;
    d.set_item("sufficient_incompatible", row.sufficient_incompatible)?;
    d.set_item("clb", row.clb)?;
    d.set_item("necessary_incompatible", row.necessary_incompatible)?;
    d.set_item("necessary_compatible", row.necessary_compatible)?;
    d.set_item("cub", row.cub)?;
    d.set_item("sufficient_compatible", row.sufficient_compatible)?;
    Ok(d.unbind())
}

#[pyfunction]
#[pyo3(signature = (name, k = qseries::DEFAULT_ORDER))]
fn named_gf(name: &str, k: usize) -> PyResult<Vec<BigInt>> {
    Ok(qseries::named_gf(name, k).map_err(err)?.coeffs().to_vec())
}

#[pyfunction]
fn av_1324_1342(n: usize, k: usize) -> PyResult<BigInt> {
    qseries::av_1324_1342(n, k).map_err(err)
}

#[pyfunction]
fn lambda_(p: &PyPermutation) -> PyResult<Vec<usize>> {
    Ok(partitions::lambda(&p.0).map_err(err)?.parts().to_vec())
}

#[pyfunction]
fn lambda_inverse(parts: Vec<usize>) -> PyResult<PyPermutation> {
    Ok(PyPermutation(partitions::lambda_inverse(&partition(parts)?)))
}

#[pyfunction]
fn is_spm(parts: Vec<usize>) -> PyResult<bool> {
    Ok(partitions::is_spm(&partition(parts)?))
}

#[pyfunction]
fn spm_generate(k: usize) -> Vec<Vec<usize>> {
    partitions::spm_generate(k).into_iter().map(|l| l.parts().to_vec()).collect()
}

#[pyfunction]
fn is_steep(parts: Vec<usize>) -> PyResult<bool> {
    Ok(partitions::is_steep(&partition(parts)?))
}

#[pyfunction]
fn is_convex_penny(parts: Vec<usize>) -> PyResult<bool> {
    Ok(partitions::is_convex_penny(&partition(parts)?))
}

/// Whether `Λ(I_k(132, p))` equals the partition family of `p` for all
/// `k <= k_max`.
#[pyfunction]
fn verify_family(pattern: &PyPermutation, k_max: usize) -> PyResult<bool> {
    let fam = Family::from_pattern(&pattern.0)
        .ok_or_else(|| PyValueError::new_err(format!("no family for {}", pattern.0)))?;
    Ok(partitions::verify_named_family(fam, k_max).map_err(err)?.ok())
}

/// `(name, ok)` for each of the 22 embedded appendix tables.
#[pyfunction]
fn golden_check() -> PyResult<Vec<(String, bool)>> {
    let r = report::run_golden(None).map_err(err)?;
    Ok(r.into_iter().map(|g| (g.name.clone(), g.ok())).collect())
}

#[pymodule]
fn permseq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_function(wrap_pyfunction!(generate_avoiders, m)?)?;
    m.add_function(wrap_pyfunction!(count_table, m)?)?;
    m.add_function(wrap_pyfunction!(row_differences, m)?)?;
    m.add_function(wrap_pyfunction!(limit_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(inject_1324_231, m)?)?;
    m.add_function(wrap_pyfunction!(inject_1324_231_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(f_map, m)?)?;
    m.add_function(wrap_pyfunction!(f_case, m)?)?;
    m.add_function(wrap_pyfunction!(classify_necessary, m)?)?;
    m.add_function(wrap_pyfunction!(classify_sufficient, m)?)?;
    m.add_function(wrap_pyfunction!(compat_row, m)?)?;
    m.add_function(wrap_pyfunction!(named_gf, m)?)?;
    m.add_function(wrap_pyfunction!(av_1324_1342, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(is_spm, m)?)?;
    m.add_function(wrap_pyfunction!(spm_generate, m)?)?;
    m.add_function(wrap_pyfunction!(is_steep, m)?)?;
    m.add_function(wrap_pyfunction!(is_convex_penny, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(golden_check, m)?)?;
    Ok(())
}
