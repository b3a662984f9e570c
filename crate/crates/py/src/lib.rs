//! Python bindings: a `BchCode` class plus a few polynomial helpers.
//!
//! Polynomials cross the boundary as hex strings (bit i of the value is
//! the coefficient of x^i); messages and codewords as `bytes` in the same
//! MSB-first layout the CLI uses. Build with cargo and rename the cdylib
//! to `bchcrt_py.so` (see `python/smoke_test.py`), or point maturin at
//! this crate.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bchcrt::{
    cost_report, encode_systematic, Backend, BchCode, Codeword, CrtPlan, Datapath, Gf2Poly, Message,
};

fn value_err(e: bchcrt::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_poly(s: &str) -> PyResult<Gf2Poly> {
    s.parse::<Gf2Poly>().map_err(value_err)
}

/// A narrow-sense binary BCH code of length 2^t − 1 together with its
/// CRT encoding plan.
#[pyclass(name = "BchCode", module = "bchcrt_py")]
struct PyBchCode {
    code: BchCode,
}

#[pymethods]
impl PyBchCode {
    /// Build the code. `prim_poly` overrides the default primitive
    /// polynomial; hex ("13") and exponent-list ("x^4+x+1") forms are
    /// both accepted.
    #[new]
    #[pyo3(signature = (t, delta, prim_poly=None))]
    fn new(t: u32, delta: usize, prim_poly: Option<&str>) -> PyResult<Self> {
        let prim = prim_poly.map(parse_poly).transpose()?;
        Ok(PyBchCode {
            code: BchCode::build(t, delta, prim).map_err(value_err)?,
        })
    }

    #[getter]
    fn t(&self) -> u32 {
        self.code.t()
    }

    #[getter]
    fn n(&self) -> usize {
        self.code.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.k()
    }

    #[getter]
    fn delta(&self) -> usize {
        self.code.delta()
    }

    /// Generator polynomial as a hex string.
    fn generator(&self) -> String {
        self.code.generator().to_hex()
    }

    /// Generator polynomial in exponent-list form.
    fn generator_terms(&self) -> String {
        self.code.generator().to_terms()
    }

    fn prim_poly(&self) -> String {
        self.code.field().prim_poly().to_hex()
    }

    /// The irreducible factors of the generator, hex, sorted by coset
    /// representative.
    fn factors(&self) -> Vec<String> {
        self.code.factors().iter().map(|w| w.to_hex()).collect()
    }

    /// The cyclotomic cosets behind the factors, in matching order.
    fn cosets(&self) -> Vec<Vec<usize>> {
        self.code
            .cosets()
            .iter()
            .map(|c| c.members().to_vec())
            .collect()
    }

    /// JSON descriptor: {t, N, K, delta, prim_poly, g, factors}.
    fn descriptor_json(&self) -> String {
        self.code.descriptor().to_json()
    }

    /// Systematically encode a ceil(K/8)-byte message; returns the
    /// ceil(N/8)-byte codeword. Backends: "naive", "lfsr_direct", "crt".
    #[pyo3(signature = (message, backend="crt"))]
    fn encode(&self, message: &[u8], backend: &str) -> PyResult<Vec<u8>> {
        let backend: Backend = backend.parse().map_err(value_err)?;
        let m = Message::from_bytes(message, self.code.k()).map_err(value_err)?;
        let cw = encode_systematic(&self.code, &m, backend).map_err(value_err)?;
        Ok(cw.to_bytes())
    }

    /// True iff the word vanishes at every designed root α^1..α^{δ−1}.
    fn verify(&self, codeword: &[u8]) -> PyResult<bool> {
        let cw = Codeword::from_bytes(codeword, self.code.n()).map_err(value_err)?;
        self.code.verify_codeword(&cw).map_err(value_err)
    }

    /// The smallest failing root exponent of a word, or None if it is a
    /// codeword.
    fn first_failing_root(&self, codeword: &[u8]) -> PyResult<Option<usize>> {
        let cw = Codeword::from_bytes(codeword, self.code.n()).map_err(value_err)?;
        self.code.first_failing_root(&cw).map_err(value_err)
    }

    /// Rem_g(f) through the CRT branch decomposition; `f` is hex.
    fn crt_remainder(&self, f: &str) -> PyResult<String> {
        let f = parse_poly(f)?;
        let plan = CrtPlan::new(&self.code).map_err(value_err)?;
        Ok(plan.remainder(&f).to_hex())
    }

    /// XOR-gate and fanout ledger of the branch-parallel datapath, JSON.
    fn cost_report_json(&self) -> PyResult<String> {
        let plan = CrtPlan::new(&self.code).map_err(value_err)?;
        let dp = Datapath::build(&plan);
        Ok(cost_report(&self.code, &plan, &dp).to_json())
    }

    /// Same ledger as a human-readable table.
    fn cost_report_table(&self) -> PyResult<String> {
        let plan = CrtPlan::new(&self.code).map_err(value_err)?;
        let dp = Datapath::build(&plan);
        Ok(cost_report(&self.code, &plan, &dp).to_table())
    }

    fn __repr__(&self) -> String {
        format!(
            "BchCode(t={}, delta={}, N={}, K={}, r={})",
            self.code.t(),
            self.code.delta(),
            self.code.n(),
            self.code.k(),
            self.code.r()
        )
    }
}

/// Carry-less product of two hex polynomials.
#[pyfunction]
fn poly_mul(a: &str, b: &str) -> PyResult<String> {
    Ok((&parse_poly(a)? * &parse_poly(b)?).to_hex())
}

/// Quotient and remainder of two hex polynomials.
#[pyfunction]
fn poly_divmod(a: &str, b: &str) -> PyResult<(String, String)> {
    let (q, r) = parse_poly(a)?.divmod(&parse_poly(b)?).map_err(value_err)?;
    Ok((q.to_hex(), r.to_hex()))
}

/// Inverse of `a` modulo `m` (hex polynomials).
#[pyfunction]
fn poly_mod_inverse(a: &str, m: &str) -> PyResult<String> {
    Ok(parse_poly(a)?
        .mod_inverse(&parse_poly(m)?)
        .map_err(value_err)?
        .to_hex())
}

/// The built-in primitive polynomial for extension degree `t`, hex.
#[pyfunction]
fn default_prim_poly(t: u32) -> PyResult<String> {
    bchcrt::default_prim_poly(t)
        .map(|p| p.to_hex())
        .ok_or_else(|| PyValueError::new_err(format!("no default for t={t}")))
}

/// Run the built-in verification suite; returns (name, passed, detail)
/// triples.
#[pyfunction]
fn selftest() -> Vec<(String, bool, String)> {
    bchcrt::selftest::run_selftest()
        .into_iter()
        .map(|r| (r.name.to_string(), r.passed, r.detail))
        .collect()
}

#[pymodule]
fn bchcrt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBchCode>()?;
    m.add_function(wrap_pyfunction!(poly_mul, m)?)?;
    m.add_function(wrap_pyfunction!(poly_divmod, m)?)?;
    m.add_function(wrap_pyfunction!(poly_mod_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(default_prim_poly, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
