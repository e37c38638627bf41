use std::sync::Arc;

use agdecode::code::{CodeFamily, CodeSpec, GammaSelector};
use agdecode::curves;
use agdecode::decoder::{Candidate, DecodeOptions, Decoder};
use agdecode::gs::{gs_list_decode, GsParams};
use agdecode::io::CurveFile;
use agdecode::sim::{simulate_code, ErrorModel, ExperimentConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: agdecode::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn selector(u: Option<u64>, gamma: Option<Vec<u64>>, improved: Option<u64>) -> PyResult<GammaSelector> {
    match (u, gamma, improved) {
        (Some(u), None, None) => Ok(GammaSelector::U(u)),
        (None, Some(g), None) => Ok(GammaSelector::Explicit(g)),
        (None, None, Some(d)) => Ok(GammaSelector::Improved(d)),
        _ => Err(PyValueError::new_err("give exactly one of u, gamma, improved")),
    }
}

fn builtin_curve(name: &str) -> PyResult<CurveFile> {
    let curve = match name {
        "hermitian_gf4" => curves::hermitian(2),
        "hermitian_gf16" => curves::hermitian(4),
        "klein_gf8" => curves::klein_quartic_gf8(),
        "line_gf8" => curves::default_field(8).map(curves::projective_line),
        _ => return Err(PyValueError::new_err(format!("unknown curve {name:?}"))),
    }
    .map_err(err)?;
    Ok(CurveFile { curve, points: None })
}

/// One decoded candidate.
#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct Codeword {
    message: Vec<u32>,
    codeword: Vec<u32>,
    distance: usize,
}

#[pymethods]
impl Codeword {
    fn __repr__(&self) -> String {
        format!("Codeword(distance={}, message={:?})", self.distance, self.message)
    }
}

impl From<&Candidate> for Codeword {
    fn from(c: &Candidate) -> Self {
        Codeword {
            message: c.message.clone(),
            codeword: c.codeword.clone(),
            distance: c.distance,
        }
    }
}

#[pyclass(frozen, get_all)]
struct DecodeResult {
    candidates: Vec<Codeword>,
    iterations: u64,
    branches: usize,
    partial: bool,
}

#[pymethods]
impl DecodeResult {
    fn __len__(&self) -> usize {
        self.candidates.len()
    }

    fn messages(&self) -> Vec<Vec<u32>> {
        self.candidates.iter().map(|c| c.message.clone()).collect()
    }
}

/// An evaluation code `C_Γ` on a one-point curve, with its list decoders.
#[pyclass(frozen)]
struct Code {
    code: CodeSpec,
    decoder: Decoder,
}

impl Code {
    fn build(fam: Arc<CodeFamily>, sel: GammaSelector) -> PyResult<Self> {
        let code = CodeSpec::new(fam, &sel).map_err(err)?;
        Ok(Code {
            decoder: Decoder::new(code.clone()),
            code,
        })
    }
}

#[pymethods]
impl Code {
    /// Code on a curve file; select `Γ` by `u`, `gamma` or `improved`.
    #[staticmethod]
    #[pyo3(signature = (path, u=None, gamma=None, improved=None))]
    fn from_file(path: &str, u: Option<u64>, gamma: Option<Vec<u64>>, improved: Option<u64>) -> PyResult<Self> {
        let fam = CurveFile::load(path).and_then(|f| f.family()).map_err(err)?;
        Self::build(fam, selector(u, gamma, improved)?)
    }

    /// Code on a bundled curve: `hermitian_gf4`, `hermitian_gf16`, `klein_gf8`, `line_gf8`.
    #[staticmethod]
    #[pyo3(signature = (name, u=None, gamma=None, improved=None))]
    fn builtin(name: &str, u: Option<u64>, gamma: Option<Vec<u64>>, improved: Option<u64>) -> PyResult<Self> {
        let fam = builtin_curve(name)?.family().map_err(err)?;
        Self::build(fam, selector(u, gamma, improved)?)
    }

    #[getter]
    fn n(&self) -> usize {
        self.code.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.dimension()
    }

    #[getter]
    fn d_ag(&self) -> u64 {
        self.code.d_ag()
    }

    #[getter]
    fn goppa_bound(&self) -> i64 {
        self.code.goppa_bound()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.code.family().genus()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.code.field().order()
    }

    #[getter]
    fn gamma(&self) -> Vec<u64> {
        self.code.gamma().to_vec()
    }

    #[getter]
    fn gamma_indep(&self) -> Vec<u64> {
        self.code.gamma_indep().to_vec()
    }

    /// `(s, ν(s), λ(s))` for small nongaps `s`.
    fn nu_lambda_table(&self) -> Vec<(u64, u64, u64)> {
        self.code.family().nu_lambda_table()
    }

    fn encode(&self, message: Vec<u32>) -> PyResult<Vec<u32>> {
        Ok(self.code.encode(&message).map_err(err)?.0)
    }

    /// The message of a codeword, or `None` if the word is not in the code.
    fn unencode(&self, word: Vec<u32>) -> Option<Vec<u32>> {
        self.code.unencode(&word)
    }

    #[pyo3(signature = (received, tau, max_branches=4096, early_termination=true, checked=false))]
    fn list_decode(
        &self,
        py: Python<'_>,
        received: Vec<u32>,
        tau: usize,
        max_branches: usize,
        early_termination: bool,
        checked: bool,
    ) -> PyResult<DecodeResult> {
        let mut opts = DecodeOptions::new(tau);
        opts.max_branches = max_branches;
        opts.early_termination = early_termination;
        opts.checked = checked;
        let res = py.detach(|| self.decoder.list_decode(&received, &opts)).map_err(err)?;
        Ok(DecodeResult {
            candidates: res.list.iter().map(Codeword::from).collect(),
            iterations: res.stats.iterations,
            branches: res.stats.branches,
            partial: res.partial,
        })
    }

    /// Guruswami–Sudan list decoding; only for codes built with `u`.
    #[pyo3(signature = (received, tau, m=1, ell=None))]
    fn gs_decode(
        &self,
        py: Python<'_>,
        received: Vec<u32>,
        tau: usize,
        m: usize,
        ell: Option<usize>,
    ) -> PyResult<DecodeResult> {
        let u = *self.code.gamma().last().unwrap();
        let expected = self.code.family().standard_form().semigroup().elements_up_to(u);
        if self.code.gamma() != expected.as_slice() {
            return Err(PyValueError::new_err("gs_decode needs a code of the form S ∩ [0, u]"));
        }
        let p = GsParams {
            m,
            ell: ell.unwrap_or(m),
            u,
        };
        let res = py
            .detach(|| gs_list_decode(&self.code, &received, &p, tau, 100_000))
            .map_err(err)?;
        Ok(DecodeResult {
            candidates: res.list.iter().map(Codeword::from).collect(),
            iterations: 0,
            branches: 0,
            partial: res.partial,
        })
    }

    /// Run a seeded experiment and return the text report with its JSON block.
    #[pyo3(signature = (error_weight, tau, trials=100, seed=0, model="uniform_support"))]
    fn simulate(
        &self,
        py: Python<'_>,
        error_weight: usize,
        tau: usize,
        trials: usize,
        seed: u64,
        model: &str,
    ) -> PyResult<String> {
        let sel = GammaSelector::Explicit(self.code.gamma().to_vec());
        let mut cfg = ExperimentConfig::new("", sel, error_weight, tau);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.error_model = model.parse::<ErrorModel>().map_err(err)?;
        let rep = py.detach(|| simulate_code(&self.code, &cfg)).map_err(err)?;
        Ok(rep.render())
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(n={}, k={}, d_ag={}, q={})",
            self.code.n(),
            self.code.dimension(),
            self.code.d_ag(),
            self.code.field().order()
        )
    }
}

#[pymodule]
fn pyagdecode(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Code>()?;
    m.add_class::<Codeword>()?;
    m.add_class::<DecodeResult>()?;
    Ok(())
}
