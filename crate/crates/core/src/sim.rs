//! Seeded Monte-Carlo experiments: random messages, random errors, list decoding.
//!
//! Trial `i` draws from ChaCha8 seeded with `seed` on stream `i`, so results do not
//! depend on the number of worker threads (`AGDECODE_WORKERS`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{CodeSpec, GammaSelector};
use crate::decoder::{DecodeOptions, Decoder};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::io::CurveFile;
use crate::linalg::distance;

pub const WORKERS_ENV: &str = "AGDECODE_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorModel {
    /// Support uniform among `error_weight`-subsets, values uniform nonzero.
    UniformSupport,
    /// Move `error_weight` coordinates toward a random nearest other codeword.
    TowardNearestCodeword,
}

impl std::fmt::Display for ErrorModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ErrorModel::UniformSupport => "uniform_support",
            ErrorModel::TowardNearestCodeword => "toward_nearest_codeword",
        })
    }
}

impl std::str::FromStr for ErrorModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform_support" | "uniform" => Ok(ErrorModel::UniformSupport),
            "toward_nearest_codeword" | "toward" => Ok(ErrorModel::TowardNearestCodeword),
            _ => Err(Error::Parse(format!("unknown error model {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub curve: String,
    pub selector: GammaSelector,
    pub trials: usize,
    pub error_weight: usize,
    pub tau: usize,
    pub seed: u64,
    pub error_model: ErrorModel,
    pub max_branches: usize,
    pub early_termination: bool,
    pub checked: bool,
}

impl ExperimentConfig {
    pub fn new(curve: impl Into<String>, selector: GammaSelector, error_weight: usize, tau: usize) -> Self {
        ExperimentConfig {
            curve: curve.into(),
            selector,
            trials: 100,
            error_weight,
            tau,
            seed: 0,
            error_model: ErrorModel::UniformSupport,
            max_branches: DecodeOptions::new(tau).max_branches,
            early_termination: true,
            checked: false,
        }
    }

    fn options(&self) -> DecodeOptions {
        let mut o = DecodeOptions::new(self.tau);
        o.max_branches = self.max_branches;
        o.early_termination = self.early_termination;
        o.checked = self.checked;
        o
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub list_size: usize,
    pub sent_in_list: bool,
    pub iterations: u64,
    pub branches: usize,
    pub early_terminations: u64,
    pub partial: bool,
    pub invariant_violations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub min: u64,
    pub max: u64,
    pub mean: f64,
    pub stddev: f64,
}

impl Summary {
    pub fn of(xs: &[u64]) -> Summary {
        if xs.is_empty() {
            return Summary {
                min: 0,
                max: 0,
                mean: 0.0,
                stddev: 0.0,
            };
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<u64>() as f64 / n;
        let var = xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / n;
        Summary {
            min: *xs.iter().min().unwrap(),
            max: *xs.iter().max().unwrap(),
            mean,
            stddev: var.sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub n: usize,
    pub k: usize,
    pub d_ag: u64,
    pub trials: Vec<TrialRecord>,
    pub list_size_histogram: BTreeMap<usize, usize>,
    pub iterations: Summary,
    pub branches: Summary,
    pub sent_in_list: usize,
    pub partial_trials: usize,
    pub invariant_violations: u64,
}

impl ExperimentReport {
    /// Line-oriented summary followed by the full report as a JSON block.
    pub fn render(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        writeln!(s, "code n={} k={} d_ag={} ({})", self.n, self.k, self.d_ag, c.selector).unwrap();
        writeln!(
            s,
            "trials={} error_weight={} tau={} seed={} model={}",
            c.trials, c.error_weight, c.tau, c.seed, c.error_model
        )
        .unwrap();
        writeln!(s, "sent_in_list={}/{}", self.sent_in_list, self.trials.len()).unwrap();
        let hist: Vec<String> = self
            .list_size_histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        writeln!(s, "list_sizes {}", hist.join(" ")).unwrap();
        let it = &self.iterations;
        writeln!(
            s,
            "iterations min={} max={} mean={:.2} stddev={:.2}",
            it.min, it.max, it.mean, it.stddev
        )
        .unwrap();
        let br = &self.branches;
        writeln!(s, "branches min={} max={} mean={:.2}", br.min, br.max, br.mean).unwrap();
        writeln!(
            s,
            "partial={} invariant_violations={}",
            self.partial_trials, self.invariant_violations
        )
        .unwrap();
        writeln!(s, "--- json").unwrap();
        writeln!(s, "{}", serde_json::to_string_pretty(self).unwrap()).unwrap();
        s
    }
}

/// Worker count from `AGDECODE_WORKERS`, if set to a positive integer.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_nonzero(rng: &mut ChaCha8Rng, f: &Field) -> FieldElement {
    rng.gen_range(1..f.order())
}

fn combine(f: &Field, rows: &[Vec<FieldElement>], coeffs: &[FieldElement]) -> Vec<FieldElement> {
    let n = rows[0].len();
    let mut out = vec![0; n];
    for (row, &c) in rows.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Nonzero codewords of smallest weight, up to scalar multiples.
///
/// Small codes are enumerated; otherwise information sets are sampled and
/// combinations of at most two systematic rows are scanned, so the result is the
/// lightest class found rather than a certified minimum.
pub fn min_weight_codewords(code: &CodeSpec, seed: u64) -> Vec<Vec<FieldElement>> {
    let f = code.field();
    let g = code.generator_matrix();
    let k = g.len();
    let q = f.order() as u64;
    let mut best = usize::MAX;
    let mut found: Vec<Vec<FieldElement>> = Vec::new();
    let mut offer = |v: Vec<FieldElement>| {
        let w = weight(&v);
        if w == 0 || w > best {
            return;
        }
        let lead = *v.iter().find(|&&x| x != 0).unwrap();
        let inv = f.inv(lead).unwrap();
        let v: Vec<FieldElement> = v.iter().map(|&x| f.mul(x, inv)).collect();
        if w < best {
            best = w;
            found.clear();
        }
        if !found.contains(&v) {
            found.push(v);
        }
    };
    if q.checked_pow(k as u32).is_some_and(|c| c <= 1 << 16) {
        let mut msg = vec![0; k];
        for _ in 1..q.pow(k as u32) {
            for d in msg.iter_mut() {
                *d += 1;
                if u64::from(*d) < q {
                    break;
                }
                *d = 0;
            }
            offer(combine(f, g, &msg));
        }
    } else {
        let mut rng = trial_rng(seed, u64::MAX);
        let n = code.n();
        for _ in 0..64 {
            let mut cols: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                cols.swap(i, rng.gen_range(0..=i));
            }
            let rows = systematic(f, g, &cols);
            for i in 0..k {
                offer(rows[i].clone());
                for j in i + 1..k {
                    for c in 1..f.order() {
                        let v: Vec<FieldElement> = rows[i]
                            .iter()
                            .zip(&rows[j])
                            .map(|(&a, &b)| f.add(a, f.mul(c, b)))
                            .collect();
                        offer(v);
                    }
                }
            }
        }
    }
    found.sort();
    found
}

/// Row-reduce `g` with pivots taken from `cols` in order.
fn systematic(f: &Field, g: &[Vec<FieldElement>], cols: &[usize]) -> Vec<Vec<FieldElement>> {
    let mut rows = g.to_vec();
    let k = rows.len();
    let mut r = 0;
    for &c in cols {
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..k {
            if i != r && rows[i][c] != 0 {
                let m = rows[i][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(m, *y));
                }
            }
        }
        r += 1;
    }
    rows
}

/// The received word for one trial.
pub fn corrupt(
    rng: &mut ChaCha8Rng,
    f: &Field,
    codeword: &[FieldElement],
    weight_target: usize,
    model: ErrorModel,
    nearest: &[Vec<FieldElement>],
) -> Vec<FieldElement> {
    let n = codeword.len();
    let mut r = codeword.to_vec();
    match model {
        ErrorModel::UniformSupport => {
            for i in sample(rng, n, weight_target) {
                r[i] = f.add(r[i], random_nonzero(rng, f));
            }
        }
        ErrorModel::TowardNearestCodeword => {
            let d = &nearest[rng.gen_range(0..nearest.len())];
            let c = random_nonzero(rng, f);
            let support: Vec<usize> = (0..n).filter(|&i| d[i] != 0).collect();
            let rest: Vec<usize> = (0..n).filter(|&i| d[i] == 0).collect();
            let toward = weight_target.min(support.len());
            for j in sample(rng, support.len(), toward) {
                let i = support[j];
                r[i] = f.add(r[i], f.mul(c, d[i]));
            }
            let extra = weight_target - toward;
            for j in sample(rng, rest.len(), extra) {
                let i = rest[j];
                r[i] = f.add(r[i], random_nonzero(rng, f));
            }
        }
    }
    r
}

/// Load the curve named in `cfg` and run the experiment.
pub fn simulate(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let fam = CurveFile::load(&cfg.curve)?.family()?;
    let code = CodeSpec::new(fam, &cfg.selector)?;
    simulate_code(&code, cfg)
}

/// Run the experiment on an already built code; `cfg.curve` and `cfg.selector` are only echoed.
pub fn simulate_code(code: &CodeSpec, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let n = code.n();
    if cfg.error_weight > n {
        return Err(Error::Precondition(format!(
            "error weight {} exceeds n = {n}",
            cfg.error_weight
        )));
    }
    let f = code.field().clone();
    let k = code.dimension();
    let nearest = match cfg.error_model {
        ErrorModel::TowardNearestCodeword => min_weight_codewords(code, cfg.seed),
        ErrorModel::UniformSupport => Vec::new(),
    };
    let decoder = Decoder::new(code.clone());
    let opts = cfg.options();
    let run_trial = |trial: usize| -> Result<TrialRecord> {
        let mut rng = trial_rng(cfg.seed, trial as u64);
        let msg: Vec<FieldElement> = (0..k).map(|_| rng.gen_range(0..f.order())).collect();
        let (c, _) = code.encode(&msg)?;
        let r = corrupt(&mut rng, &f, &c, cfg.error_weight, cfg.error_model, &nearest);
        let res = decoder.list_decode(&r, &opts)?;
        let sent = res.contains_message(&msg);
        let dump = || {
            format!(
                "trial {trial}: message {msg:?} codeword {c:?} received {r:?} list {:?} stats {:?}",
                res.list, res.stats
            )
        };
        if distance(&c, &r) <= cfg.tau && !sent {
            return Err(Error::Contract(format!("sent codeword missing from list; {}", dump())));
        }
        if res.list.iter().any(|cand| cand.distance > cfg.tau) {
            return Err(Error::Contract(format!("listed codeword beyond radius; {}", dump())));
        }
        Ok(TrialRecord {
            trial,
            list_size: res.list.len(),
            sent_in_list: sent,
            iterations: res.stats.iterations,
            branches: res.stats.branches,
            early_terminations: res.stats.early_terminations,
            partial: res.partial,
            invariant_violations: res.stats.invariant_violations,
        })
    };
    let run_all = || {
        (0..cfg.trials)
            .into_par_iter()
            .map(run_trial)
            .collect::<Result<Vec<_>>>()
    };
    let trials = match workers_from_env() {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(run_all)?,
        None => run_all()?,
    };
    let mut hist = BTreeMap::new();
    for t in &trials {
        *hist.entry(t.list_size).or_insert(0) += 1;
    }
    let iters: Vec<u64> = trials.iter().map(|t| t.iterations).collect();
    let branches: Vec<u64> = trials.iter().map(|t| t.branches as u64).collect();
    Ok(ExperimentReport {
        config: cfg.clone(),
        n,
        k,
        d_ag: code.d_ag(),
        sent_in_list: trials.iter().filter(|t| t.sent_in_list).count(),
        partial_trials: trials.iter().filter(|t| t.partial).count(),
        invariant_violations: trials.iter().map(|t| t.invariant_violations).sum(),
        list_size_histogram: hist,
        iterations: Summary::of(&iters),
        branches: Summary::of(&branches),
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{CodeFamily, EvaluationSet};
    use crate::curves;
    use crate::ring::StandardForm;

    fn herm4(selector: GammaSelector) -> CodeSpec {
        let sf = StandardForm::build(&curves::hermitian(2).unwrap()).unwrap();
        let pts = EvaluationSet::all_rational(&sf);
        CodeSpec::new(CodeFamily::new(sf, pts).unwrap(), &selector).unwrap()
    }

    #[test]
    fn zero_errors_give_singletons() {
        let code = herm4(GammaSelector::U(5));
        let mut cfg = ExperimentConfig::new("", GammaSelector::U(5), 0, 1);
        cfg.trials = 20;
        let rep = simulate_code(&code, &cfg).unwrap();
        assert_eq!(rep.list_size_histogram, BTreeMap::from([(1, 20)]));
        assert_eq!(rep.sent_in_list, 20);
    }

    #[test]
    fn unique_regime_singletons() {
        let sel = GammaSelector::Explicit(vec![0, 2, 3, 4, 5]);
        let code = herm4(sel.clone());
        let mut cfg = ExperimentConfig::new("", sel, 1, 1);
        cfg.trials = 30;
        cfg.seed = 9;
        let rep = simulate_code(&code, &cfg).unwrap();
        assert_eq!(rep.list_size_histogram, BTreeMap::from([(1, 30)]));
    }

    #[test]
    fn reports_are_reproducible() {
        let code = herm4(GammaSelector::U(5));
        let mut cfg = ExperimentConfig::new("", GammaSelector::U(5), 2, 2);
        cfg.trials = 15;
        cfg.seed = 42;
        let a = simulate_code(&code, &cfg).unwrap().render();
        let b = simulate_code(&code, &cfg).unwrap().render();
        assert_eq!(a, b);
        cfg.seed = 43;
        assert_ne!(a, simulate_code(&code, &cfg).unwrap().render());
    }

    #[test]
    fn nearest_codewords_of_small_code() {
        let code = herm4(GammaSelector::U(5));
        let words = min_weight_codewords(&code, 0);
        assert!(!words.is_empty());
        // [8,5] code with d_AG = 3 and Singleton bound 4
        let w = weight(&words[0]);
        assert!((3..=4).contains(&w));
        assert!(words.iter().all(|v| weight(v) == w && code.unencode(v).is_some()));
        let mut rng = trial_rng(1, 0);
        let (c, _) = code.encode(&[1, 2, 3, 0, 1]).unwrap();
        let r = corrupt(&mut rng, code.field(), &c, 2, ErrorModel::TowardNearestCodeword, &words);
        assert_eq!(distance(&c, &r), 2);
    }
}
