//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use agdecode::code::{CodeFamily, CodeSpec, EvaluationSet, GammaSelector};
use agdecode::curve::CurveSpec;
use agdecode::curves;
use agdecode::decoder::{DecodeOptions, DecodeResult, Decoder};
use agdecode::field::FieldElement;
use agdecode::groebner::ModuleElement;
use agdecode::gs::{gs_list_decode, interpolation_polynomial, multiplication_bound, multiplicity_at, GsParams};
use agdecode::linalg::distance;
use agdecode::poly::UniPoly;
use agdecode::ring::StandardForm;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn family(curve: CurveSpec) -> Arc<CodeFamily> {
    let sf = StandardForm::build(&curve).unwrap();
    let pts = EvaluationSet::all_rational(&sf);
    CodeFamily::new(sf, pts).unwrap()
}

fn curve_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../curves")
        .join(name)
}

fn rng_for(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// A random message, its codeword and a received word at exactly `weight` errors.
fn trial_word(
    code: &CodeSpec,
    seed: u64,
    trial: usize,
    weight: usize,
) -> (Vec<FieldElement>, Vec<FieldElement>, Vec<FieldElement>) {
    let f = code.field();
    let q = f.order();
    let mut rng = rng_for(seed, trial);
    let msg: Vec<FieldElement> = (0..code.dimension()).map(|_| rng.gen_range(0..q)).collect();
    let (c, _) = code.encode(&msg).unwrap();
    let mut r = c.clone();
    for i in sample(&mut rng, code.n(), weight) {
        r[i] = f.add(r[i], rng.gen_range(1..q));
    }
    (msg, c, r)
}

fn checked(tau: usize, early: bool) -> DecodeOptions {
    let mut o = DecodeOptions::new(tau);
    o.checked = true;
    o.early_termination = early;
    o.max_branches = 1 << 20;
    o
}

fn messages(res: &DecodeResult) -> Vec<Vec<FieldElement>> {
    res.list.iter().map(|c| c.message.clone()).collect()
}

#[derive(Default)]
struct Tally {
    decodes: u64,
    checks: u64,
    violations: u64,
    unique_trials: u64,
    unique_failures: u64,
}

impl Tally {
    fn record(&mut self, res: &DecodeResult) {
        self.decodes += 1;
        self.checks += res.stats.invariant_checks;
        self.violations += res.stats.invariant_violations;
    }

    /// Criterion 6 bookkeeping for a decode of a word `weight` errors away.
    fn unique(&mut self, code: &CodeSpec, weight: usize, msg: &[FieldElement], res: &DecodeResult) {
        if 2 * weight as u64 >= code.d_ag() {
            return;
        }
        self.unique_trials += 1;
        if res.list.len() != 1 || res.list[0].message != msg {
            self.unique_failures += 1;
        }
    }
}

/// Decode every trial with early termination on and off; returns per-trial (on, off) results.
fn paired_runs(
    dec: &Decoder,
    words: &[(Vec<FieldElement>, Vec<FieldElement>, Vec<FieldElement>)],
    tau: usize,
) -> Vec<(DecodeResult, DecodeResult)> {
    words
        .par_iter()
        .map(|(_, _, r)| {
            let a = dec.list_decode(r, &checked(tau, true)).unwrap();
            let b = dec.list_decode(r, &checked(tau, false)).unwrap();
            (a, b)
        })
        .collect()
}

fn c1() -> Outcome {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_agdecode"))
        .args([
            "code",
            "info",
            curve_file("klein_gf8.toml").to_str().unwrap(),
            "--u",
            "20",
            "--json",
        ])
        .output()
        .unwrap();
    let elapsed = t.elapsed();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_default();
    let got = (
        v["n"].as_u64(),
        v["k"].as_u64(),
        v["d_ag"].as_u64(),
        v["goppa_bound"].as_i64(),
    );
    Outcome {
        id: 1,
        pass: out.status.success()
            && got == (Some(23), Some(18), Some(4), Some(3))
            && elapsed < Duration::from_secs(10),
        detail: format!("Klein u=20 code info: (n, k, d_AG, Goppa) = {got:?}, expected (23, 18, 4, 3), {elapsed:.2?}"),
    }
}

struct Workload {
    code: CodeSpec,
    words: Vec<(Vec<FieldElement>, Vec<FieldElement>, Vec<FieldElement>)>,
    runs: Vec<(DecodeResult, DecodeResult)>,
    elapsed: Duration,
}

fn workload(code: CodeSpec, seed: u64, trials: usize, weight: usize, tau: usize) -> Workload {
    let t = Instant::now();
    let dec = Decoder::new(code.clone());
    let words: Vec<_> = (0..trials).map(|i| trial_word(&code, seed, i, weight)).collect();
    let runs = paired_runs(&dec, &words, tau);
    Workload {
        code,
        words,
        runs,
        elapsed: t.elapsed(),
    }
}

fn c2(w: &Workload, tally: &mut Tally) -> Outcome {
    let mut hist = BTreeMap::new();
    let mut sent = 0;
    let mut partial = 0;
    for ((msg, _, _), (a, _)) in w.words.iter().zip(&w.runs) {
        sent += usize::from(a.contains_message(msg));
        partial += usize::from(a.partial);
        *hist.entry(a.list.len()).or_insert(0usize) += 1;
    }
    for (_, (a, b)) in w.words.iter().zip(&w.runs) {
        tally.record(a);
        tally.record(b);
    }
    let sizes_ok = hist.keys().all(|k| (1..=3).contains(k));
    let n = w.words.len();
    Outcome {
        id: 2,
        pass: sent == n && sizes_ok && partial == 0 && w.elapsed < Duration::from_secs(300),
        detail: format!(
            "Klein tau=2 weight 2: sent listed {sent}/{n}, list sizes {hist:?}, partial {partial}, {:.2?}",
            w.elapsed
        ),
    }
}

fn c3(h16: &Arc<CodeFamily>, w: &Workload, tally: &mut Tally) -> Outcome {
    let c60 = CodeSpec::new(h16.clone(), &GammaSelector::U(60)).unwrap();
    let mut sent = 0;
    for ((msg, _, _), (a, b)) in w.words.iter().zip(&w.runs) {
        sent += usize::from(a.contains_message(msg) && !a.partial);
        tally.record(a);
        tally.record(b);
    }
    let n = w.words.len();
    let improved = (w.code.n(), w.code.dimension(), w.code.d_ag());
    Outcome {
        id: 3,
        pass: improved.0 == 64 && improved.1 == 55 && c60.d_ag() == 4 && sent == n && w.elapsed < Duration::from_secs(900),
        detail: format!(
            "Hermitian GF(16): improved delta=6 (n, k, d_AG) = {improved:?}, C_60 d_AG = {} (k = {}); tau=3 weight 3: sent listed {sent}/{n}, {:.2?}",
            c60.d_ag(),
            c60.dimension(),
            w.elapsed
        ),
    }
}

fn c4(families: &[(&str, Arc<CodeFamily>)]) -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for (name, fam) in families {
        let table = fam.nu_lambda_table();
        let bad: Vec<u64> = table.iter().filter(|(_, nu, la)| nu != la).map(|t| t.0).collect();
        pass &= bad.is_empty() && !table.is_empty();
        detail.push(format!("{name}: {} values, {} mismatches", table.len(), bad.len()));
    }
    Outcome {
        id: 4,
        pass,
        detail: format!("nu = lambda for s <= n + 4g: {}", detail.join("; ")),
    }
}

/// Returns the outcome and the number of words whose lists differ with early termination on and off.
fn c5(h4: &Arc<CodeFamily>, tally: &mut Tally) -> (Outcome, usize) {
    let t = Instant::now();
    let code = CodeSpec::new(h4.clone(), &GammaSelector::Explicit(vec![0, 2, 3, 4, 5])).unwrap();
    let f = code.field();
    let q = f.order();
    let k = code.dimension();
    let all: Vec<(Vec<FieldElement>, Vec<FieldElement>)> = (0..q.pow(k as u32))
        .map(|mut v| {
            let m: Vec<FieldElement> = (0..k)
                .map(|_| {
                    let d = v % q;
                    v /= q;
                    d
                })
                .collect();
            let c = code.encode(&m).unwrap().0;
            (m, c)
        })
        .collect();
    let dec = Decoder::new(code.clone());
    let results: Vec<_> = (0..200)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(500, i);
            // mix of arbitrary words and perturbed codewords
            let r: Vec<FieldElement> = if i % 2 == 0 {
                (0..code.n()).map(|_| rng.gen_range(0..q)).collect()
            } else {
                trial_word(&code, 501, i, i % 4).2
            };
            (0..=2)
                .map(|tau| {
                    let mut brute: Vec<Vec<FieldElement>> = all
                        .iter()
                        .filter(|(_, c)| distance(c, &r) <= tau)
                        .map(|(m, _)| m.clone())
                        .collect();
                    brute.sort();
                    let a = dec.list_decode(&r, &checked(tau, true)).unwrap();
                    let b = dec.list_decode(&r, &checked(tau, false)).unwrap();
                    (brute, a, b)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut mismatches = 0;
    let mut et_diff = 0;
    let mut decodes = 0;
    for per_tau in &results {
        for (brute, a, b) in per_tau {
            decodes += 1;
            mismatches += usize::from(&messages(a) != brute || a.partial);
            et_diff += usize::from(messages(a) != messages(b));
            tally.record(a);
            tally.record(b);
        }
    }
    let elapsed = t.elapsed();
    (
        Outcome {
            id: 5,
            pass: mismatches == 0 && elapsed < Duration::from_secs(300),
            detail: format!("Hermitian GF(4) gamma={{0,2,3,4,5}}: {decodes} decodes vs exhaustive search, {mismatches} mismatches, {elapsed:.2?}"),
        },
        et_diff,
    )
}

fn c6(codes: &[(&str, CodeSpec)], tally: &mut Tally) -> Outcome {
    let mut detail = Vec::new();
    for (name, code) in codes {
        let before = (tally.unique_trials, tally.unique_failures);
        let dec = Decoder::new(code.clone());
        let radius = ((code.d_ag() - 1) / 2) as usize;
        let words: Vec<_> = (0..40)
            .map(|i| (i % (radius + 1), trial_word(code, 600, i, i % (radius + 1))))
            .collect();
        let results: Vec<_> = words
            .par_iter()
            .map(|(w, (_, _, r))| {
                let tau = if *w % 2 == 0 { radius } else { *w };
                dec.list_decode(r, &checked(tau, true)).unwrap()
            })
            .collect();
        for ((w, (msg, _, _)), res) in words.iter().zip(&results) {
            tally.record(res);
            tally.unique(code, *w, msg, res);
        }
        detail.push(format!(
            "{name} (d_AG {}): {} trials, {} failures",
            code.d_ag(),
            tally.unique_trials - before.0,
            tally.unique_failures - before.1
        ));
    }
    Outcome {
        id: 6,
        pass: tally.unique_failures == 0 && tally.unique_trials > 0,
        detail: format!(
            "2 wt(e) < d_AG gives a singleton with the sent message: {}",
            detail.join("; ")
        ),
    }
}

fn c7(tally: &Tally) -> Outcome {
    Outcome {
        id: 7,
        pass: tally.violations == 0 && tally.checks > 0,
        detail: format!(
            "{} decodes, {} basis checks (Groebner property, degree sum n), {} violations",
            tally.decodes, tally.checks, tally.violations
        ),
    }
}

fn c8(h4: &Arc<CodeFamily>, klein: &Arc<CodeFamily>, c2: &Workload) -> Outcome {
    let sf = h4.standard_form();
    let f = sf.field();
    let max_b = *sf.b().iter().max().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    let mut problems = Vec::new();
    let mut cases = 0;
    for m in 1..=2 {
        for ell in [m, m + 1] {
            let p = GsParams { m, ell, u: 6 };
            let bound = multiplication_bound(max_b, sf.a1() as u64, h4.n() as u64, h4.genus() as u64, &p);
            for _ in 0..5 {
                cases += 1;
                let r: Vec<FieldElement> = (0..h4.n()).map(|_| rng.gen_range(0..4)).collect();
                let it = interpolation_polynomial(h4, &r, &p).unwrap();
                for (i, pt) in h4.points().points().iter().enumerate() {
                    if !multiplicity_at(sf, &it.q, pt, r[i], m).unwrap() {
                        problems.push(format!("m={m} ell={ell}: multiplicity at point {i}"));
                    }
                }
                if it.gb.multiplications > bound {
                    problems.push(format!(
                        "m={m} ell={ell}: {} multiplications > {bound}",
                        it.gb.multiplications
                    ));
                }
                let gens = &it.module.generators;
                for _ in 0..100 {
                    let mut e = ModuleElement::zero(gens.len());
                    for g in gens {
                        let c: Vec<FieldElement> = (0..rng.gen_range(0..5)).map(|_| rng.gen_range(0..4)).collect();
                        e = e.add(f, &g.mul_poly(f, &UniPoly::from_coeffs(c)));
                    }
                    if !e.is_zero() && it.module.order.cmp_elements(&e, &it.q) == Ordering::Less {
                        problems.push(format!("m={m} ell={ell}: module element below Q"));
                    }
                }
            }
        }
    }
    let reference = multiplication_bound(max_b, 2, 8, 1, &GsParams { m: 1, ell: 2, u: 6 });
    if reference != 14742 {
        problems.push(format!("bound for m=1, ell=2, u=6 is {reference}"));
    }

    let kcode = CodeSpec::new(klein.clone(), &GammaSelector::U(20)).unwrap();
    let p = GsParams { m: 1, ell: 2, u: 20 };
    let gs_one: Vec<bool> = (0..100)
        .into_par_iter()
        .map(|i| {
            let (msg, _, r) = trial_word(&kcode, 801, i, 1);
            let res = gs_list_decode(&kcode, &r, &p, 1, 100_000).unwrap();
            res.list.len() == 1 && res.list[0].message == msg
        })
        .collect();
    let gs_ok = gs_one.iter().filter(|&&b| b).count();
    let gs_two: usize = c2
        .words
        .par_iter()
        .map(|(msg, _, r)| {
            let res = gs_list_decode(&kcode, r, &p, 2, 100_000).unwrap();
            usize::from(res.list.iter().any(|c| &c.message == msg))
        })
        .sum();
    let vote_two = c2
        .words
        .iter()
        .zip(&c2.runs)
        .filter(|((m, _, _), (a, _))| a.contains_message(m))
        .count();
    Outcome {
        id: 8,
        pass: problems.is_empty() && gs_ok == 100 && vote_two == c2.words.len(),
        detail: format!(
            "Hermitian GF(4) u=6: {cases} interpolations, {} problems{}; Klein u=20 GS(m=1, ell=2) corrects 1 error in {gs_ok}/100, \
             at weight 2 recovers {gs_two}/{} while list_decode(tau=2) recovers {vote_two}/{}",
            problems.len(),
            problems.first().map(|p| format!(" (first: {p})")).unwrap_or_default(),
            c2.words.len(),
            c2.words.len()
        ),
    }
}

fn c9(klein: &Workload, h16: &Workload, oracle_diffs: usize) -> Outcome {
    let diff = |w: &Workload| w.runs.iter().filter(|(a, b)| messages(a) != messages(b)).count();
    let mean = |w: &Workload, on: bool| {
        let total: u64 = w
            .runs
            .iter()
            .map(|(a, b)| if on { a.stats.iterations } else { b.stats.iterations })
            .sum();
        total as f64 / w.runs.len() as f64
    };
    let (dk, dh) = (diff(klein), diff(h16));
    let (on, off) = (mean(klein, true), mean(klein, false));
    Outcome {
        id: 9,
        pass: dk == 0 && dh == 0 && oracle_diffs == 0 && on < off,
        detail: format!(
            "list differences with early termination on/off: Klein {dk}, Hermitian GF(16) {dh}, oracle {oracle_diffs}; \
             Klein mean iterations {on:.1} (on) vs {off:.1} (off), Hermitian GF(16) {:.1} vs {:.1}",
            mean(h16, true),
            mean(h16, false)
        ),
    }
}

fn main() {
    let start = Instant::now();
    let h4 = family(curves::hermitian(2).unwrap());
    let h16 = family(curves::hermitian(4).unwrap());
    let klein = family(curves::klein_quartic_gf8().unwrap());
    let line = family(curves::projective_line(curves::default_field(8).unwrap()));
    let mut tally = Tally::default();
    let mut outcomes = vec![c1()];

    let kw = workload(
        CodeSpec::new(klein.clone(), &GammaSelector::U(20)).unwrap(),
        2,
        100,
        2,
        2,
    );
    outcomes.push(c2(&kw, &mut tally));
    let hw = workload(
        CodeSpec::new(h16.clone(), &GammaSelector::Improved(6)).unwrap(),
        3,
        50,
        3,
        3,
    );
    outcomes.push(c3(&h16, &hw, &mut tally));
    outcomes.push(c4(&[
        ("line GF(8)", line.clone()),
        ("Hermitian GF(4)", h4.clone()),
        ("Hermitian GF(16)", h16.clone()),
        ("Klein GF(8)", klein.clone()),
    ]));
    let (o5, oracle_diffs) = c5(&h4, &mut tally);
    outcomes.push(o5);
    outcomes.push(c6(
        &[
            (
                "line GF(8) u=3",
                CodeSpec::new(line.clone(), &GammaSelector::U(3)).unwrap(),
            ),
            (
                "Hermitian GF(4)",
                CodeSpec::new(h4.clone(), &GammaSelector::Explicit(vec![0, 2, 3, 4, 5])).unwrap(),
            ),
            ("Klein u=20", kw.code.clone()),
            ("Hermitian GF(16) improved 6", hw.code.clone()),
        ],
        &mut tally,
    ));
    let o8 = c8(&h4, &klein, &kw);
    let o9 = c9(&kw, &hw, oracle_diffs);
    outcomes.push(c7(&tally));
    outcomes.push(o8);
    outcomes.push(o9);

    let mut failed = 0;
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("{tag} criterion {}: {}", o.id, o.detail);
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.2?}",
        outcomes.len() - failed,
        outcomes.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
