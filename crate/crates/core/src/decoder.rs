//! List decoding by majority voting inside Gröbner bases of the interpolation module
//! `I_r = { f ∈ L z ⊕ L : f(r_i) vanishes at P_i }`.
//!
//! Elements of `L z ⊕ L` are stored as module elements of rank `2 a_1`: position
//! `j` holds the coefficient of `y_j`, position `a_1 + j` that of `y_j z`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::groebner::{is_groebner_basis, module_gb_general, ModuleElement, ModuleOrder};
use crate::linalg::distance;
use crate::ring::RingElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeOptions {
    pub tau: usize,
    pub max_branches: usize,
    pub max_list: usize,
    pub early_termination: bool,
    /// Verify the basis invariants after every step.
    pub checked: bool,
}

impl DecodeOptions {
    pub fn new(tau: usize) -> Self {
        DecodeOptions {
            tau,
            max_branches: 4096,
            max_list: 32,
            early_termination: true,
            checked: false,
        }
    }
}

/// One decoder branch: the basis `B^(t)` of `I_{r^(t)}` under `>_t`.
#[derive(Debug, Clone)]
pub struct DecoderState {
    /// Current pivot `t`.
    pub s: u64,
    /// `g[i]` leads with `d_{i,i} y_i`.
    pub g: Vec<ModuleElement>,
    /// `f[i]` leads with `a_{i,i} y_i z`.
    pub f: Vec<ModuleElement>,
    /// Coefficients decided so far, indexed like `Γ_indep`.
    pub message: Vec<FieldElement>,
    /// `r^(t) = r - ev(sum of decided terms)`.
    pub r_s: Vec<FieldElement>,
    pub branch_id: usize,
    pub iteration_count: u64,
    /// Every coefficient has been decided (the pivot `0` was processed).
    pub finished: bool,
}

/// Per-index quantities read off the basis at pivot `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub i_prime: usize,
    pub k: u64,
    pub c: i64,
    pub c_bar: u64,
    /// `LC(a_{i,i} y_i φ_s)`.
    pub mu: FieldElement,
    pub w: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub message: Vec<FieldElement>,
    pub codeword: Vec<FieldElement>,
    pub distance: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DecodeStats {
    /// Pairing/voting/rebasing rounds over all branches.
    pub iterations: u64,
    pub branches: usize,
    pub branch_iterations: Vec<u64>,
    pub early_terminations: u64,
    pub invariant_checks: u64,
    pub invariant_violations: u64,
    /// Rebasing steps whose output needed a top-reduction to be a Gröbner basis again.
    pub repairs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub list: Vec<Candidate>,
    pub stats: DecodeStats,
    pub partial: bool,
}

impl DecodeResult {
    pub fn contains_message(&self, m: &[FieldElement]) -> bool {
        self.list.iter().any(|c| c.message == m)
    }
}

/// Precomputed tables for decoding one code.
#[derive(Debug, Clone)]
pub struct Decoder {
    code: CodeSpec,
    a1: usize,
    b: Vec<u64>,
    /// `LC(y_i y_j)`.
    lc_yy: Vec<Vec<FieldElement>>,
    /// `dag_prefix[k]` is `d_AG` of the first `k` elements of `Γ_indep` (`u64::MAX` for `k = 0`).
    dag_prefix: Vec<u64>,
}

enum Step {
    Continue,
    Done(Option<Candidate>),
}

impl Decoder {
    pub fn new(code: CodeSpec) -> Self {
        let sf = code.standard_form();
        let a1 = sf.a1();
        let lc_yy = (0..a1)
            .map(|i| (0..a1).map(|j| sf.lc(sf.mult_table(i, j))).collect())
            .collect();
        let fam = code.family();
        let mut dag_prefix = vec![u64::MAX];
        for &s in code.gamma_indep() {
            let last = *dag_prefix.last().unwrap();
            dag_prefix.push(last.min(fam.nu(s).unwrap()));
        }
        Decoder {
            b: sf.b().to_vec(),
            a1,
            lc_yy,
            dag_prefix,
            code,
        }
    }

    pub fn code(&self) -> &CodeSpec {
        &self.code
    }

    /// The order `>_t` on `L z ⊕ L`: `x_1^i y_j z^k` weighs `i a_1 + b_j + k t`, ties go to `z`.
    pub fn order(&self, t: u64) -> ModuleOrder {
        let mut u = self.b.clone();
        u.extend(self.b.iter().map(|&b| b + t));
        ModuleOrder { u_x: self.a1 as u64, u }
    }

    fn z_part(&self, e: &ModuleElement) -> RingElement {
        RingElement::from_coeffs(e.coords[self.a1..].to_vec())
    }

    fn const_part(&self, e: &ModuleElement) -> RingElement {
        RingElement::from_coeffs(e.coords[..self.a1].to_vec())
    }

    fn join(&self, z: RingElement, c: RingElement) -> ModuleElement {
        let mut coords = c.into_coeffs();
        coords.extend(z.into_coeffs());
        ModuleElement::from_coords(coords)
    }

    /// `d_AG(C_{Γ ∩ [0, t]})`, infinite for the zero code.
    pub fn d_ag_prefix(&self, t: u64) -> u64 {
        self.dag_prefix[self.code.prefix_len(t)]
    }

    /// The initial basis `{η_j} ∪ {y_j (z - h_r)}` under `>_{max(N, s_k)}`.
    pub fn init(&self, r: &[FieldElement]) -> Result<DecoderState> {
        let fam = self.code.family();
        let sf = fam.standard_form();
        let f = sf.field();
        let h = fam.h_interp(r)?;
        let n_pole = sf.pole_order(&h).unwrap_or(0);
        let s_k = *self.code.gamma_indep().last().unwrap();
        let s = n_pole.max(s_k);
        let g = fam
            .eta_basis()
            .eta
            .iter()
            .map(|e| self.join(sf.zero(), e.clone()))
            .collect();
        let fs = (0..self.a1)
            .map(|j| {
                let y = RingElement::monomial(self.a1, 1, 0, j);
                let yh = sf.mul(&y, &h).neg(f);
                self.join(y, yh)
            })
            .collect();
        Ok(DecoderState {
            s,
            g,
            f: fs,
            message: vec![0; self.code.dimension()],
            r_s: r.to_vec(),
            branch_id: 0,
            iteration_count: 0,
            finished: false,
        })
    }

    /// Step 2 quantities for every `i`.
    pub fn pairing(&self, st: &DecoderState) -> Result<Vec<Pairing>> {
        let sf = self.code.standard_form();
        let field = sf.field();
        let a1 = self.a1 as u64;
        let s = st.s;
        let (_, js) = sf.phi_index(s)?;
        let mut out = Vec::with_capacity(self.a1);
        for i in 0..self.a1 {
            let a_ii = &st.f[i].coords[self.a1 + i];
            let da = a_ii
                .degree()
                .ok_or_else(|| Error::Internal(format!("f_{i} has no y_{i} z term")))?;
            let pole = da as u64 * a1 + self.b[i] + s;
            let ip = (pole % a1) as usize;
            // pole is a sum of nongaps, so it is at least b_{i'}
            let k = (pole - self.b[ip]) / a1;
            let d = st.g[ip].coords[ip]
                .degree()
                .ok_or_else(|| Error::Internal(format!("g_{ip} has no y_{ip} term")))?;
            let c = d as i64 - k as i64;
            let mu = field.mul(a_ii.lc(), self.lc_yy[i][js]);
            let bcoef = st.f[i].coords[ip].coeff(k as usize);
            let w = field.neg(field.div(bcoef, mu)?);
            out.push(Pairing {
                i_prime: ip,
                k,
                c,
                c_bar: c.max(0) as u64,
                mu,
                w,
            });
        }
        Ok(out)
    }

    /// Candidate values of the coefficient of `φ_s`.
    pub fn voting(&self, st: &DecoderState, pairs: &[Pairing], tau: usize) -> Result<Vec<FieldElement>> {
        let s = st.s;
        if self.code.gamma_indep().binary_search(&s).is_err() {
            return Ok(vec![0]);
        }
        let nu = self.code.family().nu(s)? as i64;
        let total: i64 = pairs.iter().map(|p| p.c_bar as i64).sum();
        // sum_{w_i = w} c̄_i ≥ sum_{w_i ≠ w} c̄_i - 2τ + ν(s)  ⇔  2 S_w ≥ T - 2τ + ν(s)
        let need = total - 2 * tau as i64 + nu;
        let field = self.code.field();
        let mut scored: Vec<(i64, FieldElement)> = field
            .elements()
            .map(|w| {
                let sw: i64 = pairs.iter().filter(|p| p.w == w).map(|p| p.c_bar as i64).sum();
                (sw, w)
            })
            .filter(|&(sw, _)| 2 * sw >= need)
            .collect();
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Ok(scored.into_iter().map(|(_, w)| w).collect())
    }

    fn substitute(&self, e: &ModuleElement, w: FieldElement, s: u64) -> Result<ModuleElement> {
        if w == 0 {
            return Ok(e.clone());
        }
        let sf = self.code.standard_form();
        let f = sf.field();
        let z = self.z_part(e);
        let c = self.const_part(e).add(f, &sf.mul_phi(&z, s)?.scale(f, w));
        Ok(self.join(z, c))
    }

    /// `z ↦ z + w φ_s` followed by the three-case update; moves the state to `prec(s)`.
    /// At `s = 0` only the decided coefficient is recorded.
    ///
    /// When the vote agrees with no codeword near `r`, the update can leave a
    /// constant-part term above the `z` term across a gap of the semigroup. The
    /// generated module is unchanged, so the basis is then restored by top-reduction.
    /// Returns whether that happened.
    pub fn rebase(&self, st: &mut DecoderState, pairs: &[Pairing], w: FieldElement) -> Result<bool> {
        let sf = self.code.standard_form();
        let field = sf.field();
        let s = st.s;
        let fs: Vec<ModuleElement> = st.f.iter().map(|e| self.substitute(e, w, s)).collect::<Result<_>>()?;
        let gs: Vec<ModuleElement> = st.g.iter().map(|e| self.substitute(e, w, s)).collect::<Result<_>>()?;
        let mut new_g = gs.clone();
        let mut new_f = fs.clone();
        for (i, p) in pairs.iter().enumerate() {
            let ip = p.i_prime;
            if p.w == w {
                continue;
            }
            let nu_ip = st.g[ip].coords[ip].lc();
            let coef = field.div(field.mul(p.mu, field.sub(w, p.w)), nu_ip)?;
            if p.c > 0 {
                new_g[ip] = fs[i].clone();
                let mut e = fs[i].shift(p.c as usize);
                e.add_scaled_shifted(field, field.neg(coef), 0, &gs[ip]);
                new_f[i] = e;
            } else {
                let mut e = fs[i].clone();
                e.add_scaled_shifted(field, field.neg(coef), (-p.c) as usize, &gs[ip]);
                new_f[i] = e;
            }
        }
        if let Ok(idx) = self.code.gamma_indep().binary_search(&s) {
            st.message[idx] = w;
        }
        if w != 0 {
            let ev = self.code.family().evaluate(&sf.phi(s)?);
            for (r, e) in st.r_s.iter_mut().zip(ev) {
                *r = field.sub(*r, field.mul(w, e));
            }
        }
        st.g = new_g;
        st.f = new_f;
        st.iteration_count += 1;
        if s == 0 {
            st.finished = true;
            return Ok(false);
        }
        st.s = sf.prec(s)?;
        let ord = self.order(st.s);
        let shaped = (0..self.a1).all(|i| {
            ord.lead(&st.g[i]).map(|l| l.pos) == Some(i) && ord.lead(&st.f[i]).map(|l| l.pos) == Some(self.a1 + i)
        });
        if shaped {
            return Ok(false);
        }
        let all: Vec<ModuleElement> = st.g.drain(..).chain(st.f.drain(..)).collect();
        let mut gb = module_gb_general(field, all, &ord)?.basis;
        st.f = gb.split_off(self.a1);
        st.g = gb;
        Ok(true)
    }

    /// Basis invariants at the current pivot: leading positions, the degree identity,
    /// membership in `I_{r^(t)}`, and the Gröbner property.
    pub fn check_invariants(&self, st: &DecoderState) -> std::result::Result<(), String> {
        let sf = self.code.standard_form();
        let field = sf.field();
        let fam = self.code.family();
        let ord = self.order(st.s);
        let mut degs = 0usize;
        for i in 0..self.a1 {
            let lg = ord.lead(&st.g[i]).ok_or("zero g")?;
            let lf = ord.lead(&st.f[i]).ok_or("zero f")?;
            if lg.pos != i || lf.pos != self.a1 + i {
                return Err(format!(
                    "leading positions ({}, {}) at i = {i}, s = {}",
                    lg.pos, lf.pos, st.s
                ));
            }
            degs += lg.deg + lf.deg;
        }
        if degs != fam.n() {
            return Err(format!("degree sum {degs} != n at s = {}", st.s));
        }
        for e in st.g.iter().chain(&st.f) {
            let z = self.z_part(e);
            let c = self.const_part(e);
            let zv = fam.evaluate(&z);
            let cv = fam.evaluate(&c);
            for k in 0..fam.n() {
                if field.add(field.mul(zv[k], st.r_s[k]), cv[k]) != 0 {
                    return Err(format!("basis element not in I_r at point {k}, s = {}", st.s));
                }
            }
        }
        let all: Vec<ModuleElement> = st.g.iter().chain(&st.f).cloned().collect();
        if !is_groebner_basis(field, &all, &ord) {
            return Err(format!("not a Gröbner basis at s = {}", st.s));
        }
        Ok(())
    }

    /// Full message from the decided coefficients and a codeword of `C_{Γ ∩ [0, t]}`.
    fn finish(&self, r: &[FieldElement], message: Vec<FieldElement>, tau: usize) -> Option<Candidate> {
        let (codeword, _) = self.code.encode(&message).ok()?;
        let d = distance(&codeword, r);
        (d <= tau).then_some(Candidate {
            message,
            codeword,
            distance: d,
        })
    }

    /// Extract `-α_0/α_1` from the `f_i` with the smallest `-v_Q(α_1)` and test it.
    pub fn earlier_termination_check(&self, st: &DecoderState, r: &[FieldElement], tau: usize) -> Option<Candidate> {
        let sf = self.code.standard_form();
        let field = sf.field();
        let fmin =
            st.f.iter()
                .min_by_key(|e| sf.pole_order(&self.z_part(e)).unwrap_or(u64::MAX))?;
        let alpha1 = self.z_part(fmin);
        let alpha0 = self.const_part(fmin);
        let beta = sf.exact_div(&alpha0.neg(field), &alpha1, Some(st.s))?;
        let word = self.code.family().evaluate(&beta);
        let tail = self.code.message_in_prefix(&word, st.s)?;
        let message: Vec<FieldElement> = st.message.iter().zip(&tail).map(|(&a, &b)| field.add(a, b)).collect();
        self.finish(r, message, tau)
    }

    /// Run one branch until it terminates or splits; extra vote values are pushed to `pending`.
    #[allow(clippy::too_many_arguments)]
    fn advance(
        &self,
        st: &mut DecoderState,
        r: &[FieldElement],
        opts: &DecodeOptions,
        stats: &mut DecodeStats,
        pending: &mut Vec<(DecoderState, FieldElement, Vec<Pairing>)>,
        budget_left: &mut usize,
        partial: &mut bool,
    ) -> Result<Step> {
        let n = self.code.n() as i64;
        let g = self.code.family().genus() as i64;
        let tau = opts.tau;
        loop {
            let t = st.s;
            if st.finished {
                return Ok(Step::Done(self.finish(r, st.message.clone(), tau)));
            }
            if opts.checked {
                stats.invariant_checks += 1;
                if self.check_invariants(st).is_err() {
                    stats.invariant_violations += 1;
                }
            }
            if self.code.prefix_len(t) == 0 {
                return Ok(Step::Done(self.finish(r, st.message.clone(), tau)));
            }
            if 2 * tau as i64 + 2 * g < n - t as i64 {
                return Ok(Step::Done(self.earlier_termination_check(st, r, tau)));
            }
            if opts.early_termination && st.iteration_count > 0 && self.d_ag_prefix(t) > 2 * tau as u64 {
                if let Some(c) = self.earlier_termination_check(st, r, tau) {
                    stats.early_terminations += 1;
                    return Ok(Step::Done(Some(c)));
                }
            }
            let pairs = self.pairing(st)?;
            let votes = self.voting(st, &pairs, tau)?;
            let Some((&w, rest)) = votes.split_first() else {
                return Ok(Step::Done(None));
            };
            for &w2 in rest {
                if *budget_left == 0 {
                    *partial = true;
                    break;
                }
                *budget_left -= 1;
                pending.push((st.clone(), w2, pairs.clone()));
            }
            if self.rebase(st, &pairs, w)? {
                stats.repairs += 1;
            }
            stats.iterations += 1;
            if !rest.is_empty() {
                return Ok(Step::Continue);
            }
        }
    }

    /// All codewords within distance `tau` of `r` (subject to the branch and list limits).
    pub fn list_decode(&self, r: &[FieldElement], opts: &DecodeOptions) -> Result<DecodeResult> {
        let n = self.code.n();
        if r.len() != n {
            return Err(Error::InvalidCode(format!("received length {} != n = {n}", r.len())));
        }
        let field = self.code.field();
        if let Some(&c) = r.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::InvalidCode(format!("symbol {c} is not a field element")));
        }
        let mut stats = DecodeStats::default();
        let mut partial = false;
        let mut found: BTreeSet<Vec<FieldElement>> = BTreeSet::new();
        let mut list = Vec::new();
        let mut budget_left = opts.max_branches.saturating_sub(1);
        let mut stack: Vec<DecoderState> = vec![self.init(r)?];
        let mut next_id = 1;
        stats.branches = 1;
        // Each stack entry is a branch to run; forks are resolved immediately into new branches.
        while let Some(mut st) = stack.pop() {
            let mut pending = Vec::new();
            let step = self.advance(
                &mut st,
                r,
                opts,
                &mut stats,
                &mut pending,
                &mut budget_left,
                &mut partial,
            )?;
            for (mut fork, w, pairs) in pending.into_iter().rev() {
                if self.rebase(&mut fork, &pairs, w)? {
                    stats.repairs += 1;
                }
                stats.iterations += 1;
                fork.branch_id = next_id;
                next_id += 1;
                stats.branches += 1;
                stack.push(fork);
            }
            match step {
                Step::Continue => stack.push(st),
                Step::Done(c) => {
                    stats.branch_iterations.push(st.iteration_count);
                    if let Some(c) = c {
                        if found.insert(c.message.clone()) {
                            list.push(c);
                            if list.len() >= opts.max_list {
                                partial = !stack.is_empty() || partial;
                                break;
                            }
                        }
                    }
                }
            }
        }
        list.sort_by(|a, b| a.message.cmp(&b.message));
        Ok(DecodeResult { list, stats, partial })
    }
}
