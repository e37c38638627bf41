//! Interpolation for Guruswami–Sudan list decoding through module Gröbner bases,
//! followed by a bounded search for the `z`-roots of the interpolation polynomial.

use serde::Serialize;

use crate::code::{CodeFamily, CodeSpec};
use crate::curve::MPoly;
use crate::decoder::Candidate;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::groebner::{module_gb, module_gb_general, GbResult, ModuleElement, ModuleOrder};
use crate::linalg::{distance, IncrementalBasis, Insert};
use crate::poly::UniPoly;
use crate::ring::{RingElement, StandardForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GsParams {
    /// Multiplicity at every `(P_i, r_i)`.
    pub m: usize,
    /// Maximal `z`-degree, at least `m`.
    pub ell: usize,
    /// Pole-order bound of message functions.
    pub u: u64,
}

impl GsParams {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.ell < self.m {
            return Err(Error::Precondition(format!(
                "need 1 ≤ m ≤ ell, got m = {}, ell = {}",
                self.m, self.ell
            )));
        }
        Ok(())
    }
}

/// `C(n, k) mod p` as a field element.
fn binomial(field: &Field, n: usize, k: usize) -> FieldElement {
    // Pascal's rule keeps everything reduced mod p.
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for i in 1..row.len() {
            next[i] = field.add(row[i - 1], row[i]);
        }
        row = next;
    }
    row[k]
}

/// The element `f ∈ F_q[x_1]` with zero divisor exactly the evaluation points, when
/// the curve supplies one. Checks that it vanishes on every point and has pole order `n`.
pub fn assumption_f(fam: &CodeFamily) -> Result<Option<RingElement>> {
    let sf = fam.standard_form();
    let Some(coeffs) = &sf.spec().gs_f else { return Ok(None) };
    let f = sf.from_x1_poly(UniPoly::from_coeffs(coeffs.clone()));
    if fam.evaluate(&f).iter().any(|&v| v != 0) {
        return Err(Error::Precondition(
            "gs_f does not vanish on every evaluation point".into(),
        ));
    }
    if sf.pole_order(&f) != Some(fam.n() as u64) {
        return Err(Error::Precondition(format!(
            "gs_f has pole order {:?}, expected n = {}",
            sf.pole_order(&f),
            fam.n()
        )));
    }
    Ok(Some(f))
}

/// Minimal generators `η_{i,j}` of `L(-iD + ∞Q)` for `i = 0..=m`, one per class mod `a_1`.
pub fn eta_powers(fam: &CodeFamily, m: usize) -> Result<Vec<Vec<RingElement>>> {
    let sf = fam.standard_form();
    let field = sf.field();
    let a1 = sf.a1();
    let ys: Vec<RingElement> = (0..a1).map(|j| RingElement::monomial(a1, 1, 0, j)).collect();
    let mut out = vec![ys.clone()];
    if let Some(f) = assumption_f(fam)? {
        let mut fi = sf.one();
        for _ in 1..=m {
            fi = sf.mul(&fi, &f);
            out.push(ys.iter().map(|y| sf.mul(&fi, y)).collect());
        }
        return Ok(out);
    }
    let ord = ModuleOrder::new(a1 as u64, sf.b().to_vec())?;
    let eta = &fam.eta_basis().eta;
    for i in 1..=m {
        // L(-iD + ∞Q) = L(-(i-1)D + ∞Q) · L(-D + ∞Q) in the Dedekind ring L(∞Q).
        let prev = &out[i - 1];
        let gens: Vec<ModuleElement> = prev
            .iter()
            .flat_map(|a| eta.iter().map(move |b| (a, b)))
            .map(|(a, b)| ModuleElement::from_coords(sf.mul(a, b).into_coeffs()))
            .collect();
        let gb = module_gb_general(field, gens, &ord)?;
        let level: Vec<RingElement> = gb
            .basis
            .into_iter()
            .map(|e| RingElement::from_coeffs(e.coords))
            .collect();
        let colength: u64 = level
            .iter()
            .enumerate()
            .map(|(j, e)| e.coeff(j).degree().unwrap() as u64)
            .sum();
        if colength != (i * fam.n()) as u64 {
            return Err(Error::Internal(format!(
                "L(-{i}D) has colength {colength}, expected {}",
                i * fam.n()
            )));
        }
        out.push(level);
    }
    Ok(out)
}

/// Generators of `I_{r,m,ℓ}` over positions `y_j z^k ↦ j + k a_1`, with the matching order.
#[derive(Debug, Clone)]
pub struct InterpolationModule {
    pub generators: Vec<ModuleElement>,
    pub order: ModuleOrder,
    /// Whether every generator has `ind` equal to its position.
    pub triangular: bool,
}

pub fn gs_order(sf: &StandardForm, p: &GsParams) -> ModuleOrder {
    let a1 = sf.a1();
    let mut u = Vec::with_capacity(a1 * (p.ell + 1));
    for k in 0..=p.ell {
        for j in 0..a1 {
            u.push(sf.b()[j] + k as u64 * p.u);
        }
    }
    ModuleOrder { u_x: a1 as u64, u }
}

/// `(Z - h)^{m-i} η_{i,j}` for `i ≤ m` and `Z^{k-m} (Z - h)^m y_j` for `m < k ≤ ℓ`.
pub fn build_generators(fam: &CodeFamily, r: &[FieldElement], p: &GsParams) -> Result<InterpolationModule> {
    p.validate()?;
    let sf = fam.standard_form();
    let field = sf.field();
    let a1 = sf.a1();
    let s = a1 * (p.ell + 1);
    let h = fam.h_interp(r)?;
    let neg_h = h.neg(field);
    let mut neg_h_pows = vec![sf.one()];
    for _ in 0..p.m {
        neg_h_pows.push(sf.mul(neg_h_pows.last().unwrap(), &neg_h));
    }
    let etas = eta_powers(fam, p.m)?;
    let mut generators = vec![ModuleElement::zero(s); s];
    for k in 0..=p.ell {
        // (Z - h)^e Z^shift times the base function
        let (e, shift, base): (usize, usize, &Vec<RingElement>) = if k <= p.m {
            (k, 0, &etas[p.m - k])
        } else {
            (p.m, k - p.m, &etas[0])
        };
        for (j, eta) in base.iter().enumerate() {
            let mut g = ModuleElement::zero(s);
            for c in 0..=e {
                let coef = binomial(field, e, c);
                if coef == 0 {
                    continue;
                }
                let term = sf.mul(&neg_h_pows[e - c], eta).scale(field, coef);
                let z = c + shift;
                for (l, poly) in term.into_coeffs().into_iter().enumerate() {
                    g.coords[l + z * a1] = poly;
                }
            }
            generators[j + k * a1] = g;
        }
    }
    let triangular = generators
        .iter()
        .enumerate()
        .all(|(i, g)| crate::groebner::ind(g).ok() == Some(i + 1));
    Ok(InterpolationModule {
        generators,
        order: gs_order(sf, p),
        triangular,
    })
}

/// Upper bound on field multiplications for the interpolation step:
/// `[max_j b_j + m(n + 2g - 1) + u(ℓ - m)]^2 / a_1 * sum_{i=1}^{a_1(ℓ+1)} i^2`, rounded down.
pub fn multiplication_bound(max_b: u64, a1: u64, n: u64, g: u64, p: &GsParams) -> u64 {
    let m = p.m as u64;
    let ell = p.ell as u64;
    let base = max_b + m * (n + 2 * g - 1) + p.u * (ell - m);
    let k = a1 * (ell + 1);
    let squares = k * (k + 1) * (2 * k + 1) / 6;
    ((base as u128 * base as u128 * squares as u128) / a1 as u128) as u64
}

/// The interpolation polynomial and the Gröbner basis it came from.
#[derive(Debug, Clone)]
pub struct Interpolation {
    pub q: ModuleElement,
    pub gb: GbResult,
    pub module: InterpolationModule,
}

impl Interpolation {
    /// The `Z^k` coefficients of `Q` as functions.
    pub fn z_coefficients(&self, a1: usize) -> Vec<RingElement> {
        z_coefficients(&self.q, a1)
    }

    /// Weighted degree of `Q` under the interpolation order.
    pub fn weighted_degree(&self) -> u64 {
        let lt = self.module.order.lead(&self.q).unwrap();
        self.module.order.weight(lt.pos, lt.deg)
    }
}

pub fn z_coefficients(q: &ModuleElement, a1: usize) -> Vec<RingElement> {
    q.coords
        .chunks(a1)
        .map(|c| RingElement::from_coeffs(c.to_vec()))
        .collect()
}

pub fn interpolation_polynomial(fam: &CodeFamily, r: &[FieldElement], p: &GsParams) -> Result<Interpolation> {
    let module = build_generators(fam, r, p)?;
    let field = fam.field();
    let gb = if module.triangular {
        module_gb(field, module.generators.clone(), &module.order)?
    } else {
        module_gb_general(field, module.generators.clone(), &module.order)?
    };
    let q = gb.minimal(&module.order).clone();
    Ok(Interpolation { q, gb, module })
}

/// Coefficient vector of a function indexed by pole order, highest pole first.
fn pole_vector(sf: &StandardForm, a: &RingElement, top: u64) -> Vec<FieldElement> {
    let mut v = vec![0; top as usize + 1];
    for (i, j, c) in a.terms() {
        let s = sf.monomial_pole(i, j);
        v[(top - s) as usize] = c;
    }
    v
}

/// Whether `v_P(a) ≥ k` at the point `p`.
///
/// Spans products of `(x_j - x_j(P))^α` with basis monomials, which lie in `m_P^k`,
/// until their intersection with `L(NQ)` has the Riemann–Roch dimension of
/// `L(NQ - kP)`; membership is then decided exactly.
pub fn vanishes_to_order(sf: &StandardForm, point: &[FieldElement], a: &RingElement, k: usize) -> Result<bool> {
    if k == 0 || a.is_zero() {
        return Ok(true);
    }
    let field = sf.field();
    let pole = sf.pole_order(a).unwrap();
    let g = sf.genus() as u64;
    let n_top = pole.max(2 * g + k as u64);
    let weights = sf.weights().to_vec();
    let t = weights.len();
    let lin: Vec<RingElement> = (0..t)
        .map(|j| {
            let mut e = vec![0u32; t];
            e[j] = 1;
            let mut terms = vec![(e, 1)];
            if point[j] != 0 {
                terms.push((vec![0; t], field.neg(point[j])));
            }
            sf.normal_form(&MPoly::from_terms(&weights, field, &terms))
        })
        .collect::<Result<_>>()?;
    // products of k linear factors, as multisets of indices
    let mut prods: Vec<RingElement> = vec![sf.one()];
    let mut idx: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut np = Vec::new();
        let mut ni = Vec::new();
        for (pr, ix) in prods.iter().zip(&idx) {
            let start = ix.last().copied().unwrap_or(0);
            for (j, l) in lin.iter().enumerate().skip(start) {
                np.push(sf.mul(pr, l));
                let mut v = ix.clone();
                v.push(j);
                ni.push(v);
            }
        }
        prods = np;
        idx = ni;
    }
    let expected = sf.semigroup().elements_up_to(n_top).len() - k;
    let max_w = *weights.iter().max().unwrap();
    let mut extra = k as u64 * max_w;
    for _ in 0..6 {
        let top = n_top + extra;
        let mut basis = IncrementalBasis::new(top as usize + 1);
        let mut low_rank = 0;
        for pr in &prods {
            let pp = sf.pole_order(pr).unwrap();
            for s in sf.semigroup().elements_up_to(top.saturating_sub(pp)) {
                let v = pole_vector(sf, &sf.mul_phi(pr, s)?, top);
                if let Insert::Independent { pivot } = basis.insert(field, &v) {
                    if pivot as u64 >= top - n_top {
                        low_rank += 1;
                    }
                }
            }
        }
        if low_rank == expected {
            let v = pole_vector(sf, a, top);
            let inserted = basis.inserted();
            return Ok(basis.coordinates(field, &v, inserted).is_some());
        }
        extra *= 2;
    }
    Err(Error::Budget(format!(
        "could not span m_P^{k} within pole order {}",
        n_top + extra
    )))
}

/// Whether `Q(Z)` has multiplicity at least `m` at `(P, r_P)`.
pub fn multiplicity_at(
    sf: &StandardForm,
    q: &ModuleElement,
    point: &[FieldElement],
    r_p: FieldElement,
    m: usize,
) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    let field = sf.field();
    let coeffs = z_coefficients(q, sf.a1());
    for a in 0..m {
        // coefficient of (Z - r)^a
        let mut qa = sf.zero();
        for (k, qk) in coeffs.iter().enumerate().skip(a) {
            let c = field.mul(binomial(field, k, a), field.pow(r_p, (k - a) as u64));
            if c != 0 && !qk.is_zero() {
                qa = qa.add(field, &qk.scale(field, c));
            }
        }
        if !vanishes_to_order(sf, point, &qa, m - a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Q(μ)` as a function.
pub fn substitute(sf: &StandardForm, q: &ModuleElement, mu: &RingElement) -> RingElement {
    let field = sf.field();
    let coeffs = z_coefficients(q, sf.a1());
    let mut acc = sf.zero();
    for qk in coeffs.iter().rev() {
        acc = sf.mul(&acc, mu).add(field, qk);
    }
    acc
}

#[derive(Debug, Clone, Serialize)]
pub struct GsResult {
    pub list: Vec<Candidate>,
    pub partial: bool,
    pub multiplications: u64,
    pub weighted_degree: u64,
    pub search_nodes: u64,
}

/// Guruswami–Sudan list decoding of `C_u`: interpolate, collect pointwise roots of
/// `Q(P_i)(Z)`, and search codewords consistent with them.
pub fn gs_list_decode(code: &CodeSpec, r: &[FieldElement], p: &GsParams, tau: usize, budget: u64) -> Result<GsResult> {
    let fam = code.family();
    let sf = fam.standard_form();
    let field = sf.field();
    let n = fam.n();
    if r.len() != n {
        return Err(Error::InvalidCode(format!("received length {} != n = {n}", r.len())));
    }
    let interp = interpolation_polynomial(fam, r, p)?;
    let coeffs = interp.z_coefficients(sf.a1());
    // candidate symbols per position; None when Q(P_i) vanishes identically
    let roots: Vec<Option<Vec<FieldElement>>> = (0..n)
        .map(|i| {
            let vals: Vec<FieldElement> = coeffs.iter().map(|c| fam.points().evaluate_at(field, c, i)).collect();
            field.roots(&vals)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (roots[i].as_ref().map(|v| v.len()).unwrap_or(usize::MAX), i));
    // column i of the generator matrix; dependencies fix later symbols from earlier ones
    let k = code.dimension();
    let gen = code.generator_matrix();
    let mut basis = IncrementalBasis::new(k);
    let deps: Vec<Option<Vec<FieldElement>>> = order
        .iter()
        .map(|&i| {
            let col: Vec<FieldElement> = gen.iter().map(|row| row[i]).collect();
            match basis.insert(field, &col) {
                Insert::Independent { .. } => None,
                Insert::Dependent { coeffs } => Some(coeffs),
            }
        })
        .collect();

    struct Search<'a> {
        field: &'a Field,
        order: &'a [usize],
        roots: &'a [Option<Vec<FieldElement>>],
        deps: &'a [Option<Vec<FieldElement>>],
        r: &'a [FieldElement],
        tau: usize,
        budget: u64,
        nodes: u64,
        partial: bool,
        words: Vec<Vec<FieldElement>>,
    }
    impl Search<'_> {
        fn go(&mut self, depth: usize, vals: &mut Vec<FieldElement>, errs: usize) {
            if self.nodes >= self.budget {
                self.partial = true;
                return;
            }
            self.nodes += 1;
            if depth == self.order.len() {
                let mut w = vec![0; self.order.len()];
                for (&i, &v) in self.order.iter().zip(vals.iter()) {
                    w[i] = v;
                }
                self.words.push(w);
                return;
            }
            let pos = self.order[depth];
            let options: Vec<FieldElement> = match &self.deps[depth] {
                Some(c) => {
                    let v = c
                        .iter()
                        .zip(vals.iter())
                        .fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)));
                    match &self.roots[pos] {
                        Some(rs) if !rs.contains(&v) => vec![],
                        _ => vec![v],
                    }
                }
                None => match &self.roots[pos] {
                    Some(rs) => rs.clone(),
                    None => self.field.elements().collect(),
                },
            };
            for v in options {
                let e = errs + usize::from(v != self.r[pos]);
                if e > self.tau {
                    continue;
                }
                vals.push(v);
                self.go(depth + 1, vals, e);
                vals.pop();
            }
        }
    }
    let mut search = Search {
        field,
        order: &order,
        roots: &roots,
        deps: &deps,
        r,
        tau,
        budget,
        nodes: 0,
        partial: false,
        words: Vec::new(),
    };
    search.go(0, &mut Vec::with_capacity(n), 0);
    let mut list = Vec::new();
    for w in &search.words {
        let Some(message) = code.unencode(w) else { continue };
        let mu = code.message_function(&message);
        if substitute(sf, &interp.q, &mu).is_zero() {
            list.push(Candidate {
                message,
                codeword: w.clone(),
                distance: distance(w, r),
            });
        }
    }
    list.sort_by(|a, b| a.message.cmp(&b.message));
    list.dedup_by(|a, b| a.message == b.message);
    Ok(GsResult {
        list,
        partial: search.partial,
        multiplications: interp.gb.multiplications,
        weighted_degree: interp.weighted_degree(),
        search_nodes: search.nodes,
    })
}
