//! Evaluation codes `C_Γ`, their dimension and minimum-distance bounds, and the
//! functions vanishing on the evaluation points.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{IncrementalBasis, Insert};
use crate::poly::UniPoly;
use crate::ring::{RingElement, StandardForm};

/// Distinct rational points `P_1, ..., P_n` on the curve, with the values of
/// `x_1` and the `y_j` cached.
#[derive(Debug, Clone)]
pub struct EvaluationSet {
    points: Vec<Vec<FieldElement>>,
    values: Vec<(FieldElement, Vec<FieldElement>)>,
}

impl EvaluationSet {
    pub fn new(sf: &StandardForm, points: Vec<Vec<FieldElement>>) -> Result<Self> {
        let t = sf.weights().len();
        let f = sf.field();
        for (i, p) in points.iter().enumerate() {
            if p.len() != t || p.iter().any(|&c| !f.contains(c)) {
                return Err(Error::InvalidPoints(format!(
                    "point {i} is not a {t}-tuple of field elements"
                )));
            }
            if !sf.curve().contains_point(p) {
                return Err(Error::InvalidPoints(format!("point {i} {p:?} is not on the curve")));
            }
        }
        let mut sorted = points.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != points.len() {
            return Err(Error::InvalidPoints("points are not pairwise distinct".into()));
        }
        let values = points.iter().map(|p| sf.basis_values(p)).collect();
        Ok(EvaluationSet { points, values })
    }

    /// Every affine rational point of the curve, in enumeration order.
    pub fn all_rational(sf: &StandardForm) -> Self {
        let points = sf.curve().rational_points();
        let values = points.iter().map(|p| sf.basis_values(p)).collect();
        EvaluationSet { points, values }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<FieldElement>] {
        &self.points
    }

    /// The points at the given indices.
    pub fn subset(&self, idx: &[usize]) -> EvaluationSet {
        EvaluationSet {
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            values: idx.iter().map(|&i| self.values[i].clone()).collect(),
        }
    }

    pub fn evaluate_at(&self, f: &Field, a: &RingElement, i: usize) -> FieldElement {
        let (x, ys) = &self.values[i];
        a.coeffs().iter().zip(ys).fold(0, |acc, (p, &y)| {
            if p.is_zero() {
                acc
            } else {
                f.add(acc, f.mul(p.eval(f, *x), y))
            }
        })
    }

    pub fn evaluate(&self, f: &Field, a: &RingElement) -> Vec<FieldElement> {
        (0..self.len()).map(|i| self.evaluate_at(f, a, i)).collect()
    }
}

pub fn evaluate(sf: &StandardForm, a: &RingElement, e: &EvaluationSet) -> Vec<FieldElement> {
    e.evaluate(sf.field(), a)
}

/// Per-residue-class minimal generators of an ideal of functions vanishing on a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaBasis {
    pub eta: Vec<RingElement>,
    pub pole_orders: Vec<u64>,
}

impl EtaBasis {
    /// `sum_j deg_{x_1} LT(eta_j)`, the colength of the ideal.
    pub fn degree_sum(&self, sf: &StandardForm) -> u64 {
        self.pole_orders
            .iter()
            .enumerate()
            .map(|(j, &p)| (p - sf.b()[j]) / sf.a1() as u64)
            .sum()
    }
}

/// Minimal vanishing functions on `pts`, one per class mod `a_1`, searching pole orders up to `budget`.
fn vanishing_basis(sf: &StandardForm, pts: &EvaluationSet, budget: u64) -> Result<EtaBasis> {
    let f = sf.field();
    let a1 = sf.a1();
    let orders = sf.semigroup().elements_up_to(budget);
    let mut basis = IncrementalBasis::new(pts.len());
    let mut eta: Vec<Option<(u64, RingElement)>> = vec![None; a1];
    let mut found = 0;
    for (k, &s) in orders.iter().enumerate() {
        let phi = sf.phi(s)?;
        let v = pts.evaluate(f, &phi);
        if let Insert::Dependent { coeffs } = basis.insert(f, &v) {
            let class = (s % a1 as u64) as usize;
            if eta[class].is_none() {
                let mut e = phi;
                for (c, &t) in coeffs.iter().zip(&orders[..k]) {
                    if *c != 0 {
                        e = e.sub(f, &sf.phi(t)?.scale(f, *c));
                    }
                }
                eta[class] = Some((s, e));
                found += 1;
                if found == a1 {
                    break;
                }
            }
        }
    }
    if found < a1 {
        return Err(Error::Budget(format!(
            "only {found} of {a1} vanishing classes found below pole order {budget}"
        )));
    }
    let (pole_orders, eta) = eta.into_iter().map(|e| e.unwrap()).unzip();
    Ok(EtaBasis { eta, pole_orders })
}

/// Everything about a curve and a point set that does not depend on `Γ`.
#[derive(Debug)]
pub struct CodeFamily {
    sf: StandardForm,
    points: EvaluationSet,
    eta: EtaBasis,
    s_indep: Vec<u64>,
    /// `φ_s` for `s` in `S ∩ [0, n + 2g + a_1]`, inserted in increasing order.
    phi_orders: Vec<u64>,
    phi_basis: IncrementalBasis,
}

impl CodeFamily {
    pub fn new(sf: StandardForm, points: EvaluationSet) -> Result<Arc<Self>> {
        let n = points.len() as u64;
        let g = sf.genus() as u64;
        let budget = n + 2 * g + sf.a1() as u64;
        let f = sf.field().clone();
        let phi_orders = sf.semigroup().elements_up_to(budget);
        let mut phi_basis = IncrementalBasis::new(points.len());
        let mut s_rank = Vec::new();
        for &s in &phi_orders {
            let v = points.evaluate(&f, &sf.phi(s)?);
            if let Insert::Independent { .. } = phi_basis.insert(&f, &v) {
                s_rank.push(s);
            }
        }
        let eta = vanishing_basis(&sf, &points, budget)?;
        let a1 = sf.a1() as u64;
        // S minus the pole orders of L(-D + ∞Q).
        let s_indep: Vec<u64> = phi_orders
            .iter()
            .copied()
            .filter(|&s| {
                let p = eta.pole_orders[(s % a1) as usize];
                s < p
            })
            .collect();
        if s_indep != s_rank || s_indep.len() != points.len() {
            return Err(Error::Internal(format!(
                "S_indep mismatch: {s_indep:?} from vanishing functions, {s_rank:?} from ranks"
            )));
        }
        Ok(Arc::new(CodeFamily {
            sf,
            points,
            eta,
            s_indep,
            phi_orders,
            phi_basis,
        }))
    }

    pub fn standard_form(&self) -> &StandardForm {
        &self.sf
    }

    pub fn field(&self) -> &Field {
        self.sf.field()
    }

    pub fn points(&self) -> &EvaluationSet {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn genus(&self) -> usize {
        self.sf.genus()
    }

    pub fn eta_basis(&self) -> &EtaBasis {
        &self.eta
    }

    pub fn s_indep(&self) -> &[u64] {
        &self.s_indep
    }

    pub fn evaluate(&self, a: &RingElement) -> Vec<FieldElement> {
        self.points.evaluate(self.field(), a)
    }

    pub fn contains(&self, s: u64) -> bool {
        self.sf.semigroup().contains(s)
    }

    /// `(1/a_1) sum_i max(-v_Q(η_{i'}) - b_i - s, 0)` with `i' = i + s mod a_1`.
    pub fn nu(&self, s: u64) -> Result<u64> {
        if !self.contains(s) {
            return Err(Error::Gap(s));
        }
        let a1 = self.sf.a1() as u64;
        let b = self.sf.b();
        let total: u64 = (0..a1)
            .map(|i| {
                let ip = ((i + s) % a1) as usize;
                self.eta.pole_orders[ip].saturating_sub(b[i as usize] + s)
            })
            .sum();
        debug_assert_eq!(total % a1, 0);
        Ok(total / a1)
    }

    /// `|{ j in S : j + s in S_indep }|`.
    pub fn lambda(&self, s: u64) -> Result<u64> {
        if !self.contains(s) {
            return Err(Error::Gap(s));
        }
        Ok(self.s_indep.iter().filter(|&&t| t >= s && self.contains(t - s)).count() as u64)
    }

    /// `(s, ν(s), λ(s))` for every nongap `s ≤ n + 4g`.
    pub fn nu_lambda_table(&self) -> Vec<(u64, u64, u64)> {
        let bound = (self.n() + 4 * self.genus()) as u64;
        self.sf
            .semigroup()
            .elements_up_to(bound)
            .into_iter()
            .map(|s| (s, self.nu(s).unwrap(), self.lambda(s).unwrap()))
            .collect()
    }

    /// Minimum of `ν` over `gamma`.
    pub fn d_ag(&self, gamma: &[u64]) -> Result<u64> {
        if gamma.is_empty() {
            return Err(Error::EmptyGamma);
        }
        let mut d = u64::MAX;
        for &s in gamma {
            d = d.min(self.nu(s)?);
        }
        Ok(d)
    }

    /// The `s` in `gamma` whose evaluation vector is new relative to smaller elements of `gamma`.
    pub fn gamma_indep(&self, gamma: &[u64]) -> Result<Vec<u64>> {
        let mut g = gamma.to_vec();
        g.sort_unstable();
        g.dedup();
        let f = self.field();
        let mut basis = IncrementalBasis::new(self.n());
        let mut out = Vec::new();
        for s in g {
            let v = self.evaluate(&self.sf.phi(s)?);
            if let Insert::Independent { .. } = basis.insert(f, &v) {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// Designed-distance construction `{ s in S_indep : ν(s) ≥ δ }`.
    pub fn improved_gamma(&self, delta: u64) -> Vec<u64> {
        self.s_indep
            .iter()
            .copied()
            .filter(|&s| self.nu(s).unwrap() >= delta)
            .collect()
    }

    /// A function of minimal pole order interpolating `r` on the points.
    pub fn h_interp(&self, r: &[FieldElement]) -> Result<RingElement> {
        if r.len() != self.n() {
            return Err(Error::InvalidCode(format!(
                "vector length {} != n = {}",
                r.len(),
                self.n()
            )));
        }
        let f = self.field();
        let coeffs = self
            .phi_basis
            .coordinates(f, r, self.phi_orders.len())
            .ok_or_else(|| Error::Internal("evaluation map is not surjective".into()))?;
        let mut h = self.sf.zero();
        for (&c, &s) in coeffs.iter().zip(&self.phi_orders) {
            if c != 0 {
                let (i, j) = self.sf.phi_index(s)?;
                h = h.add(f, &RingElement::monomial(self.sf.a1(), c, i, j));
            }
        }
        Ok(h)
    }

    /// Minimal generators of the ideal of functions vanishing on `supp(e)`.
    pub fn error_locator_basis(&self, e: &[FieldElement]) -> Result<EtaBasis> {
        let support: Vec<usize> = e.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect();
        let pts = self.points.subset(&support);
        let budget = (support.len() + 2 * self.genus() + self.sf.a1()) as u64;
        vanishing_basis(&self.sf, &pts, budget)
    }
}

/// How `Γ` is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaSelector {
    /// `Γ = S ∩ [0, u]`.
    U(u64),
    /// An explicit set of nongaps.
    Explicit(Vec<u64>),
    /// `Γ = { s in S_indep : ν(s) ≥ δ }`.
    Improved(u64),
}

impl std::fmt::Display for GammaSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GammaSelector::U(u) => write!(f, "u={u}"),
            GammaSelector::Explicit(g) => write!(f, "gamma={g:?}"),
            GammaSelector::Improved(d) => write!(f, "improved delta={d}"),
        }
    }
}

/// A concrete code `C_Γ`.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    family: Arc<CodeFamily>,
    gamma: Vec<u64>,
    gamma_indep: Vec<u64>,
    d_ag: u64,
    generator: Vec<Vec<FieldElement>>,
    /// Rows of `generator` in order; prefixes span the codes `C_{Γ ∩ [0, t]}`.
    basis: IncrementalBasis,
}

impl CodeSpec {
    pub fn new(family: Arc<CodeFamily>, selector: &GammaSelector) -> Result<Self> {
        let gamma = match selector {
            GammaSelector::U(u) => family.standard_form().semigroup().elements_up_to(*u),
            GammaSelector::Explicit(g) => {
                let mut g = g.clone();
                g.sort_unstable();
                g.dedup();
                if let Some(&s) = g.iter().find(|&&s| !family.contains(s)) {
                    return Err(Error::Gap(s));
                }
                g
            }
            GammaSelector::Improved(d) => {
                if *d < 1 || *d > family.n() as u64 {
                    return Err(Error::InvalidCode(format!("designed distance {d} outside [1, n]")));
                }
                family.improved_gamma(*d)
            }
        };
        Self::from_gamma(family, gamma)
    }

    pub fn from_gamma(family: Arc<CodeFamily>, gamma: Vec<u64>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::EmptyGamma);
        }
        let gamma_indep = family.gamma_indep(&gamma)?;
        let d_ag = family.d_ag(&gamma_indep)?;
        let f = family.field().clone();
        let mut basis = IncrementalBasis::new(family.n());
        let mut generator = Vec::with_capacity(gamma_indep.len());
        for &s in &gamma_indep {
            let row = family.evaluate(&family.standard_form().phi(s)?);
            basis.insert(&f, &row);
            generator.push(row);
        }
        let sk = *gamma_indep.last().unwrap();
        if (d_ag as i64) < family.n() as i64 - sk as i64 {
            return Err(Error::Internal(format!("d_AG = {d_ag} below n - s_k")));
        }
        Ok(CodeSpec {
            family,
            gamma,
            gamma_indep,
            d_ag,
            generator,
            basis,
        })
    }

    pub fn family(&self) -> &Arc<CodeFamily> {
        &self.family
    }

    pub fn standard_form(&self) -> &StandardForm {
        self.family.standard_form()
    }

    pub fn field(&self) -> &Field {
        self.family.field()
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    pub fn gamma(&self) -> &[u64] {
        &self.gamma
    }

    pub fn gamma_indep(&self) -> &[u64] {
        &self.gamma_indep
    }

    pub fn dimension(&self) -> usize {
        self.gamma_indep.len()
    }

    pub fn d_ag(&self) -> u64 {
        self.d_ag
    }

    /// `n - s_k`, the Goppa-type bound.
    pub fn goppa_bound(&self) -> i64 {
        self.n() as i64 - *self.gamma_indep.last().unwrap() as i64
    }

    pub fn generator_matrix(&self) -> &[Vec<FieldElement>] {
        &self.generator
    }

    /// Number of elements of `Γ_indep` that are at most `t`.
    pub fn prefix_len(&self, t: u64) -> usize {
        self.gamma_indep.partition_point(|&s| s <= t)
    }

    /// `μ = sum ω_s φ_s` and its evaluation; `message[k]` is the coefficient of `φ_{Γ_indep[k]}`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<(Vec<FieldElement>, RingElement)> {
        if message.len() != self.dimension() {
            return Err(Error::InvalidCode(format!(
                "message length {} != dimension {}",
                message.len(),
                self.dimension()
            )));
        }
        let f = self.field();
        if let Some(&c) = message.iter().find(|&&c| !f.contains(c)) {
            return Err(Error::InvalidCode(format!("symbol {c} is not a field element")));
        }
        let sf = self.standard_form();
        let mut mu = sf.zero();
        for (&c, &s) in message.iter().zip(&self.gamma_indep) {
            if c != 0 {
                let (i, j) = sf.phi_index(s)?;
                mu = mu.add(f, &RingElement::monomial(sf.a1(), c, i, j));
            }
        }
        let mut word = vec![0; self.n()];
        for (&c, row) in message.iter().zip(&self.generator) {
            if c != 0 {
                for (w, &g) in word.iter_mut().zip(row) {
                    *w = f.add(*w, f.mul(c, g));
                }
            }
        }
        Ok((word, mu))
    }

    /// The message of a codeword of `C_{Γ ∩ [0, t]}`, padded with zeros to full dimension,
    /// or `None` if the word is not in that subcode.
    pub fn message_in_prefix(&self, word: &[FieldElement], t: u64) -> Option<Vec<FieldElement>> {
        let k = self.prefix_len(t);
        let mut m = self.basis.coordinates(self.field(), word, k)?;
        m.resize(self.dimension(), 0);
        Some(m)
    }

    /// The message of a codeword, or `None` if `word` is not in the code.
    pub fn unencode(&self, word: &[FieldElement]) -> Option<Vec<FieldElement>> {
        self.message_in_prefix(word, u64::MAX)
    }

    /// `μ = sum ω_s φ_s` for a message.
    pub fn message_function(&self, message: &[FieldElement]) -> RingElement {
        let sf = self.standard_form();
        let f = self.field();
        let mut mu = sf.zero();
        for (&c, &s) in message.iter().zip(&self.gamma_indep) {
            if c != 0 {
                let (i, j) = sf.phi_index(s).unwrap();
                mu.coeffs_mut()[j].add_scaled_shifted(f, c, i, &UniPoly::constant(1));
            }
        }
        mu
    }
}
