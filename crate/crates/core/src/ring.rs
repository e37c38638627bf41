//! The ring of functions regular away from `Q`, as a free `F_q[x_1]`-module.
//!
//! Every function is uniquely `sum_j p_j(x_1) y_j` with `0 <= j < a_1`, and the
//! monomial `x_1^i y_j` has pole order `i a_1 + b_j`. Distinct monomials have
//! distinct pole orders, which makes the pole order and leading coefficient of
//! a function well defined.

use crate::curve::{weighted_degree, CurveSpec, Exponents, MPoly, ValidatedCurve};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::UniPoly;
use crate::semigroup::Semigroup;
use std::collections::HashMap;

/// Pole order at `Q`; `None` is the pole order of the zero function and sorts
/// below every integer.
pub type PoleOrder = Option<u64>;

/// A function in Ω_0 coordinates: `coeffs[j]` is the `F_q[x_1]` coefficient of `y_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: Vec<UniPoly>,
}

impl RingElement {
    pub fn zero(a1: usize) -> Self {
        RingElement {
            coeffs: vec![UniPoly::zero(); a1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<UniPoly>) -> Self {
        RingElement { coeffs }
    }

    /// `c * x_1^i * y_j`
    pub fn monomial(a1: usize, c: FieldElement, i: usize, j: usize) -> Self {
        let mut r = Self::zero(a1);
        r.coeffs[j] = UniPoly::monomial(c, i);
        r
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &UniPoly {
        &self.coeffs[j]
    }

    pub fn coeffs_mut(&mut self) -> &mut [UniPoly] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<UniPoly> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, f: &Field, o: &RingElement) -> RingElement {
        RingElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(f, b)).collect(),
        }
    }

    pub fn sub(&self, f: &Field, o: &RingElement) -> RingElement {
        RingElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(f, b)).collect(),
        }
    }

    pub fn neg(&self, f: &Field) -> RingElement {
        RingElement {
            coeffs: self.coeffs.iter().map(|a| a.neg(f)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: FieldElement) -> RingElement {
        RingElement {
            coeffs: self.coeffs.iter().map(|a| a.scale(f, c)).collect(),
        }
    }

    /// Multiply by `x_1^k`.
    pub fn shift(&self, k: usize) -> RingElement {
        RingElement {
            coeffs: self.coeffs.iter().map(|a| a.shift(k)).collect(),
        }
    }

    /// Support as `(x_1-degree, basis index, coefficient)` triples.
    pub fn terms(&self) -> Vec<(usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for (j, p) in self.coeffs.iter().enumerate() {
            for (i, &c) in p.coeffs().iter().enumerate() {
                if c != 0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }
}

/// The standard form of a validated curve.
#[derive(Debug, Clone)]
pub struct StandardForm {
    curve: ValidatedCurve,
    a1: usize,
    b: Vec<u64>,
    l: Vec<Exponents>,
    index_of: HashMap<Exponents, usize>,
    mult_table: Vec<RingElement>,
    gaps: Vec<u64>,
}

impl StandardForm {
    pub fn build(spec: &CurveSpec) -> Result<Self> {
        let curve = spec.validate()?;
        Self::from_validated(curve)
    }

    pub fn from_validated(curve: ValidatedCurve) -> Result<Self> {
        let weights = curve.weights().to_vec();
        let t = weights.len();
        let sg = curve.semigroup.clone();
        let a1 = sg.multiplicity() as usize;
        let b = sg.apery().to_vec();

        // L_i: the smallest exponent tuple (under the weighted order) with weighted degree b_i.
        let mut l = Vec::with_capacity(a1);
        for &bi in &b {
            let cands = tuples_with_degree(&weights, bi);
            let min = cands
                .into_iter()
                .min_by(|x, y| crate::curve::compare_exponents(&weights, x, y))
                .ok_or_else(|| Error::InvalidStandardForm(format!("no monomial of weighted degree {bi}")))?;
            if min[0] != 0 {
                return Err(Error::InvalidStandardForm(format!("L for b = {bi} involves x_1")));
            }
            if !curve.is_in_footprint(&min) {
                return Err(Error::InvalidStandardForm(format!(
                    "monomial {min:?} of pole order {bi} is not in the footprint"
                )));
            }
            l.push(min);
        }

        // The x_1-free part of the footprint must be exactly {L_i}. A smallest
        // counterexample has weighted degree at most max(b) + a_t.
        let bound = b.iter().max().copied().unwrap_or(0) + weights.iter().max().copied().unwrap();
        let mut index_of = HashMap::new();
        for (j, e) in l.iter().enumerate() {
            index_of.insert(e.clone(), j);
        }
        for d in 0..=bound {
            for e in tuples_with_degree(&weights, d) {
                if e[0] == 0 && curve.is_in_footprint(&e) && !index_of.contains_key(&e) {
                    return Err(Error::InvalidStandardForm(format!(
                        "footprint monomial {e:?} is not of the form x_1^m y_i"
                    )));
                }
            }
        }
        for g in &curve.basis {
            let (lm, _) = g.leading().unwrap();
            let mut free = lm.clone();
            free[0] = 0;
            if index_of.contains_key(&free) {
                return Err(Error::InvalidStandardForm(format!(
                    "leading monomial {lm:?} cuts x_1^m y_i out of the footprint"
                )));
            }
        }

        let mut sf = StandardForm {
            curve,
            a1,
            b,
            l,
            index_of,
            mult_table: Vec::new(),
            gaps: sg.gaps(),
        };
        let mut table = Vec::with_capacity(a1 * a1);
        for j in 0..a1 {
            for k in 0..a1 {
                let e: Exponents = (0..t).map(|v| sf.l[j][v] + sf.l[k][v]).collect();
                let prod = sf.normal_form(&MPoly::from_terms(&weights, sf.field(), &[(e, 1)]))?;
                if sf.pole_order(&prod) != Some(sf.b[j] + sf.b[k]) {
                    return Err(Error::InvalidStandardForm(format!(
                        "y_{j} * y_{k} has pole order {:?}, expected {}",
                        sf.pole_order(&prod),
                        sf.b[j] + sf.b[k]
                    )));
                }
                table.push(prod);
            }
        }
        sf.mult_table = table;
        Ok(sf)
    }

    pub fn curve(&self) -> &ValidatedCurve {
        &self.curve
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.curve.spec
    }

    pub fn field(&self) -> &Field {
        &self.curve.field
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.curve.semigroup
    }

    pub fn weights(&self) -> &[u64] {
        self.curve.weights()
    }

    pub fn a1(&self) -> usize {
        self.a1
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// `b_j = -v_Q(y_j)`.
    pub fn b(&self) -> &[u64] {
        &self.b
    }

    /// Exponent tuples of `y_0, ..., y_{a_1 - 1}`.
    pub fn y_monomials(&self) -> &[Exponents] {
        &self.l
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// `y_j * y_k` in Ω_0 coordinates.
    pub fn mult_table(&self, j: usize, k: usize) -> &RingElement {
        &self.mult_table[j * self.a1 + k]
    }

    pub fn zero(&self) -> RingElement {
        RingElement::zero(self.a1)
    }

    pub fn one(&self) -> RingElement {
        RingElement::monomial(self.a1, 1, 0, 0)
    }

    /// The element of `F_q[x_1]` embedded in the ring.
    pub fn from_x1_poly(&self, p: UniPoly) -> RingElement {
        let mut r = self.zero();
        r.coeffs[0] = p;
        r
    }

    /// Unique Ω_0 representative of a polynomial in `X_1, ..., X_t`.
    pub fn normal_form(&self, p: &MPoly) -> Result<RingElement> {
        let red = self.curve.reduce(p);
        let mut out = self.zero();
        for (e, c) in red.terms_desc() {
            let mut free = e.clone();
            let i = free[0] as usize;
            free[0] = 0;
            let j = *self
                .index_of
                .get(&free)
                .ok_or_else(|| Error::InvalidStandardForm(format!("reduced monomial {e:?} is outside Ω_0")))?;
            let mut acc = out.coeffs[j].clone();
            acc.add_scaled_shifted(self.field(), c, i, &UniPoly::constant(1));
            out.coeffs[j] = acc;
        }
        Ok(out)
    }

    /// Express an Ω_0 element back as a polynomial in `X_1, ..., X_t`.
    pub fn to_mpoly(&self, a: &RingElement) -> MPoly {
        let mut p = MPoly::zero();
        for (i, j, c) in a.terms() {
            let mut e = self.l[j].clone();
            e[0] += i as u32;
            p.add_term(self.weights(), self.field(), e, c);
        }
        p
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.field();
        let mut out = self.zero();
        for (j, pa) in a.coeffs.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (k, pb) in b.coeffs.iter().enumerate() {
                if pb.is_zero() {
                    continue;
                }
                let ab = pa.mul(f, pb);
                let entry = self.mult_table(j, k);
                for (l, t) in entry.coeffs.iter().enumerate() {
                    if !t.is_zero() {
                        out.coeffs[l] = out.coeffs[l].add(f, &ab.mul(f, t));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &RingElement, e: u32) -> RingElement {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// `-v_Q(a)`.
    pub fn pole_order(&self, a: &RingElement) -> PoleOrder {
        a.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.degree().map(|d| d as u64 * self.a1 as u64 + self.b[j]))
            .max()
    }

    /// Pole order of the monomial `x_1^i y_j`.
    pub fn monomial_pole(&self, i: usize, j: usize) -> u64 {
        i as u64 * self.a1 as u64 + self.b[j]
    }

    /// Leading term `(x_1-degree, basis index, coefficient)`.
    pub fn leading_term(&self, a: &RingElement) -> Option<(usize, usize, FieldElement)> {
        let s = self.pole_order(a)?;
        let j = (s % self.a1 as u64) as usize;
        let p = &a.coeffs[j];
        Some((p.degree().unwrap(), j, p.lc()))
    }

    pub fn lc(&self, a: &RingElement) -> FieldElement {
        self.leading_term(a).map(|t| t.2).unwrap_or(0)
    }

    /// `(i, j)` with `x_1^i y_j` of pole order `s`.
    pub fn phi_index(&self, s: u64) -> Result<(usize, usize)> {
        let j = (s % self.a1 as u64) as usize;
        if s < self.b[j] {
            return Err(Error::Gap(s));
        }
        Ok((((s - self.b[j]) / self.a1 as u64) as usize, j))
    }

    /// The monomial `φ_s`.
    pub fn phi(&self, s: u64) -> Result<RingElement> {
        let (i, j) = self.phi_index(s)?;
        Ok(RingElement::monomial(self.a1, 1, i, j))
    }

    pub fn prec(&self, s: u64) -> Result<u64> {
        self.semigroup().prec(s)
    }

    /// Multiply by `φ_s` without forming the product with a dense element.
    pub fn mul_phi(&self, a: &RingElement, s: u64) -> Result<RingElement> {
        let (i, j) = self.phi_index(s)?;
        let f = self.field();
        let mut out = self.zero();
        for (k, pa) in a.coeffs.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            let pa = pa.shift(i);
            for (l, t) in self.mult_table(k, j).coeffs.iter().enumerate() {
                if !t.is_zero() {
                    out.coeffs[l] = out.coeffs[l].add(f, &pa.mul(f, t));
                }
            }
        }
        Ok(out)
    }

    /// Exact division `num / den` when the quotient lies in the ring and has
    /// pole order at most `bound`; `None` otherwise.
    pub fn exact_div(&self, num: &RingElement, den: &RingElement, bound: Option<u64>) -> Option<RingElement> {
        let f = self.field();
        let dp = self.pole_order(den)?;
        let mut rem = num.clone();
        let mut quot = self.zero();
        while let Some(rp) = self.pole_order(&rem) {
            if rp < dp {
                return None;
            }
            let t = rp - dp;
            if bound.map(|b| t > b).unwrap_or(false) || !self.semigroup().contains(t) {
                return None;
            }
            let prod = self.mul_phi(den, t).ok()?;
            let c = f.div(self.lc(&rem), self.lc(&prod)).ok()?;
            let (i, j) = self.phi_index(t).ok()?;
            quot.coeffs[j].add_scaled_shifted(f, c, i, &UniPoly::constant(1));
            rem = rem.sub(f, &prod.scale(f, c));
        }
        Some(quot)
    }

    /// Values of `x_1` and `y_0, ..., y_{a_1-1}` at a point.
    pub fn basis_values(&self, point: &[FieldElement]) -> (FieldElement, Vec<FieldElement>) {
        let f = self.field();
        let ys = self
            .l
            .iter()
            .map(|e| e.iter().zip(point).fold(1, |m, (&k, &x)| f.mul(m, f.pow(x, k as u64))))
            .collect();
        (point[0], ys)
    }
}

/// All exponent tuples with the given weighted degree.
fn tuples_with_degree(weights: &[u64], d: u64) -> Vec<Exponents> {
    fn rec(weights: &[u64], k: usize, left: u64, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if k == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[k];
        let mut m = 0;
        while m * w <= left {
            cur.push(m as u32);
            rec(weights, k + 1, left - m * w, cur, out);
            cur.pop();
            m += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, d, &mut Vec::new(), &mut out);
    debug_assert!(out.iter().all(|e| weighted_degree(weights, e) == d));
    out
}
