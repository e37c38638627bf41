//! Curve specifications in weighted standard form.
//!
//! A curve is given by generators `x_1, ..., x_t` of the ring of functions
//! regular away from `Q`, their pole orders `a_1 < ...` at `Q`, and a Gröbner
//! basis of the ideal of relations with respect to the weighted order below.
//! This module validates that data; it never completes a basis.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldSpec};
use crate::semigroup::Semigroup;
use serde::{Deserialize, Serialize};
use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;

pub type Exponents = Vec<u32>;

/// Weighted degree of an exponent tuple.
pub fn weighted_degree(weights: &[u64], e: &[u32]) -> u64 {
    weights.iter().zip(e).map(|(&w, &m)| w * m as u64).sum()
}

/// The weighted order on monomials: larger weighted degree wins; on a tie the
/// monomial with the smaller exponent at the first differing coordinate is larger.
pub fn compare_exponents(weights: &[u64], a: &[u32], b: &[u32]) -> Ordering {
    weighted_degree(weights, a)
        .cmp(&weighted_degree(weights, b))
        .then_with(|| b.cmp(a))
}

/// Compares monomials `X^a Z^za` and `X^b Z^zb`, where `Z` carries weight `u_weight`
/// and is treated as the last coordinate. With both z-degrees zero this is the
/// plain weighted order.
pub fn monomial_compare(weights: &[u64], u_weight: u64, a: (&[u32], u32), b: (&[u32], u32)) -> Ordering {
    let mut wa = weights.to_vec();
    wa.push(u_weight);
    let mut ea = a.0.to_vec();
    ea.push(a.1);
    let mut eb = b.0.to_vec();
    eb.push(b.1);
    compare_exponents(&wa, &ea, &eb)
}

type Key = (u64, Reverse<Exponents>);

/// Sparse multivariate polynomial kept sorted by the weighted order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Key, FieldElement>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn from_terms(weights: &[u64], field: &Field, terms: &[(Exponents, FieldElement)]) -> Self {
        let mut p = MPoly::zero();
        for (e, c) in terms {
            p.add_term(weights, field, e.clone(), *c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, weights: &[u64], field: &Field, e: Exponents, c: FieldElement) {
        if c == 0 {
            return;
        }
        let key = (weighted_degree(weights, &e), Reverse(e));
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = field.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    /// Leading monomial and coefficient.
    pub fn leading(&self) -> Option<(&Exponents, FieldElement)> {
        self.terms.iter().next_back().map(|((_, Reverse(e)), &c)| (e, c))
    }

    /// Terms in decreasing order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Exponents, FieldElement)> {
        self.terms.iter().rev().map(|((_, Reverse(e)), &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `self += c * X^shift * other`
    pub fn add_scaled_monomial(
        &mut self,
        weights: &[u64],
        field: &Field,
        c: FieldElement,
        shift: &[u32],
        other: &MPoly,
    ) {
        for (e, a) in other.terms_desc() {
            let ne: Exponents = e.iter().zip(shift).map(|(x, y)| x + y).collect();
            self.add_term(weights, field, ne, field.mul(c, a));
        }
    }

    pub fn eval(&self, field: &Field, point: &[FieldElement]) -> FieldElement {
        self.terms_desc().fold(0, |acc, (e, c)| {
            let mon = e
                .iter()
                .zip(point)
                .fold(1, |m, (&k, &x)| field.mul(m, field.pow(x, k as u64)));
            field.add(acc, field.mul(c, mon))
        })
    }
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Full reduction of `p` modulo `basis` (each element given with its leading data).
pub fn reduce_mpoly(weights: &[u64], field: &Field, p: &MPoly, basis: &[MPoly]) -> MPoly {
    let leads: Vec<(Exponents, FieldElement)> = basis
        .iter()
        .filter_map(|g| g.leading().map(|(e, c)| (e.clone(), c)))
        .collect();
    let mut rest = p.clone();
    let mut out = MPoly::zero();
    while let Some((e, c)) = rest.leading().map(|(e, c)| (e.clone(), c)) {
        match leads.iter().position(|(le, _)| divides(le, &e)) {
            Some(k) => {
                let shift: Exponents = e.iter().zip(&leads[k].0).map(|(x, y)| x - y).collect();
                let factor = field.neg(field.div(c, leads[k].1).expect("leading coefficient is nonzero"));
                rest.add_scaled_monomial(weights, field, factor, &shift, &basis[k]);
            }
            None => {
                rest.add_term(weights, field, e.clone(), field.neg(c));
                out.add_term(weights, field, e, c);
            }
        }
    }
    out
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Declared curve data, exactly as it appears in a curve-spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub field: FieldSpec,
    /// Pole orders `a_1, ..., a_t` of the generators at `Q`; `a_1` is the minimum.
    pub weights: Vec<u64>,
    /// Gröbner basis of the ideal of relations, each polynomial as `(exponents, coefficient)` terms.
    pub ideal_basis: Vec<Vec<(Exponents, FieldElement)>>,
    pub genus: usize,
    /// Optional `f` in `F_q[x_1]` (coefficients low degree first) whose zero divisor is the
    /// full evaluation divisor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gs_f: Option<Vec<FieldElement>>,
}

/// A curve spec that passed every structural check.
#[derive(Debug, Clone)]
pub struct ValidatedCurve {
    pub spec: CurveSpec,
    pub field: Field,
    pub semigroup: Semigroup,
    pub basis: Vec<MPoly>,
}

impl CurveSpec {
    pub fn t(&self) -> usize {
        self.weights.len()
    }

    pub fn validate(&self) -> Result<ValidatedCurve> {
        let field = Field::from_spec(&self.field)?;
        let t = self.t();
        if t == 0 {
            return Err(Error::InvalidCurve("no generators".into()));
        }
        let a1 = self.weights[0];
        if self.weights.iter().any(|&w| w < a1) {
            return Err(Error::InvalidCurve("a_1 must be the smallest weight".into()));
        }
        let semigroup = Semigroup::new(&self.weights)?;
        let mut basis = Vec::with_capacity(self.ideal_basis.len());
        for (k, rel) in self.ideal_basis.iter().enumerate() {
            for (e, c) in rel {
                if e.len() != t {
                    return Err(Error::InvalidCurve(format!(
                        "relation {k}: exponent tuple of arity {} (expected {t})",
                        e.len()
                    )));
                }
                if !field.contains(*c) {
                    return Err(Error::InvalidCurve(format!(
                        "relation {k}: coefficient {c} outside the field"
                    )));
                }
            }
            let p = MPoly::from_terms(&self.weights, &field, rel);
            let top: Vec<u64> = p
                .terms_desc()
                .take(2)
                .map(|(e, _)| weighted_degree(&self.weights, e))
                .collect();
            match top[..] {
                [w1, w2] if w1 != w2 => {
                    return Err(Error::InvalidCurve(format!(
                        "relation {k}: two highest monomials have weighted degrees {w1} and {w2}"
                    )));
                }
                [_, _] => {}
                _ => return Err(Error::InvalidCurve(format!("relation {k} has fewer than two terms"))),
            }
            basis.push(p);
        }
        // Buchberger criterion: every S-polynomial reduces to zero.
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let (ei, ci) = basis[i].leading().map(|(e, c)| (e.clone(), c)).unwrap();
                let (ej, cj) = basis[j].leading().map(|(e, c)| (e.clone(), c)).unwrap();
                let l = lcm(&ei, &ej);
                let si: Exponents = l.iter().zip(&ei).map(|(x, y)| x - y).collect();
                let sj: Exponents = l.iter().zip(&ej).map(|(x, y)| x - y).collect();
                let mut s = MPoly::zero();
                s.add_scaled_monomial(&self.weights, &field, field.inv(ci)?, &si, &basis[i]);
                s.add_scaled_monomial(&self.weights, &field, field.neg(field.inv(cj)?), &sj, &basis[j]);
                if !reduce_mpoly(&self.weights, &field, &s, &basis).is_zero() {
                    return Err(Error::InvalidCurve(format!(
                        "ideal basis is not a Gröbner basis: S-polynomial of relations {i} and {j} does not reduce to 0"
                    )));
                }
            }
        }
        let gaps = semigroup.genus();
        if gaps != self.genus {
            return Err(Error::InvalidCurve(format!(
                "declared genus {} but the semigroup generated by the weights has {gaps} gaps",
                self.genus
            )));
        }
        if let Some(f) = &self.gs_f {
            if f.iter().any(|&c| !field.contains(c)) {
                return Err(Error::InvalidCurve("gs_f coefficient outside the field".into()));
            }
        }
        Ok(ValidatedCurve {
            spec: self.clone(),
            field,
            semigroup,
            basis,
        })
    }
}

impl ValidatedCurve {
    pub fn weights(&self) -> &[u64] {
        &self.spec.weights
    }

    pub fn is_in_footprint(&self, e: &[u32]) -> bool {
        !self
            .basis
            .iter()
            .any(|g| g.leading().map(|(le, _)| divides(le, e)).unwrap_or(false))
    }

    pub fn reduce(&self, p: &MPoly) -> MPoly {
        reduce_mpoly(self.weights(), &self.field, p, &self.basis)
    }

    /// True when the point satisfies every relation.
    pub fn contains_point(&self, point: &[FieldElement]) -> bool {
        self.basis.iter().all(|g| g.eval(&self.field, point) == 0)
    }

    /// All affine `F_q`-rational points, in lexicographic order of encodings.
    pub fn rational_points(&self) -> Vec<Vec<FieldElement>> {
        let t = self.spec.t();
        let q = self.field.order();
        let total = (q as u64).pow(t as u32);
        let mut pts = Vec::new();
        for idx in 0..total {
            let mut v = idx;
            let mut p = vec![0; t];
            for k in (0..t).rev() {
                p[k] = (v % q as u64) as u32;
                v /= q as u64;
            }
            if self.contains_point(&p) {
                pts.push(p);
            }
        }
        pts
    }
}
