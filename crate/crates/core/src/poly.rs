//! Dense univariate polynomials over a [`Field`], low degree first.
//!
//! The representation is always trimmed: the zero polynomial is the empty
//! vector and a nonzero polynomial has a nonzero last coefficient.

use crate::field::{Field, FieldElement};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut v = vec![0; k + 1];
        v[k] = c;
        UniPoly { coeffs: v }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, f: &Field, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|k| f.add(self.coeff(k), other.coeff(k))).collect();
        UniPoly::from_coeffs(v)
    }

    pub fn sub(&self, f: &Field, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|k| f.sub(self.coeff(k), other.coeff(k))).collect();
        UniPoly::from_coeffs(v)
    }

    pub fn neg(&self, f: &Field) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: FieldElement) -> UniPoly {
        if c == 0 {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        UniPoly { coeffs: v }
    }

    pub fn mul(&self, f: &Field, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        UniPoly::from_coeffs(v)
    }

    /// `self += c * x^k * other`, returning the number of field multiplications used.
    pub fn add_scaled_shifted(&mut self, f: &Field, c: FieldElement, k: usize, other: &UniPoly) -> u64 {
        if c == 0 || other.is_zero() {
            return 0;
        }
        let need = other.coeffs.len() + k;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        let mut mults = 0;
        for (j, &b) in other.coeffs.iter().enumerate() {
            if b != 0 {
                self.coeffs[j + k] = f.add(self.coeffs[j + k], f.mul(c, b));
                mults += 1;
            }
        }
        self.trim();
        mults
    }

    pub fn eval(&self, f: &Field, x: FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow(&self, f: &Field, e: u32) -> UniPoly {
        let mut out = UniPoly::constant(1);
        for _ in 0..e {
            out = out.mul(f, self);
        }
        out
    }
}
