//! Exact arithmetic in GF(p^m).
//!
//! An element is stored as an integer in `[0, q)`. Its base-`p` digits are the
//! coordinates in the polynomial basis `1, t, t^2, ..., t^(m-1)` where `t` is a
//! root of the modulus: digit `i` is the coefficient of `t^i`. The encoding is
//! part of the on-disk formats and must not change.
//!
//! Multiplication is defined by schoolbook polynomial multiplication followed by
//! reduction modulo the modulus. Log/antilog tables are built once at
//! construction from a primitive element and give bit-identical results.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Encoded field element; see the module docs for the encoding.
pub type FieldElement = u32;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// Coefficients of the monic modulus, low degree first (length `m + 1`).
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p), both low degree first.
fn poly_rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (k, &bk) in b.iter().enumerate() {
                let t = (lead as u64 * bk as u64 % p as u64) as u32;
                r[shift + k] = (r[shift + k] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

/// True when the monic `modulus` has no monic factor of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        // Enumerate every monic polynomial of degree d.
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                cand.push((v % p as u64) as u32);
                v /= p as u64;
            }
            cand.push(1);
            if poly_rem_mod_p(modulus, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(Error::InvalidField(format!("order p^m = {p}^{m} exceeds {MAX_ORDER}")));
        }
        if modulus.len() != m as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus needs {} coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        if modulus[m as usize] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let q = q64 as u32;
        let mut field = Field {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables()?;
        Ok(field)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Field::new(spec.p, spec.m, spec.modulus.clone())
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        // t - 0 is the monic linear modulus; its root is 0, so encodings are residues.
        Field::new(p, 1, vec![0, 1])
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    fn build_tables(&mut self) -> Result<()> {
        let q = self.q;
        let order = q - 1;
        for g in 1..q {
            let mut exp = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            let mut primitive = true;
            for k in 0..order {
                if k > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = self.mul_schoolbook(x, g);
            }
            if primitive && x == 1 {
                let mut log = vec![0u32; q as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[v as usize] = k as u32;
                }
                self.exp = exp;
                self.log = log;
                return Ok(());
            }
        }
        Err(Error::InvalidField("no primitive element found".into()))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a < self.q
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let e = self.log[a as usize] + self.log[b as usize];
        self.exp[(if e >= order { e - order } else { e }) as usize]
    }

    /// Reference multiplication: multiply the polynomial encodings and reduce
    /// modulo the field modulus.
    pub fn mul_schoolbook(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * self.m as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let r = poly_rem_mod_p(&prod, &self.modulus, self.p);
        let mut digits = r;
        digits.resize(self.m as usize, 0);
        self.pack(&digits)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64 * (e % order) % order;
        self.exp[l as usize]
    }

    /// The element `k * 1` for an integer `k`.
    pub fn from_int(&self, k: u64) -> FieldElement {
        (k % self.p as u64) as u32
    }

    /// All elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.q
    }

    /// Roots in the field of the polynomial with coefficients `coeffs` (low degree first).
    /// Returns `None` when the polynomial is identically zero.
    pub fn roots(&self, coeffs: &[FieldElement]) -> Option<Vec<FieldElement>> {
        if coeffs.iter().all(|&c| c == 0) {
            return None;
        }
        Some(
            self.elements()
                .filter(|&x| coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c)) == 0)
                .collect(),
        )
    }
}

/// Operation selector mirroring the four field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(field: &Field, a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement> {
    if !field.contains(a) || !field.contains(b) {
        return Err(Error::Precondition(format!(
            "operand out of range for GF({})",
            field.order()
        )));
    }
    match op {
        FieldOp::Add => Ok(field.add(a, b)),
        FieldOp::Sub => Ok(field.sub(a, b)),
        FieldOp::Mul => Ok(field.mul(a, b)),
        FieldOp::Div => field.div(a, b),
    }
}

pub fn field_enumerate(field: &Field) -> Vec<FieldElement> {
    field.elements().collect()
}
