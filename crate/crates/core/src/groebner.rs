//! Gröbner bases of submodules of `F_q[x_1]^s` under weighted position orders.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::UniPoly;

/// `x^a e_i > x^b e_j` iff `a u_x + u_i > b u_x + u_j`, or the weights are equal and `i > j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleOrder {
    pub u_x: u64,
    pub u: Vec<u64>,
}

/// Leading term of a module element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeadTerm {
    /// 0-based position.
    pub pos: usize,
    pub deg: usize,
    pub coeff: FieldElement,
}

impl ModuleOrder {
    pub fn new(u_x: u64, u: Vec<u64>) -> Result<Self> {
        if u_x == 0 {
            return Err(Error::Precondition("x weight must be positive".into()));
        }
        Ok(ModuleOrder { u_x, u })
    }

    pub fn rank(&self) -> usize {
        self.u.len()
    }

    pub fn weight(&self, pos: usize, deg: usize) -> u64 {
        deg as u64 * self.u_x + self.u[pos]
    }

    pub fn cmp_terms(&self, a: (usize, usize), b: (usize, usize)) -> Ordering {
        self.weight(a.0, a.1).cmp(&self.weight(b.0, b.1)).then(a.0.cmp(&b.0))
    }

    pub fn lead(&self, f: &ModuleElement) -> Option<LeadTerm> {
        let mut best: Option<LeadTerm> = None;
        for (pos, p) in f.coords.iter().enumerate() {
            if let Some(deg) = p.degree() {
                let better = match best {
                    None => true,
                    Some(b) => self.cmp_terms((pos, deg), (b.pos, b.deg)) == Ordering::Greater,
                };
                if better {
                    best = Some(LeadTerm {
                        pos,
                        deg,
                        coeff: p.lc(),
                    });
                }
            }
        }
        best
    }

    /// Compare two elements by their leading terms; zero is smallest.
    pub fn cmp_elements(&self, a: &ModuleElement, b: &ModuleElement) -> Ordering {
        match (self.lead(a), self.lead(b)) {
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Less,
            (_, None) => Ordering::Greater,
            (Some(x), Some(y)) => self.cmp_terms((x.pos, x.deg), (y.pos, y.deg)),
        }
    }
}

/// `sum_i f_i(x_1) e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub coords: Vec<UniPoly>,
}

impl ModuleElement {
    pub fn zero(s: usize) -> Self {
        ModuleElement {
            coords: vec![UniPoly::zero(); s],
        }
    }

    pub fn from_coords(coords: Vec<UniPoly>) -> Self {
        ModuleElement { coords }
    }

    /// `c x^k e_pos`.
    pub fn unit(s: usize, pos: usize, c: FieldElement, k: usize) -> Self {
        let mut e = Self::zero(s);
        e.coords[pos] = UniPoly::monomial(c, k);
        e
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, f: &Field, o: &ModuleElement) -> ModuleElement {
        ModuleElement::from_coords(self.coords.iter().zip(&o.coords).map(|(a, b)| a.add(f, b)).collect())
    }

    pub fn sub(&self, f: &Field, o: &ModuleElement) -> ModuleElement {
        ModuleElement::from_coords(self.coords.iter().zip(&o.coords).map(|(a, b)| a.sub(f, b)).collect())
    }

    pub fn scale(&self, f: &Field, c: FieldElement) -> ModuleElement {
        ModuleElement::from_coords(self.coords.iter().map(|a| a.scale(f, c)).collect())
    }

    pub fn shift(&self, k: usize) -> ModuleElement {
        ModuleElement::from_coords(self.coords.iter().map(|a| a.shift(k)).collect())
    }

    pub fn mul_poly(&self, f: &Field, p: &UniPoly) -> ModuleElement {
        ModuleElement::from_coords(self.coords.iter().map(|a| a.mul(f, p)).collect())
    }

    /// `self += c x^k other`, returning the number of field multiplications.
    pub fn add_scaled_shifted(&mut self, f: &Field, c: FieldElement, k: usize, other: &ModuleElement) -> u64 {
        self.coords
            .iter_mut()
            .zip(&other.coords)
            .map(|(a, b)| {
                if b.is_zero() {
                    0
                } else {
                    a.add_scaled_shifted(f, c, k, b)
                }
            })
            .sum()
    }

    pub fn num_terms(&self) -> usize {
        self.coords.iter().map(|p| p.num_terms()).sum()
    }
}

/// `max{ i : f_i ≠ 0 }`, 1-based.
pub fn ind(f: &ModuleElement) -> Result<usize> {
    f.coords
        .iter()
        .rposition(|p| !p.is_zero())
        .map(|i| i + 1)
        .ok_or_else(|| Error::Precondition("ind of the zero element".into()))
}

/// Output of a Gröbner basis computation.
#[derive(Debug, Clone)]
pub struct GbResult {
    /// `basis[i]` has leading position `i`.
    pub basis: Vec<ModuleElement>,
    /// Field multiplications and divisions performed.
    pub multiplications: u64,
}

impl GbResult {
    /// The smallest basis element under `order`.
    pub fn minimal<'a>(&'a self, order: &ModuleOrder) -> &'a ModuleElement {
        self.basis
            .iter()
            .min_by(|a, b| order.cmp_elements(a, b))
            .expect("empty basis")
    }
}

/// Gröbner basis of the module generated by `s` elements with `ind(g_i) = i`.
///
/// Leading coefficients are left as they come out of the reductions.
pub fn module_gb(f: &Field, generators: Vec<ModuleElement>, order: &ModuleOrder) -> Result<GbResult> {
    let s = order.rank();
    if generators.len() != s {
        return Err(Error::Precondition(format!(
            "expected {s} generators, got {}",
            generators.len()
        )));
    }
    for (i, g) in generators.iter().enumerate() {
        if g.rank() != s || ind(g)? != i + 1 {
            return Err(Error::Precondition(format!(
                "generator {} does not have ind = {}",
                i + 1,
                i + 1
            )));
        }
    }
    module_gb_general(f, generators, order)
}

/// Gröbner basis of the module generated by arbitrary elements of a full-rank submodule.
/// Fails if the generated module does not have rank `s`.
pub fn module_gb_general(f: &Field, generators: Vec<ModuleElement>, order: &ModuleOrder) -> Result<GbResult> {
    let s = order.rank();
    let mut slots: Vec<Option<(ModuleElement, LeadTerm)>> = vec![None; s];
    let mut mults = 0u64;
    let mut work: Vec<ModuleElement> = generators;
    while let Some(mut g) = work.pop() {
        while let Some(lt) = order.lead(&g) {
            match slots[lt.pos].take() {
                None => {
                    slots[lt.pos] = Some((g, lt));
                    break;
                }
                Some((h, hl)) => {
                    // Keep the one of smaller degree in the slot and reduce the other by it.
                    let (mut big, bl, small, sl) = if lt.deg >= hl.deg {
                        (g, lt, h, hl)
                    } else {
                        (h, hl, g, lt)
                    };
                    let c = f.neg(f.div(bl.coeff, sl.coeff)?);
                    mults += 1;
                    mults += big.add_scaled_shifted(f, c, bl.deg - sl.deg, &small);
                    slots[lt.pos] = Some((small, sl));
                    g = big;
                }
            }
        }
    }
    let basis: Option<Vec<ModuleElement>> = slots.into_iter().map(|e| e.map(|(g, _)| g)).collect();
    let basis = basis.ok_or_else(|| Error::Precondition("generated module does not have full rank".into()))?;
    Ok(GbResult {
        basis,
        multiplications: mults,
    })
}

/// Reduce the non-leading terms of every basis element against the others.
pub fn inter_reduce(f: &Field, basis: &[ModuleElement], order: &ModuleOrder) -> Vec<ModuleElement> {
    let mut out = basis.to_vec();
    for i in 0..out.len() {
        let Some(lt) = order.lead(&out[i]) else { continue };
        let head = ModuleElement::unit(out[i].rank(), lt.pos, lt.coeff, lt.deg);
        let tail = out[i].sub(f, &head);
        out[i] = head.add(f, &reduce(f, &tail, &out, order));
    }
    out
}

/// Normal form of `g` with respect to `basis`.
pub fn reduce(f: &Field, g: &ModuleElement, basis: &[ModuleElement], order: &ModuleOrder) -> ModuleElement {
    let leads: Vec<Option<LeadTerm>> = basis.iter().map(|b| order.lead(b)).collect();
    let mut rem = g.clone();
    let mut out = ModuleElement::zero(g.rank());
    while let Some(lt) = order.lead(&rem) {
        let divisor = leads
            .iter()
            .enumerate()
            .filter_map(|(k, l)| l.map(|l| (k, l)))
            .find(|(_, l)| l.pos == lt.pos && l.deg <= lt.deg);
        match divisor {
            Some((k, l)) => {
                let c = f.neg(f.div(lt.coeff, l.coeff).unwrap());
                rem.add_scaled_shifted(f, c, lt.deg - l.deg, &basis[k]);
            }
            None => {
                let t = ModuleElement::unit(g.rank(), lt.pos, lt.coeff, lt.deg);
                rem = rem.sub(f, &t);
                out = out.add(f, &t);
            }
        }
    }
    out
}

/// Every S-vector of two elements with the same leading position reduces to zero.
pub fn is_groebner_basis(f: &Field, basis: &[ModuleElement], order: &ModuleOrder) -> bool {
    let nz: Vec<(&ModuleElement, LeadTerm)> = basis.iter().filter_map(|b| order.lead(b).map(|l| (b, l))).collect();
    for (i, (a, la)) in nz.iter().enumerate() {
        for (b, lb) in &nz[i + 1..] {
            if la.pos != lb.pos {
                continue;
            }
            let d = la.deg.max(lb.deg);
            let mut sv = a.shift(d - la.deg).scale(f, lb.coeff);
            sv.add_scaled_shifted(f, f.neg(la.coeff), d - lb.deg, b);
            if !reduce(f, &sv, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}
