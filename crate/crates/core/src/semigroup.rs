//! Numerical semigroups given by generators.

use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A numerical semigroup `S = <a_1, ..., a_t>` with finite complement.
///
/// Stored through its Apéry set with respect to the smallest generator: for
/// each residue `i mod a_1`, `apery[i]` is the least element of `S` in that class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    generators: Vec<u64>,
    multiplicity: u64,
    apery: Vec<u64>,
}

impl Semigroup {
    pub fn new(generators: &[u64]) -> Result<Self> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(Error::InvalidCurve("weights must be positive".into()));
        }
        if generators.iter().fold(0, |g, &a| gcd(g, a)) != 1 {
            return Err(Error::InvalidCurve(
                "weights do not generate a numerical semigroup (gcd != 1)".into(),
            ));
        }
        let a1 = *generators.iter().min().unwrap();
        // Shortest paths on residues mod a1; edge weights are the generators.
        let mut dist = vec![u64::MAX; a1 as usize];
        let mut done = vec![false; a1 as usize];
        dist[0] = 0;
        for _ in 0..a1 {
            let (u, du) = dist
                .iter()
                .enumerate()
                .filter(|(i, _)| !done[*i])
                .min_by_key(|(_, &d)| d)
                .map(|(i, &d)| (i, d))
                .unwrap();
            done[u] = true;
            for &g in generators {
                let v = ((u as u64 + g) % a1) as usize;
                if du + g < dist[v] {
                    dist[v] = du + g;
                }
            }
        }
        Ok(Semigroup {
            generators: generators.to_vec(),
            multiplicity: a1,
            apery: dist,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The smallest nonzero element `a_1`.
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// `b_i = min{ s in S : s = i mod a_1 }`.
    pub fn apery(&self) -> &[u64] {
        &self.apery
    }

    pub fn contains(&self, s: u64) -> bool {
        s >= self.apery[(s % self.multiplicity) as usize]
    }

    /// Every integer at or above the conductor is in `S`.
    pub fn conductor(&self) -> u64 {
        let max = *self.apery.iter().max().unwrap();
        (max + 1).saturating_sub(self.multiplicity)
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor()).filter(|&s| !self.contains(s)).collect()
    }

    pub fn genus(&self) -> usize {
        self.gaps().len()
    }

    /// Elements of `S` in `[0, bound]`, increasing.
    pub fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&s| self.contains(s)).collect()
    }

    /// Largest element of `S` strictly below `s`.
    pub fn prec(&self, s: u64) -> Result<u64> {
        if !self.contains(s) {
            return Err(Error::Gap(s));
        }
        if s == 0 {
            return Err(Error::NoPredecessor);
        }
        Ok((0..s).rev().find(|&t| self.contains(t)).unwrap())
    }

    /// Smallest element of `S` strictly above `s`.
    pub fn next(&self, s: u64) -> u64 {
        (s + 1..).find(|&t| self.contains(t)).unwrap()
    }
}
