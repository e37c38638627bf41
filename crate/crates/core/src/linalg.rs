//! Dense Gaussian elimination over a finite field.

use crate::field::{Field, FieldElement};

/// Outcome of inserting a vector into an [`IncrementalBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    /// The vector is new; it became a row with this pivot column.
    Independent { pivot: usize },
    /// The vector equals `sum_i coeffs[i] * v_i` over the previously inserted vectors.
    Dependent { coeffs: Vec<FieldElement> },
}

#[derive(Debug, Clone)]
struct Row {
    id: usize,
    pivot: usize,
    vec: Vec<FieldElement>,
    /// `vec = sum_i combo[i] * v_i`
    combo: Vec<FieldElement>,
}

/// Row-echelon form built one vector at a time, remembering how each row is
/// expressed through the inserted vectors. Rows only involve vectors inserted
/// before them, so any prefix of the insertion sequence can be queried.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    len: usize,
    inserted: usize,
    rows: Vec<Row>,
}

impl IncrementalBasis {
    pub fn new(len: usize) -> Self {
        IncrementalBasis {
            len,
            inserted: 0,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduce `v` against the rows that come from the first `prefix` inserted vectors.
    /// Returns the residual and the combination `c` with `v - residual = sum c_i v_i`.
    fn reduce(&self, f: &Field, v: &[FieldElement], prefix: usize) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let mut r = v.to_vec();
        let mut combo = vec![0; self.inserted.max(prefix)];
        for row in self.rows.iter().filter(|row| row.id < prefix) {
            let c = r[row.pivot];
            if c == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(&row.vec) {
                *x = f.sub(*x, f.mul(c, y));
            }
            for (x, &y) in combo.iter_mut().zip(&row.combo) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        (r, combo)
    }

    pub fn insert(&mut self, f: &Field, v: &[FieldElement]) -> Insert {
        assert_eq!(v.len(), self.len);
        let id = self.inserted;
        let (r, mut combo) = self.reduce(f, v, id);
        self.inserted += 1;
        match r.iter().position(|&x| x != 0) {
            None => {
                combo.truncate(id);
                Insert::Dependent { coeffs: combo }
            }
            Some(pivot) => {
                // row = (v - sum combo_i v_i) / r[pivot]
                let inv = f.inv(r[pivot]).unwrap();
                let vec = r.iter().map(|&x| f.mul(x, inv)).collect();
                let mut rc: Vec<FieldElement> = combo.iter().map(|&x| f.neg(f.mul(x, inv))).collect();
                rc.resize(id + 1, 0);
                rc[id] = inv;
                for row in &mut self.rows {
                    row.combo.resize(id + 1, 0);
                }
                self.rows.push(Row {
                    id,
                    pivot,
                    vec,
                    combo: rc,
                });
                Insert::Independent { pivot }
            }
        }
    }

    /// Coordinates of `v` in the span of the first `prefix` inserted vectors, if it lies there.
    pub fn coordinates(&self, f: &Field, v: &[FieldElement], prefix: usize) -> Option<Vec<FieldElement>> {
        let (r, mut combo) = self.reduce(f, v, prefix);
        if r.iter().any(|&x| x != 0) {
            return None;
        }
        combo.resize(prefix, 0);
        combo.truncate(prefix);
        Some(combo)
    }
}

/// Rank of a matrix given as rows.
pub fn rank(f: &Field, rows: &[Vec<FieldElement>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut basis = IncrementalBasis::new(first.len());
    for r in rows {
        basis.insert(f, r);
    }
    basis.rank()
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert(f: &Field, m: &[Vec<FieldElement>]) -> Option<Vec<Vec<FieldElement>>> {
    let n = m.len();
    let mut a: Vec<Vec<FieldElement>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, p);
        let inv = f.inv(a[col][col]).unwrap();
        for x in a[col].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let c = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(f: &Field, m: &[Vec<FieldElement>], v: &[FieldElement]) -> Vec<FieldElement> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
        .collect()
}

/// Hamming distance between two vectors.
pub fn distance(a: &[FieldElement], b: &[FieldElement]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incremental_dependencies() {
        let f = Field::prime(5).unwrap();
        let mut b = IncrementalBasis::new(3);
        let v0 = vec![1, 2, 0];
        let v1 = vec![0, 1, 1];
        assert!(matches!(b.insert(&f, &v0), Insert::Independent { .. }));
        assert!(matches!(b.insert(&f, &v1), Insert::Independent { .. }));
        // 2 v0 + 3 v1 = (2, 4+3, 3) = (2, 2, 3)
        match b.insert(&f, &[2, 2, 3]) {
            Insert::Dependent { coeffs } => assert_eq!(coeffs, vec![2, 3]),
            other => panic!("{other:?}"),
        }
        assert_eq!(b.coordinates(&f, &[2, 2, 3], 2), Some(vec![2, 3]));
        assert_eq!(b.coordinates(&f, &[2, 2, 3], 1), None);
        assert_eq!(b.coordinates(&f, &[3, 1, 0], 1), Some(vec![3]));
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::new(2, 3, vec![1, 1, 0, 1]).unwrap();
        let m = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 1, 1]];
        if let Some(inv) = invert(&f, &m) {
            for (i, e) in (0..3).map(|i| (i, (0..3).map(|j| u32::from(i == j)).collect::<Vec<_>>())) {
                let col: Vec<_> = (0..3).map(|r| inv[r][i]).collect();
                assert_eq!(mat_vec(&f, &m, &col), e);
            }
        }
        assert!(invert(&f, &[vec![1, 1], vec![1, 1]]).is_none());
    }
}
