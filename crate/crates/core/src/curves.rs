//! Ready-made curve specs used by the examples, tests and the bundled curve files.

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// A fixed irreducible modulus for each supported small field order.
pub fn default_field(q: u32) -> Result<FieldSpec> {
    let (p, m, modulus) = match q {
        2 => (2, 1, vec![0, 1]),
        3 => (3, 1, vec![0, 1]),
        4 => (2, 2, vec![1, 1, 1]),
        5 => (5, 1, vec![0, 1]),
        7 => (7, 1, vec![0, 1]),
        8 => (2, 3, vec![1, 1, 0, 1]),
        9 => (3, 2, vec![1, 0, 1]),
        11 => (11, 1, vec![0, 1]),
        13 => (13, 1, vec![0, 1]),
        16 => (2, 4, vec![1, 1, 0, 0, 1]),
        25 => (5, 2, vec![2, 0, 1]),
        27 => (3, 3, vec![1, 2, 0, 1]),
        32 => (2, 5, vec![1, 0, 1, 0, 0, 1]),
        64 => (2, 6, vec![1, 1, 0, 0, 0, 0, 1]),
        _ => return Err(Error::InvalidField(format!("no default modulus for q = {q}"))),
    };
    Ok(FieldSpec { p, m, modulus })
}

/// The Hermitian curve `y^r + y = x^(r+1)` over GF(r^2), with `x`, `y` of pole orders `r`, `r + 1`.
pub fn hermitian(r: u32) -> Result<CurveSpec> {
    let field = default_field(r * r)?;
    let p = field.p;
    let minus_one = p - 1;
    let q = r * r;
    // x^(q) - x vanishes on every affine point and has pole order r * q = n.
    let mut f = vec![0u32; q as usize + 1];
    f[1] = minus_one;
    f[q as usize] = 1;
    Ok(CurveSpec {
        field,
        weights: vec![r as u64, r as u64 + 1],
        ideal_basis: vec![vec![(vec![0, r], 1), (vec![0, 1], 1), (vec![r + 1, 0], minus_one)]],
        genus: (r * (r - 1) / 2) as usize,
        gs_f: Some(f),
    })
}

/// The Klein quartic `X^3 Y + Y^3 Z + Z^3 X = 0` over GF(8), presented at the
/// point `(1:0:0)` by `x_1 = X/Y`, `x_2 = XZ/Y^2`, `x_3 = X^3/(Y^2 Z)` with
/// pole orders 3, 5, 7.
pub fn klein_quartic_gf8() -> Result<CurveSpec> {
    Ok(CurveSpec {
        field: default_field(8)?,
        weights: vec![3, 5, 7],
        ideal_basis: vec![
            // x_2^2 + x_1 x_3 + x_1
            vec![(vec![0, 2, 0], 1), (vec![1, 0, 1], 1), (vec![1, 0, 0], 1)],
            // x_2 x_3 + x_1^4
            vec![(vec![0, 1, 1], 1), (vec![4, 0, 0], 1)],
            // x_3^2 + x_1^3 x_2 + x_3
            vec![(vec![0, 0, 2], 1), (vec![3, 1, 0], 1), (vec![0, 0, 1], 1)],
        ],
        genus: 3,
        gs_f: None,
    })
}

/// The projective line over `field`, presented at infinity by `x_1 = x`.
pub fn projective_line(field: FieldSpec) -> CurveSpec {
    let q = (field.p as u64).pow(field.m) as usize;
    let mut f = vec![0u32; q + 1];
    f[1] = field.p - 1;
    f[q] = 1;
    CurveSpec {
        field,
        weights: vec![1],
        ideal_basis: vec![],
        genus: 0,
        gs_f: Some(f),
    }
}
