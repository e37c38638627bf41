//! Curve files (TOML) and plain-text vector and point files.
//!
//! A curve file holds a [`CurveSpec`] at top level plus an optional `points`
//! array; when `points` is absent every affine rational point is used.
//!
//! ```toml
//! weights = [2, 3]
//! genus = 1
//! ideal_basis = [[[[0, 2], 1], [[0, 1], 1], [[3, 0], 1]]]
//! gs_f = [0, 1, 0, 0, 1]
//!
//! [field]
//! p = 2
//! m = 2
//! modulus = [1, 1, 1]
//! ```
//!
//! Field elements are written as integers: the polynomial-basis coordinates
//! packed in base `p`, constant term least significant.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::{CodeFamily, EvaluationSet};
use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ring::StandardForm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    #[serde(flatten)]
    pub curve: CurveSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<FieldElement>>>,
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Validate the curve and the points and build the code family.
    pub fn family(&self) -> Result<Arc<CodeFamily>> {
        self.family_with_points(None)
    }

    /// As [`CurveFile::family`], with `points` overriding the file's own list.
    pub fn family_with_points(&self, points: Option<Vec<Vec<FieldElement>>>) -> Result<Arc<CodeFamily>> {
        let sf = StandardForm::build(&self.curve)?;
        let set = match points.or_else(|| self.points.clone()) {
            Some(p) => EvaluationSet::new(&sf, p)?,
            None => EvaluationSet::all_rational(&sf),
        };
        if set.is_empty() {
            return Err(Error::InvalidPoints("no evaluation points".into()));
        }
        CodeFamily::new(sf, set)
    }
}

/// Whitespace-separated integers; `#` starts a comment.
pub fn parse_integers(text: &str) -> Result<Vec<u64>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap())
        .flat_map(str::split_whitespace)
        .map(|w| w.parse::<u64>().map_err(|e| Error::Parse(format!("{w:?}: {e}"))))
        .collect()
}

/// A vector of field elements, checked against the field and an expected length.
pub fn parse_vector(text: &str, field: &Field, len: Option<usize>) -> Result<Vec<FieldElement>> {
    let ints = parse_integers(text)?;
    if let Some(n) = len {
        if ints.len() != n {
            return Err(Error::Parse(format!("expected {n} symbols, found {}", ints.len())));
        }
    }
    ints.into_iter()
        .map(|v| {
            u32::try_from(v)
                .ok()
                .filter(|&v| field.contains(v))
                .ok_or_else(|| Error::Parse(format!("symbol {v} outside GF({})", field.order())))
        })
        .collect()
}

/// One point per line, `t` field elements each.
pub fn parse_points(text: &str, field: &Field, t: usize) -> Result<Vec<Vec<FieldElement>>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap();
        if body.trim().is_empty() {
            continue;
        }
        let p = parse_vector(body, field, Some(t)).map_err(|e| Error::Parse(format!("line {}: {e}", k + 1)))?;
        out.push(p);
    }
    Ok(out)
}

pub fn format_vector(v: &[FieldElement]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}
