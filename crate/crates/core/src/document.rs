//! JSON input documents.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["e1", "e2", "e3"],
//!   "brackets": [[1, 2, [["1", 3]]]],
//!   "cocycle": [[3, [["1", 1, 2]]]],
//!   "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
//! }
//! ```
//!
//! Indices are 1-based. `[i, j, [[c, k], …]]` means [e_i, e_j] = Σ c e_k
//! with i < j; `[i, [[c, j, k], …]]` means ξ(e_i) = Σ c e_j∧e_k with j < k.
//! Rationals are strings, never JSON numbers.

use serde::{Deserialize, Serialize};

use crate::bialgebra::{Cocycle, LieBialgebra};
use crate::error::{Error, Result};
use crate::lie::{default_labels, LieAlgebra};
use crate::linalg::Matrix;
use crate::metric::InnerProduct;
use crate::multilinear::Space;
use crate::scalar::{self, Scalar};

/// `[i, j, [[c, k], …]]` as read.
pub type RawBracket = (usize, usize, Vec<(String, usize)>);
/// `[i, [[c, j, k], …]]` as read.
pub type RawImage = (usize, Vec<(String, usize, usize)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<RawBracket>,
    #[serde(default)]
    pub cocycle: Vec<RawImage>,
    pub metric: Vec<Vec<String>>,
}

fn invalid(msg: String) -> Error {
    Error::InvalidDocument(msg)
}

fn rational(field: &str, text: &str) -> Result<Scalar> {
    scalar::parse(text).map_err(|_| invalid(format!("{field}: {text:?} is not a rational")))
}

fn index(field: &str, i: usize, dim: usize) -> Result<usize> {
    if i == 0 || i > dim {
        return Err(invalid(format!("{field}: index {i} out of range 1..={dim}")));
    }
    Ok(i - 1)
}

impl InputDocument {
    /// Parses JSON; syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<InputDocument> {
        serde_json::from_str(text).map_err(|e| invalid(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Validates and builds the structures. Validation errors name the
    /// offending field; the metric checks report 1-based positions.
    pub fn build(&self) -> Result<(LieBialgebra, InnerProduct)> {
        let n = self.dim;
        if n < 2 {
            return Err(invalid(format!("dim: need at least 2, got {n}")));
        }
        let labels = match &self.basis {
            None => default_labels(n),
            Some(b) if b.len() != n => {
                return Err(invalid(format!("basis: {} labels for dimension {n}", b.len())));
            }
            Some(b) => {
                for (i, l) in b.iter().enumerate() {
                    if l.is_empty() || b[..i].contains(l) {
                        return Err(invalid(format!("basis[{i}]: label {l:?} is empty or repeated")));
                    }
                }
                b.clone()
            }
        };

        let mut seen = std::collections::BTreeSet::new();
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (e, (i, j, terms)) in self.brackets.iter().enumerate() {
            let field = format!("brackets[{e}]");
            let (i0, j0) = (index(&field, *i, n)?, index(&field, *j, n)?);
            if i0 >= j0 {
                return Err(invalid(format!("{field}: expected i < j, got ({i},{j})")));
            }
            if !seen.insert((i0, j0)) {
                return Err(invalid(format!("{field}: bracket ({i},{j}) given twice")));
            }
            let mut t = Vec::with_capacity(terms.len());
            for (c, k) in terms {
                t.push((rational(&field, c)?, index(&field, *k, n)?));
            }
            brackets.push((i0, j0, t));
        }

        let mut seen = std::collections::BTreeSet::new();
        let mut cocycle = Vec::with_capacity(self.cocycle.len());
        for (e, (i, terms)) in self.cocycle.iter().enumerate() {
            let field = format!("cocycle[{e}]");
            let i0 = index(&field, *i, n)?;
            if !seen.insert(i0) {
                return Err(invalid(format!("{field}: image of e{i} given twice")));
            }
            let mut t = Vec::with_capacity(terms.len());
            for (c, j, k) in terms {
                let (j0, k0) = (index(&field, *j, n)?, index(&field, *k, n)?);
                if j0 >= k0 {
                    return Err(invalid(format!("{field}: expected j < k, got ({j},{k})")));
                }
                t.push((rational(&field, c)?, j0, k0));
            }
            cocycle.push((i0, t));
        }

        if self.metric.len() != n || self.metric.iter().any(|r| r.len() != n) {
            return Err(invalid(format!("metric: expected a {n}×{n} matrix")));
        }
        let mut rows = Vec::with_capacity(n);
        for (a, r) in self.metric.iter().enumerate() {
            let mut row = Vec::with_capacity(n);
            for (b, c) in r.iter().enumerate() {
                row.push(rational(&format!("metric[{a}][{b}]"), c)?);
            }
            rows.push(row);
        }
        let metric = InnerProduct::new(Matrix::from_rows(rows)?)?;

        let g = LieAlgebra::from_brackets(n, &brackets)?.with_labels(labels)?;
        let xi = Cocycle::from_entries(n, Space::Primal, &cocycle)?;
        Ok((LieBialgebra::assemble(g, xi)?, metric))
    }

    /// Canonical document: sorted keys, merged terms, zero entries dropped.
    pub fn from_structures(b: &LieBialgebra, m: &InnerProduct) -> InputDocument {
        let g = b.primal();
        let n = g.dim();
        let labels = g.labels().to_vec();
        let basis = if labels == default_labels(n) { None } else { Some(labels) };
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<(String, usize)> = g
                    .bracket_basis(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != scalar::zero())
                    .map(|(k, c)| (scalar::format(c), k + 1))
                    .collect();
                if !terms.is_empty() {
                    brackets.push((i + 1, j + 1, terms));
                }
            }
        }
        let cocycle = b
            .xi()
            .images()
            .iter()
            .enumerate()
            .filter(|(_, img)| !img.is_zero())
            .map(|(i, img)| {
                let terms = img.terms().map(|(key, c)| (scalar::format(c), key[0] + 1, key[1] + 1)).collect();
                (i + 1, terms)
            })
            .collect();
        let metric = m.gram().to_rows().iter().map(|r| r.iter().map(scalar::format).collect()).collect();
        InputDocument { dim: n, basis, brackets, cocycle, metric }
    }
}

/// Parse, validate and build in one step.
pub fn load(text: &str) -> Result<(LieBialgebra, InnerProduct)> {
    InputDocument::parse(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    const FAMILY1: &str = r#"{
        "dim": 3,
        "brackets": [],
        "cocycle": [[2, [["-1", 1, 3]]], [3, [["1", 1, 2]]]],
        "metric": [["1","0","0"],["0","1","0"],["0","0","1"]]
    }"#;

    #[test]
    fn parses_and_builds() {
        let (b, m) = load(FAMILY1).unwrap();
        assert!(b.primal().is_abelian());
        assert_eq!(m, InnerProduct::euclidean(3));
        assert_eq!(b.xi().image(1).coefficient(&[0, 2]), scalar::int(-1));
    }

    #[test]
    fn asymmetric_metric() {
        let doc = FAMILY1.replace(r#"[["1","0","0"]"#, r#"[["1","1","0"]"#);
        let err = load(&doc).unwrap_err();
        assert_eq!(err.to_string(), "metric not symmetric at (1,2)");
    }

    #[test]
    fn validation_messages() {
        let cases = [
            (FAMILY1.replace(r#""brackets": []"#, r#""brackets": [[2, 1, [["1", 3]]]]"#), "expected i < j"),
            (FAMILY1.replace(r#""brackets": []"#, r#""brackets": [[1, 4, [["1", 3]]]]"#), "out of range"),
            (FAMILY1.replace(r#"["-1", 1, 3]"#, r#"["-1", 3, 1]"#), "expected j < k"),
            (FAMILY1.replace(r#""-1""#, r#""x""#), "is not a rational"),
            (FAMILY1.replace(r#""-1""#, "-1"), "invalid type"),
            (FAMILY1.replace(r#""dim": 3"#, r#""dim": 3, "extra": 1"#), "unknown field"),
            (FAMILY1.replace(r#"["0","0","1"]"#, r#"["0","0","-1"]"#), "not positive definite"),
            (FAMILY1.replace("]]\n", "]\n"), "line"),
        ];
        for (doc, needle) in cases {
            let err = load(&doc).unwrap_err().to_string();
            assert!(err.contains(needle), "{needle:?} not in {err:?}");
        }
    }

    #[test]
    fn round_trip_catalog() {
        for inst in crate::catalog::instantiate_all().unwrap() {
            let doc = InputDocument::from_structures(&inst.bialgebra, &inst.metric);
            let text = doc.to_json();
            let reparsed = InputDocument::parse(&text).unwrap();
            assert_eq!(reparsed, doc, "{}", inst.label());
            let (b, m) = reparsed.build().unwrap();
            assert_eq!(b, inst.bialgebra, "{}", inst.label());
            assert_eq!(m, inst.metric);
            assert_eq!(InputDocument::from_structures(&b, &m).to_json(), text);
        }
    }
}
