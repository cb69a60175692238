//! Sparse exact exterior algebra over a based space and its dual.
//!
//! A [`MultiVector`] is a homogeneous element of Λᵏ V or Λᵏ V*. Keys are
//! strictly increasing 0-based index tuples; absent keys are zero.
//!
//! Conventions:
//! - pairing is the determinant pairing, ⟨e*_I, e_J⟩ = δ_IJ on sorted tuples;
//! - contraction fills leading slots, so i_{x∧y} ω = ω(x, y, ·, …).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// Which side of the pairing a multivector lives on.
///
/// Tags are relative: `Primal` means built from the basis of whatever
/// algebra an operation is handed, `Dual` means built from its dual basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Primal,
    Dual,
}

impl Space {
    pub fn dual(self) -> Space {
        match self {
            Space::Primal => Space::Dual,
            Space::Dual => Space::Primal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::Primal => "primal",
            Space::Dual => "dual",
        }
    }
}

/// Sorts `idx` in place and reports the parity of the permutation, or
/// `None` if an index repeats.
pub fn sort_with_parity(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(odd)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiVector {
    dim: usize,
    degree: usize,
    space: Space,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl MultiVector {
    pub fn zero(dim: usize, degree: usize, space: Space) -> Result<Self> {
        if degree > dim {
            return Err(Error::DegreeOverflow { degree, dim });
        }
        Ok(MultiVector { dim, degree, space, terms: BTreeMap::new() })
    }

    pub fn scalar(dim: usize, c: Scalar, space: Space) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiVector { dim, degree: 0, space, terms }
    }

    /// The blade e_{i1}∧…∧e_{ik} (0-based, any order; sign is tracked).
    pub fn blade(dim: usize, space: Space, indices: &[usize]) -> Result<Self> {
        Self::from_terms(dim, indices.len(), space, [(indices.to_vec(), Scalar::one())])
    }

    pub fn basis_vector(dim: usize, i: usize, space: Space) -> Result<Self> {
        Self::blade(dim, space, &[i])
    }

    /// Degree-1 element with the given dense coordinates.
    pub fn vector(space: Space, coords: &[Scalar]) -> Self {
        let terms =
            coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (vec![i], c.clone())).collect();
        MultiVector { dim: coords.len(), degree: 1, space, terms }
    }

    /// Sums the given terms after sorting each index tuple with its sign.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        space: Space,
        terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self> {
        let mut out = MultiVector::zero(dim, degree, space)?;
        for (mut idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: idx.len() });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::IndexOutOfRange { index: bad + 1, dim });
            }
            if let Some(odd) = sort_with_parity(&mut idx) {
                let c = if odd { -c } else { c };
                out.accumulate(idx, &c);
            }
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    /// Coefficient on the blade `indices`, with the sign of sorting.
    pub fn coefficient(&self, indices: &[usize]) -> Scalar {
        let mut idx = indices.to_vec();
        match sort_with_parity(&mut idx) {
            None => Scalar::zero(),
            Some(odd) => {
                let c = self.terms.get(&idx).cloned().unwrap_or_else(Scalar::zero);
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Dense coordinates of a degree-1 element.
    pub fn to_coords(&self) -> Result<Vec<Scalar>> {
        if self.degree != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: self.degree });
        }
        let mut v = vec![Scalar::zero(); self.dim];
        for (k, c) in &self.terms {
            v[k[0]] = c.clone();
        }
        Ok(v)
    }

    /// Same coordinates, reinterpreted on the other side or the same side.
    pub fn as_space(&self, space: Space) -> MultiVector {
        MultiVector { space, ..self.clone() }
    }

    fn accumulate(&mut self, key: Vec<usize>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &MultiVector) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.space != other.space {
            return Err(Error::SpaceMismatch { left: self.space.name(), right: other.space.name() });
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &MultiVector) -> Result<MultiVector> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        if !c.is_zero() {
            for (k, x) in &other.terms {
                out.accumulate(k.clone(), &(c * x));
            }
        }
        Ok(out)
    }

    pub fn plus(&self, other: &MultiVector) -> Result<MultiVector> {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn minus(&self, other: &MultiVector) -> Result<MultiVector> {
        self.add_scaled(&-Scalar::one(), other)
    }

    pub fn scaled(&self, c: &Scalar) -> MultiVector {
        if c.is_zero() {
            return MultiVector { terms: BTreeMap::new(), ..self.clone() };
        }
        let terms = self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect();
        MultiVector { terms, ..self.clone() }
    }

    pub fn negated(&self) -> MultiVector {
        self.scaled(&-Scalar::one())
    }

    /// Exterior product. Fails on mixed dims or tags, or if the degree
    /// would exceed the ambient dimension.
    pub fn wedge(&self, other: &MultiVector) -> Result<MultiVector> {
        self.check_compatible(other)?;
        let degree = self.degree + other.degree;
        let mut out = MultiVector::zero(self.dim, degree, self.space)?;
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let mut key: Vec<usize> = a.iter().chain(b).copied().collect();
                let odd = sort_with_parity(&mut key).expect("disjoint index sets");
                let c = x * y;
                out.accumulate(key, &if odd { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Applies the endomorphism `a` (column j is the image of e_j) to every
    /// factor as a derivation: A(v₁∧…∧v_k) = Σ v₁∧…∧Av_i∧…∧v_k.
    pub fn extend_derivation(&self, a: &Matrix) -> Result<MultiVector> {
        if a.rows() != self.dim || a.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.rows() });
        }
        let mut out = MultiVector { terms: BTreeMap::new(), ..self.clone() };
        for (key, c) in &self.terms {
            for slot in 0..key.len() {
                let col = key[slot];
                for r in 0..self.dim {
                    let entry = &a[(r, col)];
                    if entry.is_zero() || (r != col && key.contains(&r)) {
                        continue;
                    }
                    let mut idx = key.clone();
                    idx[slot] = r;
                    let odd = sort_with_parity(&mut idx).expect("distinct after substitution");
                    let v = c * entry;
                    out.accumulate(idx, &if odd { -v } else { v });
                }
            }
        }
        Ok(out)
    }

    /// Evaluates a form on `vectors` (dense coordinates), i.e. the pairing
    /// with their wedge.
    pub fn evaluate(&self, vectors: &[Vec<Scalar>]) -> Result<Scalar> {
        if vectors.len() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: vectors.len() });
        }
        let mut acc = MultiVector::scalar(self.dim, Scalar::one(), self.space.dual());
        for v in vectors {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
            acc = acc.wedge(&MultiVector::vector(self.space.dual(), v))?;
        }
        pairing(self, &acc)
    }

    /// Human-readable form with 1-based labels `e1`, `e2*`, ….
    pub fn render(&self) -> String {
        let star = if self.space == Space::Dual { "*" } else { "" };
        let labels: Vec<String> = (1..=self.dim).map(|i| format!("e{i}{star}")).collect();
        self.render_with(&labels)
    }

    pub fn render_with(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (key, c)) in self.terms.iter().enumerate() {
            let negative = c < &Scalar::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let blade: Vec<&str> = key.iter().map(|&i| labels[i].as_str()).collect();
            if blade.is_empty() {
                out.push_str(&scalar::format(&magnitude));
            } else {
                if !magnitude.is_one() {
                    out.push_str(&scalar::format(&magnitude));
                    out.push(' ');
                }
                out.push_str(&blade.join("∧"));
            }
        }
        out
    }
}

/// Determinant pairing of a form and a multivector on opposite sides.
pub fn pairing(omega: &MultiVector, a: &MultiVector) -> Result<Scalar> {
    if omega.dim != a.dim {
        return Err(Error::DimensionMismatch { expected: omega.dim, found: a.dim });
    }
    if omega.degree != a.degree {
        return Err(Error::DegreeMismatch { expected: omega.degree, found: a.degree });
    }
    if omega.space == a.space {
        return Err(Error::SpaceMismatch { left: omega.space.name(), right: a.space.name() });
    }
    let (small, large) = if omega.len() <= a.len() { (omega, a) } else { (a, omega) };
    let mut acc = Scalar::zero();
    for (k, x) in &small.terms {
        if let Some(y) = large.terms.get(k) {
            acc += x * y;
        }
    }
    Ok(acc)
}

/// Interior product i_x ω, filling the leading slots of ω with x.
///
/// `x` and `omega` must live on opposite sides; either order of tags is
/// accepted, so a form can also be contracted into a multivector.
pub fn interior(x: &MultiVector, omega: &MultiVector) -> Result<MultiVector> {
    if x.dim != omega.dim {
        return Err(Error::DimensionMismatch { expected: omega.dim, found: x.dim });
    }
    if x.space == omega.space {
        return Err(Error::SpaceMismatch { left: x.space.name(), right: omega.space.name() });
    }
    if x.degree > omega.degree {
        return Err(Error::InvalidDegree(format!("cannot contract degree {} into degree {}", x.degree, omega.degree)));
    }
    let mut out = MultiVector::zero(omega.dim, omega.degree - x.degree, omega.space)?;
    for (j, a) in &x.terms {
        for (i, w) in &omega.terms {
            if !j.iter().all(|t| i.contains(t)) {
                continue;
            }
            let rest: Vec<usize> = i.iter().copied().filter(|t| !j.contains(t)).collect();
            let inversions = j.iter().map(|&p| rest.iter().filter(|&&q| q < p).count()).sum::<usize>();
            let c = a * w;
            out.accumulate(rest, &if inversions % 2 == 1 { -c } else { c });
        }
    }
    Ok(out)
}

impl fmt::Debug for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiVector[deg {} in dim {}, {}]({})", self.degree, self.dim, self.space.name(), self.render())
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize)]
struct TermOut {
    indices: Vec<usize>,
    coefficient: String,
}

impl Serialize for MultiVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermOut> = self
            .terms
            .iter()
            .map(|(k, c)| TermOut { indices: k.iter().map(|i| i + 1).collect(), coefficient: scalar::format(c) })
            .collect();
        let mut st = s.serialize_struct("MultiVector", 5)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("space", &self.space)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("text", &self.render())?;
        st.end()
    }
}
