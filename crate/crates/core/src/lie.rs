//! Lie algebras given by structure constants.

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace};
use crate::multilinear::{MultiVector, Space};
use crate::scalar::{self, Scalar};

/// One nonzero Jacobiator on a basis triple (0-based, i < j < k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiDefect {
    pub triple: (usize, usize, usize),
    #[serde(serialize_with = "crate::serialize_scalars")]
    pub defect: Vec<Scalar>,
}

/// Bracket table c_ij^k with [e_i, e_j] = Σ_k c_ij^k e_k.
///
/// Antisymmetry is enforced on construction. The Jacobi identity is not
/// assumed: it is checked once and remembered in [`LieAlgebra::is_lie`].
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    constants: Vec<Scalar>,
    ad_basis: Vec<Matrix>,
    lie: bool,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.labels == other.labels && self.constants == other.constants
    }
}

impl Eq for LieAlgebra {}

/// `(i, j, [(c, k), …])`: [e_i, e_j] = Σ c e_k.
pub type BracketEntry = (usize, usize, Vec<(Scalar, usize)>);

/// Integer fixture form of [`BracketEntry`], 1-based.
pub type IntBracketEntry<'a> = (usize, usize, &'a [(i64, usize)]);

pub fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

/// Adds or strips a trailing `*`.
pub fn star_label(label: &str) -> String {
    match label.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{label}*"),
    }
}

impl LieAlgebra {
    /// Builds from a flat table indexed `(i * n + j) * n + k`.
    pub fn from_table(labels: Vec<String>, constants: Vec<Scalar>) -> Result<Self> {
        let dim = labels.len();
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: constants.len() });
        }
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    let a = &constants[(i * dim + j) * dim + k];
                    let b = &constants[(j * dim + i) * dim + k];
                    if &-b != a {
                        return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        let ad_basis =
            (0..dim).map(|i| Matrix::from_fn(dim, dim, |k, j| constants[(i * dim + j) * dim + k].clone())).collect();
        let mut algebra = LieAlgebra { dim, labels, constants, ad_basis, lie: false };
        algebra.lie = algebra.jacobi_defect().is_empty();
        Ok(algebra)
    }

    /// Builds from sparse entries `(i, j, [(c, k), …])` meaning
    /// [e_i, e_j] += Σ c e_k (0-based). The opposite order is filled in.
    pub fn from_brackets(dim: usize, entries: &[BracketEntry]) -> Result<Self> {
        let mut constants = vec![Scalar::zero(); dim * dim * dim];
        for (i, j, terms) in entries {
            let (i, j) = (*i, *j);
            for idx in [i, j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx + 1, dim });
                }
            }
            if i == j {
                if terms.iter().any(|(c, _)| !c.is_zero()) {
                    return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1 });
                }
                continue;
            }
            for (c, k) in terms {
                if *k >= dim {
                    return Err(Error::IndexOutOfRange { index: k + 1, dim });
                }
                constants[(i * dim + j) * dim + k] += c;
                constants[(j * dim + i) * dim + k] -= c;
            }
        }
        LieAlgebra::from_table(default_labels(dim), constants)
    }

    /// Same as [`LieAlgebra::from_brackets`] with integer coefficients and
    /// 1-based indices, for fixtures: `(i, j, &[(c, k)])`.
    pub fn from_int_brackets(dim: usize, entries: &[IntBracketEntry]) -> Result<Self> {
        let entries: Vec<BracketEntry> = entries
            .iter()
            .map(|(i, j, t)| (i - 1, j - 1, t.iter().map(|(c, k)| (scalar::int(*c), k - 1)).collect()))
            .collect();
        LieAlgebra::from_brackets(dim, &entries)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::from_table(default_labels(dim), vec![Scalar::zero(); dim * dim * dim])
            .expect("zero table is antisymmetric")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dual_labels(&self) -> Vec<String> {
        self.labels.iter().map(|l| star_label(l)).collect()
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.constants
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// `true` when the Jacobi identity holds.
    pub fn is_lie(&self) -> bool {
        self.lie
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// Same bracket table, ignoring labels.
    pub fn same_brackets(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.constants == other.constants
    }

    /// [e_i, e_j] as dense coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = (i * self.dim + j) * self.dim;
        self.constants[start..start + self.dim].to_vec()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.ad_coords(x).apply(y)
    }

    /// ad(e_i); column j holds [e_i, e_j].
    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad_basis[i]
    }

    pub fn ad_coords(&self, x: &[Scalar]) -> Matrix {
        assert_eq!(x.len(), self.dim, "vector length differs from algebra dimension");
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.ad_basis[i].scale(c));
            }
        }
        out
    }

    /// Matrix of y ↦ [x, y] for a degree-1 element x.
    pub fn ad(&self, x: &MultiVector) -> Result<Matrix> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(self.ad_coords(&x.to_coords()?))
    }

    /// All nonzero Jacobiators over i < j < k.
    pub fn jacobi_defect(&self) -> Vec<JacobiDefect> {
        let n = self.dim;
        let mut out = Vec::new();
        for (i, j, k) in (0..n).tuple_combinations() {
            let mut acc = self.ad_basis[i].apply(&self.bracket_basis(j, k));
            acc = linalg::add(&acc, &self.ad_basis[j].apply(&self.bracket_basis(k, i)));
            acc = linalg::add(&acc, &self.ad_basis[k].apply(&self.bracket_basis(i, j)));
            if !linalg::is_zero(&acc) {
                out.push(JacobiDefect { triple: (i, j, k), defect: acc });
            }
        }
        out
    }

    pub fn derived_ideal(&self) -> Subspace {
        let images: Vec<Vec<Scalar>> =
            (0..self.dim).tuple_combinations().map(|(i, j)| self.bracket_basis(i, j)).collect();
        Subspace::span(self.dim, &images)
    }

    /// Kernel of x ↦ ad(x), solved as an n²×n linear system.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let system = Matrix::from_fn(n * n, n, |row, i| {
            let (r, c) = (row / n, row % n);
            self.ad_basis[i][(r, c)].clone()
        });
        Subspace::span(n, &system.kernel())
    }

    /// κ(e_i) = tr ad(e_i), as dense coordinates on the dual basis.
    pub fn modular_coords(&self) -> Vec<Scalar> {
        self.ad_basis.iter().map(Matrix::trace).collect()
    }

    pub fn modular_form(&self) -> MultiVector {
        MultiVector::vector(Space::Dual, &self.modular_coords())
    }

    pub fn is_unimodular(&self) -> bool {
        linalg::is_zero(&self.modular_coords())
    }

    /// Algebraic Schouten bracket of invariant multivectors, by the graded
    /// Leibniz rule [P, y∧Q'] = [P,y]∧Q' + (−1)^{p−1} y∧[P,Q'] with
    /// [P, y] = −ad_y P and [P, scalar] = 0.
    pub fn schouten(&self, p: &MultiVector, q: &MultiVector) -> Result<MultiVector> {
        for m in [p, q] {
            if m.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: m.dim() });
            }
        }
        if p.space() != q.space() {
            return Err(Error::SpaceMismatch { left: p.space().name(), right: q.space().name() });
        }
        let (pd, qd) = (p.degree(), q.degree());
        if pd + qd == 0 {
            return Err(Error::InvalidDegree("bracket of two scalars has degree -1".into()));
        }
        let mut out = MultiVector::zero(self.dim, pd + qd - 1, p.space())?;
        if pd == 0 || qd == 0 {
            return Ok(out);
        }
        let ad_p: Vec<MultiVector> =
            (0..self.dim).map(|y| p.extend_derivation(&self.ad_basis[y])).collect::<Result<_>>()?;
        for (ys, c) in q.terms() {
            let term = self.schouten_blade(p, &ad_p, ys)?;
            out = out.add_scaled(c, &term)?;
        }
        Ok(out)
    }

    fn schouten_blade(&self, p: &MultiVector, ad_p: &[MultiVector], ys: &[usize]) -> Result<MultiVector> {
        let degree = p.degree() + ys.len() - 1;
        let Some((&y, rest)) = ys.split_first() else {
            unreachable!("blade of degree zero handled by caller");
        };
        let rest_blade = MultiVector::blade(self.dim, p.space(), rest)?;
        let mut out = ad_p[y].negated().wedge(&rest_blade)?;
        if !rest.is_empty() {
            let inner = self.schouten_blade(p, ad_p, rest)?;
            let ey = MultiVector::blade(self.dim, p.space(), &[y])?;
            let sign = scalar::sign_of_parity((p.degree() - 1) % 2 == 1);
            out = out.add_scaled(&sign, &ey.wedge(&inner)?)?;
        }
        debug_assert_eq!(out.degree(), degree);
        Ok(out)
    }

    /// Chevalley–Eilenberg differential with trivial coefficients:
    /// (dω)(x₀,…,x_k) = Σ_{i<j} (−1)^{i+j} ω([x_i,x_j], x₀,…,x̂_i,…,x̂_j,…).
    pub fn ce_differential(&self, omega: &MultiVector) -> Result<MultiVector> {
        if omega.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: omega.dim() });
        }
        let k = omega.degree();
        let mut out = MultiVector::zero(self.dim, k + 1, omega.space())?;
        if omega.is_zero() {
            return Ok(out);
        }
        let mut terms = Vec::new();
        for idx in (0..self.dim).combinations(k + 1) {
            let mut value = Scalar::zero();
            for a in 0..idx.len() {
                for b in a + 1..idx.len() {
                    let rest: Vec<usize> =
                        idx.iter().enumerate().filter(|&(t, _)| t != a && t != b).map(|(_, &v)| v).collect();
                    let br = self.bracket_basis(idx[a], idx[b]);
                    let mut inner = Scalar::zero();
                    for (m, c) in br.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut slots = Vec::with_capacity(k);
                        slots.push(m);
                        slots.extend_from_slice(&rest);
                        let w = omega.coefficient(&slots);
                        if !w.is_zero() {
                            inner += c * w;
                        }
                    }
                    if (a + b) % 2 == 1 {
                        value -= inner;
                    } else {
                        value += inner;
                    }
                }
            }
            if !value.is_zero() {
                terms.push((idx, value));
            }
        }
        out = out.add_scaled(&scalar::one(), &MultiVector::from_terms(self.dim, k + 1, omega.space(), terms)?)?;
        Ok(out)
    }

    /// The algebra written in the basis b_a = Σ_j P_ja e_j (columns of P).
    pub fn in_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.rows() });
        }
        let inv = p.inverse()?;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|a| p.column(a)).collect();
        let mut constants = vec![Scalar::zero(); n * n * n];
        for a in 0..n {
            for b in a + 1..n {
                let br = inv.apply(&self.bracket(&cols[a], &cols[b]));
                for (k, c) in br.into_iter().enumerate() {
                    constants[(b * n + a) * n + k] = -c.clone();
                    constants[(a * n + b) * n + k] = c;
                }
            }
        }
        LieAlgebra::from_table(default_labels(n), constants)
    }

    /// Direct sum, with the second summand's basis placed after the first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut constants = vec![Scalar::zero(); n * n * n];
        for (alg, off) in [(self, 0), (other, self.dim)] {
            let m = alg.dim;
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        constants[((i + off) * n + j + off) * n + k + off] = alg.constants[(i * m + j) * m + k].clone();
                    }
                }
            }
        }
        let labels = default_labels(n);
        LieAlgebra::from_table(labels, constants).expect("direct sum of antisymmetric tables")
    }
}
