//! Lie bialgebras: cocycles, dual brackets, r-matrices and Yang–Baxter.

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{JacobiDefect, LieAlgebra};
use crate::multilinear::{MultiVector, Space};
use crate::scalar::{self, Scalar};

/// A linear map V → Λ²V given by the images of the basis vectors.
/// `(i, [(c, j, k), …])`: the image of e_i is Σ c e_j∧e_k.
pub type ImageEntry = (usize, Vec<(Scalar, usize, usize)>);

/// Integer fixture form of [`ImageEntry`], 1-based.
pub type IntImageEntry<'a> = (usize, &'a [(i64, usize, usize)]);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    dim: usize,
    space: Space,
    images: Vec<MultiVector>,
}

impl Cocycle {
    pub fn new(images: Vec<MultiVector>) -> Result<Self> {
        let dim = images.len();
        let space = images.first().map_or(Space::Primal, MultiVector::space);
        for img in &images {
            if img.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: img.dim() });
            }
            if img.degree() != 2 {
                return Err(Error::DegreeMismatch { expected: 2, found: img.degree() });
            }
            if img.space() != space {
                return Err(Error::SpaceMismatch { left: space.name(), right: img.space().name() });
            }
        }
        Ok(Cocycle { dim, space, images })
    }

    pub fn zero(dim: usize, space: Space) -> Self {
        let images =
            (0..dim).map(|_| MultiVector::zero(dim, 2, space).expect("a cocycle needs dimension at least 2")).collect();
        Cocycle { dim, space, images }
    }

    /// Fixture helper with 1-based indices: `(i, &[(c, j, k)])` adds
    /// c e_j∧e_k to ξ(e_i).
    pub fn from_int(dim: usize, entries: &[IntImageEntry]) -> Result<Self> {
        let entries: Vec<ImageEntry> = entries
            .iter()
            .map(|(i, t)| (i - 1, t.iter().map(|(c, j, k)| (scalar::int(*c), j - 1, k - 1)).collect()))
            .collect();
        Cocycle::from_entries(dim, Space::Primal, &entries)
    }

    /// Sparse 0-based entries `(i, [(c, j, k), …])`.
    pub fn from_entries(dim: usize, space: Space, entries: &[ImageEntry]) -> Result<Self> {
        let mut images = vec![MultiVector::zero(dim, 2, space)?; dim];
        for (i, terms) in entries {
            if *i >= dim {
                return Err(Error::IndexOutOfRange { index: i + 1, dim });
            }
            let add = MultiVector::from_terms(dim, 2, space, terms.iter().map(|(c, j, k)| (vec![*j, *k], c.clone())))?;
            images[*i] = images[*i].plus(&add)?;
        }
        Cocycle::new(images)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn image(&self, i: usize) -> &MultiVector {
        &self.images[i]
    }

    pub fn images(&self) -> &[MultiVector] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(MultiVector::is_zero)
    }

    /// ξ(x) for dense coordinates x.
    pub fn apply(&self, x: &[Scalar]) -> MultiVector {
        assert_eq!(x.len(), self.dim, "vector length differs from cocycle dimension");
        let mut out = MultiVector::zero(self.dim, 2, self.space).expect("degree 2 fits");
        for (c, img) in x.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add_scaled(c, img).expect("same space");
            }
        }
        out
    }

    pub fn as_space(&self, space: Space) -> Cocycle {
        Cocycle { space, images: self.images.iter().map(|m| m.as_space(space)).collect(), ..*self }
    }
}

/// Nonzero cocycle defect on a basis pair (0-based, i < j).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleDefect {
    pub pair: (usize, usize),
    pub defect: MultiVector,
}

/// ξ([e_i,e_j]) − ad_{e_i} ξ(e_j) + ad_{e_j} ξ(e_i) for all i < j, keeping
/// the nonzero ones. Tags are not inspected: only the coordinates matter.
pub fn cocycle_defect(l: &LieAlgebra, xi: &Cocycle) -> Result<Vec<CocycleDefect>> {
    if l.dim() != xi.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: xi.dim() });
    }
    let mut out = Vec::new();
    for (i, j) in (0..l.dim()).tuple_combinations() {
        let lhs = xi.apply(&l.bracket_basis(i, j));
        let t1 = xi.image(j).extend_derivation(l.ad_basis(i))?;
        let t2 = xi.image(i).extend_derivation(l.ad_basis(j))?;
        let defect = lhs.minus(&t1)?.plus(&t2)?;
        if !defect.is_zero() {
            out.push(CocycleDefect { pair: (i, j), defect });
        }
    }
    Ok(out)
}

/// The transposed bracket [e_i*, e_j*] = Σ_k ⟨e_i*∧e_j*, ξ(e_k)⟩ e_k*.
///
/// The result may violate Jacobi; run [`LieAlgebra::jacobi_defect`].
pub fn dual_bracket(xi: &Cocycle) -> LieAlgebra {
    let n = xi.dim();
    let mut constants = vec![Scalar::zero(); n * n * n];
    for (k, img) in xi.images().iter().enumerate() {
        for (key, c) in img.terms() {
            let (i, j) = (key[0], key[1]);
            constants[(i * n + j) * n + k] = c.clone();
            constants[(j * n + i) * n + k] = -c.clone();
        }
    }
    let labels = (1..=n).map(|i| format!("e{i}*")).collect();
    LieAlgebra::from_table(labels, constants).expect("table built antisymmetric")
}

/// ρ(e_k*) = Σ_{i<j} c_ij^k e_i*∧e_j*, so ρ(γ)(x, y) = γ([x, y]).
pub fn dual_cocycle(l: &LieAlgebra) -> Cocycle {
    let n = l.dim();
    let images = (0..n)
        .map(|k| {
            let terms = (0..n)
                .tuple_combinations()
                .map(|(i, j)| (vec![i, j], l.structure_constant(i, j, k).clone()))
                .filter(|(_, c)| !c.is_zero());
            MultiVector::from_terms(n, 2, Space::Dual, terms).expect("valid indices")
        })
        .collect();
    Cocycle { dim: n, space: Space::Dual, images }
}

/// ξ(x) = ad_x r.
pub fn coboundary_cocycle(l: &LieAlgebra, r: &MultiVector) -> Result<Cocycle> {
    check_r(l, r)?;
    let images = (0..l.dim()).map(|i| r.extend_derivation(l.ad_basis(i))).collect::<Result<Vec<_>>>()?;
    Cocycle::new(images)
}

fn check_r(l: &LieAlgebra, r: &MultiVector) -> Result<()> {
    if r.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: r.dim() });
    }
    if r.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: r.degree() });
    }
    Ok(())
}

/// The classical Yang–Baxter value [r, r]. Fails with
/// [`Error::DegreeOverflow`] below dimension 3, where Λ³ = 0.
pub fn cybe(l: &LieAlgebra, r: &MultiVector) -> Result<MultiVector> {
    check_r(l, r)?;
    l.schouten(r, r)
}

/// ad_x [r, r] = 0 for every basis vector x.
pub fn gybe_holds(l: &LieAlgebra, r: &MultiVector) -> Result<bool> {
    check_r(l, r)?;
    if l.dim() < 3 {
        return Ok(true);
    }
    let value = cybe(l, r)?;
    if value.is_zero() {
        return Ok(true);
    }
    for i in 0..l.dim() {
        if !value.extend_derivation(l.ad_basis(i))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which bialgebra axiom a structure violates, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BialgebraDiagnostics {
    pub jacobi: Vec<JacobiDefect>,
    pub cocycle: Vec<CocycleDefect>,
    pub dual_jacobi: Vec<JacobiDefect>,
    pub duality_consistent: bool,
}

impl BialgebraDiagnostics {
    pub fn is_bialgebra(&self) -> bool {
        self.jacobi.is_empty() && self.cocycle.is_empty() && self.dual_jacobi.is_empty() && self.duality_consistent
    }
}

/// A Lie algebra, a map ξ: 𝒢 → Λ²𝒢, the transposed bracket on 𝒢* and the
/// dual cocycle ρ: 𝒢* → Λ²𝒢*.
///
/// [`LieBialgebra::assemble`] does not validate the axioms, so that
/// ill-formed inputs can still be analyzed and reported on;
/// [`build_bialgebra`] does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBialgebra {
    primal: LieAlgebra,
    xi: Cocycle,
    dual: LieAlgebra,
    rho: Cocycle,
}

impl LieBialgebra {
    pub fn assemble(primal: LieAlgebra, xi: Cocycle) -> Result<Self> {
        if primal.dim() != xi.dim() {
            return Err(Error::DimensionMismatch { expected: primal.dim(), found: xi.dim() });
        }
        let xi = xi.as_space(Space::Primal);
        let dual = dual_bracket(&xi).with_labels(primal.dual_labels())?;
        let rho = dual_cocycle(&primal);
        Ok(LieBialgebra { primal, xi, dual, rho })
    }

    pub fn dim(&self) -> usize {
        self.primal.dim()
    }

    pub fn primal(&self) -> &LieAlgebra {
        &self.primal
    }

    pub fn xi(&self) -> &Cocycle {
        &self.xi
    }

    pub fn dual(&self) -> &LieAlgebra {
        &self.dual
    }

    /// ρ, with images in Λ²𝒢* (tagged [`Space::Dual`]).
    pub fn rho(&self) -> &Cocycle {
        &self.rho
    }

    pub fn diagnose(&self) -> BialgebraDiagnostics {
        BialgebraDiagnostics {
            jacobi: self.primal.jacobi_defect(),
            cocycle: cocycle_defect(&self.primal, &self.xi).expect("dimensions checked on assembly"),
            dual_jacobi: self.dual.jacobi_defect(),
            duality_consistent: dual_bracket(&self.rho).same_brackets(&self.primal),
        }
    }

    /// The same structure seen from 𝒢*: primal 𝒢*, cocycle ρ.
    pub fn flipped(&self) -> LieBialgebra {
        LieBialgebra::assemble(self.dual.clone(), self.rho.as_space(Space::Primal)).expect("dimensions agree")
    }
}

/// Assembles and validates; fails with the first violated axiom.
pub fn build_bialgebra(primal: LieAlgebra, xi: Cocycle) -> Result<LieBialgebra> {
    let b = LieBialgebra::assemble(primal, xi)?;
    let diag = b.diagnose();
    let labels = b.primal.labels().to_vec();
    let star = b.dual.labels().to_vec();
    if let Some(d) = diag.jacobi.first() {
        return Err(Error::NotABialgebra {
            axiom: "Jacobi identity of the Lie algebra".into(),
            witness: format!("({},{},{})", labels[d.triple.0], labels[d.triple.1], labels[d.triple.2]),
        });
    }
    if let Some(d) = diag.cocycle.first() {
        return Err(Error::NotABialgebra {
            axiom: "cocycle identity".into(),
            witness: format!("({},{})", labels[d.pair.0], labels[d.pair.1]),
        });
    }
    if let Some(d) = diag.dual_jacobi.first() {
        return Err(Error::NotABialgebra {
            axiom: "Jacobi identity of the dual bracket".into(),
            witness: format!("({},{},{})", star[d.triple.0], star[d.triple.1], star[d.triple.2]),
        });
    }
    if !diag.duality_consistent {
        return Err(Error::NotABialgebra { axiom: "duality".into(), witness: "dual cocycle".into() });
    }
    Ok(b)
}
