//! Inner products on Lie algebras: the subalgebra S, the Milnor predicate,
//! the Levi-Civita product, curvature and metacurvature.

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use crate::bialgebra::Cocycle;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{self, Matrix, Subspace};
use crate::multilinear::MultiVector;
use crate::scalar::{self, Scalar};

/// Symmetric positive definite Gram matrix, with its inverse cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    gram: Matrix,
    inverse: Matrix,
}

impl InnerProduct {
    /// Validates symmetry and positivity (all leading minors > 0).
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if let Some((i, j)) = gram.first_asymmetry() {
            return Err(Error::MetricNotSymmetric { i: i + 1, j: j + 1 });
        }
        for (k, minor) in gram.leading_minors().iter().enumerate() {
            if minor <= &Scalar::zero() {
                return Err(Error::MetricNotPositive { order: k + 1, value: scalar::format(minor) });
            }
        }
        let inverse = gram.inverse()?;
        Ok(InnerProduct { gram, inverse })
    }

    pub fn euclidean(n: usize) -> Self {
        InnerProduct { gram: Matrix::identity(n), inverse: Matrix::identity(n) }
    }

    pub fn diagonal(entries: &[Scalar]) -> Result<Self> {
        InnerProduct::new(Matrix::diagonal(entries))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn inverse_gram(&self) -> &Matrix {
        &self.inverse
    }

    /// The induced product on the dual space, ⟨α, β⟩* = ⟨♯α, ♯β⟩.
    pub fn dual(&self) -> InnerProduct {
        InnerProduct { gram: self.inverse.clone(), inverse: self.gram.clone() }
    }

    pub fn scaled(&self, c: &Scalar) -> Result<InnerProduct> {
        InnerProduct::new(self.gram.scale(c))
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        linalg::dot(x, &self.gram.apply(y))
    }

    /// ♯: covector coordinates to vector coordinates.
    pub fn sharp(&self, alpha: &[Scalar]) -> Vec<Scalar> {
        self.inverse.apply(alpha)
    }

    /// ♭: vector coordinates to covector coordinates.
    pub fn flat(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.gram.apply(x)
    }
}

fn check_dims(l: &LieAlgebra, m: &InnerProduct) -> Result<()> {
    if l.dim() != m.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: m.dim() });
    }
    Ok(())
}

/// The metric adjoint G⁻¹ adᵀ G.
pub fn ad_transpose(l: &LieAlgebra, m: &InnerProduct, x: &[Scalar]) -> Matrix {
    m.inverse.mul(&l.ad_coords(x).transpose()).mul(&m.gram)
}

fn ad_transpose_basis(l: &LieAlgebra, m: &InnerProduct, i: usize) -> Matrix {
    m.inverse.mul(&l.ad_basis(i).transpose()).mul(&m.gram)
}

/// S = {x : ad_x + ad_xᵗ = 0}, the elements acting skew-symmetrically.
pub fn s_subalgebra(l: &LieAlgebra, m: &InnerProduct) -> Subspace {
    let n = l.dim();
    let blocks: Vec<Matrix> = (0..n).map(|i| l.ad_basis(i).add(&ad_transpose_basis(l, m, i))).collect();
    let system = Matrix::from_fn(n * n, n, |row, i| blocks[i][(row / n, row % n)].clone());
    Subspace::span(n, &system.kernel())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorDecomposition {
    pub s: Subspace,
    pub derived: Subspace,
    pub s_abelian: bool,
    pub derived_abelian: bool,
    pub orthogonal_complement_match: bool,
    pub is_milnor: bool,
}

fn is_abelian_subspace(l: &LieAlgebra, v: &Subspace) -> bool {
    v.basis().iter().tuple_combinations().all(|(x, y)| linalg::is_zero(&l.bracket(x, y)))
}

/// S abelian, derived ideal abelian and S⊥ equal to the derived ideal.
pub fn milnor_check(l: &LieAlgebra, m: &InnerProduct) -> MilnorDecomposition {
    let s = s_subalgebra(l, m);
    let derived = l.derived_ideal();
    let s_abelian = is_abelian_subspace(l, &s);
    let derived_abelian = is_abelian_subspace(l, &derived);
    let orthogonal_complement_match = s.orthogonal_complement(m.gram()) == derived;
    let is_milnor = s_abelian && derived_abelian && orthogonal_complement_match;
    MilnorDecomposition { s, derived, s_abelian, derived_abelian, orthogonal_complement_match, is_milnor }
}

/// The torsion-free metric product D on a metric Lie algebra, from
/// 2⟨D_x y, z⟩ = ⟨[x,y],z⟩ + ⟨[z,x],y⟩ + ⟨[z,y],x⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviCivita {
    dim: usize,
    table: Vec<Vec<Scalar>>,
    matrices: Vec<Matrix>,
}

pub fn lc_product(l: &LieAlgebra, m: &InnerProduct) -> Result<LeviCivita> {
    check_dims(l, m)?;
    let n = l.dim();
    // lowered[i][j] = G [e_i, e_j]
    let lowered: Vec<Vec<Vec<Scalar>>> =
        (0..n).map(|i| (0..n).map(|j| m.flat(&l.bracket_basis(i, j))).collect()).collect();
    let half = scalar::frac(1, 2);
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let b: Vec<Scalar> =
                (0..n).map(|k| (&lowered[i][j][k] + &lowered[k][i][j] + &lowered[k][j][i]) * &half).collect();
            table.push(m.sharp(&b));
        }
    }
    let matrices = (0..n).map(|i| Matrix::from_columns(n, &table[i * n..(i + 1) * n])).collect();
    Ok(LeviCivita { dim: n, table, matrices })
}

impl LeviCivita {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// D_{e_i} e_j.
    pub fn product_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim + j]
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.matrix(x).apply(y)
    }

    /// The endomorphism y ↦ D_x y.
    pub fn matrix(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.matrices[i].scale(c));
            }
        }
        out
    }

    pub fn matrix_basis(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    /// Pairs (i, j) with D_{e_i}e_j − D_{e_j}e_i ≠ [e_i, e_j].
    pub fn torsion_defects(&self, l: &LieAlgebra) -> Vec<(usize, usize)> {
        (0..self.dim)
            .tuple_combinations()
            .filter(|&(i, j)| {
                let t = linalg::sub(self.product_basis(i, j), self.product_basis(j, i));
                t != l.bracket_basis(i, j)
            })
            .collect()
    }

    /// Triples (i, j, k) with ⟨D_{e_i}e_j, e_k⟩ + ⟨e_j, D_{e_i}e_k⟩ ≠ 0.
    pub fn metric_defects(&self, m: &InnerProduct) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let a = m.inner(self.product_basis(i, j), &linalg::unit(n, k));
                    let b = m.inner(&linalg::unit(n, j), self.product_basis(i, k));
                    if !(a + b).is_zero() {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// R(e_i, e_j) = D_{[e_i,e_j]} − [D_{e_i}, D_{e_j}] as a matrix.
    pub fn curvature_operator(&self, l: &LieAlgebra, i: usize, j: usize) -> Matrix {
        self.matrix(&l.bracket_basis(i, j)).sub(&self.matrices[i].commutator(&self.matrices[j]))
    }

    /// First basis pair (i < j) with a nonzero curvature operator.
    pub fn flatness_witness(&self, l: &LieAlgebra) -> Option<CurvatureWitness> {
        for (i, j) in (0..self.dim).tuple_combinations() {
            let r = self.curvature_operator(l, i, j);
            if let Some(k) = (0..self.dim).find(|&k| !linalg::is_zero(&r.column(k))) {
                return Some(CurvatureWitness { triple: (i, j, k), value: r.column(k) });
            }
        }
        None
    }
}

/// R(x, y) z = D_{[x,y]} z − (D_x D_y z − D_y D_x z).
pub fn curvature(d: &LeviCivita, l: &LieAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
    let bracket = l.bracket(x, y);
    let first = d.product(&bracket, z);
    let xy = d.product(x, &d.product(y, z));
    let yx = d.product(y, &d.product(x, z));
    linalg::add(&linalg::sub(&first, &xy), &yx)
}

pub fn is_flat(d: &LeviCivita, l: &LieAlgebra) -> bool {
    d.flatness_witness(l).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvatureWitness {
    /// R(e_i, e_j) e_k ≠ 0, 0-based.
    pub triple: (usize, usize, usize),
    #[serde(serialize_with = "crate::serialize_scalars")]
    pub value: Vec<Scalar>,
}

/// A nonzero metacurvature value on a triple of the canonical S basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetaflatWitness {
    /// Positions in the canonical basis of S, 0-based.
    pub triple: (usize, usize, usize),
    #[serde(serialize_with = "serialize_vectors")]
    pub arguments: [Vec<Scalar>; 3],
    pub value: MultiVector,
}

fn serialize_vectors<S: serde::Serializer>(v: &[Vec<Scalar>; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = v.iter().map(|x| x.iter().map(scalar::format).collect()).collect();
    text.serialize(s)
}

fn check_meta_inputs(l_dual: &LieAlgebra, m_dual: &InnerProduct, rho: &Cocycle) -> Result<MilnorDecomposition> {
    check_dims(l_dual, m_dual)?;
    if rho.dim() != l_dual.dim() {
        return Err(Error::DimensionMismatch { expected: l_dual.dim(), found: rho.dim() });
    }
    let milnor = milnor_check(l_dual, m_dual);
    if !milnor.is_milnor {
        return Err(Error::NotMilnor);
    }
    Ok(milnor)
}

fn check_in_s(s: &Subspace, args: [&[Scalar]; 3]) -> Result<()> {
    for (pos, a) in args.iter().enumerate() {
        if a.len() != s.ambient() {
            return Err(Error::DimensionMismatch { expected: s.ambient(), found: a.len() });
        }
        if !s.contains(a) {
            return Err(Error::ArgumentNotInS { position: pos + 1 });
        }
    }
    Ok(())
}

fn closed_form(l_dual: &LieAlgebra, rho: &Cocycle, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> MultiVector {
    let inner = rho.apply(c).extend_derivation(&l_dual.ad_coords(b)).expect("dims checked");
    inner.extend_derivation(&l_dual.ad_coords(a)).expect("dims checked")
}

/// M(α, β, γ) = ad_α ad_β ρ(γ) for α, β, γ in S, where the dual algebra
/// with its metric must be Milnor. Arguments are dense coordinates on 𝒢*.
pub fn metacurvature(
    l_dual: &LieAlgebra,
    m_dual: &InnerProduct,
    rho: &Cocycle,
    alpha: &[Scalar],
    beta: &[Scalar],
    gamma: &[Scalar],
) -> Result<MultiVector> {
    let milnor = check_meta_inputs(l_dual, m_dual, rho)?;
    check_in_s(&milnor.s, [alpha, beta, gamma])?;
    Ok(closed_form(l_dual, rho, alpha, beta, gamma))
}

/// The same value by the parallel-form route −D_α D_β dγ with d = −ρ on
/// 1-forms, D taken from [`lc_product`] and extended as a derivation.
pub fn metacurvature_via_parallel(
    l_dual: &LieAlgebra,
    m_dual: &InnerProduct,
    rho: &Cocycle,
    alpha: &[Scalar],
    beta: &[Scalar],
    gamma: &[Scalar],
) -> Result<MultiVector> {
    let milnor = check_meta_inputs(l_dual, m_dual, rho)?;
    check_in_s(&milnor.s, [alpha, beta, gamma])?;
    let d = lc_product(l_dual, m_dual)?;
    let d_gamma = rho.apply(gamma).negated();
    let step = d_gamma.extend_derivation(&d.matrix(beta))?;
    Ok(step.extend_derivation(&d.matrix(alpha))?.negated())
}

/// Runs the closed form over all triples of the canonical S basis and
/// returns the first nonzero value.
pub fn metaflat_witness(l_dual: &LieAlgebra, m_dual: &InnerProduct, rho: &Cocycle) -> Result<Option<MetaflatWitness>> {
    let milnor = check_meta_inputs(l_dual, m_dual, rho)?;
    let basis = milnor.s.basis();
    let p = basis.len();
    for a in 0..p {
        for b in a..p {
            for c in 0..p {
                let value = closed_form(l_dual, rho, &basis[a], &basis[b], &basis[c]);
                if a != b {
                    let swapped = closed_form(l_dual, rho, &basis[b], &basis[a], &basis[c]);
                    assert_eq!(value, swapped, "metacurvature must be symmetric in its first two slots");
                }
                if !value.is_zero() {
                    return Ok(Some(MetaflatWitness {
                        triple: (a, b, c),
                        arguments: [basis[a].clone(), basis[b].clone(), basis[c].clone()],
                        value,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn metaflat_check(l_dual: &LieAlgebra, m_dual: &InnerProduct, rho: &Cocycle) -> Result<bool> {
    Ok(metaflat_witness(l_dual, m_dual, rho)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::dual_cocycle;
    use crate::multilinear::Space;
    use crate::scalar::{frac, int};

    fn su2() -> LieAlgebra {
        LieAlgebra::from_int_brackets(3, &[(1, 2, &[(1, 3)]), (2, 3, &[(1, 1)]), (3, 1, &[(1, 2)])]).unwrap()
    }

    fn dim3_dual(lambda: i64) -> LieAlgebra {
        LieAlgebra::from_int_brackets(3, &[(1, 2, &[(lambda, 3)]), (1, 3, &[(-lambda, 2)])]).unwrap()
    }

    fn u(n: usize, i: usize) -> Vec<Scalar> {
        linalg::unit(n, i)
    }

    #[test]
    fn inner_product_validation() {
        assert!(InnerProduct::new(Matrix::from_i64(&[&[2, 1], &[1, 1]])).is_ok());
        assert_eq!(
            InnerProduct::new(Matrix::from_i64(&[&[1, 1], &[0, 1]])),
            Err(Error::MetricNotSymmetric { i: 1, j: 2 })
        );
        assert!(matches!(
            InnerProduct::new(Matrix::from_i64(&[&[1, 2], &[2, 1]])),
            Err(Error::MetricNotPositive { order: 2, .. })
        ));
        assert!(matches!(
            InnerProduct::new(Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]])),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        let m = InnerProduct::new(Matrix::from_i64(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn ad_transpose_examples() {
        let rot = LieAlgebra::from_int_brackets(2, &[]).unwrap();
        assert!(ad_transpose(&rot, &InnerProduct::euclidean(2), &[int(1), int(1)]).is_zero());
        let g = dim3_dual(1);
        let e = InnerProduct::euclidean(3);
        let x = u(3, 0);
        assert_eq!(ad_transpose(&g, &e, &x), g.ad_coords(&x).scale(&int(-1)));
        let y = u(3, 1);
        assert_ne!(ad_transpose(&g, &e, &y), g.ad_coords(&y).scale(&int(-1)));
    }

    #[test]
    fn s_subalgebra_examples() {
        let e = InnerProduct::euclidean(3);
        assert_eq!(s_subalgebra(&dim3_dual(1), &e), Subspace::span(3, &[u(3, 0)]));
        assert_eq!(s_subalgebra(&su2(), &e), Subspace::full(3));
        assert_eq!(s_subalgebra(&LieAlgebra::abelian(3), &e), Subspace::full(3));
    }

    #[test]
    fn milnor_examples() {
        let e = InnerProduct::euclidean(3);
        assert!(milnor_check(&dim3_dual(3), &e).is_milnor);
        let su = milnor_check(&su2(), &e);
        assert!(!su.is_milnor && !su.s_abelian);
        let ab = milnor_check(&LieAlgebra::abelian(3), &e);
        assert!(ab.is_milnor && ab.derived.is_zero());
    }

    #[test]
    fn lc_examples() {
        let g = dim3_dual(1);
        let e = InnerProduct::euclidean(3);
        let d = lc_product(&g, &e).unwrap();
        assert_eq!(d.product_basis(0, 1), &u(3, 2)[..]);
        for j in 0..3 {
            assert!(linalg::is_zero(d.product_basis(1, j)));
            assert!(linalg::is_zero(d.product_basis(2, j)));
        }
        let s = su2();
        let d = lc_product(&s, &e).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.product_basis(i, j), &linalg::scale(&s.bracket_basis(i, j), &frac(1, 2))[..]);
            }
        }
        assert!(d.torsion_defects(&s).is_empty());
        assert!(d.metric_defects(&e).is_empty());
    }

    #[test]
    fn curvature_examples() {
        let s = su2();
        let e = InnerProduct::euclidean(3);
        let d = lc_product(&s, &e).unwrap();
        let r = curvature(&d, &s, &u(3, 0), &u(3, 1), &u(3, 1));
        assert_eq!(r, linalg::scale(&u(3, 0), &frac(-1, 4)));
        assert!(!is_flat(&d, &s));
        let g = dim3_dual(2);
        assert!(is_flat(&lc_product(&g, &e).unwrap(), &g));
        let a = LieAlgebra::abelian(4);
        assert!(is_flat(&lc_product(&a, &InnerProduct::euclidean(4)).unwrap(), &a));
    }

    #[test]
    fn metacurvature_examples() {
        let g = dim3_dual(1);
        let e = InnerProduct::euclidean(3);
        // ρ from the primal brackets [e2,e3] = a e1 with a = 3
        let primal = LieAlgebra::from_int_brackets(3, &[(2, 3, &[(3, 1)])]).unwrap();
        let rho = dual_cocycle(&primal);
        let s = u(3, 0);
        assert!(metacurvature(&g, &e, &rho, &s, &s, &s).unwrap().is_zero());
        assert!(metaflat_check(&g, &e, &rho).unwrap());
        assert_eq!(
            metacurvature(&g, &e, &rho, &s, &s, &s).unwrap(),
            metacurvature_via_parallel(&g, &e, &rho, &s, &s, &s).unwrap()
        );
        assert!(matches!(metacurvature(&g, &e, &rho, &u(3, 1), &s, &s), Err(Error::ArgumentNotInS { position: 1 })));
        assert!(matches!(metaflat_check(&su2(), &e, &rho), Err(Error::NotMilnor)));
        assert!(metaflat_check(&g, &e, &crate::bialgebra::Cocycle::zero(3, Space::Dual)).unwrap());
    }

    #[test]
    fn metacurvature_dim5_rotation_plane() {
        // 𝒢*: [e1*,e4*] = e5*, [e1*,e5*] = −e4*; candidate ρ(e1*) = e1*∧e4*.
        let g = LieAlgebra::from_int_brackets(5, &[(1, 4, &[(1, 5)]), (1, 5, &[(-1, 4)])]).unwrap();
        let e = InnerProduct::euclidean(5);
        let mut images = vec![MultiVector::zero(5, 2, Space::Dual).unwrap(); 5];
        images[0] = MultiVector::blade(5, Space::Dual, &[0, 3]).unwrap();
        let rho = crate::bialgebra::Cocycle::new(images).unwrap();
        let s = u(5, 0);
        let m = metacurvature(&g, &e, &rho, &s, &s, &s).unwrap();
        assert_eq!(m, MultiVector::blade(5, Space::Dual, &[0, 3]).unwrap().negated());
        assert_eq!(m, metacurvature_via_parallel(&g, &e, &rho, &s, &s, &s).unwrap());
        assert!(!metaflat_check(&g, &e, &rho).unwrap());
    }
}
