//! Floating-point normal form of a Milnor algebra.
//!
//! A Milnor algebra splits orthogonally as S ⊕ [𝒢,𝒢], both abelian, and
//! S acts on the derived ideal by commuting skew operators. Choosing an
//! orthonormal basis f₁,…,f_{2r} of the derived ideal that block
//! diagonalizes them gives linear forms λ_j on S with
//! [s, f_{2j−1}] = λ_j(s) f_{2j} and [s, f_{2j}] = −λ_j(s) f_{2j−1}.
//!
//! The eigenstructure can be irrational, so this is the one place where
//! floats are used. Nothing downstream depends on it.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::metric::{milnor_check, InnerProduct};
use crate::scalar::{self, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalForm {
    /// dim S.
    pub p: usize,
    /// Half the dimension of the derived ideal.
    pub r: usize,
    /// Rank of the family λ₁,…,λ_r.
    pub ell: usize,
    /// Basis of S with λ_i(e_j) = δ_ij for i, j ≤ ℓ and λ(e_j) = 0 beyond.
    pub e_basis: Vec<Vec<f64>>,
    /// Orthonormal basis of the derived ideal, in rotation pairs.
    pub f_basis: Vec<Vec<f64>>,
    /// `lambda_matrix[i][j]` = λ_j(e_i).
    pub lambda_matrix: Vec<Vec<f64>>,
    /// λ_j evaluated on an orthonormal basis of S (the rotation rates).
    pub frequencies: Vec<Vec<f64>>,
    pub residual: f64,
    pub tolerance: f64,
}

fn to_vec(v: &[Scalar]) -> DVector<f64> {
    DVector::from_iterator(v.len(), v.iter().map(scalar::to_f64))
}

fn gram_inner(g: &DMatrix<f64>, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    a.dot(&(g * b))
}

/// Gram–Schmidt in the metric `g`, dropping vectors that are (numerically)
/// dependent on the ones before.
fn orthonormalize(g: &DMatrix<f64>, vectors: &[DVector<f64>], seed: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = seed.to_vec();
    let start = out.len();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = gram_inner(g, u, &w);
                w -= u * c;
            }
        }
        let norm = gram_inner(g, &w, &w).max(0.0).sqrt();
        if norm > 1e-10 * (1.0 + v.norm()) {
            out.push(w / norm);
        }
    }
    out.split_off(start)
}

pub fn milnor_normal_form(l: &LieAlgebra, m: &InnerProduct, tol: f64) -> Result<NormalForm> {
    let milnor = milnor_check(l, m);
    if !milnor.is_milnor {
        return Err(Error::NotMilnor);
    }
    let n = l.dim();
    let g = DMatrix::from_fn(n, n, |i, j| scalar::to_f64(&m.gram()[(i, j)]));
    let ad: Vec<DMatrix<f64>> =
        (0..n).map(|k| DMatrix::from_fn(n, n, |i, j| scalar::to_f64(&l.ad_basis(k)[(i, j)]))).collect();
    let ad_of = |x: &DVector<f64>| {
        let mut out = DMatrix::zeros(n, n);
        for (k, c) in x.iter().enumerate() {
            out += &ad[k] * *c;
        }
        out
    };

    let s_on = orthonormalize(&g, &milnor.s.basis().iter().map(|v| to_vec(v)).collect::<Vec<_>>(), &[]);
    let d_on = orthonormalize(&g, &milnor.derived.basis().iter().map(|v| to_vec(v)).collect::<Vec<_>>(), &[]);
    let p = s_on.len();
    if d_on.len() % 2 == 1 {
        return Err(Error::FailedToConverge { residual: "NaN".into() });
    }
    let r = d_on.len() / 2;
    if r == 0 {
        return Ok(NormalForm {
            p,
            r: 0,
            ell: 0,
            e_basis: s_on.iter().map(|v| v.iter().copied().collect()).collect(),
            f_basis: Vec::new(),
            lambda_matrix: vec![Vec::new(); p],
            frequencies: vec![Vec::new(); p],
            residual: 0.0,
            tolerance: tol,
        });
    }

    // Restrictions of ad_s to the derived ideal, in the orthonormal basis.
    let dim_d = 2 * r;
    let restricted: Vec<DMatrix<f64>> = s_on
        .iter()
        .map(|s| {
            let a = ad_of(s);
            DMatrix::from_fn(dim_d, dim_d, |i, j| gram_inner(&g, &d_on[i], &(&a * &d_on[j])))
        })
        .collect();

    let pairs = rotation_pairs(&restricted, dim_d, tol)?;

    // λ_j on the orthonormal S basis.
    let freq: Vec<Vec<f64>> =
        restricted.iter().map(|mi| pairs.iter().map(|(f1, f2)| f2.dot(&(mi * f1))).collect()).collect();

    // Pick a maximal independent subfamily of the λ_j.
    let lambda_rows: Vec<DVector<f64>> =
        (0..r).map(|j| DVector::from_iterator(p, (0..p).map(|i| freq[i][j]))).collect();
    let euclid = DMatrix::<f64>::identity(p, p);
    let mut kept: Vec<usize> = Vec::new();
    let mut kept_on: Vec<DVector<f64>> = Vec::new();
    for (j, row) in lambda_rows.iter().enumerate() {
        let extra = orthonormalize(&euclid, std::slice::from_ref(row), &kept_on);
        if let Some(v) = extra.into_iter().next() {
            kept.push(j);
            kept_on.push(v);
        }
    }
    let ell = kept.len();
    let order: Vec<usize> = kept.iter().copied().chain((0..r).filter(|j| !kept.contains(j))).collect();

    // e_j dual to the kept λ's inside their span, then an orthonormal basis
    // of the common kernel.
    let k_mat = DMatrix::from_fn(ell, p, |a, b| lambda_rows[kept[a]][b]);
    let kkt = &k_mat * k_mat.transpose();
    let kkt_inv = kkt.try_inverse().ok_or(Error::FailedToConverge { residual: "NaN".into() })?;
    let dual_coords = k_mat.transpose() * kkt_inv;
    let mut e_coords: Vec<DVector<f64>> = (0..ell).map(|j| dual_coords.column(j).into_owned()).collect();
    let units: Vec<DVector<f64>> = (0..p).map(|i| DVector::from_fn(p, |a, _| if a == i { 1.0 } else { 0.0 })).collect();
    e_coords.extend(orthonormalize(&euclid, &units, &kept_on));

    let e_ambient: Vec<DVector<f64>> = e_coords
        .iter()
        .map(|c| {
            let mut v = DVector::zeros(n);
            for (i, x) in c.iter().enumerate() {
                v += &s_on[i] * *x;
            }
            v
        })
        .collect();
    let f_ambient: Vec<(DVector<f64>, DVector<f64>)> = order
        .iter()
        .map(|&j| {
            let (f1, f2) = &pairs[j];
            let lift = |c: &DVector<f64>| {
                let mut v = DVector::zeros(n);
                for (i, x) in c.iter().enumerate() {
                    v += &d_on[i] * *x;
                }
                v
            };
            (lift(f1), lift(f2))
        })
        .collect();

    let lambda_matrix: Vec<Vec<f64>> = e_ambient
        .iter()
        .map(|e| {
            let a = ad_of(e);
            f_ambient.iter().map(|(f1, f2)| gram_inner(&g, f2, &(&a * f1))).collect()
        })
        .collect();

    let mut residual: f64 = 0.0;
    for (i, e) in e_ambient.iter().enumerate() {
        let a = ad_of(e);
        for (j, (f1, f2)) in f_ambient.iter().enumerate() {
            let lam = lambda_matrix[i][j];
            residual = residual.max((&a * f1 - f2 * lam).amax());
            residual = residual.max((&a * f2 + f1 * lam).amax());
        }
    }
    for i in 0..ell {
        for j in 0..ell {
            let target = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((lambda_matrix[i][j] - target).abs());
        }
    }
    for row in lambda_matrix.iter().skip(ell) {
        for x in row {
            residual = residual.max(x.abs());
        }
    }
    // written this way so that a NaN residual is rejected
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(residual <= tol) {
        return Err(Error::FailedToConverge { residual: format!("{residual:e}") });
    }

    let frequencies = freq.iter().map(|row| order.iter().map(|&j| row[j]).collect()).collect();
    Ok(NormalForm {
        p,
        r,
        ell,
        e_basis: e_ambient.iter().map(|v| v.iter().copied().collect()).collect(),
        f_basis: f_ambient
            .iter()
            .flat_map(|(a, b)| [a.iter().copied().collect(), b.iter().copied().collect()])
            .collect(),
        lambda_matrix,
        frequencies,
        residual,
        tolerance: tol,
    })
}

/// Splits R^{2r} into invariant planes of a generic combination of the
/// commuting skew matrices, returning (f₁, A f₁ / |A f₁|) pairs.
fn rotation_pairs(restricted: &[DMatrix<f64>], dim: usize, tol: f64) -> Result<Vec<(DVector<f64>, DVector<f64>)>> {
    let mut best_residual = f64::INFINITY;
    for attempt in 0..8 {
        let mut a = DMatrix::<f64>::zeros(dim, dim);
        for (i, mi) in restricted.iter().enumerate() {
            let c = ((i + 2 + 3 * attempt) as f64).sqrt() + 0.1 * attempt as f64;
            a += mi * c;
        }
        let sq = &a * &a;
        let sym = (&sq + sq.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let mut idx: Vec<usize> = (0..dim).collect();
        idx.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));

        let scale = a.amax().max(1.0);
        let mut chosen: Vec<DVector<f64>> = Vec::new();
        let mut pairs = Vec::new();
        let mut degenerate = false;
        for &k in &idx {
            if chosen.len() == dim {
                break;
            }
            let mut w = eig.eigenvectors.column(k).into_owned();
            for _ in 0..2 {
                for c in &chosen {
                    let t = c.dot(&w);
                    w -= c * t;
                }
            }
            let norm = w.norm();
            if norm < 1e-6 {
                continue;
            }
            w /= norm;
            let aw = &a * &w;
            let mu = aw.norm();
            if mu < tol.max(1e-12) * scale {
                degenerate = true;
                break;
            }
            let mut f2 = aw / mu;
            for _ in 0..2 {
                for c in chosen.iter().chain(std::iter::once(&w)) {
                    let t = c.dot(&f2);
                    f2 -= c * t;
                }
            }
            let n2 = f2.norm();
            if n2 < 1e-6 {
                degenerate = true;
                break;
            }
            f2 /= n2;
            chosen.push(w.clone());
            chosen.push(f2.clone());
            pairs.push((w, f2));
        }
        if degenerate || chosen.len() != dim {
            best_residual = best_residual.min(1.0);
            continue;
        }
        // Every generator must preserve every plane.
        let mut residual: f64 = 0.0;
        for mi in restricted {
            for (f1, f2) in &pairs {
                let lam = f2.dot(&(mi * f1));
                residual = residual.max((mi * f1 - f2 * lam).amax());
                residual = residual.max((mi * f2 + f1 * lam).amax());
            }
        }
        if residual <= tol {
            return Ok(pairs);
        }
        best_residual = best_residual.min(residual);
    }
    Err(Error::FailedToConverge { residual: format!("{best_residual:e}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn dim3_dual(lambda: i64) -> LieAlgebra {
        LieAlgebra::from_int_brackets(3, &[(1, 2, &[(lambda, 3)]), (1, 3, &[(-lambda, 2)])]).unwrap()
    }

    #[test]
    fn dim3_rotation() {
        let nf = milnor_normal_form(&dim3_dual(2), &InnerProduct::euclidean(3), DEFAULT_TOLERANCE).unwrap();
        assert_eq!((nf.p, nf.r, nf.ell), (1, 1, 1));
        assert!((nf.frequencies[0][0].abs() - 2.0).abs() < 1e-12);
        assert!((nf.lambda_matrix[0][0] - 1.0).abs() < 1e-12);
        assert!((nf.e_basis[0][0].abs() - 0.5).abs() < 1e-12);
        assert!(nf.e_basis[0][1].abs() < 1e-12 && nf.e_basis[0][2].abs() < 1e-12);
        assert!(nf.residual < 1e-12);
    }

    #[test]
    fn abelian_is_trivial() {
        let nf = milnor_normal_form(&LieAlgebra::abelian(4), &InnerProduct::euclidean(4), DEFAULT_TOLERANCE).unwrap();
        assert_eq!((nf.p, nf.r, nf.ell), (4, 0, 0));
    }

    #[test]
    fn dim5_derived_two() {
        let g = LieAlgebra::from_int_brackets(5, &[(1, 4, &[(1, 5)]), (1, 5, &[(-1, 4)])]).unwrap();
        let nf = milnor_normal_form(&g, &InnerProduct::euclidean(5), DEFAULT_TOLERANCE).unwrap();
        assert_eq!((nf.p, nf.r, nf.ell), (3, 1, 1));
    }

    #[test]
    fn two_independent_frequencies_in_skewed_basis() {
        // S = span(s1, s2) rotating two planes at rates (1, 0) and (1, 3).
        let g = LieAlgebra::from_int_brackets(
            6,
            &[
                (1, 3, &[(1, 4)]),
                (1, 4, &[(-1, 3)]),
                (1, 5, &[(1, 6)]),
                (1, 6, &[(-1, 5)]),
                (2, 5, &[(3, 6)]),
                (2, 6, &[(-3, 5)]),
            ],
        )
        .unwrap();
        let metric = InnerProduct::new(Matrix::from_i64(&[
            &[2, 1, 0, 0, 0, 0],
            &[1, 3, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
        ]))
        .unwrap();
        let nf = milnor_normal_form(&g, &metric, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((nf.p, nf.r, nf.ell), (2, 2, 2));
        assert!(nf.residual < 1e-9);
    }

    #[test]
    fn rejects_non_milnor() {
        let su2 = LieAlgebra::from_int_brackets(3, &[(1, 2, &[(1, 3)]), (2, 3, &[(1, 1)]), (3, 1, &[(1, 2)])]).unwrap();
        assert_eq!(milnor_normal_form(&su2, &InnerProduct::euclidean(3), DEFAULT_TOLERANCE), Err(Error::NotMilnor));
    }
}
