//! Random generators, dense oracles and the structural checks shared by
//! the property suite and the acceptance gate.
#![allow(dead_code)]

use hawkins_core::bialgebra::{coboundary_cocycle, dual_cocycle, Cocycle, LieBialgebra};
use hawkins_core::lie::LieAlgebra;
use hawkins_core::linalg::{self, Matrix};
use hawkins_core::metric::{curvature, lc_product, milnor_check, InnerProduct};
use hawkins_core::multilinear::{MultiVector, Space};
use hawkins_core::scalar::{self, Scalar};
use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut impl Rng, lo: i64, hi: i64) -> Scalar {
    scalar::int(rng.random_range(lo..=hi))
}

/// Numerator in −3..=3 over 1 or 2.
pub fn small_rational(rng: &mut impl Rng) -> Scalar {
    scalar::frac(rng.random_range(-3..=3), rng.random_range(1..=2))
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| small_int(rng, -2, 2)).collect()
}

/// Unit lower times unit upper triangular, entries in −1..=1.
pub fn unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => scalar::one(),
        std::cmp::Ordering::Greater => small_int(rng, -1, 1),
        std::cmp::Ordering::Less => scalar::zero(),
    });
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => scalar::one(),
        std::cmp::Ordering::Less => small_int(rng, -1, 1),
        std::cmp::Ordering::Greater => scalar::zero(),
    });
    lower.mul(&upper)
}

/// PᵀDP with D positive diagonal.
pub fn random_metric(rng: &mut impl Rng, n: usize) -> InnerProduct {
    let d = Matrix::diagonal(&(0..n).map(|_| small_int(rng, 1, 3)).collect::<Vec<_>>());
    let p = unimodular(rng, n);
    InnerProduct::new(p.transpose().mul(&d).mul(&p)).expect("congruent to a positive diagonal")
}

/// The same metric Lie algebra written in the basis given by the columns of P.
pub fn change_basis(l: &LieAlgebra, gram: &Matrix, p: &Matrix) -> (LieAlgebra, InnerProduct) {
    let l2 = l.in_basis(p).expect("invertible");
    let m2 = InnerProduct::new(p.transpose().mul(gram).mul(p)).expect("congruent metric");
    (l2, m2)
}

/// p commuting skew generators acting on r orthonormal planes with
/// rational frequencies, before any change of basis.
fn milnor_table(rng: &mut impl Rng, dim: usize) -> (LieAlgebra, usize) {
    let r = rng.random_range(0..=(dim - 1) / 2);
    let p = dim - 2 * r;
    let mut brackets = Vec::new();
    for i in 0..p {
        for j in 0..r {
            let lambda = small_rational(rng);
            let (e, f) = (p + 2 * j, p + 2 * j + 1);
            if !lambda.is_zero() {
                brackets.push((i, e, vec![(lambda.clone(), f)]));
                brackets.push((i, f, vec![(-lambda, e)]));
            }
        }
    }
    (LieAlgebra::from_brackets(dim, &brackets).expect("valid table"), p)
}

/// A Milnor metric Lie algebra, scrambled by a random unimodular basis change.
pub fn random_milnor(rng: &mut impl Rng, dim: usize) -> (LieAlgebra, InnerProduct) {
    let (l, _) = milnor_table(rng, dim);
    let p = unimodular(rng, dim);
    change_basis(&l, &Matrix::identity(dim), &p)
}

/// ℝ ⋉_A ℝ^{n−1}.
pub fn semidirect(rng: &mut impl Rng, dim: usize) -> LieAlgebra {
    let mut brackets = Vec::new();
    for i in 1..dim {
        let terms: Vec<(Scalar, usize)> = (1..dim).map(|k| (small_int(rng, -2, 2), k)).collect();
        brackets.push((0, i, terms));
    }
    LieAlgebra::from_brackets(dim, &brackets).expect("valid table")
}

/// Brackets of the first v generators land in the last dim − v.
pub fn two_step(rng: &mut impl Rng, dim: usize) -> LieAlgebra {
    let v = if dim >= 3 { rng.random_range(2..dim) } else { 1 };
    let mut brackets = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            let terms: Vec<(Scalar, usize)> = (v..dim).map(|k| (small_int(rng, -2, 2), k)).collect();
            brackets.push((i, j, terms));
        }
    }
    LieAlgebra::from_brackets(dim, &brackets).expect("valid table")
}

pub fn su2() -> LieAlgebra {
    LieAlgebra::from_int_brackets(3, &[(1, 2, &[(1, 3)]), (2, 3, &[(1, 1)]), (3, 1, &[(1, 2)])]).unwrap()
}

pub fn sl2() -> LieAlgebra {
    // [h, x] = 2x, [h, y] = −2y, [x, y] = h
    LieAlgebra::from_int_brackets(3, &[(1, 2, &[(2, 2)]), (1, 3, &[(-2, 3)]), (2, 3, &[(1, 1)])]).unwrap()
}

/// A Lie algebra of the given dimension drawn from several families,
/// written in a random basis.
pub fn random_lie(rng: &mut impl Rng, dim: usize) -> LieAlgebra {
    let base = match rng.random_range(0..4) {
        0 => milnor_table(rng, dim).0,
        1 => semidirect(rng, dim),
        2 if dim >= 3 => two_step(rng, dim),
        3 if dim >= 3 => {
            let simple = if rng.random_bool(0.5) { su2() } else { sl2() };
            if dim == 3 {
                simple
            } else {
                simple.direct_sum(&semidirect(rng, dim - 3))
            }
        }
        _ => semidirect(rng, dim),
    };
    base.in_basis(&unimodular(rng, dim)).expect("invertible")
}

/// A metric Lie algebra that is usually not Milnor: a Milnor table with a
/// tilted metric, or a random algebra with a random metric.
pub fn random_perturbed(rng: &mut impl Rng, dim: usize) -> (LieAlgebra, InnerProduct) {
    match rng.random_range(0..3) {
        0 => {
            let (l, _) = milnor_table(rng, dim);
            let (a, b) = loop {
                let a = rng.random_range(0..dim);
                let b = rng.random_range(0..dim);
                if a != b {
                    break (a, b);
                }
            };
            let half = scalar::frac(1, 2);
            let tilt = Matrix::from_fn(dim, dim, |i, j| {
                if i == j {
                    scalar::one()
                } else if (i, j) == (a, b) || (i, j) == (b, a) {
                    half.clone()
                } else {
                    scalar::zero()
                }
            });
            change_basis(&l, &tilt, &unimodular(rng, dim))
        }
        1 => {
            let l = random_lie(rng, dim);
            let m = random_metric(rng, dim);
            (l, m)
        }
        _ => {
            // one plane with [e, f] = c s on top of the rotation by s
            let (l, p) = milnor_table(rng, dim);
            if p < dim {
                let c = small_int(rng, -2, 2);
                let mut constants = l.constants().to_vec();
                let (e, f) = (p, p + 1);
                constants[(e * dim + f) * dim] += &c;
                constants[(f * dim + e) * dim] -= &c;
                let ok = LieAlgebra::from_table(l.labels().to_vec(), constants).unwrap();
                if ok.is_lie() {
                    return change_basis(&ok, &Matrix::identity(dim), &unimodular(rng, dim));
                }
            }
            (random_lie(rng, dim), random_metric(rng, dim))
        }
    }
}

pub fn random_multivector(rng: &mut impl Rng, dim: usize, degree: usize, space: Space) -> MultiVector {
    use itertools::Itertools;
    let mut terms = Vec::new();
    for idx in (0..dim).combinations(degree) {
        if rng.random_bool(0.6) {
            terms.push((idx, small_int(rng, -2, 2)));
        }
    }
    MultiVector::from_terms(dim, degree, space, terms).unwrap()
}

/// A valid bialgebra: linear, zero cocycle, triangular on a commuting pair,
/// or a coboundary on su(2).
pub fn random_bialgebra(rng: &mut impl Rng, dim: usize) -> LieBialgebra {
    let kind = rng.random_range(0..4);
    match kind {
        0 => {
            let l = random_lie(rng, dim);
            let xi = dual_cocycle(&l).as_space(Space::Primal);
            LieBialgebra::assemble(LieAlgebra::abelian(dim), xi).unwrap()
        }
        1 => LieBialgebra::assemble(random_lie(rng, dim), Cocycle::zero(dim, Space::Primal)).unwrap(),
        2 if dim == 3 => {
            let r = random_multivector(rng, 3, 2, Space::Primal);
            let l = su2();
            LieBialgebra::assemble(l.clone(), coboundary_cocycle(&l, &r).unwrap()).unwrap()
        }
        _ => {
            // r = c x∧y with [x, y] = 0 solves the classical Yang–Baxter equation
            let l = random_lie(rng, dim);
            let mut pairs = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    if linalg::is_zero(&l.bracket_basis(i, j)) {
                        pairs.push((i, j));
                    }
                }
            }
            let xi = match pairs.choose(rng) {
                Some(&(i, j)) => {
                    let c = small_int(rng, 1, 2);
                    let r = MultiVector::from_terms(dim, 2, Space::Primal, [(vec![i, j], c)]).unwrap();
                    coboundary_cocycle(&l, &r).unwrap()
                }
                None => Cocycle::zero(dim, Space::Primal),
            };
            LieBialgebra::assemble(l, xi).unwrap()
        }
    }
}

/// Random skew J on the symplectic part of ℋ_n for the Euclidean metric.
pub fn random_heisenberg_j(rng: &mut impl Rng, n: usize) -> Matrix {
    let dim = 2 * n + 1;
    let k = Matrix::from_fn(dim, dim, |i, j| if i < j && j < 2 * n { small_int(rng, -1, 1) } else { scalar::zero() });
    k.sub(&k.transpose())
}

// ---------------------------------------------------------------------------
// dense oracles

/// Dense antisymmetric 3-tensor T[i][j][k], the determinant expansion of u∧v∧w.
pub type Dense3 = Vec<Vec<Vec<Scalar>>>;

pub fn dense3_zero(n: usize) -> Dense3 {
    vec![vec![vec![scalar::zero(); n]; n]; n]
}

pub fn dense3_add_wedge(t: &mut Dense3, c: &Scalar, u: &[Scalar], v: &[Scalar], w: &[Scalar]) {
    let n = u.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let det = &u[i] * (&v[j] * &w[k] - &v[k] * &w[j]) - &u[j] * (&v[i] * &w[k] - &v[k] * &w[i])
                    + &u[k] * (&v[i] * &w[j] - &v[j] * &w[i]);
                t[i][j][k] += c * det;
            }
        }
    }
}

/// Whether a library trivector agrees with a dense tensor on all entries.
pub fn dense3_matches(t: &Dense3, mv: &MultiVector) -> bool {
    let n = t.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if mv.coefficient(&[i, j, k]) != t[i][j][k] {
                    return false;
                }
            }
        }
    }
    true
}

/// [r, s] for bivectors from the decomposable rule
/// [x∧y, z∧w] = [x,z]∧y∧w − [x,w]∧y∧z − [y,z]∧x∧w + [y,w]∧x∧z.
pub fn oracle_schouten_bivectors(l: &LieAlgebra, r: &MultiVector, s: &MultiVector) -> Dense3 {
    let n = l.dim();
    let mut t = dense3_zero(n);
    for (a, ca) in r.terms() {
        for (b, cb) in s.terms() {
            let (x, y) = (linalg::unit(n, a[0]), linalg::unit(n, a[1]));
            let (z, w) = (linalg::unit(n, b[0]), linalg::unit(n, b[1]));
            let c = ca * cb;
            let neg = -c.clone();
            dense3_add_wedge(&mut t, &c, &l.bracket(&x, &z), &y, &w);
            dense3_add_wedge(&mut t, &neg, &l.bracket(&x, &w), &y, &z);
            dense3_add_wedge(&mut t, &neg, &l.bracket(&y, &z), &x, &w);
            dense3_add_wedge(&mut t, &c, &l.bracket(&y, &w), &x, &z);
        }
    }
    t
}

/// Dense Levi-Civita product Γ[i][j] = D_{e_i} e_j from the Koszul formula
/// solved with an explicit Gram inverse.
pub fn oracle_levi_civita(l: &LieAlgebra, gram: &Matrix) -> Vec<Vec<Vec<Scalar>>> {
    let n = l.dim();
    let inv = gram.inverse().expect("positive definite");
    let inner = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let mut acc = scalar::zero();
        for a in 0..n {
            for b in 0..n {
                acc += &x[a] * &gram[(a, b)] * &y[b];
            }
        }
        acc
    };
    let half = scalar::frac(1, 2);
    let mut out = vec![vec![vec![scalar::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (linalg::unit(n, i), linalg::unit(n, j));
            // lowered_k = ⟨D_x y, e_k⟩
            let lowered: Vec<Scalar> = (0..n)
                .map(|k| {
                    let z = linalg::unit(n, k);
                    (inner(&l.bracket(&x, &y), &z) - inner(&l.bracket(&y, &z), &x) + inner(&l.bracket(&z, &x), &y))
                        * &half
                })
                .collect();
            out[i][j] = inv.apply(&lowered);
        }
    }
    out
}

/// R(e_i, e_j) e_k = D_{[e_i,e_j]} e_k − D_i D_j e_k + D_j D_i e_k from the dense product.
pub fn oracle_curvature(l: &LieAlgebra, gamma: &[Vec<Vec<Scalar>>], i: usize, j: usize, k: usize) -> Vec<Scalar> {
    let n = l.dim();
    let apply = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let mut acc = linalg::zero_vec(n);
        for a in 0..n {
            for b in 0..n {
                let c = &x[a] * &y[b];
                if !c.is_zero() {
                    linalg::axpy(&mut acc, &c, &gamma[a][b]);
                }
            }
        }
        acc
    };
    let (ei, ej, ek) = (linalg::unit(n, i), linalg::unit(n, j), linalg::unit(n, k));
    let first = apply(&l.bracket(&ei, &ej), &ek);
    let ij = apply(&ei, &apply(&ej, &ek));
    let ji = apply(&ej, &apply(&ei, &ek));
    linalg::add(&linalg::sub(&first, &ij), &ji)
}

/// d e_k* = −Σ_{i<j} c_ij^k e_i*∧e_j*.
pub fn oracle_d_one_form(l: &LieAlgebra, k: usize) -> MultiVector {
    let n = l.dim();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = l.structure_constant(i, j, k);
            if !c.is_zero() {
                terms.push((vec![i, j], -c.clone()));
            }
        }
    }
    MultiVector::from_terms(n, 2, Space::Dual, terms).unwrap()
}

// ---------------------------------------------------------------------------
// structural checks; Err carries a description of the first failure

pub type Check = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Antisymmetry in the first pair, skewness of R(x,y) for the metric,
/// pair symmetry, first Bianchi, and agreement with the dense oracle.
pub fn check_curvature(l: &LieAlgebra, m: &InnerProduct) -> Check {
    let n = l.dim();
    let d = lc_product(l, m).map_err(|e| e.to_string())?;
    let gamma = oracle_levi_civita(l, m.gram());
    for i in 0..n {
        for j in 0..n {
            ensure(d.product_basis(i, j) == gamma[i][j].as_slice(), || format!("D_{i} e_{j} differs from Koszul"))?;
        }
    }
    let unit = |i: usize| linalg::unit(n, i);
    // r[i][j][k] = R(e_i, e_j) e_k, low[i][j][k][w] = ⟨R(e_i, e_j) e_k, e_w⟩
    let mut r = vec![vec![vec![Vec::new(); n]; n]; n];
    let mut low = vec![vec![vec![Vec::new(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = curvature(&d, l, &unit(i), &unit(j), &unit(k));
                ensure(v == oracle_curvature(l, &gamma, i, j, k), || format!("R({i},{j}){k} oracle"))?;
                low[i][j][k] = m.flat(&v);
                r[i][j][k] = v;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                ensure(linalg::is_zero(&linalg::add(&r[i][j][k], &r[j][i][k])), || {
                    format!("R({i},{j}) not antisymmetric")
                })?;
                let bianchi = linalg::add(&linalg::add(&r[i][j][k], &r[j][k][i]), &r[k][i][j]);
                ensure(linalg::is_zero(&bianchi), || format!("Bianchi fails on ({i},{j},{k})"))?;
                for w in 0..n {
                    let a = &low[i][j][k][w];
                    ensure((a + &low[i][j][w][k]).is_zero(), || format!("R({i},{j}) not skew on ({k},{w})"))?;
                    ensure(*a == low[k][w][i][j], || format!("pair symmetry fails on ({i},{j},{k},{w})"))?;
                }
            }
        }
    }
    Ok(())
}

pub fn check_levi_civita(l: &LieAlgebra, m: &InnerProduct) -> Check {
    let d = lc_product(l, m).map_err(|e| e.to_string())?;
    ensure(d.torsion_defects(l).is_empty(), || "torsion defect".into())?;
    ensure(d.metric_defects(m).is_empty(), || "metric defect".into())
}

/// Graded antisymmetry and graded Jacobi of the Schouten bracket on
/// multivectors of degree 1 and 2, and the bivector oracle.
pub fn check_schouten(rng: &mut impl Rng, l: &LieAlgebra) -> Check {
    let n = l.dim();
    let degrees: Vec<usize> = (1..=2.min(n)).collect();
    let (p, q, r) = (
        degrees[rng.random_range(0..degrees.len())],
        degrees[rng.random_range(0..degrees.len())],
        degrees[rng.random_range(0..degrees.len())],
    );
    let pm = random_multivector(rng, n, p, Space::Primal);
    let qm = random_multivector(rng, n, q, Space::Primal);
    let rm = random_multivector(rng, n, r, Space::Primal);
    let br = |a: &MultiVector, b: &MultiVector| l.schouten(a, b).map_err(|e| e.to_string());
    let sign = scalar::sign_of_parity(((p - 1) * (q - 1)) % 2 == 1);

    if p + q - 1 <= n {
        let pq = br(&pm, &qm)?;
        let qp = br(&qm, &pm)?;
        ensure(pq.plus(&qp.scaled(&sign)).unwrap().is_zero(), || format!("antisymmetry fails for degrees ({p},{q})"))?;
        if p == 2 && q == 2 && n >= 3 {
            ensure(dense3_matches(&oracle_schouten_bivectors(l, &pm, &qm), &pq), || {
                "bivector bracket differs from the decomposable oracle".into()
            })?;
        }
    }
    if p + q + r - 2 <= n {
        // [P,[Q,R]] = [[P,Q],R] + (−1)^{(p−1)(q−1)} [Q,[P,R]]
        let lhs = br(&pm, &br(&qm, &rm)?)?;
        let a = br(&br(&pm, &qm)?, &rm)?;
        let b = br(&qm, &br(&pm, &rm)?)?;
        let rhs = a.plus(&b.scaled(&sign)).unwrap();
        ensure(lhs == rhs, || format!("graded Jacobi fails for degrees ({p},{q},{r})"))?;
    }
    Ok(())
}

/// d² = 0 on forms of every degree, and d on 1-forms against the oracle.
pub fn check_differential(rng: &mut impl Rng, l: &LieAlgebra) -> Check {
    let n = l.dim();
    for k in 0..n {
        let one = MultiVector::basis_vector(n, k, Space::Dual).unwrap();
        ensure(l.ce_differential(&one).unwrap() == oracle_d_one_form(l, k), || format!("d e{}* oracle", k + 1))?;
    }
    for degree in 0..n.saturating_sub(1) {
        let omega = random_multivector(rng, n, degree, Space::Dual);
        let dd = l.ce_differential(&l.ce_differential(&omega).unwrap()).unwrap();
        ensure(dd.is_zero(), || format!("d² ≠ 0 in degree {degree}"))?;
    }
    Ok(())
}

/// Flipping twice gives back the bialgebra, and flipping preserves validity.
pub fn check_double_duality(b: &LieBialgebra) -> Check {
    let f = b.flipped();
    ensure(f.flipped() == *b, || "double flip differs".into())?;
    ensure(f.dual().same_brackets(b.primal()), || "dual of flip differs from primal".into())?;
    ensure(f.diagnose().is_bialgebra() == b.diagnose().is_bialgebra(), || "validity changed under flip".into())
}

pub fn check_milnor_unimodular(l: &LieAlgebra, m: &InnerProduct) -> Check {
    ensure(!milnor_check(l, m).is_milnor || l.is_unimodular(), || "Milnor but not unimodular".into())
}
