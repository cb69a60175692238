//! Hawkins compatibility of a metric Lie bialgebra.
//!
//! The dual algebra 𝒢* carries the inverse metric. The structure is
//! compatible when the Levi-Civita product of (𝒢*, ⟨,⟩*) is flat and the
//! metacurvature ad_α ad_β ρ(γ) vanishes on S. It is strongly compatible
//! when moreover both algebras are unimodular and d(i_{ξ(u)} μ) = 0 for
//! every u.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::bialgebra::{coboundary_cocycle, cybe, dual_cocycle, Cocycle, LieBialgebra};
use crate::error::{Error, Result};
use crate::lie::{BracketEntry, LieAlgebra};
use crate::linalg::{self, Matrix};
use crate::metric::{self, CurvatureWitness, InnerProduct, MetaflatWitness};
use crate::multilinear::{interior, MultiVector, Space};
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StrongCompatibility {
    Yes,
    /// Compatible and the modular condition holds, but 𝒢 is not
    /// unimodular, where only necessity of the condition is known.
    NecessaryConditionsHoldOnly,
    No,
}

impl fmt::Display for StrongCompatibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrongCompatibility::Yes => "YES",
            StrongCompatibility::NecessaryConditionsHoldOnly => "NECESSARY CONDITIONS HOLD ONLY",
            StrongCompatibility::No => "NO",
        })
    }
}

/// Nonzero ρ(i_{ξ(e_i)} μ), with μ = e1*∧…∧en*.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularWitness {
    /// 0-based basis index i.
    pub index: usize,
    pub value: MultiVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub jacobi: Option<String>,
    pub cocycle: Option<String>,
    pub dual_jacobi: Option<String>,
    pub flat: Option<String>,
    pub metaflat: Option<String>,
    pub g_unimodular: Option<String>,
    pub dual_unimodular: Option<String>,
    pub modular_condition: Option<String>,
    #[serde(skip)]
    pub curvature: Option<CurvatureWitness>,
    #[serde(skip)]
    pub metacurvature: Option<MetaflatWitness>,
    #[serde(skip)]
    pub modular: Option<ModularWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HawkinsReport {
    pub dim: usize,
    pub jacobi_ok: bool,
    pub cocycle_ok: bool,
    pub dual_jacobi_ok: bool,
    /// Milnor predicate of (𝒢*, ⟨,⟩*), computed independently of `flat`.
    pub dual_milnor: bool,
    pub flat: bool,
    pub metaflat: bool,
    pub g_unimodular: bool,
    pub dual_unimodular: bool,
    pub modular_condition: bool,
    pub compatible: bool,
    pub strongly_compatible: StrongCompatibility,
    pub witnesses: Witnesses,
    pub notes: Vec<String>,
}

impl HawkinsReport {
    pub fn is_bialgebra(&self) -> bool {
        self.jacobi_ok && self.cocycle_ok && self.dual_jacobi_ok
    }

    /// `(name, value)` for every boolean flag, in report order.
    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("jacobi", self.jacobi_ok),
            ("cocycle", self.cocycle_ok),
            ("dual jacobi", self.dual_jacobi_ok),
            ("dual milnor", self.dual_milnor),
            ("flat", self.flat),
            ("metaflat", self.metaflat),
            ("g unimodular", self.g_unimodular),
            ("dual unimodular", self.dual_unimodular),
            ("modular condition", self.modular_condition),
            ("compatible", self.compatible),
        ]
    }

    fn witness_for(&self, name: &str) -> Option<&String> {
        let w = &self.witnesses;
        match name {
            "jacobi" => w.jacobi.as_ref(),
            "cocycle" => w.cocycle.as_ref(),
            "dual jacobi" => w.dual_jacobi.as_ref(),
            "flat" => w.flat.as_ref(),
            "metaflat" => w.metaflat.as_ref(),
            "g unimodular" => w.g_unimodular.as_ref(),
            "dual unimodular" => w.dual_unimodular.as_ref(),
            "modular condition" => w.modular_condition.as_ref(),
            _ => None,
        }
    }

    /// Plain-text rendering, one flag per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, value) in self.flags() {
            out.push_str(name);
            out.push_str(": ");
            out.push_str(if value { "PASS" } else { "FAIL" });
            if !value {
                if let Some(w) = self.witness_for(name) {
                    out.push_str(", witness ");
                    out.push_str(w);
                }
            }
            out.push('\n');
        }
        out.push_str(&format!("strongly compatible: {}\n", self.strongly_compatible));
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}

fn triple_label(labels: &[String], (i, j, k): (usize, usize, usize)) -> String {
    format!("({},{},{})", labels[i], labels[j], labels[k])
}

fn render_vector(v: &[Scalar], labels: &[String]) -> String {
    let mv = MultiVector::vector(Space::Primal, v);
    mv.render_with(labels)
}

/// ρ(i_{ξ(e_i)} μ) for every i, where ρ acts on forms as −d.
pub fn modular_values(b: &LieBialgebra) -> Result<Vec<MultiVector>> {
    let n = b.dim();
    let mu = MultiVector::blade(n, Space::Dual, &(0..n).collect::<Vec<_>>())?;
    (0..n)
        .map(|i| {
            let contracted = interior(b.xi().image(i), &mu)?;
            Ok(b.primal().ce_differential(&contracted)?.negated())
        })
        .collect()
}

/// The unimodularity condition ρ(i_{ξ(u)} μ) = 0 for all u, with its first
/// failure. Any nonzero top form gives the same zero set, so the plain
/// wedge of the dual basis is used instead of the metric volume.
pub fn modular_condition(b: &LieBialgebra) -> Result<(bool, Option<ModularWitness>)> {
    let values = modular_values(b)?;
    let witness = values
        .into_iter()
        .enumerate()
        .find(|(_, v)| !v.is_zero())
        .map(|(index, value)| ModularWitness { index, value });
    Ok((witness.is_none(), witness))
}

pub fn analyze(b: &LieBialgebra, m: &InnerProduct) -> Result<HawkinsReport> {
    let n = b.dim();
    if m.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
    }
    let labels = b.primal().labels().to_vec();
    let star = b.dual().labels().to_vec();
    let m_dual = m.dual();
    let mut w = Witnesses::default();
    let mut notes = Vec::new();

    let diag = b.diagnose();
    let jacobi_ok = diag.jacobi.is_empty();
    if let Some(d) = diag.jacobi.first() {
        w.jacobi = Some(format!("{} -> {}", triple_label(&labels, d.triple), render_vector(&d.defect, &labels)));
    }
    let cocycle_ok = diag.cocycle.is_empty();
    if let Some(d) = diag.cocycle.first() {
        w.cocycle = Some(format!("({},{})", labels[d.pair.0], labels[d.pair.1]));
    }
    let dual_jacobi_ok = diag.dual_jacobi.is_empty();
    if let Some(d) = diag.dual_jacobi.first() {
        w.dual_jacobi = Some(format!("{} -> {}", triple_label(&star, d.triple), render_vector(&d.defect, &star)));
    }
    let valid = jacobi_ok && cocycle_ok && dual_jacobi_ok;

    let milnor = metric::milnor_check(b.dual(), &m_dual);
    let dual_milnor = milnor.is_milnor;

    let flat = if dual_jacobi_ok {
        let d = metric::lc_product(b.dual(), &m_dual)?;
        match d.flatness_witness(b.dual()) {
            None => true,
            Some(cw) => {
                w.flat = Some(format!(
                    "R({},{}){} = {}",
                    star[cw.triple.0],
                    star[cw.triple.1],
                    star[cw.triple.2],
                    render_vector(&cw.value, &star)
                ));
                w.curvature = Some(cw);
                false
            }
        }
    } else {
        w.flat = Some("dual bracket is not a Lie bracket".into());
        false
    };

    let metaflat = if !valid {
        w.metaflat = Some("not evaluated: the structure is not a Lie bialgebra".into());
        false
    } else if !dual_milnor {
        w.metaflat = Some("not evaluated: the closed form needs a flat dual".into());
        notes.push("metaflat is only decided when the dual metric Lie algebra is Milnor".into());
        false
    } else {
        match metric::metaflat_witness(b.dual(), &m_dual, b.rho())? {
            None => true,
            Some(mw) => {
                let args: Vec<String> = mw.arguments.iter().map(|a| render_vector(a, &star)).collect();
                w.metaflat = Some(format!("M({}, {}, {}) = {}", args[0], args[1], args[2], mw.value));
                w.metacurvature = Some(mw);
                false
            }
        }
    };

    let g_unimodular = b.primal().is_unimodular();
    if !g_unimodular {
        w.g_unimodular = Some(format!("trace form {}", render_vector(&b.primal().modular_coords(), &star)));
    }
    let dual_unimodular = b.dual().is_unimodular();
    if !dual_unimodular {
        w.dual_unimodular = Some(format!("trace form {}", render_vector(&b.dual().modular_coords(), &labels)));
    }

    let (modular_ok, modular_w) = modular_condition(b)?;
    if let Some(mw) = &modular_w {
        w.modular_condition = Some(format!("ρ(i_ξ({}) μ) = {}", labels[mw.index], mw.value.render_with(&star)));
    }
    w.modular = modular_w;

    let compatible = flat && metaflat;
    let strongly_compatible = if compatible && g_unimodular && dual_unimodular && modular_ok {
        StrongCompatibility::Yes
    } else if compatible && modular_ok && !g_unimodular {
        notes.push("the Lie algebra is not unimodular: the modular condition is only known to be necessary".into());
        StrongCompatibility::NecessaryConditionsHoldOnly
    } else {
        StrongCompatibility::No
    };
    if dual_jacobi_ok && flat != dual_milnor {
        notes.push("flatness and the Milnor predicate disagree".into());
    }

    Ok(HawkinsReport {
        dim: n,
        jacobi_ok,
        cocycle_ok,
        dual_jacobi_ok,
        dual_milnor,
        flat,
        metaflat,
        g_unimodular,
        dual_unimodular,
        modular_condition: modular_ok,
        compatible,
        strongly_compatible,
        witnesses: w,
        notes,
    })
}

/// Heisenberg algebra ℋ_n on x₁, y₁, …, x_n, y_n, z with [x_i, y_i] = z.
pub fn heisenberg_algebra(n: usize) -> LieAlgebra {
    let dim = 2 * n + 1;
    let entries: Vec<BracketEntry> = (0..n).map(|i| (2 * i, 2 * i + 1, vec![(scalar::one(), 2 * n)])).collect();
    let mut labels = Vec::with_capacity(dim);
    for i in 1..=n {
        labels.push(format!("x{i}"));
        labels.push(format!("y{i}"));
    }
    labels.push("z".into());
    LieAlgebra::from_brackets(dim, &entries).and_then(|g| g.with_labels(labels)).expect("Heisenberg table is valid")
}

fn check_heisenberg_j(n: usize, j: &Matrix, m: &InnerProduct) -> Result<()> {
    let dim = 2 * n + 1;
    if j.rows() != dim || j.cols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: j.rows() });
    }
    if m.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: m.dim() });
    }
    // ⟨Ju, v⟩ + ⟨u, Jv⟩ = 0  ⟺  Jᵀ G + G J = 0
    let skew = j.transpose().mul(m.gram()).add(&m.gram().mul(j));
    for a in 0..dim {
        for c in a..dim {
            if !num_traits::Zero::is_zero(&skew[(a, c)]) {
                return Err(Error::NotSkew { i: a + 1, j: c + 1 });
            }
        }
    }
    if !linalg::is_zero(&j.column(2 * n)) {
        return Err(Error::CentralNotKilled);
    }
    Ok(())
}

/// ξ(u) = z ∧ Ju on ℋ_n, for J skew with respect to `m` and Jz = 0.
pub fn heisenberg_build(n: usize, j: &Matrix, m: &InnerProduct) -> Result<LieBialgebra> {
    check_heisenberg_j(n, j, m)?;
    let g = heisenberg_algebra(n);
    let dim = g.dim();
    let z = MultiVector::basis_vector(dim, 2 * n, Space::Primal)?;
    let images =
        (0..dim).map(|u| z.wedge(&MultiVector::vector(Space::Primal, &j.column(u)))).collect::<Result<Vec<_>>>()?;
    LieBialgebra::assemble(g, Cocycle::new(images)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeisenbergCheck {
    pub holds: bool,
    /// First basis pair (0-based) where ω(J²u,v) + ω(u,J²v) + 2ω(Ju,Jv) ≠ 0.
    pub witness: Option<(usize, usize)>,
    #[serde(serialize_with = "serialize_opt_scalar")]
    pub value: Option<Scalar>,
}

fn serialize_opt_scalar<S: serde::Serializer>(v: &Option<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(scalar::format).serialize(s)
}

/// ω(J²u, v) + ω(u, J²v) + 2ω(Ju, Jv) = 0 on all basis pairs, with ω read
/// off the brackets of ℋ_n through [u, v] = ω(u, v) z.
pub fn heisenberg_condition(n: usize, j: &Matrix, m: &InnerProduct) -> Result<HeisenbergCheck> {
    check_heisenberg_j(n, j, m)?;
    let g = heisenberg_algebra(n);
    let dim = g.dim();
    let zi = 2 * n;
    let omega = |u: &[Scalar], v: &[Scalar]| -> Scalar {
        let br = g.bracket(u, v);
        debug_assert!(br.iter().take(zi).all(num_traits::Zero::is_zero));
        br[zi].clone()
    };
    let j2 = j.mul(j);
    for (a, c) in (0..dim).tuple_combinations() {
        let (u, v) = (linalg::unit(dim, a), linalg::unit(dim, c));
        let value =
            omega(&j2.apply(&u), &v) + omega(&u, &j2.apply(&v)) + omega(&j.apply(&u), &j.apply(&v)) * scalar::int(2);
        if !num_traits::Zero::is_zero(&value) {
            return Ok(HeisenbergCheck { holds: false, witness: Some((a, c)), value: Some(value) });
        }
    }
    Ok(HeisenbergCheck { holds: true, witness: None, value: None })
}

fn check_ad_invariant(l: &LieAlgebra, m: &InnerProduct) -> Result<()> {
    let n = l.dim();
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let a = m.inner(&l.bracket_basis(i, j), &linalg::unit(n, k));
                let b = m.inner(&linalg::unit(n, j), &l.bracket_basis(i, k));
                if !num_traits::Zero::is_zero(&(a + b)) {
                    return Err(Error::NotAdInvariant { i: i + 1, j: j + 1, k: k + 1 });
                }
            }
        }
    }
    Ok(())
}

/// For a compact semisimple algebra with bi-invariant metric and the
/// coboundary structure of r: strongly compatible exactly when [r, r] = 0.
pub fn triangular_analysis(l: &LieAlgebra, m: &InnerProduct, r: &MultiVector) -> Result<bool> {
    if m.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: m.dim() });
    }
    check_ad_invariant(l, m)?;
    Ok(cybe(l, r)?.is_zero())
}

/// The coboundary bialgebra ξ(x) = ad_x r.
pub fn triangular_bialgebra(l: &LieAlgebra, r: &MultiVector) -> Result<LieBialgebra> {
    LieBialgebra::assemble(l.clone(), coboundary_cocycle(l, r)?)
}

/// The bialgebra of the linear Poisson structure on 𝒢*: abelian primal
/// whose dual bracket is the bracket of `l`, with the metric whose dual is `m`.
pub fn linear_bialgebra(l: &LieAlgebra, m: &InnerProduct) -> Result<(LieBialgebra, InnerProduct)> {
    if m.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: m.dim() });
    }
    let n = l.dim();
    let xi = dual_cocycle(l).as_space(Space::Primal);
    let labels: Vec<String> = l.dual_labels();
    let primal = LieAlgebra::abelian(n).with_labels(labels)?;
    Ok((LieBialgebra::assemble(primal, xi)?, m.dual()))
}

/// `true` when the linear structure is strongly compatible.
pub fn linear_case(l: &LieAlgebra, m: &InnerProduct) -> Result<bool> {
    let (b, metric) = linear_bialgebra(l, m)?;
    Ok(analyze(&b, &metric)?.strongly_compatible == StrongCompatibility::Yes)
}
