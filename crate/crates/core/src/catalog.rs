//! Classified metric Lie bialgebras in low dimension, with expected flags.
//!
//! Every entry is a parameterized family. The expected flag table of an
//! entry is written from hand-derived conditions on the parameters and is
//! never computed by [`analyze`]; the two are compared by `catalog check`
//! and by the test suites.
//!
//! Parameter names are ASCII (`lambda`, `alpha`, `beta`, `gamma`, `a1`, …).
//! The Greek letters λ, α, β, γ are accepted as aliases.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bialgebra::{coboundary_cocycle, dual_bracket, dual_cocycle, Cocycle, ImageEntry, LieBialgebra};
use crate::error::{Error, Result};
use crate::hawkins::{self, analyze, HawkinsReport, StrongCompatibility};
use crate::lie::{default_labels, BracketEntry, LieAlgebra};
use crate::linalg::Matrix;
use crate::metric::InnerProduct;
use crate::multilinear::{MultiVector, Space};
use crate::scalar::{self, Scalar};

/// Parameter values, keyed by canonical name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, Scalar>);

impl Params {
    /// Missing parameters read as zero.
    pub fn get(&self, name: &str) -> Scalar {
        self.0.get(name).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn set(&mut self, name: &str, value: Scalar) {
        self.0.insert(name.to_string(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Scalar)> {
        self.0.iter()
    }

    fn is_zero(&self, name: &str) -> bool {
        self.get(name) == scalar::zero()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={}", scalar::format(v))).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<&String, String> = self.0.iter().map(|(k, v)| (k, scalar::format(v))).collect();
        map.serialize(s)
    }
}

pub fn canonical_param(name: &str) -> &str {
    match name {
        "λ" => "lambda",
        "α" => "alpha",
        "β" => "beta",
        "γ" => "gamma",
        other => other,
    }
}

/// Parses `k=v,k=v`. Values are rationals ("p", "p/q" or a finite decimal).
pub fn parse_assignments(spec: &str) -> Result<Vec<(String, Scalar)>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected name=value, got {item:?}")))?;
            Ok((canonical_param(k.trim()).to_string(), scalar::parse(v.trim())?))
        })
        .collect()
}

/// Flags as they should come out of [`analyze`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub jacobi: bool,
    pub cocycle: bool,
    pub dual_jacobi: bool,
    pub flat: bool,
    pub metaflat: bool,
    pub g_unimodular: bool,
    pub dual_unimodular: bool,
    pub modular_condition: bool,
    pub compatible: bool,
    pub strongly_compatible: StrongCompatibility,
}

/// Mathematical conditions of a structure, before the reporting rules
/// (metaflat is only decided for a bialgebra with Milnor dual).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conditions {
    pub jacobi: bool,
    pub cocycle: bool,
    pub dual_jacobi: bool,
    /// (𝒢*, ⟨,⟩*) is Milnor, hence flat.
    pub dual_milnor: bool,
    /// ad_α ad_β ρ(γ) = 0 on S.
    pub metacurvature_vanishes: bool,
    pub g_unimodular: bool,
    pub dual_unimodular: bool,
    pub modular_condition: bool,
}

impl Conditions {
    pub const HOLD: Conditions = Conditions {
        jacobi: true,
        cocycle: true,
        dual_jacobi: true,
        dual_milnor: true,
        metacurvature_vanishes: true,
        g_unimodular: true,
        dual_unimodular: true,
        modular_condition: true,
    };

    pub fn expected(self) -> Expected {
        let valid = self.jacobi && self.cocycle && self.dual_jacobi;
        let flat = self.dual_jacobi && self.dual_milnor;
        let metaflat = valid && flat && self.metacurvature_vanishes;
        let compatible = flat && metaflat;
        let strongly_compatible = if compatible && self.modular_condition {
            if !self.g_unimodular {
                StrongCompatibility::NecessaryConditionsHoldOnly
            } else if self.dual_unimodular {
                StrongCompatibility::Yes
            } else {
                StrongCompatibility::No
            }
        } else {
            StrongCompatibility::No
        };
        Expected {
            jacobi: self.jacobi,
            cocycle: self.cocycle,
            dual_jacobi: self.dual_jacobi,
            flat,
            metaflat,
            g_unimodular: self.g_unimodular,
            dual_unimodular: self.dual_unimodular,
            modular_condition: self.modular_condition,
            compatible,
            strongly_compatible,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub flag: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Expected {
    pub fn mismatches(&self, r: &HawkinsReport) -> Vec<Mismatch> {
        let pairs = [
            ("jacobi", self.jacobi, r.jacobi_ok),
            ("cocycle", self.cocycle, r.cocycle_ok),
            ("dual jacobi", self.dual_jacobi, r.dual_jacobi_ok),
            ("flat", self.flat, r.flat),
            ("metaflat", self.metaflat, r.metaflat),
            ("g unimodular", self.g_unimodular, r.g_unimodular),
            ("dual unimodular", self.dual_unimodular, r.dual_unimodular),
            ("modular condition", self.modular_condition, r.modular_condition),
            ("compatible", self.compatible, r.compatible),
        ];
        let mut out: Vec<Mismatch> = pairs
            .iter()
            .filter(|(_, e, a)| e != a)
            .map(|(flag, e, a)| Mismatch { flag, expected: e.to_string(), actual: a.to_string() })
            .collect();
        if self.strongly_compatible != r.strongly_compatible {
            out.push(Mismatch {
                flag: "strongly compatible",
                expected: self.strongly_compatible.to_string(),
                actual: r.strongly_compatible.to_string(),
            });
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

const fn param(name: &'static str, default: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec { name, default, doc }
}

type Builder = fn(&Params) -> Result<(LieBialgebra, InnerProduct)>;
type Oracle = fn(&Params) -> Expected;

#[derive(Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
    /// Where the structure comes from, in mathematical terms.
    pub origin: &'static str,
    /// Group-level description, documentation only.
    pub group: Option<&'static str>,
    pub params: &'static [ParamSpec],
    pub constraints: &'static str,
    /// Parameter assignments exercised by `instantiate_all`.
    pub samples: &'static [&'static str],
    /// The expected table was computed by hand for this tool rather than
    /// read off a published classification.
    pub derived: bool,
    build: Builder,
    expect: Oracle,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry").field("name", &self.name).finish_non_exhaustive()
    }
}

impl CatalogEntry {
    /// Defaults overridden by `spec`; unknown names are rejected.
    pub fn params(&self, spec: &str) -> Result<Params> {
        self.params_from(parse_assignments(spec)?)
    }

    pub fn params_from(&self, assignments: Vec<(String, Scalar)>) -> Result<Params> {
        let mut p = Params::default();
        for ps in self.params {
            p.set(ps.name, scalar::parse(ps.default)?);
        }
        for (k, v) in assignments {
            if !self.params.iter().any(|ps| ps.name == k) {
                let known: Vec<&str> = self.params.iter().map(|ps| ps.name).collect();
                return Err(Error::InvalidParameter(format!(
                    "{} has no parameter {k:?} (known: {})",
                    self.name,
                    if known.is_empty() { "none".to_string() } else { known.join(", ") }
                )));
            }
            p.set(&k, v);
        }
        Ok(p)
    }

    pub fn build(&self, p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
        (self.build)(p)
    }

    pub fn expected(&self, p: &Params) -> Expected {
        (self.expect)(p)
    }

    pub fn instantiate(&self, spec: &str) -> Result<Instance> {
        self.instantiate_with(self.params(spec)?)
    }

    pub fn instantiate_with(&self, params: Params) -> Result<Instance> {
        let (bialgebra, metric) = self.build(&params)?;
        let expected = self.expected(&params);
        Ok(Instance { name: self.name, params, bialgebra, metric, expected })
    }

    pub fn sample_instances(&self) -> Result<Vec<Instance>> {
        self.samples.iter().map(|s| self.instantiate(s)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: &'static str,
    pub params: Params,
    pub bialgebra: LieBialgebra,
    pub metric: InnerProduct,
    pub expected: Expected,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub params: Params,
    pub report: HawkinsReport,
    pub expected: Expected,
    pub mismatches: Vec<Mismatch>,
}

impl CheckOutcome {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl Instance {
    pub fn label(&self) -> String {
        if self.params.0.is_empty() {
            self.name.to_string()
        } else {
            format!("{}[{}]", self.name, self.params)
        }
    }

    pub fn check(&self) -> Result<CheckOutcome> {
        let report = analyze(&self.bialgebra, &self.metric)?;
        let mismatches = self.expected.mismatches(&report);
        Ok(CheckOutcome {
            name: self.name.to_string(),
            params: self.params.clone(),
            report,
            expected: self.expected.clone(),
            mismatches,
        })
    }
}

// ---------------------------------------------------------------------------
// construction helpers (1-based indices, as the structures are usually written)

fn q(v: i64) -> Scalar {
    scalar::int(v)
}

fn bracket_table(dim: usize, entries: Vec<BracketEntry>) -> Result<LieAlgebra> {
    let entries: Vec<_> =
        entries.into_iter().map(|(i, j, t)| (i - 1, j - 1, t.into_iter().map(|(c, k)| (c, k - 1)).collect())).collect();
    LieAlgebra::from_brackets(dim, &entries)
}

fn two_forms(dim: usize, space: Space, entries: Vec<ImageEntry>) -> Result<Cocycle> {
    let entries: Vec<_> =
        entries.into_iter().map(|(i, t)| (i - 1, t.into_iter().map(|(c, j, k)| (c, j - 1, k - 1)).collect())).collect();
    Cocycle::from_entries(dim, space, &entries)
}

/// Assembles from the dual side: the bracket of 𝒢* and ρ on 𝒢*.
fn from_dual_side(dual: &LieAlgebra, rho: &Cocycle) -> Result<LieBialgebra> {
    let primal = dual_bracket(rho).with_labels(default_labels(dual.dim()))?;
    LieBialgebra::assemble(primal, dual_cocycle(dual).as_space(Space::Primal))
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

fn nonzero(p: &Params, name: &str) -> Result<Scalar> {
    let v = p.get(name);
    require(v != scalar::zero(), &format!("{name} must be nonzero"))?;
    Ok(v)
}

/// ξ(e_x) = −λ e_c∧e_y, ξ(e_y) = λ e_c∧e_x. The dual bracket rotates
/// (e_x*, e_y*) along e_c*.
fn rotation_terms(lambda: &Scalar, c: usize, x: usize, y: usize) -> Vec<ImageEntry> {
    vec![(x, vec![(-lambda.clone(), c, y)]), (y, vec![(lambda.clone(), c, x)])]
}

fn su2() -> LieAlgebra {
    LieAlgebra::from_int_brackets(3, &[(1, 2, &[(1, 3)]), (2, 3, &[(1, 1)]), (3, 1, &[(1, 2)])]).expect("su(2) table")
}

// ---------------------------------------------------------------------------
// dimension 2

fn build_dim2_abelian(_: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    Ok((LieBialgebra::assemble(LieAlgebra::abelian(2), Cocycle::zero(2, Space::Primal))?, InnerProduct::euclidean(2)))
}

fn expect_all(_: &Params) -> Expected {
    Conditions::HOLD.expected()
}

fn build_dim2_affine_dual(_: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let xi = two_forms(2, Space::Primal, vec![(2, vec![(q(1), 1, 2)])])?;
    Ok((LieBialgebra::assemble(LieAlgebra::abelian(2), xi)?, InnerProduct::euclidean(2)))
}

fn expect_dim2_affine_dual(_: &Params) -> Expected {
    // [e1*, e2*] = e2*: not unimodular, so not Milnor.
    Conditions { dual_milnor: false, dual_unimodular: false, ..Conditions::HOLD }.expected()
}

// ---------------------------------------------------------------------------
// dimension 3

fn build_dim3_abelian_rotation(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let lambda = nonzero(p, "lambda")?;
    let xi = two_forms(3, Space::Primal, rotation_terms(&lambda, 1, 2, 3))?;
    Ok((LieBialgebra::assemble(LieAlgebra::abelian(3), xi)?, InnerProduct::euclidean(3)))
}

fn build_dim3_heisenberg(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let lambda = nonzero(p, "lambda")?;
    let a = p.get("a");
    require(a > scalar::zero(), "a must be positive")?;
    let h3 = LieAlgebra::from_int_brackets(3, &[(1, 2, &[(1, 3)])])?;
    // ξ(e1) = −λ e3∧e2, ξ(e2) = λ e3∧e1
    let xi = two_forms(3, Space::Primal, rotation_terms(&lambda, 3, 1, 2))?;
    Ok((LieBialgebra::assemble(h3, xi)?, InnerProduct::diagonal(&[q(1), q(1), a])?))
}

/// 𝒢* rotates (e2*, e3*) along e1*, ρ(e1*) = a e2*∧e3*,
/// ρ(e2*) = b e1*∧e2*, ρ(e3*) = b e1*∧e3*.
fn build_dim3_dual_family(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let lambda = nonzero(p, "lambda")?;
    let (a, b) = (p.get("a"), p.get("b"));
    let g = bracket_table(3, vec![(1, 2, vec![(b.clone(), 2)]), (1, 3, vec![(b, 3)]), (2, 3, vec![(a, 1)])])?;
    let xi = two_forms(3, Space::Primal, rotation_terms(&lambda, 1, 2, 3))?;
    Ok((LieBialgebra::assemble(g, xi)?, InnerProduct::euclidean(3)))
}

fn expect_dim3_dual_family(p: &Params) -> Expected {
    // Jacobi defect is −2ab e1; tr ad_{e1} = 2b; ρ(i_{ξ(e2)}μ) = λb e1*∧e2*.
    let ab_zero = p.is_zero("a") || p.is_zero("b");
    let b_zero = p.is_zero("b");
    Conditions { jacobi: ab_zero, g_unimodular: b_zero, modular_condition: b_zero, ..Conditions::HOLD }.expected()
}

// ---------------------------------------------------------------------------
// dimension 4

/// Normal form: [e2,e3] = a e3 − b e4, [e2,e4] = b e3 + a e4,
/// [e3,e4] = c e1 + d e2, ξ(e3) = −λ e1∧e4, ξ(e4) = λ e1∧e3.
fn dim4_normal_form(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let lambda = nonzero(p, "lambda")?;
    let (a, b, c, d) = (p.get("a"), p.get("b"), p.get("c"), p.get("d"));
    require(a == scalar::zero() || (c == scalar::zero() && d == scalar::zero()), "need a = 0 or c = d = 0")?;
    let g = bracket_table(
        4,
        vec![(2, 3, vec![(a.clone(), 3), (-b.clone(), 4)]), (2, 4, vec![(b, 3), (a, 4)]), (3, 4, vec![(c, 1), (d, 2)])],
    )?;
    let xi = two_forms(4, Space::Primal, rotation_terms(&lambda, 1, 3, 4))?;
    Ok((LieBialgebra::assemble(g, xi)?, InnerProduct::euclidean(4)))
}

fn build_dim4_abelian_rotation(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    dim4_normal_form(p)
}

fn build_dim4_heisenberg(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    require(!(p.is_zero("c") && p.is_zero("d")), "need (c, d) ≠ (0, 0)")?;
    dim4_normal_form(p)
}

fn build_dim4_euclidean(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    nonzero(p, "b")?;
    dim4_normal_form(p)
}

fn build_dim4_oscillator(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    nonzero(p, "b")?;
    nonzero(p, "c")?;
    dim4_normal_form(p)
}

fn build_dim4_simple(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    nonzero(p, "b")?;
    nonzero(p, "d")?;
    dim4_normal_form(p)
}

fn build_dim4_nonunimodular(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    nonzero(p, "a")?;
    dim4_normal_form(p)
}

fn expect_dim4_normal_form(p: &Params) -> Expected {
    // tr ad_{e2} = 2a; everything else holds on the whole family.
    Conditions { g_unimodular: p.is_zero("a"), ..Conditions::HOLD }.expected()
}

/// Free cocycle before any condition: 𝒢* rotates (e3*, e4*) along e1*,
/// ρ(e1*) = a e3*∧e4*, ρ(e2*) = b e3*∧e4*,
/// ρ(e3*) = c e1*∧e3* + d e2*∧e3* + e e2*∧e4*,
/// ρ(e4*) = c e1*∧e4* − e e2*∧e3* + d e2*∧e4*.
fn build_dim4_family(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let lambda = nonzero(p, "lambda")?;
    let (a, b, c, d, e) = (p.get("a"), p.get("b"), p.get("c"), p.get("d"), p.get("e"));
    let g = bracket_table(
        4,
        vec![
            (1, 3, vec![(c.clone(), 3)]),
            (1, 4, vec![(c, 4)]),
            (2, 3, vec![(d.clone(), 3), (-e.clone(), 4)]),
            (2, 4, vec![(e, 3), (d, 4)]),
            (3, 4, vec![(a, 1), (b, 2)]),
        ],
    )?;
    let xi = two_forms(4, Space::Primal, rotation_terms(&lambda, 1, 3, 4))?;
    Ok((LieBialgebra::assemble(g, xi)?, InnerProduct::euclidean(4)))
}

fn expect_dim4_family(p: &Params) -> Expected {
    // Jacobi defects −2c[e3,e4] and −2d[e3,e4]; tr ad_{e1} = 2c,
    // tr ad_{e2} = 2d; ρ(i_{ξ(e3)}μ) is a multiple of c.
    let jacobi = (p.is_zero("a") && p.is_zero("b")) || (p.is_zero("c") && p.is_zero("d"));
    Conditions {
        jacobi,
        g_unimodular: p.is_zero("c") && p.is_zero("d"),
        modular_condition: p.is_zero("c"),
        ..Conditions::HOLD
    }
    .expected()
}

fn dim4_predicate(p: &Params) -> bool {
    p.is_zero("c") && ((p.is_zero("a") && p.is_zero("b")) || p.is_zero("d"))
}

// ---------------------------------------------------------------------------
// dimension 5, derived ideal of 𝒢* of dimension 2

/// 𝒢*: [e1*, e4*] = e5*, [e1*, e5*] = −e4*. ρ(e_i*) = a_i e2*∧e3* + b_i e4*∧e5*
/// (i ≤ 3), ρ(e4*) = P e1*∧e4* + A e2*∧e4* + B e2*∧e5* + C e3*∧e4* + D e3*∧e5*,
/// ρ(e5*) = P e1*∧e5* − B e2*∧e4* + A e2*∧e5* − D e3*∧e4* + C e3*∧e5*.
fn dim5_case2(a: [Scalar; 3], b: [Scalar; 3], pabcd: [Scalar; 5]) -> Result<(LieBialgebra, InnerProduct)> {
    let dual = LieAlgebra::from_int_brackets(5, &[(1, 4, &[(1, 5)]), (1, 5, &[(-1, 4)])])?
        .with_labels(default_labels(5).iter().map(|l| format!("{l}*")).collect())?;
    let [pp, aa, bb, cc, dd] = pabcd;
    let mut rho = Vec::new();
    for i in 0..3 {
        rho.push((i + 1, vec![(a[i].clone(), 2, 3), (b[i].clone(), 4, 5)]));
    }
    rho.push((
        4,
        vec![(pp.clone(), 1, 4), (aa.clone(), 2, 4), (bb.clone(), 2, 5), (cc.clone(), 3, 4), (dd.clone(), 3, 5)],
    ));
    rho.push((5, vec![(pp, 1, 5), (-bb, 2, 4), (aa, 2, 5), (-dd, 3, 4), (cc, 3, 5)]));
    let rho = two_forms(5, Space::Dual, rho)?;
    Ok((from_dual_side(&dual, &rho)?, InnerProduct::euclidean(5)))
}

fn triple(p: &Params, prefix: &str) -> [Scalar; 3] {
    [p.get(&format!("{prefix}1")), p.get(&format!("{prefix}2")), p.get(&format!("{prefix}3"))]
}

/// Jacobi of the case-2 algebra with the rotation-plane parameters
/// (A, B, C, D) and the e1-scaling P.
fn dim5_case2_jacobi(a: &[Scalar; 3], b: &[Scalar; 3], [p, aa, bb, cc, dd]: &[Scalar; 5]) -> bool {
    let two = q(2);
    let z = scalar::zero();
    let eqs = [
        &a[1] * aa + &a[2] * cc + &a[0] * p,
        &a[1] * bb + &a[2] * dd,
        &a[0] * &b[2] - &two * &b[0] * aa,
        &a[1] * &b[2] - &two * &b[1] * aa,
        &b[2] * (&a[2] - &two * aa),
        &two * cc * &b[0] + &a[0] * &b[1],
        &b[1] * (&a[1] + &two * cc),
        &two * cc * &b[2] + &a[2] * &b[1],
        p * &b[0],
        p * &b[1],
        p * &b[2],
    ];
    eqs.iter().all(|e| *e == z)
}

/// tr ad_{e1} = 2P, tr ad_{e2} = a3 + 2A, tr ad_{e3} = 2C − a2.
fn dim5_case2_unimodular(a: &[Scalar; 3], [p, aa, _, cc, _]: &[Scalar; 5]) -> bool {
    let z = scalar::zero();
    *p == z && &a[2] + &q(2) * aa == z && &q(2) * cc - &a[1] == z
}

fn dim5_case2_expected(a: [Scalar; 3], b: [Scalar; 3], rot: [Scalar; 5]) -> Expected {
    // d(i_{ξ(e4)}μ) = −P e1*∧e2*∧e3*∧e4*, and ad_{e1*} kills e2*∧e3*, e4*∧e5*.
    Conditions {
        jacobi: dim5_case2_jacobi(&a, &b, &rot),
        g_unimodular: dim5_case2_unimodular(&a, &rot),
        modular_condition: rot[0] == scalar::zero(),
        ..Conditions::HOLD
    }
    .expected()
}

fn family1_data(p: &Params) -> ([Scalar; 3], [Scalar; 3], [Scalar; 5]) {
    let a = triple(p, "a");
    let (al, be) = (p.get("alpha"), p.get("beta"));
    let rot = [scalar::zero(), &al * &a[2], &be * &a[2], -(&al * &a[1]), -(&be * &a[1])];
    (a, [scalar::zero(), scalar::zero(), scalar::zero()], rot)
}

fn family2_data(p: &Params) -> ([Scalar; 3], [Scalar; 3], [Scalar; 5]) {
    let a = triple(p, "a");
    let be = p.get("beta");
    let rot = [scalar::zero(), scalar::zero(), &be * &a[2], scalar::zero(), -(&be * &a[1])];
    (a, [p.get("b1"), scalar::zero(), scalar::zero()], rot)
}

fn family3_data(p: &Params) -> ([Scalar; 3], [Scalar; 3], [Scalar; 5]) {
    let a = triple(p, "a");
    let (be, ga) = (p.get("beta"), p.get("gamma"));
    let half = scalar::frac(1, 2);
    let rot = [scalar::zero(), &half * &a[2], &be * &a[2], -(&half * &a[1]), -(&be * &a[1])];
    let b = [&ga * &a[0], &ga * &a[1], &ga * &a[2]];
    (a, b, rot)
}

fn zero_a_data(p: &Params) -> ([Scalar; 3], [Scalar; 3], [Scalar; 5]) {
    let z = scalar::zero();
    ([z.clone(), z.clone(), z.clone()], triple(p, "b"), [z.clone(), z.clone(), p.get("B"), z, p.get("D")])
}

fn zero_b_data(p: &Params) -> ([Scalar; 3], [Scalar; 3], [Scalar; 5]) {
    let z = scalar::zero();
    (
        [p.get("a1"), z.clone(), z.clone()],
        [z.clone(), z.clone(), z.clone()],
        [z, p.get("A"), p.get("B"), p.get("C"), p.get("D")],
    )
}

fn central_data(p: &Params) -> ([Scalar; 3], [Scalar; 3], [Scalar; 5]) {
    let z = scalar::zero();
    (
        [p.get("a1"), z.clone(), z.clone()],
        [p.get("b1"), z.clone(), z.clone()],
        [z.clone(), z.clone(), p.get("B"), z, p.get("D")],
    )
}

/// The free cocycle before the unimodularity constraint, with the five
/// rotation-plane parameters named A..E (A scales e1 on (e4, e5)).
fn general_data(p: &Params) -> ([Scalar; 3], [Scalar; 3], [Scalar; 5]) {
    (triple(p, "a"), triple(p, "b"), [p.get("A"), p.get("B"), p.get("C"), p.get("D"), p.get("E")])
}

macro_rules! case2_entry_fns {
    ($build:ident, $expect:ident, $data:ident) => {
        fn $build(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
            let (a, b, rot) = $data(p);
            dim5_case2(a, b, rot)
        }
        fn $expect(p: &Params) -> Expected {
            let (a, b, rot) = $data(p);
            dim5_case2_expected(a, b, rot)
        }
    };
}

case2_entry_fns!(build_case2_family1, expect_case2_family1, family1_data);
case2_entry_fns!(build_case2_family2, expect_case2_family2, family2_data);
case2_entry_fns!(build_case2_family3, expect_case2_family3, family3_data);
case2_entry_fns!(build_case2_zero_a, expect_case2_zero_a, zero_a_data);
case2_entry_fns!(build_case2_zero_b, expect_case2_zero_b, zero_b_data);
case2_entry_fns!(build_case2_central, expect_case2_central, central_data);
case2_entry_fns!(build_case2_general, expect_case2_general, general_data);

fn dim5_predicate(p: &Params) -> bool {
    let (a, b, rot) = general_data(p);
    rot[0] == scalar::zero() && dim5_case2_jacobi(&a, &b, &rot)
}

// ---------------------------------------------------------------------------
// dimension 5, derived ideal of 𝒢* of dimension 4

/// 𝒢*: e1* rotates (e2*, e3*) at rate 1 and (e4*, e5*) at rate λ; only
/// ρ(e1*) is nonzero, so 𝒢 is two-step nilpotent with center ∋ e1.
fn dim5_case4(lambda: &Scalar, rho1: Vec<(Scalar, usize, usize)>) -> Result<(LieBialgebra, InnerProduct)> {
    let mut brackets: Vec<BracketEntry> = Vec::new();
    for (c, j, k) in rho1 {
        brackets.push((j, k, vec![(c, 1)]));
    }
    let g = bracket_table(5, brackets)?;
    let mut xi = rotation_terms(&q(1), 1, 2, 3);
    xi.extend(rotation_terms(lambda, 1, 4, 5));
    let xi = two_forms(5, Space::Primal, xi)?;
    Ok((LieBialgebra::assemble(g, xi)?, InnerProduct::euclidean(5)))
}

fn build_case4_generic(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let lambda = nonzero(p, "lambda")?;
    dim5_case4(&lambda, vec![(p.get("a"), 2, 3), (p.get("b"), 4, 5)])
}

fn build_case4_resonant(p: &Params, sign: i64) -> Result<(LieBialgebra, InnerProduct)> {
    let (a, b, c, d) = (p.get("a"), p.get("b"), p.get("c"), p.get("d"));
    let s = q(sign);
    dim5_case4(
        &s,
        vec![(a, 2, 3), (b.clone(), 2, 4), (c.clone(), 2, 5), (-(&s * &c), 3, 4), (&s * &b, 3, 5), (d, 4, 5)],
    )
}

fn build_case4_lambda_one(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    build_case4_resonant(p, 1)
}

fn build_case4_lambda_minus_one(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    build_case4_resonant(p, -1)
}

// ---------------------------------------------------------------------------
// linear Poisson structures

fn linear_from(l: LieAlgebra) -> Result<(LieBialgebra, InnerProduct)> {
    let m = InnerProduct::euclidean(l.dim());
    hawkins::linear_bialgebra(&l, &m)
}

fn build_linear_milnor(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let lambda = nonzero(p, "lambda")?;
    linear_from(bracket_table(3, vec![(1, 2, vec![(lambda.clone(), 3)]), (1, 3, vec![(-lambda, 2)])])?)
}

fn build_linear_abelian(_: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    linear_from(LieAlgebra::abelian(3))
}

fn build_linear_su2(_: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    linear_from(su2())
}

fn expect_linear_su2(_: &Params) -> Expected {
    Conditions { dual_milnor: false, ..Conditions::HOLD }.expected()
}

fn build_linear_affine(_: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    linear_from(LieAlgebra::from_int_brackets(2, &[(1, 2, &[(1, 2)])])?)
}

fn expect_linear_affine(_: &Params) -> Expected {
    Conditions { dual_milnor: false, dual_unimodular: false, ..Conditions::HOLD }.expected()
}

// ---------------------------------------------------------------------------
// Heisenberg

fn plane_rotation(j: &mut Matrix, x: usize, y: usize, rate: &Scalar) {
    // J x = rate y, J y = −rate x
    j[(y, x)] = rate.clone();
    j[(x, y)] = -rate.clone();
}

fn build_h1_rotation(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let mut j = Matrix::zeros(3, 3);
    plane_rotation(&mut j, 0, 1, &p.get("a"));
    let m = InnerProduct::euclidean(3);
    Ok((hawkins::heisenberg_build(1, &j, &m)?, m))
}

fn build_h2_block_rotation(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let mut j = Matrix::zeros(5, 5);
    plane_rotation(&mut j, 0, 1, &p.get("a"));
    plane_rotation(&mut j, 2, 3, &p.get("b"));
    let m = InnerProduct::euclidean(5);
    Ok((hawkins::heisenberg_build(2, &j, &m)?, m))
}

/// J x1 = y2, J y2 = −x1.
pub fn plane_mixing_j() -> Matrix {
    let mut j = Matrix::zeros(5, 5);
    plane_rotation(&mut j, 0, 3, &q(1));
    j
}

fn build_h2_plane_mixing(_: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let m = InnerProduct::euclidean(5);
    Ok((hawkins::heisenberg_build(2, &plane_mixing_j(), &m)?, m))
}

fn expect_h2_plane_mixing(_: &Params) -> Expected {
    Conditions { metacurvature_vanishes: false, ..Conditions::HOLD }.expected()
}

// ---------------------------------------------------------------------------
// triangular su(2)

fn su2_r(p: &Params) -> MultiVector {
    MultiVector::from_terms(
        3,
        2,
        Space::Primal,
        [(vec![0, 1], p.get("r12")), (vec![0, 2], p.get("r13")), (vec![1, 2], p.get("r23"))],
    )
    .expect("valid indices")
}

fn build_triangular_su2(p: &Params) -> Result<(LieBialgebra, InnerProduct)> {
    let g = su2();
    let xi = coboundary_cocycle(&g, &su2_r(p))?;
    Ok((LieBialgebra::assemble(g, xi)?, InnerProduct::euclidean(3)))
}

fn expect_triangular_su2(p: &Params) -> Expected {
    // r ≠ 0: the dual is a book algebra ([a,c] = a, [b,c] = b up to frame),
    // and d is injective on 1-forms of su(2), so the modular condition fails.
    if ["r12", "r13", "r23"].iter().all(|n| p.is_zero(n)) {
        Conditions::HOLD.expected()
    } else {
        Conditions { dual_milnor: false, dual_unimodular: false, modular_condition: false, ..Conditions::HOLD }
            .expected()
    }
}

// ---------------------------------------------------------------------------

const LAMBDA: ParamSpec = param("lambda", "1", "rotation rate of the cocycle, nonzero");

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "dim2.abelian",
        aliases: &[],
        summary: "ℝ² with the zero cocycle",
        origin: "every two-dimensional Milnor algebra is abelian, so only the trivial Poisson structure survives",
        group: None,
        params: &[],
        constraints: "",
        samples: &[""],
        derived: false,
        build: build_dim2_abelian,
        expect: expect_all,
    },
    CatalogEntry {
        name: "dim2.affine-dual",
        aliases: &[],
        summary: "ℝ² with ξ(e2) = e1∧e2, dual [e1*, e2*] = e2*",
        origin: "non-Milnor dual in dimension two: curvature obstruction",
        group: None,
        params: &[],
        constraints: "",
        samples: &[""],
        derived: true,
        build: build_dim2_affine_dual,
        expect: expect_dim2_affine_dual,
    },
    CatalogEntry {
        name: "dim3.abelian-rotation",
        aliases: &[],
        summary: "ℝ³ abelian, ξ(e2) = −λ e1∧e3, ξ(e3) = λ e1∧e2, Euclidean",
        origin: "three-dimensional classification, abelian branch",
        group: Some("ℝ³ with π = λ ∂x∧(z∂y − y∂z) and the Euclidean metric"),
        params: &[LAMBDA],
        constraints: "lambda ≠ 0",
        samples: &["lambda=1", "lambda=2", "lambda=-1/3"],
        derived: false,
        build: build_dim3_abelian_rotation,
        expect: expect_all,
    },
    CatalogEntry {
        name: "dim3.heisenberg",
        aliases: &[],
        summary: "ℋ₃ with [e1,e2] = e3, ξ(e1) = −λ e3∧e2, ξ(e2) = λ e3∧e1, metric diag(1,1,a)",
        origin: "three-dimensional classification, Heisenberg branch",
        group: Some("H₃ with π = λ (x∂y − y∂x)∧∂z and dx² + dy² + a(dz − x dy)²"),
        params: &[LAMBDA, param("a", "1", "weight of e3 in the metric, positive")],
        constraints: "lambda ≠ 0, a > 0",
        samples: &["lambda=1,a=1", "lambda=1,a=1/2", "lambda=2,a=1", "lambda=2,a=1/2"],
        derived: false,
        build: build_dim3_heisenberg,
        expect: expect_all,
    },
    CatalogEntry {
        name: "dim3.dual-family",
        aliases: &["dim3"],
        summary:
            "general cocycle over the three-dimensional Milnor dual: [e1,e2] = b e2, [e1,e3] = b e3, [e2,e3] = a e1",
        origin: "free parameterization of ρ for the rotation dual; a Lie algebra iff ab = 0, admissible iff b = 0",
        group: None,
        params: &[
            LAMBDA,
            param("a", "0", "ρ(e1*) = a e2*∧e3*"),
            param("b", "0", "ρ(e2*) = b e1*∧e2*, ρ(e3*) = b e1*∧e3*"),
        ],
        constraints: "lambda ≠ 0; a Lie bialgebra iff ab = 0",
        samples: &["lambda=1,a=1", "lambda=2,a=1/2", "lambda=1,b=1", "lambda=2,b=1", "lambda=1,a=1,b=1"],
        derived: false,
        build: build_dim3_dual_family,
        expect: expect_dim3_dual_family,
    },
    CatalogEntry {
        name: "dim4.unimodular.abelian-rotation",
        aliases: &[],
        summary: "ℝ⁴ abelian with ξ(e3) = −λ e1∧e4, ξ(e4) = λ e1∧e3",
        origin: "four-dimensional normal form with a = b = c = d = 0",
        group: Some("ℝ⁴ with π = λ ∂x∧(t∂z − z∂t) and the Euclidean metric"),
        params: &[LAMBDA],
        constraints: "lambda ≠ 0",
        samples: &["lambda=1", "lambda=2"],
        derived: false,
        build: build_dim4_abelian_rotation,
        expect: expect_dim4_normal_form,
    },
    CatalogEntry {
        name: "dim4.unimodular.heisenberg",
        aliases: &[],
        summary: "[e3,e4] = c e1 + d e2, a = b = 0: ℋ₃ ⊕ ℝ",
        origin: "four-dimensional normal form with a = b = 0",
        group: Some("a product of the Heisenberg group with a line"),
        params: &[LAMBDA, param("c", "1", "[e3,e4] component on e1"), param("d", "0", "[e3,e4] component on e2")],
        constraints: "lambda ≠ 0, (c, d) ≠ (0, 0)",
        samples: &["c=1", "d=1", "lambda=2,c=1/2,d=-1"],
        derived: false,
        build: build_dim4_heisenberg,
        expect: expect_dim4_normal_form,
    },
    CatalogEntry {
        name: "dim4.unimodular.euclidean",
        aliases: &[],
        summary: "e2 rotates (e3, e4) at rate b, c = d = 0: e(2) ⊕ ℝ",
        origin: "four-dimensional normal form with a = c = d = 0, b ≠ 0",
        group: Some("ℝ⁴ with (x,y,z,t)·(x',y',z',t') = (x+x', y+y', z + z' cos y + t' sin y, t − z' sin y + t' cos y)"),
        params: &[LAMBDA, param("b", "1", "rotation rate, nonzero")],
        constraints: "lambda ≠ 0, b ≠ 0",
        samples: &["b=1", "lambda=2,b=1/2"],
        derived: false,
        build: build_dim4_euclidean,
        expect: expect_dim4_normal_form,
    },
    CatalogEntry {
        name: "dim4.unimodular.oscillator",
        aliases: &["dim4.unimodular.b≠0.oscillator"],
        summary: "e2 rotates (e3, e4) at rate b, [e3,e4] = c e1: the oscillator algebra",
        origin: "four-dimensional normal form with a = d = 0, b ≠ 0, c ≠ 0",
        group: Some("ℝ²×ℂ with (t,s,z)·(t',s',z') = (t+t', s+s' + ½ Im(z̄ e^{it} z'), z + e^{it} z')"),
        params: &[LAMBDA, param("b", "1", "rotation rate, nonzero"), param("c", "1", "central extension, nonzero")],
        constraints: "lambda ≠ 0, b ≠ 0, c ≠ 0",
        samples: &["b=1,c=1", "lambda=2,b=-1,c=1/2"],
        derived: false,
        build: build_dim4_oscillator,
        expect: expect_dim4_normal_form,
    },
    CatalogEntry {
        name: "dim4.unimodular.simple",
        aliases: &[],
        summary: "e2 rotates (e3, e4) at rate b, [e3,e4] = c e1 + d e2 with d ≠ 0: ℝ ⊕ su(2) or ℝ ⊕ sl(2,ℝ)",
        origin: "four-dimensional normal form with a = 0, b ≠ 0, d ≠ 0",
        group: Some("ℝ × SU(2) or ℝ × the universal cover of SL(2,ℝ)"),
        params: &[
            LAMBDA,
            param("b", "1", "rotation rate, nonzero"),
            param("c", "0", "[e3,e4] component on e1"),
            param("d", "1", "[e3,e4] component on e2, nonzero"),
        ],
        constraints: "lambda ≠ 0, b ≠ 0, d ≠ 0",
        samples: &["b=1,d=1", "b=1,c=1,d=-1", "lambda=1/2,b=2,d=1/2"],
        derived: false,
        build: build_dim4_simple,
        expect: expect_dim4_normal_form,
    },
    CatalogEntry {
        name: "dim4.nonunimodular",
        aliases: &[],
        summary: "e2 scales and rotates (e3, e4): [e2,e3] = a e3 − b e4, [e2,e4] = b e3 + a e4, a ≠ 0",
        origin: "four-dimensional normal form with a ≠ 0, c = d = 0; not unimodular yet all conditions hold",
        group: Some("ℝ⁴ with a spiral product; metric dx² + dy² + e^{−2bx}(dz² + dt²)"),
        params: &[LAMBDA, param("a", "1", "scaling rate, nonzero"), param("b", "0", "rotation rate")],
        constraints: "lambda ≠ 0, a ≠ 0",
        samples: &["a=1", "a=1,b=1", "lambda=2,a=-1/2,b=1"],
        derived: false,
        build: build_dim4_nonunimodular,
        expect: expect_dim4_normal_form,
    },
    CatalogEntry {
        name: "dim4.family",
        aliases: &["dim4"],
        summary: "general cocycle over the four-dimensional Milnor dual (e1* rotating (e3*, e4*))",
        origin: "free parameterization of ρ; Lie iff a = b = 0 or c = d = 0, modular condition iff c = 0",
        group: None,
        params: &[
            LAMBDA,
            param("a", "0", "[e3,e4] component on e1"),
            param("b", "0", "[e3,e4] component on e2"),
            param("c", "0", "scaling by e1 on (e3, e4)"),
            param("d", "0", "scaling by e2 on (e3, e4)"),
            param("e", "0", "rotation by e2 on (e3, e4)"),
        ],
        constraints: "lambda ≠ 0",
        samples: &["", "a=1,e=1", "c=1,d=1,e=1", "a=1,b=1,c=1", "b=1,d=1", "a=1,d=-1"],
        derived: false,
        build: build_dim4_family,
        expect: expect_dim4_family,
    },
    CatalogEntry {
        name: "dim5.case2.family1",
        aliases: &[],
        summary: "b = 0, A = α a3, B = β a3, C = −α a2, D = −β a2",
        origin: "five dimensions, two-dimensional derived dual ideal, first solution family",
        group: None,
        params: &[
            param("a1", "1", ""),
            param("a2", "1", ""),
            param("a3", "1", ""),
            param("alpha", "0", ""),
            param("beta", "0", ""),
        ],
        constraints: "(a2, a3) ≠ (0, 0) for the family to be distinct from the degenerate cases",
        samples: &["", "alpha=1,beta=1", "a1=0,a3=0,alpha=1/2,beta=-1", "a2=1,a3=2,alpha=-1/2,beta=3"],
        derived: true,
        build: build_case2_family1,
        expect: expect_case2_family1,
    },
    CatalogEntry {
        name: "dim5.case2.family2",
        aliases: &[],
        summary: "b2 = b3 = 0, A = C = 0, B = β a3, D = −β a2",
        origin: "five dimensions, two-dimensional derived dual ideal, second solution family",
        group: None,
        params: &[
            param("a1", "1", ""),
            param("a2", "1", ""),
            param("a3", "1", ""),
            param("b1", "0", ""),
            param("beta", "0", ""),
        ],
        constraints: "(a2, a3) ≠ (0, 0)",
        samples: &["", "b1=1,beta=1", "a1=0,a2=0,b1=-2,beta=1/2"],
        derived: true,
        build: build_case2_family2,
        expect: expect_case2_family2,
    },
    CatalogEntry {
        name: "dim5.case2.family3",
        aliases: &[],
        summary: "A = a3/2, B = β a3, C = −a2/2, D = −β a2, b_i = γ a_i",
        origin: "five dimensions, two-dimensional derived dual ideal, third solution family (α = ½)",
        group: None,
        params: &[
            param("a1", "0", ""),
            param("a2", "0", ""),
            param("a3", "1", ""),
            param("beta", "0", ""),
            param("gamma", "0", ""),
        ],
        constraints: "(a2, a3) ≠ (0, 0)",
        samples: &["", "gamma=1", "a1=1,a2=1,a3=1,beta=1,gamma=2", "a2=1,a3=0,gamma=-1"],
        derived: true,
        build: build_case2_family3,
        expect: expect_case2_family3,
    },
    CatalogEntry {
        name: "dim5.case2.zero-a",
        aliases: &[],
        summary: "a = 0, A = C = 0: only [e4,e5] = b1 e1 + b2 e2 + b3 e3 and the B, D rotations",
        origin: "five dimensions, two-dimensional derived dual ideal, degenerate case a1 = a2 = a3 = 0",
        group: None,
        params: &[
            param("b1", "1", ""),
            param("b2", "0", ""),
            param("b3", "0", ""),
            param("B", "0", ""),
            param("D", "0", ""),
        ],
        constraints: "",
        samples: &["", "b1=1,b2=1,b3=1,B=1,D=-1"],
        derived: true,
        build: build_case2_zero_a,
        expect: expect_case2_zero_a,
    },
    CatalogEntry {
        name: "dim5.case2.zero-b",
        aliases: &[],
        summary: "a2 = a3 = 0, b = 0: [e2,e3] = a1 e1 with e2, e3 scaling and rotating (e4, e5)",
        origin: "five dimensions, two-dimensional derived dual ideal, degenerate case a2 = a3 = b = 0",
        group: None,
        params: &[
            param("a1", "1", ""),
            param("A", "0", ""),
            param("B", "0", ""),
            param("C", "0", ""),
            param("D", "0", ""),
        ],
        constraints: "",
        samples: &["", "B=1,D=1", "A=1,C=-1", "a1=0,A=1/2,B=1,C=1,D=2"],
        derived: true,
        build: build_case2_zero_b,
        expect: expect_case2_zero_b,
    },
    CatalogEntry {
        name: "dim5.case2.central",
        aliases: &[],
        summary: "a2 = a3 = 0, b2 = b3 = 0, A = C = 0: [e2,e3] = a1 e1, [e4,e5] = b1 e1, rotations B, D",
        origin: "five dimensions, two-dimensional derived dual ideal, degenerate case with e1 central",
        group: None,
        params: &[param("a1", "1", ""), param("b1", "1", ""), param("B", "0", ""), param("D", "0", "")],
        constraints: "",
        samples: &["", "B=1,D=-1"],
        derived: true,
        build: build_case2_central,
        expect: expect_case2_central,
    },
    CatalogEntry {
        name: "dim5.case2.general",
        aliases: &["dim5"],
        summary: "free cocycle over the dual [e1*,e4*] = e5*, [e1*,e5*] = −e4*, before the unimodularity constraint",
        origin:
            "ρ(e_i*) = a_i e2*∧e3* + b_i e4*∧e5*, ρ(e4*) = A e1*∧e4* + B e2*∧e4* + C e2*∧e5* + D e3*∧e4* + E e3*∧e5*",
        group: None,
        params: &[
            param("a1", "0", ""),
            param("a2", "0", ""),
            param("a3", "0", ""),
            param("b1", "0", ""),
            param("b2", "0", ""),
            param("b3", "0", ""),
            param("A", "0", "e1 scaling on (e4, e5); the modular condition forces A = 0"),
            param("B", "0", ""),
            param("C", "0", ""),
            param("D", "0", ""),
            param("E", "0", ""),
        ],
        constraints: "",
        samples: &["", "A=1", "A=1,b1=1", "a1=1,A=1", "a3=1,B=1/2,b3=1", "a2=1,b2=1"],
        derived: true,
        build: build_case2_general,
        expect: expect_case2_general,
    },
    CatalogEntry {
        name: "dim5.case4.generic",
        aliases: &[],
        summary: "[e2,e3] = a e1, [e4,e5] = b e1; dual rotations at rates 1 and λ ∉ {−1, 1}",
        origin: "five dimensions, four-dimensional derived dual ideal",
        group: Some("ℝ⁵, ℝ² × H₃ or H₅ according to (a, b)"),
        params: &[param("lambda", "2", "second rotation rate, nonzero"), param("a", "1", ""), param("b", "1", "")],
        constraints: "lambda ≠ 0",
        samples: &["", "a=0", "lambda=1/2,a=1,b=0", "lambda=-3,a=0,b=0"],
        derived: false,
        build: build_case4_generic,
        expect: expect_all,
    },
    CatalogEntry {
        name: "dim5.case4.lambda-one",
        aliases: &[],
        summary: "equal rotation rates: ρ(e1*) = a e23* + b(e24* + e35*) + c(e25* − e34*) + d e45*",
        origin: "five dimensions, four-dimensional derived dual ideal, λ = 1",
        group: None,
        params: &[param("a", "1", ""), param("b", "1", ""), param("c", "1", ""), param("d", "1", "")],
        constraints: "",
        samples: &["", "a=0,d=0", "b=2,c=-1"],
        derived: true,
        build: build_case4_lambda_one,
        expect: expect_all,
    },
    CatalogEntry {
        name: "dim5.case4.lambda-minus-one",
        aliases: &[],
        summary: "opposite rotation rates: ρ(e1*) = a e23* + b(e24* − e35*) + c(e25* + e34*) + d e45*",
        origin: "five dimensions, four-dimensional derived dual ideal, λ = −1",
        group: None,
        params: &[param("a", "1", ""), param("b", "1", ""), param("c", "1", ""), param("d", "1", "")],
        constraints: "",
        samples: &["", "a=0,d=0", "b=2,c=-1"],
        derived: true,
        build: build_case4_lambda_minus_one,
        expect: expect_all,
    },
    CatalogEntry {
        name: "linear.milnor",
        aliases: &[],
        summary: "linear Poisson structure on the dual of [e1,e2] = λ e3, [e1,e3] = −λ e2",
        origin: "linear structures are compatible iff the algebra is Milnor",
        group: None,
        params: &[LAMBDA],
        constraints: "lambda ≠ 0",
        samples: &["lambda=1", "lambda=2"],
        derived: false,
        build: build_linear_milnor,
        expect: expect_all,
    },
    CatalogEntry {
        name: "linear.abelian",
        aliases: &[],
        summary: "linear Poisson structure of ℝ³: the zero tensor",
        origin: "abelian algebras are Milnor",
        group: None,
        params: &[],
        constraints: "",
        samples: &[""],
        derived: false,
        build: build_linear_abelian,
        expect: expect_all,
    },
    CatalogEntry {
        name: "linear.su2",
        aliases: &[],
        summary: "linear Poisson structure on su(2)*",
        origin: "su(2) is not Milnor, so the dual curvature does not vanish",
        group: None,
        params: &[],
        constraints: "",
        samples: &[""],
        derived: false,
        build: build_linear_su2,
        expect: expect_linear_su2,
    },
    CatalogEntry {
        name: "linear.affine",
        aliases: &[],
        summary: "linear Poisson structure on the dual of [e1,e2] = e2",
        origin: "a non-unimodular algebra is never Milnor",
        group: None,
        params: &[],
        constraints: "",
        samples: &[""],
        derived: false,
        build: build_linear_affine,
        expect: expect_linear_affine,
    },
    CatalogEntry {
        name: "heisenberg.h1.rotation",
        aliases: &[],
        summary: "ℋ₁ with ξ(u) = z∧Ju, J rotating (x1, y1) at rate a",
        origin: "Heisenberg criterion, n = 1",
        group: None,
        params: &[param("a", "1", "rotation rate")],
        constraints: "",
        samples: &["a=1", "a=3", "a=0"],
        derived: false,
        build: build_h1_rotation,
        expect: expect_all,
    },
    CatalogEntry {
        name: "heisenberg.h2.block-rotation",
        aliases: &[],
        summary: "ℋ₂ with J rotating (x1, y1) at rate a and (x2, y2) at rate b",
        origin: "Heisenberg criterion, n = 2, J preserving the symplectic planes",
        group: None,
        params: &[param("a", "1", ""), param("b", "1", "")],
        constraints: "",
        samples: &["", "a=2,b=-1/2", "a=1,b=0"],
        derived: false,
        build: build_h2_block_rotation,
        expect: expect_all,
    },
    CatalogEntry {
        name: "heisenberg.h2.plane-mixing",
        aliases: &[],
        summary: "ℋ₂ with J x1 = y2, J y2 = −x1",
        origin: "Heisenberg criterion, n = 2: the second condition fails on (x1, y1)",
        group: None,
        params: &[],
        constraints: "",
        samples: &[""],
        derived: true,
        build: build_h2_plane_mixing,
        expect: expect_h2_plane_mixing,
    },
    CatalogEntry {
        name: "triangular.su2",
        aliases: &[],
        summary: "su(2) with ξ = ad r, r = r12 e1∧e2 + r13 e1∧e3 + r23 e2∧e3, bi-invariant metric",
        origin: "compact semisimple coboundary structures are compatible iff [r, r] = 0",
        group: None,
        params: &[param("r12", "0", ""), param("r13", "0", ""), param("r23", "0", "")],
        constraints: "",
        samples: &["", "r12=1", "r12=1,r13=-2,r23=1/2"],
        derived: false,
        build: build_triangular_su2,
        expect: expect_triangular_su2,
    },
];

/// All entries, in a stable order.
pub fn list() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn get(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name || e.aliases.contains(&name))
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Every sample of every entry.
pub fn instantiate_all() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for e in ENTRIES {
        out.extend(e.sample_instances()?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// grid classification

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridAxis {
    pub name: String,
    pub values: Vec<Scalar>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridSpec {
    pub axes: Vec<GridAxis>,
}

impl GridSpec {
    /// `p=lo..hi/step,…`; `p=lo..hi` uses step 1 and `p=v` is a single value.
    /// An axis with lo > hi is empty.
    pub fn parse(spec: &str) -> Result<GridSpec> {
        let mut axes: Vec<GridAxis> = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = |why: &str| Error::InvalidGrid(format!("{item:?}: {why}"));
            let (name, range) = item.split_once('=').ok_or_else(|| bad("expected name=lo..hi/step"))?;
            let name = canonical_param(name.trim()).to_string();
            if axes.iter().any(|a| a.name == name) {
                return Err(bad("parameter given twice"));
            }
            let (range, step) = match range.split_once('/') {
                Some((r, s)) => (r, scalar::parse(s.trim()).map_err(|_| bad("step is not a rational"))?),
                None => (range, scalar::one()),
            };
            if step <= scalar::zero() {
                return Err(bad("step must be positive"));
            }
            let (lo, hi) = match range.split_once("..") {
                Some((lo, hi)) => (lo.trim(), hi.trim()),
                None => (range.trim(), range.trim()),
            };
            let lo = scalar::parse(lo).map_err(|_| bad("lower bound is not a rational"))?;
            let hi = scalar::parse(hi).map_err(|_| bad("upper bound is not a rational"))?;
            let mut values = Vec::new();
            let mut v = lo;
            while v <= hi {
                values.push(v.clone());
                v += &step;
            }
            axes.push(GridAxis { name, values });
        }
        Ok(GridSpec { axes })
    }

    /// Row-major product of the axes. No axes means no points.
    pub fn points(&self) -> Vec<Vec<Scalar>> {
        if self.axes.is_empty() {
            return Vec::new();
        }
        let mut out: Vec<Vec<Scalar>> = vec![Vec::new()];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.values.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        out
    }
}

/// Grid families and their closed-form admissibility predicates.
pub struct GridFamily {
    pub name: &'static str,
    pub entry: &'static str,
    pub predicate: fn(&Params) -> bool,
    pub description: &'static str,
}

fn dim3_predicate(p: &Params) -> bool {
    p.is_zero("b")
}

pub static GRID_FAMILIES: &[GridFamily] = &[
    GridFamily { name: "dim3", entry: "dim3.dual-family", predicate: dim3_predicate, description: "b = 0" },
    GridFamily {
        name: "dim4",
        entry: "dim4.family",
        predicate: dim4_predicate,
        description: "c = 0 and (a = b = 0 or d = 0)",
    },
    GridFamily {
        name: "dim5",
        entry: "dim5.case2.general",
        predicate: dim5_predicate,
        description: "A = 0 and the eight Jacobi equations in (a, b, B, C, D, E)",
    },
];

pub fn grid_family(name: &str) -> Result<&'static GridFamily> {
    GRID_FAMILIES.iter().find(|f| f.name == name || f.entry == name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub family: String,
    pub parameters: Vec<String>,
    pub points: usize,
    #[serde(serialize_with = "serialize_points")]
    pub admissible: Vec<Vec<Scalar>>,
    pub predicate: String,
    /// Admissible but rejected by the predicate.
    #[serde(serialize_with = "serialize_points")]
    pub unexpected: Vec<Vec<Scalar>>,
    /// Accepted by the predicate but not admissible.
    #[serde(serialize_with = "serialize_points")]
    pub missing: Vec<Vec<Scalar>>,
}

impl Classification {
    pub fn diff_is_empty(&self) -> bool {
        self.unexpected.is_empty() && self.missing.is_empty()
    }
}

fn serialize_points<S: serde::Serializer>(pts: &[Vec<Scalar>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = pts.iter().map(|p| p.iter().map(scalar::format).collect()).collect();
    text.serialize(s)
}

/// The conditions a grid point must pass.
pub fn admissible(r: &HawkinsReport) -> bool {
    r.jacobi_ok && r.cocycle_ok && r.dual_jacobi_ok && r.flat && r.metaflat && r.modular_condition && r.dual_unimodular
}

/// Runs [`analyze`] on every grid point (in parallel) and compares the
/// admissible set with the family's predicate. Parameters not on the grid
/// keep their defaults.
pub fn grid_classify(family: &str, grid: &GridSpec) -> Result<Classification> {
    let fam = grid_family(family)?;
    let entry = get(fam.entry)?;
    for axis in &grid.axes {
        if !entry.params.iter().any(|p| p.name == axis.name) {
            return Err(Error::InvalidGrid(format!("family {} has no parameter {:?}", fam.name, axis.name)));
        }
    }
    let names: Vec<String> = grid.axes.iter().map(|a| a.name.clone()).collect();
    let points = grid.points();
    let verdicts: Vec<(bool, bool)> = points
        .par_iter()
        .map(|pt| {
            let params = entry.params_from(names.iter().cloned().zip(pt.iter().cloned()).collect())?;
            let (b, m) = entry.build(&params).map_err(|e| Error::InvalidGrid(format!("point {params}: {e}")))?;
            let report = analyze(&b, &m)?;
            Ok((admissible(&report), (fam.predicate)(&params)))
        })
        .collect::<Result<_>>()?;
    let mut out = Classification {
        family: fam.name.to_string(),
        parameters: names,
        points: points.len(),
        admissible: Vec::new(),
        predicate: fam.description.to_string(),
        unexpected: Vec::new(),
        missing: Vec::new(),
    };
    for (pt, (adm, pred)) in points.into_iter().zip(verdicts) {
        match (adm, pred) {
            (true, true) => out.admissible.push(pt),
            (true, false) => {
                out.admissible.push(pt.clone());
                out.unexpected.push(pt);
            }
            (false, true) => out.missing.push(pt),
            (false, false) => {}
        }
    }
    Ok(out)
}
