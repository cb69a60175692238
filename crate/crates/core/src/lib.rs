//! Exact toolkit for metric Lie bialgebras.
//!
//! Given a Lie algebra 𝒢 with a 1-cocycle ξ: 𝒢 → Λ²𝒢 and a positive
//! definite inner product, the library decides whether the induced
//! Riemannian Poisson–Lie structure is flat, metaflat and unimodular, and
//! carries a catalog of classified low-dimensional examples.
//!
//! All predicates are computed over the rationals. Floating point is only
//! used by [`normal_form`], which is presentational.

pub mod bialgebra;
pub mod catalog;
pub mod document;
pub mod error;
pub mod hawkins;
pub mod lie;
pub mod linalg;
pub mod metric;
pub mod multilinear;
pub mod normal_form;
pub mod scalar;

pub use bialgebra::{
    build_bialgebra, coboundary_cocycle, cocycle_defect, cybe, dual_bracket, dual_cocycle, gybe_holds, Cocycle,
    LieBialgebra,
};
pub use error::{Error, Result};
pub use hawkins::{analyze, HawkinsReport, StrongCompatibility};
pub use lie::LieAlgebra;
pub use linalg::{Matrix, Subspace};
pub use metric::{InnerProduct, MilnorDecomposition};
pub use multilinear::{interior, pairing, MultiVector, Space};
pub use scalar::Scalar;

pub(crate) fn serialize_scalars<S: serde::Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    let text: Vec<String> = v.iter().map(scalar::format).collect();
    text.serialize(s)
}
