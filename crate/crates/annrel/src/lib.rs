//! Exact leading-term calculus for annihilating fields of affine Lie
//! algebra modules.
//!
//! Everything is computed over the rationals with no floating point. The
//! crate builds the simple Lie algebras sl(n), their affinizations at a
//! fixed level, the colored-partition order, straightening onto the
//! monomial basis, vertex-operator coefficients of the generating
//! relations, and the rank comparisons that detect spanning sets of
//! relations degree by degree.

pub mod config;
pub mod liealg;
pub mod linalg;
pub mod modules;
pub mod partitions;
pub mod pbw;
pub mod rankcheck;
pub mod rat;
pub mod report;
pub mod verma;
pub mod voa;
pub mod weyl;

// The guide chapters double as doc-tests so their snippets cannot rot.
#[doc = include_str!("../../../book/src/partitions-and-order.md")]
pub mod guide_partitions_and_order {}
#[doc = include_str!("../../../book/src/straightening.md")]
pub mod guide_straightening {}
#[doc = include_str!("../../../book/src/relations-and-kernels.md")]
pub mod guide_relations_and_kernels {}
#[doc = include_str!("../../../book/src/rank-scans.md")]
pub mod guide_rank_scans {}
