//! Exact computations for divisorial semidegrees at infinity on the affine
//! plane.
//!
//! A semidegree is presented by a generic descending Puiseux series
//! `phi(x) + xi * x^r` ([`GenericDps`]). From it this crate computes the key
//! forms ([`compute_key_forms`]), decides whether the associated primitive
//! normal compactification is algebraic ([`decide_algebraic`]), classifies
//! augmented dual graphs by their semigroup conditions ([`classify`]) and
//! builds the resolution dual graphs themselves ([`resolution_graph`]).
//!
//! All arithmetic is over exact rationals.

pub mod algebra;
pub mod decide;
mod error;
pub mod graphs;
pub mod keyforms;
pub mod puiseux;
pub mod semigroup;

pub use algebra::{LaurentPoly, XiPoly, XiSeries};
pub use decide::{contractible, cousin_decide, decide_algebraic, Decision, Verdict};
pub use error::{Error, Result};
pub use graphs::{
    classify, hj_expansion, resolution_graph, DualGraph, GraphClass, GraphKind, Mark,
};
pub use keyforms::{
    compute_key_forms, essential_key_values, represent, verify_key_properties,
    EssentialValues, KeyFormSeq, SemigroupRepr,
};
pub use puiseux::{DPuiseuxPoly, Exponent, FormalPuiseuxPairs, GenericDps};
