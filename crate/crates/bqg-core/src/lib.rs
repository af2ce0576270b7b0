//! Construction and numerical verification of bicrossed-product quantum
//! groups built from matched pairs of groups.
//!
//! The crate is organized along the pipeline:
//!
//! * [`groups`] — multiplication-table groups, subgroup search, exact
//!   factorizations, character duals;
//! * [`matchedpair`] — the mutual actions α, β derived from a factorization
//!   (finite lookup tables) or given in closed form (two analytic presets);
//! * [`bicrossed`] — the multiplicative unitary, comultiplication, slice
//!   algebras and Haar weight of the associated quantum group;
//! * [`action`] — the canonical action on the function algebra of the dual
//!   of G₁ and its properties: comodule law, density, ergodicity,
//!   faithfulness, the isometry criterion, and decay of Fourier-side
//!   matrix coefficients for the analytic presets;
//! * [`linalg`] — the supporting exact permutation calculus and dense/sparse
//!   complex linear algebra;
//! * [`report`] — machine-readable verdicts.

pub mod action;
pub mod bicrossed;
pub mod groups;
pub mod linalg;
pub mod matchedpair;
pub mod quad;
pub mod report;

pub use groups::{exact_factorizations, CharacterGroup, ExactFactorization, FiniteGroup, Subgroup};
pub use linalg::{ComplexMatrix, OperatorSpace, PointPerm, SparseMatrix, TensorShape};
pub use matchedpair::{AnalyticMatchedPair, FiniteMatchedPair};
pub use bicrossed::{BicrossedAlgebra, MultiplicativeUnitary};
pub use action::ActionGamma;
pub use report::{PropertyVerdict, VerificationReport};
