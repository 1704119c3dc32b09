//! Exact computation with finite-dimensional Hopf group-coalgebras.
//!
//! A Hopf π-coalgebra over a finite group π is stored by structure
//! constants: one algebra `H_α` per group element, comultiplications
//! `Δ_{α,β}: H_{αβ} → H_α ⊗ H_β`, a counit on `H_1` and antipodes
//! `S_α: H_α → H_{α⁻¹}`. The library verifies every axiom exactly, computes
//! integrals, distinguished grouplikes and Drinfeld elements, and checks the
//! identities that relate them.

#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

pub mod comodules;
pub mod convolution;
pub mod crossed;
pub mod error;
pub mod field;
pub mod format;
pub mod group;
pub mod hopf;
pub mod instances;
pub mod integrals;
pub mod linalg;
pub mod pipeline;
pub mod report;
pub mod traces;

pub use crossed::{Crossing, Decorated, RMatrix};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use group::FiniteGroup;
pub use hopf::{GradedCovector, GradedVector, HopfPiData};
pub use linalg::{Bilinear, LinearMap, Vector};
pub use report::{Check, Report, Status};
