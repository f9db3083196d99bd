//! Exact invariant-form calculus on Lie algebras with (almost-)complex
//! structure: the bigraded Chevalley-Eilenberg complex over Q(i), Bott-Chern
//! and Aeppli cohomology with harmonic bases, special Hermitian metric
//! conditions (SKT, astheno-Kahler, balanced, k-th Gauduchon, p-pluriclosed
//! obstructions), geometric Bott-Chern formality, and machine-checkable
//! certificates for triple Aeppli-Bott-Chern-Massey products.
//!
//! Everything runs in exact Gaussian-rational arithmetic. The engine works on
//! the invariant (Lie-algebra) complex only and labels its output
//! accordingly; identification of invariant with full cohomology on compact
//! quotients is a hypothesis the caller brings, not something computed here.

pub mod catalog;
pub mod cohomology;
pub mod conditions;
pub mod error;
pub mod form;
pub mod formality;
pub mod linalg;
pub mod massey;
pub mod metric;
pub mod operators;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod scalar;
pub mod structure;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, MathError, ParseError, Result};
pub use form::{Form, Monomial};
pub use metric::{HermitianMetric, MetricContext};
pub use scalar::GaussianRational;
pub use structure::{StructurePresentation, ValidationReport};
