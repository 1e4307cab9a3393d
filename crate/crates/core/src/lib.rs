//! Cyclic constant dimension subspace codes built from trinomial and binomial
//! subspace polynomials over finite fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`ff`]: prime fields and extension towers with subfield embeddings,
//! * [`linalg`]: dense linear algebra over the base field F_q,
//! * [`linpoly`]: linearized polynomials as a skew polynomial ring,
//!   splitting-field degrees, root spaces and annihilators,
//! * [`subspace`]: canonical F_q-subspaces of F_{q^N}, distance and shifts,
//! * [`codes`]: orbit codes, the pairwise union condition and
//!   exact or sampled certification,
//! * [`tables`]: the two splitting-degree tables for the reference instances.

pub mod codes;
pub mod error;
pub mod ff;
mod fpoly;
pub mod io;
pub mod linalg;
pub mod linpoly;
pub mod nt;
pub mod rng;
pub mod subspace;
pub mod tables;

pub use error::{Error, Result};
pub use ff::{FieldCtx, FieldElement};
pub use linalg::MatrixFq;


pub use codes::{CertReport, CodeSpec, Generator, OrbitCode, Verdict};
pub use linpoly::{LinearizedPoly, SkewQuotRem};
pub use subspace::Subspace;
