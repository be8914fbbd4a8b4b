//! Exact structure and stability computations for module categories of
//! finite quivers with admissible relations.
//!
//! Objects are finite-dimensional representations over `Q` or a prime field
//! `F_p`. The crate computes simples, projective covers and composition
//! series, the pairing between projective and simple classes, beta-slopes,
//! semistability, Harder–Narasimhan filtrations, the numerical invariant
//! `mu_beta` of weighted filtrations, and brute-force censuses of
//! isomorphism classes over small finite fields.

pub mod census;
pub mod error;
pub mod format;
pub mod ktheory;
pub mod linalg;
pub mod presets;
pub mod quiver;
pub mod stability;
pub mod structure;

pub use error::{Error, ParseError, Result};
