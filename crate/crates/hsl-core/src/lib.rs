//! Exact homological algebra over graded hypersurface rings.
//!
//! The crate computes minimal free resolutions, Tor modules, and numerical
//! invariants (lengths, dimensions, stable intersection multiplicities) for
//! finitely generated graded modules over `S/(f)`, where `S` is a weighted
//! polynomial ring over `Q` or a prime field and `f` is one homogeneous
//! equation. Everything is exact arithmetic; nothing is floating point.

pub mod corpus;
pub mod error;
pub mod field;
pub mod groebner;
pub mod invariants;
pub mod matrix;
pub mod modules;
pub mod monomial;
pub mod output;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod script;

pub use error::{EngineError, Result};

/// Version string reported by the CLI and the C interface.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
