//! Numerical and exact-algebraic laboratory for higher-order bulk-boundary
//! correspondence: lattice patterns and their transversals, symmetric
//! tight-binding models, near-zero spectra, topological pairings, and the
//! spectral sequence of a cofiltration over finitely generated abelian groups.

pub mod error;
pub mod invariants;
pub mod ktheory;
pub mod linalg;
pub mod models;
pub mod patterns;
pub mod spectral;
pub mod symmetry;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
