//! Exact representation theory of Drinfeld doubles `D(G)` of finite groups.
//!
//! The crate is layered bottom-up: [`group`] materializes finite groups as
//! multiplication tables, [`cyclotomic`] provides exact values in `ℚ(ζ_E)`,
//! [`chartable`] computes character tables by the Dixon–Schneider method,
//! [`double`] builds irreducible `D(G)`-modules and their kernels, and
//! [`hopf`] and [`fusion`] classify Hopf subalgebras and fusion subcategories.
//! [`verify`] runs every cross-check against brute-force oracles.

pub mod chartable;
pub mod cyclotomic;
pub mod double;
pub mod error;
pub mod fusion;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
