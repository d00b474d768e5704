//! Exact computations with divided-power DG algebras, their enveloping
//! algebras and diagonal ideals, and semifree DG modules, culminating in a
//! decision procedure for naive liftability.

pub mod base_ring;
pub mod dg_algebra;
pub mod dg_module;
pub mod envelope;
pub mod homological;
pub mod session;
pub mod tate;
mod error;
mod format;

pub use error::{Error, Result};
