//! Hom complexes, Ext dimensions, null-homotopies and the naive-lifting test.

mod ext;
mod hom;
mod lift;

pub use ext::{ext_dims, natural_window, null_homotopy, tensor_filtration_quotient, ExtTable, NullHomotopy};
pub use hom::{hom_complex_window, HomBasis, HomComplex, HomWindow};
pub use lift::{minimal_lift_window, naive_lift_check, naive_lift_check_in, Equation, SplitResult};
