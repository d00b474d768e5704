//! Towers of DG variables over a weighted polynomial ring, with Koszul signs and divided powers.

mod axioms;
mod element;
mod tower;

pub use axioms::{
    check_axioms, random_homogeneous, window_monomials, AxiomConfig, AxiomReport, LawResult,
};
pub use element::AlgebraElement;
pub use tower::{DgVariable, Flavor, Monomial, Tower};
