//! The enveloping algebra `B^e = B^o ⊗_A B`, the diagonals `ξ_i`, coordinates
//! over `Mon(Ω)` and the filtration quotients of the diagonal ideal.

mod element;
mod omega;
mod quotient;

pub use element::{xi_monomial, xi_power, EnvMono, EnvelopeElement};
pub(crate) use element::relative_monomial;
pub use omega::{
    envelope_basis, filtration_level, format_omega, omega_bidegree, omega_level, omega_monomials,
    to_omega, OmegaCoordinates,
};
pub use quotient::{quotient_module, QuotientModule};
