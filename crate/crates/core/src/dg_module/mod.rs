//! Finite semifree DG modules over a tower, chain maps between them, base
//! change along the sub-tower and tensoring with filtration quotients.

mod base_change;
mod chain_map;
mod semifree;
mod tensor;
mod window;

pub use base_change::{base_change, BaseChange};
pub use chain_map::ChainMap;
pub use semifree::{Generator, ModuleElement, SemifreeModule, Slice};
pub use tensor::tensor_bimodule;
pub use window::{BidegreeWindow, Truncation};

#[cfg(test)]
mod tests;
