//! Finite set systems, finite Boolean algebras and minimal extensions.

mod algebra;
mod family;
mod mask;
mod minimal;

pub use algebra::FiniteAlgebra;
pub use family::SetFamily;
pub use mask::{Ones, SubsetMask};
pub use minimal::{
    count_intermediate_algebras, is_minimal_extension, minimal_by_quantifier,
    verify_minimal_chain, ChainVerdict, ExtensionVerdict, DEFAULT_INTERMEDIATE_ATOM_CAP,
};
