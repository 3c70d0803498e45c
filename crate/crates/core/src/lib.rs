//! Exact, witness-producing combinatorics for finite Boolean algebras and
//! set systems.

pub mod cantor;
pub mod error;
pub mod gen;
pub mod harness;
pub mod independence;
pub mod json;
pub mod measures;
pub mod setsys;

pub use error::{Error, PreconditionFailure, Result};
