//! Exact finitely additive probability measures on finite algebras.

mod atom_claim;
mod defects;
mod measure;
mod separation;

pub use atom_claim::{i1_atom_check, AtomVerdict};
pub use defects::{determination_defect, type_defect, type_defect_capped, DEFAULT_DEFECT_ATOM_CAP};
pub use measure::{
    inverse_power_of_two, nonatomic_threshold, product_measure_on_independent, Measure, Rational,
};
pub use separation::{min_pairwise_separation, separated_independence_probe, SeparationProbe};
