//! Cylinders in the truncated Cantor space `2^m` under the uniform product
//! measure, the unions `A(x, φ)`, and their separation.

mod construction;
mod cylinder;
mod separation;

pub use construction::{
    build_a, convergence_index, lehmer_permutation, proof_convergence_index, sigma_n, t_len,
    CantorParams, Convergence,
};
pub use cylinder::{
    diff_measure, diff_measure_inclusion_exclusion, union_measure, Cylinder, CylinderUnion,
    INCLUSION_EXCLUSION_BUDGET,
};
pub use separation::{
    build_separated_family, check_separation_conditions, separated_family_from_points,
    separation_bound, verify_separation_bound, SeparationReport, SeparationShape,
};
