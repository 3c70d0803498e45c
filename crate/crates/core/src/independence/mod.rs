//! Independence, shattering and VC dimension, the Sauer–Shelah machinery,
//! Boolean polynomial images, and the dual transfer of independence.

mod cells;
mod pattern;
mod poly;
mod sauer;
mod transfer;

pub use cells::{
    cell_mask, is_independent, is_independent_capped, max_independent,
    max_independent_with_budget, IndependenceVerdict, MaxIndependent, SignCell,
    DEFAULT_INDEPENDENCE_CAP, DEFAULT_SEARCH_BUDGET,
};
pub use pattern::{
    largest_shattered, shattered, transpose, vc_dimension, PatternFamily, VcWitness,
    DEFAULT_SHATTER_CAP,
};
pub use poly::{
    check_poly_bound, check_poly_bound_strict, poly_image, poly_image_traced,
    BooleanPolynomial, Expr, PolyBoundVerdict, PolyImage, DEFAULT_TUPLE_CAP,
};
pub use sauer::{
    binomial_prefix_sum, i_threshold, sauer_bound, sauer_check, sauer_shelah_extract,
    threshold_holds, SauerCheck,
};
pub use transfer::{dual_transfer, encoding_sign, DualTransfer};
