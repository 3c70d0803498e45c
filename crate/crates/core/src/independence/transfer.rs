use serde::Serialize;

use super::cells::{is_independent, IndependenceVerdict, SignCell};
use crate::error::{Error, PreconditionFailure, Result};
use crate::setsys::{SetFamily, SubsetMask};

/// Result of moving independence from `2^{n+1}` subsets of `G` to `n+1`
/// points of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualTransfer {
    /// `g_1, …, g_{n+1}`
    pub points: Vec<usize>,
    /// `Ĝ_i = { k : g_i ∈ A_k }` over the index set `{0, …, 2^{n+1}-1}`.
    pub dual: SetFamily,
}

/// `r_i(k)`: bit `i` of `k`, i.e. `φ` is the binary encoding of the
/// (0-based) index `k` and `r_i` its `i`-th projection.
pub fn encoding_sign(i: usize, k: usize) -> bool {
    k >> i & 1 == 1
}

/// Picks `g_i` as the least point of `⋂_k A_k^{r_i(k)}`. Those cells are
/// nonempty by independence, and the sets `Ĝ_i` are then the coordinate
/// sets of the cube `{0,1}^{n+1}`, hence independent.
pub fn dual_transfer(sets: &SetFamily, n: usize) -> Result<DualTransfer> {
    if n > 3 {
        return Err(Error::cap("dual_transfer (n)", n, 3));
    }
    let count = 1usize << (n + 1);
    if sets.len() != count {
        return Err(Error::input(format!(
            "dual_transfer with n={n} needs {count} sets, got {}",
            sets.len()
        )));
    }
    if let IndependenceVerdict::Dependent { cell } = is_independent(sets)? {
        return Err(PreconditionFailure::Dependent { cell }.into());
    }
    let mut points = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let cell = SignCell((0..count).map(|k| encoding_sign(i, k)).collect());
        let m = super::cells::cell_mask(sets, &cell)?;
        points.push(m.lowest().expect("independent family has nonempty cells"));
    }
    let dual = points
        .iter()
        .map(|&g| SubsetMask::from_indices(count, (0..count).filter(|&k| sets[k].contains(g))))
        .collect::<Result<Vec<_>>>()?;
    Ok(DualTransfer {
        points,
        dual: SetFamily::new(count, dual)?,
    })
}
