//! The sets `A(x, φ) = ⋃_n [σ_n(x, φ)]` in `2^m`, with `T = {0, 3, 6, …}`
//! and `φ` a permutation of `T`.
//!
//! `σ_n(x, φ)` copies `x` on the non-`T` positions below `3n` and on
//! `φ(3j)` for `j < n`, and flips `x` at `φ(3n)`.

use serde::Serialize;

use super::cylinder::{Cylinder, CylinderUnion};
use crate::error::{Error, Result};
use crate::setsys::SubsetMask;

/// `|T| = ⌈m/3⌉` for truncation `m`.
pub fn t_len(m: usize) -> usize {
    m.div_ceil(3)
}

/// A point `x ∈ 2^m` and a permutation `φ` of `T`.
///
/// `phi[k] = j` means `φ(3k) = 3j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CantorParams {
    m: usize,
    phi: Vec<usize>,
    x: SubsetMask,
}

impl CantorParams {
    pub fn new(m: usize, phi: Vec<usize>, x: SubsetMask) -> Result<Self> {
        if m == 0 {
            return Err(Error::input("truncation must be positive"));
        }
        if x.len() != m {
            return Err(Error::GroundMismatch {
                expected: m,
                found: x.len(),
            });
        }
        let t = t_len(m);
        if phi.len() != t {
            return Err(Error::input(format!(
                "phi lists {} images, T has {t} elements",
                phi.len()
            )));
        }
        let mut seen = vec![false; t];
        for &j in &phi {
            if j >= t || std::mem::replace(&mut seen[j], true) {
                return Err(Error::input("phi is not a permutation of T"));
            }
        }
        Ok(CantorParams { m, phi, x })
    }

    pub fn identity(m: usize, x: SubsetMask) -> Result<Self> {
        Self::new(m, (0..t_len(m)).collect(), x)
    }

    pub fn truncation(&self) -> usize {
        self.m
    }

    pub fn point(&self) -> &SubsetMask {
        &self.x
    }

    /// `φ` as T-indices.
    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    /// `φ(3k)` as a position in `2^m`.
    pub fn phi_position(&self, k: usize) -> usize {
        3 * self.phi[k]
    }

    /// `(i, φ(i))` for every `i ∈ T`.
    pub fn phi_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.phi.len())
            .map(|k| (3 * k, self.phi_position(k)))
            .collect()
    }

    pub fn from_phi_pairs(m: usize, pairs: &[(usize, usize)], x: SubsetMask) -> Result<Self> {
        let t = t_len(m);
        let mut phi: Vec<Option<usize>> = vec![None; t];
        for &(from, to) in pairs {
            if from % 3 != 0 || to % 3 != 0 || from / 3 >= t || to / 3 >= t {
                return Err(Error::input(format!(
                    "phi pair ({from}, {to}) is not inside T = {{0, 3, …}} below {m}"
                )));
            }
            if phi[from / 3].replace(to / 3).is_some() {
                return Err(Error::input(format!("phi({from}) given twice")));
            }
        }
        // unlisted elements of T are fixed
        let phi = phi
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.unwrap_or(k))
            .collect();
        Self::new(m, phi, x)
    }
}

/// `σ_n(x, φ)`, a cylinder with `3n + 1` fixed positions.
pub fn sigma_n(params: &CantorParams, n: usize) -> Result<Cylinder> {
    let m = params.m;
    if n >= params.phi.len() {
        return Err(Error::Truncation(format!(
            "sigma_{n} needs position {} of T, truncation is {m}",
            3 * n
        )));
    }
    let x = &params.x;
    let mut c = Cylinder::everything(m);
    for i in (0..3 * n).filter(|i| i % 3 != 0) {
        c.fix(i, x.contains(i))?;
    }
    for j in 0..n {
        let pos = params.phi_position(j);
        c.fix(pos, x.contains(pos))?;
    }
    let flip = params.phi_position(n);
    c.fix(flip, !x.contains(flip))?;
    debug_assert_eq!(c.domain_size(), 3 * n + 1);
    Ok(c)
}

/// `[σ_0], …, [σ_{n_max}]`, checked pairwise disjoint: for `n < k` the two
/// cylinders disagree at `φ(3n)`.
pub fn build_a(params: &CantorParams, n_max: usize) -> Result<CylinderUnion> {
    let cylinders = (0..=n_max)
        .map(|n| sigma_n(params, n))
        .collect::<Result<Vec<_>>>()?;
    for n in 0..cylinders.len() {
        let pos = params.phi_position(n);
        for k in n + 1..cylinders.len() {
            if cylinders[n].value_at(pos) == cylinders[k].value_at(pos) {
                return Err(Error::Input(format!(
                    "sigma_{n} and sigma_{k} agree at position {pos}"
                )));
            }
        }
    }
    CylinderUnion::new(params.m, cylinders)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Convergence {
    /// From `index` through `n_max`, every `[σ_n]` fixes `x` on `0..k`.
    Converged { index: usize },
    /// `[σ_{last_failure}]` does not, so no index up to `n_max` works.
    NotReached { last_failure: usize },
}

fn fixes_prefix(c: &Cylinder, x: &SubsetMask, k: usize) -> bool {
    (0..k).all(|i| c.value_at(i) == Some(x.contains(i)))
}

/// Least `n₀ ≤ n_max` with `[σ_n] ⊆ [x|k]` for all `n₀ ≤ n ≤ n_max`.
pub fn convergence_index(params: &CantorParams, k: usize, n_max: usize) -> Result<Convergence> {
    if k >= params.m {
        return Err(Error::input(format!(
            "prefix length {k} must be below the truncation {}",
            params.m
        )));
    }
    let mut index = n_max + 1;
    for n in (0..=n_max).rev() {
        if fixes_prefix(&sigma_n(params, n)?, &params.x, k) {
            index = n;
        } else {
            break;
        }
    }
    Ok(if index > n_max {
        Convergence::NotReached { last_failure: n_max }
    } else {
        Convergence::Converged { index }
    })
}

/// The index used in the disjointness-and-convergence argument: least `n₀`
/// with `{0..k} ⊆ (3n₀ ∖ T) ∪ φ({i ∈ T : i < 3n₀})`. Always at least the
/// true [`convergence_index`].
pub fn proof_convergence_index(params: &CantorParams, k: usize) -> usize {
    let mut inverse = vec![0; params.phi.len()];
    for (from, &to) in params.phi.iter().enumerate() {
        inverse[to] = from;
    }
    (0..k.min(params.m))
        .map(|i| {
            if i % 3 == 0 {
                inverse[i / 3] + 1
            } else {
                (i + 1).div_ceil(3)
            }
        })
        .max()
        .unwrap_or(0)
}

/// Decodes `x`'s leading bits into a permutation of `T` (Lehmer code, one
/// digit of `⌈log2(|T| - k)⌉` bits per step, reduced mod the radix).
/// Exploration only: finite truncations take their permutations as input.
pub fn lehmer_permutation(x: &SubsetMask, t: usize) -> Result<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..t).collect();
    let mut out = Vec::with_capacity(t);
    let mut cursor = 0;
    for k in 0..t {
        let radix = t - k;
        let width = if radix <= 1 {
            0
        } else {
            (usize::BITS - (radix - 1).leading_zeros()) as usize
        };
        if cursor + width > x.len() {
            return Err(Error::Truncation(format!(
                "Lehmer decoding of {t} elements needs more than {} bits",
                x.len()
            )));
        }
        let digit = (0..width).fold(0usize, |acc, b| acc | (x.contains(cursor + b) as usize) << b);
        cursor += width;
        out.push(remaining.remove(digit % radix));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_params(m: usize) -> CantorParams {
        CantorParams::identity(m, SubsetMask::empty(m)).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let p = zero_params(9);
        let s0 = sigma_n(&p, 0).unwrap();
        assert_eq!(s0.domain().to_indices(), vec![0]);
        assert_eq!(s0.value_at(0), Some(true));

        let s1 = sigma_n(&p, 1).unwrap();
        assert_eq!(s1.domain().to_indices(), vec![0, 1, 2, 3]);
        let vals: Vec<bool> = (0..4).map(|i| s1.value_at(i).unwrap()).collect();
        assert_eq!(vals, vec![false, false, false, true]);

        assert!(matches!(sigma_n(&p, 3), Err(Error::Truncation(_))));
    }

    #[test]
    fn build_a_three_cylinders() {
        let u = build_a(&zero_params(9), 2).unwrap();
        assert_eq!(u.len(), 3);
        let sizes: Vec<usize> = u.cylinders().iter().map(|c| c.domain_size()).collect();
        assert_eq!(sizes, vec![1, 4, 7]);
    }

    #[test]
    fn convergence_examples() {
        let p = zero_params(12);
        assert_eq!(
            convergence_index(&p, 0, 3).unwrap(),
            Convergence::Converged { index: 0 }
        );
        assert_eq!(
            convergence_index(&p, 3, 3).unwrap(),
            Convergence::Converged { index: 1 }
        );
        assert_eq!(proof_convergence_index(&p, 3), 1);
        assert!(convergence_index(&p, 12, 3).is_err());

        // a φ that sends 9 to 0 keeps flipping position 0 until n = 3
        let q = CantorParams::new(12, vec![1, 2, 3, 0], SubsetMask::empty(12)).unwrap();
        assert_eq!(
            convergence_index(&q, 1, 2).unwrap(),
            Convergence::NotReached { last_failure: 2 }
        );
        assert_eq!(proof_convergence_index(&q, 1), 4);
    }

    #[test]
    fn params_validation() {
        let x = SubsetMask::empty(9);
        assert!(CantorParams::new(9, vec![0, 0, 1], x.clone()).is_err());
        assert!(CantorParams::new(9, vec![0, 1], x.clone()).is_err());
        let p = CantorParams::from_phi_pairs(9, &[(0, 3), (3, 0)], x.clone()).unwrap();
        assert_eq!(p.phi(), &[1, 0, 2]);
        assert!(CantorParams::from_phi_pairs(9, &[(0, 4)], x).is_err());
    }

    #[test]
    fn lehmer_is_a_permutation() {
        let x = SubsetMask::from_indices(40, [0, 3, 5, 6, 11, 17, 18, 30]).unwrap();
        let mut p = lehmer_permutation(&x, 12).unwrap();
        p.sort_unstable();
        assert_eq!(p, (0..12).collect::<Vec<_>>());
        assert!(lehmer_permutation(&SubsetMask::empty(3), 12).is_err());
    }
}
