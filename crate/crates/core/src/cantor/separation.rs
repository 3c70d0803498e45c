//! Families of `A(x_k, φ_k)` that share their first `p` cylinders and then
//! split on distinct coordinates `3 i_k`, and the exact measures of their
//! pairwise differences.

use num_traits::Zero;
use serde::Serialize;

use super::construction::{build_a, sigma_n, t_len, CantorParams};
use super::cylinder::{diff_measure, Cylinder};
use crate::error::{Error, PreconditionFailure, Result};
use crate::measures::{inverse_power_of_two, Rational};
use crate::setsys::SubsetMask;

/// `(5/7) · 2^{-(3p+2)}`.
pub fn separation_bound(p: usize) -> Rational {
    Rational::new(5.into(), 7.into()) * inverse_power_of_two(3 * p + 2)
}

/// `count` parameter sets over `2^m` with `φ_k(3j) = 3j` for `j < p` and
/// `φ_k(3p) = 3(p + k)`. The points agree below `3p` and differ above it.
pub fn build_separated_family(p: usize, count: usize, m: usize) -> Result<Vec<CantorParams>> {
    let points = (0..count)
        .map(|k| {
            let bits = (0..m).filter(|&pos| {
                if pos < 3 * p {
                    pos % 2 == 1
                } else {
                    ((k + 1) >> ((pos - 3 * p) % 4)) & 1 == 1
                }
            });
            SubsetMask::from_indices(m, bits)
        })
        .collect::<Result<Vec<_>>>()?;
    separated_family_from_points(p, points)
}

/// Same permutations as [`build_separated_family`], with caller-chosen
/// points (which must agree below `3p`).
pub fn separated_family_from_points(p: usize, points: Vec<SubsetMask>) -> Result<Vec<CantorParams>> {
    let Some(first) = points.first().cloned() else {
        return Ok(Vec::new());
    };
    let m = first.len();
    let t = t_len(m);
    if p + points.len() > t {
        return Err(Error::Truncation(format!(
            "p = {p} with {} members needs {} elements of T, truncation {m} has {t}",
            points.len(),
            p + points.len()
        )));
    }
    let shared = SubsetMask::from_indices(m, 0..3 * p)?;
    points
        .into_iter()
        .enumerate()
        .map(|(k, x)| {
            if x.len() != m {
                return Err(Error::GroundMismatch {
                    expected: m,
                    found: x.len(),
                });
            }
            if x.intersection(&shared) != first.intersection(&shared) {
                return Err(Error::input(format!(
                    "point {k} differs from point 0 below position {}",
                    3 * p
                )));
            }
            let mut phi: Vec<usize> = (0..t).collect();
            phi.swap(p, p + k);
            CantorParams::new(m, phi, x)
        })
        .collect()
}

/// What conditions (a) and (b) pin down: the common `σ` (domain size
/// `3p`) and, per member, the split coordinate `3 i_k` with its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationShape {
    pub sigma: Cylinder,
    pub coords: Vec<usize>,
    pub signs: Vec<bool>,
}

/// (a) `[σ_n]` is the same for every member when `n < p`;
/// (b) `[σ_p] = [σ] ∩ {x(3 i_k) = ε_k}` with one common `σ` and pairwise
/// distinct coordinates `3 i_k`.
pub fn check_separation_conditions(p: usize, family: &[CantorParams]) -> Result<SeparationShape> {
    let fail = |msg: String| -> Error { PreconditionFailure::Conditions(msg).into() };
    let Some(first) = family.first() else {
        return Err(Error::input("empty family"));
    };
    let m = first.truncation();
    if let Some(k) = family.iter().position(|q| q.truncation() != m) {
        return Err(Error::GroundMismatch {
            expected: m,
            found: family[k].truncation(),
        });
    }
    for n in 0..p {
        let base = sigma_n(first, n)?;
        for (k, q) in family.iter().enumerate().skip(1) {
            if sigma_n(q, n)? != base {
                return Err(fail(format!("(a): sigma_{n} of member {k} differs from member 0")));
            }
        }
    }
    let mut sigma: Option<Cylinder> = None;
    let mut coords = Vec::with_capacity(family.len());
    let mut signs = Vec::with_capacity(family.len());
    for (k, q) in family.iter().enumerate() {
        let sp = sigma_n(q, p)?;
        let coord = q.phi_position(p);
        let mut rest = SubsetMask::empty(m);
        rest.union_with(sp.domain());
        rest.remove(coord);
        let s = Cylinder::new(rest.clone(), sp.values().intersection(&rest))?;
        match &sigma {
            None => sigma = Some(s),
            Some(common) if *common != s => {
                return Err(fail(format!("(b): member {k} has a different sigma")));
            }
            Some(_) => {}
        }
        if let Some(other) = coords.iter().position(|&c| c == coord) {
            return Err(fail(format!(
                "(b): members {other} and {k} split on the same coordinate {coord}"
            )));
        }
        coords.push(coord);
        signs.push(sp.value_at(coord).expect("coordinate is in the domain"));
    }
    Ok(SeparationShape {
        sigma: sigma.expect("nonempty family"),
        coords,
        signs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub p: usize,
    pub n_max: usize,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub bound: Rational,
    /// `matrix[i][j] = μ(A_i ∖ A_j)`, zero on the diagonal.
    #[serde(serialize_with = "crate::json::ser_rational_matrix")]
    pub matrix: Vec<Vec<Rational>>,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub min: Rational,
    /// The first off-diagonal entry attaining `min`.
    pub argmin: (usize, usize),
    pub holds: bool,
}

/// Checks (a) and (b), builds every `A_k` through `n_max`, and compares
/// each exact `μ(A_i ∖ A_j)` with [`separation_bound`].
pub fn verify_separation_bound(
    p: usize,
    family: &[CantorParams],
    n_max: usize,
) -> Result<SeparationReport> {
    if family.len() < 2 {
        return Err(Error::input("separation needs at least two members"));
    }
    if n_max < p {
        return Err(Error::input(format!("n_max = {n_max} is below p = {p}")));
    }
    check_separation_conditions(p, family)?;
    let unions = family
        .iter()
        .map(|q| build_a(q, n_max))
        .collect::<Result<Vec<_>>>()?;
    let mut matrix = vec![vec![Rational::zero(); unions.len()]; unions.len()];
    let mut best: Option<(usize, usize)> = None;
    for i in 0..unions.len() {
        for j in 0..unions.len() {
            if i == j {
                continue;
            }
            matrix[i][j] = diff_measure(&unions[i], &unions[j])?;
            if best.is_none_or(|(a, b)| matrix[i][j] < matrix[a][b]) {
                best = Some((i, j));
            }
        }
    }
    let argmin = best.expect("two members");
    let min = matrix[argmin.0][argmin.1].clone();
    let bound = separation_bound(p);
    Ok(SeparationReport {
        p,
        n_max,
        holds: min >= bound,
        bound,
        matrix,
        min,
        argmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn bound_values() {
        assert_eq!(separation_bound(0), r(5, 28));
        assert_eq!(separation_bound(1), r(5, 224));
    }

    #[test]
    fn conditions_hold_for_built_family() {
        let fam = build_separated_family(1, 5, 36).unwrap();
        let shape = check_separation_conditions(1, &fam).unwrap();
        assert_eq!(shape.sigma.domain_size(), 3);
        assert_eq!(shape.coords, vec![3, 6, 9, 12, 15]);
    }

    #[test]
    fn bound_holds_p0_and_p1() {
        for p in 0..2 {
            let fam = build_separated_family(p, 5, 36).unwrap();
            let rep = verify_separation_bound(p, &fam, 5).unwrap();
            assert!(rep.holds, "p = {p}: min {}", rep.min);
            for i in 0..5 {
                for j in 0..5 {
                    if i != j {
                        assert!(rep.matrix[i][j] >= rep.bound);
                    }
                }
            }
        }
    }

    #[test]
    fn broken_conditions_detected() {
        let mut fam = build_separated_family(1, 3, 36).unwrap();
        // same split coordinate twice
        fam[2] = fam[1].clone();
        assert!(matches!(
            check_separation_conditions(1, &fam),
            Err(Error::Precondition(PreconditionFailure::Conditions(_)))
        ));
        assert!(matches!(
            build_separated_family(2, 11, 36),
            Err(Error::Truncation(_))
        ));
    }
}
