//! Finite defect versions of "countable type" and "strongly countably
//! determined": how far the subalgebra generated by `sub` is from
//! approximating every element of the measure's algebra.
//!
//! Both defects split over the atoms `s` of `⟨sub⟩`: an element `a` meets
//! each `s` in some union of fine atoms, and both quantities add up over
//! `s`. So the maximum over `a` is a sum of per-`s` maxima, and only the
//! fine atoms inside one `s` are ever enumerated together.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::measure::{Measure, Rational};
use crate::error::{Error, Result};
use crate::setsys::{FiniteAlgebra, SetFamily};

/// Most fine atoms allowed inside one atom of `⟨sub⟩` for the type defect
/// (it enumerates `2^k` unions).
pub const DEFAULT_DEFECT_ATOM_CAP: usize = 20;

/// Weights of the fine atoms, grouped by the atom of `⟨sub⟩` holding them.
fn groups(mu: &Measure, sub: &SetFamily) -> Result<Vec<Vec<Rational>>> {
    if sub.ground_size() != mu.algebra().ground_size() {
        return Err(Error::GroundMismatch {
            expected: mu.algebra().ground_size(),
            found: sub.ground_size(),
        });
    }
    mu.check_family(sub)?;
    let coarse = FiniteAlgebra::generate(sub);
    let mut out = vec![Vec::new(); coarse.atom_count()];
    for (atom, w) in mu.algebra().atoms().iter().zip(mu.weights()) {
        let s = coarse
            .atoms()
            .iter()
            .position(|c| atom.is_subset(c))
            .expect("sub's algebra is coarser");
        out[s].push(w.clone());
    }
    Ok(out)
}

/// `max_a min_{b ∈ ⟨sub⟩} μ(a Δ b)`.
///
/// Within one coarse atom `s`, the best `b` takes `s` or leaves it, so the
/// contribution is `min(μ(a∩s), μ(s∖a))`; the worst `a` makes that as large
/// as possible.
pub fn type_defect(mu: &Measure, sub: &SetFamily) -> Result<Rational> {
    type_defect_capped(mu, sub, DEFAULT_DEFECT_ATOM_CAP)
}

pub fn type_defect_capped(mu: &Measure, sub: &SetFamily, max_atoms: usize) -> Result<Rational> {
    let mut total = Rational::zero();
    for g in groups(mu, sub)? {
        if g.len() > max_atoms {
            return Err(Error::cap(
                "type_defect (fine atoms inside one coarse atom)",
                g.len(),
                max_atoms,
            ));
        }
        total += best_balanced_split(&g);
    }
    Ok(total)
}

/// `max_T min(w(T), w(all) - w(T))` over subsets `T`, by a Gray-code walk on
/// integer weights over a common denominator.
fn best_balanced_split(weights: &[Rational]) -> Rational {
    if weights.len() < 2 {
        return Rational::zero();
    }
    let denom = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let ints: Vec<BigInt> = weights
        .iter()
        .map(|w| w.numer() * (&denom / w.denom()))
        .collect();
    let total: BigInt = ints.iter().sum();
    let mut sum = BigInt::zero();
    let mut in_set = vec![false; ints.len()];
    let mut best = BigInt::zero();
    for step in 1u64..1 << ints.len() {
        let flip = step.trailing_zeros() as usize;
        if in_set[flip] {
            sum -= &ints[flip];
        } else {
            sum += &ints[flip];
        }
        in_set[flip] = !in_set[flip];
        let other = &total - &sum;
        let v = if sum < other { &sum } else { &other };
        if *v > best {
            best = v.clone();
        }
    }
    Rational::new(best, denom)
}

/// `max_a ( μ(a) − max{ μ(c) : c ∈ ⟨sub⟩, c ⊆ a } )`.
///
/// The inner approximation keeps exactly the coarse atoms inside `a`, so
/// the defect collects `μ(a ∩ s)` over the coarse atoms `s` that `a` meets
/// but does not contain. Inside `s` that is largest when `a` drops only the
/// lightest fine atom, and zero when `s` is a single fine atom.
pub fn determination_defect(mu: &Measure, sub: &SetFamily) -> Result<Rational> {
    let mut total = Rational::zero();
    for g in groups(mu, sub)? {
        if g.len() >= 2 {
            let sum: Rational = g.iter().sum();
            let lightest = g.iter().min().expect("nonempty");
            total += sum - lightest;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsys::SubsetMask;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn full_generation_has_no_defect() {
        let mu = Measure::uniform(FiniteAlgebra::powerset(3));
        let sub = SetFamily::from_index_lists(3, [vec![0], vec![1]]).unwrap();
        assert!(type_defect(&mu, &sub).unwrap().is_zero());
        assert!(determination_defect(&mu, &sub).unwrap().is_zero());
    }

    #[test]
    fn trivial_sub_examples() {
        let trivial = SetFamily::empty(2);
        let uni = Measure::uniform(FiniteAlgebra::powerset(2));
        assert_eq!(type_defect(&uni, &trivial).unwrap(), r(1, 2));
        assert_eq!(determination_defect(&uni, &trivial).unwrap(), r(1, 2));

        let skew = Measure::new(FiniteAlgebra::powerset(2), vec![r(1, 4), r(3, 4)]).unwrap();
        assert_eq!(type_defect(&skew, &trivial).unwrap(), r(1, 4));
    }

    #[test]
    fn rejects_members_outside_algebra() {
        let mu = Measure::uniform(FiniteAlgebra::trivial(3));
        let sub = SetFamily::new(3, vec![SubsetMask::from_indices(3, [0]).unwrap()]).unwrap();
        assert!(type_defect(&mu, &sub).is_err());
    }

    #[test]
    fn cap_applies() {
        let mu = Measure::uniform(FiniteAlgebra::powerset(5));
        assert!(matches!(
            type_defect_capped(&mu, &SetFamily::empty(5), 4),
            Err(Error::ResourceCap { .. })
        ));
    }
}
