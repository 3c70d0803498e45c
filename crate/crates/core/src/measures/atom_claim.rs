use serde::Serialize;

use crate::error::{PreconditionFailure, Result};
use crate::independence::max_independent;
use crate::setsys::{FiniteAlgebra, SetFamily, SubsetMask};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AtomVerdict {
    /// `b1 ∖ b0` is a single atom of `⟨G0⟩`.
    Atom {
        b0: SubsetMask,
        b1: SubsetMask,
        atom: SubsetMask,
    },
    GInAlgebra,
    /// Counterexample: the gap is not one atom.
    Violated { b0: SubsetMask, b1: SubsetMask },
}

/// With `B = ⟨G0⟩`, `b0` the largest element of `B` inside `g` and `b1` the
/// smallest containing it: if `G0 ∪ {g}` has no independent pair and
/// `g ∉ B`, then `b1 ∖ b0` is an atom of `B`.
///
/// The gate is checked first; an independent pair is reported with `g` at
/// index `G0.len()`.
pub fn i1_atom_check(g0: &SetFamily, g: &SubsetMask) -> Result<AtomVerdict> {
    g0.check_mask(g)?;
    let mut all = g0.clone();
    all.push(g.clone())?;
    let gate = max_independent(&all, Some(2))?;
    if gate.size >= 2 {
        return Err(PreconditionFailure::IndependentSubfamily {
            indices: gate.members,
        }
        .into());
    }
    let b = FiniteAlgebra::generate(g0);
    if b.contains(g)? {
        return Ok(AtomVerdict::GInAlgebra);
    }
    let b0 = b.inner(g)?;
    let b1 = b.outer(g)?;
    let gap = b1.difference(&b0);
    if b.atoms().contains(&gap) {
        Ok(AtomVerdict::Atom { b0, b1, atom: gap })
    } else {
        Ok(AtomVerdict::Violated { b0, b1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn m(n: usize, v: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn interval_example() {
        let g0 = SetFamily::from_index_lists(6, [0..2, 0..4]).unwrap();
        match i1_atom_check(&g0, &m(6, &[0, 1, 2])).unwrap() {
            AtomVerdict::Atom { b0, b1, atom } => {
                assert_eq!(b0, m(6, &[0, 1]));
                assert_eq!(b1, m(6, &[0, 1, 2, 3]));
                assert_eq!(atom, m(6, &[2, 3]));
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn member_of_algebra() {
        let g0 = SetFamily::from_index_lists(6, [0..2, 0..4]).unwrap();
        assert_eq!(
            i1_atom_check(&g0, &m(6, &[2, 3])).unwrap(),
            AtomVerdict::GInAlgebra
        );
    }

    #[test]
    fn gate_rejects_independent_pair() {
        let g0 = SetFamily::from_index_lists(4, [vec![0, 1]]).unwrap();
        assert_eq!(
            i1_atom_check(&g0, &m(4, &[0, 2])),
            Err(Error::Precondition(PreconditionFailure::IndependentSubfamily {
                indices: vec![0, 1]
            }))
        );
    }
}
