//! Minimal one-step extensions `B ≤ B(x)` and chains of them.
//!
//! In the finite case `B(x)` is minimal over `B` iff `x` splits exactly one
//! atom of `B`. Two further routes are kept for cross-checking: the
//! quantifier form (for every `b ∈ B`, `x ∩ b ∈ B` or `x ∩ b^c ∈ B`), and a
//! count of the algebras between `B` and `B(x)`.

use serde::Serialize;

use super::{FiniteAlgebra, SetFamily, SubsetMask};
use crate::error::{Error, PreconditionFailure, Result};

pub const DEFAULT_INTERMEDIATE_ATOM_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ExtensionVerdict {
    AlreadyMember,
    Minimal,
    /// `witness` is the least `b ∈ B` with `x ∩ b ∉ B` and `x ∩ b^c ∉ B`.
    NotMinimal { witness: SubsetMask },
}

impl ExtensionVerdict {
    pub fn is_minimal(&self) -> bool {
        matches!(self, ExtensionVerdict::Minimal)
    }
}

/// Split-atom route.
///
/// When `x` splits two or more atoms, every qualifying `b` contains a split
/// atom, and a single split atom already qualifies, so the least witness is
/// the least split atom.
pub fn is_minimal_extension(b: &FiniteAlgebra, x: &SubsetMask) -> Result<ExtensionVerdict> {
    let split = b.split_atoms(x)?;
    Ok(match split.len() {
        0 => ExtensionVerdict::AlreadyMember,
        1 => ExtensionVerdict::Minimal,
        _ => ExtensionVerdict::NotMinimal {
            witness: split
                .iter()
                .map(|&i| b.atoms()[i].clone())
                .min()
                .expect("nonempty"),
        },
    })
}

/// Quantifier route: tests every element of `B`. Exponential in the atom
/// count of `B`, bounded by `max_atoms`.
pub fn minimal_by_quantifier(
    b: &FiniteAlgebra,
    x: &SubsetMask,
    max_atoms: usize,
) -> Result<ExtensionVerdict> {
    if b.contains(x)? {
        return Ok(ExtensionVerdict::AlreadyMember);
    }
    let mut witness: Option<SubsetMask> = None;
    for e in b.elements(max_atoms)? {
        let inside = x.intersection(&e);
        let outside = x.difference(&e);
        if !b.contains(&inside)?
            && !b.contains(&outside)?
            && witness.as_ref().is_none_or(|w| e < *w)
        {
            witness = Some(e);
        }
    }
    Ok(match witness {
        None => ExtensionVerdict::Minimal,
        Some(witness) => ExtensionVerdict::NotMinimal { witness },
    })
}

/// Number of algebras `C` with `B ⊆ C ⊆ B(x)`, both ends included.
///
/// Enumerates the partitions of the atoms of `B(x)` (restricted-growth
/// strings) and keeps those whose blocks are unions of atoms that never
/// straddle two atoms of `B`; each such partition is the atom set of exactly
/// one intermediate algebra. Blocks that straddle are pruned as soon as they
/// appear.
pub fn count_intermediate_algebras(
    b: &FiniteAlgebra,
    x: &SubsetMask,
    max_atoms: usize,
) -> Result<u64> {
    if b.contains(x)? {
        return Err(PreconditionFailure::AlreadyMember.into());
    }
    let ext = b.extend(x)?;
    if ext.atom_count() > max_atoms {
        return Err(Error::cap(
            "intermediate algebra count (atoms of B(x))",
            ext.atom_count(),
            max_atoms,
        ));
    }
    // parent[j] = atom of B containing atom j of B(x)
    let parent: Vec<usize> = ext
        .atoms()
        .iter()
        .map(|e| {
            b.atoms()
                .iter()
                .position(|a| e.is_subset(a))
                .expect("B(x) refines B")
        })
        .collect();

    fn walk(parent: &[usize], j: usize, block_parent: &mut Vec<usize>) -> u64 {
        if j == parent.len() {
            return 1;
        }
        let mut total = 0;
        for blk in 0..block_parent.len() {
            if block_parent[blk] == parent[j] {
                total += walk(parent, j + 1, block_parent);
            }
        }
        block_parent.push(parent[j]);
        total += walk(parent, j + 1, block_parent);
        block_parent.pop();
        total
    }

    Ok(walk(&parent, 0, &mut Vec::new()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ChainVerdict {
    Ok {
        /// Positions that extended the algebra (the rest were already members).
        extending: Vec<usize>,
        final_atoms: usize,
    },
    FailsAt {
        index: usize,
        generator: SubsetMask,
        witness: SubsetMask,
    },
}

impl ChainVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, ChainVerdict::Ok { .. })
    }
}

/// Adds `gens` one at a time to the trivial algebra, skipping members that
/// are already in the current algebra; every other step must be minimal.
pub fn verify_minimal_chain(gens: &SetFamily) -> Result<ChainVerdict> {
    let mut current = FiniteAlgebra::trivial(gens.ground_size());
    let mut extending = Vec::new();
    for (index, g) in gens.iter().enumerate() {
        match is_minimal_extension(&current, g)? {
            ExtensionVerdict::AlreadyMember => {}
            ExtensionVerdict::Minimal => {
                current = current.extend(g)?;
                extending.push(index);
            }
            ExtensionVerdict::NotMinimal { witness } => {
                return Ok(ChainVerdict::FailsAt {
                    index,
                    generator: g.clone(),
                    witness,
                })
            }
        }
    }
    Ok(ChainVerdict::Ok {
        extending,
        final_atoms: current.atom_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, v: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(n, v.iter().copied()).unwrap()
    }

    fn two_blocks() -> FiniteAlgebra {
        FiniteAlgebra::from_atoms(4, vec![m(4, &[0, 1]), m(4, &[2, 3])]).unwrap()
    }

    #[test]
    fn minimal_examples() {
        let b = two_blocks();
        assert_eq!(
            is_minimal_extension(&b, &m(4, &[0])).unwrap(),
            ExtensionVerdict::Minimal
        );
        assert_eq!(
            is_minimal_extension(&b, &m(4, &[0, 2])).unwrap(),
            ExtensionVerdict::NotMinimal {
                witness: m(4, &[0, 1])
            }
        );
        assert_eq!(
            is_minimal_extension(&FiniteAlgebra::trivial(2), &m(2, &[0])).unwrap(),
            ExtensionVerdict::Minimal
        );
        assert_eq!(
            is_minimal_extension(&b, &m(4, &[2, 3])).unwrap(),
            ExtensionVerdict::AlreadyMember
        );
    }

    #[test]
    fn quantifier_route_matches_examples() {
        let b = two_blocks();
        for x in [m(4, &[0]), m(4, &[0, 2]), m(4, &[1, 2, 3]), m(4, &[0, 1])] {
            assert_eq!(
                minimal_by_quantifier(&b, &x, 16).unwrap(),
                is_minimal_extension(&b, &x).unwrap()
            );
        }
    }

    #[test]
    fn intermediate_counts() {
        let b = two_blocks();
        assert_eq!(count_intermediate_algebras(&b, &m(4, &[0]), 16).unwrap(), 2);
        // Brute force by hand: B, B(x), and the two algebras splitting just
        // one of {0,1}, {2,3}.
        assert_eq!(count_intermediate_algebras(&b, &m(4, &[0, 2]), 16).unwrap(), 4);
        assert_eq!(
            count_intermediate_algebras(&b, &m(4, &[0, 1]), 16),
            Err(Error::Precondition(PreconditionFailure::AlreadyMember))
        );
        assert!(matches!(
            count_intermediate_algebras(&b, &m(4, &[0, 2]), 3),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn chain_examples() {
        let nested = SetFamily::from_index_lists(4, [vec![0], vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert!(verify_minimal_chain(&nested).unwrap().is_ok());

        let gens = SetFamily::from_index_lists(4, [vec![0, 2], vec![1, 3], vec![0, 1]]).unwrap();
        match verify_minimal_chain(&gens).unwrap() {
            ChainVerdict::FailsAt { index, witness, .. } => {
                assert_eq!(index, 2);
                assert_eq!(witness, m(4, &[0, 2]));
            }
            v => panic!("unexpected {v:?}"),
        }

        let atoms = FiniteAlgebra::generate(&gens);
        let mut members: Vec<_> = atoms.atoms().to_vec();
        members.reverse();
        let fam = SetFamily::new(4, members).unwrap();
        assert!(verify_minimal_chain(&fam).unwrap().is_ok());
    }
}
