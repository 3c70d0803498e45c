use super::{SetFamily, SubsetMask};
use crate::error::{Error, Result};

/// A subalgebra of the powerset of `{0, .., ground-1}`, held as its atom
/// partition. Atoms are sorted by lowest element, so two algebras over the
/// same ground set are equal iff their atom lists are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    ground: usize,
    atoms: Vec<SubsetMask>,
}

impl FiniteAlgebra {
    /// `{0, 1}`. Over an empty ground set this has no atoms at all.
    pub fn trivial(ground: usize) -> Self {
        let atoms = if ground == 0 {
            Vec::new()
        } else {
            vec![SubsetMask::full(ground)]
        };
        FiniteAlgebra { ground, atoms }
    }

    pub fn powerset(ground: usize) -> Self {
        let atoms = (0..ground)
            .map(|i| SubsetMask::singleton(ground, i).expect("in range"))
            .collect();
        FiniteAlgebra { ground, atoms }
    }

    /// Validates that `atoms` partition the ground set into nonempty blocks.
    pub fn from_atoms(ground: usize, atoms: Vec<SubsetMask>) -> Result<Self> {
        let mut seen = SubsetMask::empty(ground);
        for a in &atoms {
            if a.len() != ground {
                return Err(Error::GroundMismatch {
                    expected: ground,
                    found: a.len(),
                });
            }
            if a.is_empty() {
                return Err(Error::input("atoms must be nonempty"));
            }
            if a.intersects(&seen) {
                return Err(Error::input(format!("atom {a} overlaps another atom")));
            }
            seen.union_with(a);
        }
        if !seen.is_full() {
            return Err(Error::input("atoms do not cover the ground set"));
        }
        Ok(Self::canonical(ground, atoms))
    }

    fn canonical(ground: usize, mut atoms: Vec<SubsetMask>) -> Self {
        atoms.sort_by_key(|a| a.lowest());
        FiniteAlgebra { ground, atoms }
    }

    /// The algebra generated by `family`: atoms are the nonempty cells of the
    /// partition refined by every member.
    pub fn generate(family: &SetFamily) -> Self {
        let ground = family.ground_size();
        let mut cells = Self::trivial(ground).atoms;
        for m in family {
            cells = refine(cells, m);
        }
        Self::canonical(ground, cells)
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn atoms(&self) -> &[SubsetMask] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub(crate) fn check(&self, x: &SubsetMask) -> Result<()> {
        if x.len() != self.ground {
            return Err(Error::GroundMismatch {
                expected: self.ground,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Membership by a per-atom test: `x` is in the algebra iff it never
    /// splits an atom.
    pub fn contains(&self, x: &SubsetMask) -> Result<bool> {
        self.check(x)?;
        Ok(self.atoms.iter().all(|a| !x.splits(a)))
    }

    /// Positions of the atoms that `x` cuts into two nonempty pieces.
    pub fn split_atoms(&self, x: &SubsetMask) -> Result<Vec<usize>> {
        self.check(x)?;
        Ok(self
            .atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| x.splits(a))
            .map(|(i, _)| i)
            .collect())
    }

    /// `B(x)`, the algebra generated by `B` and `x`.
    pub fn extend(&self, x: &SubsetMask) -> Result<Self> {
        self.check(x)?;
        Ok(Self::canonical(self.ground, refine(self.atoms.clone(), x)))
    }

    /// The largest element of the algebra contained in `x`.
    pub fn inner(&self, x: &SubsetMask) -> Result<SubsetMask> {
        self.check(x)?;
        let mut out = SubsetMask::empty(self.ground);
        for a in self.atoms.iter().filter(|a| a.is_subset(x)) {
            out.union_with(a);
        }
        Ok(out)
    }

    /// The smallest element of the algebra containing `x`.
    pub fn outer(&self, x: &SubsetMask) -> Result<SubsetMask> {
        self.check(x)?;
        let mut out = SubsetMask::empty(self.ground);
        for a in self.atoms.iter().filter(|a| a.intersects(x)) {
            out.union_with(a);
        }
        Ok(out)
    }

    /// Union of the atoms whose positions are set in `selection`.
    pub fn element(&self, selection: u64) -> SubsetMask {
        let mut out = SubsetMask::empty(self.ground);
        for (i, a) in self.atoms.iter().enumerate().take(64) {
            if selection >> i & 1 == 1 {
                out.union_with(a);
            }
        }
        out
    }

    /// Every element of the algebra, `2^atoms` of them; `max_atoms` bounds
    /// the enumeration.
    pub fn elements(&self, max_atoms: usize) -> Result<Vec<SubsetMask>> {
        let k = self.atoms.len();
        if k > max_atoms.min(63) {
            return Err(Error::cap("algebra element enumeration (atoms)", k, max_atoms.min(63)));
        }
        Ok((0..1u64 << k).map(|s| self.element(s)).collect())
    }

    /// True when every element of `self` is an element of `other`.
    pub fn is_subalgebra_of(&self, other: &FiniteAlgebra) -> bool {
        self.ground == other.ground
            && self
                .atoms
                .iter()
                .all(|a| other.contains(a).unwrap_or(false))
    }
}

fn refine(cells: Vec<SubsetMask>, by: &SubsetMask) -> Vec<SubsetMask> {
    let mut out = Vec::with_capacity(cells.len() * 2);
    for c in cells {
        let inside = c.intersection(by);
        if inside.is_empty() || inside == c {
            out.push(c);
        } else {
            out.push(c.difference(by));
            out.push(inside);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_index_lists(n, sets.iter().map(|s| s.iter().copied())).unwrap()
    }

    fn atom_lists(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
        a.atoms().iter().map(|m| m.to_indices()).collect()
    }

    #[test]
    fn generate_examples() {
        assert_eq!(
            atom_lists(&FiniteAlgebra::generate(&fam(3, &[]))),
            vec![vec![0, 1, 2]]
        );
        assert_eq!(
            atom_lists(&FiniteAlgebra::generate(&fam(3, &[&[0, 1]]))),
            vec![vec![0, 1], vec![2]]
        );
        assert_eq!(
            atom_lists(&FiniteAlgebra::generate(&fam(3, &[&[0, 1], &[0, 2]]))),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn contains_examples() {
        let p = FiniteAlgebra::powerset(3);
        let m = |v: &[usize]| SubsetMask::from_indices(3, v.iter().copied()).unwrap();
        assert!(p.contains(&m(&[0, 2])).unwrap());
        let b = FiniteAlgebra::generate(&fam(3, &[&[0, 1]]));
        assert!(!b.contains(&m(&[0])).unwrap());
        assert!(b.contains(&m(&[0, 1, 2])).unwrap());
        assert!(b.contains(&m(&[])).unwrap());
        assert!(matches!(
            b.contains(&SubsetMask::empty(4)),
            Err(Error::GroundMismatch { .. })
        ));
    }

    #[test]
    fn from_atoms_validates() {
        let m = |v: &[usize]| SubsetMask::from_indices(3, v.iter().copied()).unwrap();
        assert!(FiniteAlgebra::from_atoms(3, vec![m(&[0, 1])]).is_err());
        assert!(FiniteAlgebra::from_atoms(3, vec![m(&[0, 1]), m(&[1, 2])]).is_err());
        assert!(FiniteAlgebra::from_atoms(3, vec![m(&[0, 1]), m(&[]), m(&[2])]).is_err());
        let a = FiniteAlgebra::from_atoms(3, vec![m(&[2]), m(&[0, 1])]).unwrap();
        assert_eq!(atom_lists(&a), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn inner_outer() {
        let b = FiniteAlgebra::generate(&fam(6, &[&[0, 1], &[0, 1, 2, 3]]));
        let g = SubsetMask::from_indices(6, [0, 1, 2]).unwrap();
        assert_eq!(b.inner(&g).unwrap().to_indices(), vec![0, 1]);
        assert_eq!(b.outer(&g).unwrap().to_indices(), vec![0, 1, 2, 3]);
    }
}
