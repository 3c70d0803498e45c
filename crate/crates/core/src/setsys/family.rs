use std::ops::Index;

use super::SubsetMask;
use crate::error::{Error, Result};

/// An ordered family of subsets of a common ground set. Duplicates are kept;
/// positions matter for witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: usize,
    members: Vec<SubsetMask>,
}

impl SetFamily {
    pub fn new(ground: usize, members: Vec<SubsetMask>) -> Result<Self> {
        if let Some(m) = members.iter().find(|m| m.len() != ground) {
            return Err(Error::GroundMismatch {
                expected: ground,
                found: m.len(),
            });
        }
        Ok(SetFamily { ground, members })
    }

    pub fn empty(ground: usize) -> Self {
        SetFamily {
            ground,
            members: Vec::new(),
        }
    }

    pub fn from_index_lists<I, S>(ground: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let members = sets
            .into_iter()
            .map(|s| SubsetMask::from_indices(ground, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFamily { ground, members })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SubsetMask> {
        self.members.iter()
    }

    pub fn push(&mut self, m: SubsetMask) -> Result<()> {
        self.check_mask(&m)?;
        self.members.push(m);
        Ok(())
    }

    pub fn check_mask(&self, m: &SubsetMask) -> Result<()> {
        if m.len() != self.ground {
            return Err(Error::GroundMismatch {
                expected: self.ground,
                found: m.len(),
            });
        }
        Ok(())
    }

    /// The subfamily at the given positions, in that order.
    pub fn select(&self, indices: &[usize]) -> Result<SetFamily> {
        let members = indices
            .iter()
            .map(|&i| {
                self.members.get(i).cloned().ok_or(Error::IndexOutOfRange {
                    index: i,
                    size: self.members.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFamily {
            ground: self.ground,
            members,
        })
    }

    /// Drops repeated members, keeping first occurrences in order.
    pub fn dedup(&self) -> SetFamily {
        let mut seen = std::collections::HashSet::new();
        let members = self
            .members
            .iter()
            .filter(|m| seen.insert((*m).clone()))
            .cloned()
            .collect();
        SetFamily {
            ground: self.ground,
            members,
        }
    }

    pub fn into_members(self) -> Vec<SubsetMask> {
        self.members
    }
}

impl Index<usize> for SetFamily {
    type Output = SubsetMask;

    fn index(&self, i: usize) -> &SubsetMask {
        &self.members[i]
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a SubsetMask;
    type IntoIter = std::slice::Iter<'a, SubsetMask>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_mixed_ground() {
        let a = SubsetMask::empty(3);
        let b = SubsetMask::empty(4);
        assert_eq!(
            SetFamily::new(3, vec![a, b]),
            Err(Error::GroundMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn dedup_keeps_first() {
        let f = SetFamily::from_index_lists(3, [vec![1], vec![0], vec![1]]).unwrap();
        let d = f.dedup();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].to_indices(), vec![1]);
    }
}
