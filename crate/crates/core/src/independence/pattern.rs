use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setsys::{SetFamily, SubsetMask};

pub const DEFAULT_SHATTER_CAP: usize = 24;

/// A set of 0/1 functions on the coordinates `{0, .., coords-1}`, each
/// stored as a mask. Patterns are distinct and kept in mask order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternFamily {
    coords: usize,
    patterns: Vec<SubsetMask>,
}

impl PatternFamily {
    pub fn new(coords: usize, patterns: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in patterns {
            if p.len() != coords {
                return Err(Error::GroundMismatch {
                    expected: coords,
                    found: p.len(),
                });
            }
            set.insert(p);
        }
        Ok(PatternFamily {
            coords,
            patterns: set.into_iter().collect(),
        })
    }

    /// Every function in `2^coords`; `coords <= 24`.
    pub fn full_cube(coords: usize) -> Self {
        assert!(coords <= 24, "full cube too large");
        PatternFamily {
            coords,
            patterns: (0..1u64 << coords)
                .map(|w| SubsetMask::from_word(coords, w))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        }
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[SubsetMask] {
        &self.patterns
    }
}

/// Each ground point becomes the pattern of its memberships across the
/// family; coordinate `i` is member `i`.
pub fn transpose(family: &SetFamily) -> PatternFamily {
    let k = family.len();
    let mut rows = vec![SubsetMask::empty(k); family.ground_size()];
    for (i, m) in family.iter().enumerate() {
        for t in m.ones() {
            rows[t].insert(i).expect("i < k");
        }
    }
    PatternFamily::new(k, rows).expect("rows have length k")
}

/// Packs the restriction of `p` to `coords` into an integer, coordinate
/// `coords[j]` giving bit `j`.
fn project(p: &SubsetMask, coords: &[usize]) -> u64 {
    coords
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &c)| acc | (p.contains(c) as u64) << j)
}

/// True iff the restrictions of `c` to `s` realize all of `2^s`.
pub fn shattered(c: &PatternFamily, s: &SubsetMask) -> Result<bool> {
    if s.len() != c.coords {
        return Err(Error::GroundMismatch {
            expected: c.coords,
            found: s.len(),
        });
    }
    let coords = s.to_indices();
    if coords.len() > DEFAULT_SHATTER_CAP {
        return Err(Error::cap("shattering test (|S|)", coords.len(), DEFAULT_SHATTER_CAP));
    }
    let need = 1usize << coords.len();
    if c.len() < need {
        return Ok(false);
    }
    let mut seen = vec![false; need];
    let mut hit = 0;
    for p in &c.patterns {
        let v = project(p, &coords) as usize;
        if !seen[v] {
            seen[v] = true;
            hit += 1;
        }
    }
    Ok(hit == need)
}

/// VC dimension plus the least shattered set of that size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VcWitness {
    pub dimension: usize,
    pub set: SubsetMask,
}

pub fn vc_dimension(c: &PatternFamily) -> Result<usize> {
    Ok(largest_shattered(c)?.dimension)
}

/// Depth-first over increasing coordinate lists. Subsets of shattered sets
/// are shattered, so only shattered lists are extended; `|C| ≥ 2^|S|` caps
/// the depth.
pub fn largest_shattered(c: &PatternFamily) -> Result<VcWitness> {
    if c.is_empty() {
        return Err(Error::input("VC dimension of an empty pattern family"));
    }
    let bound = (c.len().ilog2() as usize).min(DEFAULT_SHATTER_CAP);

    struct Search<'a> {
        c: &'a PatternFamily,
        bound: usize,
        best: Vec<usize>,
    }

    impl Search<'_> {
        // keys[p] = projection of pattern p onto `chosen`
        fn go(&mut self, chosen: &mut Vec<usize>, keys: &[u64], start: usize) -> bool {
            for j in start..self.c.coords {
                if chosen.len() + (self.c.coords - j) <= self.best.len() {
                    break;
                }
                let next: Vec<u64> = keys
                    .iter()
                    .zip(&self.c.patterns)
                    .map(|(&k, p)| k | (p.contains(j) as u64) << chosen.len())
                    .collect();
                let need = 1usize << (chosen.len() + 1);
                let mut seen = vec![false; need];
                let hit = next.iter().filter(|&&v| !std::mem::replace(&mut seen[v as usize], true)).count();
                if hit < need {
                    continue;
                }
                chosen.push(j);
                if chosen.len() > self.best.len() {
                    self.best = chosen.clone();
                    if self.best.len() == self.bound {
                        return true;
                    }
                }
                if self.go(chosen, &next, j + 1) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
    }

    let mut s = Search {
        c,
        bound,
        best: Vec::new(),
    };
    if bound > 0 {
        s.go(&mut Vec::new(), &vec![0; c.len()], 0);
    }
    Ok(VcWitness {
        dimension: s.best.len(),
        set: SubsetMask::from_indices(c.coords, s.best.iter().copied())?,
    })
}
