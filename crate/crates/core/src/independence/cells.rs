use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::setsys::{SetFamily, SubsetMask};

pub const DEFAULT_INDEPENDENCE_CAP: usize = 24;
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// A sign vector `ε`, naming the cell `⋂ a_i^{ε(i)}` of a family.
///
/// Cells are ranked by the integer `Σ ε(i)·2^i`, which is also the order in
/// which [`is_independent`] scans them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignCell(pub Vec<bool>);

impl SignCell {
    pub fn from_code(k: usize, code: u64) -> Self {
        SignCell((0..k).map(|i| code >> i & 1 == 1).collect())
    }

    pub fn code(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (b as u64) << i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SignCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", *b as u8)?;
        }
        write!(f, ")")
    }
}

impl Serialize for SignCell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&b| b as u8))
    }
}

/// `⋂ a_i^{ε(i)}` over the whole family (the ground set when it is empty).
pub fn cell_mask(family: &SetFamily, cell: &SignCell) -> Result<SubsetMask> {
    if cell.len() != family.len() {
        return Err(Error::input(format!(
            "sign vector of length {} for a family of {}",
            cell.len(),
            family.len()
        )));
    }
    let mut out = SubsetMask::full(family.ground_size());
    for (m, &s) in family.iter().zip(cell.0.iter()) {
        out.intersect_with(&m.signed(s));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IndependenceVerdict {
    Independent,
    /// The least empty cell.
    Dependent { cell: SignCell },
}

impl IndependenceVerdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, IndependenceVerdict::Independent)
    }
}

/// Each point's membership pattern across the family, packed as `Σ 2^i`.
fn point_codes(family: &SetFamily) -> Vec<u64> {
    let mut codes = vec![0u64; family.ground_size()];
    for (i, m) in family.iter().enumerate() {
        for t in m.ones() {
            codes[t] |= 1 << i;
        }
    }
    codes
}

/// Independent iff every one of the `2^k` sign cells is nonempty. The empty
/// family is independent.
pub fn is_independent(family: &SetFamily) -> Result<IndependenceVerdict> {
    is_independent_capped(family, DEFAULT_INDEPENDENCE_CAP)
}

pub fn is_independent_capped(family: &SetFamily, cap: usize) -> Result<IndependenceVerdict> {
    let k = family.len();
    if k > cap.min(32) {
        return Err(Error::cap("independence test (family size)", k, cap.min(32)));
    }
    let cells = 1usize << k;
    let mut seen = vec![0u64; cells.div_ceil(64)];
    for c in point_codes(family) {
        seen[c as usize / 64] |= 1 << (c % 64);
    }
    for code in 0..cells {
        if seen[code / 64] >> (code % 64) & 1 == 0 {
            return Ok(IndependenceVerdict::Dependent {
                cell: SignCell::from_code(k, code as u64),
            });
        }
    }
    Ok(IndependenceVerdict::Independent)
}

/// Size and lexicographically least member-index list of a largest
/// independent subfamily.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxIndependent {
    pub size: usize,
    pub members: Vec<usize>,
}

/// Largest independent subfamily, optionally stopping once `cap` members are
/// found.
pub fn max_independent(family: &SetFamily, cap: Option<usize>) -> Result<MaxIndependent> {
    max_independent_with_budget(family, cap, DEFAULT_SEARCH_BUDGET)
}

/// Branch and bound over increasing index lists.
///
/// An independent subfamily of size `s` needs `2^s` distinct membership
/// patterns among the points, so the number of distinct rows of the
/// transpose bounds the depth. Depth-first order visits index lists
/// lexicographically, so the first list found at the final size is the
/// least one.
pub fn max_independent_with_budget(
    family: &SetFamily,
    cap: Option<usize>,
    budget: u64,
) -> Result<MaxIndependent> {
    let ground = family.ground_size();
    let mut seen = HashSet::new();
    // A member equal to an earlier one can always be swapped for it, and 0, 1
    // belong to no independent family.
    let candidates: Vec<usize> = family
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_empty() && !m.is_full() && seen.insert((*m).clone()))
        .map(|(i, _)| i)
        .collect();

    let distinct_points = {
        let mut rows = HashSet::new();
        for t in 0..ground {
            let row: Vec<bool> = candidates.iter().map(|&i| family[i].contains(t)).collect();
            rows.insert(row);
        }
        rows.len()
    };
    let log_bound = if distinct_points == 0 {
        0
    } else {
        distinct_points.ilog2() as usize
    };
    let target = cap.map_or(log_bound, |c| c.min(log_bound));

    struct Search<'a> {
        family: &'a SetFamily,
        candidates: Vec<usize>,
        target: usize,
        best: Vec<usize>,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        fn go(&mut self, cells: &[SubsetMask], chosen: &mut Vec<usize>, start: usize) -> Result<bool> {
            for pos in start..self.candidates.len() {
                let remaining = self.candidates.len() - pos;
                if chosen.len() + remaining <= self.best.len() {
                    break;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::cap("max_independent search nodes", self.nodes, self.budget));
                }
                let a = &self.family[self.candidates[pos]];
                if !cells.iter().all(|c| a.splits(c)) {
                    continue;
                }
                let next: Vec<SubsetMask> = cells
                    .iter()
                    .flat_map(|c| [c.difference(a), c.intersection(a)])
                    .collect();
                chosen.push(self.candidates[pos]);
                if chosen.len() > self.best.len() {
                    self.best = chosen.clone();
                    if self.best.len() >= self.target {
                        return Ok(true);
                    }
                }
                if self.go(&next, chosen, pos + 1)? {
                    return Ok(true);
                }
                chosen.pop();
            }
            Ok(false)
        }
    }

    let mut search = Search {
        family,
        candidates,
        target,
        best: Vec::new(),
        nodes: 0,
        budget,
    };
    if target > 0 {
        search.go(&[SubsetMask::full(ground)], &mut Vec::new(), 0)?;
    }
    Ok(MaxIndependent {
        size: search.best.len(),
        members: search.best,
    })
}
