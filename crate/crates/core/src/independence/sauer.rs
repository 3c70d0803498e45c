//! Sauer bounds, the `I(n, r)` threshold, and the constructive
//! Sauer–Shelah extraction.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::pattern::{shattered, PatternFamily};
use crate::error::{Error, Result};
use crate::setsys::SubsetMask;

/// `Σ_{i<below} C(n, i)`, exact. Terms with `i > n` vanish.
pub fn binomial_prefix_sum(n: u64, below: u64) -> BigUint {
    let mut sum = BigUint::zero();
    let mut term = BigUint::one();
    for i in 0..below.min(n + 1) {
        sum += &term;
        term = term * (n - i) / (i + 1);
    }
    sum
}

/// `Σ_{i<n} C(N, i)`; requires `1 ≤ n ≤ N`.
pub fn sauer_bound(ground: u64, n: u64) -> Result<BigUint> {
    if n < 1 || n > ground {
        return Err(Error::input(format!(
            "sauer_bound needs 1 <= n <= N, got N={ground}, n={n}"
        )));
    }
    Ok(binomial_prefix_sum(ground, n))
}

/// `I(n, r) = min { s : Σ_{i<n} C(rs, i) < 2^s }`, found by increasing search.
pub fn i_threshold(n: u64, r: u64) -> Result<u64> {
    if n < 1 || r < 1 {
        return Err(Error::input(format!(
            "i_threshold needs n >= 1 and r >= 1, got n={n}, r={r}"
        )));
    }
    let mut s = 0u64;
    loop {
        if threshold_holds(n, r, s) {
            return Ok(s);
        }
        s += 1;
    }
}

/// The defining inequality of `I(n, r)` at a given `s`.
pub fn threshold_holds(n: u64, r: u64, s: u64) -> bool {
    binomial_prefix_sum(r * s, n) < (BigUint::one() << s)
}

/// The Sauer–Shelah claim, constructively: `|C|` distinct coordinate sets,
/// each shattered by `C`.
///
/// Recursion on a pivot coordinate `c`: with `C_0`, `C_1` the patterns with
/// `c` off and on (restricted away from `c`), the result is
/// `F_0 ∪ F_1 ∪ { S ∪ {c} : S ∈ F_0 ∩ F_1 }`. The pivot is the lowest
/// coordinate on which the current family is not constant, so both halves
/// are nonempty; a family constant everywhere is a single pattern and gets
/// `{∅}`.
pub fn sauer_shelah_extract(c: &PatternFamily) -> Result<Vec<SubsetMask>> {
    if c.is_empty() {
        return Err(Error::input("Sauer–Shelah extraction of an empty family"));
    }
    let active = SubsetMask::full(c.coords());
    let out = extract(c.patterns().to_vec(), &active, c.coords());
    Ok(out.into_iter().collect())
}

// Patterns are kept with bits outside `active` cleared.
fn extract(patterns: Vec<SubsetMask>, active: &SubsetMask, coords: usize) -> BTreeSet<SubsetMask> {
    if patterns.len() == 1 {
        return BTreeSet::from([SubsetMask::empty(coords)]);
    }
    let first = &patterns[0];
    let pivot = active
        .ones()
        .find(|&j| patterns.iter().any(|p| p.contains(j) != first.contains(j)))
        .expect("distinct patterns differ on some active coordinate");

    let mut rest = active.clone();
    rest.remove(pivot);
    let (mut c0, mut c1) = (Vec::new(), Vec::new());
    for mut p in patterns {
        if p.contains(pivot) {
            p.remove(pivot);
            c1.push(p);
        } else {
            c0.push(p);
        }
    }
    let f0 = extract(c0, &rest, coords);
    let f1 = extract(c1, &rest, coords);
    let mut out: BTreeSet<SubsetMask> = f0
        .intersection(&f1)
        .map(|s| {
            let mut s = s.clone();
            s.insert(pivot).expect("pivot < coords");
            s
        })
        .collect();
    out.extend(f0);
    out.extend(f1);
    out
}

/// Outcome of checking the Sauer–Shelah lemma on one family and one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SauerCheck {
    pub n: u64,
    pub family_size: usize,
    #[serde(serialize_with = "crate::json::ser_biguint")]
    pub bound: BigUint,
    /// `|C| > bound`
    pub premise: bool,
    /// A shattered `n`-set, taken from the extraction when the premise holds.
    pub witness: Option<SubsetMask>,
}

impl SauerCheck {
    /// The lemma's implication held.
    pub fn holds(&self) -> bool {
        !self.premise || self.witness.is_some()
    }
}

/// When `|C|` exceeds the Sauer bound, the extraction has more sets than
/// there are sets of size `< n`, so one has size `≥ n`; its `n` lowest
/// coordinates are shattered too.
pub fn sauer_check(c: &PatternFamily, n: u64) -> Result<SauerCheck> {
    let bound = sauer_bound(c.coords() as u64, n)?;
    let premise = BigUint::from(c.len()) > bound;
    let mut witness = None;
    if premise {
        for s in sauer_shelah_extract(c)? {
            if s.count() as u64 >= n {
                let sub = SubsetMask::from_indices(c.coords(), s.ones().take(n as usize))?;
                if shattered(c, &sub)? {
                    witness = Some(sub);
                    break;
                }
            }
        }
    }
    Ok(SauerCheck {
        n,
        family_size: c.len(),
        bound,
        premise,
        witness,
    })
}
