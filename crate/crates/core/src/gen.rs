//! Seeded instance generators.
//!
//! Every stream comes from ChaCha8 (`rand_chacha` 0.9): the key is
//! `seed_from_u64(seed ^ salt)` and the stream number is the trial index,
//! so trial `t` of a check never depends on how many trials ran before it.
//! Salts are FNV-1a hashes of check names.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cantor::{t_len, CantorParams};
use crate::error::Result;
use crate::independence::PatternFamily;
use crate::setsys::{FiniteAlgebra, SetFamily, SubsetMask};

pub const GENERATOR: &str = "ChaCha8 (rand_chacha 0.9): seed_from_u64(seed ^ fnv1a64(check)), stream = trial";

/// 64-bit FNV-1a.
pub fn fnv1a64(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn trial_rng(seed: u64, salt: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
    rng.set_stream(trial);
    rng
}

/// Each element included with probability `density`.
pub fn random_mask<R: Rng>(rng: &mut R, len: usize, density: f64) -> SubsetMask {
    let mut m = SubsetMask::empty(len);
    for i in 0..len {
        if rng.random_bool(density) {
            m.set(i, true).expect("in range");
        }
    }
    m
}

pub fn random_family<R: Rng>(rng: &mut R, ground: usize, count: usize) -> SetFamily {
    let members = (0..count).map(|_| random_mask(rng, ground, 0.5)).collect();
    SetFamily::new(ground, members).expect("same ground")
}

/// `count` sets, any two nested or disjoint up to complementation, so no
/// pair is independent.
///
/// The points are shuffled and split recursively into consecutive runs;
/// members are drawn from the runs of that tree and complemented at random.
pub fn laminar_family<R: Rng>(rng: &mut R, ground: usize, count: usize) -> SetFamily {
    let mut order: Vec<usize> = (0..ground).collect();
    order.shuffle(rng);
    let mut nodes: Vec<(usize, usize)> = Vec::new();
    let mut stack = vec![(0, ground)];
    while let Some((lo, hi)) = stack.pop() {
        nodes.push((lo, hi));
        if hi - lo < 2 {
            continue;
        }
        let mut cuts: Vec<usize> = (lo + 1..hi).filter(|_| rng.random_bool(0.4)).collect();
        if cuts.is_empty() {
            cuts.push(rng.random_range(lo + 1..hi));
        }
        let mut start = lo;
        for c in cuts.into_iter().chain(std::iter::once(hi)) {
            stack.push((start, c));
            start = c;
        }
    }
    let members = (0..count)
        .map(|_| {
            let (lo, hi) = nodes[rng.random_range(0..nodes.len())];
            let m = SubsetMask::from_indices(ground, order[lo..hi].iter().copied())
                .expect("in range");
            if rng.random_bool(0.5) {
                m.complement()
            } else {
                m
            }
        })
        .collect();
    SetFamily::new(ground, members).expect("same ground")
}

/// A shuffled union of `n - 1` laminar families: any `n` members include
/// two from the same laminar part, so no `n` members are independent.
pub fn family_without_independent<R: Rng>(
    rng: &mut R,
    ground: usize,
    n: usize,
    count: usize,
) -> SetFamily {
    let parts = n.saturating_sub(1).max(1);
    let mut members: Vec<SubsetMask> = Vec::with_capacity(count);
    for p in 0..parts {
        let share = count / parts + usize::from(p < count % parts);
        members.extend(laminar_family(rng, ground, share).into_members());
    }
    members.shuffle(rng);
    SetFamily::new(ground, members).expect("same ground")
}

/// `k` independent sets over `2^k + extra` points: a random surjection
/// assigns each point a sign cell.
pub fn independent_family<R: Rng>(rng: &mut R, k: usize, extra: usize) -> SetFamily {
    let cells = 1usize << k;
    let ground = cells + extra;
    let mut codes: Vec<usize> = (0..cells)
        .chain((0..extra).map(|_| rng.random_range(0..cells)))
        .collect();
    codes.shuffle(rng);
    let members = (0..k)
        .map(|i| {
            SubsetMask::from_indices(ground, (0..ground).filter(|&t| codes[t] >> i & 1 == 1))
                .expect("in range")
        })
        .collect();
    SetFamily::new(ground, members).expect("same ground")
}

pub fn random_pattern_family<R: Rng>(rng: &mut R, coords: usize, size: usize) -> PatternFamily {
    let patterns: Vec<SubsetMask> = (0..size).map(|_| random_mask(rng, coords, 0.5)).collect();
    PatternFamily::new(coords, patterns).expect("same coordinates")
}

/// Uniform `x ∈ 2^m` and a uniform permutation of `T`.
pub fn random_cantor_params<R: Rng>(rng: &mut R, m: usize) -> Result<CantorParams> {
    let mut phi: Vec<usize> = (0..t_len(m)).collect();
    phi.shuffle(rng);
    let x = random_mask(rng, m, 0.5);
    CantorParams::new(m, phi, x)
}

/// A random partition of `{0, .., ground-1}` into at most `max_atoms`
/// nonempty atoms.
pub fn random_algebra<R: Rng>(rng: &mut R, ground: usize, max_atoms: usize) -> FiniteAlgebra {
    if ground == 0 {
        return FiniteAlgebra::trivial(0);
    }
    let k = rng.random_range(1..=max_atoms.clamp(1, ground));
    let mut label: Vec<usize> = (0..ground).map(|i| if i < k { i } else { rng.random_range(0..k) }).collect();
    label.shuffle(rng);
    let atoms = (0..k)
        .map(|a| SubsetMask::from_indices(ground, (0..ground).filter(|&t| label[t] == a)).expect("in range"))
        .collect();
    FiniteAlgebra::from_atoms(ground, atoms).expect("partition")
}

/// Every partition of `{0, .., n-1}` as an algebra, by restricted growth
/// strings.
pub fn all_algebras(n: usize) -> Vec<FiniteAlgebra> {
    fn walk(n: usize, label: &mut Vec<usize>, blocks: usize, out: &mut Vec<FiniteAlgebra>) {
        if label.len() == n {
            let atoms = (0..blocks)
                .map(|a| SubsetMask::from_indices(n, (0..n).filter(|&t| label[t] == a)).expect("in range"))
                .collect();
            out.push(FiniteAlgebra::from_atoms(n, atoms).expect("partition"));
            return;
        }
        for b in 0..=blocks {
            label.push(b);
            walk(n, label, blocks.max(b + 1), out);
            label.pop();
        }
    }
    let mut out = Vec::new();
    walk(n, &mut Vec::new(), 0, &mut out);
    out
}
