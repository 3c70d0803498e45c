//! Library results against brute-force oracles on plain `u64` bit sets.

use std::collections::BTreeSet;

use boolfam::cantor::{
    build_a, diff_measure, diff_measure_inclusion_exclusion, sigma_n, union_measure, CantorParams,
    CylinderUnion,
};
use boolfam::gen::{self, trial_rng};
use boolfam::independence::{
    i_threshold, max_independent, sauer_shelah_extract, transpose, vc_dimension, PatternFamily,
};
use boolfam::measures::{determination_defect, type_defect, Measure, Rational};
use boolfam::setsys::{count_intermediate_algebras, FiniteAlgebra, SetFamily, SubsetMask};
use num_bigint::BigInt;
use rand::Rng;

fn words(f: &SetFamily) -> Vec<u64> {
    f.iter().map(|m| m.as_word().unwrap()).collect()
}

/// Closure of `gens` under complement and intersection inside `2^n`.
fn closure(n: usize, gens: &[u64]) -> BTreeSet<u64> {
    let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut set: BTreeSet<u64> = [0, full].into_iter().chain(gens.iter().copied()).collect();
    loop {
        let cur: Vec<u64> = set.iter().copied().collect();
        let before = set.len();
        for &a in &cur {
            set.insert(full & !a);
            for &b in &cur {
                set.insert(a & b);
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn i_threshold_by_u128_search() {
    for n in 1..=3u128 {
        for r in 1..=4u128 {
            let want = (0..)
                .find(|&s: &u128| (0..n).map(|i| if i <= r * s { binom(r * s, i) } else { 0 }).sum::<u128>() < 1 << s)
                .unwrap();
            assert_eq!(i_threshold(n as u64, r as u64).unwrap() as u128, want, "I({n},{r})");
        }
    }
    assert_eq!(i_threshold(2, 3).unwrap(), 4);
    assert_eq!(i_threshold(3, 3).unwrap(), 9);
}

fn shattered_oracle(patterns: &[u64], s: u64) -> bool {
    let traces: BTreeSet<u64> = patterns.iter().map(|p| p & s).collect();
    traces.len() == 1 << s.count_ones()
}

fn independent_oracle(sets: &[u64], ground: usize) -> bool {
    let codes: BTreeSet<u64> = (0..ground)
        .map(|t| {
            sets.iter()
                .enumerate()
                .fold(0, |acc, (i, s)| acc | (s >> t & 1) << i)
        })
        .collect();
    codes.len() == 1 << sets.len()
}

#[test]
fn duality_and_vc_by_enumeration() {
    for t in 0..150 {
        let mut rng = trial_rng(7, 1, t);
        let ground = rng.random_range(1..=10);
        let size = rng.random_range(1..=8);
        let fam = gen::random_family(&mut rng, ground, size);
        let w = words(&fam);
        let mut best: Option<Vec<usize>> = None;
        for sub in 0u64..1 << size {
            let pick: Vec<usize> = (0..size).filter(|i| sub >> i & 1 == 1).collect();
            let sets: Vec<u64> = pick.iter().map(|&i| w[i]).collect();
            if independent_oracle(&sets, ground)
                && best.as_ref().is_none_or(|b| pick.len() > b.len() || (pick.len() == b.len() && pick < *b))
            {
                best = Some(pick);
            }
        }
        let best = best.unwrap();
        let got = max_independent(&fam, None).unwrap();
        assert_eq!(got.size, best.len());
        assert_eq!(got.members, best, "least witness for {fam:?}");

        let c = transpose(&fam);
        let pats: Vec<u64> = c.patterns().iter().map(|p| p.as_word().unwrap()).collect();
        let vc = (0u64..1 << size)
            .filter(|&s| shattered_oracle(&pats, s))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap();
        assert_eq!(vc_dimension(&c).unwrap(), vc);
        assert_eq!(vc, best.len());
    }
}

#[test]
fn extraction_on_random_cubes() {
    for t in 0..200 {
        let mut rng = trial_rng(7, 2, t);
        let coords = rng.random_range(1..=7);
        let size = rng.random_range(1..=40);
        let c = gen::random_pattern_family(&mut rng, coords, size);
        let pats: Vec<u64> = c.patterns().iter().map(|p| p.as_word().unwrap()).collect();
        let ext = sauer_shelah_extract(&c).unwrap();
        let distinct: BTreeSet<u64> = ext.iter().map(|s| s.as_word().unwrap()).collect();
        assert_eq!(distinct.len(), c.len());
        assert!(distinct.iter().all(|&s| shattered_oracle(&pats, s)));
    }
}

#[test]
fn extraction_known_families() {
    let c = PatternFamily::full_cube(3);
    assert_eq!(sauer_shelah_extract(&c).unwrap().len(), 8);
    let single = PatternFamily::new(3, [SubsetMask::from_bit_string("101").unwrap()]).unwrap();
    assert_eq!(
        sauer_shelah_extract(&single).unwrap(),
        vec![SubsetMask::empty(3)]
    );
}

/// Algebras `C` with `B ⊆ C ⊆ B(x)`, found among all partitions.
fn intermediate_oracle(b: &FiniteAlgebra, x: &SubsetMask) -> u64 {
    let n = b.ground_size();
    let lo = closure(n, &b.atoms().iter().map(|a| a.as_word().unwrap()).collect::<Vec<_>>());
    let mut gens: Vec<u64> = lo.iter().copied().collect();
    gens.push(x.as_word().unwrap());
    let hi = closure(n, &gens);
    gen::all_algebras(n)
        .iter()
        .filter(|c| {
            let elems = closure(n, &c.atoms().iter().map(|a| a.as_word().unwrap()).collect::<Vec<_>>());
            lo.is_subset(&elems) && elems.is_subset(&hi)
        })
        .count() as u64
}

#[test]
fn intermediate_count_by_partition_search() {
    for n in 1..=5 {
        for b in gen::all_algebras(n) {
            for w in 0..1u64 << n {
                let x = SubsetMask::from_word(n, w);
                if b.contains(&x).unwrap() {
                    assert!(count_intermediate_algebras(&b, &x, 16).is_err());
                    continue;
                }
                assert_eq!(
                    count_intermediate_algebras(&b, &x, 16).unwrap(),
                    intermediate_oracle(&b, &x),
                    "B = {:?}, x = {x}",
                    b.atoms()
                );
            }
        }
    }
}

fn weight_of(mu: &Measure, a: u64) -> Rational {
    mu.algebra()
        .atoms()
        .iter()
        .zip(mu.weights())
        .filter(|(atom, _)| atom.as_word().unwrap() & a != 0)
        .map(|(_, w)| w.clone())
        .sum()
}

#[test]
fn defects_by_double_enumeration() {
    for t in 0..120 {
        let mut rng = trial_rng(7, 3, t);
        let ground = rng.random_range(1..=7);
        let alg = gen::random_algebra(&mut rng, ground, 6);
        let raw: Vec<i64> = (0..alg.atom_count()).map(|_| rng.random_range(1..=5)).collect();
        let total: i64 = raw.iter().sum();
        let mu = Measure::new(
            alg.clone(),
            raw.iter().map(|&w| Rational::new(BigInt::from(w), BigInt::from(total))).collect(),
        )
        .unwrap();
        let sub_size = rng.random_range(0..=2);
        let sub: Vec<SubsetMask> = (0..sub_size)
            .map(|_| alg.element(rng.random::<u64>() & ((1 << alg.atom_count()) - 1)))
            .collect();
        let sub = SetFamily::new(ground, sub).unwrap();

        let fine: Vec<u64> = alg.elements(10).unwrap().iter().map(|e| e.as_word().unwrap()).collect();
        let coarse = closure(ground, &words(&sub));
        let td = fine
            .iter()
            .map(|&a| coarse.iter().map(|&b| weight_of(&mu, a ^ b)).min().unwrap())
            .max()
            .unwrap();
        let dd = fine
            .iter()
            .map(|&a| {
                let inner = coarse
                    .iter()
                    .filter(|&&c| c & !a == 0)
                    .map(|&c| weight_of(&mu, c))
                    .max()
                    .unwrap();
                weight_of(&mu, a) - inner
            })
            .max()
            .unwrap();
        assert_eq!(type_defect(&mu, &sub).unwrap(), td, "type defect");
        assert_eq!(determination_defect(&mu, &sub).unwrap(), dd, "determination defect");
    }
}

/// Uniform measure of a union of cylinders by counting points of `2^m`.
fn enumerate_measure(u: &CylinderUnion, minus: Option<&CylinderUnion>) -> Rational {
    let m = u.truncation();
    let inside = |v: &CylinderUnion, x: u64| {
        v.cylinders()
            .iter()
            .any(|c| x & c.domain().as_word().unwrap() == c.values().as_word().unwrap())
    };
    let hits = (0u64..1 << m)
        .filter(|&x| inside(u, x) && !minus.is_some_and(|v| inside(v, x)))
        .count();
    Rational::new(BigInt::from(hits), BigInt::from(1u64 << m))
}

#[test]
fn cylinder_measures_by_point_enumeration() {
    for t in 0..40 {
        let mut rng = trial_rng(7, 4, t);
        let m = rng.random_range(3..=18);
        let a = gen::random_cantor_params(&mut rng, m).unwrap();
        let b = gen::random_cantor_params(&mut rng, m).unwrap();
        let top = boolfam::cantor::t_len(m) - 1;
        let ua = build_a(&a, rng.random_range(0..=top)).unwrap();
        let ub = build_a(&b, rng.random_range(0..=top)).unwrap();
        assert_eq!(union_measure(&ua).unwrap(), enumerate_measure(&ua, None));
        let want = enumerate_measure(&ua, Some(&ub));
        assert_eq!(diff_measure(&ua, &ub).unwrap(), want);
        assert_eq!(diff_measure_inclusion_exclusion(&ua, &ub).unwrap(), want);
    }
}

#[test]
fn overlapping_cylinders_by_point_enumeration() {
    for t in 0..40 {
        let mut rng = trial_rng(7, 5, t);
        let m = rng.random_range(1..=20);
        let make = |rng: &mut rand_chacha::ChaCha8Rng| {
            let k = rng.random_range(0..=6);
            let cs = (0..k)
                .map(|_| {
                    let dom = gen::random_mask(rng, m, 0.3);
                    let val = dom.intersection(&gen::random_mask(rng, m, 0.5));
                    boolfam::cantor::Cylinder::new(dom, val).unwrap()
                })
                .collect();
            CylinderUnion::new(m, cs).unwrap()
        };
        let u = make(&mut rng);
        let v = make(&mut rng);
        assert_eq!(union_measure(&u).unwrap(), enumerate_measure(&u, None));
        let want = enumerate_measure(&u, Some(&v));
        assert_eq!(diff_measure(&u, &v).unwrap(), want);
        assert_eq!(diff_measure_inclusion_exclusion(&u, &v).unwrap(), want);
    }
}

#[test]
fn sigma_values_follow_the_rules() {
    let x = SubsetMask::from_bit_string("011010011101").unwrap();
    let p = CantorParams::new(12, vec![2, 0, 3, 1], x.clone()).unwrap();
    for n in 0..4 {
        let c = sigma_n(&p, n).unwrap();
        let mut dom: BTreeSet<usize> = (0..3 * n).filter(|i| i % 3 != 0).collect();
        dom.extend((0..=n).map(|j| 3 * p.phi()[j]));
        assert_eq!(c.domain().to_indices(), dom.iter().copied().collect::<Vec<_>>());
        for &i in &dom {
            let flipped = i == 3 * p.phi()[n];
            assert_eq!(c.value_at(i), Some(x.contains(i) != flipped), "n = {n}, i = {i}");
        }
    }
}
