use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{inverse_power_of_two, Rational};
use crate::setsys::SubsetMask;

/// `[σ]` in the truncated Cantor space `2^m`: the points agreeing with
/// `values` on `domain`. `values ⊆ domain`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cylinder {
    m: usize,
    domain: SubsetMask,
    values: SubsetMask,
}

impl Cylinder {
    pub fn new(domain: SubsetMask, values: SubsetMask) -> Result<Self> {
        if domain.len() != values.len() {
            return Err(Error::GroundMismatch {
                expected: domain.len(),
                found: values.len(),
            });
        }
        if !values.is_subset(&domain) {
            return Err(Error::input("cylinder values fall outside its domain"));
        }
        Ok(Cylinder {
            m: domain.len(),
            domain,
            values,
        })
    }

    /// The whole space `2^m`.
    pub fn everything(m: usize) -> Self {
        Cylinder {
            m,
            domain: SubsetMask::empty(m),
            values: SubsetMask::empty(m),
        }
    }

    pub fn from_pairs(m: usize, pairs: &[(usize, bool)]) -> Result<Self> {
        let mut c = Self::everything(m);
        for &(i, b) in pairs {
            if c.value_at(i).is_some_and(|v| v != b) {
                return Err(Error::input(format!("conflicting values at position {i}")));
            }
            c.fix(i, b)?;
        }
        Ok(c)
    }

    pub fn truncation(&self) -> usize {
        self.m
    }

    pub fn domain(&self) -> &SubsetMask {
        &self.domain
    }

    pub fn values(&self) -> &SubsetMask {
        &self.values
    }

    pub fn domain_size(&self) -> usize {
        self.domain.count()
    }

    pub fn value_at(&self, i: usize) -> Option<bool> {
        self.domain.contains(i).then(|| self.values.contains(i))
    }

    pub(crate) fn fix(&mut self, i: usize, b: bool) -> Result<()> {
        self.domain.insert(i)?;
        self.values.set(i, b)
    }

    /// Uniform product measure, `2^{-|domain|}`.
    pub fn measure(&self) -> Rational {
        inverse_power_of_two(self.domain_size())
    }

    pub fn contains_point(&self, x: &SubsetMask) -> bool {
        x.intersection(&self.domain) == self.values
    }

    pub fn intersect(&self, other: &Cylinder) -> Option<Cylinder> {
        let common = self.domain.intersection(&other.domain);
        if self.values.intersection(&common) != other.values.intersection(&common) {
            return None;
        }
        Some(Cylinder {
            m: self.m,
            domain: self.domain.union(&other.domain),
            values: self.values.union(&other.values),
        })
    }

    pub fn is_disjoint(&self, other: &Cylinder) -> bool {
        self.intersect(other).is_none()
    }

    /// `[self] ⊆ [other]`: `other` fixes nothing that `self` leaves free or
    /// sets differently.
    pub fn is_subset_of(&self, other: &Cylinder) -> bool {
        other.domain.is_subset(&self.domain)
            && self.values.intersection(&other.domain) == other.values
    }

    /// `[self] ∖ [other]` as pairwise disjoint cylinders: for the positions
    /// `f_1 < f_2 < …` that `other` fixes and `self` leaves free, piece `j`
    /// agrees with `other` on `f_1..f_{j-1}` and disagrees at `f_j`.
    pub fn subtract(&self, other: &Cylinder) -> Vec<Cylinder> {
        if self.is_disjoint(other) {
            return vec![self.clone()];
        }
        let free = other.domain.difference(&self.domain);
        let mut out = Vec::with_capacity(free.count());
        let mut prefix = self.clone();
        for f in free.ones() {
            let want = other.values.contains(f);
            let mut piece = prefix.clone();
            piece.fix(f, !want).expect("f < m");
            out.push(piece);
            prefix.fix(f, want).expect("f < m");
        }
        out
    }
}

/// A finite union of cylinders over the same truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderUnion {
    m: usize,
    cylinders: Vec<Cylinder>,
}

impl CylinderUnion {
    pub fn new(m: usize, cylinders: Vec<Cylinder>) -> Result<Self> {
        if let Some(c) = cylinders.iter().find(|c| c.m != m) {
            return Err(Error::input(format!(
                "mixed truncations: {} and {m}",
                c.m
            )));
        }
        Ok(CylinderUnion { m, cylinders })
    }

    pub fn truncation(&self) -> usize {
        self.m
    }

    pub fn cylinders(&self) -> &[Cylinder] {
        &self.cylinders
    }

    pub fn len(&self) -> usize {
        self.cylinders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    pub fn contains_point(&self, x: &SubsetMask) -> bool {
        self.cylinders.iter().any(|c| c.contains_point(x))
    }

    /// The same point set as pairwise disjoint cylinders.
    pub fn disjoint_pieces(&self) -> Vec<Cylinder> {
        let mut out: Vec<Cylinder> = Vec::new();
        for c in &self.cylinders {
            let mut pieces = vec![c.clone()];
            for prev in &out {
                pieces = pieces.iter().flat_map(|p| p.subtract(prev)).collect();
            }
            out.extend(pieces);
        }
        out
    }
}

fn same_truncation(u: &CylinderUnion, v: &CylinderUnion) -> Result<()> {
    if u.m != v.m {
        return Err(Error::input(format!(
            "mixed truncations: {} and {}",
            u.m, v.m
        )));
    }
    Ok(())
}

/// Inclusion–exclusion budget (nonempty intersections visited).
pub const INCLUSION_EXCLUSION_BUDGET: u64 = 1 << 24;

/// `μ(⋃ u)` by inclusion–exclusion over cylinder intersections. Empty
/// intersections prune every superset, so disjoint families cost one term
/// per cylinder.
pub fn union_measure(u: &CylinderUnion) -> Result<Rational> {
    fn walk(
        cs: &[Cylinder],
        start: usize,
        acc: &Cylinder,
        depth: usize,
        total: &mut Rational,
        visited: &mut u64,
    ) -> Result<()> {
        for i in start..cs.len() {
            if let Some(next) = acc.intersect(&cs[i]) {
                *visited += 1;
                if *visited > INCLUSION_EXCLUSION_BUDGET {
                    return Err(Error::cap(
                        "inclusion-exclusion terms",
                        *visited,
                        INCLUSION_EXCLUSION_BUDGET,
                    ));
                }
                if depth.is_multiple_of(2) {
                    *total += next.measure();
                } else {
                    *total -= next.measure();
                }
                walk(cs, i + 1, &next, depth + 1, total, visited)?;
            }
        }
        Ok(())
    }
    let mut total = Rational::default();
    let mut visited = 0;
    walk(
        &u.cylinders,
        0,
        &Cylinder::everything(u.m),
        0,
        &mut total,
        &mut visited,
    )?;
    Ok(total)
}

/// `μ(⋃u ∖ ⋃v)` by symbolic refinement into disjoint cylinders.
pub fn diff_measure(u: &CylinderUnion, v: &CylinderUnion) -> Result<Rational> {
    same_truncation(u, v)?;
    let mut pieces = u.disjoint_pieces();
    for d in &v.cylinders {
        pieces = pieces.iter().flat_map(|p| p.subtract(d)).collect();
    }
    Ok(pieces.iter().map(Cylinder::measure).sum())
}

/// `μ(⋃u ∖ ⋃v) = μ(⋃u ∪ ⋃v) − μ(⋃v)`, both by inclusion–exclusion.
pub fn diff_measure_inclusion_exclusion(u: &CylinderUnion, v: &CylinderUnion) -> Result<Rational> {
    same_truncation(u, v)?;
    let mut both = u.cylinders.clone();
    both.extend(v.cylinders.iter().cloned());
    let joint = CylinderUnion::new(u.m, both)?;
    Ok(union_measure(&joint)? - union_measure(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn cyl(m: usize, pairs: &[(usize, bool)]) -> Cylinder {
        Cylinder::from_pairs(m, pairs).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn single_cylinder_measure() {
        let c = cyl(10, &[(0, true), (4, false), (7, true)]);
        let u = CylinderUnion::new(10, vec![c]).unwrap();
        assert_eq!(union_measure(&u).unwrap(), r(1, 8));
    }

    #[test]
    fn self_difference_is_zero() {
        let u = CylinderUnion::new(
            6,
            vec![cyl(6, &[(0, true)]), cyl(6, &[(1, true), (2, false)])],
        )
        .unwrap();
        assert!(diff_measure(&u, &u).unwrap().is_zero());
        assert!(diff_measure_inclusion_exclusion(&u, &u).unwrap().is_zero());
        assert_eq!(union_measure(&u).unwrap(), r(1, 2) + r(1, 4) - r(1, 8));
    }

    #[test]
    fn subtract_pieces_are_disjoint() {
        let c = cyl(6, &[(0, true)]);
        let d = cyl(6, &[(1, true), (2, false), (3, true)]);
        let pieces = c.subtract(&d);
        assert_eq!(pieces.len(), 3);
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i + 1..] {
                assert!(a.is_disjoint(b));
            }
            assert!(a.is_subset_of(&c));
            assert!(a.is_disjoint(&d));
        }
        let total: Rational = pieces.iter().map(Cylinder::measure).sum();
        assert_eq!(total, r(1, 2) - r(1, 16));
        assert!(c.intersect(&d).unwrap().subtract(&c).is_empty());
    }

    #[test]
    fn mixed_truncations_rejected() {
        let u = CylinderUnion::new(6, vec![]).unwrap();
        let v = CylinderUnion::new(9, vec![]).unwrap();
        assert!(diff_measure(&u, &v).is_err());
        assert!(CylinderUnion::new(6, vec![cyl(9, &[])]).is_err());
        assert!(Cylinder::from_pairs(4, &[(1, true), (1, false)]).is_err());
    }
}
