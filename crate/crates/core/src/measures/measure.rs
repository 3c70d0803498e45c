use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, PreconditionFailure, Result};
use crate::independence::{is_independent_capped, IndependenceVerdict, DEFAULT_INDEPENDENCE_CAP};
use crate::setsys::{FiniteAlgebra, SetFamily, SubsetMask};

pub type Rational = BigRational;

/// `2^{-k}`
pub fn inverse_power_of_two(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// A finitely additive probability on a finite algebra: one nonnegative
/// weight per atom, summing to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    algebra: FiniteAlgebra,
    weights: Vec<Rational>,
}

impl Measure {
    pub fn new(algebra: FiniteAlgebra, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != algebra.atom_count() {
            return Err(Error::input(format!(
                "{} weights for {} atoms",
                weights.len(),
                algebra.atom_count()
            )));
        }
        if let Some(w) = weights.iter().find(|w| **w < Rational::zero()) {
            return Err(Error::input(format!("negative weight {w}")));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::input(format!("weights sum to {total}, not 1")));
        }
        Ok(Measure { algebra, weights })
    }

    /// Equal weight on every atom.
    pub fn uniform(algebra: FiniteAlgebra) -> Self {
        let k = algebra.atom_count();
        let w = Rational::new(BigInt::one(), BigInt::from(k));
        Measure {
            algebra,
            weights: vec![w; k],
        }
    }

    /// Atoms given in any order with their weights; the pairs are re-sorted
    /// into canonical atom order.
    pub fn from_weighted_atoms(ground: usize, pairs: Vec<(SubsetMask, Rational)>) -> Result<Self> {
        let atoms: Vec<SubsetMask> = pairs.iter().map(|(a, _)| a.clone()).collect();
        let algebra = FiniteAlgebra::from_atoms(ground, atoms)?;
        let weights = algebra
            .atoms()
            .iter()
            .map(|a| {
                pairs
                    .iter()
                    .find(|(b, _)| b == a)
                    .map(|(_, w)| w.clone())
                    .expect("same atoms")
            })
            .collect();
        Measure::new(algebra, weights)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `μ(a)`: the total weight of the atoms inside `a`.
    pub fn measure_of(&self, a: &SubsetMask) -> Result<Rational> {
        if !self.algebra.contains(a)? {
            return Err(Error::input(format!("{a} is not in the measure's algebra")));
        }
        Ok(self
            .algebra
            .atoms()
            .iter()
            .zip(&self.weights)
            .filter(|(atom, _)| atom.is_subset(a))
            .map(|(_, w)| w)
            .sum())
    }

    pub(crate) fn check_family(&self, family: &SetFamily) -> Result<()> {
        for (i, m) in family.iter().enumerate() {
            if !self.algebra.contains(m)? {
                return Err(Error::input(format!(
                    "member {i} ({m}) is not in the measure's algebra"
                )));
            }
        }
        Ok(())
    }

    /// Largest atom weight. Every ε above it admits a partition of 1 into
    /// pieces of measure `< ε` (the atoms); no ε at or below it does.
    pub fn nonatomic_threshold(&self) -> Rational {
        self.weights.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// The atom partition when all its pieces have measure `< eps`.
    pub fn small_partition(&self, eps: &Rational) -> Option<Vec<SubsetMask>> {
        (self.nonatomic_threshold() < *eps).then(|| self.algebra.atoms().to_vec())
    }
}

pub fn nonatomic_threshold(mu: &Measure) -> Rational {
    mu.nonatomic_threshold()
}

/// For an independent family of `k` sets, the measure on the generated
/// algebra giving every sign cell weight `2^{-k}`. The cells are exactly
/// the atoms, so each atom gets `2^{-k}`; then `μ(a_i) = 1/2` and the `a_i`
/// are stochastically independent.
pub fn product_measure_on_independent(family: &SetFamily) -> Result<Measure> {
    if let IndependenceVerdict::Dependent { cell } =
        is_independent_capped(family, DEFAULT_INDEPENDENCE_CAP)?
    {
        return Err(PreconditionFailure::Dependent { cell }.into());
    }
    let algebra = FiniteAlgebra::generate(family);
    let k = family.len();
    debug_assert_eq!(algebra.atom_count(), 1 << k);
    let w = inverse_power_of_two(k);
    let n = algebra.atom_count();
    Measure::new(algebra, vec![w; n])
}
