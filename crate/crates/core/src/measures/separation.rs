use serde::Serialize;

use super::measure::{Measure, Rational};
use crate::error::{Error, PreconditionFailure, Result};
use crate::independence::{max_independent, MaxIndependent};
use crate::setsys::SetFamily;

/// `min μ(a Δ b)` over unordered pairs of members.
pub fn min_pairwise_separation(mu: &Measure, family: &SetFamily) -> Result<Rational> {
    Ok(least_separated_pair(mu, family)?.2)
}

/// The least-separated pair `(i, j)`, `i < j`, first in index order on ties.
fn least_separated_pair(mu: &Measure, family: &SetFamily) -> Result<(usize, usize, Rational)> {
    if family.len() < 2 {
        return Err(Error::input("separation needs at least two members"));
    }
    mu.check_family(family)?;
    let mut best: Option<(usize, usize, Rational)> = None;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let v = mu.measure_of(&family[i].symmetric_difference(&family[j]))?;
            if best.as_ref().is_none_or(|b| v < b.2) {
                best = Some((i, j, v));
            }
        }
    }
    Ok(best.expect("at least one pair"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationProbe {
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub eps: Rational,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub min_separation: Rational,
    pub independent: MaxIndependent,
}

/// Checks that `family` is `eps`-separated under `mu`, then reports its
/// largest independent subfamily. This is an observation, not a bound.
pub fn separated_independence_probe(
    mu: &Measure,
    family: &SetFamily,
    eps: &Rational,
) -> Result<SeparationProbe> {
    let (i, j, min) = least_separated_pair(mu, family)?;
    if min < *eps {
        return Err(PreconditionFailure::NotSeparated { i, j, value: min }.into());
    }
    Ok(SeparationProbe {
        eps: eps.clone(),
        min_separation: min,
        independent: max_independent(family, None)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::product_measure_on_independent;
    use crate::setsys::FiniteAlgebra;
    use num_traits::Zero;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn separation_examples() {
        let pair = SetFamily::from_index_lists(4, [vec![0, 1], vec![0, 2]]).unwrap();
        let mu = product_measure_on_independent(&pair).unwrap();
        assert_eq!(min_pairwise_separation(&mu, &pair).unwrap(), r(1, 2));

        let dup = SetFamily::from_index_lists(4, [vec![0, 1], vec![0, 1]]).unwrap();
        let uni = Measure::uniform(FiniteAlgebra::powerset(4));
        assert!(min_pairwise_separation(&uni, &dup).unwrap().is_zero());

        let two = SetFamily::from_index_lists(4, [vec![0], vec![1]]).unwrap();
        assert_eq!(min_pairwise_separation(&uni, &two).unwrap(), r(1, 2));

        let one = SetFamily::from_index_lists(4, [vec![0]]).unwrap();
        assert!(min_pairwise_separation(&uni, &one).is_err());
    }

    #[test]
    fn probe_examples() {
        let pair = SetFamily::from_index_lists(4, [vec![0, 1], vec![0, 2]]).unwrap();
        let mu = product_measure_on_independent(&pair).unwrap();
        let p = separated_independence_probe(&mu, &pair, &r(1, 2)).unwrap();
        assert_eq!(p.independent.size, 2);

        let uni = Measure::uniform(FiniteAlgebra::powerset(4));
        let chain = SetFamily::from_index_lists(4, [vec![0], vec![0, 1], vec![0, 1, 2]]).unwrap();
        let p = separated_independence_probe(&uni, &chain, &r(1, 4)).unwrap();
        assert_eq!(p.independent.size, 1);

        let p = separated_independence_probe(&uni, &chain, &r(0, 1)).unwrap();
        assert_eq!(p.min_separation, r(1, 4));

        match separated_independence_probe(&uni, &chain, &r(1, 2)) {
            Err(Error::Precondition(PreconditionFailure::NotSeparated { i, j, value })) => {
                assert_eq!((i, j), (0, 1));
                assert_eq!(value, r(1, 4));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
