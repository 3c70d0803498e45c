//! JSON document formats and serde helpers.
//!
//! * set family: `{"ground": N, "sets": [[0, 2], "0x5", …]}`; a member is an
//!   index list or a little-endian hex mask.
//! * pattern family: `{"coords": T, "patterns": ["0101", …]}`, character `i`
//!   giving coordinate `i`.
//! * measure: `{"algebra": <set family of atoms>, "weights": ["1/8", …]}`.
//! * Cantor parameters: `{"m": 36, "phi": [[0, 3], [3, 0]], "x": "0101…"}`;
//!   elements of `T` not listed in `phi` are fixed.
//! * cylinder: `{"m": 9, "dom": [0, 3], "val": "10"}`, one value character
//!   per listed position.

use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::cantor::{CantorParams, Cylinder};
use crate::error::{Error, Result};
use crate::independence::PatternFamily;
use crate::measures::Measure;
use crate::setsys::{FiniteAlgebra, SetFamily, SubsetMask};

pub fn ser_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

pub fn ser_rational_matrix<S: Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|row| row.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
    )
}

/// `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|e| Error::input(format!("bad rational {s:?}: {e}")))
}

fn from_value<T: DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::input(format!("{what}: {e}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawMask {
    Indices(Vec<usize>),
    Hex(String),
}

#[derive(Deserialize)]
struct RawFamily {
    ground: usize,
    sets: Vec<RawMask>,
}

impl RawFamily {
    fn build(self) -> Result<SetFamily> {
        let ground = self.ground;
        let members = self
            .sets
            .into_iter()
            .map(|m| match m {
                RawMask::Indices(v) => SubsetMask::from_indices(ground, v),
                RawMask::Hex(s) => SubsetMask::from_hex(ground, &s),
            })
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(ground, members)
    }
}

struct FamilyDoc<'a>(usize, &'a [SubsetMask]);

impl Serialize for FamilyDoc<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("ground", &self.0)?;
        map.serialize_entry("sets", self.1)?;
        map.end()
    }
}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FamilyDoc(self.ground_size(), self.members()).serialize(s)
    }
}

/// Written as the set family of its atoms.
impl Serialize for FiniteAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FamilyDoc(self.ground_size(), self.atoms()).serialize(s)
    }
}

/// One member in set-family notation: an index list or a hex mask.
pub fn mask_from_value(ground: usize, v: &Value) -> Result<SubsetMask> {
    match from_value::<RawMask>(v, "set")? {
        RawMask::Indices(ix) => SubsetMask::from_indices(ground, ix),
        RawMask::Hex(s) => SubsetMask::from_hex(ground, &s),
    }
}

pub fn set_family_from_value(v: &Value) -> Result<SetFamily> {
    from_value::<RawFamily>(v, "set family")?.build()
}

/// The algebra generated by a set-family document.
pub fn algebra_from_value(v: &Value) -> Result<FiniteAlgebra> {
    Ok(FiniteAlgebra::generate(&set_family_from_value(v)?))
}

impl Serialize for PatternFamily {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("coords", &self.coords())?;
        let bits: Vec<String> = self.patterns().iter().map(|p| p.to_bit_string()).collect();
        map.serialize_entry("patterns", &bits)?;
        map.end()
    }
}

#[derive(Deserialize)]
struct RawPatterns {
    coords: usize,
    patterns: Vec<String>,
}

pub fn pattern_family_from_value(v: &Value) -> Result<PatternFamily> {
    let raw: RawPatterns = from_value(v, "pattern family")?;
    let patterns = raw
        .patterns
        .iter()
        .map(|s| SubsetMask::from_bit_string(s))
        .collect::<Result<Vec<_>>>()?;
    PatternFamily::new(raw.coords, patterns)
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("algebra", self.algebra())?;
        let w: Vec<String> = self.weights().iter().map(|r| r.to_string()).collect();
        map.serialize_entry("weights", &w)?;
        map.end()
    }
}

#[derive(Deserialize)]
struct RawMeasure {
    algebra: RawFamily,
    weights: Vec<String>,
}

/// The `algebra` members must be the atoms (in any order), with `weights`
/// listed in the same order.
pub fn measure_from_value(v: &Value) -> Result<Measure> {
    let raw: RawMeasure = from_value(v, "measure")?;
    let atoms = raw.algebra.build()?;
    if atoms.len() != raw.weights.len() {
        return Err(Error::input(format!(
            "{} atoms but {} weights",
            atoms.len(),
            raw.weights.len()
        )));
    }
    let weights = raw
        .weights
        .iter()
        .map(|w| parse_rational(w))
        .collect::<Result<Vec<_>>>()?;
    let ground = atoms.ground_size();
    Measure::from_weighted_atoms(ground, atoms.into_members().into_iter().zip(weights).collect())
}

impl Serialize for Cylinder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let dom = self.domain().to_indices();
        let val: String = dom
            .iter()
            .map(|&i| if self.values().contains(i) { '1' } else { '0' })
            .collect();
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("m", &self.truncation())?;
        map.serialize_entry("dom", &dom)?;
        map.serialize_entry("val", &val)?;
        map.end()
    }
}

#[derive(Deserialize)]
struct RawCylinder {
    m: usize,
    dom: Vec<usize>,
    val: String,
}

pub fn cylinder_from_value(v: &Value) -> Result<Cylinder> {
    let raw: RawCylinder = from_value(v, "cylinder")?;
    let vals = SubsetMask::from_bit_string(&raw.val)?;
    if vals.len() != raw.dom.len() {
        return Err(Error::input(format!(
            "{} domain positions but {} values",
            raw.dom.len(),
            vals.len()
        )));
    }
    let pairs: Vec<(usize, bool)> = raw
        .dom
        .iter()
        .enumerate()
        .map(|(k, &i)| (i, vals.contains(k)))
        .collect();
    Cylinder::from_pairs(raw.m, &pairs)
}

impl Serialize for CantorParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let moved: Vec<(usize, usize)> = self
            .phi_pairs()
            .into_iter()
            .filter(|(a, b)| a != b)
            .collect();
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("m", &self.truncation())?;
        map.serialize_entry("phi", &moved)?;
        map.serialize_entry("x", &self.point().to_bit_string())?;
        map.end()
    }
}

#[derive(Deserialize)]
struct RawParams {
    m: usize,
    #[serde(default)]
    phi: Vec<(usize, usize)>,
    x: String,
}

pub fn cantor_params_from_value(v: &Value) -> Result<CantorParams> {
    let raw: RawParams = from_value(v, "Cantor parameters")?;
    let x = SubsetMask::from_bit_string(&raw.x)?;
    CantorParams::from_phi_pairs(raw.m, &raw.phi, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn set_family_round_trip() {
        let v = json!({"ground": 6, "sets": [[0, 2], "0x30", []]});
        let f = set_family_from_value(&v).unwrap();
        assert_eq!(f[1].to_indices(), vec![4, 5]);
        let back = serde_json::to_value(&f).unwrap();
        assert_eq!(back, json!({"ground": 6, "sets": [[0, 2], [4, 5], []]}));
        assert!(set_family_from_value(&json!({"ground": 2, "sets": [[3]]})).is_err());
        assert!(set_family_from_value(&json!({"sets": []})).is_err());
    }

    #[test]
    fn single_masks() {
        assert_eq!(mask_from_value(4, &json!([1, 3])).unwrap().to_indices(), vec![1, 3]);
        assert_eq!(mask_from_value(4, &json!("0x9")).unwrap().to_indices(), vec![0, 3]);
        assert!(mask_from_value(4, &json!([4])).is_err());
        assert!(mask_from_value(4, &json!({"a": 1})).is_err());
    }

    #[test]
    fn pattern_round_trip() {
        let v = json!({"coords": 3, "patterns": ["100", "011", "100"]});
        let c = pattern_family_from_value(&v).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(
            serde_json::to_value(&c).unwrap(),
            json!({"coords": 3, "patterns": ["100", "011"]})
        );
    }

    #[test]
    fn measure_round_trip() {
        let v = json!({"algebra": {"ground": 3, "sets": [[2], [0, 1]]}, "weights": ["1/4", "3/4"]});
        let mu = measure_from_value(&v).unwrap();
        assert_eq!(
            serde_json::to_value(&mu).unwrap(),
            json!({"algebra": {"ground": 3, "sets": [[0, 1], [2]]}, "weights": ["3/4", "1/4"]})
        );
        let bad = json!({"algebra": {"ground": 2, "sets": [[0], [1]]}, "weights": ["1/2", "1/3"]});
        assert!(measure_from_value(&bad).is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn cantor_round_trip() {
        let v = json!({"m": 9, "phi": [[0, 3], [3, 0]], "x": "000000000"});
        let p = cantor_params_from_value(&v).unwrap();
        assert_eq!(p.phi(), &[1, 0, 2]);
        assert_eq!(serde_json::to_value(&p).unwrap(), v);

        let c = cylinder_from_value(&json!({"m": 9, "dom": [0, 3], "val": "10"})).unwrap();
        assert_eq!(c.value_at(0), Some(true));
        assert_eq!(c.value_at(3), Some(false));
        assert_eq!(
            serde_json::to_value(&c).unwrap(),
            json!({"m": 9, "dom": [0, 3], "val": "10"})
        );
    }
}
