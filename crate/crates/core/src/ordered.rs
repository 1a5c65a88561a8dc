//! Value groups: `ℚⁿ` under right-to-left lexicographic order, the lattice
//! `ℤⁿ`, convex subgroups and the coarsening projections.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of `ℚⁿ`. Coordinate `0` belongs to the finest variable, the last
/// coordinate is compared first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Value {
    coords: Vec<Rational64>,
}

impl Value {
    pub fn new(coords: Vec<Rational64>) -> Self {
        Value { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Value { coords: vec![Rational64::zero(); rank] }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Value { coords: coords.iter().map(|&c| Rational64::from_integer(c)).collect() }
    }

    /// Builds a value from `(numerator, denominator)` pairs.
    pub fn from_fracs(coords: &[(i64, i64)]) -> Self {
        Value { coords: coords.iter().map(|&(p, q)| Rational64::new(p, q)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Sign relative to zero under the value order.
    pub fn signum(&self) -> Ordering {
        self.cmp(&Value::zero(self.rank()))
    }

    /// Right-to-left lexicographic comparison.
    pub fn compare(&self, other: &Value) -> Result<Ordering> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.cmp(other))
    }

    pub fn scale(&self, m: Rational64) -> Value {
        Value { coords: self.coords.iter().map(|c| c * m).collect() }
    }

    /// True iff every coordinate is an integer.
    pub fn is_lattice(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, when the value lies in the lattice.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Canonical representative modulo `ℤⁿ`, each coordinate in `[0, 1)`.
    pub fn coset_key(&self) -> Value {
        Value { coords: self.coords.iter().map(|c| c - c.floor()).collect() }
    }

    /// Least positive integer `m` with `m·self` in the lattice.
    pub fn torsion_order(&self) -> i64 {
        self.coords.iter().fold(1, |acc, c| acc.lcm(c.denom()))
    }

    /// Splits into the image modulo `Δ_k` (last `n-k` coordinates) and the
    /// part inside `Δ_k` (first `k` coordinates).
    pub fn split(&self, cut: ConvexCut) -> (Value, Value) {
        let k = cut.0.min(self.rank());
        (Value { coords: self.coords[k..].to_vec() }, Value { coords: self.coords[..k].to_vec() })
    }

    /// The coarse part of [`Value::split`].
    pub fn coarsen(&self, k: usize) -> Value {
        self.split(ConvexCut(k)).0
    }

    /// The fine part of [`Value::split`].
    pub fn fine(&self, k: usize) -> Value {
        self.split(ConvexCut(k)).1
    }

    /// Concatenates a fine part and a coarse part back into one value.
    pub fn join(fine: &Value, coarse: &Value) -> Value {
        let mut coords = fine.coords.clone();
        coords.extend_from_slice(&coarse.coords);
        Value { coords }
    }
}

impl Ord for Value {
    /// Panics when ranks differ; use [`Value::compare`] for a checked version.
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.rank(), other.rank(), "comparing values of different rank");
        for (a, b) in self.coords.iter().zip(&other.coords).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Value {
    type Output = Value;
    fn add(self, rhs: &Value) -> Value {
        assert_eq!(self.rank(), rhs.rank(), "adding values of different rank");
        Value { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Value {
    type Output = Value;
    fn sub(self, rhs: &Value) -> Value {
        assert_eq!(self.rank(), rhs.rank(), "subtracting values of different rank");
        Value { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        &self + &rhs
    }
}

impl Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        &self - &rhs
    }
}

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        -&self
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn rational_string(r: &Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational64(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{}'", s));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(rational_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coords = v.iter().map(|s| parse_rational64(s)).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        Ok(Value { coords })
    }
}

/// A value or `∞`. `Infinity` is larger than every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedValue {
    Finite(Value),
    Infinity,
}

impl ExtendedValue {
    pub fn finite(&self) -> Option<&Value> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            ExtendedValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::Infinity)
    }

    pub fn add_value(&self, v: &Value) -> ExtendedValue {
        match self {
            ExtendedValue::Finite(a) => ExtendedValue::Finite(a + v),
            ExtendedValue::Infinity => ExtendedValue::Infinity,
        }
    }

    pub fn add(&self, other: &ExtendedValue) -> ExtendedValue {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => ExtendedValue::Finite(a + b),
            _ => ExtendedValue::Infinity,
        }
    }

    pub fn coarsen(&self, k: usize) -> ExtendedValue {
        match self {
            ExtendedValue::Finite(a) => ExtendedValue::Finite(a.coarsen(k)),
            ExtendedValue::Infinity => ExtendedValue::Infinity,
        }
    }

    /// Sign relative to zero; `∞` counts as positive.
    pub fn signum(&self) -> Ordering {
        match self {
            ExtendedValue::Finite(a) => a.signum(),
            ExtendedValue::Infinity => Ordering::Greater,
        }
    }
}

impl From<Value> for ExtendedValue {
    fn from(v: Value) -> Self {
        ExtendedValue::Finite(v)
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(v) => write!(f, "{}", v),
            ExtendedValue::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtendedValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedValue::Finite(v) => v.serialize(s),
            ExtendedValue::Infinity => "inf".serialize(s),
        }
    }
}

/// The convex subgroup `Δ_k` of values supported on the first `k` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConvexCut(pub usize);

impl ConvexCut {
    pub fn contains(&self, a: &Value) -> bool {
        a.coords().iter().skip(self.0).all(Zero::is_zero)
    }
}

/// The lattice `ℤⁿ` of values of the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub rank: usize,
}

impl Lattice {
    pub fn member(&self, a: &Value) -> bool {
        a.is_lattice()
    }

    pub fn coset_key(&self, a: &Value) -> Value {
        a.coset_key()
    }
}

/// Adds a lattice vector given as integers.
pub fn add_ints(a: &Value, e: &[i64]) -> Value {
    a + &Value::from_ints(e)
}

/// `|r|` for a rational; used when bounding searches.
pub fn abs_rational(r: &Rational64) -> Rational64 {
    r.abs()
}

/// The value `1` in the coordinate `i` of rank `n`.
pub fn unit_vector(n: usize, i: usize) -> Value {
    let mut coords = vec![Rational64::zero(); n];
    coords[i] = Rational64::one();
    Value::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_reads_right_to_left() {
        let a = Value::from_ints(&[5, 0]);
        let b = Value::from_ints(&[-5, 1]);
        assert!(a < b);
        assert!(Value::from_ints(&[1, 1]) > Value::from_ints(&[0, 1]));
        assert!(Value::from_ints(&[0, 0]).compare(&Value::from_ints(&[0])).is_err());
    }

    #[test]
    fn split_keeps_coarse_tail() {
        let a = Value::from_fracs(&[(1, 4), (1, 2), (3, 1)]);
        let (coarse, fine) = a.split(ConvexCut(1));
        assert_eq!(coarse, Value::from_fracs(&[(1, 2), (3, 1)]));
        assert_eq!(fine, Value::from_fracs(&[(1, 4)]));
        assert!(ConvexCut(1).contains(&Value::from_fracs(&[(7, 3), (0, 1), (0, 1)])));
        assert!(!ConvexCut(1).contains(&a));
    }

    #[test]
    fn coset_keys_and_torsion() {
        let a = Value::from_fracs(&[(-1, 4), (1, 2)]);
        assert_eq!(a.coset_key(), Value::from_fracs(&[(3, 4), (1, 2)]));
        assert_eq!(a.torsion_order(), 4);
        assert_eq!(Value::from_ints(&[3, -2]).torsion_order(), 1);
        assert_eq!(add_ints(&a, &[1, 0]).coset_key(), a.coset_key());
    }

    #[test]
    fn rationals_round_trip_through_text() {
        for s in ["0", "-3", "1/2", "-7/4"] {
            assert_eq!(rational_string(&parse_rational64(s).unwrap()), s);
        }
        assert_eq!(parse_rational64(" 2/4 ").unwrap(), Rational64::new(1, 2));
        for bad in ["", "1/0", "a", "1/b"] {
            assert!(matches!(parse_rational64(bad), Err(Error::Parse(_))), "{}", bad);
        }
    }

    #[test]
    fn values_serialize_as_rational_strings() {
        let a = Value::from_fracs(&[(-1, 4), (1, 2)]);
        let s = serde_json_like(&a);
        assert_eq!(s, vec!["-1/4".to_string(), "1/2".to_string()]);
        assert_eq!(ExtendedValue::Infinity.add(&ExtendedValue::Finite(a.clone())), ExtendedValue::Infinity);
        assert_eq!(ExtendedValue::Finite(a).coarsen(1), ExtendedValue::Finite(Value::from_fracs(&[(1, 2)])));
        assert_eq!(unit_vector(3, 1), Value::from_ints(&[0, 1, 0]));
    }

    fn serde_json_like(a: &Value) -> Vec<String> {
        a.coords().iter().map(rational_string).collect()
    }
}
