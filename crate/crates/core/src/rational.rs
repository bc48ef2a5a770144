//! Exact rational helpers: parsing and printing in `p/q` form, serde adapters,
//! certified square roots and closed rational intervals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

pub fn from_big(value: &BigInt) -> Rat {
    Rat::from_integer(value.clone())
}

/// Always `p/q`, including `q = 1`.
pub fn fmt_rat(value: &Rat) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Accepts `p`, `p/q` and a leading sign. The denominator must be nonzero.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let text = text.trim();
    let bad = |m: &str| Error::parse(0, format!("{m}: {text:?}"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

pub fn ceil_int(value: &Rat) -> BigInt {
    value.ceil().to_integer()
}

pub fn to_f64(value: &Rat) -> f64 {
    // numer/denom may overflow f64 separately; fine for the magnitudes used here.
    value.numer().to_f64().unwrap_or(f64::NAN) / value.denom().to_f64().unwrap_or(f64::NAN)
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root when both numerator and denominator are perfect squares.
pub fn exact_sqrt(value: &Rat) -> Option<Rat> {
    Some(Rat::new(exact_isqrt(value.numer())?, exact_isqrt(value.denom())?))
}

/// A closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatInterval {
    #[serde(with = "serde_rat")]
    pub lo: Rat,
    #[serde(with = "serde_rat")]
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(value: Rat) -> Self {
        RatInterval { lo: value.clone(), hi: value }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, value: &Rat) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        let a = &self.lo * factor;
        let b = &self.hi * factor;
        if a <= b { Self::new(a, b) } else { Self::new(b, a) }
    }

    pub fn shift(&self, offset: &Rat) -> Self {
        Self::new(&self.lo + offset, &self.hi + offset)
    }

    /// Tight enclosure of `{x^2 : x in self}`.
    pub fn square(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.lo.is_negative() && self.hi.is_positive() {
            Self::new(Rat::zero(), a.max(b))
        } else if a <= b {
            Self::new(a, b)
        } else {
            Self::new(b, a)
        }
    }
}

impl Add for &RatInterval {
    type Output = RatInterval;
    fn add(self, rhs: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;
    fn sub(self, rhs: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval::new(-&self.hi, -&self.lo)
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rat(&self.lo), fmt_rat(&self.hi))
    }
}

/// A real number known either exactly or through a certified enclosure.
///
/// Serialized as a `"p/q"` string when exact and as `{"lo": .., "hi": ..}` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealValue {
    Exact(Rat),
    Enclosure(RatInterval),
}

impl Serialize for RealValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RealValue::Exact(v) => s.serialize_str(&fmt_rat(v)),
            RealValue::Enclosure(iv) => iv.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for RealValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Exact(String),
            Enclosure(RatInterval),
        }
        match Repr::deserialize(d)? {
            Repr::Exact(t) => parse_rat(&t).map(RealValue::Exact).map_err(serde::de::Error::custom),
            Repr::Enclosure(iv) => Ok(RealValue::Enclosure(iv)),
        }
    }
}

impl RealValue {
    pub fn exact(&self) -> Option<&Rat> {
        match self {
            RealValue::Exact(value) => Some(value),
            RealValue::Enclosure(_) => None,
        }
    }

    pub fn interval(&self) -> RatInterval {
        match self {
            RealValue::Exact(value) => RatInterval::point(value.clone()),
            RealValue::Enclosure(interval) => interval.clone(),
        }
    }

    /// `Some(true)` if certainly positive, `Some(false)` if certainly not, `None` if the
    /// enclosure straddles zero.
    pub fn is_positive(&self) -> Option<bool> {
        let iv = self.interval();
        if iv.lo.is_positive() {
            Some(true)
        } else if !iv.hi.is_positive() {
            Some(false)
        } else {
            None
        }
    }

    pub fn is_negative(&self) -> Option<bool> {
        let iv = self.interval();
        if iv.hi.is_negative() {
            Some(true)
        } else if !iv.lo.is_negative() {
            Some(false)
        } else {
            None
        }
    }

    /// Applies an affine map `a*x + b` to the value, keeping exactness.
    pub fn affine(&self, a: &Rat, b: &Rat) -> RealValue {
        match self {
            RealValue::Exact(value) => RealValue::Exact(a * value + b),
            RealValue::Enclosure(interval) => RealValue::Enclosure(interval.scale(a).shift(b)),
        }
    }

    pub fn square(&self) -> RealValue {
        match self {
            RealValue::Exact(value) => RealValue::Exact(value * value),
            RealValue::Enclosure(interval) => RealValue::Enclosure(interval.square()),
        }
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealValue::Exact(value) => f.write_str(&fmt_rat(value)),
            RealValue::Enclosure(interval) => write!(f, "{interval}"),
        }
    }
}

/// Square root of a nonnegative rational: exact if it is a rational square,
/// otherwise an enclosure `[lo, hi]` with `lo^2 <= value <= hi^2` and width `< max_width`.
pub fn sqrt_rat(value: &Rat, max_width: &Rat) -> Result<RealValue> {
    if value.is_negative() {
        return Err(Error::Precondition(format!("square root of negative {}", fmt_rat(value))));
    }
    if let Some(root) = exact_sqrt(value) {
        return Ok(RealValue::Exact(root));
    }
    if !max_width.is_positive() {
        return Err(Error::InvalidParameter("enclosure width must be positive".into()));
    }
    // sqrt(p/q) = sqrt(p*q)/q; scale by 2^s until 1/(q*2^s) < max_width.
    let p = value.numer();
    let q = value.denom();
    let mut scale = BigInt::one();
    while Rat::new(BigInt::one(), q * &scale) >= *max_width {
        scale <<= 4;
    }
    let radicand = p * q * &scale * &scale;
    let floor = radicand.sqrt();
    let denom = q * &scale;
    let lo = Rat::new(floor.clone(), denom.clone());
    let hi = Rat::new(floor + 1, denom);
    Ok(RealValue::Enclosure(RatInterval::new(lo, hi)))
}

pub fn min_rat(a: Rat, b: Rat) -> Rat {
    if a <= b { a } else { b }
}

/// `true` iff the integer is divisible by `d`.
pub fn divisible(value: &BigInt, d: i64) -> bool {
    value.is_multiple_of(&BigInt::from(d))
}

/// Serde adapter: a rational as a `"p/q"` string.
pub mod serde_rat {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        parse_rat(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>`.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(fmt_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts.iter().map(|t| parse_rat(t).map_err(serde::de::Error::custom)).collect()
    }
}

/// Serde adapter for `Vec<Vec<Rat>>`.
pub mod serde_rat_matrix {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Rat>], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(rows.iter().map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rat>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|r| r.iter().map(|t| parse_rat(t).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

/// Serde adapter for big integers: a JSON number when it fits in `i64`, a decimal
/// string otherwise. Both forms are accepted on input.
pub mod serde_int {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        match value.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&value.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Small(v) => Ok(BigInt::from(v)),
            Repr::Text(t) => t.trim().parse().map_err(serde::de::Error::custom),
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(value: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match value {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<BigInt>, D::Error> {
            match Option::<Repr>::deserialize(d)? {
                None => Ok(None),
                Some(Repr::Small(v)) => Ok(Some(BigInt::from(v))),
                Some(Repr::Text(t)) => t.trim().parse().map(Some).map_err(serde::de::Error::custom),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat(" 7 ").unwrap(), int(7));
        assert_eq!(fmt_rat(&int(7)), "7/1");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_sqrt(&rat(576, 361)), Some(rat(24, 19)));
        assert_eq!(exact_sqrt(&rat(16, 9)), Some(rat(4, 3)));
        assert_eq!(exact_sqrt(&int(2)), None);
    }

    #[test]
    fn sqrt_enclosure_is_certified() {
        let width = rat(1, 1_000_000_000_000);
        for v in [int(2), rat(3, 2), rat(17, 11), rat(1_000_001, 999)] {
            let RealValue::Enclosure(interval) = sqrt_rat(&v, &width).unwrap() else {
                panic!("expected enclosure");
            };
            assert!(&interval.lo * &interval.lo <= v);
            assert!(&interval.hi * &interval.hi >= v);
            assert!(interval.width() < width);
        }
    }

    #[test]
    fn interval_square_straddling_zero() {
        let iv = RatInterval::new(int(-2), int(1));
        assert_eq!(iv.square(), RatInterval::new(int(0), int(4)));
    }
}
