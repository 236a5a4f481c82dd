//! Exact rationals and the `[0,1]`-confined [`UnitRational`].
//!
//! Text form everywhere is `p/q` in lowest terms with a positive denominator,
//! `/1` required for integers. [`parse_rational`] rejects anything else.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds a rational from small integers. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Canonical `p/q` rendering.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Why a rational token was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalSyntax {
    MissingSlash,
    BadDigits,
    LeadingZero,
    ZeroDenominator,
    NotLowestTerms,
}

impl fmt::Display for RationalSyntax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RationalSyntax::MissingSlash => "expected `p/q`",
            RationalSyntax::BadDigits => "numerator and denominator must be decimal digits",
            RationalSyntax::LeadingZero => "leading zeros are not allowed",
            RationalSyntax::ZeroDenominator => "zero denominator",
            RationalSyntax::NotLowestTerms => "non-canonical rational (not in lowest terms)",
        };
        f.write_str(s)
    }
}

fn parse_digits(s: &str) -> std::result::Result<BigInt, RationalSyntax> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalSyntax::BadDigits);
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(RationalSyntax::LeadingZero);
    }
    BigInt::parse_bytes(s.as_bytes(), 10).ok_or(RationalSyntax::BadDigits)
}

/// Parses a strict canonical `p/q` token, optionally signed with a leading `-`.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, RationalSyntax> {
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let (p, q) = body.split_once('/').ok_or(RationalSyntax::MissingSlash)?;
    let numer = parse_digits(p)?;
    let denom = parse_digits(q)?;
    if denom.is_zero() {
        return Err(RationalSyntax::ZeroDenominator);
    }
    if !numer.gcd(&denom).is_one() || (numer.is_zero() && !denom.is_one()) {
        return Err(RationalSyntax::NotLowestTerms);
    }
    if negative && numer.is_zero() {
        return Err(RationalSyntax::NotLowestTerms);
    }
    let numer = if negative { -numer } else { numer };
    Ok(Rational::new_raw(numer, denom))
}

/// Bit length of the denominator.
pub fn denominator_bits(r: &Rational) -> u64 {
    r.denom().bits()
}

/// An exact rational in the closed unit interval.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitRational(Rational);

impl UnitRational {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() || value > Rational::one() {
            return Err(Error::OutOfUnitInterval(format_rational(&value)));
        }
        Ok(UnitRational(value))
    }

    /// `numer/denom`; panics when the value is outside `[0,1]`.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        UnitRational::new(ratio(numer, denom)).expect("value outside [0,1]")
    }

    pub fn zero() -> Self {
        UnitRational(Rational::zero())
    }

    pub fn one() -> Self {
        UnitRational(Rational::one())
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    /// Wraps a value already known to be in range.
    pub(crate) fn new_unchecked(value: Rational) -> Self {
        debug_assert!(!value.is_negative() && value <= Rational::one());
        UnitRational(value)
    }

    /// Absolute difference, itself always in `[0,1]`.
    pub fn abs_diff(&self, other: &UnitRational) -> UnitRational {
        UnitRational((&self.0 - &other.0).abs())
    }
}

impl Deref for UnitRational {
    type Target = Rational;

    fn deref(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for UnitRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s).map_err(|reason| Error::Rational {
            token: s.to_string(),
            reason,
        })?;
        UnitRational::new(r)
    }
}

impl TryFrom<Rational> for UnitRational {
    type Error = Error;

    fn try_from(value: Rational) -> Result<Self> {
        UnitRational::new(value)
    }
}

impl Serialize for UnitRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UnitRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a [`Rational`] as a `"p/q"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(|e| serde::de::Error::custom(format!("{s}: {e}")))
    }
}

/// Same as [`serde_rational`] for `Option<Rational>`, `null` for `None`.
pub mod serde_opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.collect_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(|e| serde::de::Error::custom(format!("{s}: {e}"))))
            .transpose()
    }
}

/// `Vec<Rational>` as a list of `"p/q"` strings.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(|e| serde::de::Error::custom(format!("{s}: {e}"))))
            .collect()
    }
}

pub(crate) fn sign_of(r: &Rational) -> Sign {
    if r.is_zero() {
        Sign::NoSign
    } else if r.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}
