//! Exact rational values and their string form.
//!
//! Every value that feeds a comparison in this crate is an exact
//! [`Rational`]. On the wire rationals are strings, `"p/q"` on output (always
//! with an explicit denominator, lowest terms) and either `"p/q"` or `"p"` on
//! input.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Builds `numer / denom`. Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `2^-exp` as an exact rational.
pub fn pow2_inv(exp: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << exp)
}

/// Formats as `"p/q"`, including `"1/1"` and `"0/1"`.
pub fn to_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"p/q"` or `"p"` and normalizes to lowest terms.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Input(format!("malformed rational {text:?}"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() || denom.is_negative() {
        return Err(Error::Input(format!(
            "rational {text:?} needs a positive denominator"
        )));
    }
    Ok(Rational::new(numer, denom))
}

/// Serde adapter for a single rational stored as a string.
pub mod serde_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for a vector of rationals stored as strings.
pub mod serde_vec {
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&super::to_string(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| super::parse(t).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse(" -6/9 ").unwrap(), ratio(-2, 3));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("1/0").is_err());
        assert!(parse("1/-2").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn output_always_has_denominator() {
        assert_eq!(to_string(&int(1)), "1/1");
        assert_eq!(to_string(&Rational::zero()), "0/1");
        assert_eq!(to_string(&ratio(6, 8)), "3/4");
        assert_eq!(pow2_inv(3), ratio(1, 8));
    }
}
