use crate::error::{EkqError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// "p/q", or "p" when q = 1.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| EkqError::Malformed(format!("bad rational `{s}`")))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| EkqError::Malformed(format!("bad rational `{s}`")))?;
        if d == BigInt::from(0) {
            return Err(EkqError::Malformed(format!("zero denominator in `{s}`")));
        }
        Ok(Rational::new(n, d))
    } else {
        let n = BigInt::from_str(t).map_err(|_| EkqError::Malformed(format!("bad rational `{s}`")))?;
        Ok(Rational::from_integer(n))
    }
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => parse_rational(&s).map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(int(i)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
