//! Exact rational numbers.
//!
//! All probabilities, payoffs and game values are carried as
//! [`Rational`], an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator. Textual form is `a/b`
//! (or a bare integer); terminating decimals such as `0.25` are accepted
//! on input and converted exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `numer / denom` as a [`Rational`]. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `a/b`, an integer, or a terminating decimal (`-0.125`, `.5`).
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let fail = |reason: &str| Error::InvalidRational {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(fail("empty"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let numer: BigInt = n.trim().parse().map_err(|_| fail("bad numerator"))?;
        let denom: BigInt = d.trim().parse().map_err(|_| fail("bad denominator"))?;
        if denom.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(whole) || !digits_ok(frac) || (whole.is_empty() && frac.is_empty()) {
            return Err(fail("bad decimal"));
        }
        let mut digits = String::with_capacity(whole.len() + frac.len());
        digits.push_str(whole);
        digits.push_str(frac);
        let numer: BigInt = digits.parse().map_err(|_| fail("bad decimal"))?;
        let denom = BigInt::from(10u8).pow(frac.len() as u32);
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    let numer: BigInt = s.parse().map_err(|_| fail("not a number"))?;
    Ok(Rational::from_integer(numer))
}

/// Parses a comma-separated list of rationals.
pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse).collect()
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// `2/3 (≈ 0.6667)`; integers render bare.
pub fn render_approx(value: &Rational) -> String {
    if value.is_integer() {
        value.to_string()
    } else {
        format!("{} (≈ {:.4})", value, to_f64(value))
    }
}

pub fn is_probability(value: &Rational) -> bool {
    !value.is_negative() && value <= &Rational::one()
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

/// Serde adapter storing a [`Rational`] as its `a/b` string.
pub mod serde_str {
    use super::Rational;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = RationalText::deserialize(deserializer)?;
        super::parse(&text.into_text()).map_err(de::Error::custom)
    }

    /// Accepts either a JSON string or a bare JSON number.
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum RationalText {
        Text(String),
        Int(i64),
        Float(f64),
    }

    impl RationalText {
        fn into_text(self) -> String {
            match self {
                RationalText::Text(s) => s,
                RationalText::Int(i) => i.to_string(),
                RationalText::Float(f) => f.to_string(),
            }
        }
    }

    pub mod vec {
        use super::super::Rational;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        #[derive(Serialize, Deserialize)]
        #[serde(transparent)]
        struct Wrap(#[serde(with = "super")] Rational);

        pub fn serialize<S: Serializer>(
            values: &[Rational],
            serializer: S,
        ) -> Result<S::Ok, S::Error> {
            serializer.collect_seq(values.iter().map(|v| v.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            deserializer: D,
        ) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<Wrap>::deserialize(deserializer)?;
            Ok(raw.into_iter().map(|w| w.0).collect())
        }
    }

    pub mod grid {
        use super::super::Rational;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        #[derive(Serialize, Deserialize)]
        #[serde(transparent)]
        struct Row(#[serde(with = "super::vec")] Vec<Rational>);

        pub fn serialize<S: Serializer>(
            rows: &[Vec<Rational>],
            serializer: S,
        ) -> Result<S::Ok, S::Error> {
            serializer.collect_seq(rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            deserializer: D,
        ) -> Result<Vec<Vec<Rational>>, D::Error> {
            let raw = Vec::<Row>::deserialize(deserializer)?;
            Ok(raw.into_iter().map(|r| r.0).collect())
        }
    }
}
