//! Exact rational scalars and their textual form.
//!
//! Every rational that leaves the library is written as `p/q` in lowest
//! terms with `q > 0`, or as a bare integer `p` when `q = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`")]
pub struct RationalParseError(pub String);

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses an integer or a `p/q` fraction. Whitespace around the parts is ignored.
pub fn parse_q(s: &str) -> Result<Q, RationalParseError> {
    let err = || RationalParseError(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => BigInt::from_str(s).map(Q::from_integer).map_err(|_| err()),
    }
}

/// Parses a comma separated list of rationals, e.g. `1,1/2,0`.
pub fn parse_q_list(s: &str) -> Result<Vec<Q>, RationalParseError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}

pub fn format_q(v: &Q) -> String {
    // BigRational keeps itself reduced with a positive denominator.
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn abs_q(v: &Q) -> Q {
    v.abs()
}

/// Serde adapters writing rationals as strings.
pub mod serde_q {
    use super::{format_q, parse_q, Q};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = RawQ::deserialize(d)?;
        raw.into_q().map_err(de::Error::custom)
    }

    /// Accepts `"p/q"` strings as well as bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawQ {
        Str(String),
        Int(i64),
    }

    impl RawQ {
        pub(crate) fn into_q(self) -> Result<Q, String> {
            match self {
                RawQ::Str(s) => parse_q(&s).map_err(|e| e.to_string()),
                RawQ::Int(i) => Ok(super::q(i)),
            }
        }
    }

    pub mod pair {
        use super::{format_q, RawQ, Q};
        use serde::ser::SerializeTuple;
        use serde::{de, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Q; 2], s: S) -> Result<S::Ok, S::Error> {
            let mut t = s.serialize_tuple(2)?;
            t.serialize_element(&format_q(&v[0]))?;
            t.serialize_element(&format_q(&v[1]))?;
            t.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Q; 2], D::Error> {
            let [x, y] = <[RawQ; 2]>::deserialize(d)?;
            Ok([
                x.into_q().map_err(de::Error::custom)?,
                y.into_q().map_err(de::Error::custom)?,
            ])
        }
    }

    pub mod points {
        use super::{format_q, RawQ, Q};
        use serde::ser::SerializeSeq;
        use serde::{de, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[[Q; 2]], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for p in v {
                seq.serialize_element(&[format_q(&p[0]), format_q(&p[1])])?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<[Q; 2]>, D::Error> {
            let raw = Vec::<[RawQ; 2]>::deserialize(d)?;
            raw.into_iter()
                .map(|[x, y]| Ok([x.into_q()?, y.into_q()?]))
                .collect::<Result<_, String>>()
                .map_err(de::Error::custom)
        }
    }

    pub mod vec {
        use super::{format_q, RawQ, Q};
        use serde::{de, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(format_q))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            Vec::<RawQ>::deserialize(d)?
                .into_iter()
                .map(RawQ::into_q)
                .collect::<Result<_, String>>()
                .map_err(de::Error::custom)
        }
    }

    pub mod matrix {
        use super::{format_q, RawQ, Q};
        use serde::{de, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(m.iter().map(|row| row.iter().map(format_q).collect::<Vec<_>>()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
            Vec::<Vec<RawQ>>::deserialize(d)?
                .into_iter()
                .map(|row| row.into_iter().map(RawQ::into_q).collect::<Result<Vec<_>, String>>())
                .collect::<Result<_, String>>()
                .map_err(de::Error::custom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse_q(" -6/4 ").unwrap(), frac(-3, 2));
        assert_eq!(parse_q("3/-6").unwrap(), frac(-1, 2));
        assert_eq!(format_q(&frac(3, -6)), "-1/2");
        assert_eq!(format_q(&q(7)), "7");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("0.5").is_err());
        assert_eq!(parse_q_list("1,1/2,0").unwrap(), vec![q(1), frac(1, 2), q(0)]);
    }
}
