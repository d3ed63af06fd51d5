//! Exact rational arithmetic helpers and string serialization ("p/q", integers as "p").

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// Exact rational number used for every weight and degree.
pub type Q = BigRational;

/// Builds a rational from an integer.
pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Builds the rational `num / den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "p", "-p" or "p/q".
pub fn parse(s: &str) -> Result<Q, String> {
    let t = s.trim();
    if let Some((a, b)) = t.split_once('/') {
        let n = BigInt::from_str(a.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))?;
        let d = BigInt::from_str(b.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("bad rational {s:?}: zero denominator"));
        }
        Ok(Q::new(n, d))
    } else {
        BigInt::from_str(t)
            .map(Q::from_integer)
            .map_err(|e| format!("bad rational {s:?}: {e}"))
    }
}

/// Formats as "p/q" or "p".
pub fn show(q: &Q) -> String {
    q.to_string()
}

/// True when `q` is an integer.
pub fn is_integral(q: &Q) -> bool {
    q.denom().is_one()
}

/// Least common multiple of the denominators of `qs`.
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Rescales `qs` to the primitive integer vector on the same ray (gcd of entries 1).
/// Zero vectors are returned unchanged.
pub fn primitive(qs: &[Q]) -> Vec<Q> {
    use num_integer::Integer;
    let l = denominator_lcm(qs.iter());
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if g.is_zero() {
        return qs.to_vec();
    }
    ints.into_iter().map(|n| Q::from_integer(n / &g)).collect()
}

/// Sign test helper.
pub fn is_positive(q: &Q) -> bool {
    q.is_positive()
}

/// Serde adapter: a single rational as a string.
pub mod as_string {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: an optional rational as a string or null.
pub mod opt_string {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&q.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| super::parse(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

/// Serde adapter: a list of rationals as strings.
pub mod vec_string {
    use super::Q;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(qs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(qs.len()))?;
        for q in qs {
            seq.serialize_element(&q.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| super::parse(s).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_show_round_trip() {
        for s in ["0", "3", "-7", "1/2", "-5/3"] {
            assert_eq!(show(&parse(s).unwrap()), s);
        }
        assert_eq!(show(&parse("4/2").unwrap()), "2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn primitive_clears_denominators_and_gcd() {
        let v = primitive(&[frac(1, 2), int(1), frac(3, 2)]);
        assert_eq!(v, vec![int(1), int(2), int(3)]);
        let v = primitive(&[int(4), int(6)]);
        assert_eq!(v, vec![int(2), int(3)]);
    }
}
