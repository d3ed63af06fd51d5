use crate::rational::{self, Q};
use num_traits::Zero;
use serde::{Serialize, Serializer};
use std::fmt;

/// A value that may be infinite, as used for chain lengths, reaches and limits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended<T> {
    Finite(T),
    Infinite,
}

impl<T> Extended<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }
}

impl Extended<Q> {
    /// `−m/δ`, infinite when `δ = 0`.
    pub fn neg_ratio(m: &Q, delta: &Q) -> Self {
        if delta.is_zero() {
            Extended::Infinite
        } else {
            Extended::Finite(-m / delta)
        }
    }

    /// `1/x` with `1/∞ = 0`.
    pub fn reciprocal(&self) -> Q {
        match self {
            Extended::Finite(v) => v.recip(),
            Extended::Infinite => Q::zero(),
        }
    }
}

impl Extended<u32> {
    pub fn reciprocal(&self) -> Q {
        match self {
            Extended::Finite(v) => rational::frac(1, i64::from(*v)),
            Extended::Infinite => Q::zero(),
        }
    }

    pub fn as_rational(&self) -> Extended<Q> {
        match self {
            Extended::Finite(v) => Extended::Finite(rational::int(i64::from(*v))),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl fmt::Display for Extended<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{}", rational::show(v)),
            Extended::Infinite => write!(f, "∞"),
        }
    }
}

impl fmt::Display for Extended<u32> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => write!(f, "∞"),
        }
    }
}

impl<T> Serialize for Extended<T>
where
    Extended<T>: fmt::Display,
{
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
