//! Signs and signed indices (bar notation: a barred index carries sign -1).

use std::fmt;

use rug::Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{parse_rational, to_ratio_string};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i32(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// sign^n
    pub fn pow(self, n: u64) -> Sign {
        if self == Sign::Minus && n % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    /// Parses `+`/`-` (also `1`/`-1`).
    pub fn parse(s: &str) -> Option<Sign> {
        match s.trim() {
            "+" | "1" | "+1" => Some(Sign::Plus),
            "-" | "-1" => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i32(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i32::deserialize(d)?;
        Sign::from_i32(v)
            .ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// Integer exponent with a sign, used for classical (q = 1) sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedIndex {
    pub value: i64,
    pub sign: Sign,
}

impl SignedIndex {
    pub fn new(value: i64, sign: Sign) -> Self {
        SignedIndex { value, sign }
    }

    pub fn plain(value: i64) -> Self {
        SignedIndex::new(value, Sign::Plus)
    }

    pub fn bar(value: i64) -> Self {
        SignedIndex::new(value, Sign::Minus)
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.value),
            Sign::Minus => write!(f, "bar({})", self.value),
        }
    }
}

/// Exponent of a q-series term. Rational so that real `t` (e.g. 1/2) stays
/// exact through the reductions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QIndex {
    pub value: Rational,
    pub sign: Sign,
}

impl QIndex {
    pub fn new(value: Rational, sign: Sign) -> Self {
        QIndex { value, sign }
    }
}

impl fmt::Display for QIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.value),
            Sign::Minus => write!(f, "bar({})", self.value),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QIndexRepr {
    value: String,
    sign: Sign,
}

impl Serialize for QIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QIndexRepr {
            value: to_ratio_string(&self.value),
            sign: self.sign,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = QIndexRepr::deserialize(d)?;
        let value = parse_rational(&repr.value).map_err(serde::de::Error::custom)?;
        Ok(QIndex::new(value, repr.sign))
    }
}

/// Serde adapter for a `Rational` stored as a `"p/q"` string.
pub(crate) mod ratio_string {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{parse_rational, to_ratio_string};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_ratio_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
