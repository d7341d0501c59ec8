use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value in `[0, +inf]` where `+inf` is a legitimate answer rather than an
/// overflow. Serializes as a JSON number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }

    /// Lossy conversion; `Infinite` becomes `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    /// `1/x`, with `1/inf = 0`.
    pub fn recip(&self) -> f64 {
        match *self {
            Extended::Finite(x) => 1.0 / x,
            Extended::Infinite => 0.0,
        }
    }
}

impl From<f64> for Extended {
    fn from(x: f64) -> Self {
        if x.is_infinite() && x > 0.0 {
            Extended::Infinite
        } else {
            Extended::Finite(x)
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match *self {
            Extended::Finite(x) => serializer.serialize_f64(x),
            Extended::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = Extended;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Extended, E> {
                Ok(Extended::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Extended, E> {
                Ok(Extended::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Extended, E> {
                Ok(Extended::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Extended, E> {
                if v == "inf" {
                    Ok(Extended::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}
