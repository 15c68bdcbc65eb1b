use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// A level in {NEG, 0, 1, ..., INF}. Every negative value is collapsed to NEG.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedLevel {
    Neg,
    Finite(u32),
    Inf,
}

impl ExtendedLevel {
    /// Any integer, negatives collapsing to NEG.
    pub fn from_i64(v: i64) -> Self {
        if v < 0 {
            ExtendedLevel::Neg
        } else {
            ExtendedLevel::Finite(v as u32)
        }
    }

    pub fn is_nonnegative(self) -> bool {
        self != ExtendedLevel::Neg
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ExtendedLevel::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for ExtendedLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedLevel::Neg => write!(f, "neg"),
            ExtendedLevel::Finite(v) => write!(f, "{v}"),
            ExtendedLevel::Inf => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtendedLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" => Ok(ExtendedLevel::Inf),
            "neg" => Ok(ExtendedLevel::Neg),
            other => other
                .parse::<u32>()
                .map(ExtendedLevel::Finite)
                .map_err(|_| format!("expected a nonnegative integer, 'inf' or 'neg', got '{s}'")),
        }
    }
}

impl Serialize for ExtendedLevel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedLevel::Neg => s.serialize_str("neg"),
            ExtendedLevel::Finite(v) => s.serialize_u32(*v),
            ExtendedLevel::Inf => s.serialize_str("inf"),
        }
    }
}

/// Serializes `None` as "inf".
pub(crate) fn ser_opt_inf<S: Serializer>(v: &Option<u32>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_u32(*x),
        None => s.serialize_str("inf"),
    }
}
