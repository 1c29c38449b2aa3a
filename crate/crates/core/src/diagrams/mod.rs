//! Combinatorial link diagrams.
//!
//! Two encodings cover every diagram used in this crate:
//!
//! * [`AnnularLink`]: the closure of a [`BraidWord`] inside a solid torus,
//!   optionally decorated with meridian loops around individual strands.
//!   Cyclic covers of such links are computed by taking powers of the word.
//! * [`ColoredTangle`]: a rectangular Morse diagram in a ball built from
//!   crossings, cups and caps. Closed diagrams ([`BicoloredLink`]) are tangles
//!   with no boundary slots.
//!
//! Crossing signs follow the right-handed convention: a letter of sign `+1`
//! is a positive crossing when both strands run downward, and in general the
//! sign of a crossing is the letter sign times the directions of its strands.

mod annular;
mod braid;
mod moves;
mod tangle;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use annular::{cyclic_cover_link, AnnularComponent, AnnularLink, ComponentSpec, CoverLink, Placement};
pub use braid::{BraidWord, Letter};
pub use moves::{reidemeister, Move};
pub use tangle::{
    bicolored_linking, close_tangle, half_twist_tangle, reverse_mirror, BicoloredLink,
    ColoredTangle, ComponentInfo, Crossing, Endpoint, Op, Slot, SlotDirection,
};

pub(crate) use tangle::Hint;

/// Component colors. Red and blue mark the two sheets of a double cover,
/// purple marks base curves whose lifts are red and blue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
    Purple,
    Uncolored,
}

impl Color {
    /// Exchanges red and blue, fixing the other colors.
    pub fn swapped(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
            other => other,
        }
    }

    pub fn is_bicolor(self) -> bool {
        matches!(self, Color::Red | Color::Blue)
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Purple => "purple",
            Color::Uncolored => "uncolored",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sign `±1`, serialized as the integer `1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Sign of a non-zero integer.
    pub fn of(v: i64) -> Sign {
        if v < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
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
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Sign, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_int(v).ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}
