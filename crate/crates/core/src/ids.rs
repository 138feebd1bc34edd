//! Canonical divisor identifiers.
//!
//! The id grammar is used verbatim in every file format and report:
//!
//! - `V<i>` for the vertices of `P`, `i ∈ 0..4`;
//! - `E<i><j>:<l>` for the `l`-th interior point of the edge from `V<i>` to
//!   `V<j>` (`i < j`, `l ∈ 1..4`, counted from `V<i>`);
//! - `F<i><j><k>:<l>` for the `l`-th interior point of the 2-face spanned by
//!   `V<i>`, `V<j>`, `V<k>` (`i < j < k`, `l ∈ 1..6`, points ordered by
//!   lexicographically decreasing barycentric triple);
//! - `G<f>:<l>` for the `l`-th interior point of the facet opposite `V<f>`
//!   (`l ∈ 1..4`, same lexicographic ordering on the barycentric 4-tuple).

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Identifier of a boundary lattice point / toric divisor.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisorId {
    /// `V<i>`
    Vertex { i: u8 },
    /// `E<i><j>:<l>`, `i < j`, `l ∈ 1..=4`
    Edge { i: u8, j: u8, l: u8 },
    /// `F<i><j><k>:<l>`, `i < j < k`, `l ∈ 1..=6`
    Face { i: u8, j: u8, k: u8, l: u8 },
    /// `G<f>:<l>`, facet opposite vertex `f`, `l ∈ 1..=4`
    FacetInterior { f: u8, l: u8 },
}

impl DivisorId {
    /// Rank used for the canonical ordering: vertices, then edge points by
    /// lexicographic edge and increasing `l`, then face points, then
    /// facet-interior points.
    fn sort_key(&self) -> (u8, u8, u8, u8, u8) {
        match *self {
            DivisorId::Vertex { i } => (0, i, 0, 0, 0),
            DivisorId::Edge { i, j, l } => (1, i, j, l, 0),
            DivisorId::Face { i, j, k, l } => (2, i, j, k, l),
            DivisorId::FacetInterior { f, l } => (3, f, l, 0, 0),
        }
    }

    /// True for divisors in the generating set `S` (everything except the
    /// facet-interior points, which miss the anticanonical hypersurface).
    #[must_use]
    pub fn in_hypersurface_basis(&self) -> bool {
        !matches!(self, DivisorId::FacetInterior { .. })
    }
}

impl PartialOrd for DivisorId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DivisorId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for DivisorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DivisorId::Vertex { i } => write!(f, "V{i}"),
            DivisorId::Edge { i, j, l } => write!(f, "E{i}{j}:{l}"),
            DivisorId::Face { i, j, k, l } => write!(f, "F{i}{j}{k}:{l}"),
            DivisorId::FacetInterior { f: omit, l } => write!(f, "G{omit}:{l}"),
        }
    }
}

impl fmt::Debug for DivisorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from parsing a divisor id string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseIdError {
    pub input: String,
}

impl fmt::Display for ParseIdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed divisor id {:?}", self.input)
    }
}

impl std::error::Error for ParseIdError {}

impl FromStr for DivisorId {
    type Err = ParseIdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseIdError {
            input: s.to_string(),
        };
        let bytes = s.as_bytes();
        let digit = |b: u8| -> Option<u8> { b.is_ascii_digit().then(|| b - b'0') };
        let parsed = match bytes.first() {
            Some(b'V') if bytes.len() == 2 => {
                let i = digit(bytes[1]).ok_or_else(err)?;
                (i <= 4).then_some(DivisorId::Vertex { i })
            }
            Some(b'E') if bytes.len() == 5 && bytes[3] == b':' => {
                let i = digit(bytes[1]).ok_or_else(err)?;
                let j = digit(bytes[2]).ok_or_else(err)?;
                let l = digit(bytes[4]).ok_or_else(err)?;
                (i < j && j <= 4 && (1..=4).contains(&l)).then_some(DivisorId::Edge { i, j, l })
            }
            Some(b'F') if bytes.len() == 6 && bytes[4] == b':' => {
                let i = digit(bytes[1]).ok_or_else(err)?;
                let j = digit(bytes[2]).ok_or_else(err)?;
                let k = digit(bytes[3]).ok_or_else(err)?;
                let l = digit(bytes[5]).ok_or_else(err)?;
                (i < j && j < k && k <= 4 && (1..=6).contains(&l)).then_some(DivisorId::Face {
                    i,
                    j,
                    k,
                    l,
                })
            }
            Some(b'G') if bytes.len() == 4 && bytes[2] == b':' => {
                let f = digit(bytes[1]).ok_or_else(err)?;
                let l = digit(bytes[3]).ok_or_else(err)?;
                (f <= 4 && (1..=4).contains(&l)).then_some(DivisorId::FacetInterior { f, l })
            }
            _ => None,
        };
        parsed.ok_or_else(err)
    }
}

impl Serialize for DivisorId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DivisorId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
