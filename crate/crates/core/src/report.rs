use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Tag identifying which congruence a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    Gauss,
    LTheorems,
    EulerGen,
    LagrangeExt,
    Moser,
    Sierpinski,
    FermatWilson,
    Leibniz,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Gauss,
        TheoremId::LTheorems,
        TheoremId::EulerGen,
        TheoremId::LagrangeExt,
        TheoremId::Moser,
        TheoremId::Sierpinski,
        TheoremId::FermatWilson,
        TheoremId::Leibniz,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Gauss => "gauss",
            TheoremId::LTheorems => "l-theorems",
            TheoremId::EulerGen => "euler-gen",
            TheoremId::LagrangeExt => "lagrange-ext",
            TheoremId::Moser => "moser",
            TheoremId::Sierpinski => "sierpinski",
            TheoremId::FermatWilson => "fermat-wilson",
            TheoremId::Leibniz => "leibniz",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == key)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// One evaluated congruence instance: `lhs ≡ rhs (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub theorem: TheoremId,
    pub m: i64,
    pub x: Option<i64>,
    pub a: Option<i64>,
    pub modulus: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// The point lies outside the theorem's stated hypotheses and was
    /// evaluated only because the caller asked for it.
    pub excluded_by_hypothesis: bool,
    pub note: Option<String>,
}

impl CongruenceReport {
    pub fn new(theorem: TheoremId, m: i64, modulus: i64, lhs: i64, rhs: i64) -> Self {
        debug_assert!((0..modulus).contains(&lhs) && (0..modulus).contains(&rhs));
        CongruenceReport {
            theorem,
            m,
            x: None,
            a: None,
            modulus,
            lhs,
            rhs,
            holds: lhs == rhs,
            excluded_by_hypothesis: false,
            note: None,
        }
    }

    pub fn with_x(mut self, x: i64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn with_a(mut self, a: i64) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Canonical ordering: `(m, x, a)`, then theorem tag.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        (self.m, self.x, self.a, self.theorem).cmp(&(other.m, other.x, other.a, other.theorem))
    }
}
