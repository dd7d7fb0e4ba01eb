//! Signed boundary points: the objects of the oriented tangle category.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

/// Orientation sign of a boundary point or strand. `Plus` means the strand
/// runs upward through that point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
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

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An ordered, possibly empty, sequence of signed points `p_1 < ... < p_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedBoundary(pub Vec<Sign>);

impl SignedBoundary {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignedBoundary(signs)
    }

    pub fn empty() -> Self {
        SignedBoundary(Vec::new())
    }

    /// All points carry the same sign.
    pub fn uniform(n: usize, sign: Sign) -> Self {
        SignedBoundary(vec![sign; n])
    }

    /// Parses a compact string of `+`/`-` characters, ignoring whitespace.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Some(Sign::Plus),
                '-' => Some(Sign::Minus),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(SignedBoundary)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// Every sign flipped.
    pub fn negated(&self) -> Self {
        SignedBoundary(self.0.iter().map(|s| -*s).collect())
    }

    /// The boundary seen after turning the cylinder upside down:
    /// `bar(p_i) = -phi(p_{n-i+1})`.
    pub fn barred(&self) -> Self {
        SignedBoundary(self.0.iter().rev().map(|s| -*s).collect())
    }

    pub fn concat(&self, other: &SignedBoundary) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignedBoundary(v)
    }

    /// Sum of the signs; a morphism between two objects exists iff the sums agree.
    pub fn total(&self) -> i32 {
        self.0.iter().map(|s| s.value()).sum()
    }
}

impl fmt::Display for SignedBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<Sign>> for SignedBoundary {
    fn from(v: Vec<Sign>) -> Self {
        SignedBoundary(v)
    }
}
