//! Oriented tangle diagrams as stacks of elementary slices read bottom to top.
//!
//! Positions are 0-based here; the text format uses 1-based indices.

mod cable;
mod dsl;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{Sign, SignedBoundary};

pub use cable::cable_diagram;
pub use dsl::{parse_tangle, DslError, DSL_GRAMMAR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingKind {
    /// The strand entering at the lower left passes over.
    Positive,
    /// The strand entering at the lower right passes over.
    Negative,
}

impl CrossingKind {
    pub fn sign(self) -> Sign {
        match self {
            CrossingKind::Positive => Sign::Plus,
            CrossingKind::Negative => Sign::Minus,
        }
    }
}

/// One elementary piece of a diagram.
///
/// `dir` on a cup or cap optionally fixes the orientation of its left leg.
/// It only matters for closed loops, whose orientation the boundary cannot
/// determine; on other strands it must agree with the propagated orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slice {
    Crossing { index: usize, kind: CrossingKind },
    Cup { index: usize, dir: Option<Sign> },
    Cap { index: usize, dir: Option<Sign> },
}

impl Slice {
    pub fn crossing(index: usize, kind: CrossingKind) -> Slice {
        Slice::Crossing { index, kind }
    }

    pub fn cup(index: usize) -> Slice {
        Slice::Cup { index, dir: None }
    }

    pub fn cap(index: usize) -> Slice {
        Slice::Cap { index, dir: None }
    }

    pub fn index(&self) -> usize {
        match *self {
            Slice::Crossing { index, .. } | Slice::Cup { index, .. } | Slice::Cap { index, .. } => index,
        }
    }

    /// The slice with its orientation hint removed.
    pub fn shape(&self) -> Slice {
        match *self {
            Slice::Cup { index, .. } => Slice::cup(index),
            Slice::Cap { index, .. } => Slice::cap(index),
            s => s,
        }
    }

    fn with_dir(&self, d: Option<Sign>) -> Slice {
        match *self {
            Slice::Cup { index, .. } => Slice::Cup { index, dir: d },
            Slice::Cap { index, .. } => Slice::Cap { index, dir: d },
            s => s,
        }
    }

    fn shifted(&self, by: usize) -> Slice {
        match *self {
            Slice::Crossing { index, kind } => Slice::Crossing { index: index + by, kind },
            Slice::Cup { index, dir } => Slice::Cup { index: index + by, dir },
            Slice::Cap { index, dir } => Slice::Cap { index: index + by, dir },
        }
    }
}

/// Where an orientation or width problem was detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Slice(usize),
    Top,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Slice(k) => write!(f, "slice {}", k + 1),
            Site::Top => write!(f, "top boundary"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("boundary mismatch: expected {expected}, got {got}")]
    BoundaryMismatch {
        expected: SignedBoundary,
        got: SignedBoundary,
    },
    #[error("{site}: {message}")]
    Width { site: Site, message: String },
    #[error("{site}: {message}")]
    Orientation { site: Site, message: String },
    #[error("sign pattern {pattern} is not allowed: {reason}")]
    IllegalSignPattern {
        pattern: SignedBoundary,
        reason: String,
    },
    #[error("braid generator {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i64, strands: usize },
    #[error("{0}")]
    Syntax(String),
}

/// A validated oriented tangle diagram.
///
/// Equality compares boundaries, slice shapes, and the orientation of every
/// strand at every level; orientation hints themselves are not compared.
#[derive(Clone, Debug)]
pub struct TangleDiagram {
    bottom: SignedBoundary,
    top: SignedBoundary,
    slices: Vec<Slice>,
    levels: Vec<Vec<Sign>>,
    closed: Vec<bool>,
}

impl PartialEq for TangleDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.bottom == other.bottom
            && self.top == other.top
            && self.slices.len() == other.slices.len()
            && self
                .slices
                .iter()
                .zip(&other.slices)
                .all(|(a, b)| a.shape() == b.shape())
            && self.levels == other.levels
    }
}

impl Eq for TangleDiagram {}

/// Union-find over strand variables with a parity bit on each edge:
/// `value(v) = value(parent) * (-1)^parity`.
struct Orienter {
    parent: Vec<usize>,
    parity: Vec<bool>,
    fixed: Vec<Option<Sign>>,
    anchored: Vec<bool>,
}

/// A strand position refers to a variable, possibly with its sign flipped.
type Pos = (usize, bool);

fn flip(s: Sign, f: bool) -> Sign {
    if f {
        -s
    } else {
        s
    }
}

impl Orienter {
    fn new() -> Self {
        Orienter {
            parent: Vec::new(),
            parity: Vec::new(),
            fixed: Vec::new(),
            anchored: Vec::new(),
        }
    }

    fn fresh(&mut self, fixed: Option<Sign>, anchored: bool) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.parity.push(false);
        self.fixed.push(fixed);
        self.anchored.push(anchored);
        v
    }

    fn find(&mut self, v: usize) -> (usize, bool) {
        let p = self.parent[v];
        if p == v {
            return (v, false);
        }
        let (root, par) = self.find(p);
        self.parent[v] = root;
        self.parity[v] ^= par;
        (root, self.parity[v])
    }

    /// Requires `value(pos) = sign`.
    fn fix(&mut self, (v, f): Pos, sign: Sign, anchor: bool) -> bool {
        let (r, p) = self.find(v);
        let want = flip(sign, f ^ p);
        if anchor {
            self.anchored[r] = true;
        }
        match self.fixed[r] {
            Some(s) => s == want,
            None => {
                self.fixed[r] = Some(want);
                true
            }
        }
    }

    /// Requires `value(a) = -value(b)`.
    fn oppose(&mut self, (va, fa): Pos, (vb, fb): Pos) -> bool {
        let (ra, pa) = self.find(va);
        let (rb, pb) = self.find(vb);
        let rel = fa ^ pa ^ fb ^ pb ^ true;
        if ra == rb {
            return !rel;
        }
        self.parent[ra] = rb;
        self.parity[ra] = rel;
        self.anchored[rb] |= self.anchored[ra];
        if let Some(s) = self.fixed[ra] {
            let want = flip(s, rel);
            match self.fixed[rb] {
                Some(t) if t != want => return false,
                _ => self.fixed[rb] = Some(want),
            }
        }
        true
    }

    fn value(&mut self, (v, f): Pos) -> Sign {
        let (r, p) = self.find(v);
        flip(self.fixed[r].expect("all variables are fixed"), f ^ p)
    }
}

impl TangleDiagram {
    /// Validates widths and propagates orientations.
    pub fn new(
        bottom: SignedBoundary,
        top: SignedBoundary,
        slices: Vec<Slice>,
    ) -> Result<Self, TangleError> {
        let mut or = Orienter::new();
        let mut pos: Vec<Pos> = bottom
            .signs()
            .iter()
            .map(|s| (or.fresh(Some(*s), true), false))
            .collect();
        let mut snapshots: Vec<Vec<Pos>> = vec![pos.clone()];
        let mut slice_var: Vec<Option<Pos>> = Vec::with_capacity(slices.len());

        for (k, slice) in slices.iter().enumerate() {
            let w = pos.len();
            let width_err = |message: String| TangleError::Width {
                site: Site::Slice(k),
                message,
            };
            match *slice {
                Slice::Crossing { index, .. } => {
                    if index + 1 >= w {
                        return Err(width_err(format!(
                            "crossing at {} needs two strands but the width is {w}",
                            index + 1
                        )));
                    }
                    pos.swap(index, index + 1);
                    slice_var.push(None);
                }
                Slice::Cup { index, dir } => {
                    if index > w {
                        return Err(width_err(format!(
                            "cup at {} is outside the width {w}",
                            index + 1
                        )));
                    }
                    let v = or.fresh(dir, false);
                    pos.insert(index, (v, true));
                    pos.insert(index, (v, false));
                    slice_var.push(Some((v, false)));
                }
                Slice::Cap { index, dir } => {
                    if index + 1 >= w {
                        return Err(width_err(format!(
                            "cap at {} needs two strands but the width is {w}",
                            index + 1
                        )));
                    }
                    let (l, r) = (pos[index], pos[index + 1]);
                    let ok = or.oppose(l, r) && dir.is_none_or(|d| or.fix(l, d, false));
                    if !ok {
                        return Err(TangleError::Orientation {
                            site: Site::Slice(k),
                            message: "cap joins two strands running the same way".into(),
                        });
                    }
                    pos.drain(index..index + 2);
                    slice_var.push(Some(l));
                }
            }
            snapshots.push(pos.clone());
        }

        if pos.len() != top.len() {
            return Err(TangleError::Width {
                site: Site::Top,
                message: format!(
                    "diagram ends with {} strands but the top boundary has {} points",
                    pos.len(),
                    top.len()
                ),
            });
        }
        for (i, (p, s)) in pos.iter().zip(top.signs()).enumerate() {
            if !or.fix(*p, *s, true) {
                return Err(TangleError::Orientation {
                    site: Site::Top,
                    message: format!("strand at top point {} has the wrong orientation", i + 1),
                });
            }
        }
        for v in 0..or.parent.len() {
            let (r, p) = or.find(v);
            if or.fixed[r].is_none() {
                or.fixed[r] = Some(flip(Sign::Plus, p));
            }
        }

        let levels = snapshots
            .iter()
            .map(|lvl| lvl.iter().map(|p| or.value(*p)).collect())
            .collect();
        let closed = slice_var
            .iter()
            .map(|sv| match sv {
                Some((v, _)) => {
                    let (r, _) = or.find(*v);
                    !or.anchored[r]
                }
                None => false,
            })
            .collect();
        Ok(TangleDiagram {
            bottom,
            top,
            slices,
            levels,
            closed,
        })
    }

    /// The identity tangle: vertical strands with the given signs.
    pub fn trivial(phi: &SignedBoundary) -> Self {
        TangleDiagram::new(phi.clone(), phi.clone(), Vec::new()).expect("trivial tangle is valid")
    }

    /// The empty diagram, unit for tensor and composition on the empty object.
    pub fn empty() -> Self {
        TangleDiagram::trivial(&SignedBoundary::empty())
    }

    /// The rainbow of `k` nested cups with top signs `phi`; requires
    /// `phi(p_i) = -phi(p_{2k-i+1})`.
    pub fn cup(phi: &SignedBoundary) -> Result<Self, TangleError> {
        let n = phi.len();
        let s = phi.signs();
        if !n.is_multiple_of(2) || (0..n / 2).any(|i| s[i] != -s[n - 1 - i]) {
            return Err(TangleError::IllegalSignPattern {
                pattern: phi.clone(),
                reason: "a nested cup needs opposite signs at mirrored points".into(),
            });
        }
        let slices = (0..n / 2).map(Slice::cup).collect();
        TangleDiagram::new(SignedBoundary::empty(), phi.clone(), slices)
    }

    /// `k` side-by-side cups with top signs `phi`; requires
    /// `phi(p_{2i}) = -phi(p_{2i-1})`.
    pub fn plat(phi: &SignedBoundary) -> Result<Self, TangleError> {
        let n = phi.len();
        let s = phi.signs();
        if !n.is_multiple_of(2) || (0..n / 2).any(|i| s[2 * i] != -s[2 * i + 1]) {
            return Err(TangleError::IllegalSignPattern {
                pattern: phi.clone(),
                reason: "side-by-side cups need opposite signs in each consecutive pair".into(),
            });
        }
        let slices = (0..n / 2).map(|i| Slice::cup(2 * i)).collect();
        TangleDiagram::new(SignedBoundary::empty(), phi.clone(), slices)
    }

    /// An upward braid on `n` strands. Letter `i` is a positive crossing on
    /// strands `i, i+1` (1-based) and `-i` a negative one.
    pub fn braid(n: usize, word: &[i64]) -> Result<Self, TangleError> {
        let slices = word
            .iter()
            .map(|&l| {
                let i = l.unsigned_abs() as usize;
                if l == 0 || i >= n {
                    return Err(TangleError::IndexOutOfRange { index: l, strands: n });
                }
                let kind = if l > 0 {
                    CrossingKind::Positive
                } else {
                    CrossingKind::Negative
                };
                Ok(Slice::crossing(i - 1, kind))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let phi = SignedBoundary::uniform(n, Sign::Plus);
        TangleDiagram::new(phi.clone(), phi, slices)
    }

    pub fn bottom(&self) -> &SignedBoundary {
        &self.bottom
    }

    pub fn top(&self) -> &SignedBoundary {
        &self.top
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    /// Strand orientations at level `k`: level 0 is the bottom, level `k`
    /// lies just above slice `k - 1`.
    pub fn level(&self, k: usize) -> &[Sign] {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Vec<Sign>] {
        &self.levels
    }

    /// Whether the cup or cap at slice `k` lies on a closed loop.
    pub fn on_closed_loop(&self, k: usize) -> bool {
        self.closed[k]
    }

    pub fn crossing_count(&self) -> usize {
        self.slices
            .iter()
            .filter(|s| matches!(s, Slice::Crossing { .. }))
            .count()
    }

    /// The left-leg orientation of the cup or cap at slice `k`.
    pub(crate) fn leg_orientation(&self, k: usize) -> Option<Sign> {
        match self.slices[k] {
            Slice::Cup { index, .. } => Some(self.levels[k + 1][index]),
            Slice::Cap { index, .. } => Some(self.levels[k][index]),
            Slice::Crossing { .. } => None,
        }
    }

    /// Slices with every cup and cap hint set to its actual orientation.
    fn pinned_slices(&self) -> Vec<Slice> {
        (0..self.slices.len())
            .map(|k| self.slices[k].with_dir(self.leg_orientation(k)))
            .collect()
    }

    /// Stacks `t2` on top of `self`.
    pub fn compose(&self, t2: &TangleDiagram) -> Result<Self, TangleError> {
        if self.top != t2.bottom {
            return Err(TangleError::BoundaryMismatch {
                expected: self.top.clone(),
                got: t2.bottom.clone(),
            });
        }
        let mut slices = self.pinned_slices();
        slices.extend(t2.pinned_slices());
        TangleDiagram::new(self.bottom.clone(), t2.top.clone(), slices)
    }

    /// Places `t2` to the right of `self`. The slices of `self` run first,
    /// then those of `t2` shifted past the top strands of `self`.
    pub fn tensor(&self, t2: &TangleDiagram) -> Self {
        let shift = self.top.len();
        let mut slices = self.pinned_slices();
        slices.extend(t2.pinned_slices().iter().map(|s| s.shifted(shift)));
        TangleDiagram::new(self.bottom.concat(&t2.bottom), self.top.concat(&t2.top), slices)
            .expect("tensor of valid diagrams is valid")
    }

    /// The diagram turned upside down by a half turn in the plane.
    pub fn reverse(&self) -> Self {
        let pinned = self.pinned_slices();
        let slices = (0..pinned.len())
            .rev()
            .map(|k| {
                let below = self.levels[k].len();
                let above = self.levels[k + 1].len();
                match pinned[k] {
                    Slice::Crossing { index, kind } => Slice::Crossing {
                        index: below - 2 - index,
                        kind,
                    },
                    Slice::Cup { index, dir } => Slice::Cap {
                        index: above - 2 - index,
                        dir,
                    },
                    Slice::Cap { index, dir } => Slice::Cup {
                        index: below - 2 - index,
                        dir,
                    },
                }
            })
            .collect();
        TangleDiagram::new(self.top.barred(), self.bottom.barred(), slices)
            .expect("reverse of a valid diagram is valid")
    }

    /// Every component with its orientation reversed.
    pub fn negate(&self) -> Self {
        let slices = (0..self.slices.len())
            .map(|k| self.slices[k].with_dir(self.leg_orientation(k).map(|s| -s)))
            .collect();
        TangleDiagram::new(self.bottom.negated(), self.top.negated(), slices)
            .expect("negation of a valid diagram is valid")
    }

    /// Text form accepted by [`parse_tangle`]. Hints are written only for
    /// cups and caps on closed loops.
    pub fn to_dsl(&self) -> String {
        let signs = |b: &SignedBoundary| b.signs().iter().map(|s| format!(" {s}")).collect::<String>();
        let mut out = format!("bottom{}\n", signs(&self.bottom));
        for (k, s) in self.slices.iter().enumerate() {
            let hint = if self.closed[k] {
                self.leg_orientation(k).map(|d| format!(" {d}")).unwrap_or_default()
            } else {
                String::new()
            };
            let line = match *s {
                Slice::Crossing { index, kind: CrossingKind::Positive } => format!("x {}", index + 1),
                Slice::Crossing { index, kind: CrossingKind::Negative } => format!("xbar {}", index + 1),
                Slice::Cup { index, .. } => format!("cup {}{hint}", index + 1),
                Slice::Cap { index, .. } => format!("cap {}{hint}", index + 1),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str(&format!("top{}\n", signs(&self.top)));
        out
    }
}

impl fmt::Display for TangleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dsl())
    }
}
