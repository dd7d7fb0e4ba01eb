//! Parallel cables of a diagram.
//!
//! Each strand is replaced by `N` parallel copies. Copy 1 runs along the
//! right-hand side of the original strand (with respect to its orientation)
//! and copy `N` along the left, so at a `+` point the block reads
//! `copy N, .., copy 1` from left to right and at a `-` point it reads
//! `copy 1, .., copy N`. Copy `j` is oriented like the original when
//! `eps[j] = +` and against it otherwise.

use crate::boundary::{Sign, SignedBoundary};

use super::{Slice, TangleDiagram};

/// The copy sitting at offset `q` of a block over a point of orientation `o`.
fn copy_at(q: usize, n: usize, o: Sign) -> usize {
    match o {
        Sign::Plus => n - 1 - q,
        Sign::Minus => q,
    }
}

fn expand(b: &[Sign], eps: &[Sign]) -> SignedBoundary {
    let n = eps.len();
    SignedBoundary(
        b.iter()
            .flat_map(|&o| (0..n).map(move |q| eps[copy_at(q, n, o)] * o))
            .collect(),
    )
}

/// The `N`-cable of `t` with copy orientations `eps` (`N = eps.len() >= 1`).
pub fn cable_diagram(t: &TangleDiagram, eps: &[Sign]) -> TangleDiagram {
    let n = eps.len();
    assert!(n >= 1, "a cable needs at least one copy");
    let mut slices = Vec::new();
    for (k, s) in t.slices().iter().enumerate() {
        match *s {
            Slice::Crossing { index, kind } => {
                let base = index * n;
                for r in 0..n {
                    for i in (base + r..base + n + r).rev() {
                        slices.push(Slice::Crossing { index: i, kind });
                    }
                }
            }
            Slice::Cup { index, .. } => {
                let o = t.leg_orientation(k).expect("cup has a left leg");
                let base = index * n;
                for q in 0..n {
                    let dir = eps[copy_at(q, n, o)] * o;
                    slices.push(Slice::Cup { index: base + q, dir: Some(dir) });
                }
            }
            Slice::Cap { index, .. } => {
                let o = t.leg_orientation(k).expect("cap has a left leg");
                let base = index * n;
                for q in (0..n).rev() {
                    let dir = eps[copy_at(q, n, o)] * o;
                    slices.push(Slice::Cap { index: base + q, dir: Some(dir) });
                }
            }
        }
    }
    TangleDiagram::new(
        expand(t.bottom().signs(), eps),
        expand(t.top().signs(), eps),
        slices,
    )
    .expect("cable of a valid diagram is valid")
}
