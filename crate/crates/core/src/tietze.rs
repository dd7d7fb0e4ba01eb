//! Generator-eliminating Tietze moves.

use std::collections::{HashMap, HashSet};

use crate::presentation::{BorderedMorphism, QuandlePresentation};
use crate::term::QuandleTerm;

/// Budget used by constructions when the caller does not pick one.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: QuandlePresentation,
    /// Each eliminated generator with its replacement, written in the
    /// generators that survive.
    pub log: Vec<(String, QuandleTerm)>,
    /// Set when eliminations stopped because the budget ran out.
    pub budget_exhausted: bool,
}

impl Simplified {
    pub fn substitution(&self) -> HashMap<String, QuandleTerm> {
        self.log.iter().cloned().collect()
    }
}

/// Repeatedly deletes relations `t = t` and eliminates a generator `g` via a
/// relation `g = t` (or `t = g`) when `g` is not protected and does not occur
/// in `t`. Relations are scanned in order; when both sides qualify the
/// generator declared first is eliminated.
pub fn tietze_simplify(
    p: &QuandlePresentation,
    protected: &HashSet<String>,
    budget: usize,
) -> Simplified {
    let mut gens = p.generators().to_vec();
    let mut rels = p.relations().to_vec();
    let mut log: Vec<(String, QuandleTerm)> = Vec::new();
    let mut eliminated = 0;
    let mut budget_exhausted = false;

    loop {
        rels.retain(|r| !r.is_trivial());
        let position = |name: &str| gens.iter().position(|g| g == name);
        let eligible = |side: &QuandleTerm, other: &QuandleTerm| {
            side.as_gen()
                .filter(|g| !protected.contains(*g) && !other.contains(g))
                .map(String::from)
        };
        let found = rels.iter().enumerate().find_map(|(i, r)| {
            let left = eligible(&r.lhs, &r.rhs);
            let right = eligible(&r.rhs, &r.lhs);
            let (g, by) = match (left, right) {
                (Some(a), Some(b)) => {
                    if position(&a) <= position(&b) {
                        (a, r.rhs.clone())
                    } else {
                        (b, r.lhs.clone())
                    }
                }
                (Some(a), None) => (a, r.rhs.clone()),
                (None, Some(b)) => (b, r.lhs.clone()),
                (None, None) => return None,
            };
            Some((i, g, by))
        });
        let Some((i, g, by)) = found else { break };
        if eliminated == budget {
            budget_exhausted = true;
            break;
        }
        rels.remove(i);
        gens.retain(|x| *x != g);
        for r in rels.iter_mut() {
            if r.lhs.contains(&g) {
                r.lhs = r.lhs.substitute(&g, &by);
            }
            if r.rhs.contains(&g) {
                r.rhs = r.rhs.substitute(&g, &by);
            }
        }
        for (_, t) in log.iter_mut() {
            if t.contains(&g) {
                *t = t.substitute(&g, &by);
            }
        }
        log.push((g, by));
        eliminated += 1;
    }

    Simplified {
        presentation: QuandlePresentation::from_parts_unchecked(gens, rels),
        log,
        budget_exhausted,
    }
}

/// Simplifies a presentation with nothing protected.
pub fn simplify_closed(p: &QuandlePresentation) -> QuandlePresentation {
    tietze_simplify(p, &HashSet::new(), DEFAULT_BUDGET).presentation
}

/// Simplifies the presentation of a morphism, protecting every generator that
/// appears in a boundary image.
pub fn simplify_morphism(m: &BorderedMorphism, budget: usize) -> (BorderedMorphism, Simplified) {
    let protected = m.boundary_generators();
    let s = tietze_simplify(m.presentation(), &protected, budget);
    let sub = s.substitution();
    let map = |ts: &[QuandleTerm]| ts.iter().map(|t| t.substitute_all(&sub)).collect();
    let out = m.with_presentation(s.presentation.clone(), map(m.map_bottom()), map(m.map_top()));
    (out, s)
}
