//! The bordered fundamental quandle of a tangle diagram.

use crate::boundary::Sign;
use crate::colorings::count_colorings;
use crate::presentation::{amalgamate, BorderedMorphism, QuandlePresentation, Relation};
use crate::quandle::test_quandles;
use crate::tangle::{CrossingKind, Slice, TangleDiagram, TangleError};
use crate::term::{Op, QuandleTerm};

/// Sweeps the diagram bottom to top, giving every arc a generator `g<k>`.
///
/// Bottom strands and cups introduce fresh generators. At a crossing the
/// under-strand gets a fresh generator `g = old ▷ over` when the arc below the
/// crossing lies to the right of the over-strand (seen along its
/// orientation), and `g = old ◁ over` otherwise. A cap identifies its two legs.
pub fn bq(t: &TangleDiagram) -> BorderedMorphism {
    let mut next = 0usize;
    let mut fresh = |gens: &mut Vec<String>| {
        next += 1;
        let g = format!("g{next}");
        gens.push(g.clone());
        g
    };
    let mut gens = Vec::new();
    let mut rels = Vec::new();
    let mut labels: Vec<String> = (0..t.bottom().len()).map(|_| fresh(&mut gens)).collect();
    let map_bottom: Vec<QuandleTerm> = labels.iter().map(QuandleTerm::gen).collect();

    for (k, slice) in t.slices().iter().enumerate() {
        match *slice {
            Slice::Crossing { index: i, kind } => {
                let (over, under) = match kind {
                    CrossingKind::Positive => (i, i + 1),
                    CrossingKind::Negative => (i + 1, i),
                };
                let exp = t.level(k)[over] * kind.sign();
                let op = match exp {
                    Sign::Plus => Op::Tr,
                    Sign::Minus => Op::Tl,
                };
                let g = fresh(&mut gens);
                rels.push(Relation::new(
                    QuandleTerm::gen(&g),
                    QuandleTerm::apply(op, QuandleTerm::gen(&labels[under]), QuandleTerm::gen(&labels[over])),
                ));
                labels[under] = g;
                labels.swap(i, i + 1);
            }
            Slice::Cup { index, .. } => {
                let g = fresh(&mut gens);
                labels.insert(index, g.clone());
                labels.insert(index, g);
            }
            Slice::Cap { index, .. } => {
                rels.push(Relation::new(
                    QuandleTerm::gen(&labels[index]),
                    QuandleTerm::gen(&labels[index + 1]),
                ));
                labels.drain(index..index + 2);
            }
        }
    }

    let map_top = labels.iter().map(QuandleTerm::gen).collect();
    let pres = QuandlePresentation::new(gens, rels).expect("sweep declares every generator it uses");
    BorderedMorphism::new(t.bottom().clone(), t.top().clone(), pres, map_bottom, map_top)
        .expect("boundary maps use sweep generators")
}

/// Counts of a presentation over the standard test quandles.
pub fn test_counts(p: &QuandlePresentation) -> Vec<u64> {
    test_quandles().iter().map(|(_, q)| count_colorings(p, q)).collect()
}

/// Compares `bq(t1 t2)` with the amalgamation of `bq(t1)` and `bq(t2)` by
/// coloring counts over the standard test quandles.
pub fn bq_compose_check(t1: &TangleDiagram, t2: &TangleDiagram) -> Result<bool, TangleError> {
    let composed = t1.compose(t2)?;
    let direct = bq(&composed);
    let glued = amalgamate(&bq(t1), &bq(t2)).expect("composable diagrams have matching boundaries");
    Ok(test_counts(direct.presentation()) == test_counts(glued.presentation()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::SignedBoundary;

    #[test]
    fn trivial_tangle_gives_free_quandle() {
        let t = TangleDiagram::trivial(&SignedBoundary::parse("+-+").unwrap());
        let m = bq(&t);
        assert_eq!(m.presentation().generators(), &["g1", "g2", "g3"]);
        assert!(m.presentation().relations().is_empty());
        assert_eq!(m.map_bottom(), m.map_top());
    }

    #[test]
    fn crossing_relation_shapes() {
        let m = bq(&TangleDiagram::braid(2, &[1]).unwrap());
        assert_eq!(m.presentation().relations()[0].to_string(), "g3 = g2 ^ g1");
        assert_eq!(m.map_top()[0].to_string(), "g3");
        assert_eq!(m.map_top()[1].to_string(), "g1");
        let m = bq(&TangleDiagram::braid(2, &[-1]).unwrap());
        assert_eq!(m.presentation().relations()[0].to_string(), "g3 = g1 v g2");
        assert_eq!(m.map_top()[0].to_string(), "g2");
        assert_eq!(m.map_top()[1].to_string(), "g3");
    }

    #[test]
    fn empty_diagram_gives_empty_presentation() {
        let m = bq(&TangleDiagram::empty());
        assert_eq!(m.presentation(), &QuandlePresentation::empty());
    }

    #[test]
    fn functoriality_on_braids() {
        let s = TangleDiagram::braid(2, &[1]).unwrap();
        assert!(bq_compose_check(&s, &s).unwrap());
    }
}
