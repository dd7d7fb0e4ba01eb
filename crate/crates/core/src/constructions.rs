//! Presentations of links assembled from tangle pieces: closures, periodic
//! links, connected sums, cables, satellites, and the braid action.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::boundary::{Sign, SignedBoundary};
use crate::free::{fq_op, FreeQuandleElement};
use crate::functor::bq;
use crate::presentation::{disjoint_union, BorderedMorphism, PresentationError, QuandlePresentation, Relation};
use crate::tangle::{cable_diagram, TangleDiagram, TangleError};
use crate::term::{Op, QuandleTerm};
use crate::tietze::{simplify_closed, simplify_morphism, DEFAULT_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("boundary mismatch: expected {expected}, got {got}")]
    BoundaryMismatch {
        expected: SignedBoundary,
        got: SignedBoundary,
    },
    #[error("sign convention violated: {0}")]
    SignConvention(String),
    #[error("sign pattern {pattern} is not allowed: {reason}")]
    IllegalSignPattern {
        pattern: SignedBoundary,
        reason: String,
    },
    #[error("relation `{0}` is not a crossing or arc identification")]
    UnsupportedRelation(String),
    #[error("boundary image `{0}` is not a generator")]
    CompositeBoundaryImage(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

fn mismatch(expected: &SignedBoundary, got: &SignedBoundary) -> ConstructionError {
    ConstructionError::BoundaryMismatch {
        expected: expected.clone(),
        got: got.clone(),
    }
}

fn glue(a: &[QuandleTerm], b: &[QuandleTerm]) -> Vec<Relation> {
    a.iter().zip(b).map(|(x, y)| Relation::new(x.clone(), y.clone())).collect()
}

/// Closes a `(φ, φ)`-morphism by identifying each bottom image with the
/// matching top image, without simplifying.
pub fn classical_closure_unsimplified(m: &BorderedMorphism) -> Result<QuandlePresentation, ConstructionError> {
    if m.bottom() != m.top() {
        return Err(mismatch(m.bottom(), m.top()));
    }
    Ok(m.presentation().with_relations(glue(m.map_bottom(), m.map_top()))?)
}

pub fn classical_closure(m: &BorderedMorphism) -> Result<QuandlePresentation, ConstructionError> {
    classical_closure_unsimplified(m).map(|p| simplify_closed(&p))
}

fn check_plat_pairs(b: &SignedBoundary) -> Result<(), ConstructionError> {
    let s = b.signs();
    if !s.len().is_multiple_of(2) || s.chunks(2).any(|c| c[0] == c[1]) {
        return Err(ConstructionError::IllegalSignPattern {
            pattern: b.clone(),
            reason: "plat closure pairs consecutive points of opposite sign".into(),
        });
    }
    Ok(())
}

/// Closes a morphism by joining consecutive bottom points and consecutive
/// top points, without simplifying.
pub fn plat_closure_unsimplified(m: &BorderedMorphism) -> Result<QuandlePresentation, ConstructionError> {
    check_plat_pairs(m.bottom())?;
    check_plat_pairs(m.top())?;
    let pairs = |ts: &[QuandleTerm]| -> Vec<Relation> {
        ts.chunks(2).map(|c| Relation::new(c[0].clone(), c[1].clone())).collect()
    };
    let mut extra = pairs(m.map_bottom());
    extra.extend(pairs(m.map_top()));
    Ok(m.presentation().with_relations(extra)?)
}

pub fn plat_closure(m: &BorderedMorphism) -> Result<QuandlePresentation, ConstructionError> {
    plat_closure_unsimplified(m).map(|p| simplify_closed(&p))
}

/// Suffixes every generator of a morphism with `_{z}`.
fn indexed_copy(m: &BorderedMorphism, z: usize) -> Result<BorderedMorphism, ConstructionError> {
    Ok(m.rename(&|n: &str| format!("{n}_{z}"))?)
}

fn union_all(parts: &[&QuandlePresentation]) -> Result<QuandlePresentation, ConstructionError> {
    let mut gens = Vec::new();
    let mut rels = Vec::new();
    for p in parts {
        gens.extend_from_slice(p.generators());
        rels.extend_from_slice(p.relations());
    }
    Ok(QuandlePresentation::new(gens, rels)?)
}

/// The closure of the `p`-th power of a `(φ, φ)`-morphism: `p` copies with
/// generators suffixed `_1 .. _p`, copy `z`'s top glued to copy `z+1`'s
/// bottom cyclically. Not simplified.
pub fn periodic_link_unsimplified(m: &BorderedMorphism, p: usize) -> Result<QuandlePresentation, ConstructionError> {
    if m.bottom() != m.top() {
        return Err(mismatch(m.bottom(), m.top()));
    }
    if p == 0 {
        return Err(ConstructionError::SignConvention("the period must be at least 1".into()));
    }
    let copies = (1..=p).map(|z| indexed_copy(m, z)).collect::<Result<Vec<_>, _>>()?;
    let union = union_all(&copies.iter().map(|c| c.presentation()).collect::<Vec<_>>())?;
    let mut extra = Vec::new();
    for z in 0..p {
        extra.extend(glue(copies[z].map_top(), copies[(z + 1) % p].map_bottom()));
    }
    Ok(union.with_relations(extra)?)
}

pub fn periodic_link(m: &BorderedMorphism, p: usize) -> Result<QuandlePresentation, ConstructionError> {
    periodic_link_unsimplified(m, p).map(|q| simplify_closed(&q))
}

fn check_one_one(m: &BorderedMorphism, sign: Sign, which: &str) -> Result<(), ConstructionError> {
    let want = SignedBoundary::uniform(1, sign);
    if m.bottom().len() != 1 || m.top().len() != 1 {
        return Err(ConstructionError::SignConvention(format!("{which} must be a (1,1)-tangle")));
    }
    if m.bottom() != &want || m.top() != &want {
        return Err(ConstructionError::SignConvention(format!(
            "{which} must have boundary signs {want}, got {} and {}",
            m.bottom(),
            m.top()
        )));
    }
    Ok(())
}

/// The connected sum of two long knots: `m1` oriented downward, `m2` upward,
/// with their bottoms and their tops joined. Not simplified.
pub fn connected_sum_unsimplified(
    m1: &BorderedMorphism,
    m2: &BorderedMorphism,
) -> Result<QuandlePresentation, ConstructionError> {
    check_one_one(m1, Sign::Minus, "the first summand")?;
    check_one_one(m2, Sign::Plus, "the second summand")?;
    let (union, renaming) = disjoint_union(m1.presentation(), m2.presentation());
    let rn = |t: &QuandleTerm| t.rename(&|n: &str| renaming.get(n).cloned().unwrap_or_else(|| n.to_string()));
    let extra = vec![
        Relation::new(m1.map_top()[0].clone(), rn(&m2.map_top()[0])),
        Relation::new(m1.map_bottom()[0].clone(), rn(&m2.map_bottom()[0])),
    ];
    Ok(union.with_relations(extra)?)
}

pub fn connected_sum(m1: &BorderedMorphism, m2: &BorderedMorphism) -> Result<QuandlePresentation, ConstructionError> {
    connected_sum_unsimplified(m1, m2).map(|p| simplify_closed(&p))
}

/// A crossing relation in the form `a = b ▷ o`, where `b` lies to the right
/// of the over-arc `o` and `a` to its left.
enum Shape {
    Crossing { a: String, b: String, o: String, lhs_is_a: bool },
    Join(String, String),
}

fn classify(r: &Relation) -> Option<Shape> {
    let leafy = |t: &QuandleTerm| -> Option<(Op, String, String)> {
        match t {
            QuandleTerm::Apply { op, left, right } => {
                Some((*op, left.as_gen()?.to_string(), right.as_gen()?.to_string()))
            }
            QuandleTerm::Gen(_) => None,
        }
    };
    if let (Some(l), Some(r)) = (r.lhs.as_gen(), r.rhs.as_gen()) {
        return Some(Shape::Join(l.to_string(), r.to_string()));
    }
    let (single, applied, single_on_left) = match (r.lhs.as_gen(), leafy(&r.rhs), leafy(&r.lhs)) {
        (Some(g), Some(app), _) => (g.to_string(), app, true),
        (None, _, Some(app)) => (r.rhs.as_gen()?.to_string(), app, false),
        _ => return None,
    };
    let (op, x, o) = applied;
    Some(match op {
        // single = x ▷ o
        Op::Tr => Shape::Crossing {
            a: single,
            b: x,
            o,
            lhs_is_a: single_on_left,
        },
        // single = x ◁ o, that is x = single ▷ o
        Op::Tl => Shape::Crossing {
            a: x,
            b: single,
            o,
            lhs_is_a: !single_on_left,
        },
    })
}

fn copy_name(g: &str, j: usize) -> String {
    format!("{g}_{j}")
}

/// The block of copies of a point with orientation `o`, left to right.
fn block(o: Sign, n: usize) -> Vec<usize> {
    match o {
        Sign::Plus => (1..=n).rev().collect(),
        Sign::Minus => (1..=n).collect(),
    }
}

fn expand_boundary(b: &SignedBoundary, eps: &[Sign]) -> SignedBoundary {
    SignedBoundary(
        b.signs()
            .iter()
            .flat_map(|&o| block(o, eps.len()).into_iter().map(move |j| eps[j - 1] * o))
            .collect(),
    )
}

/// The `N`-cable of a morphism produced by [`bq`], written directly from its
/// crossing relations: every generator `x` becomes `x_1 .. x_N` and every
/// crossing `a = b ▷ o` becomes
/// `a_j = (..(b_j ▷^{ε_1} o_1) ▷^{ε_2} o_2 ..) ▷^{ε_N} o_N`. Not simplified.
pub fn cable_presentation_unsimplified(
    m: &BorderedMorphism,
    eps: &[Sign],
) -> Result<BorderedMorphism, ConstructionError> {
    let n = eps.len();
    if n == 0 {
        return Err(ConstructionError::SignConvention("a cable needs at least one copy".into()));
    }
    let p = m.presentation();
    let gens: Vec<String> = p
        .generators()
        .iter()
        .flat_map(|g| (1..=n).map(move |j| copy_name(g, j)))
        .collect();
    let mut rels = Vec::new();
    for r in p.relations() {
        match classify(r).ok_or_else(|| ConstructionError::UnsupportedRelation(r.to_string()))? {
            Shape::Join(x, y) => {
                for j in 1..=n {
                    rels.push(Relation::new(
                        QuandleTerm::gen(copy_name(&x, j)),
                        QuandleTerm::gen(copy_name(&y, j)),
                    ));
                }
            }
            Shape::Crossing { a, b, o, lhs_is_a } => {
                for j in 1..=n {
                    let mut t = QuandleTerm::gen(copy_name(&b, j));
                    for (k, e) in eps.iter().enumerate() {
                        t = QuandleTerm::apply(Op::from_sign(*e), t, QuandleTerm::gen(copy_name(&o, k + 1)));
                    }
                    let a_j = QuandleTerm::gen(copy_name(&a, j));
                    rels.push(if lhs_is_a {
                        Relation::new(a_j, t)
                    } else {
                        Relation::new(t, a_j)
                    });
                }
            }
        }
    }
    let expand_map = |b: &SignedBoundary, ts: &[QuandleTerm]| -> Result<Vec<QuandleTerm>, ConstructionError> {
        let mut out = Vec::new();
        for (o, t) in b.signs().iter().zip(ts) {
            let g = t
                .as_gen()
                .ok_or_else(|| ConstructionError::CompositeBoundaryImage(t.to_string()))?;
            out.extend(block(*o, n).into_iter().map(|j| QuandleTerm::gen(copy_name(g, j))));
        }
        Ok(out)
    };
    Ok(BorderedMorphism::new(
        expand_boundary(m.bottom(), eps),
        expand_boundary(m.top(), eps),
        QuandlePresentation::new(gens, rels)?,
        expand_map(m.bottom(), m.map_bottom())?,
        expand_map(m.top(), m.map_top())?,
    )?)
}

/// [`cable_presentation_unsimplified`] followed by elimination of every
/// generator not used by the boundary maps.
pub fn cable_presentation(m: &BorderedMorphism, eps: &[Sign]) -> Result<BorderedMorphism, ConstructionError> {
    let raw = cable_presentation_unsimplified(m, eps)?;
    Ok(simplify_morphism(&raw, DEFAULT_BUDGET).0)
}

/// The satellite with embellishment `m_e` (a `(φ, φ)`-morphism on `k`
/// points) and companion `m_c` (a `(1,1)`-morphism), cabled with `eps`:
/// the closure of `m_e ⊗ eps·m_c` by nested cups and caps. The cable must
/// have boundary signs `ψ` with `ψ(p_{k-i+1}) = -φ(p_i)`. Not simplified.
pub fn satellite_unsimplified(
    m_e: &BorderedMorphism,
    m_c: &BorderedMorphism,
    eps: &[Sign],
) -> Result<QuandlePresentation, ConstructionError> {
    if m_e.bottom() != m_e.top() {
        return Err(mismatch(m_e.bottom(), m_e.top()));
    }
    if m_c.bottom().len() != 1 || m_c.bottom() != m_c.top() {
        return Err(ConstructionError::SignConvention(
            "the companion must be a (1,1)-tangle with matching signs".into(),
        ));
    }
    let k = m_e.bottom().len();
    if eps.len() != k {
        return Err(ConstructionError::SignConvention(format!(
            "the cable needs {k} copies, got {}",
            eps.len()
        )));
    }
    let cable = cable_presentation_unsimplified(m_c, eps)?;
    let psi = m_e.bottom().barred();
    if cable.bottom() != &psi {
        return Err(ConstructionError::SignConvention(format!(
            "the cable has signs {} but the closure needs {psi}",
            cable.bottom()
        )));
    }
    let (union, renaming) = disjoint_union(m_e.presentation(), cable.presentation());
    let rn = |t: &QuandleTerm| t.rename(&|n: &str| renaming.get(n).cloned().unwrap_or_else(|| n.to_string()));
    let cap_cup = |a: &[QuandleTerm], b: &[QuandleTerm]| -> Vec<Relation> {
        let all: Vec<QuandleTerm> = a.iter().cloned().chain(b.iter().map(rn)).collect();
        (0..k)
            .map(|h| Relation::new(all[h].clone(), all[2 * k - 1 - h].clone()))
            .collect()
    };
    let mut extra = cap_cup(m_e.map_bottom(), cable.map_bottom());
    extra.extend(cap_cup(m_e.map_top(), cable.map_top()));
    Ok(union.with_relations(extra)?)
}

pub fn satellite(
    m_e: &BorderedMorphism,
    m_c: &BorderedMorphism,
    eps: &[Sign],
) -> Result<QuandlePresentation, ConstructionError> {
    satellite_unsimplified(m_e, m_c, eps).map(|p| simplify_closed(&p))
}

/// The closure `λ(τ ⊗ T)λ̄` of a `(φ, φ)`-tangle built as a diagram.
pub fn closure_diagram(t: &TangleDiagram) -> Result<TangleDiagram, ConstructionError> {
    if t.bottom() != t.top() {
        return Err(mismatch(t.bottom(), t.top()));
    }
    let eta = t.bottom().concat(&t.bottom().barred());
    let cup = TangleDiagram::cup(&eta)?;
    let middle = t.tensor(&TangleDiagram::trivial(&t.bottom().barred()));
    Ok(cup.compose(&middle)?.compose(&cup.reverse())?)
}

/// The plat closure of a tangle built as a diagram: side-by-side cups below
/// and caps above.
pub fn plat_closure_diagram(t: &TangleDiagram) -> Result<TangleDiagram, ConstructionError> {
    let below = TangleDiagram::plat(t.bottom())?;
    let above = TangleDiagram::plat(&t.top().barred())?.reverse();
    Ok(below.compose(t)?.compose(&above)?)
}

/// The connected sum of two long knots as a diagram `λ_1(τ_1 ⊗ τ_2)λ̄_1`.
pub fn connected_sum_diagram(t1: &TangleDiagram, t2: &TangleDiagram) -> Result<TangleDiagram, ConstructionError> {
    let joined = t1.tensor(t2);
    let eta = t1.bottom().concat(t2.bottom());
    let cup = TangleDiagram::cup(&eta)?;
    if joined.top() != &eta {
        return Err(mismatch(&eta, joined.top()));
    }
    Ok(cup.compose(&joined)?.compose(&cup.reverse())?)
}

/// The satellite as a diagram: `λ(τ_E ⊗ eps·τ_C)λ̄`.
pub fn satellite_diagram(
    t_e: &TangleDiagram,
    t_c: &TangleDiagram,
    eps: &[Sign],
) -> Result<TangleDiagram, ConstructionError> {
    if t_e.bottom() != t_e.top() {
        return Err(mismatch(t_e.bottom(), t_e.top()));
    }
    let cable = cable_diagram(t_c, eps);
    let psi = t_e.bottom().barred();
    if cable.bottom() != &psi || cable.top() != &psi {
        return Err(ConstructionError::SignConvention(format!(
            "the cable has signs {} but the closure needs {psi}",
            cable.bottom()
        )));
    }
    let eta = t_e.bottom().concat(&psi);
    let cup = TangleDiagram::cup(&eta)?;
    Ok(cup.compose(&t_e.tensor(&cable))?.compose(&cup.reverse())?)
}

/// The automorphism of the free quandle `F(a_1, .., a_k)` induced by a braid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidAutomorphism {
    k: usize,
    images: Vec<FreeQuandleElement>,
}

fn strand_name(h: usize) -> String {
    format!("a{}", h + 1)
}

impl BraidAutomorphism {
    pub fn identity(k: usize) -> Self {
        BraidAutomorphism {
            k,
            images: (0..k).map(|h| FreeQuandleElement::generator(strand_name(h))).collect(),
        }
    }

    pub fn strands(&self) -> usize {
        self.k
    }

    pub fn images(&self) -> &[FreeQuandleElement] {
        &self.images
    }

    /// Extends the generator images to a quandle homomorphism and applies it.
    pub fn apply(&self, e: &FreeQuandleElement) -> FreeQuandleElement {
        let image = |name: &str| -> FreeQuandleElement {
            name.strip_prefix('a')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| (1..=self.k).contains(&i))
                .map(|i| self.images[i - 1].clone())
                .unwrap_or_else(|| FreeQuandleElement::generator(name))
        };
        let mut out = image(e.base());
        for (y, s) in e.tail().letters() {
            out = fq_op(&out, &image(y), *s);
        }
        out
    }

    /// The automorphism of the braid `self` followed by `next` (stacked on top).
    pub fn then(&self, next: &BraidAutomorphism) -> BraidAutomorphism {
        BraidAutomorphism {
            k: self.k,
            images: self.images.iter().map(|e| next.apply(e)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == BraidAutomorphism::identity(self.k)
    }
}

/// Writes each bottom generator of the braid's quandle in terms of the top
/// generators `a_1 .. a_k`, by undoing the crossings from the top down.
pub fn braid_action(word: &[i64], k: usize) -> Result<BraidAutomorphism, ConstructionError> {
    let m = bq(&TangleDiagram::braid(k, word)?);
    let mut value: BTreeMap<String, FreeQuandleElement> = BTreeMap::new();
    for (h, t) in m.map_top().iter().enumerate() {
        let g = t.as_gen().expect("braid boundary images are generators");
        value.insert(g.to_string(), FreeQuandleElement::generator(strand_name(h)));
    }
    for r in m.presentation().relations().iter().rev() {
        let QuandleTerm::Apply { op, left, right } = &r.rhs else {
            unreachable!("braid relations have the form g = u op o")
        };
        let (g, u, o) = (
            r.lhs.as_gen().expect("fresh generator on the left"),
            left.as_gen().expect("leaf operand"),
            right.as_gen().expect("leaf operand"),
        );
        let sign = match op {
            Op::Tr => Sign::Minus,
            Op::Tl => Sign::Plus,
        };
        let e = fq_op(&value[g], &value[o], sign);
        value.insert(u.to_string(), e);
    }
    let images = m
        .map_bottom()
        .iter()
        .map(|t| value[t.as_gen().expect("generator")].clone())
        .collect();
    Ok(BraidAutomorphism { k, images })
}
