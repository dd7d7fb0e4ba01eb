//! Finitely presented quandles `⟨X | R⟩` and bordered morphisms
//! `F(bottom) → Q ← F(top)`, with amalgamated composition.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{Sign, SignedBoundary};
use crate::term::{is_valid_name, QuandleTerm, TermParser, TermSyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("`{name}` is used in {context} but is not a declared generator")]
    UndeclaredGenerator { name: String, context: String },
    #[error("boundary map has {got} images but the boundary has {expected} points")]
    MapLength { expected: usize, got: usize },
    #[error("boundary mismatch: expected {expected}, got {got}")]
    BoundaryMismatch {
        expected: SignedBoundary,
        got: SignedBoundary,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {source}")]
    Term {
        line: usize,
        #[source]
        source: TermSyntaxError,
    },
    #[error("json: {0}")]
    Json(String),
}

/// A relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: QuandleTerm,
    pub rhs: QuandleTerm,
}

impl Relation {
    pub fn new(lhs: QuandleTerm, rhs: QuandleTerm) -> Self {
        Relation { lhs, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Relation {
        Relation::new(self.lhs.rename(f), self.rhs.rename(f))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl std::str::FromStr for Relation {
    type Err = TermSyntaxError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TermParser::new(s);
        let lhs = p.expr()?;
        p.eat_equals()?;
        let rhs = p.expr()?;
        p.expect_end()?;
        Ok(Relation { lhs, rhs })
    }
}

/// `⟨generators | relations⟩`. Generator names are unique and every leaf of
/// every relation is declared.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandlePresentation {
    generators: Vec<String>,
    relations: Vec<Relation>,
}

impl QuandlePresentation {
    pub fn new(generators: Vec<String>, relations: Vec<Relation>) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !is_valid_name(g) {
                return Err(PresentationError::InvalidName(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relations {
            for leaf in r.lhs.leaves().into_iter().chain(r.rhs.leaves()) {
                if !seen.contains(leaf) {
                    return Err(PresentationError::UndeclaredGenerator {
                        name: leaf.to_string(),
                        context: format!("relation `{r}`"),
                    });
                }
            }
        }
        Ok(QuandlePresentation {
            generators,
            relations,
        })
    }

    /// Convenience constructor from string slices; relations are parsed.
    pub fn parse_parts(generators: &[&str], relations: &[&str]) -> Result<Self, PresentationError> {
        let rels = relations
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.parse::<Relation>()
                    .map_err(|source| PresentationError::Term { line: i + 1, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(generators.iter().map(|s| s.to_string()).collect(), rels)
    }

    /// The free quandle on the given generators.
    pub fn free(generators: Vec<String>) -> Result<Self, PresentationError> {
        Self::new(generators, Vec::new())
    }

    pub fn empty() -> Self {
        QuandlePresentation::default()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.generators.iter().any(|g| g == name)
    }

    pub(crate) fn from_parts_unchecked(generators: Vec<String>, relations: Vec<Relation>) -> Self {
        debug_assert!(QuandlePresentation::new(generators.clone(), relations.clone()).is_ok());
        QuandlePresentation {
            generators,
            relations,
        }
    }

    /// Appends relations whose leaves must already be generators.
    pub fn with_relations(
        &self,
        extra: impl IntoIterator<Item = Relation>,
    ) -> Result<Self, PresentationError> {
        let mut rels = self.relations.clone();
        rels.extend(extra);
        QuandlePresentation::new(self.generators.clone(), rels)
    }

    /// Applies an injective renaming of generators.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Result<Self, PresentationError> {
        QuandlePresentation::new(
            self.generators.iter().map(|g| f(g)).collect(),
            self.relations.iter().map(|r| r.rename(f)).collect(),
        )
    }

    /// Text form: `gens: a b c` followed by one `lhs = rhs` per line.
    pub fn to_text(&self) -> String {
        let mut s = String::from("gens:");
        for g in &self.generators {
            s.push(' ');
            s.push_str(g);
        }
        s.push('\n');
        for r in &self.relations {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, PresentationError> {
        let mut gens: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if gens.is_none() {
                let rest = line.strip_prefix("gens:").ok_or_else(|| PresentationError::Format {
                    line: i + 1,
                    message: "expected `gens:` line".into(),
                })?;
                gens = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            let r = line
                .parse::<Relation>()
                .map_err(|source| PresentationError::Term { line: i + 1, source })?;
            rels.push(r);
        }
        let gens = gens.ok_or_else(|| PresentationError::Format {
            line: 1,
            message: "missing `gens:` line".into(),
        })?;
        QuandlePresentation::new(gens, rels)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        let raw: QuandlePresentation =
            serde_json::from_str(text).map_err(|e| PresentationError::Json(e.to_string()))?;
        QuandlePresentation::new(raw.generators, raw.relations)
    }
}

impl fmt::Display for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A morphism of the bordered quandle category: a presentation together
/// with the images of the boundary generators at the bottom and top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderedMorphism {
    bottom: SignedBoundary,
    top: SignedBoundary,
    presentation: QuandlePresentation,
    map_bottom: Vec<QuandleTerm>,
    map_top: Vec<QuandleTerm>,
}

/// Generator renaming applied to the second argument of an amalgamation.
pub type Renaming = BTreeMap<String, String>;

impl BorderedMorphism {
    pub fn new(
        bottom: SignedBoundary,
        top: SignedBoundary,
        presentation: QuandlePresentation,
        map_bottom: Vec<QuandleTerm>,
        map_top: Vec<QuandleTerm>,
    ) -> Result<Self, PresentationError> {
        for (b, m) in [(&bottom, &map_bottom), (&top, &map_top)] {
            if b.len() != m.len() {
                return Err(PresentationError::MapLength {
                    expected: b.len(),
                    got: m.len(),
                });
            }
            for t in m {
                for leaf in t.leaves() {
                    if !presentation.has_generator(leaf) {
                        return Err(PresentationError::UndeclaredGenerator {
                            name: leaf.to_string(),
                            context: "a boundary map".into(),
                        });
                    }
                }
            }
        }
        Ok(BorderedMorphism {
            bottom,
            top,
            presentation,
            map_bottom,
            map_top,
        })
    }

    /// The identity morphism on `F(a_1..a_n)`.
    pub fn identity(boundary: &SignedBoundary) -> Self {
        let gens: Vec<String> = (1..=boundary.len()).map(|i| format!("a{i}")).collect();
        let maps: Vec<QuandleTerm> = gens.iter().map(QuandleTerm::gen).collect();
        BorderedMorphism {
            bottom: boundary.clone(),
            top: boundary.clone(),
            presentation: QuandlePresentation::from_parts_unchecked(gens, Vec::new()),
            map_bottom: maps.clone(),
            map_top: maps,
        }
    }

    /// Parses a presentation given by generator names and relation strings
    /// plus boundary images given as term strings.
    pub fn parse_parts(
        bottom: &str,
        top: &str,
        generators: &[&str],
        relations: &[&str],
        map_bottom: &[&str],
        map_top: &[&str],
    ) -> Result<Self, PresentationError> {
        let parse_sign = |s: &str| {
            SignedBoundary::parse(s).ok_or_else(|| PresentationError::Format {
                line: 0,
                message: format!("bad sign string `{s}`"),
            })
        };
        let parse_terms = |ts: &[&str]| {
            ts.iter()
                .map(|t| {
                    t.parse::<QuandleTerm>()
                        .map_err(|source| PresentationError::Term { line: 0, source })
                })
                .collect::<Result<Vec<_>, _>>()
        };
        BorderedMorphism::new(
            parse_sign(bottom)?,
            parse_sign(top)?,
            QuandlePresentation::parse_parts(generators, relations)?,
            parse_terms(map_bottom)?,
            parse_terms(map_top)?,
        )
    }

    pub fn bottom(&self) -> &SignedBoundary {
        &self.bottom
    }

    pub fn top(&self) -> &SignedBoundary {
        &self.top
    }

    pub fn presentation(&self) -> &QuandlePresentation {
        &self.presentation
    }

    pub fn map_bottom(&self) -> &[QuandleTerm] {
        &self.map_bottom
    }

    pub fn map_top(&self) -> &[QuandleTerm] {
        &self.map_top
    }

    /// Names of generators occurring in either boundary map.
    pub fn boundary_generators(&self) -> HashSet<String> {
        self.map_bottom
            .iter()
            .chain(&self.map_top)
            .flat_map(|t| t.leaves())
            .map(String::from)
            .collect()
    }

    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Result<Self, PresentationError> {
        Ok(BorderedMorphism {
            bottom: self.bottom.clone(),
            top: self.top.clone(),
            presentation: self.presentation.rename(f)?,
            map_bottom: self.map_bottom.iter().map(|t| t.rename(f)).collect(),
            map_top: self.map_top.iter().map(|t| t.rename(f)).collect(),
        })
    }

    pub(crate) fn with_presentation(
        &self,
        presentation: QuandlePresentation,
        map_bottom: Vec<QuandleTerm>,
        map_top: Vec<QuandleTerm>,
    ) -> Self {
        BorderedMorphism {
            bottom: self.bottom.clone(),
            top: self.top.clone(),
            presentation,
            map_bottom,
            map_top,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = self.presentation.to_text();
        let signs = |b: &SignedBoundary| {
            b.signs()
                .iter()
                .map(|s| format!(" {s}"))
                .collect::<String>()
        };
        let maps = |m: &[QuandleTerm]| {
            if m.is_empty() {
                String::new()
            } else {
                format!(
                    " {}",
                    m.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ; ")
                )
            }
        };
        s.push_str(&format!("bottom:{}\n", signs(&self.bottom)));
        s.push_str(&format!("top:{}\n", signs(&self.top)));
        s.push_str(&format!("i-:{}\n", maps(&self.map_bottom)));
        s.push_str(&format!("i+:{}\n", maps(&self.map_top)));
        s
    }

    pub fn from_text(text: &str) -> Result<Self, PresentationError> {
        let mut pres_lines = String::new();
        let mut fields: HashMap<&str, (usize, &str)> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let mut matched = false;
            for key in ["bottom:", "top:", "i-:", "i+:"] {
                if let Some(rest) = line.strip_prefix(key) {
                    fields.insert(key, (i + 1, rest));
                    matched = true;
                }
            }
            if !matched {
                pres_lines.push_str(raw);
            }
            pres_lines.push('\n');
        }
        let presentation = QuandlePresentation::from_text(&pres_lines)?;
        let field = |key: &str| {
            fields.get(key).copied().ok_or_else(|| PresentationError::Format {
                line: 0,
                message: format!("missing `{key}` line"),
            })
        };
        let signs = |key: &str| -> Result<SignedBoundary, PresentationError> {
            let (line, rest) = field(key)?;
            rest.split_whitespace()
                .map(|w| match w {
                    "+" => Ok(Sign::Plus),
                    "-" => Ok(Sign::Minus),
                    _ => Err(PresentationError::Format {
                        line,
                        message: format!("bad sign `{w}`"),
                    }),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(SignedBoundary)
        };
        let terms = |key: &str| -> Result<Vec<QuandleTerm>, PresentationError> {
            let (line, rest) = field(key)?;
            if rest.trim().is_empty() {
                return Ok(Vec::new());
            }
            rest.split(';')
                .map(|t| {
                    t.trim()
                        .parse::<QuandleTerm>()
                        .map_err(|source| PresentationError::Term { line, source })
                })
                .collect()
        };
        BorderedMorphism::new(
            signs("bottom:")?,
            signs("top:")?,
            presentation,
            terms("i-:")?,
            terms("i+:")?,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("morphism serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        let raw: BorderedMorphism =
            serde_json::from_str(text).map_err(|e| PresentationError::Json(e.to_string()))?;
        let presentation = QuandlePresentation::new(
            raw.presentation.generators,
            raw.presentation.relations,
        )?;
        BorderedMorphism::new(raw.bottom, raw.top, presentation, raw.map_bottom, raw.map_top)
    }
}

/// Renames the generators of `second` that collide with `first` by suffixing
/// `_k` for the smallest `k >= 1` giving a fresh name. Returns the renaming
/// (identity entries omitted).
pub fn collision_renaming(first: &[String], second: &[String]) -> Renaming {
    let firsts: HashSet<&str> = first.iter().map(String::as_str).collect();
    let mut taken: HashSet<String> = first.iter().chain(second).cloned().collect();
    let mut out = Renaming::new();
    for g in second {
        if firsts.contains(g.as_str()) {
            let fresh = (1..)
                .map(|k| format!("{g}_{k}"))
                .find(|c| !taken.contains(c))
                .expect("an unused suffix exists");
            taken.insert(fresh.clone());
            out.insert(g.clone(), fresh);
        }
    }
    out
}

fn apply_renaming(r: &Renaming) -> impl Fn(&str) -> String {
    let r = r.clone();
    move |n: &str| r.get(n).cloned().unwrap_or_else(|| n.to_string())
}

/// Disjoint union of two presentations; the second one is renamed on collision.
pub fn disjoint_union(
    p1: &QuandlePresentation,
    p2: &QuandlePresentation,
) -> (QuandlePresentation, Renaming) {
    let renaming = collision_renaming(p1.generators(), p2.generators());
    let f = apply_renaming(&renaming);
    let p2 = p2.rename(&f).expect("collision renaming is injective");
    let mut gens = p1.generators().to_vec();
    gens.extend_from_slice(p2.generators());
    let mut rels = p1.relations().to_vec();
    rels.extend_from_slice(p2.relations());
    (QuandlePresentation::from_parts_unchecked(gens, rels), renaming)
}

/// Composition in the bordered quandle category: the amalgamated product
/// over the shared boundary, plus the renaming applied to `m2`.
pub fn amalgamate_with_renaming(
    m1: &BorderedMorphism,
    m2: &BorderedMorphism,
) -> Result<(BorderedMorphism, Renaming), PresentationError> {
    if m1.top != m2.bottom {
        return Err(PresentationError::BoundaryMismatch {
            expected: m1.top.clone(),
            got: m2.bottom.clone(),
        });
    }
    let (union, renaming) = disjoint_union(&m1.presentation, &m2.presentation);
    let f = apply_renaming(&renaming);
    let m2_bottom: Vec<QuandleTerm> = m2.map_bottom.iter().map(|t| t.rename(&f)).collect();
    let m2_top: Vec<QuandleTerm> = m2.map_top.iter().map(|t| t.rename(&f)).collect();
    let gluing = m1
        .map_top
        .iter()
        .zip(&m2_bottom)
        .map(|(a, b)| Relation::new(a.clone(), b.clone()));
    let (gens, mut rels) = (union.generators().to_vec(), union.relations().to_vec());
    rels.extend(gluing);
    let morphism = BorderedMorphism {
        bottom: m1.bottom.clone(),
        top: m2.top.clone(),
        presentation: QuandlePresentation::from_parts_unchecked(gens, rels),
        map_bottom: m1.map_bottom.clone(),
        map_top: m2_top,
    };
    Ok((morphism, renaming))
}

/// Composition `m1` then `m2` (stacking `m2` above `m1`).
pub fn amalgamate(m1: &BorderedMorphism, m2: &BorderedMorphism) -> Result<BorderedMorphism, PresentationError> {
    amalgamate_with_renaming(m1, m2).map(|(m, _)| m)
}

/// Tensor product: free product of the quandles with concatenated boundary maps.
pub fn tensor_morphisms(m1: &BorderedMorphism, m2: &BorderedMorphism) -> (BorderedMorphism, Renaming) {
    let (union, renaming) = disjoint_union(&m1.presentation, &m2.presentation);
    let f = apply_renaming(&renaming);
    let mut map_bottom = m1.map_bottom.clone();
    map_bottom.extend(m2.map_bottom.iter().map(|t| t.rename(&f)));
    let mut map_top = m1.map_top.clone();
    map_top.extend(m2.map_top.iter().map(|t| t.rename(&f)));
    (
        BorderedMorphism {
            bottom: m1.bottom.concat(&m2.bottom),
            top: m1.top.concat(&m2.top),
            presentation: union,
            map_bottom,
            map_top,
        },
        renaming,
    )
}
