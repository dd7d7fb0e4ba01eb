//! Quandle terms: binary trees over named generators with the operations
//! `▷` (written `^` in text) and `◁` (written `v`).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quandle::FiniteQuandle;

/// One of the two quandle operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    /// `x ▷ y`
    #[serde(rename = "tr")]
    Tr,
    /// `x ◁ y`, the inverse of `▷ y`.
    #[serde(rename = "tl")]
    Tl,
}

impl Op {
    pub fn inverse(self) -> Op {
        match self {
            Op::Tr => Op::Tl,
            Op::Tl => Op::Tr,
        }
    }

    /// `▷^{+1} = ▷`, `▷^{-1} = ◁`.
    pub fn from_sign(sign: crate::Sign) -> Op {
        match sign {
            crate::Sign::Plus => Op::Tr,
            crate::Sign::Minus => Op::Tl,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Tr => "^",
            Op::Tl => "v",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuandleTerm {
    Gen(String),
    Apply {
        op: Op,
        left: Box<QuandleTerm>,
        right: Box<QuandleTerm>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("generator `{name}` has no assigned value")]
    UnassignedGenerator { name: String },
}

impl QuandleTerm {
    pub fn gen(name: impl Into<String>) -> Self {
        QuandleTerm::Gen(name.into())
    }

    pub fn apply(op: Op, left: QuandleTerm, right: QuandleTerm) -> Self {
        QuandleTerm::Apply {
            op,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn tr(left: QuandleTerm, right: QuandleTerm) -> Self {
        Self::apply(Op::Tr, left, right)
    }

    pub fn tl(left: QuandleTerm, right: QuandleTerm) -> Self {
        Self::apply(Op::Tl, left, right)
    }

    pub fn as_gen(&self) -> Option<&str> {
        match self {
            QuandleTerm::Gen(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_gen(&self) -> bool {
        matches!(self, QuandleTerm::Gen(_))
    }

    /// Length of the longest root-to-leaf path; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            QuandleTerm::Gen(_) => 0,
            QuandleTerm::Apply { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Total number of nodes (leaves included).
    pub fn size(&self) -> usize {
        match self {
            QuandleTerm::Gen(_) => 1,
            QuandleTerm::Apply { left, right, .. } => 1 + left.size() + right.size(),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        match self {
            QuandleTerm::Gen(n) => n == name,
            QuandleTerm::Apply { left, right, .. } => left.contains(name) || right.contains(name),
        }
    }

    pub fn leaves(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            QuandleTerm::Gen(n) => {
                out.insert(n);
            }
            QuandleTerm::Apply { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    /// Replaces every leaf `name` by `by`.
    pub fn substitute(&self, name: &str, by: &QuandleTerm) -> QuandleTerm {
        match self {
            QuandleTerm::Gen(n) if n == name => by.clone(),
            QuandleTerm::Gen(_) => self.clone(),
            QuandleTerm::Apply { op, left, right } => {
                QuandleTerm::apply(*op, left.substitute(name, by), right.substitute(name, by))
            }
        }
    }

    /// Replaces leaves according to `map`; unmapped leaves are kept.
    pub fn substitute_all(&self, map: &HashMap<String, QuandleTerm>) -> QuandleTerm {
        match self {
            QuandleTerm::Gen(n) => map.get(n).cloned().unwrap_or_else(|| self.clone()),
            QuandleTerm::Apply { op, left, right } => {
                QuandleTerm::apply(*op, left.substitute_all(map), right.substitute_all(map))
            }
        }
    }

    pub fn rename(&self, f: &impl Fn(&str) -> String) -> QuandleTerm {
        match self {
            QuandleTerm::Gen(n) => QuandleTerm::Gen(f(n)),
            QuandleTerm::Apply { op, left, right } => {
                QuandleTerm::apply(*op, left.rename(f), right.rename(f))
            }
        }
    }

    /// Evaluates the term in `q` with leaf values supplied by `lookup`.
    pub fn eval_with(
        &self,
        q: &FiniteQuandle,
        lookup: &impl Fn(&str) -> Option<usize>,
    ) -> Result<usize, EvalError> {
        match self {
            QuandleTerm::Gen(n) => lookup(n).ok_or_else(|| EvalError::UnassignedGenerator {
                name: n.clone(),
            }),
            QuandleTerm::Apply { op, left, right } => {
                let a = left.eval_with(q, lookup)?;
                let b = right.eval_with(q, lookup)?;
                Ok(q.apply(*op, a, b))
            }
        }
    }
}

/// Evaluates `t` under `assignment` in the finite quandle `q`.
pub fn eval_term(
    t: &QuandleTerm,
    assignment: &HashMap<String, usize>,
    q: &FiniteQuandle,
) -> Result<usize, EvalError> {
    t.eval_with(q, &|n| assignment.get(n).copied())
}

impl fmt::Display for QuandleTerm {
    /// Infix form with parentheses around every non-leaf operand:
    /// `(x ^ y) v z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuandleTerm::Gen(n) => write!(f, "{n}"),
            QuandleTerm::Apply { op, left, right } => {
                write_operand(f, left)?;
                write!(f, " {} ", op.symbol())?;
                write_operand(f, right)
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, t: &QuandleTerm) -> fmt::Result {
    if t.is_gen() {
        write!(f, "{t}")
    } else {
        write!(f, "({t})")
    }
}

/// Characters that may not appear in a generator name.
const RESERVED: &[char] = &['(', ')', '=', '^', ';', ':', ',', '#', '"'];

/// A generator name is a nonempty run of non-whitespace characters avoiding
/// the reserved punctuation of the text formats.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term syntax error at column {column}: {message}")]
pub struct TermSyntaxError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token<'a> {
    Open,
    Close,
    Equals,
    Word(&'a str),
}

/// Splits on whitespace, treating `(`, `)` and `=` as separate tokens.
/// Columns are 1-based byte offsets.
pub(crate) fn tokenize(s: &str) -> Vec<(usize, Token<'_>)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in s.char_indices() {
        let single = match c {
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            '=' => Some(Token::Equals),
            _ => None,
        };
        if c.is_whitespace() || single.is_some() {
            if let Some(st) = start.take() {
                out.push((st + 1, Token::Word(&s[st..i])));
            }
            if let Some(t) = single {
                out.push((i + 1, t));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((st + 1, Token::Word(&s[st..])));
    }
    out
}

pub(crate) struct TermParser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    end_column: usize,
}

impl<'a> TermParser<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        TermParser {
            tokens: tokenize(s),
            pos: 0,
            end_column: s.len() + 1,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TermSyntaxError> {
        let column = self
            .tokens
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or(self.end_column);
        Err(TermSyntaxError {
            column,
            message: message.into(),
        })
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub(crate) fn eat_equals(&mut self) -> Result<(), TermSyntaxError> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Equals)) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err("expected `=`"),
        }
    }

    pub(crate) fn expect_end(&self) -> Result<(), TermSyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    /// expr := atom (op atom)?
    pub(crate) fn expr(&mut self) -> Result<QuandleTerm, TermSyntaxError> {
        let left = self.atom()?;
        let op = match self.tokens.get(self.pos) {
            Some((_, Token::Word("^"))) => Op::Tr,
            Some((_, Token::Word("v"))) => Op::Tl,
            _ => return Ok(left),
        };
        self.pos += 1;
        let right = self.atom()?;
        Ok(QuandleTerm::apply(op, left, right))
    }

    /// atom := NAME | '(' expr ')'
    fn atom(&mut self) -> Result<QuandleTerm, TermSyntaxError> {
        match self.tokens.get(self.pos).cloned() {
            Some((_, Token::Open)) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.tokens.get(self.pos) {
                    Some((_, Token::Close)) => {
                        self.pos += 1;
                        if inner.is_gen() {
                            // Leaves are never parenthesised; keeps printing canonical.
                            self.pos -= 1;
                            return self.err("redundant parentheses around a generator");
                        }
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some((_, Token::Word(w))) if is_valid_name(w) => {
                self.pos += 1;
                Ok(QuandleTerm::gen(w))
            }
            Some((_, Token::Word(w))) => self.err(format!("invalid generator name `{w}`")),
            Some(_) => self.err("expected a generator or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

impl std::str::FromStr for QuandleTerm {
    type Err = TermSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TermParser::new(s);
        let t = p.expr()?;
        p.expect_end()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::dihedral_quandle;

    fn t(s: &str) -> QuandleTerm {
        s.parse().unwrap()
    }

    #[test]
    fn eval_dihedral_examples() {
        let q = dihedral_quandle(3);
        let mut a = HashMap::new();
        a.insert("x".to_string(), 0);
        a.insert("y".to_string(), 1);
        assert_eq!(eval_term(&t("x ^ y"), &a, &q).unwrap(), 2);
        assert_eq!(eval_term(&t("x ^ x"), &a, &q).unwrap(), 0);
        assert_eq!(eval_term(&t("(x v y) ^ y"), &a, &q).unwrap(), 0);
    }

    #[test]
    fn unassigned_generator_is_reported() {
        let q = dihedral_quandle(3);
        let a = HashMap::new();
        assert_eq!(
            eval_term(&t("x ^ y"), &a, &q),
            Err(EvalError::UnassignedGenerator { name: "x".into() })
        );
    }

    #[test]
    fn display_and_parse_agree() {
        for s in ["x", "x ^ y", "(x ^ y) v z", "a v ((b ^ c) v d)", "v v v"] {
            assert_eq!(t(s).to_string(), s);
        }
    }

    #[test]
    fn parse_requires_parentheses() {
        assert!("x ^ y ^ z".parse::<QuandleTerm>().is_err());
        assert!("(x)".parse::<QuandleTerm>().is_err());
        assert!("x ^".parse::<QuandleTerm>().is_err());
        let err = "x ^ (y".parse::<QuandleTerm>().unwrap_err();
        assert_eq!(err.column, 7);
    }

    #[test]
    fn depth_size_and_substitution() {
        let term = t("(x ^ y) v z");
        assert_eq!(term.depth(), 2);
        assert_eq!(term.size(), 5);
        let s = term.substitute("x", &t("a ^ b"));
        assert_eq!(s.to_string(), "((a ^ b) ^ y) v z");
        assert!(s.contains("a") && !s.contains("x"));
        assert_eq!(s.leaves().into_iter().collect::<Vec<_>>(), vec!["a", "b", "y", "z"]);
    }

    #[test]
    fn names() {
        assert!(is_valid_name("x_1"));
        assert!(is_valid_name("v"));
        assert!(!is_valid_name(""));
        assert!(!is_valid_name("a b"));
        assert!(!is_valid_name("a=b"));
        assert!(!is_valid_name("x^"));
    }
}
