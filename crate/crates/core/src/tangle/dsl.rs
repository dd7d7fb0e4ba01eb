//! The line-oriented tangle format.

use std::fmt;

use thiserror::Error;

use crate::boundary::{Sign, SignedBoundary};

use super::{CrossingKind, Site, Slice, TangleDiagram, TangleError};

pub const DSL_GRAMMAR: &str = "\
file       := bottom_line slice_line* top_line
bottom_line:= \"bottom\" sign*
top_line   := \"top\" sign*
slice_line := \"x\" index sign? | \"xbar\" index | (\"cup\" | \"cap\") index sign?
sign       := \"+\" | \"-\"
index      := positive integer, 1-based strand position
Statements are separated by newlines or `;`. `#` starts a comment.
`x` is a positive crossing (lower-left strand over), `xbar` and `x i -` a
negative one.
The optional sign after cup/cap fixes the orientation of its left leg.";

/// An error in a tangle file, located at a line and column (both 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct DslError {
    pub line: usize,
    pub column: usize,
    #[source]
    pub error: TangleError,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.error)
    }
}

struct Word<'a> {
    text: &'a str,
    column: usize,
}

struct Statement<'a> {
    line: usize,
    words: Vec<Word<'a>>,
}

fn statements(text: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut current = Vec::new();
        let mut start: Option<usize> = None;
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        for (ci, &(bi, ch)) in chars.iter().enumerate() {
            let boundary = ch.is_whitespace() || ch == ';';
            if boundary {
                if let Some(s) = start.take() {
                    let (sb, scol) = (chars[s].0, s + 1);
                    current.push(Word {
                        text: &line[sb..bi],
                        column: scol,
                    });
                }
                if ch == ';' {
                    flush(ln + 1, &mut current, &mut out);
                }
            } else if start.is_none() {
                start = Some(ci);
            }
        }
        if let Some(s) = start {
            current.push(Word {
                text: &line[chars[s].0..],
                column: s + 1,
            });
        }
        flush(ln + 1, &mut current, &mut out);
    }
    out
}

fn flush<'a>(line: usize, current: &mut Vec<Word<'a>>, out: &mut Vec<Statement<'a>>) {
    if !current.is_empty() {
        out.push(Statement {
            line,
            words: std::mem::take(current),
        });
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DslError {
    DslError {
        line,
        column,
        error: TangleError::Syntax(message.into()),
    }
}

fn parse_sign(w: &Word<'_>, line: usize) -> Result<Sign, DslError> {
    match w.text {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(syntax(line, w.column, format!("expected `+` or `-`, found `{other}`"))),
    }
}

fn parse_signs(st: &Statement<'_>) -> Result<SignedBoundary, DslError> {
    st.words[1..]
        .iter()
        .map(|w| parse_sign(w, st.line))
        .collect::<Result<Vec<_>, _>>()
        .map(SignedBoundary)
}

fn parse_slice(st: &Statement<'_>) -> Result<Slice, DslError> {
    let head = &st.words[0];
    let index = st.words.get(1).ok_or_else(|| {
        syntax(st.line, head.column + head.text.len(), format!("`{}` needs an index", head.text))
    })?;
    let i: usize = index
        .text
        .parse()
        .ok()
        .filter(|&i| i >= 1)
        .ok_or_else(|| syntax(st.line, index.column, format!("bad index `{}`", index.text)))?;
    let extra = st.words.get(2);
    let max_words = match head.text {
        "xbar" => 2,
        _ => 3,
    };
    if let Some(w) = st.words.get(max_words) {
        return Err(syntax(st.line, w.column, format!("unexpected `{}`", w.text)));
    }
    let sign = extra.map(|w| parse_sign(w, st.line)).transpose()?;
    Ok(match head.text {
        "x" => Slice::Crossing {
            index: i - 1,
            kind: match sign {
                Some(Sign::Minus) => CrossingKind::Negative,
                _ => CrossingKind::Positive,
            },
        },
        "xbar" => Slice::crossing(i - 1, CrossingKind::Negative),
        "cup" => Slice::Cup { index: i - 1, dir: sign },
        "cap" => Slice::Cap { index: i - 1, dir: sign },
        other => return Err(syntax(st.line, head.column, format!("unknown slice `{other}`"))),
    })
}

/// Parses and validates a tangle file.
pub fn parse_tangle(text: &str) -> Result<TangleDiagram, DslError> {
    let sts = statements(text);
    let first = sts.first().ok_or_else(|| syntax(1, 1, "empty input, expected `bottom`"))?;
    if first.words[0].text != "bottom" {
        return Err(syntax(first.line, first.words[0].column, "expected `bottom`"));
    }
    let last = &sts[sts.len() - 1];
    if sts.len() < 2 || last.words[0].text != "top" {
        let (l, c) = if sts.len() < 2 {
            (first.line, first.words.last().map_or(1, |w| w.column))
        } else {
            (last.line, last.words[0].column)
        };
        return Err(syntax(l, c, "expected `top` as the last statement"));
    }
    let bottom = parse_signs(first)?;
    let top = parse_signs(last)?;
    let body = &sts[1..sts.len() - 1];
    let slices = body.iter().map(parse_slice).collect::<Result<Vec<_>, _>>()?;
    TangleDiagram::new(bottom, top, slices).map_err(|error| {
        let st = match &error {
            TangleError::Width { site: Site::Slice(k), .. }
            | TangleError::Orientation { site: Site::Slice(k), .. } => &body[*k],
            _ => last,
        };
        DslError {
            line: st.line,
            column: st.words[0].column,
            error,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_samples() {
        let t = parse_tangle("bottom + + ; x 1 + ; top + +").unwrap();
        assert_eq!(t, TangleDiagram::braid(2, &[1]).unwrap());
        let t = parse_tangle("bottom ; cup 1 ; top - +").unwrap();
        assert_eq!(t, TangleDiagram::cup(&SignedBoundary::parse("-+").unwrap()).unwrap());
    }

    #[test]
    fn width_error_is_located() {
        let e = parse_tangle("bottom + +\n# comment\nx 5 +\ntop + +\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 1));
        assert!(matches!(e.error, TangleError::Width { .. }));
    }

    #[test]
    fn syntax_errors_are_located() {
        let e = parse_tangle("bottom + +\n  cup zero\ntop + +").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        let e = parse_tangle("bottom + *\ntop").unwrap_err();
        assert_eq!((e.line, e.column), (1, 10));
        let e = parse_tangle("x 1\ntop").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_tangle("bottom +").unwrap_err();
        assert!(matches!(e.error, TangleError::Syntax(_)));
    }

    #[test]
    fn orientation_error_is_located() {
        let e = parse_tangle("bottom + +\ncap 1\ntop\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.error, TangleError::Orientation { .. }));
    }

    #[test]
    fn dsl_round_trip() {
        let text = "bottom\ncup 1 -\ncup 2\nx 1\nxbar 2\ncap 1\ncap 1\ntop\n";
        let t = parse_tangle(text).unwrap();
        let printed = t.to_dsl();
        assert!(printed.starts_with("bottom\ncup 1 -\n"));
        let back = parse_tangle(&printed).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_dsl(), printed);
        let open = "bottom + -\nx 1\ncap 1\ntop\n";
        assert_eq!(parse_tangle(open).unwrap().to_dsl(), open);
    }
}
