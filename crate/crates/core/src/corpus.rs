//! Tangle diagrams shipped with the library, used by the verification suites
//! and the acceptance tests.

use crate::tangle::{parse_tangle, TangleDiagram};

macro_rules! entries {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".tgl")))),*]
    };
}

/// `(name, source)` for every corpus file.
pub const CORPUS: &[(&str, &str)] = entries![
    "unknot",
    "trefoil_closed",
    "trefoil",
    "trefoil_reverse",
    "trefoil_mirror",
    "figure_eight",
    "pretzel",
    "cable_pattern",
    "double_pattern",
    "r1_before",
    "r1_after",
    "r2_before",
    "r2_after",
    "r3_before",
    "r3_after",
    "empty",
];

/// The Reidemeister pairs: diagrams differing by one move of the given kind.
pub const REIDEMEISTER_PAIRS: &[(u8, &str, &str)] = &[
    (1, "r1_before", "r1_after"),
    (2, "r2_before", "r2_after"),
    (3, "r3_before", "r3_after"),
];

pub fn source(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a corpus diagram. Panics on an unknown name.
pub fn tangle(name: &str) -> TangleDiagram {
    let src = source(name).unwrap_or_else(|| panic!("no corpus entry `{name}`"));
    parse_tangle(src).unwrap_or_else(|e| panic!("corpus entry `{name}`: {e}"))
}

pub fn all() -> Vec<(&'static str, TangleDiagram)> {
    CORPUS.iter().map(|(n, _)| (*n, tangle(n))).collect()
}

/// The (1,1)-tangles of the corpus.
pub fn one_one() -> Vec<(&'static str, TangleDiagram)> {
    all().into_iter().filter(|(_, t)| t.bottom().len() == 1 && t.top().len() == 1).collect()
}

/// Braids on up to three strands with at most four letters.
pub fn braids() -> Vec<(String, TangleDiagram)> {
    let words: &[(usize, &[i64])] = &[
        (2, &[1]),
        (2, &[-1]),
        (2, &[1, 1, 1]),
        (3, &[1, 2]),
        (3, &[1, -2, 1, -2]),
        (3, &[2, 1, 2]),
        (3, &[-1, -2, -1]),
    ];
    words
        .iter()
        .map(|(n, w)| {
            let t = TangleDiagram::braid(*n, w).expect("valid braid word");
            (format!("braid{n}{w:?}"), t)
        })
        .collect()
}

/// Composable pairs for the functoriality checks.
pub fn composable_pairs() -> Vec<(String, TangleDiagram, TangleDiagram)> {
    let mut pool: Vec<(String, TangleDiagram)> =
        all().into_iter().map(|(n, t)| (n.to_string(), t)).collect();
    pool.extend(braids());
    for (n, t) in [("pretzel", tangle("pretzel")), ("figure_eight", tangle("figure_eight"))] {
        pool.push((format!("trivial·{n}"), TangleDiagram::trivial(t.bottom())));
    }
    let mut out = Vec::new();
    for (n1, t1) in &pool {
        for (n2, t2) in &pool {
            if t1.top() == t2.bottom() && t1.crossing_count() + t2.crossing_count() <= 10 {
                out.push((format!("{n1} ; {n2}"), t1.clone(), t2.clone()));
            }
        }
    }
    out
}
