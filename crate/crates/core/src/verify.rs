//! Property suites run by `fquandle verify`. Each check reports pass or fail
//! with a short detail line; nothing here panics on a failed property.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boundary::Sign;
use crate::colorings::{count_colorings, endpoint_colors, enumerate_colorings};
use crate::constructions::{
    braid_action, cable_presentation, classical_closure, classical_closure_unsimplified, closure_diagram,
    connected_sum, connected_sum_diagram, periodic_link, plat_closure, plat_closure_diagram, satellite,
    satellite_diagram, BraidAutomorphism,
};
use crate::corpus;
use crate::functor::{bq, bq_compose_check, test_counts};
use crate::presentation::{amalgamate, BorderedMorphism, QuandlePresentation};
use crate::quandle::{conj_sym3, dihedral_quandle, test_quandles, validate_quandle, Axiom, QuandleError};
use crate::tangle::{cable_diagram, TangleDiagram};
use crate::tietze::simplify_closed;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Functoriality,
    Reidemeister,
    Routes,
    Lemmas,
    Braid,
    Tietze,
    All,
}

impl Suite {
    pub const NAMES: &'static [&'static str] =
        &["axioms", "functoriality", "reidemeister", "routes", "lemmas", "braid", "tietze", "all"];

    fn parts(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Axioms, Functoriality, Reidemeister, Routes, Lemmas, Braid, Tietze],
            s => vec![s],
        }
    }

    fn name(self) -> &'static str {
        Suite::NAMES[self as usize]
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Suite::*;
        Ok(match s {
            "axioms" => Axioms,
            "functoriality" => Functoriality,
            "reidemeister" => Reidemeister,
            "routes" => Routes,
            "lemmas" => Lemmas,
            "braid" => Braid,
            "tietze" => Tietze,
            "all" => All,
            _ => return Err(format!("unknown suite `{s}` (expected one of {})", Suite::NAMES.join(", "))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}/{}", self.suite, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

struct Report {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Report {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn counts(&mut self, name: impl Into<String>, a: Result<Vec<u64>, String>, b: Result<Vec<u64>, String>) {
        match (a, b) {
            (Ok(a), Ok(b)) => {
                let passed = a == b;
                self.check(name, passed, format!("{a:?} vs {b:?}"))
            }
            (Err(e), _) | (_, Err(e)) => self.check(name, false, e),
        }
    }
}

fn counts_of<E: fmt::Display>(p: Result<QuandlePresentation, E>) -> Result<Vec<u64>, String> {
    p.map(|p| test_counts(&p)).map_err(|e| e.to_string())
}

/// Runs a suite; `seed` drives the randomized braid checks.
pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for s in suite.parts() {
        let mut r = Report {
            suite: s.name(),
            checks: Vec::new(),
        };
        match s {
            Suite::Axioms => axioms(&mut r),
            Suite::Functoriality => functoriality(&mut r),
            Suite::Reidemeister => reidemeister(&mut r),
            Suite::Routes => routes(&mut r),
            Suite::Lemmas => lemmas(&mut r),
            Suite::Braid => braid(&mut r, seed),
            Suite::Tietze => tietze(&mut r),
            Suite::All => unreachable!("expanded above"),
        }
        out.extend(r.checks);
    }
    out
}

/// The first axiom a table violates, checked the slow way.
pub fn first_violated_axiom(t: &[Vec<usize>]) -> Option<Axiom> {
    let n = t.len();
    if (0..n).any(|x| t[x][x] != x) {
        return Some(Axiom::Idempotency);
    }
    for y in 0..n {
        let mut col: Vec<usize> = (0..n).map(|x| t[x][y]).collect();
        col.sort_unstable();
        col.dedup();
        if col.len() != n {
            return Some(Axiom::RightInvertibility);
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if t[t[x][y]][z] != t[t[x][z]][t[y][z]] {
                    return Some(Axiom::SelfDistributivity);
                }
            }
        }
    }
    None
}

/// Every table obtained from `table` by changing one entry to another value
/// in range.
pub fn single_entry_mutations(table: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let n = table.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for v in (0..n).filter(|&v| v != table[x][y]) {
                let mut t = table.to_vec();
                t[x][y] = v;
                out.push(t);
            }
        }
    }
    out
}

fn axioms(r: &mut Report) {
    for n in 1..=12 {
        let q = dihedral_quandle(n);
        r.check(format!("dihedral:{n} valid"), validate_quandle(&q.rows()).is_ok(), "");
    }
    r.check("conj-sym3 valid", validate_quandle(&conj_sym3().rows()).is_ok(), "");

    let base = dihedral_quandle(3).rows();
    let muts = single_entry_mutations(&base);
    let tagged = muts
        .iter()
        .filter(|t| match validate_quandle(t) {
            Err(QuandleError::AxiomViolation { axiom, .. }) => Some(axiom) == first_violated_axiom(t),
            _ => false,
        })
        .count();
    r.check(
        "dihedral:3 mutations rejected with the right axiom",
        tagged == muts.len(),
        format!("{tagged}/{}", muts.len()),
    );
    for (x, y) in [(0, 1), (2, 2)] {
        let mut t = base.clone();
        t[x][y] = 3;
        let ok = matches!(validate_quandle(&t), Err(QuandleError::EntryOutOfRange { .. }));
        r.check(format!("entry [{x}][{y}] out of range rejected"), ok, "");
    }
}

fn functoriality(r: &mut Report) {
    for (name, t1, t2) in corpus::composable_pairs() {
        match bq_compose_check(&t1, &t2) {
            Ok(ok) => r.check(name, ok, ""),
            Err(e) => r.check(name, false, e.to_string()),
        }
    }
}

fn reidemeister(r: &mut Report) {
    for (k, a, b) in corpus::REIDEMEISTER_PAIRS {
        let count = |n: &str| counts_of(classical_closure(&bq(&corpus::tangle(n))));
        r.counts(format!("R{k} {a} ~ {b}"), count(a), count(b));
    }
}

/// Sign vectors of length 1 and 2.
pub fn small_sign_vectors() -> Vec<Vec<Sign>> {
    use Sign::*;
    vec![
        vec![Plus],
        vec![Minus],
        vec![Plus, Plus],
        vec![Plus, Minus],
        vec![Minus, Plus],
        vec![Minus, Minus],
    ]
}

fn eps_label(eps: &[Sign]) -> String {
    eps.iter().map(|s| s.symbol()).collect()
}

fn routes(r: &mut Report) {
    let cabled = ["trefoil", "trefoil_reverse", "trefoil_mirror", "figure_eight", "unknot", "pretzel", "double_pattern"];
    for name in cabled {
        let t = corpus::tangle(name);
        for eps in small_sign_vectors() {
            let a = cable_presentation(&bq(&t), &eps).map(|m| test_counts(m.presentation()));
            let b = Ok(test_counts(bq(&cable_diagram(&t, &eps)).presentation()));
            r.counts(format!("cable {name} ({})", eps_label(&eps)), a.map_err(|e| e.to_string()), b);
        }
    }

    let mut closable: Vec<(String, TangleDiagram)> = corpus::all()
        .into_iter()
        .filter(|(_, t)| t.bottom() == t.top() && !t.bottom().is_empty())
        .map(|(n, t)| (n.to_string(), t))
        .collect();
    closable.extend(corpus::braids().into_iter().filter(|(_, t)| t.crossing_count() <= 3));
    for (name, t) in &closable {
        let m = bq(t);
        let shortcut = counts_of(classical_closure(&m));
        let pipeline = closure_diagram(t).map(|d| test_counts(bq(&d).presentation()));
        r.counts(format!("closure {name}"), shortcut, pipeline.map_err(|e| e.to_string()));
        for p in 1..=3 {
            let direct = counts_of(periodic_link(&m, p));
            let mut power = m.clone();
            for _ in 1..p {
                power = amalgamate(&power, &m).expect("(φ,φ)-morphisms compose");
            }
            r.counts(format!("periodic {name} p={p}"), direct, counts_of(classical_closure(&power)));
        }
    }
    let pretzel = bq(&corpus::tangle("pretzel"));
    let mut power = pretzel.clone();
    for _ in 1..4 {
        power = amalgamate(&power, &pretzel).expect("(φ,φ)-morphisms compose");
    }
    r.counts("periodic pretzel p=4", counts_of(periodic_link(&pretzel, 4)), counts_of(classical_closure(&power)));

    for (name, t) in corpus::one_one() {
        let m = bq(&t);
        let wide = t.tensor(&TangleDiagram::trivial(&t.bottom().barred()));
        let plat = counts_of(plat_closure(&bq(&wide)));
        r.counts(format!("plat of {name} ⊗ T1 vs closure"), plat, counts_of(classical_closure(&m)));
        let pipeline = plat_closure_diagram(&wide).map(|d| test_counts(bq(&d).presentation()));
        r.counts(
            format!("plat pipeline {name}"),
            counts_of(plat_closure(&bq(&wide))),
            pipeline.map_err(|e| e.to_string()),
        );
    }

    for (a, b) in [("trefoil_reverse", "trefoil_mirror"), ("trefoil_reverse", "figure_eight"), ("trefoil_reverse", "unknot")] {
        let (ta, tb) = (corpus::tangle(a), corpus::tangle(b));
        let direct = counts_of(connected_sum(&bq(&ta), &bq(&tb)));
        let pipeline = connected_sum_diagram(&ta, &tb).map(|d| test_counts(bq(&d).presentation()));
        r.counts(format!("sum {a} # {b}"), direct, pipeline.map_err(|e| e.to_string()));
    }

    use Sign::*;
    let sats: [(&str, &str, Vec<Sign>); 3] = [
        ("cable_pattern", "figure_eight", vec![Plus, Plus]),
        ("double_pattern", "trefoil", vec![Minus, Plus]),
        ("unknot", "trefoil", vec![Minus]),
    ];
    for (e, c, eps) in sats {
        let (te, tc) = (corpus::tangle(e), corpus::tangle(c));
        let direct = counts_of(satellite(&bq(&te), &bq(&tc), &eps));
        let pipeline = satellite_diagram(&te, &tc, &eps).map(|d| test_counts(bq(&d).presentation()));
        r.counts(
            format!("satellite {e} / {c} ({})", eps_label(&eps)),
            direct,
            pipeline.map_err(|e| e.to_string()),
        );
    }
}

fn lemmas(r: &mut Report) {
    let knot = |n: &str| bq(&corpus::tangle(n));
    for n in [3, 5] {
        let q = dihedral_quandle(n);
        let cf = q.is_connected() && q.is_faithful();
        r.check(format!("dihedral:{n} connected and faithful"), cf, "");
        for (a, b) in [("trefoil_reverse", "trefoil_mirror"), ("trefoil_reverse", "figure_eight")] {
            let (ma, mb) = (knot(a), knot(b));
            let sum = connected_sum(&ma, &mb).map(|p| count_colorings(&p, &q));
            let ka = classical_closure(&ma).map(|p| count_colorings(&p, &q));
            let kb = classical_closure(&mb).map(|p| count_colorings(&p, &q));
            match (sum, ka, kb) {
                (Ok(s), Ok(x), Ok(y)) => r.check(
                    format!("sum lemma {a} # {b} over dihedral:{n}"),
                    n as u64 * s == x * y,
                    format!("{n}·{s} vs {x}·{y}"),
                ),
                _ => r.check(format!("sum lemma {a} # {b} over dihedral:{n}"), false, "construction failed"),
            }
        }
    }
    for (qname, q) in test_quandles().into_iter().filter(|(_, q)| q.is_faithful()) {
        for (name, t) in corpus::one_one() {
            let m = bq(&t);
            let e = enumerate_colorings(m.presentation(), &q, None);
            let agree = e.colorings.iter().all(|c| {
                endpoint_colors(c, &m, &q).is_ok_and(|(b, t)| b == t)
            });
            r.check(
                format!("endpoint colors agree: {name} over {qname}"),
                agree,
                format!("{} colorings", e.colorings.len()),
            );
        }
    }
}

fn action(word: &[i64], k: usize) -> BraidAutomorphism {
    braid_action(word, k).expect("valid braid word")
}

/// A random braid word on `k` strands with at most `max_len` letters.
pub fn random_word(rng: &mut impl Rng, k: usize, max_len: usize) -> Vec<i64> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..k as i64);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect()
}

fn braid(r: &mut Report, seed: u64) {
    r.check("s1 s2 s1 = s2 s1 s2", action(&[1, 2, 1], 3) == action(&[2, 1, 2], 3), "");
    r.check("s1 s3 = s3 s1", action(&[1, 3], 4) == action(&[3, 1], 4), "");
    r.check("s1 is not the identity", !action(&[1], 2).is_identity(), "");
    r.check("s1 s1^-1 is the identity", action(&[1, -1], 2).is_identity(), "");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut good = 0;
    for _ in 0..50 {
        let k = rng.gen_range(2..=3);
        let (w1, w2) = (random_word(&mut rng, k, 5), random_word(&mut rng, k, 5));
        let whole: Vec<i64> = w1.iter().chain(&w2).copied().collect();
        if action(&whole, k) == action(&w1, k).then(&action(&w2, k)) {
            good += 1;
        }
    }
    r.check("action is a homomorphism on random pairs", good == 50, format!("{good}/50, seed {seed}"));
}

/// Presentations whose counts must survive simplification.
pub fn tietze_samples() -> Vec<(String, QuandlePresentation)> {
    let mut out = Vec::new();
    for (name, t) in corpus::all() {
        let m = bq(&t);
        out.push((format!("bq {name}"), m.presentation().clone()));
        if let Ok(p) = classical_closure_unsimplified(&m) {
            out.push((format!("closure {name}"), p));
        }
    }
    for (name, t) in corpus::braids() {
        out.push((format!("bq {name}"), bq(&t).presentation().clone()));
    }
    out
}

fn tietze(r: &mut Report) {
    for (name, p) in tietze_samples() {
        r.counts(name, Ok(test_counts(&p)), Ok(test_counts(&simplify_closed(&p))));
    }
    for (name, t) in corpus::one_one() {
        let raw = bq(&t);
        let (simplified, _) = crate::tietze::simplify_morphism(&raw, crate::tietze::DEFAULT_BUDGET);
        let endpoint_counts = |m: &BorderedMorphism| {
            let q = dihedral_quandle(3);
            enumerate_colorings(m.presentation(), &q, None)
                .colorings
                .iter()
                .filter_map(|c| endpoint_colors(c, m, &q).ok())
                .collect::<std::collections::BTreeSet<_>>()
        };
        r.check(
            format!("bordered simplification keeps endpoint colors: {name}"),
            endpoint_counts(&raw) == endpoint_counts(&simplified),
            "",
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().name(), *n);
        }
    }

    #[test]
    fn mutations_of_dihedral_three() {
        let muts = single_entry_mutations(&dihedral_quandle(3).rows());
        assert_eq!(muts.len(), 18);
        assert!(muts.iter().all(|t| first_violated_axiom(t).is_some()));
    }
}
