//! Finite quandles given by explicit operation tables.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::Op;

/// The three quandle axioms, in the order they are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// `x ▷ x = x`
    Idempotency,
    /// every column map `x ↦ x ▷ y` is a bijection
    RightInvertibility,
    /// `(x ▷ y) ▷ z = (x ▷ z) ▷ (y ▷ z)`
    SelfDistributivity,
}

impl Axiom {
    pub fn number(self) -> u8 {
        match self {
            Axiom::Idempotency => 1,
            Axiom::RightInvertibility => 2,
            Axiom::SelfDistributivity => 3,
        }
    }
}

/// The elements exhibiting a violated axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Idempotency { x: usize },
    /// `x1 ▷ y = x2 ▷ y` with `x1 != x2`.
    RightInvertibility { y: usize, x1: usize, x2: usize },
    SelfDistributivity { x: usize, y: usize, z: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("quandle table must be a nonempty square array (row {row} has length {len}, expected {expected})")]
    Shape { row: usize, len: usize, expected: usize },
    #[error("quandle table is empty")]
    Empty,
    #[error("table entry [{x}][{y}] = {value} is outside 0..{size}")]
    EntryOutOfRange {
        x: usize,
        y: usize,
        value: usize,
        size: usize,
    },
    #[error("axiom {} violated: {witness:?}", axiom.number())]
    AxiomViolation { axiom: Axiom, witness: Witness },
    #[error("quandle text format: {0}")]
    Format(String),
    #[error("unknown builtin quandle `{0}` (expected dihedral:N with 1 <= N <= 64, or conj-sym3)")]
    UnknownBuiltin(String),
}

/// A validated finite quandle on `{0, .., n-1}`.
///
/// `table[x][y] = x ▷ y`; `inv_table[x][y] = x ◁ y`. Both are stored
/// row-major in flat vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    size: usize,
    table: Vec<usize>,
    inv_table: Vec<usize>,
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuandle")
            .field("size", &self.size)
            .field("table", &self.rows())
            .finish()
    }
}

/// Checks the axioms and builds the quandle, caching the inverse table.
pub fn validate_quandle(table: &[Vec<usize>]) -> Result<FiniteQuandle, QuandleError> {
    let n = table.len();
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(QuandleError::Shape {
                row,
                len: r.len(),
                expected: n,
            });
        }
    }
    for (x, r) in table.iter().enumerate() {
        for (y, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(QuandleError::EntryOutOfRange {
                    x,
                    y,
                    value,
                    size: n,
                });
            }
        }
    }
    for x in 0..n {
        if table[x][x] != x {
            return Err(QuandleError::AxiomViolation {
                axiom: Axiom::Idempotency,
                witness: Witness::Idempotency { x },
            });
        }
    }
    let mut inv = vec![0usize; n * n];
    for y in 0..n {
        let mut preimage: Vec<Option<usize>> = vec![None; n];
        for x in 0..n {
            let v = table[x][y];
            if let Some(x1) = preimage[v] {
                return Err(QuandleError::AxiomViolation {
                    axiom: Axiom::RightInvertibility,
                    witness: Witness::RightInvertibility { y, x1, x2: x },
                });
            }
            preimage[v] = Some(x);
        }
        for (v, p) in preimage.into_iter().enumerate() {
            // injective on a finite set, hence bijective
            inv[v * n + y] = p.expect("column map is a bijection");
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = table[table[x][y]][z];
                let rhs = table[table[x][z]][table[y][z]];
                if lhs != rhs {
                    return Err(QuandleError::AxiomViolation {
                        axiom: Axiom::SelfDistributivity,
                        witness: Witness::SelfDistributivity { x, y, z },
                    });
                }
            }
        }
    }
    Ok(FiniteQuandle {
        size: n,
        table: table.iter().flatten().copied().collect(),
        inv_table: inv,
    })
}

/// The dihedral quandle `x ▷ y = 2y - x mod n`.
pub fn dihedral_quandle(n: usize) -> FiniteQuandle {
    assert!(n >= 1, "dihedral quandle needs n >= 1");
    let table: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| (2 * y + n - x) % n).collect())
        .collect();
    validate_quandle(&table).expect("dihedral tables satisfy the quandle axioms")
}

/// The conjugation quandle `a ▷ b = b⁻¹ a b` of a permutation group, given
/// by its elements as image vectors (composition applies the left factor first).
pub fn conjugation_quandle(elements: &[Vec<usize>]) -> Result<FiniteQuandle, QuandleError> {
    let index = |p: &Vec<usize>| elements.iter().position(|e| e == p);
    let compose = |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> { p.iter().map(|&i| q[i]).collect() };
    let invert = |p: &Vec<usize>| -> Vec<usize> {
        let mut out = vec![0; p.len()];
        for (i, &j) in p.iter().enumerate() {
            out[j] = i;
        }
        out
    };
    let mut table = Vec::with_capacity(elements.len());
    for a in elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in elements {
            let c = compose(&compose(&invert(b), a), b);
            row.push(index(&c).ok_or_else(|| {
                QuandleError::Format("element list is not closed under conjugation".into())
            })?);
        }
        table.push(row);
    }
    validate_quandle(&table)
}

/// Conjugation quandle of the symmetric group on three letters; elements are
/// the permutations of `[0, 1, 2]` in lexicographic order.
pub fn conj_sym3() -> FiniteQuandle {
    let perms = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    conjugation_quandle(&perms).expect("S3 is closed under conjugation")
}

/// Looks up a builtin: `dihedral:N` (1 <= N <= 64) or `conj-sym3`.
pub fn builtin_quandle(name: &str) -> Result<FiniteQuandle, QuandleError> {
    if name == "conj-sym3" {
        return Ok(conj_sym3());
    }
    if let Some(n) = name.strip_prefix("dihedral:") {
        if let Ok(n) = n.parse::<usize>() {
            if (1..=64).contains(&n) {
                return Ok(dihedral_quandle(n));
            }
        }
    }
    Err(QuandleError::UnknownBuiltin(name.to_string()))
}

/// The quandles used by the route and invariance checks: `dihedral:3`,
/// `dihedral:4`, `dihedral:5` and `conj-sym3`.
pub fn test_quandles() -> Vec<(&'static str, FiniteQuandle)> {
    vec![
        ("dihedral:3", dihedral_quandle(3)),
        ("dihedral:4", dihedral_quandle(4)),
        ("dihedral:5", dihedral_quandle(5)),
        ("conj-sym3", conj_sym3()),
    ]
}

impl FiniteQuandle {
    pub fn size(&self) -> usize {
        self.size
    }

    /// `x ▷ y`
    #[inline]
    pub fn tr(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// `x ◁ y`
    #[inline]
    pub fn tl(&self, x: usize, y: usize) -> usize {
        self.inv_table[x * self.size + y]
    }

    #[inline]
    pub fn apply(&self, op: Op, x: usize, y: usize) -> usize {
        match op {
            Op::Tr => self.tr(x, y),
            Op::Tl => self.tl(x, y),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn inverse_rows(&self) -> Vec<Vec<usize>> {
        self.inv_table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Whether the inner maps `α_y` act transitively, by orbit saturation
    /// from element 0 under every `α_y` and `α_y⁻¹`.
    pub fn is_connected(&self) -> bool {
        let n = self.size;
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                for next in [self.tr(x, y), self.tl(x, y)] {
                    if !seen[next] {
                        seen[next] = true;
                        count += 1;
                        queue.push_back(next);
                    }
                }
            }
        }
        count == n
    }

    /// Whether `y ↦ α_y` is injective, i.e. no two columns coincide.
    pub fn is_faithful(&self) -> bool {
        let n = self.size;
        let column = |y: usize| (0..n).map(move |x| self.tr(x, y));
        (0..n).all(|y| (y + 1..n).all(|y2| !column(y).eq(column(y2))))
    }

    /// Text form: `n` on the first line, then `n` rows of `n` integers.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.size);
        for row in self.table.chunks(self.size) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<FiniteQuandle, QuandleError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| QuandleError::Format("missing size line".into()))?
            .trim()
            .parse()
            .map_err(|_| QuandleError::Format("size line is not an integer".into()))?;
        let mut table = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let row = line
                .split_whitespace()
                .map(|w| w.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| QuandleError::Format(format!("row {} has a non-integer entry", i + 1)))?;
            table.push(row);
        }
        if table.len() != n {
            return Err(QuandleError::Format(format!(
                "expected {n} rows, found {}",
                table.len()
            )));
        }
        validate_quandle(&table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_three_rows() {
        assert_eq!(
            dihedral_quandle(3).rows(),
            vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]
        );
    }

    #[test]
    fn dihedral_one_is_trivial() {
        let q = dihedral_quandle(1);
        assert_eq!(q.rows(), vec![vec![0]]);
        assert!(q.is_connected());
        assert!(q.is_faithful());
    }

    #[test]
    fn dihedral_four_has_equal_columns() {
        let q = dihedral_quandle(4);
        assert!((0..4).all(|x| q.tr(x, 0) == q.tr(x, 2)));
        assert!(!q.is_faithful());
        assert!(!q.is_connected());
    }

    #[test]
    fn dihedral_three_is_connected_and_faithful() {
        let q = dihedral_quandle(3);
        assert!(q.is_connected());
        assert!(q.is_faithful());
    }

    #[test]
    fn idempotency_violation() {
        let err = validate_quandle(&[vec![1, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            QuandleError::AxiomViolation {
                axiom: Axiom::Idempotency,
                witness: Witness::Idempotency { x: 0 }
            }
        );
    }

    #[test]
    fn shape_and_range_errors() {
        assert!(matches!(
            validate_quandle(&[vec![0, 0], vec![1]]),
            Err(QuandleError::Shape { row: 1, .. })
        ));
        assert!(matches!(
            validate_quandle(&[vec![0, 5], vec![1, 1]]),
            Err(QuandleError::EntryOutOfRange { value: 5, .. })
        ));
        assert_eq!(validate_quandle(&[]), Err(QuandleError::Empty));
    }

    #[test]
    fn conj_sym3_is_valid_faithful_not_connected() {
        let q = conj_sym3();
        assert_eq!(q.size(), 6);
        assert!(q.is_faithful());
        assert!(!q.is_connected());
        // the identity permutation is fixed by every inner map
        assert!((0..6).all(|y| q.tr(0, y) == 0));
    }

    #[test]
    fn inverse_table_inverts_columns() {
        for q in [dihedral_quandle(7), conj_sym3()] {
            for x in 0..q.size() {
                for y in 0..q.size() {
                    assert_eq!(q.tl(q.tr(x, y), y), x);
                    assert_eq!(q.tr(q.tl(x, y), y), x);
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let q = dihedral_quandle(3);
        let text = q.to_text();
        assert_eq!(text, "3\n0 2 1\n2 1 0\n1 0 2\n");
        assert_eq!(FiniteQuandle::from_text(&text).unwrap(), q);
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_quandle("dihedral:5").unwrap().size(), 5);
        assert_eq!(builtin_quandle("conj-sym3").unwrap().size(), 6);
        assert!(builtin_quandle("dihedral:65").is_err());
        assert!(builtin_quandle("dihedral:0").is_err());
        assert!(builtin_quandle("alexander").is_err());
    }
}
