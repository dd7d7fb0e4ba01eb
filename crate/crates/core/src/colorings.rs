//! Colorings: quandle homomorphisms from a finitely presented quandle to a
//! finite one, found by backtracking with forced assignments.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::presentation::{BorderedMorphism, QuandlePresentation};
use crate::quandle::FiniteQuandle;
use crate::term::{EvalError, Op, QuandleTerm};

/// An assignment of target elements to generators, indexed like the
/// generators of the presentation it colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, p: &QuandlePresentation, name: &str) -> Option<usize> {
        p.generator_index(name).map(|i| self.0[i])
    }

    pub fn as_map(&self, p: &QuandlePresentation) -> BTreeMap<String, usize> {
        p.generators().iter().cloned().zip(self.0.iter().copied()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub colorings: Vec<Coloring>,
    /// Set when the limit was reached before the search finished.
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug)]
enum Instr {
    Load(usize),
    Apply(Op),
}

/// A term compiled to postfix over generator indices.
#[derive(Clone, Debug)]
struct Code(Vec<Instr>);

impl Code {
    fn compile(t: &QuandleTerm, index: &HashMap<&str, usize>) -> Code {
        fn go(t: &QuandleTerm, index: &HashMap<&str, usize>, out: &mut Vec<Instr>) {
            match t {
                QuandleTerm::Gen(g) => out.push(Instr::Load(index[g.as_str()])),
                QuandleTerm::Apply { op, left, right } => {
                    go(left, index, out);
                    go(right, index, out);
                    out.push(Instr::Apply(*op));
                }
            }
        }
        let mut v = Vec::new();
        go(t, index, &mut v);
        Code(v)
    }

    fn eval(&self, q: &FiniteQuandle, vals: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for ins in &self.0 {
            match *ins {
                Instr::Load(g) => stack.push(vals[g]),
                Instr::Apply(op) => {
                    let y = stack.pop().expect("well-formed code");
                    let x = stack.pop().expect("well-formed code");
                    stack.push(q.apply(op, x, y));
                }
            }
        }
        stack[0]
    }
}

#[derive(Clone, Debug)]
enum Step {
    Branch(usize),
    Define(usize, Code),
    Check(Code, Code),
}

/// The order in which generators are assigned, fixed before the search.
#[derive(Clone, Debug)]
pub struct Plan {
    generators: usize,
    steps: Vec<Step>,
}

/// If `side` contains the only unassigned leaf occurrence of the relation
/// along its chain of left operands, returns that generator together with a
/// term computing it from `other`.
fn solve(
    side: &QuandleTerm,
    other: QuandleTerm,
    assigned: &dyn Fn(&str) -> bool,
) -> Option<(String, QuandleTerm)> {
    match side {
        QuandleTerm::Gen(g) if !assigned(g) => Some((g.clone(), other)),
        QuandleTerm::Gen(_) => None,
        QuandleTerm::Apply { op, left, right } => {
            if right.leaves().iter().any(|l| !assigned(l)) {
                return None;
            }
            solve(left, QuandleTerm::apply(op.inverse(), other, (**right).clone()), assigned)
        }
    }
}

impl Plan {
    pub fn new(p: &QuandlePresentation) -> Plan {
        let gens = p.generators();
        let index: HashMap<&str, usize> = gens.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let mut assigned = vec![false; gens.len()];
        let mut pending: Vec<usize> = (0..p.relations().len()).collect();
        let mut steps = Vec::new();

        loop {
            let is_assigned = |n: &str| assigned[index[n]];
            let unassigned_occurrences = |t: &QuandleTerm| -> usize {
                fn count(t: &QuandleTerm, f: &dyn Fn(&str) -> bool) -> usize {
                    match t {
                        QuandleTerm::Gen(g) => usize::from(!f(g)),
                        QuandleTerm::Apply { left, right, .. } => count(left, f) + count(right, f),
                    }
                }
                count(t, &is_assigned)
            };

            // Relations whose leaves are all assigned become checks.
            let (ready, rest): (Vec<usize>, Vec<usize>) = pending.iter().partition(|&&r| {
                let rel = &p.relations()[r];
                unassigned_occurrences(&rel.lhs) + unassigned_occurrences(&rel.rhs) == 0
            });
            for r in ready {
                let rel = &p.relations()[r];
                steps.push(Step::Check(
                    Code::compile(&rel.lhs, &index),
                    Code::compile(&rel.rhs, &index),
                ));
            }
            pending = rest;

            // A relation with one unassigned occurrence on a left chain forces it.
            let forced = pending.iter().enumerate().find_map(|(pi, &r)| {
                let rel = &p.relations()[r];
                let (ul, ur) = (unassigned_occurrences(&rel.lhs), unassigned_occurrences(&rel.rhs));
                let solved = match (ul, ur) {
                    (1, 0) => solve(&rel.lhs, rel.rhs.clone(), &is_assigned),
                    (0, 1) => solve(&rel.rhs, rel.lhs.clone(), &is_assigned),
                    _ => None,
                };
                solved.map(|s| (pi, s))
            });
            if let Some((pi, (g, term))) = forced {
                pending.remove(pi);
                let gi = index[g.as_str()];
                steps.push(Step::Define(gi, Code::compile(&term, &index)));
                assigned[gi] = true;
                continue;
            }

            match assigned.iter().position(|a| !a) {
                Some(gi) => {
                    steps.push(Step::Branch(gi));
                    assigned[gi] = true;
                }
                None => break,
            }
        }
        Plan {
            generators: gens.len(),
            steps,
        }
    }

    /// Number of generators the search branches on.
    pub fn branching(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Branch(_))).count()
    }

    fn run(
        &self,
        q: &FiniteQuandle,
        at: usize,
        vals: &mut [usize],
        stack: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let Some(step) = self.steps.get(at) else {
            return visit(vals);
        };
        match step {
            Step::Branch(g) => {
                for v in 0..q.size() {
                    vals[*g] = v;
                    if !self.run(q, at + 1, vals, stack, visit) {
                        return false;
                    }
                }
                true
            }
            Step::Define(g, code) => {
                vals[*g] = code.eval(q, vals, stack);
                self.run(q, at + 1, vals, stack, visit)
            }
            Step::Check(l, r) => {
                if l.eval(q, vals, stack) != r.eval(q, vals, stack) {
                    return true;
                }
                self.run(q, at + 1, vals, stack, visit)
            }
        }
    }

    pub fn count(&self, q: &FiniteQuandle) -> u64 {
        let sequential = |first: Option<(usize, usize)>| {
            let mut vals = vec![0; self.generators];
            let mut stack = Vec::new();
            let mut n = 0u64;
            let start = match first {
                Some((g, v)) => {
                    vals[g] = v;
                    1
                }
                None => 0,
            };
            self.run(q, start, &mut vals, &mut stack, &mut |_| {
                n += 1;
                true
            });
            n
        };
        match self.steps.first() {
            Some(Step::Branch(g)) if self.steps.len() > 8 => (0..q.size())
                .into_par_iter()
                .map(|v| sequential(Some((*g, v))))
                .sum(),
            _ => sequential(None),
        }
    }

    pub fn enumerate(&self, q: &FiniteQuandle, limit: Option<usize>) -> Enumeration {
        let mut vals = vec![0; self.generators];
        let mut stack = Vec::new();
        let mut colorings = Vec::new();
        let mut truncated = false;
        self.run(q, 0, &mut vals, &mut stack, &mut |v| {
            if limit.is_some_and(|l| colorings.len() >= l) {
                truncated = true;
                return false;
            }
            colorings.push(Coloring(v.to_vec()));
            true
        });
        Enumeration {
            colorings,
            truncated,
        }
    }
}

/// All colorings, in search order: lexicographic in the branching
/// generators (lowest index first), then by element index. With a limit the
/// list is cut short and flagged.
pub fn enumerate_colorings(p: &QuandlePresentation, q: &FiniteQuandle, limit: Option<usize>) -> Enumeration {
    Plan::new(p).enumerate(q, limit)
}

/// The number of colorings, computed without storing them.
pub fn count_colorings(p: &QuandlePresentation, q: &FiniteQuandle) -> u64 {
    Plan::new(p).count(q)
}

/// The colors of the bottom and top boundary points under a coloring of the
/// morphism's presentation.
pub fn endpoint_colors(
    c: &Coloring,
    m: &BorderedMorphism,
    q: &FiniteQuandle,
) -> Result<(Vec<usize>, Vec<usize>), EvalError> {
    let p = m.presentation();
    let lookup = |n: &str| p.generator_index(n).and_then(|i| c.0.get(i).copied());
    let eval = |ts: &[QuandleTerm]| {
        ts.iter()
            .map(|t| t.eval_with(q, &lookup))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok((eval(m.map_bottom())?, eval(m.map_top())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::dihedral_quandle;

    fn pres(g: &[&str], r: &[&str]) -> QuandlePresentation {
        QuandlePresentation::parse_parts(g, r).unwrap()
    }

    #[test]
    fn free_generators_multiply() {
        let q = dihedral_quandle(4);
        assert_eq!(count_colorings(&pres(&["a"], &[]), &q), 4);
        assert_eq!(count_colorings(&pres(&["a", "b"], &[]), &q), 16);
        assert_eq!(count_colorings(&QuandlePresentation::empty(), &q), 1);
    }

    #[test]
    fn trefoil_has_nine_colorings() {
        let p = pres(&["a", "b", "c"], &["c = a ^ b", "a = b ^ c", "b = c ^ a"]);
        assert_eq!(count_colorings(&p, &dihedral_quandle(3)), 9);
        let e = enumerate_colorings(&p, &dihedral_quandle(3), None);
        assert_eq!(e.colorings.len(), 9);
        assert!(!e.truncated);
        let e = enumerate_colorings(&p, &dihedral_quandle(3), Some(4));
        assert_eq!(e.colorings.len(), 4);
        assert!(e.truncated);
    }

    #[test]
    fn left_chains_are_solved() {
        let p = pres(&["a", "b", "c"], &["(c ^ a) v b = b"]);
        let plan = Plan::new(&p);
        assert_eq!(plan.branching(), 2);
        assert_eq!(count_colorings(&p, &dihedral_quandle(5)), 25);
    }
}
