//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use fquandle::{BorderedMorphism, FiniteQuandle, Op, QuandlePresentation, QuandleTerm, Relation};

pub fn pres(text: &str) -> QuandlePresentation {
    QuandlePresentation::from_text(text).unwrap_or_else(|e| panic!("fixture: {e}\n{text}"))
}

pub fn morphism(text: &str) -> BorderedMorphism {
    BorderedMorphism::from_text(text).unwrap_or_else(|e| panic!("fixture: {e}\n{text}"))
}

pub const PRETZEL_TANGLE: &str = "\
gens: y1 y2 y3 y4 y5
y3 ^ y4 = y1
y4 ^ y3 = y2
y5 ^ y2 = y3
bottom: + +
top: + +
i-: y1 ; y2
i+: y4 ; y5
";

/// The three-period presentation, `z+1` taken mod 3.
pub fn pretzel_reduced() -> QuandlePresentation {
    let mut text = String::from("gens: y1_1 y1_2 y1_3 y2_1 y2_2 y2_3\n");
    for z in 1..=3 {
        let n = z % 3 + 1;
        text.push_str(&format!("(y2_{n} ^ y2_{z}) ^ y1_{n} = y1_{z}\n"));
        text.push_str(&format!("y1_{n} ^ (y2_{n} ^ y2_{z}) = y2_{z}\n"));
    }
    pres(&text)
}

pub const GRANNY_FULL: &str = "\
gens: x1 x2 x3 X y1 y2 y3 Y
x3 ^ x1 = x2
x2 ^ x3 = x1
X ^ x2 = x3
y3 ^ y1 = y2
Y ^ y2 = y3
y2 ^ y3 = y1
y1 = x1
X = Y
";

pub const GRANNY_REDUCED: &str = "\
gens: x2 x3 y2 y3
x3 ^ (x2 ^ x3) = x2
(y3 v y2) ^ x2 = x3
y3 ^ (x2 ^ x3) = y2
x2 ^ x3 = y2 ^ y3
";

/// The long trefoil `3_1` of the granny knot, with `X` the upper end.
pub const TREFOIL_31_TANGLE: &str = "\
gens: x1 x2 x3 X
x3 ^ x1 = x2
x2 ^ x3 = x1
X ^ x2 = x3
bottom: -
top: -
i-: x1
i+: X
";

/// Its mirror image `3_1*`.
pub const TREFOIL_31_MIRROR_TANGLE: &str = "\
gens: y1 y2 y3 Y
y3 ^ y1 = y2
Y ^ y2 = y3
y2 ^ y3 = y1
bottom: +
top: +
i-: y1
i+: Y
";

pub const CABLE_PATTERN: &str = "\
gens: y1 y2 y3 y4 y5
y3 ^ y1 = y2
y5 ^ y3 = y1
y4 ^ y5 = y3
bottom: - -
top: - -
i-: y1 ; y2
i+: y4 ; y5
";

/// The figure-eight long knot before cabling.
pub const FIGURE_EIGHT_TANGLE: &str = "\
gens: x1 x2 x3 x4 x5
x4 ^ x1 = x3
x2 ^ x3 = x1
x4 ^ x2 = x5
x2 ^ x4 = x3
bottom: +
top: +
i-: x1
i+: x5
";

fn cable_gens(arcs: usize) -> String {
    (1..=arcs)
        .flat_map(|i| (1..=2).map(move |j| format!("x{i}{j}")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// The two-copy cable of the figure-eight long knot with both copies
/// oriented alike.
pub fn figure_eight_cable() -> BorderedMorphism {
    let mut text = format!("gens: {}\n", cable_gens(5));
    for j in 1..=2 {
        text.push_str(&format!("(x4{j} ^ x11) ^ x12 = x3{j}\n"));
        text.push_str(&format!("(x2{j} ^ x31) ^ x32 = x1{j}\n"));
        text.push_str(&format!("(x4{j} ^ x21) ^ x22 = x5{j}\n"));
        text.push_str(&format!("(x2{j} ^ x41) ^ x42 = x3{j}\n"));
    }
    text.push_str("bottom: + +\ntop: + +\ni-: x12 ; x11\ni+: x52 ; x51\n");
    morphism(&text)
}

pub fn cable_satellite_full() -> QuandlePresentation {
    let mut text = format!("gens: y1 y2 y3 y4 y5 {}\n", cable_gens(5));
    text.push_str("y1 = x11\ny2 = x12\ny4 = x51\ny5 = x52\n");
    text.push_str("y3 ^ y1 = y2\ny5 ^ y3 = y1\ny4 ^ y5 = y3\n");
    for j in 1..=2 {
        text.push_str(&format!("(x4{j} ^ x11) ^ x12 = x3{j}\n"));
        text.push_str(&format!("(x2{j} ^ x31) ^ x32 = x1{j}\n"));
        text.push_str(&format!("(x4{j} ^ x21) ^ x22 = x5{j}\n"));
        text.push_str(&format!("(x2{j} ^ x41) ^ x42 = x3{j}\n"));
    }
    pres(&text)
}

pub const CABLE_SATELLITE_REDUCED: &str = "\
gens: y1 y2 x21 x22 x41 x42
(x21 ^ ((x41 ^ y1) ^ y2)) ^ ((x42 ^ y1) ^ y2) = y1
(x22 ^ ((x41 ^ y1) ^ y2)) ^ ((x42 ^ y1) ^ y2) = y2
(x41 ^ x21) ^ x22 = (y2 v y1) v (y1 v (y2 v y1))
(x42 ^ x21) ^ x22 = y1 v (y2 v y1)
(x41 ^ y1) ^ y2 = (x21 ^ x41) ^ x42
(x42 ^ y1) ^ y2 = (x22 ^ x41) ^ x42
";

pub const DOUBLE_PATTERN: &str = "\
gens: y1 y2 y3 y4
y2 ^ y3 = y1
y3 ^ y2 = y4
bottom: + -
top: + -
i-: y1 ; y2
i+: y3 ; y4
";

/// The trefoil long knot, arcs labelled as in its double.
pub const TREFOIL_DOUBLE_TANGLE: &str = "\
gens: x1 x2 x3 x4
x1 ^ x3 = x2
x3 ^ x2 = x4
x2 ^ x4 = x3
bottom: +
top: +
i-: x1
i+: x4
";

/// The two-copy cable of the trefoil with the copies oppositely oriented.
pub fn trefoil_double_cable() -> BorderedMorphism {
    let mut text = format!("gens: {}\n", cable_gens(4));
    for j in 1..=2 {
        text.push_str(&format!("(x1{j} v x31) ^ x32 = x2{j}\n"));
        text.push_str(&format!("(x3{j} v x21) ^ x22 = x4{j}\n"));
        text.push_str(&format!("(x2{j} v x41) ^ x42 = x3{j}\n"));
    }
    text.push_str("bottom: + -\ntop: + -\ni-: x12 ; x11\ni+: x42 ; x41\n");
    morphism(&text)
}

pub fn double_satellite_full() -> QuandlePresentation {
    let mut text = format!("gens: y1 y2 y3 y4 {}\n", cable_gens(4));
    text.push_str("y1 = x11\ny2 = x12\ny3 = x41\ny4 = x42\n");
    text.push_str("y2 ^ y3 = y1\ny3 ^ y2 = y4\n");
    for j in 1..=2 {
        text.push_str(&format!("(x1{j} v x31) ^ x32 = x2{j}\n"));
        text.push_str(&format!("(x3{j} v x21) ^ x22 = x4{j}\n"));
        text.push_str(&format!("(x2{j} v x41) ^ x42 = x3{j}\n"));
    }
    pres(&text)
}

pub const DOUBLE_SATELLITE_REDUCED: &str = "\
gens: y2 y3 x31 x32
(x31 v (((y2 ^ y3) v x31) ^ x32)) ^ ((y2 v x31) ^ x32) = y3
((((y2 ^ y3) v x31) ^ x32) v y3) ^ (y3 ^ y2) = x31
(x32 v (((y2 ^ y3) v x31) ^ x32)) ^ ((y2 v x31) ^ x32) = y3 ^ y2
(((y2 v x31) ^ x32) v y3) ^ (y3 ^ y2) = x32
";

pub fn relation_set(p: &QuandlePresentation) -> BTreeSet<String> {
    p.relations().iter().map(|r| r.to_string()).collect()
}

/// Counts colorings by trying all `|T|^|X|` assignments.
pub fn naive_count(p: &QuandlePresentation, q: &FiniteQuandle) -> u64 {
    let n = p.generators().len();
    let size = q.size();
    assert!((size as f64).powi(n as i32) <= 5e6, "naive oracle too large");
    let mut vals = vec![0usize; n];
    let mut count = 0;
    loop {
        let lookup = |g: &str| p.generator_index(g).map(|i| vals[i]);
        let ok = p
            .relations()
            .iter()
            .all(|r| r.lhs.eval_with(q, &lookup).unwrap() == r.rhs.eval_with(q, &lookup).unwrap());
        count += u64::from(ok);
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            vals[i] += 1;
            if vals[i] < size {
                break;
            }
            vals[i] = 0;
            i += 1;
        }
    }
}

/// `(a, b, o)` with `a = b ▷ o`, for relations of crossing shape.
type Triple = (String, String, String);

fn crossing_triple(r: &Relation) -> Option<Triple> {
    let (single, app) = match (r.lhs.as_gen(), r.rhs.as_gen()) {
        (Some(g), _) if !r.rhs.is_gen() => (g, &r.rhs),
        (_, Some(g)) if !r.lhs.is_gen() => (g, &r.lhs),
        _ => return None,
    };
    let QuandleTerm::Apply { op, left, right } = app else { return None };
    let (x, o) = (left.as_gen()?.to_string(), right.as_gen()?.to_string());
    Some(match op {
        Op::Tr => (single.to_string(), x, o),
        Op::Tl => (x, single.to_string(), o),
    })
}

/// Identifies generators joined by `a = b` relations, preferring names that
/// appear in the boundary maps.
pub fn merge_joins(m: &BorderedMorphism) -> BorderedMorphism {
    let p = m.presentation();
    let mut rep: HashMap<String, String> = p.generators().iter().map(|g| (g.clone(), g.clone())).collect();
    fn find(rep: &HashMap<String, String>, g: &str) -> String {
        let mut g = g.to_string();
        while rep[&g] != g {
            g = rep[&g].clone();
        }
        g
    }
    let boundary = m.boundary_generators();
    let mut rels = Vec::new();
    for r in p.relations() {
        if let (Some(a), Some(b)) = (r.lhs.as_gen(), r.rhs.as_gen()) {
            let (a, b) = (find(&rep, a), find(&rep, b));
            if a != b {
                if boundary.contains(&b) && !boundary.contains(&a) {
                    rep.insert(a, b);
                } else {
                    rep.insert(b, a);
                }
            }
        } else {
            rels.push(r.clone());
        }
    }
    let f = |g: &str| find(&rep, g);
    let gens: Vec<String> = p.generators().iter().filter(|g| f(g) == **g).cloned().collect();
    let rels = rels.iter().map(|r| r.rename(&f)).collect();
    let rename = |ts: &[QuandleTerm]| ts.iter().map(|t| t.rename(&f)).collect();
    BorderedMorphism::new(
        m.bottom().clone(),
        m.top().clone(),
        QuandlePresentation::new(gens, rels).unwrap(),
        rename(m.map_bottom()),
        rename(m.map_top()),
    )
    .unwrap()
}

fn permutations(v: &[String]) -> Vec<Vec<String>> {
    if v.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// Whether two morphisms whose relations all have crossing shape (after
/// merging arc identifications) agree up to a renaming of generators that
/// respects the boundary maps.
pub fn same_up_to_renaming(a: &BorderedMorphism, b: &BorderedMorphism) -> bool {
    let (a, b) = (merge_joins(a), merge_joins(b));
    let (pa, pb) = (a.presentation(), b.presentation());
    if a.bottom() != b.bottom() || a.top() != b.top() || pa.generators().len() != pb.generators().len() {
        return false;
    }
    let triples = |p: &QuandlePresentation| -> Option<BTreeSet<Triple>> {
        p.relations().iter().map(crossing_triple).collect()
    };
    let (Some(ta), Some(tb)) = (triples(pa), triples(pb)) else { return false };
    if ta.len() != pa.relations().len() || tb.len() != pb.relations().len() {
        return false;
    }
    let mut fixed: HashMap<String, String> = HashMap::new();
    let ends = a.map_bottom().iter().zip(b.map_bottom()).chain(a.map_top().iter().zip(b.map_top()));
    for (x, y) in ends {
        let (Some(x), Some(y)) = (x.as_gen(), y.as_gen()) else { return false };
        if fixed.insert(x.to_string(), y.to_string()).is_some_and(|prev| prev != y) {
            return false;
        }
    }
    let used: BTreeSet<&String> = fixed.values().collect();
    let free_a: Vec<String> = pa.generators().iter().filter(|g| !fixed.contains_key(*g)).cloned().collect();
    let free_b: Vec<String> = pb.generators().iter().filter(|g| !used.contains(g)).cloned().collect();
    if free_a.len() != free_b.len() || free_a.len() > 8 {
        return false;
    }
    permutations(&free_b).into_iter().any(|perm| {
        let mut map = fixed.clone();
        map.extend(free_a.iter().cloned().zip(perm));
        let mapped: BTreeSet<Triple> =
            ta.iter().map(|(x, y, z)| (map[x].clone(), map[y].clone(), map[z].clone())).collect();
        mapped == tb
    })
}
