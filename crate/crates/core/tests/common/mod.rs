#![allow(dead_code)]

use std::collections::HashSet;

use smallcancel::{
    artin_presentation, baumslag_solitar, cyclic_presentation, parse_presentation,
    surface_presentation, GammaGraph, LabeledGraph, Letter, PieceSet, Presentation, Rational64,
    StarSet, Word,
};

pub const E_GROUP: &str = "< b, s, t | s^-1 b s b^-2, t^-1 b t b^-1 >";
pub const ONE_RELATOR: &str = "< a, b | a^3 b^4 a^3 b^4 (b^4 a^3 b^4 a^3)^-1 >";
pub const FIVE_TEMPLATE: &str = "4:-1,1:-1,0:-1,4:1,1:1,4:1,1:1";
pub const SEVEN_TEMPLATE: &str = "1:1,0:-1,6:1,1:-1,0:1,6:-1,2:-1";
pub const ROOTLESS: &str =
    "< a, b, c, s, t | t a t s^-1 b^-1 s^-1, t b t s^-1 c^-2 s^-1, t c^2 t s^-1 a^-1 s^-1 >";
pub const ROOTED: &str =
    "< a, b, c, s, t | t a^2 t s^-1 b^-2 s^-1, t b^2 t s^-1 c^-2 s^-1, t c^2 t s^-1 a^-2 s^-1 >";
pub const FIG3: &str = "< a, b, c, x, y, z | a b x, c b y, a c^-1 z >";

pub fn cyclic(n: u32, template: &str) -> Presentation {
    cyclic_presentation(n, &smallcancel::parse_cyclic_template(template).unwrap()).unwrap()
}

pub fn artin(spec: &str) -> Presentation {
    artin_presentation(&LabeledGraph::parse(spec).unwrap())
}

/// Every named presentation used by the test suites.
pub fn suite() -> Vec<(String, Presentation)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((
            format!("bs({n},{})", n + 1),
            baumslag_solitar(n, n + 1).unwrap(),
        ));
        out.push((format!("bs({n},{n})"), baumslag_solitar(n, n).unwrap()));
    }
    out.push(("e".into(), parse_presentation(E_GROUP).unwrap()));
    out.push((
        "one_relator".into(),
        parse_presentation(ONE_RELATOR).unwrap(),
    ));
    out.push(("cyclic5".into(), cyclic(5, FIVE_TEMPLATE)));
    out.push(("cyclic7".into(), cyclic(7, SEVEN_TEMPLATE)));
    out.push(("rootless".into(), parse_presentation(ROOTLESS).unwrap()));
    out.push(("rooted".into(), parse_presentation(ROOTED).unwrap()));
    out.push(("fig3".into(), parse_presentation(FIG3).unwrap()));
    out.push(("surface2".into(), surface_presentation(2).unwrap()));
    out.push(("surface3".into(), surface_presentation(3).unwrap()));
    out.push(("artin236".into(), artin("a-b:2,b-c:3,a-c:6")));
    out.push(("artin235".into(), artin("a-b:2,b-c:3,a-c:5")));
    out.push(("artin333".into(), artin("a-b:3,b-c:3,a-c:3")));
    out.push(("artin_path".into(), artin("a-b:3,b-c:4")));
    out.push((
        "free_products".into(),
        parse_presentation("< a, b | a^3, b^3 >").unwrap(),
    ));
    out.push((
        "torus".into(),
        parse_presentation("< a, b | a b a^-1 b^-1 >").unwrap(),
    ));
    out.push((
        "power".into(),
        parse_presentation("< a, b | (a b)^3, a^2 b^-1 >").unwrap(),
    ));
    out
}

pub fn build(p: &Presentation) -> (StarSet, PieceSet, GammaGraph) {
    let star = p.star_set();
    let pieces = PieceSet::enumerate(&star);
    let g = GammaGraph::build(&star, &pieces).unwrap();
    (star, pieces, g)
}

/// Pieces straight from the definition: every nonempty common prefix of
/// every pair of distinct elements.
pub fn naive_pieces(star: &StarSet) -> HashSet<Vec<Letter>> {
    let mut out = HashSet::new();
    let els = star.elements();
    for i in 0..els.len() {
        for j in 0..els.len() {
            if i == j {
                continue;
            }
            let (a, b) = (els[i].letters(), els[j].letters());
            let mut k = 0;
            while k < a.len() && k < b.len() && a[k] == b[k] {
                k += 1;
                out.insert(a[..k].to_vec());
            }
        }
    }
    out
}

fn word(letters: &[Letter]) -> Word {
    Word::from_reduced(letters.to_vec()).unwrap()
}

/// Vertices `(element, q_len, p_len)` and edge lists rebuilt from the
/// definitions, using the naive piece set.
pub struct NaiveGraph {
    pub vertices: Vec<(usize, usize, usize)>,
    pub succ: Vec<Vec<usize>>,
    pub weight: Vec<Rational64>,
}

pub fn naive_graph(star: &StarSet) -> NaiveGraph {
    let pieces = naive_pieces(star);
    let els = star.elements();
    let mut vertices = Vec::new();
    for (i, r) in els.iter().enumerate() {
        let n = r.len();
        let l = r.letters();
        for q in 1..=n {
            if !pieces.contains(&l[..q]) {
                continue;
            }
            for p in 1..=n - q {
                if pieces.contains(&l[n - p..]) {
                    vertices.push((i, q, p));
                }
            }
        }
    }
    let weight = vertices
        .iter()
        .map(|&(i, q, p)| {
            Rational64::from_integer(1) - Rational64::new((p + q) as i64, els[i].len() as i64)
        })
        .collect();
    let mut succ = vec![Vec::new(); vertices.len()];
    for (a, &(i, q, _)) in vertices.iter().enumerate() {
        let r = &els[i];
        let q_inv = word(&r.letters()[..q]).inverse();
        let r_inv = r.inverse();
        for (b, &(j, _, p2)) in vertices.iter().enumerate() {
            let r2 = &els[j];
            let p_word = word(&r2.letters()[r2.len() - p2..]);
            if p_word == q_inv && *r2 != r_inv {
                succ[a].push(b);
            }
        }
    }
    NaiveGraph {
        vertices,
        succ,
        weight,
    }
}

/// Exhaustive minimum over closed walks with between 3 and `max_len` edges,
/// in exact rationals: a min-plus product over every walk of each exact
/// length, so no walk is skipped.
pub fn brute_min_closed_walk(g: &NaiveGraph, max_len: usize) -> Option<Rational64> {
    let n = g.vertices.len();
    let mut best: Option<Rational64> = None;
    for s in 0..n {
        // reach[v]: lightest walk of the current length from s to v.
        let mut reach: Vec<Option<Rational64>> = vec![None; n];
        reach[s] = Some(Rational64::from_integer(0));
        for k in 1..=max_len {
            let mut next: Vec<Option<Rational64>> = vec![None; n];
            for v in 0..n {
                let Some(d) = reach[v] else { continue };
                let nd = d + g.weight[v];
                for &u in &g.succ[v] {
                    if next[u].is_none_or(|x| nd < x) {
                        next[u] = Some(nd);
                    }
                }
            }
            reach = next;
            if k >= 3 {
                if let Some(d) = reach[s] {
                    if best.is_none_or(|b| d < b) {
                        best = Some(d);
                    }
                }
            }
        }
    }
    best
}

/// Simple labeled graphs on `n` vertices with labels in `2..=max_label`,
/// one per isomorphism class. `None` in the label list means no edge.
pub fn labeled_graphs_up_to_iso(n: usize, max_label: u32) -> Vec<LabeledGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let perms = permutations(n);
    let choices = max_label as usize; // 0 = no edge, 1.. = label + 1
    let total = choices.pow(pairs.len() as u32);
    let mut out = Vec::new();
    let mut code = vec![0usize; pairs.len()];
    for mut x in 0..total {
        for c in code.iter_mut() {
            *c = x % choices;
            x /= choices;
        }
        let canonical = perms.iter().all(|perm| {
            let mut image = vec![0usize; pairs.len()];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                let (pa, pb) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
                let idx = pairs.iter().position(|&e| e == (pa, pb)).unwrap();
                image[idx] = code[k];
            }
            code <= image
        });
        if !canonical {
            continue;
        }
        let names: Vec<String> = (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        let edges = pairs
            .iter()
            .zip(&code)
            .filter(|(_, &c)| c > 0)
            .map(|(&(a, b), &c)| (a, b, c as u32 + 1))
            .collect();
        out.push(LabeledGraph::new(names, edges).unwrap());
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
