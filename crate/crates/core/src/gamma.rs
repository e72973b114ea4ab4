//! The weighted directed graph of corners.
//!
//! Vertices are triples `(r, p, q)` with `r` in `R*`, `p` and `q` pieces and
//! `r = q s p` as a literal concatenation. There is an edge
//! `(r, p, q) -> (r', p', q')` when `p' = q^-1` and `r' != r^-1`, weighted
//! `1 - (|p| + |q|) / |r|` by its source. A closed walk of length `n >= 3`
//! is the link of an interior vertex `v` of a reduced diagram, and its
//! weight is `d(v) - d'_F(v)`.
//!
//! Weights are stored as integers scaled by the lcm of the relator lengths,
//! so every comparison is exact.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;
use num_rational::Rational64;
use rayon::prelude::*;
use thiserror::Error;

use crate::pieces::{PieceSet, Verdict};
use crate::presentation::{Alphabet, StarSet};
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("lcm of relator lengths does not fit in 64 bits")]
    ScaleOverflow,
    #[error("the strict condition fails; no negative curvature bound exists")]
    NotStrict,
}

/// Weight of a closed walk; `Infinite` when no closed walk of length at
/// least 3 exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleWeight {
    Finite(Rational64),
    Infinite,
}

impl CycleWeight {
    pub fn finite(self) -> Option<Rational64> {
        match self {
            CycleWeight::Finite(r) => Some(r),
            CycleWeight::Infinite => None,
        }
    }
}

impl std::fmt::Display for CycleWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CycleWeight::Finite(r) => write!(f, "{r}"),
            CycleWeight::Infinite => f.write_str("infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Serial,
    Parallel,
}

type PieceId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaVertex {
    /// Index of `r` in `R*`.
    pub element: usize,
    pub q: PieceId,
    pub p: PieceId,
    pub q_len: usize,
    pub p_len: usize,
    /// `|r| - |p| - |q|`.
    pub s_len: usize,
}

/// Vertices sharing the same `r` and suffix piece `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Group {
    element: usize,
    vertices: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGraph {
    star: StarSet,
    vertices: Vec<GammaVertex>,
    piece_words: Vec<Word>,
    piece_inverse: Vec<PieceId>,
    groups: Vec<Group>,
    /// Group ids keyed by suffix piece.
    groups_by_suffix: Vec<Vec<u32>>,
    /// Group of each vertex.
    group_of: Vec<u32>,
    scale: u64,
    scaled_weight: Vec<u64>,
}

struct Interner {
    ids: HashMap<Word, PieceId>,
    words: Vec<Word>,
}

impl Interner {
    fn id(&mut self, w: Word) -> PieceId {
        if let Some(&id) = self.ids.get(&w) {
            return id;
        }
        let id = self.words.len() as PieceId;
        self.ids.insert(w.clone(), id);
        self.words.push(w);
        id
    }
}

impl GammaGraph {
    /// Vertices are ordered by `R*` index, then `q`, then `p` (both by length,
    /// which for prefixes of one word is lexicographic order).
    pub fn build(star: &StarSet, pieces: &PieceSet) -> Result<Self, GammaError> {
        let mut interner = Interner {
            ids: HashMap::new(),
            words: Vec::new(),
        };
        let mut vertices = Vec::new();
        let mut scale: u64 = 1;
        for i in 0..star.len() {
            let len = star.get(i).len() as u64;
            scale = (scale / scale.gcd(&len))
                .checked_mul(len)
                .ok_or(GammaError::ScaleOverflow)?;
        }
        for i in 0..star.len() {
            let r = star.get(i);
            let n = r.len();
            let qmax = pieces.max_prefix_len(i);
            let pmax = pieces.max_suffix_len(i);
            for q_len in 1..=qmax {
                let q = interner.id(r.prefix(q_len));
                for p_len in 1..=pmax.min(n - q_len) {
                    let p = interner.id(r.suffix(p_len));
                    vertices.push(GammaVertex {
                        element: i,
                        q,
                        p,
                        q_len,
                        p_len,
                        s_len: n - q_len - p_len,
                    });
                }
            }
        }
        // Every piece has a piece inverse; intern it so the lookup is total.
        let mut k = 0;
        while k < interner.words.len() {
            let inv = interner.words[k].inverse();
            interner.id(inv);
            k += 1;
        }
        let piece_inverse = interner
            .words
            .iter()
            .map(|w| interner.ids[&w.inverse()])
            .collect();

        let mut group_index: HashMap<(usize, PieceId), u32> = HashMap::new();
        let mut group_of = Vec::with_capacity(vertices.len());
        let mut groups: Vec<Group> = Vec::new();
        let mut groups_by_suffix = vec![Vec::new(); interner.words.len()];
        for (vi, v) in vertices.iter().enumerate() {
            let g = *group_index.entry((v.element, v.p)).or_insert_with(|| {
                groups.push(Group {
                    element: v.element,
                    vertices: Vec::new(),
                });
                groups_by_suffix[v.p as usize].push(groups.len() as u32 - 1);
                groups.len() as u32 - 1
            });
            groups[g as usize].vertices.push(vi as u32);
            group_of.push(g);
        }

        let scaled_weight = vertices
            .iter()
            .map(|v| {
                let len = star.get(v.element).len() as u64;
                scale - (v.p_len + v.q_len) as u64 * (scale / len)
            })
            .collect();

        Ok(GammaGraph {
            star: star.clone(),
            vertices,
            piece_words: interner.words,
            piece_inverse,
            groups,
            groups_by_suffix,
            group_of,
            scale,
            scaled_weight,
        })
    }

    pub fn star(&self) -> &StarSet {
        &self.star
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[GammaVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &GammaVertex {
        &self.vertices[v]
    }

    pub fn piece(&self, id: PieceId) -> &Word {
        &self.piece_words[id as usize]
    }

    /// The relator word `r` of vertex `v`.
    pub fn relator(&self, v: usize) -> &Word {
        self.star.get(self.vertices[v].element)
    }

    /// Middle word `s` in `r = q s p`.
    pub fn middle(&self, v: usize) -> Word {
        let x = &self.vertices[v];
        self.relator(v).slice(x.q_len, x.q_len + x.s_len)
    }

    /// Weight of every edge leaving `v`.
    pub fn weight(&self, v: usize) -> Rational64 {
        let x = &self.vertices[v];
        let len = self.relator(v).len() as i64;
        Rational64::from_integer(1) - Rational64::new((x.p_len + x.q_len) as i64, len)
    }

    /// Common denominator of all weights.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    fn target_groups(&self, v: usize) -> impl Iterator<Item = &Group> + '_ {
        let x = &self.vertices[v];
        let forbidden = self.star.inverse_index(x.element);
        self.groups_by_suffix[self.piece_inverse[x.q as usize] as usize]
            .iter()
            .map(move |&g| &self.groups[g as usize])
            .filter(move |g| g.element != forbidden)
    }

    /// Heads of the edges leaving `v`, ascending.
    pub fn successors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .target_groups(v)
            .flat_map(|g| g.vertices.iter().map(|&u| u as usize))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertices.len())
            .map(|v| {
                self.target_groups(v)
                    .map(|g| g.vertices.len())
                    .sum::<usize>()
            })
            .sum()
    }

    /// `(r#k@off+, q, p)`.
    pub fn vertex_label(&self, v: usize, alphabet: &Alphabet) -> String {
        let x = &self.vertices[v];
        format!(
            "({}, {}, {})",
            self.star.label(x.element),
            self.piece(x.q).display(alphabet),
            self.piece(x.p).display(alphabet)
        )
    }

    fn to_weight(&self, scaled: u64) -> Rational64 {
        Rational64::new(scaled as i64, self.scale as i64)
    }

    /// Minimum weight of a closed walk with at least `3` edges.
    pub fn min_cycle_weight(&self, mode: SearchMode) -> (CycleWeight, Option<CycleWitness>) {
        match min_closed_walk(self, &self.scaled_weight, None, mode) {
            None => (CycleWeight::Infinite, None),
            Some((d, walk)) => {
                let w = self.to_weight(d);
                (
                    CycleWeight::Finite(w),
                    Some(CycleWitness {
                        walk,
                        total_weight: w,
                    }),
                )
            }
        }
    }

    /// The minimum-weight closed walk, but only if its weight is at most
    /// `cap`. Cheaper than a full search.
    pub fn min_cycle_weight_at_most(
        &self,
        cap: Rational64,
        mode: SearchMode,
    ) -> Option<CycleWitness> {
        let scaled = cap * Rational64::from_integer(self.scale as i64);
        let bound = scaled.floor().to_integer();
        if bound < 0 {
            return None;
        }
        min_closed_walk(self, &self.scaled_weight, Some(bound as u64), mode).map(|(d, walk)| {
            CycleWitness {
                walk,
                total_weight: self.to_weight(d),
            }
        })
    }

    /// Fewest edges of a closed walk with at least 3 edges.
    pub fn shortest_cycle_length(&self, mode: SearchMode) -> Option<usize> {
        let ones = vec![1u64; self.vertices.len()];
        min_closed_walk(self, &ones, None, mode).map(|(d, _)| d as usize)
    }

    /// A closed walk with between 3 and `max_len` edges, if one exists.
    pub fn short_cycle(&self, max_len: usize, mode: SearchMode) -> Option<Vec<usize>> {
        if max_len < 3 {
            return None;
        }
        let ones = vec![1u64; self.vertices.len()];
        min_closed_walk(self, &ones, Some(max_len as u64), mode).map(|(_, walk)| walk)
    }

    /// Graphviz rendering; edges labeled by their exact weight.
    pub fn export_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph gamma {\n");
        for v in 0..self.vertices.len() {
            let _ = writeln!(
                out,
                "  v{v} [label=\"{}\"];",
                self.vertex_label(v, alphabet)
            );
        }
        for v in 0..self.vertices.len() {
            let w = self.weight(v);
            for u in self.successors(v) {
                let _ = writeln!(out, "  v{v} -> v{u} [label=\"{w}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A closed walk in the graph together with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    /// Vertices in order; the walk closes from the last back to the first.
    /// The first vertex is the least vertex of the walk.
    pub walk: Vec<usize>,
    pub total_weight: Rational64,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }
}

/// One face of the wheel diagram around the witnessed interior vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spoke {
    pub element: usize,
    pub relator: Word,
    /// Edge read towards the centre, `p_i`.
    pub spoke: Word,
    /// Rim word `s_i` with `r_i = p_{i+1}^-1 s_i p_i`.
    pub rim: Word,
    pub identity_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wheel {
    pub spokes: Vec<Spoke>,
    /// Degree of the centre, `d(v)`.
    pub degree: usize,
    /// `d'_F(v)`.
    pub corner_sum: Rational64,
    /// Weight recomputed from the spokes, `d(v) - d'_F(v)`.
    pub weight: Rational64,
}

impl Wheel {
    pub fn consistent(&self) -> bool {
        self.spokes.iter().all(|s| s.identity_holds)
    }

    pub fn describe(&self, graph: &GammaGraph, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "interior vertex: degree {}, corner sum {}, d(v) - d'_F(v) = {}",
            self.degree, self.corner_sum, self.weight
        );
        for (i, s) in self.spokes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  face {i}: r = {} [{}], spoke p = {}, rim s = {}{}",
                s.relator.display(alphabet),
                graph.star().label(s.element),
                s.spoke.display(alphabet),
                s.rim.display(alphabet),
                if s.identity_holds { "" } else { "  (MISMATCH)" }
            );
        }
        out
    }
}

/// Rebuilds the wheel diagram for `witness` and checks it letter by letter.
pub fn wheel_description(graph: &GammaGraph, witness: &CycleWitness) -> Wheel {
    let n = witness.walk.len();
    let mut spokes = Vec::with_capacity(n);
    let mut corner_sum = Rational64::from_integer(0);
    for i in 0..n {
        let v = witness.walk[i];
        let next = witness.walk[(i + 1) % n];
        let x = graph.vertex(v);
        let r = graph.relator(v).clone();
        let p = graph.piece(x.p).clone();
        let q = graph.piece(x.q).clone();
        let p_next = graph.piece(graph.vertex(next).p).clone();
        let rim = graph.middle(v);
        let rebuilt = p_next
            .inverse()
            .concat_exact(&rim)
            .and_then(|w| w.concat_exact(&p));
        let identity_holds = rebuilt.as_ref() == Some(&r) && q == p_next.inverse();
        corner_sum += Rational64::new((p.len() + q.len()) as i64, r.len() as i64);
        spokes.push(Spoke {
            element: x.element,
            relator: r,
            spoke: p,
            rim,
            identity_holds,
        });
    }
    Wheel {
        spokes,
        degree: n,
        corner_sum,
        weight: Rational64::from_integer(n as i64) - corner_sum,
    }
}

/// Per-worker scratch space for the layered search, reset lazily.
struct Scratch {
    dist: Vec<u64>,
    parent: Vec<u32>,
    touched: Vec<u32>,
    heap: BinaryHeap<Reverse<(u64, u32)>>,
}

impl Scratch {
    fn new(nodes: usize) -> Self {
        Scratch {
            dist: vec![u64::MAX; nodes],
            parent: vec![u32::MAX; nodes],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &t in &self.touched {
            self.dist[t as usize] = u64::MAX;
            self.parent[t as usize] = u32::MAX;
        }
        self.touched.clear();
        self.heap.clear();
    }

    /// Records the final distance of a node reached at the current minimum.
    fn settle(&mut self, node: u32, d: u64, from: u32) {
        self.dist[node as usize] = d;
        self.parent[node as usize] = from;
        self.touched.push(node);
    }

    fn relax(&mut self, node: u32, d: u64, from: u32) {
        let slot = &mut self.dist[node as usize];
        if d < *slot {
            if *slot == u64::MAX {
                self.touched.push(node);
            }
            *slot = d;
            self.parent[node as usize] = from;
            self.heap.push(Reverse((d, node)));
        }
    }
}

const LAYERS: u32 = 4;

/// Cheapest possible steps, for pruning.
struct CostFloor {
    /// Cheapest vertex overall.
    step: u64,
    /// Per piece `c`, the cheapest vertex whose prefix piece is `c`.
    by_prefix: Vec<u64>,
}

impl CostFloor {
    fn new(graph: &GammaGraph, costs: &[u64]) -> Self {
        let mut by_prefix = vec![u64::MAX; graph.piece_words.len()];
        for (v, x) in graph.vertices.iter().enumerate() {
            let slot = &mut by_prefix[x.q as usize];
            *slot = (*slot).min(costs[v]);
        }
        CostFloor {
            step: costs.iter().copied().min().unwrap_or(0),
            by_prefix,
        }
    }
}

/// One run of the layered search, rooted at `src`.
struct Search<'a> {
    graph: &'a GammaGraph,
    costs: &'a [u64],
    src: u32,
    src_group: u32,
    /// Lower bound on the rest of a walk that has reached each layer and not
    /// yet closed.
    onward: [u64; LAYERS as usize],
}

impl Search<'_> {
    fn vnode(&self, v: u32, layer: u32) -> u32 {
        v * LAYERS + layer
    }

    fn gnode(&self, g: u32, layer: u32) -> u32 {
        (self.graph.vertices.len() as u32 + g) * LAYERS + layer
    }

    /// Relaxes the edges leaving vertex `v`, settled at `layer` with distance `d`.
    fn expand(&self, scratch: &mut Scratch, v: u32, layer: u32, d: u64, bound: u64) {
        let graph = self.graph;
        let home = &graph.vertices[self.src as usize];
        let x = &graph.vertices[v as usize];
        let next = (layer + 1).min(LAYERS - 1);
        let nd = d.saturating_add(self.costs[v as usize]);
        let forbidden = graph.star.inverse_index(x.element);
        let suffix = graph.piece_inverse[x.q as usize];
        let from = self.vnode(v, layer);
        if nd.saturating_add(self.onward[next as usize]) > bound {
            // Only closing the walk with this step can stay within the bound.
            if next == LAYERS - 1 && nd <= bound && suffix == home.p && home.element != forbidden {
                scratch.relax(self.gnode(self.src_group, next), nd, from);
            }
            return;
        }
        let targets = &graph.groups_by_suffix[suffix as usize];
        let first = targets.partition_point(|&g| graph.groups[g as usize].element < home.element);
        for &g in &targets[first..] {
            if graph.groups[g as usize].element != forbidden {
                scratch.relax(self.gnode(g, next), nd, from);
            }
        }
    }
}

/// Dijkstra on the 4-layer auxiliary graph from `(source, 0)` to
/// `(source, 3)`, restricted to vertices `>= source` so that each closed walk
/// is found from its least vertex. Only group nodes enter the heap; their
/// vertices cost nothing to reach and are expanded when the group settles.
/// Steps whose cheapest completion exceeds `bound` are dropped.
fn search_from(
    graph: &GammaGraph,
    costs: &[u64],
    floor: &CostFloor,
    source: usize,
    bound: &AtomicU64,
    scratch: &mut Scratch,
) -> Option<(u64, Vec<usize>)> {
    let last_step =
        floor.by_prefix[graph.piece_inverse[graph.vertices[source].p as usize] as usize];
    if last_step == u64::MAX {
        return None;
    }
    let mut onward = [0u64; LAYERS as usize];
    for (layer, slot) in onward.iter_mut().enumerate() {
        let steps = (LAYERS as usize - 1 - layer).max(1) as u64;
        *slot = last_step.saturating_add(floor.step.saturating_mul(steps - 1));
    }
    let src = source as u32;
    let search = Search {
        graph,
        costs,
        src,
        src_group: graph.group_of[source],
        onward,
    };
    let nv = graph.vertices.len() as u32;
    let start = search.vnode(src, 0);
    let goal = search.vnode(src, LAYERS - 1);
    scratch.reset();
    scratch.settle(start, 0, u32::MAX);
    search.expand(scratch, src, 0, 0, bound.load(Ordering::Relaxed));

    let mut found = None;
    'search: while let Some(Reverse((d, node))) = scratch.heap.pop() {
        if d > scratch.dist[node as usize] {
            continue;
        }
        let b = bound.load(Ordering::Relaxed);
        if d > b {
            break;
        }
        let rel = node - nv * LAYERS;
        let (g, layer) = (rel / LAYERS, rel % LAYERS);
        let members = &graph.groups[g as usize].vertices;
        let first = members.partition_point(|&u| u < src);
        for &u in &members[first..] {
            let un = search.vnode(u, layer);
            if scratch.dist[un as usize] != u64::MAX {
                continue;
            }
            scratch.settle(un, d, node);
            if un == goal {
                found = Some(d);
                break 'search;
            }
            search.expand(scratch, u, layer, d, b);
        }
    }

    let d = found?;
    bound.fetch_min(d, Ordering::Relaxed);
    let mut walk = Vec::new();
    let mut node = scratch.parent[goal as usize];
    while node != u32::MAX {
        if node < nv * LAYERS {
            walk.push((node / LAYERS) as usize);
        }
        node = scratch.parent[node as usize];
    }
    walk.reverse();
    Some((d, walk))
}

/// Exact minimum of `sum costs[v]` over closed walks with at least 3 edges,
/// restricted to minima `<= cap` when a cap is given. Ties go to the walk
/// whose least vertex is smallest; the result does not depend on `mode`.
fn min_closed_walk(
    graph: &GammaGraph,
    costs: &[u64],
    cap: Option<u64>,
    mode: SearchMode,
) -> Option<(u64, Vec<usize>)> {
    let nv = graph.vertices.len();
    if nv == 0 {
        return None;
    }
    let nodes = (nv + graph.groups.len()) * LAYERS as usize;
    let bound = AtomicU64::new(cap.unwrap_or(u64::MAX - 1));
    let floor = CostFloor::new(graph, costs);
    let results: Vec<Option<(u64, Vec<usize>)>> = match mode {
        SearchMode::Serial => {
            let mut scratch = Scratch::new(nodes);
            (0..nv)
                .map(|s| search_from(graph, costs, &floor, s, &bound, &mut scratch))
                .collect()
        }
        SearchMode::Parallel => (0..nv)
            .into_par_iter()
            .map_init(
                || Scratch::new(nodes),
                |scratch, s| search_from(graph, costs, &floor, s, &bound, scratch),
            )
            .collect(),
    };
    results
        .into_iter()
        .flatten()
        .min_by_key(|(d, walk)| (*d, walk[0]))
}

/// Condition checks built on the graph.
pub fn check_ttmetric(graph: &GammaGraph, mode: SearchMode) -> Verdict<CycleWitness> {
    let two = Rational64::from_integer(2);
    match graph.min_cycle_weight_at_most(two, mode) {
        Some(w) if w.total_weight < two => Verdict::Fails(w),
        _ => Verdict::Holds,
    }
}

pub fn check_ttmetric_strict(graph: &GammaGraph, mode: SearchMode) -> Verdict<CycleWitness> {
    match graph.min_cycle_weight_at_most(Rational64::from_integer(2), mode) {
        Some(w) => Verdict::Fails(w),
        None => Verdict::Holds,
    }
}

/// `T(q)`: no closed walk of length `h` with `3 <= h < q`.
pub fn check_t(graph: &GammaGraph, q: usize, mode: SearchMode) -> Verdict<Vec<usize>> {
    match graph.short_cycle(q.saturating_sub(1), mode) {
        Some(walk) => Verdict::Fails(walk),
        None => Verdict::Holds,
    }
}

/// `min_cycle_weight - 2`, the curvature margin in units of pi.
pub fn negative_curvature_bound(
    graph: &GammaGraph,
    mode: SearchMode,
) -> Result<CycleWeight, GammaError> {
    match graph.min_cycle_weight(mode).0 {
        CycleWeight::Infinite => Ok(CycleWeight::Infinite),
        CycleWeight::Finite(w) if w > Rational64::from_integer(2) => {
            Ok(CycleWeight::Finite(w - Rational64::from_integer(2)))
        }
        CycleWeight::Finite(_) => Err(GammaError::NotStrict),
    }
}
