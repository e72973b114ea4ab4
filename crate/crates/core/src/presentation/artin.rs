use std::collections::HashMap;

use num_rational::Rational64;
use thiserror::Error;

use super::{Alphabet, Presentation};
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ArtinGraphError {
    #[error("invalid vertex name `{0}`")]
    BadVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge {0}-{1} is a loop")]
    Loop(String, String),
    #[error("edge {0}-{1} appears twice")]
    MultiEdge(String, String),
    #[error("edge {0}-{1} has label {2}; labels must be at least 2")]
    LabelTooSmall(String, String, u32),
    #[error("edge references unknown vertex index {0}")]
    UnknownVertex(usize),
}

/// A finite simple graph whose edges carry integer labels `m >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize, u32)>,
}

impl LabeledGraph {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(usize, usize, u32)>,
    ) -> Result<Self, ArtinGraphError> {
        let mut names = HashMap::new();
        for v in &vertices {
            if !super::is_valid_generator_name(v) {
                return Err(ArtinGraphError::BadVertex(v.clone()));
            }
            if names.insert(v.as_str(), ()).is_some() {
                return Err(ArtinGraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = HashMap::new();
        for &(a, b, m) in &edges {
            for x in [a, b] {
                if x >= vertices.len() {
                    return Err(ArtinGraphError::UnknownVertex(x));
                }
            }
            let (na, nb) = (vertices[a].clone(), vertices[b].clone());
            if a == b {
                return Err(ArtinGraphError::Loop(na, nb));
            }
            if m < 2 {
                return Err(ArtinGraphError::LabelTooSmall(na, nb, m));
            }
            if seen.insert((a.min(b), a.max(b)), ()).is_some() {
                return Err(ArtinGraphError::MultiEdge(na, nb));
            }
        }
        Ok(LabeledGraph { vertices, edges })
    }

    /// Parses `a-b:3,b-c:2,d`: labeled edges and optional bare vertices.
    /// Vertices are ordered by first appearance.
    pub fn parse(spec: &str) -> Result<Self, ArtinGraphError> {
        let mut vertices: Vec<String> = Vec::new();
        let mut edges = Vec::new();
        let id = |name: &str, vertices: &mut Vec<String>| -> usize {
            match vertices.iter().position(|v| v == name) {
                Some(i) => i,
                None => {
                    vertices.push(name.to_string());
                    vertices.len() - 1
                }
            }
        };
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.split_once(':') {
                Some((pair, label)) => {
                    let (a, b) = pair
                        .split_once('-')
                        .ok_or_else(|| ArtinGraphError::BadVertex(pair.to_string()))?;
                    let m: u32 = label
                        .trim()
                        .parse()
                        .map_err(|_| ArtinGraphError::BadVertex(item.to_string()))?;
                    let (a, b) = (a.trim(), b.trim());
                    for name in [a, b] {
                        if !super::is_valid_generator_name(name) {
                            return Err(ArtinGraphError::BadVertex(name.to_string()));
                        }
                    }
                    let ia = id(a, &mut vertices);
                    let ib = id(b, &mut vertices);
                    edges.push((ia, ib, m));
                }
                None => {
                    if !super::is_valid_generator_name(item) {
                        return Err(ArtinGraphError::BadVertex(item.to_string()));
                    }
                    id(item, &mut vertices);
                }
            }
        }
        LabeledGraph::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    fn label(&self, a: usize, b: usize) -> Option<u32> {
        self.edges
            .iter()
            .find(|&&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a))
            .map(|&(_, _, m)| m)
    }

    /// Label triples of all triangles.
    pub fn triangles(&self) -> Vec<(u32, u32, u32)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let Some(p) = self.label(i, j) else { continue };
                for k in j + 1..n {
                    if let (Some(q), Some(r)) = (self.label(j, k), self.label(i, k)) {
                        out.push((p, q, r));
                    }
                }
            }
        }
        out
    }
}

/// `a b a b ...` with `m` letters.
fn alternating(a: u32, b: u32, m: u32) -> Vec<Letter> {
    (0..m)
        .map(|i| Letter::pos(if i % 2 == 0 { a } else { b }))
        .collect()
}

/// The standard presentation: one generator per vertex and, for each edge
/// `{a, b}` labeled `m`, the relator `prod(a,b,m) prod(b,a,m)^-1`.
pub fn artin_presentation(graph: &LabeledGraph) -> Presentation {
    let alphabet =
        Alphabet::new(graph.vertices.iter().cloned()).expect("graph vertices are valid names");
    let relators = graph
        .edges
        .iter()
        .map(|&(a, b, m)| {
            let lhs = Word::new(alternating(a as u32, b as u32, m));
            let rhs = Word::new(alternating(b as u32, a as u32, m));
            &lhs * &rhs.inverse()
        })
        .collect();
    Presentation::new(alphabet, relators)
        .expect("Artin relators are cyclically reduced and pairwise distinct")
}

/// Every triangle with labels `p, q, r` has `1/p + 1/q + 1/r <= 1`.
pub fn artin_is_two_dimensional(graph: &LabeledGraph) -> bool {
    graph.triangles().into_iter().all(|(p, q, r)| {
        let sum = Rational64::new(1, p as i64)
            + Rational64::new(1, q as i64)
            + Rational64::new(1, r as i64);
        sum <= Rational64::from_integer(1)
    })
}
