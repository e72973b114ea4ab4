//! Pieces of a symmetrized relator set and the classical conditions
//! `C'(lambda)` and `C(p)`.

use std::collections::HashSet;

use num_rational::Rational64;

use crate::presentation::StarSet;
use crate::words::{Letter, Word};

/// All pieces: nonempty common prefixes of two distinct elements of `R*`.
#[derive(Clone, Debug)]
pub struct PieceSet {
    pieces: HashSet<Vec<Letter>>,
    /// Per element of `R*`, the length of its longest prefix that is a piece.
    max_prefix: Vec<usize>,
    /// Per element of `R*`, the length of its longest suffix that is a piece.
    max_suffix: Vec<usize>,
}

impl PieceSet {
    /// The longest piece prefix of an element is its longest common prefix
    /// with a neighbour in lexicographic order.
    pub fn enumerate(star: &StarSet) -> Self {
        let n = star.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| star.get(a).cmp(star.get(b)));
        let mut max_prefix = vec![0usize; n];
        for w in order.windows(2) {
            let l = star.get(w[0]).common_prefix_len(star.get(w[1]));
            max_prefix[w[0]] = max_prefix[w[0]].max(l);
            max_prefix[w[1]] = max_prefix[w[1]].max(l);
        }
        let mut pieces = HashSet::new();
        for (i, &m) in max_prefix.iter().enumerate() {
            let letters = star.get(i).letters();
            for k in 1..=m {
                pieces.insert(letters[..k].to_vec());
            }
        }
        let max_suffix = (0..n).map(|i| max_prefix[star.inverse_index(i)]).collect();
        PieceSet {
            pieces,
            max_prefix,
            max_suffix,
        }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.pieces.contains(w.letters())
    }

    pub fn contains_letters(&self, letters: &[Letter]) -> bool {
        self.pieces.contains(letters)
    }

    /// Sorted list of all pieces.
    pub fn to_sorted_vec(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self
            .pieces
            .iter()
            .map(|l| Word::from_reduced(l.clone()).expect("pieces are reduced"))
            .collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    pub fn max_prefix_len(&self, element: usize) -> usize {
        self.max_prefix[element]
    }

    pub fn max_suffix_len(&self, element: usize) -> usize {
        self.max_suffix[element]
    }

    /// Length of the longest piece that is a prefix of `letters`.
    pub fn longest_prefix_piece(&self, letters: &[Letter]) -> usize {
        let mut k = 0;
        while k < letters.len() && self.pieces.contains(&letters[..=k]) {
            k += 1;
        }
        k
    }
}

/// Outcome of a condition check, carrying a counterexample on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A piece that is too long for `C'(lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongPiece {
    pub piece: Word,
    /// Index in `R*` of the element the piece is a prefix of.
    pub element: usize,
    pub relator_len: usize,
}

/// `C'(lambda)`: every piece `s` of a relator `r` has `|s| < lambda |r|`.
pub fn check_cprime(star: &StarSet, pieces: &PieceSet, lambda: Rational64) -> Verdict<LongPiece> {
    assert!(
        lambda > Rational64::from_integer(0),
        "lambda must be positive"
    );
    let mut worst: Option<(Rational64, usize)> = None;
    for i in 0..star.len() {
        let m = pieces.max_prefix_len(i);
        let len = star.get(i).len();
        if m == 0 {
            continue;
        }
        if Rational64::from_integer(m as i64) >= lambda * Rational64::from_integer(len as i64) {
            let frac = Rational64::new(m as i64, len as i64);
            if worst.is_none_or(|(f, _)| frac > f) {
                worst = Some((frac, i));
            }
        }
    }
    match worst {
        None => Verdict::Holds,
        Some((_, i)) => Verdict::Fails(LongPiece {
            piece: star.get(i).prefix(pieces.max_prefix_len(i)),
            element: i,
            relator_len: star.get(i).len(),
        }),
    }
}

/// Largest `|s| / |r|` over pieces `s` of relators `r`, `None` without pieces.
pub fn max_piece_fraction(star: &StarSet, pieces: &PieceSet) -> Option<Rational64> {
    (0..star.len())
        .filter(|&i| pieces.max_prefix_len(i) > 0)
        .map(|i| Rational64::new(pieces.max_prefix_len(i) as i64, star.get(i).len() as i64))
        .max()
}

/// Minimal factorization of `w` into pieces, as piece lengths in order.
///
/// Among minimal factorizations the one taking the longest piece at each
/// step is returned. `None` if `w` is not a product of pieces.
pub fn min_piece_decomposition(w: &Word, pieces: &PieceSet) -> Option<Vec<usize>> {
    let letters = w.letters();
    let n = letters.len();
    if n == 0 {
        return None;
    }
    // best[i]: fewest pieces covering letters[i..].
    let mut best: Vec<Option<usize>> = vec![None; n + 1];
    best[n] = Some(0);
    for i in (0..n).rev() {
        let reach = pieces.longest_prefix_piece(&letters[i..]);
        best[i] = (1..=reach).filter_map(|k| best[i + k].map(|c| c + 1)).min();
    }
    best[0]?;
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let reach = pieces.longest_prefix_piece(&letters[i..]);
        let target = best[i].unwrap() - 1;
        let k = (1..=reach)
            .rev()
            .find(|&k| best[i + k] == Some(target))
            .unwrap();
        out.push(k);
        i += k;
    }
    Some(out)
}

/// An element of `R*` that is a product of too few pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortDecomposition {
    pub element: usize,
    pub pieces: Vec<Word>,
}

/// `C(p)`: no element of `R*` is a product of fewer than `p` pieces.
pub fn check_c(star: &StarSet, pieces: &PieceSet, p: usize) -> Verdict<ShortDecomposition> {
    let mut worst: Option<(usize, usize, Vec<usize>)> = None;
    for i in 0..star.len() {
        if let Some(d) = min_piece_decomposition(star.get(i), pieces) {
            if d.len() < p && worst.as_ref().is_none_or(|(k, _, _)| d.len() < *k) {
                worst = Some((d.len(), i, d));
            }
        }
    }
    match worst {
        None => Verdict::Holds,
        Some((_, i, lens)) => {
            let w = star.get(i);
            let mut at = 0;
            let parts = lens
                .iter()
                .map(|&k| {
                    let s = w.slice(at, at + k);
                    at += k;
                    s
                })
                .collect();
            Verdict::Fails(ShortDecomposition {
                element: i,
                pieces: parts,
            })
        }
    }
}
