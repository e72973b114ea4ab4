//! Free-group words over an indexed alphabet.
//!
//! Letters refer to generators by index; names live in [`crate::Alphabet`].
//! Every [`Word`] is freely reduced on construction.

use std::fmt;
use std::ops::Mul;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: u32,
    pub inverted: bool,
}

impl Letter {
    pub const fn pos(generator: u32) -> Self {
        Letter {
            generator,
            inverted: false,
        }
    }

    pub const fn neg(generator: u32) -> Self {
        Letter {
            generator,
            inverted: true,
        }
    }

    /// Builds a letter from a sign in `{+1, -1}`.
    pub fn with_sign(generator: u32, sign: i32) -> Self {
        assert!(
            sign == 1 || sign == -1,
            "letter sign must be +1 or -1, got {sign}"
        );
        Letter {
            generator,
            inverted: sign < 0,
        }
    }

    pub fn sign(self) -> i32 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            inverted: !self.inverted,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverted != other.inverted
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Freely reduces an arbitrary letter sequence.
pub fn free_reduce<I>(raw: I) -> Word
where
    I: IntoIterator<Item = Letter>,
{
    let mut out: Vec<Letter> = Vec::new();
    for x in raw {
        if out.last().is_some_and(|y| y.cancels(x)) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    Word { letters: out }
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Reduces `raw` freely. Alias of [`free_reduce`].
    pub fn new<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        free_reduce(raw)
    }

    /// Wraps letters that are already known to be freely reduced.
    ///
    /// Returns `None` if an adjacent pair cancels.
    pub fn from_reduced(letters: Vec<Letter>) -> Option<Self> {
        if letters.windows(2).any(|w| w[0].cancels(w[1])) {
            None
        } else {
            Some(Word { letters })
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let n = exponent.unsigned_abs() as usize;
        free_reduce(std::iter::repeat_n(base.letters.iter().copied(), n).flatten())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => self.len() == 1 || !a.cancels(b),
            _ => true,
        }
    }

    /// Splits `self` as `conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k].cancels(self.letters[n - 1 - k]) {
            k += 1;
        }
        let core = Word {
            letters: self.letters[k..n - k].to_vec(),
        };
        let conjugator = Word {
            letters: self.letters[..k].to_vec(),
        };
        (core, conjugator)
    }

    /// The rotation starting at `offset`. Only meaningful for cyclically
    /// reduced words, where every rotation is again reduced.
    pub fn rotate(&self, offset: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let i = offset % self.len();
        let mut letters = Vec::with_capacity(self.len());
        letters.extend_from_slice(&self.letters[i..]);
        letters.extend_from_slice(&self.letters[..i]);
        Word { letters }
    }

    /// All `len()` rotations, duplicates retained.
    pub fn cyclic_permutations(&self) -> Vec<Word> {
        debug_assert!(self.is_cyclically_reduced());
        (0..self.len()).map(|i| self.rotate(i)).collect()
    }

    /// Lexicographically least rotation.
    pub fn min_rotation(&self) -> Word {
        (0..self.len().max(1))
            .map(|i| self.rotate(i))
            .min()
            .unwrap_or_default()
    }

    /// `Some((root, k))` with `k >= 2` maximal such that `self == root^k`.
    pub fn proper_power(&self) -> Option<(Word, usize)> {
        let n = self.len();
        let period = smallest_period(&self.letters)?;
        if period < n {
            Some((
                Word {
                    letters: self.letters[..period].to_vec(),
                },
                n / period,
            ))
        } else {
            None
        }
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.letters.starts_with(&prefix.letters)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.letters.ends_with(&suffix.letters)
    }

    /// The subword `[start, end)`; any slice of a reduced word is reduced.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word {
            letters: self.letters[start..end].to_vec(),
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.slice(self.len() - len, self.len())
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.letters
            .iter()
            .zip(&other.letters)
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// Literal concatenation, `None` if the junction cancels.
    pub fn concat_exact(&self, other: &Word) -> Option<Word> {
        match (self.last(), other.first()) {
            (Some(a), Some(b)) if a.cancels(b) => None,
            _ => {
                let mut letters = self.letters.clone();
                letters.extend_from_slice(&other.letters);
                Some(Word { letters })
            }
        }
    }

    /// Displays the word with generator names from `alphabet`.
    pub fn display<'a>(&'a self, alphabet: &'a crate::Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

/// Smallest `d` dividing `n` with `s[i] == s[i + d]` for all valid `i`.
fn smallest_period<T: PartialEq>(s: &[T]) -> Option<usize> {
    let n = s.len();
    if n == 0 {
        return None;
    }
    // Prefix function; the smallest period of a string is n - pi[n-1], and it
    // divides n exactly when the string is a power of that prefix.
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let p = n - pi[n - 1];
    Some(if n.is_multiple_of(p) { p } else { n })
}

impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        free_reduce(self.letters.iter().chain(rhs.letters.iter()).copied())
    }
}

impl Mul<Word> for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        free_reduce(iter)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a crate::Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    /// Runs of the same letter fold into powers: `a a a` prints as `a^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i + 1;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l.inverted { -run } else { run };
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(self.alphabet.name(l.generator))?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}
