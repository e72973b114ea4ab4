//! Finite presentations `<X | R>` and the symmetrized relator set `R*`.

mod artin;
mod families;

pub use artin::{artin_is_two_dimensional, artin_presentation, ArtinGraphError, LabeledGraph};
pub use families::{
    baumslag_solitar, cyclic_presentation, parse_cyclic_template, surface_presentation, FamilyError,
};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::words::Word;

/// Ordered, duplicate-free list of generator names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

pub fn is_valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, Violation>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.push(name.into())?;
        }
        Ok(alphabet)
    }

    pub fn push(&mut self, name: String) -> Result<u32, Violation> {
        if !is_valid_generator_name(&name) {
            return Err(Violation::InvalidGeneratorName(name));
        }
        if self.index.contains_key(&name) {
            return Err(Violation::DuplicateGenerator(name));
        }
        let id = self.names.len() as u32;
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, generator: u32) -> &str {
        &self.names[generator as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Whether [`Presentation::validate`] may repair relators that are not
/// cyclically reduced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReductionMode {
    /// Replace each relator by its cyclically reduced core and record a warning.
    #[default]
    Auto,
    /// Reject relators that are not cyclically reduced.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("relator {0} uses a generator outside the alphabet")]
    ForeignGenerator(usize),
    #[error("relator {0} is not cyclically reduced")]
    NotCyclicallyReduced(usize),
    #[error("relator {0} is trivial after reduction")]
    EmptyRelator(usize),
    #[error("relator {1} is a cyclic permutation of relator {0} or of its inverse")]
    CyclicDuplicate(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "invalid presentation: {}", msgs.join("; "))
    }
}

/// Non-fatal notes produced while validating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// Relator `index` was replaced by its cyclically reduced core; the
    /// removed conjugator had `conjugator_len` letters.
    CyclicallyReduced { index: usize, conjugator_len: usize },
    /// Relator `index` is `root^exponent`.
    ProperPower { index: usize, exponent: usize },
}

impl Warning {
    pub fn describe(&self) -> String {
        match self {
            Warning::CyclicallyReduced { index, conjugator_len } => format!(
                "relator {index} was not cyclically reduced; removed a conjugator of length {conjugator_len}"
            ),
            Warning::ProperPower { index, exponent } => {
                format!("relator {index} is a proper power (exponent {exponent})")
            }
        }
    }
}

/// A validated presentation: nonempty, cyclically reduced relators, no two
/// of which are equal up to rotation and inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

#[derive(Clone, Debug)]
pub struct Validated {
    pub presentation: Presentation,
    pub warnings: Vec<Warning>,
}

/// Canonical representative of the cyclic word class of `w` and `w^-1`.
fn cyclic_class(w: &Word) -> Word {
    w.min_rotation().min(w.inverse().min_rotation())
}

impl Presentation {
    pub fn validate(
        alphabet: Alphabet,
        relators: Vec<Word>,
        mode: ReductionMode,
    ) -> Result<Validated, ValidationError> {
        let mut violations = Vec::new();
        let mut warnings = Vec::new();
        let mut reduced = Vec::with_capacity(relators.len());

        for (i, r) in relators.into_iter().enumerate() {
            if r.letters()
                .iter()
                .any(|l| l.generator as usize >= alphabet.len())
            {
                violations.push(Violation::ForeignGenerator(i));
                continue;
            }
            let (core, conjugator) = r.cyclic_reduce();
            if core.is_empty() {
                violations.push(Violation::EmptyRelator(i));
                continue;
            }
            if !conjugator.is_empty() {
                match mode {
                    ReductionMode::Strict => {
                        violations.push(Violation::NotCyclicallyReduced(i));
                        continue;
                    }
                    ReductionMode::Auto => warnings.push(Warning::CyclicallyReduced {
                        index: i,
                        conjugator_len: conjugator.len(),
                    }),
                }
            }
            if let Some((_, exponent)) = core.proper_power() {
                warnings.push(Warning::ProperPower { index: i, exponent });
            }
            reduced.push((i, core));
        }

        let mut seen: HashMap<Word, usize> = HashMap::new();
        for (i, core) in &reduced {
            match seen.get(&cyclic_class(core)) {
                Some(&j) => violations.push(Violation::CyclicDuplicate(j, *i)),
                None => {
                    seen.insert(cyclic_class(core), *i);
                }
            }
        }

        if violations.is_empty() {
            Ok(Validated {
                presentation: Presentation {
                    alphabet,
                    relators: reduced.into_iter().map(|(_, r)| r).collect(),
                },
                warnings,
            })
        } else {
            Err(ValidationError { violations })
        }
    }

    /// Validates in [`ReductionMode::Auto`] and drops the warnings.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, ValidationError> {
        Self::validate(alphabet, relators, ReductionMode::Auto).map(|v| v.presentation)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The common relator length, if all relators have the same length.
    pub fn equal_relator_lengths(&self) -> Option<usize> {
        let first = self.relators.first()?.len();
        self.relators
            .iter()
            .all(|r| r.len() == first)
            .then_some(first)
    }

    pub fn shortest_relator_len(&self) -> Option<usize> {
        self.relators.iter().map(Word::len).min()
    }

    /// Indices of relators that are proper powers.
    pub fn proper_power_relators(&self) -> Vec<usize> {
        self.relators
            .iter()
            .enumerate()
            .filter(|(_, r)| r.proper_power().is_some())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn star_set(&self) -> StarSet {
        StarSet::new(self)
    }
}

/// Where an element of `R*` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Origin {
    pub relator: usize,
    pub offset: usize,
    /// `false` for rotations of the relator, `true` for rotations of its inverse.
    pub inverted: bool,
}

/// All cyclic permutations of the relators and their inverses, deduplicated
/// as based words. Order is deterministic: relator by relator, the relator's
/// own rotations before those of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSet {
    elements: Vec<Word>,
    origins: Vec<Origin>,
    inverse_of: Vec<usize>,
    index: HashMap<Word, usize>,
}

impl StarSet {
    fn new(presentation: &Presentation) -> Self {
        let mut elements = Vec::new();
        let mut origins = Vec::new();
        let mut index = HashMap::new();
        for (ri, r) in presentation.relators().iter().enumerate() {
            for (inverted, base) in [(false, r.clone()), (true, r.inverse())] {
                for offset in 0..base.len() {
                    let w = base.rotate(offset);
                    if !index.contains_key(&w) {
                        index.insert(w.clone(), elements.len());
                        elements.push(w);
                        origins.push(Origin {
                            relator: ri,
                            offset,
                            inverted,
                        });
                    }
                }
            }
        }
        let inverse_of = elements.iter().map(|w| index[&w.inverse()]).collect();
        StarSet {
            elements,
            origins,
            inverse_of,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Word {
        &self.elements[i]
    }

    pub fn origin(&self, i: usize) -> Origin {
        self.origins[i]
    }

    /// Index of the inverse of element `i`.
    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse_of[i]
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Short label `r#k@off+` / `r#k@off-` naming an element by its origin.
    pub fn label(&self, i: usize) -> String {
        let o = self.origins[i];
        format!(
            "r#{}@{}{}",
            o.relator,
            o.offset,
            if o.inverted { '-' } else { '+' }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_presentation;
    use crate::words::Letter;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn auto_mode_reduces_and_warns() {
        let alphabet = Alphabet::new(["a", "b"]).unwrap();
        let r = Word::new([Letter::pos(0), Letter::pos(1), Letter::neg(0)]);
        let v = Presentation::validate(alphabet, vec![r], ReductionMode::Auto).unwrap();
        assert_eq!(v.presentation.relators(), &[Word::new([Letter::pos(1)])]);
        assert_eq!(
            v.warnings,
            vec![Warning::CyclicallyReduced {
                index: 0,
                conjugator_len: 1
            }]
        );
    }

    #[test]
    fn strict_mode_rejects() {
        let r = Word::new([Letter::pos(0), Letter::pos(1), Letter::neg(0)]);
        let err = Presentation::validate(ab(), vec![r], ReductionMode::Strict).unwrap_err();
        assert_eq!(err.violations, vec![Violation::NotCyclicallyReduced(0)]);
    }

    #[test]
    fn rotation_duplicate() {
        let r1 = Word::new([Letter::pos(0), Letter::pos(1)]);
        let r2 = Word::new([Letter::pos(1), Letter::pos(0)]);
        let err = Presentation::new(ab(), vec![r1, r2]).unwrap_err();
        assert_eq!(err.violations, vec![Violation::CyclicDuplicate(0, 1)]);
    }

    #[test]
    fn inverse_duplicate() {
        let r1 = Word::new([Letter::pos(0), Letter::pos(1)]);
        let r2 = r1.inverse();
        let err = Presentation::new(ab(), vec![r1, r2]).unwrap_err();
        assert_eq!(err.violations, vec![Violation::CyclicDuplicate(0, 1)]);
    }

    #[test]
    fn all_violations_reported() {
        let a = Word::new([Letter::pos(0)]);
        let err = Presentation::new(ab(), vec![a.clone(), Word::empty(), a.inverse()]).unwrap_err();
        assert_eq!(
            err.violations,
            vec![Violation::EmptyRelator(1), Violation::CyclicDuplicate(0, 2)]
        );
    }

    #[test]
    fn bad_names() {
        assert!(matches!(
            Alphabet::new(["1a"]),
            Err(Violation::InvalidGeneratorName(_))
        ));
        assert!(matches!(
            Alphabet::new(["a", "a"]),
            Err(Violation::DuplicateGenerator(_))
        ));
        assert!(Alphabet::new(["x_0", "Y2"]).is_ok());
    }

    #[test]
    fn star_set_sizes() {
        let p = parse_presentation("< a, b | a b >").unwrap();
        let s = p.star_set();
        assert_eq!(s.len(), 4);
        let p = parse_presentation("< a | a^3 >").unwrap();
        assert_eq!(p.star_set().len(), 2);
        let p = parse_presentation("< a, b | a b a^-1 b^-1 >").unwrap();
        assert_eq!(p.star_set().len(), 8);
    }

    #[test]
    fn star_set_inverse_index() {
        let p = parse_presentation("< a, t | t a t^-1 a^-2 >").unwrap();
        let s = p.star_set();
        for i in 0..s.len() {
            assert_eq!(s.get(s.inverse_index(i)), &s.get(i).inverse());
        }
        assert_eq!(s.label(0), "r#0@0+");
    }

    #[test]
    fn equal_lengths() {
        let p = parse_presentation("< a, b | a b a b^2 >").unwrap();
        assert_eq!(p.equal_relator_lengths(), Some(5));
        let p = parse_presentation("< a, b | a^2, b^3 >").unwrap();
        assert_eq!(p.equal_relator_lengths(), None);
    }
}
