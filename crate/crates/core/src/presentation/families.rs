use thiserror::Error;

use super::{Alphabet, Presentation, ValidationError};
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter `{0}` must be at least 1")]
    NonPositive(&'static str),
    #[error("cyclic template is empty")]
    EmptyTemplate,
    #[error("template exponent must be nonzero")]
    ZeroExponent,
    #[error("bad template item `{0}`; expected OFFSET:EXPONENT")]
    BadTemplate(String),
    #[error("shifted relator {0} reduces to the empty word")]
    EmptyRelatorAfterReduction(usize),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// `<a, t | t a^p t^-1 a^-q>`.
pub fn baumslag_solitar(p: u32, q: u32) -> Result<Presentation, FamilyError> {
    if p == 0 {
        return Err(FamilyError::NonPositive("p"));
    }
    if q == 0 {
        return Err(FamilyError::NonPositive("q"));
    }
    let alphabet = Alphabet::new(["a", "t"]).expect("static names");
    let a = Word::new([Letter::pos(0)]);
    let t = Word::new([Letter::pos(1)]);
    let r = &(&(&t * &a.pow(p as i64)) * &t.inverse()) * &a.pow(-(q as i64));
    Ok(Presentation::new(alphabet, vec![r])?)
}

/// Generators `x0..x{n-1}`; relator `i` is the template with every offset
/// shifted by `i` modulo `n`.
pub fn cyclic_presentation(n: u32, template: &[(i64, i64)]) -> Result<Presentation, FamilyError> {
    if n == 0 {
        return Err(FamilyError::NonPositive("n"));
    }
    if template.is_empty() {
        return Err(FamilyError::EmptyTemplate);
    }
    if template.iter().any(|&(_, e)| e == 0) {
        return Err(FamilyError::ZeroExponent);
    }
    let alphabet = Alphabet::new((0..n).map(|i| format!("x{i}"))).expect("generated names");
    let mut relators = Vec::with_capacity(n as usize);
    for i in 0..n as i64 {
        let letters = template.iter().flat_map(|&(offset, e)| {
            let g = (i + offset).rem_euclid(n as i64) as u32;
            let l = if e > 0 {
                Letter::pos(g)
            } else {
                Letter::neg(g)
            };
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        });
        let w = Word::new(letters);
        if w.is_empty() {
            return Err(FamilyError::EmptyRelatorAfterReduction(i as usize));
        }
        relators.push(w);
    }
    Ok(Presentation::new(alphabet, relators)?)
}

/// Parses `4:-1,1:-1,0:-1` into `(offset, exponent)` pairs.
pub fn parse_cyclic_template(text: &str) -> Result<Vec<(i64, i64)>, FamilyError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (o, e) = item
                .split_once(':')
                .ok_or_else(|| FamilyError::BadTemplate(item.into()))?;
            let o = o
                .trim()
                .parse()
                .map_err(|_| FamilyError::BadTemplate(item.into()))?;
            let e = e
                .trim()
                .parse()
                .map_err(|_| FamilyError::BadTemplate(item.into()))?;
            Ok((o, e))
        })
        .collect()
}

/// `<a1, b1, ..., ag, bg | [a1,b1] ... [ag,bg]>`.
pub fn surface_presentation(genus: u32) -> Result<Presentation, FamilyError> {
    if genus == 0 {
        return Err(FamilyError::NonPositive("genus"));
    }
    let names = (1..=genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]);
    let alphabet = Alphabet::new(names).expect("generated names");
    let letters = (0..genus).flat_map(|i| {
        let (a, b) = (2 * i, 2 * i + 1);
        [
            Letter::pos(a),
            Letter::pos(b),
            Letter::neg(a),
            Letter::neg(b),
        ]
    });
    Ok(Presentation::new(alphabet, vec![Word::new(letters)])?)
}
