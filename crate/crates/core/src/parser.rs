//! Text format for presentations.
//!
//! ```text
//! presentation := "<" genlist "|" rellist ">"
//! genlist      := ident ("," ident)*
//! rellist      := <empty> | relation ("," relation)*
//! relation     := word | word "=" word
//! word         := term+
//! term         := atom ("^" signed-integer)?
//! atom         := ident | "(" word ")"
//! ```
//!
//! Whitespace between tokens is ignored. A relation `u = v` becomes the
//! relator `u v^-1`.

use std::fmt;

use thiserror::Error;

use crate::presentation::{
    Alphabet, Presentation, ReductionMode, Validated, ValidationError, Violation,
};
use crate::words::{Letter, Word};

/// Byte range `[start, end)` into the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{0}")]
    Alphabet(Violation),
    #[error("{0}")]
    Invalid(ValidationError),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

/// Longest word the parser will expand, in letters.
pub const MAX_WORD_LEN: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Lt,
    Gt,
    Bar,
    Comma,
    Eq,
    LParen,
    RParen,
    Caret,
    Minus,
    Plus,
    Int(&'a str),
    Ident(&'a str),
    End,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(Tok<'a>, SourceSpan), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && (bytes[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if start >= bytes.len() {
            return Ok((Tok::End, SourceSpan::new(start, start)));
        }
        let c = bytes[start] as char;
        let single = match c {
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            '|' => Some(Tok::Bar),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '^' => Some(Tok::Caret),
            '-' => Some(Tok::Minus),
            '+' => Some(Tok::Plus),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((t, SourceSpan::new(start, self.pos)));
        }
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            return Ok((
                Tok::Int(&self.src[start..self.pos]),
                SourceSpan::new(start, self.pos),
            ));
        }
        if c.is_ascii_alphabetic() {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((
                Tok::Ident(&self.src[start..self.pos]),
                SourceSpan::new(start, self.pos),
            ));
        }
        let ch = self.src[start..].chars().next().unwrap();
        Err(ParseError {
            kind: ParseErrorKind::Syntax(format!("unexpected character `{ch}`")),
            span: SourceSpan::new(start, start + ch.len_utf8()),
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok<'a>,
    span: SourceSpan,
    alphabet: Alphabet,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok, span) = lexer.next()?;
        Ok(Parser {
            lexer,
            tok,
            span,
            alphabet: Alphabet::default(),
        })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, span) = self.lexer.next()?;
        self.tok = tok;
        self.span = span;
        Ok(())
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            kind: ParseErrorKind::Syntax(format!(
                "expected {expected}, found {}",
                self.tok.describe()
            )),
            span: self.span,
        })
    }

    fn expect(&mut self, tok: Tok<'static>, what: &str) -> Result<SourceSpan, ParseError> {
        if self.tok == tok {
            let span = self.span;
            self.bump()?;
            Ok(span)
        } else {
            self.unexpected(what)
        }
    }

    fn presentation(&mut self) -> Result<(Vec<Word>, Vec<SourceSpan>), ParseError> {
        self.expect(Tok::Lt, "`<`")?;
        loop {
            let Tok::Ident(name) = self.tok else {
                return self.unexpected("a generator name");
            };
            self.alphabet
                .push(name.to_string())
                .map_err(|v| ParseError {
                    kind: ParseErrorKind::Alphabet(v),
                    span: self.span,
                })?;
            self.bump()?;
            if self.tok == Tok::Comma {
                self.bump()?;
            } else {
                break;
            }
        }
        self.expect(Tok::Bar, "`,` or `|`")?;
        let mut relators = Vec::new();
        let mut spans = Vec::new();
        if self.tok != Tok::Gt {
            loop {
                let start = self.span.start;
                let lhs = self.word()?;
                let rel = if self.tok == Tok::Eq {
                    self.bump()?;
                    let rhs = self.word()?;
                    &lhs * &rhs.inverse()
                } else {
                    lhs
                };
                spans.push(SourceSpan::new(start, self.lexer_prev_end()));
                relators.push(rel);
                if self.tok == Tok::Comma {
                    self.bump()?;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Gt, "`,`, `=` or `>`")?;
        if self.tok != Tok::End {
            return self.unexpected("end of input");
        }
        Ok((relators, spans))
    }

    /// End of the last consumed token; the current token starts after it.
    fn lexer_prev_end(&self) -> usize {
        let before = &self.lexer.src[..self.span.start];
        before.trim_end().len()
    }

    fn starts_term(&self) -> bool {
        matches!(self.tok, Tok::Ident(_) | Tok::LParen)
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if !self.starts_term() {
            return self.unexpected("a word");
        }
        let start = self.span.start;
        let mut acc = Word::empty();
        while self.starts_term() {
            let t = self.term()?;
            if acc.len() + t.len() > MAX_WORD_LEN {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!(
                        "word longer than {MAX_WORD_LEN} letters"
                    )),
                    span: SourceSpan::new(start, self.lexer_prev_end()),
                });
            }
            acc = &acc * &t;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let start = self.span.start;
        let atom = match self.tok {
            Tok::Ident(name) => {
                let g = self.alphabet.lookup(name).ok_or_else(|| ParseError {
                    kind: ParseErrorKind::UnknownGenerator(name.to_string()),
                    span: self.span,
                })?;
                self.bump()?;
                Word::new([Letter::pos(g)])
            }
            Tok::LParen => {
                self.bump()?;
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                w
            }
            _ => return self.unexpected("a generator or `(`"),
        };
        if self.tok != Tok::Caret {
            return Ok(atom);
        }
        self.bump()?;
        let negative = match self.tok {
            Tok::Minus => {
                self.bump()?;
                true
            }
            Tok::Plus => {
                self.bump()?;
                false
            }
            _ => false,
        };
        let Tok::Int(digits) = self.tok else {
            return self.unexpected("an integer exponent");
        };
        let span = self.span;
        let too_big = || ParseError {
            kind: ParseErrorKind::Syntax("exponent too large".into()),
            span: SourceSpan::new(start, span.end),
        };
        let magnitude: i64 = digits.parse().map_err(|_| too_big())?;
        if magnitude as u128 * atom.len() as u128 > MAX_WORD_LEN as u128 {
            return Err(too_big());
        }
        self.bump()?;
        Ok(atom.pow(if negative { -magnitude } else { magnitude }))
    }
}

/// Parses and validates, keeping validation warnings.
pub fn parse_validated(text: &str, mode: ReductionMode) -> Result<Validated, ParseError> {
    let mut p = Parser::new(text)?;
    let (relators, spans) = p.presentation()?;
    Presentation::validate(p.alphabet, relators, mode).map_err(|err| {
        let span = err
            .violations
            .iter()
            .find_map(|v| match v {
                Violation::NotCyclicallyReduced(i) | Violation::EmptyRelator(i) => Some(spans[*i]),
                Violation::CyclicDuplicate(_, j) => Some(spans[*j]),
                _ => None,
            })
            .unwrap_or(SourceSpan::new(0, text.len()));
        ParseError {
            kind: ParseErrorKind::Invalid(err),
            span,
        }
    })
}

/// Parses a presentation, auto-reducing relators that are not cyclically reduced.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse_validated(text, ReductionMode::Auto).map(|v| v.presentation)
}

/// Parses a bare word over an existing alphabet.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let mut p = Parser::new(text)?;
    p.alphabet = alphabet.clone();
    let w = p.word()?;
    if p.tok != Tok::End {
        return p.unexpected("end of input");
    }
    Ok(w)
}

/// Canonical text; runs of a letter print as powers.
pub fn format_presentation(p: &Presentation) -> String {
    let gens = p.alphabet().names().join(", ");
    let rels: Vec<String> = p
        .relators()
        .iter()
        .map(|r| r.display(p.alphabet()).to_string())
        .collect();
    if rels.is_empty() {
        format!("< {gens} | >")
    } else {
        format!("< {gens} | {} >", rels.join(", "))
    }
}
