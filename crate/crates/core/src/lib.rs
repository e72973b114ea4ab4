//! Decision procedures for small cancellation conditions on finite group
//! presentations.
//!
//! The central object is [`GammaGraph`], a finite weighted digraph whose
//! closed walks of length at least 3 are exactly the links of interior
//! vertices of reduced diagrams. A presentation satisfies the metric
//! condition (every interior vertex has `d'_F(v) <= d(v) - 2`) if and only if
//! every such walk weighs at least 2, and the strict condition if every walk
//! weighs more than 2. The classical conditions `C'(lambda)`, `C(p)` and
//! `T(q)` are available alongside.
//!
//! ```
//! use smallcancel::{parse_presentation, Analysis, CycleWeight, SearchMode};
//! use num_rational::Rational64;
//!
//! let p = parse_presentation("< a, t | t a t^-1 a^-2 >").unwrap();
//! let a = Analysis::new(&p).unwrap();
//! let (w, _) = a.gamma.min_cycle_weight(SearchMode::Serial);
//! assert_eq!(w, CycleWeight::Finite(Rational64::new(9, 5)));
//! ```

pub mod gamma;
pub mod parser;
pub mod pieces;
pub mod presentation;
pub mod report;
pub mod words;

pub use gamma::{
    check_t, check_ttmetric, check_ttmetric_strict, negative_curvature_bound, wheel_description,
    CycleWeight, CycleWitness, GammaError, GammaGraph, GammaVertex, SearchMode, Wheel,
};
pub use num_rational::Rational64;
pub use parser::{
    format_presentation, parse_presentation, parse_validated, parse_word, ParseError, SourceSpan,
};
pub use pieces::{check_c, check_cprime, min_piece_decomposition, PieceSet, Verdict};
pub use presentation::{
    artin_is_two_dimensional, artin_presentation, baumslag_solitar, cyclic_presentation,
    parse_cyclic_template, surface_presentation, Alphabet, LabeledGraph, Presentation,
    ReductionMode, StarSet, Validated, ValidationError, Violation, Warning,
};
pub use report::{analyze, Analysis, AnalyzeOptions, ConditionReport, Flag};
pub use words::{free_reduce, Letter, Word};
