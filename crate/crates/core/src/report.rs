//! Runs every check on a presentation and collects the results, together
//! with the structural consequences that follow from them.
//!
//! Flags only ever say "implied": each one is set when all hypotheses of the
//! corresponding sufficient condition have been verified, and left at
//! "not implied" otherwise. Nothing here asserts a negative conclusion.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::gamma::{
    wheel_description, CycleWeight, CycleWitness, GammaError, GammaGraph, SearchMode,
};
use crate::parser::format_presentation;
use crate::pieces::{check_c, check_cprime, max_piece_fraction, PieceSet};
use crate::presentation::{Presentation, StarSet, Warning};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

/// Everything derived from a presentation once: `R*`, its pieces and the
/// corner graph.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub presentation: Presentation,
    pub star: StarSet,
    pub pieces: PieceSet,
    pub gamma: GammaGraph,
}

impl Analysis {
    pub fn new(presentation: &Presentation) -> Result<Self, GammaError> {
        let star = presentation.star_set();
        let pieces = PieceSet::enumerate(&star);
        let gamma = GammaGraph::build(&star, &pieces)?;
        Ok(Analysis {
            presentation: presentation.clone(),
            star,
            pieces,
            gamma,
        })
    }

    pub fn cprime(&self, lambda: Rational64) -> bool {
        check_cprime(&self.star, &self.pieces, lambda).holds()
    }

    pub fn c(&self, p: usize) -> bool {
        check_c(&self.star, &self.pieces, p).holds()
    }

    pub fn t(&self, q: usize, mode: SearchMode) -> bool {
        crate::gamma::check_t(&self.gamma, q, mode).holds()
    }

    pub fn ttmetric(&self, mode: SearchMode) -> bool {
        crate::gamma::check_ttmetric(&self.gamma, mode).holds()
    }

    pub fn ttmetric_strict(&self, mode: SearchMode) -> bool {
        crate::gamma::check_ttmetric_strict(&self.gamma, mode).holds()
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub lambdas: Vec<Rational64>,
    pub c_values: Vec<usize>,
    pub t_values: Vec<usize>,
    pub mode: SearchMode,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            lambdas: vec![
                Rational64::new(1, 6),
                Rational64::new(1, 4),
                Rational64::new(1, 3),
                Rational64::new(1, 2),
            ],
            c_values: (3..=7).collect(),
            t_values: (3..=7).collect(),
            mode: SearchMode::Parallel,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Implied,
    NotImplied,
}

impl Flag {
    fn from_bool(b: bool) -> Self {
        if b {
            Flag::Implied
        } else {
            Flag::NotImplied
        }
    }

    pub fn is_implied(self) -> bool {
        self == Flag::Implied
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    /// No proper powers and the non-strict condition: diagrammatically reducible.
    pub dr: Flag,
    /// Strict condition and `C(3)` on a finite presentation: hyperbolic.
    pub hyperbolic: Flag,
    /// Non-strict condition, `C'(1/2)` and equal relator lengths.
    pub quadratic_dehn: Flag,
    /// Same hypotheses as `quadratic_dehn`, finite presentation.
    pub conjugacy: Flag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl From<Rational64> for Fraction {
    fn from(r: Rational64) -> Self {
        Fraction {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightJson {
    Finite(Fraction),
    Infinite(String),
}

impl From<CycleWeight> for WeightJson {
    fn from(w: CycleWeight) -> Self {
        match w {
            CycleWeight::Finite(r) => WeightJson::Finite(r.into()),
            CycleWeight::Infinite => WeightJson::Infinite("infinity".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub holds: bool,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceStats {
    pub count: usize,
    pub max_fraction: Option<Fraction>,
    /// Longest piece in each input relator, in input order.
    pub max_length_per_relator: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaStats {
    pub vertices: usize,
    pub star_size: usize,
}

/// The full report. Field order is the JSON field order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub presentation: String,
    pub finite_presentation: bool,
    pub pieces: PieceStats,
    pub gamma: GammaStats,
    pub conditions: BTreeMap<String, ConditionResult>,
    pub min_cycle_weight: WeightJson,
    pub min_cycle_witness: Option<Value>,
    pub shortest_cycle_length: Option<usize>,
    pub flags: Flags,
    pub r_min: Option<usize>,
    pub warnings: Vec<String>,
}

pub fn cprime_name(lambda: Rational64) -> String {
    format!("cprime({lambda})")
}

pub fn c_name(p: usize) -> String {
    format!("c({p})")
}

pub fn t_name(q: usize) -> String {
    format!("t({q})")
}

pub const TTMETRIC: &str = "ttmetric";
pub const TTMETRIC_STRICT: &str = "ttmetric_strict";

fn word_text(a: &Analysis, w: &crate::Word) -> String {
    w.display(a.presentation.alphabet()).to_string()
}

fn cycle_json(a: &Analysis, w: &CycleWitness) -> Value {
    let alphabet = a.presentation.alphabet();
    let wheel = wheel_description(&a.gamma, w);
    let faces: Vec<Value> = wheel
        .spokes
        .iter()
        .map(|s| {
            json!({
                "relator": word_text(a, &s.relator),
                "origin": a.star.label(s.element),
                "spoke": word_text(a, &s.spoke),
                "rim": word_text(a, &s.rim),
            })
        })
        .collect();
    json!({
        "length": w.len(),
        "weight": Fraction::from(w.total_weight),
        "walk": w.walk.iter().map(|&v| a.gamma.vertex_label(v, alphabet)).collect::<Vec<_>>(),
        "wheel": faces,
    })
}

fn walk_json(a: &Analysis, walk: &[usize]) -> Value {
    let alphabet = a.presentation.alphabet();
    json!({
        "length": walk.len(),
        "walk": walk.iter().map(|&v| a.gamma.vertex_label(v, alphabet)).collect::<Vec<_>>(),
    })
}

/// Runs every requested check.
pub fn analyze(
    presentation: &Presentation,
    warnings: &[Warning],
    options: &AnalyzeOptions,
) -> Result<ConditionReport, AnalysisError> {
    let a = Analysis::new(presentation)?;
    Ok(report_from_analysis(&a, warnings, options))
}

pub fn report_from_analysis(
    a: &Analysis,
    warnings: &[Warning],
    options: &AnalyzeOptions,
) -> ConditionReport {
    let mode = options.mode;
    let half = Rational64::new(1, 2);
    let mut conditions = BTreeMap::new();

    let mut lambdas = options.lambdas.clone();
    lambdas.push(half);
    lambdas.sort();
    lambdas.dedup();
    let mut cprime_half = true;
    for &lambda in &lambdas {
        let v = check_cprime(&a.star, &a.pieces, lambda);
        if lambda == half {
            cprime_half = v.holds();
        }
        if lambda == half && !options.lambdas.contains(&half) {
            continue;
        }
        let witness = v.witness().map(|w| {
            json!({
                "piece": word_text(a, &w.piece),
                "relator": word_text(a, a.star.get(w.element)),
                "origin": a.star.label(w.element),
                "piece_length": w.piece.len(),
                "relator_length": w.relator_len,
            })
        });
        conditions.insert(
            cprime_name(lambda),
            ConditionResult {
                holds: v.holds(),
                witness,
            },
        );
    }

    let mut c_values = options.c_values.clone();
    c_values.push(3);
    c_values.sort_unstable();
    c_values.dedup();
    let mut c3 = true;
    for &p in &c_values {
        let v = check_c(&a.star, &a.pieces, p);
        if p == 3 {
            c3 = v.holds();
            if !options.c_values.contains(&3) {
                continue;
            }
        }
        let witness = v.witness().map(|w| {
            json!({
                "element": word_text(a, a.star.get(w.element)),
                "origin": a.star.label(w.element),
                "pieces": w.pieces.iter().map(|s| word_text(a, s)).collect::<Vec<_>>(),
            })
        });
        conditions.insert(
            c_name(p),
            ConditionResult {
                holds: v.holds(),
                witness,
            },
        );
    }

    let (min_weight, min_witness) = a.gamma.min_cycle_weight(mode);
    let two = Rational64::from_integer(2);
    let ttmetric = min_weight >= CycleWeight::Finite(two);
    let strict = min_weight > CycleWeight::Finite(two);
    let witness_json = min_witness.as_ref().map(|w| cycle_json(a, w));
    conditions.insert(
        TTMETRIC.into(),
        ConditionResult {
            holds: ttmetric,
            witness: if ttmetric { None } else { witness_json.clone() },
        },
    );
    conditions.insert(
        TTMETRIC_STRICT.into(),
        ConditionResult {
            holds: strict,
            witness: if strict { None } else { witness_json.clone() },
        },
    );

    let shortest = if options.t_values.is_empty() {
        None
    } else {
        shortest_walk(a, mode)
    };
    for &q in &options.t_values {
        let fails = shortest.as_ref().filter(|w| w.len() < q);
        conditions.insert(
            t_name(q),
            ConditionResult {
                holds: fails.is_none(),
                witness: fails.map(|w| walk_json(a, w)),
            },
        );
    }

    let p = &a.presentation;
    let powers = p.proper_power_relators();
    let equal = p.equal_relator_lengths().is_some();
    let flags = Flags {
        dr: Flag::from_bool(ttmetric && powers.is_empty()),
        hyperbolic: Flag::from_bool(strict && c3),
        quadratic_dehn: Flag::from_bool(ttmetric && cprime_half && equal),
        conjugacy: Flag::from_bool(ttmetric && cprime_half && equal),
    };
    let r_min = if ttmetric && cprime_half {
        p.shortest_relator_len()
    } else {
        None
    };

    let mut notes: Vec<String> = warnings
        .iter()
        .filter(|w| !matches!(w, Warning::ProperPower { .. }))
        .map(Warning::describe)
        .collect();
    for &i in &powers {
        let (_, exponent) = p.relators()[i]
            .proper_power()
            .expect("listed as a proper power");
        notes.push(Warning::ProperPower { index: i, exponent }.describe());
    }
    if ttmetric && !powers.is_empty() {
        notes.push(
            "diagrammatic reducibility not implied: the presentation has proper powers".into(),
        );
    }

    let mut per_relator = vec![0usize; p.relators().len()];
    for i in 0..a.star.len() {
        let o = a.star.origin(i);
        per_relator[o.relator] = per_relator[o.relator].max(a.pieces.max_prefix_len(i));
    }

    ConditionReport {
        presentation: format_presentation(p),
        finite_presentation: true,
        pieces: PieceStats {
            count: a.pieces.len(),
            max_fraction: max_piece_fraction(&a.star, &a.pieces).map(Fraction::from),
            max_length_per_relator: per_relator,
        },
        gamma: GammaStats {
            vertices: a.gamma.vertex_count(),
            star_size: a.star.len(),
        },
        conditions,
        min_cycle_weight: min_weight.into(),
        min_cycle_witness: witness_json,
        shortest_cycle_length: shortest.as_ref().map(Vec::len),
        flags,
        r_min,
        warnings: notes,
    }
}

fn shortest_walk(a: &Analysis, mode: SearchMode) -> Option<Vec<usize>> {
    let len = a.gamma.shortest_cycle_length(mode)?;
    a.gamma.short_cycle(len, mode)
}

impl ConditionReport {
    pub fn condition(&self, name: &str) -> Option<bool> {
        self.conditions.get(name).map(|c| c.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn min_weight(&self) -> CycleWeight {
        match &self.min_cycle_weight {
            WeightJson::Finite(f) => CycleWeight::Finite(Rational64::new(f.num, f.den)),
            WeightJson::Infinite(_) => CycleWeight::Infinite,
        }
    }

    /// Plain-text rendering for the terminal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "presentation: {}", self.presentation);
        let frac = self
            .pieces
            .max_fraction
            .map_or("none".to_string(), |f| format!("{}/{}", f.num, f.den));
        let _ = writeln!(
            out,
            "pieces: {} (longest piece / relator length: {frac}; per relator: {:?})",
            self.pieces.count, self.pieces.max_length_per_relator
        );
        let _ = writeln!(
            out,
            "graph: {} vertices over {} elements of R*",
            self.gamma.vertices, self.gamma.star_size
        );
        let _ = writeln!(out, "minimum cycle weight: {}", self.min_weight());
        match self.shortest_cycle_length {
            Some(n) => {
                let _ = writeln!(out, "shortest cycle length: {n}");
            }
            None => {
                let _ = writeln!(out, "shortest cycle length: none");
            }
        }
        let _ = writeln!(out, "conditions:");
        for (name, c) in &self.conditions {
            let _ = writeln!(
                out,
                "  {name:<16} {}",
                if c.holds { "holds" } else { "fails" }
            );
        }
        let show = |f: Flag| {
            if f.is_implied() {
                "implied"
            } else {
                "not implied"
            }
        };
        let _ = writeln!(out, "consequences:");
        let _ = writeln!(out, "  diagrammatically reducible  {}", show(self.flags.dr));
        let _ = writeln!(
            out,
            "  hyperbolic                  {}",
            show(self.flags.hyperbolic)
        );
        let _ = writeln!(
            out,
            "  quadratic Dehn function     {}",
            show(self.flags.quadratic_dehn)
        );
        let _ = writeln!(
            out,
            "  solvable conjugacy problem  {}",
            show(self.flags.conjugacy)
        );
        if let Some(r) = self.r_min {
            let _ = writeln!(out, "  nontrivial words equal to 1 have length >= {r}");
        }
        if let Some(w) = &self.min_cycle_witness {
            let _ = writeln!(out, "minimum-weight cycle: {}", w["walk"]);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
