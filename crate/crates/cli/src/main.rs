use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use smallcancel::report::{report_from_analysis, Analysis};
use smallcancel::{
    artin_presentation, baumslag_solitar, cyclic_presentation, format_presentation,
    parse_cyclic_template, parse_validated, surface_presentation, AnalyzeOptions, LabeledGraph,
    Rational64, ReductionMode, SearchMode, Validated,
};

#[derive(Parser)]
#[command(
    name = "smallcancel",
    version,
    about = "Small cancellation conditions for finite presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one condition. Exit status 0 if it holds, 1 if it fails.
    Check {
        /// Presentation file, `-` for stdin
        file: PathBuf,
        /// ttmetric, ttmetric-strict, cprime=RAT, c=INT or t=INT
        #[arg(long)]
        condition: Condition,
        /// Reject relators that are not cyclically reduced
        #[arg(long)]
        strict_input: bool,
    },
    /// Run every check and print a report.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Values of lambda for C'(lambda); replaces the default list
        #[arg(long = "lambda", value_name = "RAT")]
        lambdas: Vec<String>,
        /// Values of p for C(p); replaces the default list
        #[arg(long = "c", value_name = "INT")]
        c_values: Vec<usize>,
        /// Values of q for T(q); replaces the default list
        #[arg(long = "t", value_name = "INT")]
        t_values: Vec<usize>,
        #[arg(long)]
        strict_input: bool,
    },
    /// Write the corner graph in DOT format.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        strict_input: bool,
    },
    /// Print a presentation from one of the built-in families.
    #[command(subcommand)]
    Gen(Family),
}

#[derive(Subcommand)]
enum Family {
    /// Standard presentation of an Artin group, e.g. `a-b:3,b-c:2,d`
    Artin { spec: String },
    /// Baumslag-Solitar group <a, t | t a^p t^-1 a^-q>
    Bs { p: u32, q: u32 },
    /// Cyclic presentation on N generators from `offset:exp,...`
    Cyclic {
        n: u32,
        #[arg(allow_hyphen_values = true)]
        template: String,
    },
    /// Closed orientable surface of genus G
    Surface { genus: u32 },
}

#[derive(Clone, Copy, Debug)]
enum Condition {
    TtMetric,
    TtMetricStrict,
    CPrime(Rational64),
    C(usize),
    T(usize),
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "ttmetric" => return Ok(Condition::TtMetric),
            "ttmetric-strict" => return Ok(Condition::TtMetricStrict),
            _ => {}
        }
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| format!("unknown condition `{s}`"))?;
        match name {
            "cprime" => parse_lambda(value).map(Condition::CPrime),
            "c" => value
                .parse()
                .map(Condition::C)
                .map_err(|e| format!("bad p `{value}`: {e}")),
            "t" => value
                .parse()
                .map(Condition::T)
                .map_err(|e| format!("bad q `{value}`: {e}")),
            _ => Err(format!("unknown condition `{name}`")),
        }
    }
}

fn parse_lambda(text: &str) -> Result<Rational64, String> {
    let r: Rational64 = text
        .trim()
        .parse()
        .map_err(|_| format!("bad rational `{text}`"))?;
    if r <= Rational64::from_integer(0) {
        return Err(format!("lambda must be positive, got {r}"));
    }
    Ok(r)
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path, strict_input: bool) -> Result<Validated> {
    let text = read_input(path)?;
    let mode = if strict_input {
        ReductionMode::Strict
    } else {
        ReductionMode::Auto
    };
    parse_validated(&text, mode).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn analysis(v: &Validated) -> Result<Analysis> {
    Analysis::new(&v.presentation).map_err(|e| anyhow!("{e}"))
}

/// `Ok(code)` for a decided run, `Err` for input errors.
fn run(cli: Cli) -> Result<u8> {
    let mode = SearchMode::Parallel;
    match cli.command {
        Command::Check {
            file,
            condition,
            strict_input,
        } => {
            let v = load(&file, strict_input)?;
            for w in &v.warnings {
                eprintln!("warning: {}", w.describe());
            }
            let a = analysis(&v)?;
            let holds = match condition {
                Condition::TtMetric => a.ttmetric(mode),
                Condition::TtMetricStrict => a.ttmetric_strict(mode),
                Condition::CPrime(l) => a.cprime(l),
                Condition::C(p) => a.c(p),
                Condition::T(q) => a.t(q, mode),
            };
            println!("{}", if holds { "holds" } else { "fails" });
            Ok(if holds { 0 } else { 1 })
        }
        Command::Report {
            file,
            json,
            lambdas,
            c_values,
            t_values,
            strict_input,
        } => {
            let v = load(&file, strict_input)?;
            let mut opts = AnalyzeOptions {
                mode,
                ..AnalyzeOptions::default()
            };
            if !lambdas.is_empty() {
                opts.lambdas = lambdas
                    .iter()
                    .map(|l| parse_lambda(l))
                    .collect::<Result<_, _>>()
                    .map_err(|e| anyhow!(e))?;
            }
            if !c_values.is_empty() {
                opts.c_values = c_values;
            }
            if !t_values.is_empty() {
                opts.t_values = t_values;
            }
            let report = report_from_analysis(&analysis(&v)?, &v.warnings, &opts);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(0)
        }
        Command::Dot {
            file,
            output,
            strict_input,
        } => {
            let v = load(&file, strict_input)?;
            let a = analysis(&v)?;
            let dot = a.gamma.export_dot(v.presentation.alphabet());
            fs::write(&output, dot).with_context(|| format!("writing {}", output.display()))?;
            Ok(0)
        }
        Command::Gen(family) => {
            let p = match family {
                Family::Artin { spec } => artin_presentation(&LabeledGraph::parse(&spec)?),
                Family::Bs { p, q } => baumslag_solitar(p, q)?,
                Family::Cyclic { n, template } => {
                    cyclic_presentation(n, &parse_cyclic_template(&template)?)?
                }
                Family::Surface { genus } => surface_presentation(genus)?,
            };
            println!("{}", format_presentation(&p));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
