//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines are always printed.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use smallcancel::report::{cprime_name, Analysis, TTMETRIC};
use smallcancel::{
    analyze, artin_is_two_dimensional, artin_presentation, baumslag_solitar, format_presentation,
    free_reduce, negative_curvature_bound, parse_presentation, Alphabet, AnalyzeOptions,
    CycleWeight, Flag, Letter, Presentation, Rational64, SearchMode, Word,
};

type Outcome = Result<String, String>;

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn min_weight(a: &Analysis) -> CycleWeight {
    a.gamma.min_cycle_weight(SearchMode::Parallel).0
}

fn expect(name: &str, what: &str, got: bool, want: bool) -> Result<(), String> {
    ensure(got == want, || {
        format!("{name}: {what} is {got}, expected {want}")
    })
}

fn criterion_1() -> Outcome {
    let mut seen = Vec::new();
    for n in 1..=4i64 {
        let a = Analysis::new(&baumslag_solitar(n as u32, n as u32 + 1).unwrap()).unwrap();
        let want = CycleWeight::Finite(r(2, 1) - r(1, 2 * n + 3));
        let got = min_weight(&a);
        ensure(got == want, || {
            format!("BS({n},{}): min weight {got}, expected {want}", n + 1)
        })?;
        expect(
            &format!("BS({n},{})", n + 1),
            "ttmetric",
            a.ttmetric(SearchMode::Parallel),
            false,
        )?;
        seen.push(got.to_string());
    }
    Ok(format!("min weights {}", seen.join(", ")))
}

fn criterion_2() -> Outcome {
    for n in 1..=4u32 {
        let p = baumslag_solitar(n, n).unwrap();
        let name = format!("BS({n},{n})");
        let rep = analyze(&p, &[], &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
        expect(
            &name,
            "ttmetric",
            rep.condition(TTMETRIC) == Some(true),
            true,
        )?;
        expect(
            &name,
            "C'(1/2)",
            rep.condition(&cprime_name(r(1, 2))) == Some(true),
            true,
        )?;
        expect(
            &name,
            "quadratic_dehn implied",
            rep.flags.quadratic_dehn == Flag::Implied,
            true,
        )?;
        expect(
            &name,
            "conjugacy implied",
            rep.flags.conjugacy == Flag::Implied,
            true,
        )?;
    }
    Ok("n = 1..4 satisfy ttmetric and C'(1/2), Dehn and conjugacy flags implied".into())
}

fn criterion_3() -> Outcome {
    let a = Analysis::new(&parse_presentation(E_GROUP).unwrap()).unwrap();
    let got = min_weight(&a);
    ensure(got == CycleWeight::Finite(r(8, 5)), || {
        format!("min weight {got}, expected 8/5")
    })?;
    expect("E", "ttmetric", a.ttmetric(SearchMode::Parallel), false)?;
    Ok(format!("min weight {got}"))
}

fn criterion_4() -> Outcome {
    let a = Analysis::new(&parse_presentation(ONE_RELATOR).unwrap()).unwrap();
    let m = SearchMode::Parallel;
    expect("one-relator", "ttmetric", a.ttmetric(m), true)?;
    expect("one-relator", "C'(1/2)", a.cprime(r(1, 2)), true)?;
    expect("one-relator", "C'(1/4)", a.cprime(r(1, 4)), false)?;
    expect("one-relator", "C(6)", a.c(6), false)?;
    expect("one-relator", "T(4)", a.t(4, m), false)?;
    Ok(format!(
        "{} vertices, min weight {}",
        a.gamma.vertex_count(),
        min_weight(&a)
    ))
}

fn criterion_5() -> Outcome {
    let a = Analysis::new(&cyclic(5, FIVE_TEMPLATE)).unwrap();
    let m = SearchMode::Parallel;
    expect("cyclic5", "strict ttmetric", a.ttmetric_strict(m), true)?;
    expect("cyclic5", "C(6)", a.c(6), false)?;
    expect("cyclic5", "T(4)", a.t(4, m), false)?;
    match negative_curvature_bound(&a.gamma, m) {
        Ok(CycleWeight::Finite(x)) if x > r(0, 1) => Ok(format!("curvature margin {x}")),
        other => Err(format!(
            "curvature bound {other:?}, expected a positive rational"
        )),
    }
}

fn criterion_6() -> Outcome {
    let a = Analysis::new(&cyclic(7, SEVEN_TEMPLATE)).unwrap();
    let m = SearchMode::Parallel;
    expect("cyclic7", "ttmetric", a.ttmetric(m), true)?;
    expect("cyclic7", "C'(1/2)", a.cprime(r(1, 2)), true)?;
    expect("cyclic7", "strict ttmetric", a.ttmetric_strict(m), false)?;
    expect("cyclic7", "C(6)", a.c(6), false)?;
    expect("cyclic7", "C(4) and T(4)", a.c(4) && a.t(4, m), false)?;
    expect("cyclic7", "C(3) and T(6)", a.c(3) && a.t(6, m), false)?;
    Ok(format!("min weight {}", min_weight(&a)))
}

fn criterion_7() -> Outcome {
    let m = SearchMode::Parallel;
    let p = Analysis::new(&parse_presentation(ROOTLESS).unwrap()).unwrap();
    expect("P", "C(5)", p.c(5), false)?;
    expect("P", "T(4)", p.t(4, m), false)?;
    expect("P", "ttmetric", p.ttmetric(m), false)?;
    let q = Analysis::new(&parse_presentation(ROOTED).unwrap()).unwrap();
    expect("P'", "ttmetric", q.ttmetric(m), true)?;
    expect("P'", "C'(1/2)", q.cprime(r(1, 2)), true)?;
    let len = q.presentation.equal_relator_lengths();
    ensure(len == Some(8), || {
        format!("P' relator lengths {len:?}, expected all 8")
    })?;
    Ok(format!(
        "P min weight {}, P' min weight {}",
        min_weight(&p),
        min_weight(&q)
    ))
}

fn criterion_8() -> Outcome {
    let a = Analysis::new(&parse_presentation(FIG3).unwrap()).unwrap();
    match smallcancel::check_ttmetric(&a.gamma, SearchMode::Parallel) {
        smallcancel::Verdict::Holds => Err("ttmetric holds, expected failure".into()),
        smallcancel::Verdict::Fails(w) => {
            ensure(w.len() == 3, || {
                format!("witness has {} vertices, expected 3", w.len())
            })?;
            ensure(w.total_weight == r(1, 1), || {
                format!("witness weight {}, expected 1", w.total_weight)
            })?;
            Ok("fails with a 3-cycle of weight 1".into())
        }
    }
}

fn criterion_9() -> Outcome {
    let m = SearchMode::Parallel;
    let mut cases = 0;
    for n in 1..=4 {
        for g in labeled_graphs_up_to_iso(n, 7) {
            let p = artin_presentation(&g);
            let a = Analysis::new(&p).map_err(|e| e.to_string())?;
            let want = artin_is_two_dimensional(&g);
            let got = a.ttmetric(m);
            ensure(got == want, || {
                format!(
                    "{}: ttmetric {got}, two-dimensional {want}",
                    format_presentation(&p)
                )
            })?;
            cases += 1;
        }
    }
    let t = Analysis::new(&artin("a-b:2,b-c:3,a-c:6")).unwrap();
    expect("(2,3,6)", "ttmetric", t.ttmetric(m), true)?;
    expect("(2,3,6)", "strict ttmetric", t.ttmetric_strict(m), false)?;
    Ok(format!(
        "{cases} graphs up to isomorphism agree; (2,3,6) ttmetric but not strict"
    ))
}

fn criterion_10() -> Outcome {
    for g in [2, 3] {
        let a = Analysis::new(&smallcancel::surface_presentation(g).unwrap()).unwrap();
        expect(&format!("genus {g}"), "C'(1/6)", a.cprime(r(1, 6)), true)?;
        expect(
            &format!("genus {g}"),
            "strict ttmetric",
            a.ttmetric_strict(SearchMode::Parallel),
            true,
        )?;
    }
    Ok("genus 2 and 3 are C'(1/6) and strict".into())
}

fn criterion_11() -> Outcome {
    let mut graphs: Vec<(String, Presentation)> = suite();
    for g in labeled_graphs_up_to_iso(3, 4) {
        let p = artin_presentation(&g);
        graphs.push((format_presentation(&p), p));
    }
    let mut compared = 0;
    for (name, p) in graphs {
        let (star, _, g) = build(&p);
        if g.vertex_count() > 40 {
            continue;
        }
        let naive = naive_graph(&star);
        ensure(naive.vertices.len() == g.vertex_count(), || {
            format!(
                "{name}: {} vertices, definition gives {}",
                g.vertex_count(),
                naive.vertices.len()
            )
        })?;
        let want = brute_min_closed_walk(&naive, 4 * naive.vertices.len())
            .map_or(CycleWeight::Infinite, CycleWeight::Finite);
        let (got, _) = g.min_cycle_weight(SearchMode::Serial);
        ensure(got == want, || {
            format!("{name}: layered search {got}, exhaustive {want}")
        })?;
        compared += 1;
    }
    Ok(format!("{compared} graphs with at most 40 vertices agree"))
}

fn random_presentation(runner: &mut TestRunner) -> Option<Presentation> {
    use proptest::collection::vec;
    let gens = (1usize..=4).new_tree(runner).unwrap().current();
    let letters = (0..gens as u32, proptest::bool::ANY);
    let rels = vec(vec(letters, 1..10), 0..4)
        .new_tree(runner)
        .unwrap()
        .current();
    let names = ["a", "b", "x1", "y_2"];
    let alphabet = Alphabet::new(names[..gens].iter().copied()).unwrap();
    let words = rels
        .into_iter()
        .map(|ls| {
            Word::new(ls.into_iter().map(|(g, inv)| Letter {
                generator: g,
                inverted: inv,
            }))
        })
        .filter(|w| !w.is_empty())
        .collect();
    Presentation::new(alphabet, words).ok()
}

fn criterion_12() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let mut round_trips = 0;
    while round_trips < 200 {
        let Some(p) = random_presentation(&mut runner) else {
            continue;
        };
        let text = format_presentation(&p);
        let back = parse_presentation(&text).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == p, || format!("{text} did not round-trip"))?;
        ensure(format_presentation(&back) == text, || {
            format!("{text} formats unstably")
        })?;
        round_trips += 1;
    }

    use proptest::collection::vec;
    for _ in 0..1000 {
        let seq = vec((0u32..3, proptest::bool::ANY), 0..30)
            .new_tree(&mut runner)
            .unwrap()
            .current();
        let once = free_reduce(seq.into_iter().map(|(g, inv)| Letter {
            generator: g,
            inverted: inv,
        }));
        let twice = free_reduce(once.letters().iter().copied());
        ensure(once == twice, || "free reduction is not idempotent".into())?;
    }

    let lambdas: Vec<Rational64> = (1..=12).map(|k| r(k, 12)).collect();
    for (name, p) in suite() {
        let a = Analysis::new(&p).unwrap();
        for s in a.pieces.to_sorted_vec() {
            ensure(a.pieces.contains(&s.inverse()), || {
                format!("{name}: piece set not closed under inversion")
            })?;
        }
        for p in 2..=10 {
            ensure(!a.c(p) || a.c(p - 1), || {
                format!("{name}: C({p}) holds but C({}) fails", p - 1)
            })?;
        }
        for w in lambdas.windows(2) {
            ensure(!a.cprime(w[0]) || a.cprime(w[1]), || {
                format!("{name}: C'({}) holds but C'({}) fails", w[0], w[1])
            })?;
        }
        let serial = a.gamma.min_cycle_weight(SearchMode::Serial);
        let parallel = a.gamma.min_cycle_weight(SearchMode::Parallel);
        ensure(serial == parallel, || {
            format!("{name}: serial and parallel searches disagree")
        })?;
    }
    Ok(
        "200 round-trips, 1000 reductions, closure, monotonicity and determinism over the suite"
            .into(),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Baumslag-Solitar BS(n,n+1) minimum weights", criterion_1),
        ("BS(n,n) metric condition and flags", criterion_2),
        ("group E minimum weight 8/5", criterion_3),
        ("one-relator presentation", criterion_4),
        ("five-generator cyclic presentation", criterion_5),
        ("seven-generator cyclic presentation", criterion_6),
        ("presentations P and P'", criterion_7),
        ("three-relator corner example", criterion_8),
        ("Artin two-dimensionality equivalence", criterion_9),
        ("surface groups", criterion_10),
        ("layered search against exhaustive minimum", criterion_11),
        ("property suites", criterion_12),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {:>2}: {title}: {detail} ({secs:.2}s)",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {title}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
