//! Workbench acceptance suite.
//!
//! One test per top-level guarantee: semantics conformance on random
//! interpretations, agreement between the SAT finder and the exhaustive
//! oracle, the union-concept simulation of asymmetric dependencies, the
//! tiling pipeline in both directions, cardinality consequences forced on
//! every found model, and deterministic rendering. Each test prints a single
//! `pass`/`fail` line (visible with `--nocapture`) and enforces a wall-clock
//! budget pinned at the call site.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dlfd::ast::{Axiom, Concept, ConceptName, FeatureName, PathExpr, RhsConcept, Terminology};
use dlfd::finder::{
    enumerate_all, find_model, refute_bounded, RefutationOutcome, SearchBounds, SearchOutcome,
};
use dlfd::interp::{CheckOptions, FiniteInterpretation};
use dlfd::parse::{parse_axiom, parse_concept, parse_terminology};
use dlfd::print::{print_concept, render_terminology};
use dlfd::tiling::{
    build_torus_witness, double_tiling, reduce_to_terminology, solve_torus_upto, ReductionMode,
    TilingInstance,
};
use dlfd::transform::desugar_asymmetric_pfds;

const ONE_TILE: &str = r#"{"tiles": ["t"], "H": [["t","t"]], "V": [["t","t"]], "t0": "t"}"#;
const AB_SWAP: &str =
    r#"{"tiles": ["a","b"], "H": [["a","b"],["b","a"]], "V": [["a","a"],["b","b"]], "t0": "a"}"#;
const NO_HORIZONTAL: &str = r#"{"tiles": ["t"], "H": [], "V": [["t","t"]], "t0": "t"}"#;

/// Fails the enclosing `Result`-returning function with a formatted message.
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Runs one acceptance body under a wall-clock budget and prints its verdict.
fn run(label: &str, budget: Duration, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let verdict = if outcome.is_ok() && elapsed <= budget {
        "pass"
    } else {
        "fail"
    };
    match &outcome {
        Ok(detail) => println!(
            "acceptance {label}: {verdict} — {detail} in {elapsed:.2?} (budget {budget:?})"
        ),
        Err(reason) => println!("acceptance {label}: {verdict} — {reason}"),
    }
    let detail = outcome.unwrap_or_else(|reason| panic!("{label}: {reason}"));
    assert!(
        elapsed <= budget,
        "{label} blew its {budget:?} budget: {elapsed:?} ({detail})"
    );
}

fn random_interpretation(rng: &mut ChaCha8Rng, n: usize) -> FiniteInterpretation {
    let features: BTreeMap<_, _> = ["f", "g"]
        .into_iter()
        .map(|name| {
            let table: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            (FeatureName::new(name).unwrap(), table)
        })
        .collect();
    let concepts: BTreeMap<_, _> = ["A", "B"]
        .into_iter()
        .map(|name| {
            let extent: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            (ConceptName::new(name).unwrap(), extent)
        })
        .collect();
    FiniteInterpretation::new(n, features, concepts).expect("random interpretations are well-formed")
}

/// A path of length 0..=2 over the features of [`random_interpretation`].
fn random_path(rng: &mut ChaCha8Rng) -> PathExpr {
    let len = rng.gen_range(0..=2);
    let feats = (0..len)
        .map(|_| FeatureName::new(["f", "g"][rng.gen_range(0..2)]).unwrap())
        .collect();
    PathExpr::new(feats)
}

/// A dependency scope that is always evaluable in a random interpretation.
fn random_scope(rng: &mut ChaCha8Rng) -> Concept {
    match rng.gen_range(0..5) {
        0 => Concept::prim("A"),
        1 => Concept::prim("B"),
        2 => Concept::and(Concept::prim("A"), Concept::prim("B")),
        3 => Concept::not(Concept::prim("A")),
        _ => Concept::Top,
    }
}

#[test]
fn semantics_conformance_on_random_interpretations() {
    run("1 (semantics conformance)", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xD1FD_0001);
        let a = Concept::prim("A");
        let b = Concept::prim("B");
        let f = FeatureName::new("f").unwrap();
        const ROUNDS: usize = 1000;
        for round in 0..ROUNDS {
            let n = rng.gen_range(1..=5);
            let i = random_interpretation(&mut rng, n);
            let domain: BTreeSet<usize> = (0..n).collect();
            let err = |e: dlfd::interp::EvalError| format!("round {round}: {e}");
            let ea = i.eval_concept(&a).map_err(err)?;
            let eb = i.eval_concept(&b).map_err(err)?;

            // Intersection is pointwise set intersection.
            let both = i
                .eval_concept(&Concept::and(a.clone(), b.clone()))
                .map_err(err)?;
            ensure!(both == &ea & &eb, "round {round}: intersection mismatch");

            // Complement is the difference from the whole domain.
            let not_a = i.eval_concept(&Concept::not(a.clone())).map_err(err)?;
            ensure!(not_a == &domain - &ea, "round {round}: complement mismatch");

            // Value restriction is the feature preimage of the body.
            let under_f = i
                .eval_concept(&Concept::all(f.clone(), a.clone()))
                .map_err(err)?;
            let table = i.feature_table(&f).unwrap();
            let preimage: BTreeSet<usize> = (0..n).filter(|&x| ea.contains(&table[x])).collect();
            ensure!(
                under_f == preimage,
                "round {round}: value-restriction mismatch"
            );

            // A dependency's extent matches a from-scratch evaluation that
            // skips the reflexive witness entirely: comparing an element with
            // itself can never matter.
            let scope = random_scope(&mut rng);
            let k = rng.gen_range(1..=2);
            let agree: Vec<PathExpr> = (0..k).map(|_| random_path(&mut rng)).collect();
            let conclude = random_path(&mut rng);
            let pfd = RhsConcept::pfd(scope.clone(), agree.clone(), conclude.clone());
            let got = i.eval_rhs(&pfd).map_err(err)?;
            let scope_extent = i.eval_concept(&scope).map_err(err)?;
            let irreflexive: BTreeSet<usize> = (0..n)
                .filter(|&x| {
                    scope_extent.iter().all(|&y| {
                        y == x
                            || !agree
                                .iter()
                                .all(|p| i.eval_path(p, x).unwrap() == i.eval_path(p, y).unwrap())
                            || i.eval_path(&conclude, x).unwrap()
                                == i.eval_path(&conclude, y).unwrap()
                    })
                })
                .collect();
            ensure!(
                got == irreflexive,
                "round {round}: dependency clause disagrees with the reflexive-free evaluation"
            );

            // Anti-monotonicity: shrinking the scope can only grow the extent.
            let narrower = Concept::and(scope.clone(), random_scope(&mut rng));
            let narrowed = i
                .eval_rhs(&RhsConcept::pfd(narrower, agree.clone(), conclude.clone()))
                .map_err(err)?;
            ensure!(
                got.is_subset(&narrowed),
                "round {round}: anti-monotonicity violated"
            );

            // An empty scope imposes nothing on anybody.
            let vacuous = i
                .eval_rhs(&RhsConcept::pfd(Concept::Bot, agree.clone(), conclude))
                .map_err(err)?;
            ensure!(
                vacuous == domain,
                "round {round}: an empty scope should yield the whole domain"
            );

            // Agreement on a path trivially forces agreement on that path.
            let p = random_path(&mut rng);
            let reflexive = i
                .eval_rhs(&RhsConcept::pfd(
                    random_scope(&mut rng),
                    vec![p.clone()],
                    p,
                ))
                .map_err(err)?;
            ensure!(
                reflexive == domain,
                "round {round}: fd(D : p -> p) should be the whole domain"
            );
        }
        Ok(format!(
            "{ROUNDS} random interpretations (n <= 5), 7 clause properties each"
        ))
    });
}

/// A concept of bounded depth over the two-concept, one-feature signature.
fn random_small_concept(rng: &mut ChaCha8Rng, depth: usize) -> Concept {
    let choices = if depth == 0 { 4 } else { 8 };
    match rng.gen_range(0..choices) {
        0 => Concept::prim("A"),
        1 => Concept::prim("B"),
        2 => Concept::Top,
        3 => Concept::Bot,
        4 => Concept::and(
            random_small_concept(rng, depth - 1),
            random_small_concept(rng, depth - 1),
        ),
        5 => Concept::or(
            random_small_concept(rng, depth - 1),
            random_small_concept(rng, depth - 1),
        ),
        6 => Concept::not(random_small_concept(rng, depth - 1)),
        _ => Concept::all_str("f", random_small_concept(rng, depth - 1)),
    }
}

/// A path of length 0..=2 over the lone feature `f`.
fn random_f_path(rng: &mut ChaCha8Rng) -> PathExpr {
    let len = rng.gen_range(0..=2);
    PathExpr::new(vec![FeatureName::new("f").unwrap(); len])
}

fn random_small_terminology(rng: &mut ChaCha8Rng) -> Terminology {
    let count = rng.gen_range(1..=3);
    let axioms = (0..count)
        .map(|_| {
            let lhs = random_small_concept(rng, 2);
            if rng.gen_bool(0.3) {
                let k = rng.gen_range(1..=2);
                let agree = (0..k).map(|_| random_f_path(rng)).collect();
                Axiom::new(
                    lhs,
                    RhsConcept::pfd(random_small_concept(rng, 1), agree, random_f_path(rng)),
                )
            } else {
                Axiom::plain(lhs, random_small_concept(rng, 2))
            }
        })
        .collect();
    Terminology::new(axioms)
}

#[test]
fn finder_agrees_with_the_exhaustive_oracle() {
    run(
        "2 (finder vs. enumeration oracle)",
        Duration::from_secs(300),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0xD1FD_0002);
            let bounds = SearchBounds::sizes(1, 3);
            let opts = CheckOptions::default();
            const CASES: usize = 500;
            let mut satisfiable = 0usize;
            for case in 0..CASES {
                let t = random_small_terminology(&mut rng);
                let goal = random_small_concept(&mut rng, 2);
                let report =
                    find_model(&t, &goal, &bounds).map_err(|e| format!("case {case}: {e}"))?;
                let found = match &report.outcome {
                    SearchOutcome::ModelFound { size, model } => {
                        // The returned model must itself pass the evaluator.
                        let check = model
                            .check_terminology(&t, &opts)
                            .map_err(|e| format!("case {case}: {e}"))?;
                        ensure!(
                            check.satisfied,
                            "case {case}: reported model violates its terminology\n{}",
                            render_terminology(&t)
                        );
                        let extent = model
                            .eval_concept_with(&goal, &opts)
                            .map_err(|e| format!("case {case}: {e}"))?;
                        ensure!(
                            !extent.is_empty(),
                            "case {case}: reported model has an empty goal"
                        );
                        ensure!(*size == model.n(), "case {case}: size mismatch in report");
                        true
                    }
                    SearchOutcome::NoModelUpTo(max) => {
                        ensure!(*max == 3, "case {case}: wrong exhaustion bound {max}");
                        false
                    }
                    SearchOutcome::ResourceLimit { .. } => {
                        return Err(format!("case {case}: unexpected resource limit"));
                    }
                };
                let mut oracle = false;
                for n in 1..=3 {
                    if !enumerate_all(&t, Some(&goal), n)
                        .map_err(|e| format!("case {case}: {e}"))?
                        .is_empty()
                    {
                        oracle = true;
                        break;
                    }
                }
                ensure!(
                    found == oracle,
                    "case {case}: finder said {found}, oracle said {oracle} for goal {} under\n{}",
                    print_concept(&goal),
                    render_terminology(&t)
                );
                satisfiable += usize::from(found);
            }
            ensure!(
                satisfiable > 0 && satisfiable < CASES,
                "degenerate corpus: {satisfiable}/{CASES} satisfiable"
            );
            Ok(format!(
                "{CASES} random terminologies, sizes <= 3; {satisfiable} satisfiable, both routes agree everywhere"
            ))
        },
    );
}

#[test]
fn desugared_triples_simulate_asymmetric_dependencies() {
    run(
        "3 (asymmetric-dependency simulation)",
        Duration::from_secs(120),
        || {
            let source = parse_terminology("A <= fd(B : f -> h);").map_err(|e| e.to_string())?;
            let triple = desugar_asymmetric_pfds(&source);
            let rendered = render_terminology(&triple);
            ensure!(
                rendered == "A <= _u_A_B;\nB <= _u_A_B;\n_u_A_B <= fd(_u_A_B : f -> h);\n",
                "unexpected desugaring:\n{rendered}"
            );
            let forward = parse_axiom("A <= fd(B : f -> h);").map_err(|e| e.to_string())?;
            let backward = parse_axiom("B <= fd(A : f -> h);").map_err(|e| e.to_string())?;
            let opts = CheckOptions::default();
            let mut models = 0usize;
            for n in 1..=3 {
                for m in enumerate_all(&triple, None, n).map_err(|e| e.to_string())? {
                    models += 1;
                    for (axiom, direction) in [(&forward, "A-to-B"), (&backward, "B-to-A")] {
                        let outcome = m.check_axiom(axiom, &opts).map_err(|e| e.to_string())?;
                        ensure!(
                            outcome.is_satisfied(),
                            "the {direction} dependency fails on a size-{n} model of the triple: {m:?}"
                        );
                    }
                }
            }
            ensure!(models > 0, "the triple admitted no models at all");
            Ok(format!(
                "{models} exhaustive models over {{A, B, _u_A_B}} x {{f, h}} (n <= 3); both induced dependencies hold on every one"
            ))
        },
    );
}

#[test]
fn tiling_pipeline_builds_checked_witnesses() {
    run(
        "4 (tiling pipeline, positive)",
        Duration::from_secs(10),
        || {
            let mut details = Vec::new();
            for (name, json) in [("one-tile", ONE_TILE), ("alternating", AB_SWAP)] {
                let inst = TilingInstance::from_json_str(json).map_err(|e| e.to_string())?;
                let mut s = solve_torus_upto(&inst.problem, &inst.t0, 4)
                    .map_err(|e| e.to_string())?
                    .ok_or_else(|| format!("{name}: expected a torus tiling within 4x4"))?;
                if s.width() % 2 == 1 || s.height() % 2 == 1 {
                    s = double_tiling(&s);
                }
                let w = build_torus_witness(&inst.problem, &s).map_err(|e| e.to_string())?;
                ensure!(
                    w.n() == 4 * s.width() * s.height(),
                    "{name}: witness should have exactly 4wh = {} elements, got {}",
                    4 * s.width() * s.height(),
                    w.n()
                );
                let opts = CheckOptions::default();
                for mode in [ReductionMode::Direct, ReductionMode::Desugared] {
                    let (t, goal) = reduce_to_terminology(&inst.problem, &inst.t0, mode)
                        .map_err(|e| e.to_string())?;
                    let report = w.check_terminology(&t, &opts).map_err(|e| e.to_string())?;
                    ensure!(
                        report.satisfied,
                        "{name}/{mode}: witness violates {} axioms",
                        report.violations().count()
                    );
                    let extent = w.eval_concept_with(&goal, &opts).map_err(|e| e.to_string())?;
                    ensure!(
                        !extent.is_empty(),
                        "{name}/{mode}: the goal evaluates to the empty set"
                    );
                }
                details.push(format!(
                    "{name}: {}x{} torus -> {} elements, both modes satisfied",
                    s.width(),
                    s.height(),
                    w.n()
                ));
            }
            Ok(details.join("; "))
        },
    );
}

#[test]
fn unsolvable_instance_yields_bounded_negative_evidence() {
    run(
        "5 (bounded negative evidence)",
        Duration::from_secs(600),
        || {
            let inst = TilingInstance::from_json_str(NO_HORIZONTAL).map_err(|e| e.to_string())?;
            let solved =
                solve_torus_upto(&inst.problem, &inst.t0, 4).map_err(|e| e.to_string())?;
            ensure!(
                solved.is_none(),
                "the horizontal-free instance should admit no torus up to 4x4"
            );
            let (t, goal) =
                reduce_to_terminology(&inst.problem, &inst.t0, ReductionMode::Direct)
                    .map_err(|e| e.to_string())?;
            let query = Axiom::plain(goal, Concept::Bot);
            let report = refute_bounded(&t, &query, &SearchBounds::sizes(1, 6))
                .map_err(|e| e.to_string())?;
            ensure!(
                report.outcome == RefutationOutcome::NoCounterexampleUpTo(6),
                "expected exhaustion at size 6, got {:?}",
                report.outcome
            );
            ensure!(
                report.note.contains("evidence, not a proof"),
                "the report must label itself as bounded evidence"
            );
            ensure!(
                report.sizes.len() == 6,
                "expected one statistics row per size, got {}",
                report.sizes.len()
            );
            Ok(format!(
                "no torus up to 4x4; no countermodel up to size 6 under {} axioms; report flags bounded evidence",
                t.len()
            ))
        },
    );
}

/// The typing-plus-injectivity block that forces `|X| = |A|` and an incoming
/// `f` edge into every `X` element in any finite model.
const CORE_BLOCK: &str =
    "X <= all a . A;\nX <= fd(X : a -> id);\nA <= all f . X;\nA <= fd(A : f -> id);\n";

fn incoming_feature_holds(m: &FiniteInterpretation) -> Result<(), String> {
    let x = ConceptName::new("X").unwrap();
    let a = ConceptName::new("A").unwrap();
    let f = FeatureName::new("f").unwrap();
    let xs = m
        .concept_extent(&x)
        .ok_or_else(|| "model does not declare X".to_string())?;
    let az = m
        .concept_extent(&a)
        .ok_or_else(|| "model does not declare A".to_string())?;
    ensure!(
        xs.len() == az.len(),
        "|X| = {} but |A| = {}",
        xs.len(),
        az.len()
    );
    let table = m
        .feature_table(&f)
        .ok_or_else(|| "model does not declare f".to_string())?;
    for &e in xs {
        ensure!(
            az.iter().any(|&src| table[src] == e),
            "X element {e} has no incoming f edge from A"
        );
    }
    Ok(())
}

/// A concept of bounded depth over the block's signature plus fresh names.
fn random_block_concept(rng: &mut ChaCha8Rng, depth: usize) -> Concept {
    let choices = if depth == 0 { 5 } else { 9 };
    match rng.gen_range(0..choices) {
        0 => Concept::prim("X"),
        1 => Concept::prim("A"),
        2 => Concept::prim("P"),
        3 => Concept::Top,
        4 => Concept::Bot,
        5 => Concept::and(
            random_block_concept(rng, depth - 1),
            random_block_concept(rng, depth - 1),
        ),
        6 => Concept::or(
            random_block_concept(rng, depth - 1),
            random_block_concept(rng, depth - 1),
        ),
        7 => Concept::not(random_block_concept(rng, depth - 1)),
        _ => {
            let f = FeatureName::new(["a", "f", "g"][rng.gen_range(0..3)]).unwrap();
            Concept::all(f, random_block_concept(rng, depth - 1))
        }
    }
}

#[test]
fn forced_cardinalities_hold_on_every_found_model() {
    run("6 (forced incoming feature)", Duration::from_secs(120), || {
        let block = parse_terminology(CORE_BLOCK).map_err(|e| e.to_string())?;
        let mut checked = 0usize;

        // Fixed goals over the block alone.
        for goal_text in [
            "X",
            "A",
            "X & A",
            "X | A",
            "X & ~A",
            "all f . X",
            "all a . (A & X)",
        ] {
            let goal = parse_concept(goal_text).map_err(|e| e.to_string())?;
            let report = find_model(&block, &goal, &SearchBounds::sizes(1, 5))
                .map_err(|e| e.to_string())?;
            if let SearchOutcome::ModelFound { model, .. } = report.outcome {
                incoming_feature_holds(&model).map_err(|e| format!("goal {goal_text}: {e}"))?;
                checked += 1;
            }
        }

        // The block plus random extra axioms and goals.
        let mut rng = ChaCha8Rng::seed_from_u64(0xD1FD_0006);
        for case in 0..120 {
            let mut axioms = block.axioms.clone();
            for _ in 0..rng.gen_range(0..=2) {
                axioms.push(Axiom::plain(
                    random_block_concept(&mut rng, 2),
                    random_block_concept(&mut rng, 2),
                ));
            }
            let t = Terminology::new(axioms);
            let goal = random_block_concept(&mut rng, 2);
            let report =
                find_model(&t, &goal, &SearchBounds::sizes(1, 4)).map_err(|e| e.to_string())?;
            if let SearchOutcome::ModelFound { model, .. } = report.outcome {
                incoming_feature_holds(&model)
                    .map_err(|e| format!("case {case}: {e}\n{}", render_terminology(&t)))?;
                checked += 1;
            }
        }

        // The generated terminologies contain the same block (for every edge
        // class); models found for them must obey it too.
        let inst = TilingInstance::from_json_str(ONE_TILE).map_err(|e| e.to_string())?;
        for mode in [ReductionMode::Direct, ReductionMode::Desugared] {
            let (t, goal) = reduce_to_terminology(&inst.problem, &inst.t0, mode)
                .map_err(|e| e.to_string())?;
            let report =
                find_model(&t, &goal, &SearchBounds::sizes(1, 8)).map_err(|e| e.to_string())?;
            match report.outcome {
                SearchOutcome::ModelFound { model, size } => {
                    ensure!(
                        size == 4,
                        "{mode}: expected the minimal 4-element model, found size {size}"
                    );
                    incoming_feature_holds(&model).map_err(|e| format!("{mode}: {e}"))?;
                    checked += 1;
                }
                other => {
                    return Err(format!("{mode}: expected a model within size 8, got {other:?}"))
                }
            }
        }

        ensure!(checked >= 40, "corpus too thin: only {checked} models found");
        Ok(format!(
            "{checked} finder models checked; zero cardinality or incoming-feature violations"
        ))
    });
}

#[test]
fn rendering_is_deterministic_and_round_trips() {
    run(
        "7 (determinism and round-trip)",
        Duration::from_secs(60),
        || {
            // Generated terminologies: byte-identical across runs and under
            // a parse/render cycle.
            let mut corpus: Vec<(String, String)> = Vec::new();
            for (name, json) in [("one-tile", ONE_TILE), ("alternating", AB_SWAP)] {
                let inst = TilingInstance::from_json_str(json).map_err(|e| e.to_string())?;
                for mode in [ReductionMode::Direct, ReductionMode::Desugared] {
                    let once = render_terminology(
                        &reduce_to_terminology(&inst.problem, &inst.t0, mode)
                            .map_err(|e| e.to_string())?
                            .0,
                    );
                    let again = render_terminology(
                        &reduce_to_terminology(&inst.problem, &inst.t0, mode)
                            .map_err(|e| e.to_string())?
                            .0,
                    );
                    ensure!(once == again, "{name}/{mode}: two runs rendered differently");
                    corpus.push((format!("{name}/{mode}"), once));
                }
            }
            for (label, text) in &corpus {
                let parsed = parse_terminology(text).map_err(|e| format!("{label}: {e}"))?;
                let rendered = render_terminology(&parsed);
                ensure!(
                    rendered == *text,
                    "{label}: parse/render changed the generated file"
                );
            }

            // Hand-written axioms: normalize once, then the canonical form
            // must be a fixed point of parse/render with an unchanged tree.
            let mut normalized = 0usize;
            for text in [
                "A <= B;",
                "Top <= A | B & ~C;",
                "A & all f . (B | C) <= Bot;",
                "A <= fd(B : f -> id);",
                "A <= fd(A & ~B : f.g, id -> g.f);",
                "all f . all g . A <= fd(Top : g -> f.f);",
                "~(A | B) <= all f . ~A & (B | Top);",
            ] {
                let parsed = parse_terminology(text).map_err(|e| format!("{text}: {e}"))?;
                let canonical = render_terminology(&parsed);
                let reparsed =
                    parse_terminology(&canonical).map_err(|e| format!("{canonical}: {e}"))?;
                ensure!(
                    reparsed == parsed,
                    "normalizing {text:?} changed the tree: {canonical:?}"
                );
                ensure!(
                    render_terminology(&reparsed) == canonical,
                    "canonical form of {text:?} is not a parse/render fixed point"
                );
                normalized += 1;
            }
            Ok(format!(
                "4 generated terminologies byte-stable and round-tripping; {normalized} hand-written axioms reach a canonical fixed point"
            ))
        },
    );
}
