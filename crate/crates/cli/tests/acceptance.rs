//! Acceptance suite: one PASS/FAIL line per criterion, with the time taken
//! against the criterion's limit. Exits non-zero if any criterion fails.
//!
//! Thresholds are fixed here and are not tuned to make results pass.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use condasp::engine::{check_entailment, prefers, weight_of_formula, Preference, PreferentialModel};
use condasp::fixtures;
use condasp::ground::ground;
use condasp::klm::{
    check_postulates, entails, equivalent, equivalent_variant, generate_instance, instance_atoms, random_combination, random_ground_program, sample_equivalent,
    violates_rm, InstanceSeed, Postulate, PostulateReport,
};
use condasp::model::{Atom, Formula};
use condasp::parser::parse_formula;
use condasp::solver::{enumerate, normalize, oracle_enumerate};
use condasp_cli::{exit, run};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

/// Number, name, time limit and check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name).display().to_string()
}

fn cli_json(args: &[&str]) -> (i32, Value) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("condasp").chain(args.iter().copied()).chain(["--format", "json"]);
    let code = run(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn subjects(m: &PreferentialModel) -> Vec<Atom> {
    m.kb().weighted_subjects().into_iter().collect()
}

/***** 1 *****/
fn student_employee_weights() -> Outcome {
    let (code, v) = cli_json(&["model", "--program", &fixture("students.lp"), "--kb", &fixture("students.kb")]);
    ensure(code == exit::OK, || format!("model exited {code}"))?;
    let worlds = v["worlds"].as_array().ok_or("no worlds")?;
    ensure(worlds.len() == 2, || format!("{} answer sets, expected 2", worlds.len()))?;
    let has = |i: usize, a: &str| worlds[i].as_array().unwrap().iter().any(|x| x == a);
    let s1 = (0..2).find(|&i| has(i, "young") && has(i, "has_classes")).ok_or("S1 missing")?;
    let s2 = (0..2).find(|&i| has(i, "has_boss")).ok_or("S2 missing")?;
    let w = |subject: &str, i: usize| v["weights"][subject][i].as_i64();
    let got = [w("student", s1), w("student", s2), w("employee", s1), w("employee", s2)];
    ensure(got == [Some(170), Some(-80), Some(-120), Some(100)], || format!("weights {got:?}"))?;

    let m = condasp::build_model(&fixtures::students_program(), &fixtures::students_kb()).map_err(|e| e.to_string())?;
    let (a1, a2) = (&m.worlds()[s1], &m.worlds()[s2]);
    let student = prefers(&m, &Formula::prop("student"), a1, a2).map_err(|e| e.to_string())?;
    let employee = prefers(&m, &Formula::prop("employee"), a2, a1).map_err(|e| e.to_string())?;
    ensure(student == Preference::StrictlyLess && employee == Preference::StrictlyLess, || format!("prefers: {student:?}, {employee:?}"))?;
    Ok("W_student = 170/-80, W_employee = -120/100; S1 <_student S2, S2 <_employee S1".into())
}

/***** 2 *****/
fn cinema_entailments() -> Outcome {
    let queries = [
        "T(happy_sat(mary)) -> go_to_cinema(mary)",
        "T(happy_sat(mary)) -> ~T(happy_sat(bob))",
        "T(happy_sat(bob)) -> ~T(happy_sat(mary))",
        "T(happy_sat(mary) & happy_sat(bob)) -> ~T(happy_sat(mary))",
        "T(happy_sat(mary) & happy_sat(bob)) -> T(happy_sat(bob))",
    ];
    let (program, kb) = (fixture("cinema.lp"), fixture("cinema.kb"));
    for q in queries {
        let (code, v) = cli_json(&["query", "--program", &program, "--kb", &kb, "--query", q]);
        ensure(code == exit::OK && v["entailed"] == true, || format!("{q}: exit {code}, counterexample {}", v["counterexample"]))?;
    }
    let (_, v) = cli_json(&["query", "--program", &program, "--kb", &kb, "--query", queries[3]]);
    let both = v["typ_witnesses"]
        .as_array()
        .and_then(|ws| ws.iter().find(|w| w["argument"] == "happy_sat(mary) & happy_sat(bob)"))
        .ok_or("no witness for T(happy_sat(mary) & happy_sat(bob))")?;
    let typical = both["typical"].as_array().ok_or("no typical worlds")?;
    ensure(!typical.is_empty(), || "no typical worlds".into())?;
    for w in typical {
        let atoms = w.as_array().unwrap();
        for a in ["go_for_pizza(mary)", "go_for_pizza(bob)"] {
            ensure(atoms.iter().any(|x| x == a), || format!("typical world without {a}"))?;
        }
    }
    Ok(format!("5/5 entailed; {} typical world(s) for both happy, all with pizza for both", typical.len()))
}

/***** 3 *****/
fn solver_differential() -> Outcome {
    const PROGRAMS: u64 = 500;
    let mut consistent = 0;
    for seed in 0..PROGRAMS {
        let mut rng = ChaCha8Rng::seed_from_u64(0xd1ff_0000 + seed);
        let atoms = instance_atoms(rng.gen_range(1..=14));
        let rules = rng.gen_range(1..=20);
        let p = random_ground_program(&mut rng, &atoms, rules);
        let np = normalize(&ground(&p).map_err(|e| e.to_string())?);
        let (fast, slow) = (enumerate(&np), oracle_enumerate(&np).map_err(|e| e.to_string())?);
        ensure(fast == slow, || format!("seed {seed}: search found {} answer sets, oracle {}\n{p}", fast.len(), slow.len()))?;
        consistent += usize::from(!slow.is_empty());
    }
    Ok(format!("{PROGRAMS} programs (<= 14 atoms) agree; {consistent} consistent"))
}

/***** 4 *****/
fn weight_identities() -> Outcome {
    use Formula as F;
    const MODELS: u64 = 200;
    let mut checks = 0usize;
    for seed in 0..MODELS {
        let inst = generate_instance(&InstanceSeed::new(0x4000 + seed)).map_err(|e| e.to_string())?;
        let m = &inst.model;
        let atoms = subjects(m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_combination(&mut rng, &atoms, 2), random_combination(&mut rng, &atoms, 2), random_combination(&mut rng, &atoms, 2));
        let identities = [
            ("double negation", F::not(F::not(a.clone())), a.clone()),
            ("De Morgan (and)", F::not(F::and(a.clone(), b.clone())), F::or(F::not(a.clone()), F::not(b.clone()))),
            ("De Morgan (or)", F::not(F::or(a.clone(), b.clone())), F::and(F::not(a.clone()), F::not(b.clone()))),
            ("commutativity (or)", F::or(a.clone(), b.clone()), F::or(b.clone(), a.clone())),
            ("commutativity (and)", F::and(a.clone(), b.clone()), F::and(b.clone(), a.clone())),
            ("idempotence (or)", F::or(a.clone(), a.clone()), a.clone()),
            ("idempotence (and)", F::and(a.clone(), a.clone()), a.clone()),
            ("associativity (or)", F::or(F::or(a.clone(), b.clone()), c.clone()), F::or(a.clone(), F::or(b.clone(), c.clone()))),
            ("associativity (and)", F::and(F::and(a.clone(), b.clone()), c.clone()), F::and(a.clone(), F::and(b.clone(), c.clone()))),
        ];
        for s in m.worlds() {
            for (name, l, r) in &identities {
                let (x, y) = (weight_of_formula(m, l, s).map_err(|e| e.to_string())?, weight_of_formula(m, r, s).map_err(|e| e.to_string())?);
                ensure(x == y, || format!("{name} fails on instance {seed}: W({l}) = {x}, W({r}) = {y}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{MODELS} models, {checks} pointwise identity checks exact"))
}

/***** 5 *****/
fn equivalence_lemma() -> Outcome {
    const PAIRS: u64 = 200;
    let mut bad_rewrite = Vec::new();
    let mut bad_sampled = Vec::new();
    let mut sampled = 0;
    for seed in 0..PAIRS {
        let inst = generate_instance(&InstanceSeed::new(0x5000 + seed)).map_err(|e| e.to_string())?;
        let m = &inst.model;
        let atoms = subjects(m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // even pairs: an unrestricted truth-table-equivalent sample; odd
        // pairs (and samples that find nothing): a rewrite variant
        let pair = (0..20).find_map(|_| {
            let a = random_combination(&mut rng, &atoms, 2);
            if seed % 2 == 0 {
                sample_equivalent(&mut rng, &a, &atoms, 400).map(|b| (a, b, true))
            } else {
                let steps = rng.gen_range(1..=5);
                let b = equivalent_variant(&mut rng, &a, &atoms, steps);
                Some((a, b, false))
            }
        });
        let (a, b, is_sample) = match pair {
            Some(p) => p,
            None => {
                let a = random_combination(&mut rng, &atoms, 2);
                let b = equivalent_variant(&mut rng, &a, &atoms, 3);
                (a, b, false)
            },
        };
        ensure(equivalent(&a, &b), || format!("pair {seed} is not equivalent: {a} / {b}"))?;
        sampled += usize::from(is_sample);
        let mut agree = true;
        for s1 in m.worlds() {
            agree &= weight_of_formula(m, &a, s1).ok() == weight_of_formula(m, &b, s1).ok();
            for s2 in m.worlds() {
                agree &= prefers(m, &a, s1, s2).ok() == prefers(m, &b, s1, s2).ok();
            }
        }
        if !agree {
            let bad = if is_sample { &mut bad_sampled } else { &mut bad_rewrite };
            bad.push(format!("{a}  vs  {b}"));
        }
    }
    let total = bad_rewrite.len() + bad_sampled.len();
    let summary = format!(
        "{PAIRS} equivalent pairs ({sampled} sampled by truth table, {} by rewriting): {total} disagree ({} sampled, {} rewritten)",
        PAIRS as usize - sampled,
        bad_sampled.len(),
        bad_rewrite.len()
    );
    match bad_sampled.first().or(bad_rewrite.first()) {
        None => Ok(summary),
        Some(example) => Err(format!("{summary}; e.g. {example}")),
    }
}

/***** 6 *****/
fn klm_postulates() -> Outcome {
    const SEEDS: u64 = 200;
    const TRIALS: usize = 50;
    let mut total = PostulateReport::default();
    let mut first: Option<(u64, String)> = None;
    for seed in 0..SEEDS {
        let inst = generate_instance(&InstanceSeed::new(seed)).map_err(|e| e.to_string())?;
        let report = check_postulates(&inst.model, TRIALS, seed).map_err(|e| e.to_string())?;
        if first.is_none() {
            first = report.violations.first().map(|v| (seed, v.to_string()));
        }
        total.merge(report);
    }
    let counts: Vec<String> =
        Postulate::ALL.iter().map(|&p| format!("{p} {}/{}", total.violation_count(p), total.exercised.get(&p).copied().unwrap_or(0))).collect();
    let summary = format!("{SEEDS} instances x {TRIALS} trials; violations/exercised: {}", counts.join(", "));
    match first {
        None => Ok(summary),
        Some((seed, v)) => Err(format!("{summary}; first (instance {seed}): {v}")),
    }
}

/***** 7 *****/
fn rm_failure() -> Outcome {
    let m = fixtures::birds_model();
    let f = |s: &str| parse_formula(s).unwrap();
    let (a, b, c) = (f("bird"), f("bw"), f("fly"));
    let e = |x: &Formula, y: &Formula| entails(&m, x, y).map_err(|e| e.to_string());
    ensure(e(&a, &c)?, || "T(bird) -> fly is not entailed".into())?;
    ensure(!e(&a, &Formula::not(b.clone()))?, || "T(bird) -> ~bw is entailed".into())?;
    ensure(!e(&Formula::and(a.clone(), b.clone()), &c)?, || "T(bird & bw) -> fly is entailed".into())?;
    ensure(violates_rm(&m, &a, &b, &c).map_err(|e| e.to_string())?, || "re-check disagrees".into())?;
    Ok("T(bird) -> fly; not T(bird) -> ~bw; not T(bird & bw) -> fly".into())
}

/***** 8 *****/
fn trivial_antecedent() -> Outcome {
    let (program, kb) = (fixture("cinema.lp"), fixture("cinema.kb"));
    let cinema = [
        "T(happy_sat(mary) & ~happy_sat(mary)) -> stay_at_home(mary)",
        "T(happy_sat(bob) & housekeeping(bob)) -> #false",
        "T(go_to_cinema(mary) & stay_at_home(mary)) -> go_to_cinema(ada)",
    ];
    for q in cinema {
        let (code, v) = cli_json(&["query", "--program", &program, "--kb", &kb, "--query", q]);
        ensure(code == exit::OK && v["entailed"] == true && v["counterexample"].is_null(), || format!("{q}: exit {code}"))?;
    }
    let mut random = 0;
    for seed in 0..200 {
        let inst = generate_instance(&InstanceSeed::new(0x8000 + seed)).map_err(|e| e.to_string())?;
        let m = &inst.model;
        let atoms = subjects(m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut antecedents = vec![{
            let a = random_combination(&mut rng, &atoms, 1);
            Formula::and(a.clone(), Formula::not(a))
        }];
        // subject combinations that happen to be false in every world
        antecedents.extend(
            (0..20).map(|_| random_combination(&mut rng, &atoms, 2)).filter(|a| m.worlds().iter().all(|w| !condasp::model::eval_classical(w, a).unwrap())),
        );
        for a in antecedents {
            let rhs = if rng.gen_bool(0.5) { Formula::Bottom } else { random_combination(&mut rng, &instance_atoms(6), 2) };
            let v = check_entailment(m, &Formula::implies(Formula::typ(a.clone()), rhs)).map_err(|e| e.to_string())?;
            ensure(v.entailed && v.counterexample.is_none(), || format!("instance {seed}: T({a}) not trivially entailed"))?;
            random += 1;
        }
    }
    Ok(format!("{} cinema queries and {random} random queries with empty antecedents entailed", cinema.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "student/employee weights", Duration::from_secs(1), student_employee_weights),
        (2, "cinema entailments", Duration::from_secs(10), cinema_entailments),
        (3, "solver differential", Duration::from_secs(60), solver_differential),
        (4, "weight-algebra identities", Duration::from_secs(30), weight_identities),
        (5, "equivalence lemma", Duration::from_secs(30), equivalence_lemma),
        (6, "KLM postulates", Duration::from_secs(300), klm_postulates),
        (7, "RM failure", Duration::from_secs(1), rm_failure),
        (8, "trivial antecedent", Duration::from_secs(60), trivial_antecedent),
    ];
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the time limit")),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(status == "FAIL");
        println!("criterion {n} [{name}]: {status} ({:.2}s of {}s) - {detail}", took.as_secs_f64(), limit.as_secs());
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
