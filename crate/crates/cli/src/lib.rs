//! The `condasp` command line: solve programs, print weight tables, check
//! typicality queries and run the KLM property harness.
//!
//! Exit codes are the machine-facing contract; see [`exit`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use condasp::engine::{check_entailment, EngineError, PreferenceKey, PreferentialModel, TypWitness};
use condasp::ground::{ground, simplify, GroundError};
use condasp::klm::{check_postulates, generate_instance, search_rm_counterexample, InstanceSeed, KlmError, Postulate, Violation};
use condasp::model::{AnswerSet, Atom, ConditionalKB, Formula, GroundProgram};
use condasp::parser::{parse_kb_named, parse_program_named, parse_query};
use condasp::solver::{enumerate_limited, normalize, SolverError};

pub mod exit {
    pub const OK: i32 = 0;
    pub const INCONSISTENT: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const KB: i32 = 3;
    pub const RANKED_COMBINATION: i32 = 4;
    pub const TOO_MANY_ANSWER_SETS: i32 = 5;
    pub const OVERFLOW: i32 = 6;
    pub const NOT_ENTAILED: i32 = 10;
    pub const POSTULATE_VIOLATIONS: i32 = 12;
}

const JSON_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "condasp", version, about = "Conditional reasoning over answer set programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every answer set of a program.
    Solve(SolveArgs),
    /// Print the weight of every answer set for every distinguished atom.
    Model(ModelArgs),
    /// Decide whether a typicality implication is entailed.
    Query(QueryArgs),
    /// Check the KLM postulates on random instances and search for a
    /// Rational Monotonicity failure.
    VerifyKlm(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ProgramArgs {
    #[arg(long, value_name = "PATH")]
    pub program: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Print the ground program handed to the solver on stderr.
    #[arg(long)]
    pub dump_ground: bool,
    /// Give up (exit 5) when the program has more answer sets than this.
    #[arg(long, value_name = "N")]
    pub max_answer_sets: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub program: ProgramArgs,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[command(flatten)]
    pub program: ProgramArgs,
    /// Conditional knowledge base; without it every weight is zero.
    #[arg(long, value_name = "PATH")]
    pub kb: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub program: ProgramArgs,
    #[arg(long, value_name = "PATH", required_unless_present = "without_kb")]
    pub kb: Option<PathBuf>,
    /// Query with an empty knowledge base, where every weight is zero.
    #[arg(long, conflicts_with = "kb")]
    pub without_kb: bool,
    #[arg(long, value_name = "FORMULA", required_unless_present = "query_file", conflicts_with = "query_file")]
    pub query: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub query_file: Option<PathBuf>,
    /// Print the weight table on stderr before answering.
    #[arg(long)]
    pub dump_model: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of random instances.
    #[arg(long, default_value_t = 200)]
    pub seeds: u64,
    /// Random postulate instances per generated model.
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub first_seed: u64,
    /// Instances to search for a Rational Monotonicity failure; 0 skips it.
    #[arg(long, default_value_t = 100)]
    pub rm_budget: usize,
    /// Violations to print in text mode.
    #[arg(long, default_value_t = 10)]
    pub show: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// A failure with its exit code. `kind` is a stable identifier used in JSON
/// error reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Self { code, kind, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Self::new(exit::INPUT, "input", message)
    }

    fn kb(message: impl Into<String>) -> Self {
        Self::new(exit::KB, "kb", message)
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let msg = e.to_string();
        match e {
            EngineError::InconsistentProgram => Failure::new(exit::INCONSISTENT, "inconsistent", "program inconsistent"),
            EngineError::RankedSubject(_) | EngineError::NotRankedSubject(_) => Failure::kb(msg),
            EngineError::RankedComplexCombination(_) => Failure::new(exit::RANKED_COMBINATION, "ranked_combination", msg),
            EngineError::Overflow => Failure::new(exit::OVERFLOW, "overflow", msg),
            EngineError::Solver(SolverError::TooManyAnswerSets { .. }) => Failure::new(exit::TOO_MANY_ANSWER_SETS, "too_many_answer_sets", msg),
            EngineError::UnsupportedShape(_) | EngineError::NotAnImplication(_) | EngineError::Model(_) => Failure::new(exit::INPUT, "query", msg),
            EngineError::Ground(_) | EngineError::Solver(_) => Failure::input(msg),
        }
    }
}

impl From<GroundError> for Failure {
    fn from(e: GroundError) -> Self {
        Failure::new(exit::INPUT, "ground", e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        },
    };
    let format = match &cli.command {
        Command::Solve(a) => a.program.format,
        Command::Model(a) => a.program.format,
        Command::Query(a) => a.program.format,
        Command::VerifyKlm(a) => a.format,
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::Model(a) => cmd_model(a, out, err),
        Command::Query(a) => cmd_query(a, out, err),
        Command::VerifyKlm(a) => cmd_verify_klm(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if format == Format::Json {
                let _ = print_json(out, &ErrorReport { version: JSON_VERSION, error: ErrorBody { kind: f.kind, message: &f.message } });
            }
            f.code
        },
    }
}

/***** PIPELINE *****/
fn read(path: &Path, as_failure: fn(String) -> Failure) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| as_failure(format!("cannot read {}: {e}", path.display())))
}

fn load_kb(path: Option<&Path>) -> Result<ConditionalKB, Failure> {
    let Some(path) = path else { return Ok(ConditionalKB::empty()) };
    let text = read(path, Failure::kb)?;
    parse_kb_named(&text, Some(&path.display().to_string())).map_err(|e| Failure::kb(e.to_string()))
}

/// Parses, grounds and solves the program; worlds come back in canonical order.
fn solve(args: &ProgramArgs, err: &mut dyn Write) -> Result<Vec<AnswerSet>, Failure> {
    let text = read(&args.program, Failure::input)?;
    let program = parse_program_named(&text, Some(&args.program.display().to_string())).map_err(|e| Failure::new(exit::INPUT, "parse", e.to_string()))?;
    let g: GroundProgram = simplify(&ground(&program)?);
    if args.dump_ground {
        let _ = write!(err, "{g}");
    }
    let mut worlds = enumerate_limited(&normalize(&g), args.max_answer_sets).map_err(|e| Failure::from(EngineError::from(e)))?;
    worlds.sort();
    Ok(worlds)
}

fn build(args: &ProgramArgs, kb: ConditionalKB, err: &mut dyn Write) -> Result<PreferentialModel, Failure> {
    let worlds = solve(args, err)?;
    Ok(PreferentialModel::from_worlds(worlds, kb)?)
}

fn atoms_of(s: &AnswerSet) -> Vec<String> {
    s.atoms.iter().map(Atom::to_string).collect()
}

/***** SOLVE *****/
#[derive(Serialize)]
struct SolveReport {
    version: u32,
    answer_sets: Vec<Vec<String>>,
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let worlds = solve(&a.program, err)?;
    if worlds.is_empty() {
        return Err(EngineError::InconsistentProgram.into());
    }
    match a.program.format {
        Format::Text => {
            for w in &worlds {
                let _ = writeln!(out, "{w}");
            }
        },
        Format::Json => print_json(out, &SolveReport { version: JSON_VERSION, answer_sets: worlds.iter().map(atoms_of).collect() })?,
    }
    Ok(exit::OK)
}

/***** MODEL *****/
#[derive(Serialize)]
struct ModelReport {
    version: u32,
    worlds: Vec<Vec<String>>,
    weights: BTreeMap<String, Vec<i64>>,
    /// Satisfied-conditional counts per world for ranked subjects, highest
    /// rank first.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    ranked: BTreeMap<String, Vec<Vec<usize>>>,
    max: i64,
    min: i64,
}

fn model_report(m: &PreferentialModel) -> Result<ModelReport, Failure> {
    let table = m.weight_table();
    let weights = table.subjects().map(|a| (a.to_string(), table.row(a).unwrap_or_default().to_vec())).collect();
    let mut ranked = BTreeMap::new();
    for subject in m.ranked_index().keys() {
        let f = Formula::Atom(subject.clone());
        let rows = m
            .worlds()
            .iter()
            .map(|w| match m.preference_key(&f, w)? {
                PreferenceKey::Ranked(counts) => Ok(counts),
                PreferenceKey::Weight(_) => unreachable!("ranked subject has a ranked key"),
            })
            .collect::<Result<Vec<_>, EngineError>>()?;
        ranked.insert(subject.to_string(), rows);
    }
    Ok(ModelReport { version: JSON_VERSION, worlds: m.worlds().iter().map(atoms_of).collect(), weights, ranked, max: table.max(), min: table.min() })
}

fn write_table(w: &mut dyn Write, r: &ModelReport) {
    let mut header = vec!["#".to_string()];
    header.extend(r.weights.keys().cloned());
    header.extend(r.ranked.keys().cloned());
    header.push("answer set".into());
    let mut rows = vec![header];
    for (i, world) in r.worlds.iter().enumerate() {
        let mut row = vec![(i + 1).to_string()];
        row.extend(r.weights.values().map(|ws| ws[i].to_string()));
        row.extend(r.ranked.values().map(|cs| format!("{:?}", cs[i])));
        row.push(world.join(" "));
        rows.push(row);
    }
    let ncols = rows[0].len();
    let widths: Vec<usize> = (0..ncols).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    for row in &rows {
        let cells: Vec<String> = row.iter().zip(&widths).enumerate().map(|(c, (x, wd))| if c + 1 == ncols { x.clone() } else { format!("{x:>wd$}") }).collect();
        let _ = writeln!(w, "{}", cells.join("  ").trim_end());
    }
    let _ = writeln!(w, "max {}  min {}", r.max, r.min);
}

fn cmd_model(a: &ModelArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let kb = load_kb(a.kb.as_deref())?;
    let m = build(&a.program, kb, err)?;
    let report = model_report(&m)?;
    match a.program.format {
        Format::Text => write_table(out, &report),
        Format::Json => print_json(out, &report)?,
    }
    Ok(exit::OK)
}

/***** QUERY *****/
#[derive(Serialize)]
struct WitnessReport {
    argument: String,
    /// Highest weight among the worlds satisfying the argument.
    max_weight: Option<i64>,
    /// Best satisfied-count vector, for ranked arguments.
    #[serde(skip_serializing_if = "Option::is_none")]
    best_ranked: Option<Vec<usize>>,
    typical: Vec<Vec<String>>,
}

impl From<&TypWitness> for WitnessReport {
    fn from(w: &TypWitness) -> Self {
        let best_ranked = match &w.best {
            Some(PreferenceKey::Ranked(c)) => Some(c.clone()),
            _ => None,
        };
        Self { argument: w.argument.to_string(), max_weight: w.max_weight(), best_ranked, typical: w.typical.iter().map(atoms_of).collect() }
    }
}

#[derive(Serialize)]
struct QueryReport {
    version: u32,
    query: String,
    entailed: bool,
    counterexample: Option<Vec<String>>,
    typ_witnesses: Vec<WitnessReport>,
}

fn read_query(a: &QueryArgs) -> Result<Formula, Failure> {
    let text = match (&a.query, &a.query_file) {
        (Some(q), _) => q.clone(),
        (None, Some(path)) => read(path, Failure::input)?,
        (None, None) => return Err(Failure::input("no query given")),
    };
    let text = text.trim();
    let text = text.strip_suffix('.').unwrap_or(text);
    parse_query(text).map_err(|e| Failure::new(exit::INPUT, "query", e.to_string()))
}

fn cmd_query(a: &QueryArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let kb = load_kb(a.kb.as_deref())?;
    let query = read_query(a)?;
    let m = build(&a.program, kb, err)?;
    if a.dump_model {
        write_table(err, &model_report(&m)?);
    }
    let v = check_entailment(&m, &query)?;
    match a.program.format {
        Format::Text => {
            let _ = writeln!(out, "{}", if v.entailed { "ENTAILED" } else { "NOT ENTAILED" });
            if let Some(cx) = &v.counterexample {
                let _ = writeln!(out, "counterexample: {cx}");
                for w in &v.typ_witnesses {
                    let best = match &w.best {
                        Some(PreferenceKey::Weight(x)) => format!("maxw {x}"),
                        Some(PreferenceKey::Ranked(c)) => format!("best counts {c:?}"),
                        None => "no world satisfies it".into(),
                    };
                    let _ = writeln!(out, "T({}): {best}", w.argument);
                    for t in &w.typical {
                        let _ = writeln!(out, "  typical: {t}");
                    }
                }
            }
        },
        Format::Json => print_json(
            out,
            &QueryReport {
                version: JSON_VERSION,
                query: query.to_string(),
                entailed: v.entailed,
                counterexample: v.counterexample.as_ref().map(atoms_of),
                typ_witnesses: v.typ_witnesses.iter().map(WitnessReport::from).collect(),
            },
        )?,
    }
    Ok(if v.entailed { exit::OK } else { exit::NOT_ENTAILED })
}

/***** VERIFY-KLM *****/
#[derive(Serialize)]
struct PostulateCount {
    exercised: usize,
    violations: usize,
}

#[derive(Serialize)]
struct ViolationReport {
    seed: u64,
    postulate: String,
    premises: Vec<String>,
    conclusion: String,
}

#[derive(Serialize)]
struct RmReport {
    program: String,
    kb: String,
    a: String,
    b: String,
    c: String,
}

#[derive(Serialize)]
struct VerifyReport {
    version: u32,
    seeds: u64,
    trials: usize,
    postulates: BTreeMap<String, PostulateCount>,
    violations: Vec<ViolationReport>,
    rm_witness: Option<RmReport>,
}

fn conditional(a: &Formula, b: &Formula) -> String {
    format!("T({a}) -> {b}")
}

fn cmd_verify_klm(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut counts: BTreeMap<Postulate, (usize, usize)> = Postulate::ALL.iter().map(|&p| (p, (0, 0))).collect();
    let mut violations: Vec<(u64, Violation)> = Vec::new();
    for seed in a.first_seed..a.first_seed + a.seeds {
        let inst = match generate_instance(&InstanceSeed::new(seed)) {
            Ok(inst) => inst,
            Err(KlmError::Engine(e)) => return Err(e.into()),
            Err(e) => return Err(Failure::input(e.to_string())),
        };
        let report = check_postulates(&inst.model, a.trials, seed)?;
        for (p, n) in report.exercised {
            counts.get_mut(&p).unwrap().0 += n;
        }
        for v in report.violations {
            counts.get_mut(&v.postulate).unwrap().1 += 1;
            violations.push((seed, v));
        }
    }
    let rm = search_rm_counterexample(a.rm_budget);
    let total: usize = counts.values().map(|c| c.1).sum();
    match a.format {
        Format::Text => {
            for (p, (exercised, bad)) in &counts {
                let _ = writeln!(out, "{:<26} {:>7} checked  {:>5} violated", p.to_string(), exercised, bad);
            }
            for (seed, v) in violations.iter().take(a.show) {
                let _ = writeln!(out, "seed {seed}: {v}");
            }
            if violations.len() > a.show {
                let _ = writeln!(out, "... {} more", violations.len() - a.show);
            }
            match &rm {
                Some(w) => {
                    let _ = writeln!(out, "Rational Monotonicity fails: A = {}, B = {}, C = {}", w.a, w.b, w.c);
                },
                None if a.rm_budget > 0 => {
                    let _ = writeln!(out, "no Rational Monotonicity failure within {} instances", a.rm_budget);
                },
                None => {},
            }
        },
        Format::Json => print_json(
            out,
            &VerifyReport {
                version: JSON_VERSION,
                seeds: a.seeds,
                trials: a.trials,
                postulates: counts.iter().map(|(p, &(exercised, violations))| (p.to_string(), PostulateCount { exercised, violations })).collect(),
                violations: violations
                    .iter()
                    .map(|(seed, v)| ViolationReport {
                        seed: *seed,
                        postulate: v.postulate.to_string(),
                        premises: v.premises.iter().map(|(x, y)| conditional(x, y)).collect(),
                        conclusion: conditional(&v.conclusion.0, &v.conclusion.1),
                    })
                    .collect(),
                rm_witness: rm.map(|w| RmReport {
                    program: w.program.to_string(),
                    kb: w.kb.to_string(),
                    a: w.a.to_string(),
                    b: w.b.to_string(),
                    c: w.c.to_string(),
                }),
            },
        )?,
    }
    Ok(if total == 0 { exit::OK } else { exit::POSTULATE_VIOLATIONS })
}

/***** JSON *****/
#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    version: u32,
    error: ErrorBody<'a>,
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::input(e.to_string()))?;
    let _ = writeln!(out, "{text}");
    Ok(())
}
