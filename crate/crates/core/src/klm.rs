//! Randomised checking of the KLM postulates against canonical models, and
//! search for failures of Rational Monotonicity.
//!
//! Every violation or witness reported here has been re-checked with fresh
//! [`check_entailment`] calls before it is returned.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Display, Formatter};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::engine::{build_model, check_entailment, EngineError, PreferentialModel};
use crate::model::{eval_with, Atom, AtomPattern, BodyElement, ConditionalKB, Formula, Head, Program, Rule, WeightedConditional};

pub const MAX_INSTANCE_ATOMS: usize = 8;
pub const MAX_INSTANCE_RULES: usize = 12;
pub const MAX_INSTANCE_CONDITIONALS: usize = 10;
pub const WEIGHT_RANGE: std::ops::RangeInclusive<i64> = -100..=100;
/// Attempts before [`generate_instance`] gives up on finding a consistent program.
pub const GENERATION_RETRIES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlmError {
    #[error("instance budgets must be positive and within atoms <= {MAX_INSTANCE_ATOMS}, rules <= {MAX_INSTANCE_RULES}, conditionals <= {MAX_INSTANCE_CONDITIONALS}")]
    InvalidBudget,
    #[error("no consistent program after {attempts} attempts (seed {seed})")]
    GenerationExhausted { seed: u64, attempts: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/***** RANDOM INSTANCES *****/
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSeed {
    pub seed: u64,
    pub atoms: usize,
    pub rules: usize,
    pub conditionals: usize,
}

impl InstanceSeed {
    pub fn new(seed: u64) -> Self {
        Self { seed, atoms: 6, rules: 8, conditionals: 6 }
    }

    fn validate(&self) -> Result<(), KlmError> {
        let ok = (1..=MAX_INSTANCE_ATOMS).contains(&self.atoms)
            && (1..=MAX_INSTANCE_RULES).contains(&self.rules)
            && (1..=MAX_INSTANCE_CONDITIONALS).contains(&self.conditionals);
        if ok {
            Ok(())
        } else {
            Err(KlmError::InvalidBudget)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub program: Program,
    pub kb: ConditionalKB,
    pub model: PreferentialModel,
    /// 1 when the first generated program was already consistent.
    pub attempts: usize,
}

pub fn instance_atoms(n: usize) -> Vec<Atom> {
    (0..n).map(|i| Atom::prop(format!("p{i}"))).collect()
}

fn pattern(a: &Atom) -> AtomPattern {
    AtomPattern::from(a)
}

/// Body literals; `head` is never negated, so no rule is its own odd loop.
fn random_body(rng: &mut impl Rng, atoms: &[Atom], max_len: usize, head: Option<&Atom>) -> Vec<BodyElement> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            let atom = atoms.choose(rng).unwrap();
            let a = pattern(atom);
            if Some(atom) == head || rng.gen_bool(0.6) {
                BodyElement::Positive(a)
            } else {
                BodyElement::Negated(a)
            }
        })
        .collect()
}

/// A random variable-free program over `atoms` with `rules` rules: facts,
/// normal rules with default negation, choice rules with optional bounds,
/// body cardinalities and integrity constraints.
pub fn random_ground_program(rng: &mut impl Rng, atoms: &[Atom], rules: usize) -> Program {
    let mut out = Vec::with_capacity(rules);
    for _ in 0..rules {
        let roll = rng.gen_range(0..100);
        let rule = if roll < 10 {
            Rule::fact(atoms.choose(rng).unwrap())
        } else if roll < 45 {
            let k = rng.gen_range(1..=3.min(atoms.len()));
            let heads: Vec<AtomPattern> = atoms.choose_multiple(rng, k).map(pattern).collect();
            let lower = rng.gen_bool(0.1).then_some(1);
            let upper = rng.gen_bool(0.3).then(|| rng.gen_range(1..=k as u32));
            let body = if rng.gen_bool(0.5) { Vec::new() } else { random_body(rng, atoms, 2, None) };
            Rule { head: Head::Choice { lower, atoms: heads, upper }, body }
        } else if roll < 82 {
            let head = atoms.choose(rng).unwrap();
            Rule { head: Head::Normal(pattern(head)), body: random_body(rng, atoms, 3, Some(head)) }
        } else if roll < 96 {
            let k = rng.gen_range(1..=3.min(atoms.len()));
            let set: Vec<AtomPattern> = atoms.choose_multiple(rng, k).map(pattern).collect();
            let mut body = vec![BodyElement::CardinalityLower { lower: rng.gen_range(1..=k as u32), atoms: set }];
            let head = atoms.choose(rng).unwrap();
            if rng.gen_bool(0.3) {
                body.extend(random_body(rng, atoms, 1, Some(head)));
            }
            Rule { head: Head::Normal(pattern(head)), body }
        } else {
            Rule { head: Head::Empty, body: random_body(rng, atoms, 2, None) }
        };
        out.push(rule);
    }
    Program { rules: out }
}

/// A literal or a small conjunction/disjunction of literals over `atoms`.
fn random_consequent(rng: &mut impl Rng, atoms: &[Atom]) -> Formula {
    let lit = |rng: &mut dyn rand::RngCore| {
        let a = Formula::Atom(atoms.choose(rng).unwrap().clone());
        if rng.gen_bool(0.3) {
            Formula::not(a)
        } else {
            a
        }
    };
    match rng.gen_range(0..10) {
        0..=5 => lit(rng),
        6..=7 => Formula::and(lit(rng), lit(rng)),
        _ => Formula::or(lit(rng), lit(rng)),
    }
}

pub fn random_weighted_kb(rng: &mut impl Rng, atoms: &[Atom], conditionals: usize) -> ConditionalKB {
    let n = rng.gen_range(1..=3.min(atoms.len()));
    let subjects: Vec<&Atom> = atoms.choose_multiple(rng, n).collect();
    let weighted = (0..conditionals)
        .map(|_| WeightedConditional {
            subject: (*subjects.choose(rng).unwrap()).clone(),
            consequent: random_consequent(rng, atoms),
            weight: rng.gen_range(WEIGHT_RANGE),
        })
        .collect();
    ConditionalKB::new(weighted, Vec::new()).expect("weighted-only KB without typicality")
}

/// Deterministic random instance for `seed`, regenerated until the program
/// has an answer set.
pub fn generate_instance(seed: &InstanceSeed) -> Result<Instance, KlmError> {
    seed.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.seed);
    let atoms = instance_atoms(seed.atoms);
    for attempt in 1..=GENERATION_RETRIES {
        let program = random_ground_program(&mut rng, &atoms, seed.rules);
        let kb = random_weighted_kb(&mut rng, &atoms, seed.conditionals);
        match build_model(&program, &kb) {
            Ok(model) => return Ok(Instance { program, kb, model, attempts: attempt }),
            Err(EngineError::InconsistentProgram) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(KlmError::GenerationExhausted { seed: seed.seed, attempts: GENERATION_RETRIES })
}

/***** FORMULAS *****/
/// Random combination of `atoms` with `&`, `|`, `~`, at most `depth` deep.
pub fn random_combination(rng: &mut impl Rng, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return Formula::Atom(atoms.choose(rng).unwrap().clone());
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(random_combination(rng, atoms, depth - 1)),
        1 | 2 => Formula::and(random_combination(rng, atoms, depth - 1), random_combination(rng, atoms, depth - 1)),
        _ => Formula::or(random_combination(rng, atoms, depth - 1), random_combination(rng, atoms, depth - 1)),
    }
}

fn all_valuations(f: &Formula, g: &Formula, check: impl Fn(bool, bool) -> bool) -> bool {
    let atoms: Vec<Atom> = f.atoms().union(&g.atoms()).cloned().collect();
    assert!(atoms.len() <= 20, "truth table over {} atoms", atoms.len());
    (0u32..(1 << atoms.len())).all(|mask| {
        let val = |a: &Atom| atoms.iter().position(|x| x == a).is_some_and(|i| mask >> i & 1 == 1);
        check(eval_with(f, &val), eval_with(g, &val))
    })
}

/// Propositional equivalence by truth table.
pub fn equivalent(f: &Formula, g: &Formula) -> bool {
    all_valuations(f, g, |a, b| a == b)
}

/// Validity of `f -> g` by truth table.
pub fn entails_classically(f: &Formula, g: &Formula) -> bool {
    all_valuations(f, g, |a, b| !a || b)
}

fn rewrites_here(rng: &mut impl Rng, f: &Formula, atoms: &[Atom]) -> Vec<Formula> {
    use Formula::*;
    let b = |x: &Formula| Box::new(x.clone());
    let mut out = vec![
        Formula::not(Formula::not(f.clone())),
        Formula::and(f.clone(), f.clone()),
        Formula::or(f.clone(), f.clone()),
        Formula::or(f.clone(), Formula::and(f.clone(), random_combination(rng, atoms, 1))),
        Formula::and(f.clone(), Formula::or(f.clone(), random_combination(rng, atoms, 1))),
    ];
    match f {
        Not(x) => match x.as_ref() {
            Not(y) => out.push(y.as_ref().clone()),
            And(l, r) => out.push(Or(Box::new(Not(b(l))), Box::new(Not(b(r))))),
            Or(l, r) => out.push(And(Box::new(Not(b(l))), Box::new(Not(b(r))))),
            _ => {},
        },
        And(l, r) => {
            out.push(And(b(r), b(l)));
            if l == r {
                out.push(l.as_ref().clone());
            }
            if let And(x, y) = r.as_ref() {
                out.push(And(Box::new(And(b(l), b(x))), b(y)));
            }
            if let And(x, y) = l.as_ref() {
                out.push(And(b(x), Box::new(And(b(y), b(r)))));
            }
            if let (Not(x), Not(y)) = (l.as_ref(), r.as_ref()) {
                out.push(Not(Box::new(Or(b(x), b(y)))));
            }
            if let Or(x, y) = r.as_ref() {
                out.push(Or(Box::new(And(b(l), b(x))), Box::new(And(b(l), b(y)))));
            }
        },
        Or(l, r) => {
            out.push(Or(b(r), b(l)));
            if l == r {
                out.push(l.as_ref().clone());
            }
            if let Or(x, y) = r.as_ref() {
                out.push(Or(Box::new(Or(b(l), b(x))), b(y)));
            }
            if let Or(x, y) = l.as_ref() {
                out.push(Or(b(x), Box::new(Or(b(y), b(r)))));
            }
            if let (Not(x), Not(y)) = (l.as_ref(), r.as_ref()) {
                out.push(Not(Box::new(And(b(x), b(y)))));
            }
            if let And(x, y) = r.as_ref() {
                out.push(And(Box::new(Or(b(l), b(x))), Box::new(Or(b(l), b(y)))));
            }
        },
        _ => {},
    }
    out
}

fn rewrite_once(rng: &mut impl Rng, f: &Formula, atoms: &[Atom]) -> Formula {
    use Formula::*;
    let descend = rng.gen_bool(0.6);
    match f {
        Not(x) if descend => Formula::not(rewrite_once(rng, x, atoms)),
        And(l, r) | Or(l, r) if descend => {
            let (l, r) = if rng.gen_bool(0.5) { (rewrite_once(rng, l, atoms), r.as_ref().clone()) } else { (l.as_ref().clone(), rewrite_once(rng, r, atoms)) };
            if matches!(f, And(..)) {
                Formula::and(l, r)
            } else {
                Formula::or(l, r)
            }
        },
        _ => {
            let options = rewrites_here(rng, f, atoms);
            options.choose(rng).unwrap().clone()
        },
    }
}

/// A formula equivalent to `f`, obtained by `steps` random rewrites with the
/// laws the weight combination respects: commutativity, associativity,
/// idempotence, absorption, distributivity, De Morgan and double negation.
/// Laws involving complements (`x & ~x`, `x | ~x`) are never used.
pub fn equivalent_variant(rng: &mut impl Rng, f: &Formula, atoms: &[Atom], steps: usize) -> Formula {
    let mut g = f.clone();
    for _ in 0..steps {
        g = rewrite_once(rng, &g, atoms);
    }
    debug_assert!(equivalent(f, &g), "rewrite broke equivalence: {f} vs {g}");
    g
}

/// A random combination over `atoms` that is truth-table equivalent to `f`
/// but syntactically different, found by sampling; `None` if `tries` draws
/// produce none. Unlike [`equivalent_variant`] this is not restricted to any
/// family of rewrite laws.
pub fn sample_equivalent(rng: &mut impl Rng, f: &Formula, atoms: &[Atom], tries: usize) -> Option<Formula> {
    (0..tries).map(|_| random_combination(rng, atoms, 3)).find(|g| g != f && equivalent(f, g))
}

/// An equivalent formula: half the time an unrestricted sample, otherwise
/// (or when sampling fails) a rewrite variant.
pub fn random_equivalent(rng: &mut impl Rng, f: &Formula, atoms: &[Atom]) -> Formula {
    if rng.gen_bool(0.5) {
        if let Some(g) = sample_equivalent(rng, f, atoms, 400) {
            return g;
        }
    }
    let steps = rng.gen_range(1..=4);
    equivalent_variant(rng, f, atoms, steps)
}

/***** POSTULATES *****/
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Postulate {
    Reflexivity,
    RightWeakening,
    LeftLogicalEquivalence,
    And,
    Or,
    CautiousMonotonicity,
}

impl Postulate {
    pub const ALL: [Postulate; 6] =
        [Postulate::Reflexivity, Postulate::RightWeakening, Postulate::LeftLogicalEquivalence, Postulate::And, Postulate::Or, Postulate::CautiousMonotonicity];
}

impl Display for Postulate {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Postulate::Reflexivity => "Reflexivity",
            Postulate::RightWeakening => "Right Weakening",
            Postulate::LeftLogicalEquivalence => "Left Logical Equivalence",
            Postulate::And => "And",
            Postulate::Or => "Or",
            Postulate::CautiousMonotonicity => "Cautious Monotonicity",
        })
    }
}

/// One postulate instance whose premises hold and whose conclusion fails.
///
/// `premises` and `conclusion` are `(typicality argument, consequent)`
/// pairs, each standing for `T(argument) -> consequent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub postulate: Postulate,
    pub premises: Vec<(Formula, Formula)>,
    pub conclusion: (Formula, Formula),
}

impl Display for Violation {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.postulate)?;
        for (a, b) in &self.premises {
            write!(f, "T({a}) -> {b}; ")?;
        }
        write!(f, "but not T({}) -> {}", self.conclusion.0, self.conclusion.1)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PostulateReport {
    pub trials: usize,
    /// Instances whose premises held, per postulate.
    pub exercised: BTreeMap<Postulate, usize>,
    pub violations: Vec<Violation>,
}

impl PostulateReport {
    pub fn violation_count(&self, p: Postulate) -> usize {
        self.violations.iter().filter(|v| v.postulate == p).count()
    }

    pub fn merge(&mut self, other: PostulateReport) {
        self.trials += other.trials;
        for (p, n) in other.exercised {
            *self.exercised.entry(p).or_default() += n;
        }
        self.violations.extend(other.violations);
    }
}

/// Whether `T(argument) -> consequent` is entailed by the model.
pub fn entails(model: &PreferentialModel, argument: &Formula, consequent: &Formula) -> Result<bool, EngineError> {
    Ok(check_entailment(model, &Formula::implies(Formula::typ(argument.clone()), consequent.clone()))?.entailed)
}

/// Re-checks a violation from scratch.
pub fn confirm_violation(model: &PreferentialModel, v: &Violation) -> Result<bool, EngineError> {
    for (a, b) in &v.premises {
        if !entails(model, a, b)? {
            return Ok(false);
        }
    }
    Ok(!entails(model, &v.conclusion.0, &v.conclusion.1)?)
}

struct Checker<'a> {
    model: &'a PreferentialModel,
    report: PostulateReport,
}

impl Checker<'_> {
    /// Records an instance of `p`: if every premise is entailed, the
    /// conclusion must be too.
    fn instance(&mut self, p: Postulate, premises: Vec<(Formula, Formula)>, conclusion: (Formula, Formula)) -> Result<(), EngineError> {
        for (a, b) in &premises {
            if !entails(self.model, a, b)? {
                return Ok(());
            }
        }
        *self.report.exercised.entry(p).or_default() += 1;
        if !entails(self.model, &conclusion.0, &conclusion.1)? {
            let v = Violation { postulate: p, premises, conclusion };
            if confirm_violation(self.model, &v)? {
                self.report.violations.push(v);
            }
        }
        Ok(())
    }
}

/// Checks the six KLM postulates on `trials` random triples of combinations
/// of the model's weighted subjects.
pub fn check_postulates(model: &PreferentialModel, trials: usize, seed: u64) -> Result<PostulateReport, EngineError> {
    let atoms: Vec<Atom> = model.kb().weighted_subjects().into_iter().collect();
    let mut checker = Checker { model, report: PostulateReport::default() };
    if atoms.is_empty() {
        return Ok(checker.report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        checker.report.trials += 1;
        let a = random_combination(&mut rng, &atoms, 2);
        let b = random_combination(&mut rng, &atoms, 2);
        let c = random_combination(&mut rng, &atoms, 2);

        checker.instance(Postulate::Reflexivity, vec![], (a.clone(), a.clone()))?;

        let weaker = Formula::or(b.clone(), c.clone());
        debug_assert!(entails_classically(&b, &weaker));
        checker.instance(Postulate::RightWeakening, vec![(a.clone(), b.clone())], (a.clone(), weaker))?;

        let a_equiv = random_equivalent(&mut rng, &a, &atoms);
        if equivalent(&a, &a_equiv) {
            checker.instance(Postulate::LeftLogicalEquivalence, vec![(a.clone(), c.clone())], (a_equiv, c.clone()))?;
        }

        checker.instance(Postulate::And, vec![(a.clone(), b.clone()), (a.clone(), c.clone())], (a.clone(), Formula::and(b.clone(), c.clone())))?;
        checker.instance(Postulate::Or, vec![(a.clone(), c.clone()), (b.clone(), c.clone())], (Formula::or(a.clone(), b.clone()), c.clone()))?;
        checker.instance(
            Postulate::CautiousMonotonicity,
            vec![(a.clone(), b.clone()), (a.clone(), c.clone())],
            (Formula::and(a.clone(), b.clone()), c.clone()),
        )?;
    }
    Ok(checker.report)
}

/***** RATIONAL MONOTONICITY *****/
/// `T(A) -> C` and not `T(A) -> ~B`, yet not `T(A & B) -> C`.
pub fn violates_rm(model: &PreferentialModel, a: &Formula, b: &Formula, c: &Formula) -> Result<bool, EngineError> {
    Ok(entails(model, a, c)? && !entails(model, a, &Formula::not(b.clone()))? && !entails(model, &Formula::and(a.clone(), b.clone()), c)?)
}

#[derive(Debug, Clone)]
pub struct RmWitness {
    pub program: Program,
    pub kb: ConditionalKB,
    pub a: Formula,
    pub b: Formula,
    pub c: Formula,
}

/// Tries `budget` random instances (seeds `0..budget`), a few triples each,
/// and returns the first confirmed failure of Rational Monotonicity.
pub fn search_rm_counterexample(budget: usize) -> Option<RmWitness> {
    const TRIPLES_PER_INSTANCE: usize = 20;
    for seed in 0..budget as u64 {
        let Ok(inst) = generate_instance(&InstanceSeed::new(seed)) else { continue };
        let subjects: Vec<Atom> = inst.kb.weighted_subjects().into_iter().collect();
        let consequent_atoms: Vec<Atom> = instance_atoms(InstanceSeed::new(seed).atoms);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..TRIPLES_PER_INSTANCE {
            let a = random_combination(&mut rng, &subjects, 1);
            let b = random_combination(&mut rng, &subjects, 1);
            let c = random_combination(&mut rng, &consequent_atoms, 1);
            if violates_rm(&inst.model, &a, &b, &c).unwrap_or(false) {
                // independent rebuild before reporting
                let rebuilt = build_model(&inst.program, &inst.kb).ok()?;
                if violates_rm(&rebuilt, &a, &b, &c).unwrap_or(false) {
                    return Some(RmWitness { program: inst.program, kb: inst.kb, a, b, c });
                }
            }
        }
    }
    None
}

/// Atoms mentioned by the formulas, for reporting.
pub fn mentioned_atoms<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Atom> {
    fs.into_iter().flat_map(|f| f.atoms()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parser::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn generation_is_deterministic() {
        let s = InstanceSeed::new(42);
        let (x, y) = (generate_instance(&s).unwrap(), generate_instance(&s).unwrap());
        assert_eq!(x.program, y.program);
        assert_eq!(x.kb, y.kb);
        assert_eq!(x.model.worlds(), y.model.worlds());
    }

    #[test]
    fn single_atom_budget() {
        for seed in 0..50 {
            let s = InstanceSeed { seed, atoms: 1, rules: 4, conditionals: 2 };
            let inst = generate_instance(&s).unwrap();
            assert!(inst.model.worlds().len() <= 2);
            assert!(inst.program.rules.iter().all(|r| r.head.atoms().iter().all(|a| a.predicate == "p0")));
        }
    }

    #[test]
    fn budgets_are_validated() {
        for s in [
            InstanceSeed { seed: 0, atoms: 0, rules: 1, conditionals: 1 },
            InstanceSeed { seed: 0, atoms: 9, rules: 1, conditionals: 1 },
            InstanceSeed { seed: 0, atoms: 2, rules: 13, conditionals: 1 },
            InstanceSeed { seed: 0, atoms: 2, rules: 1, conditionals: 11 },
        ] {
            assert!(matches!(generate_instance(&s), Err(KlmError::InvalidBudget)));
        }
    }

    #[test]
    fn variants_are_equivalent() {
        let atoms = instance_atoms(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let a = random_combination(&mut rng, &atoms, 3);
            let b = equivalent_variant(&mut rng, &a, &atoms, 5);
            assert!(equivalent(&a, &b), "{a} vs {b}");
        }
    }

    #[test]
    fn truth_tables() {
        assert!(equivalent(&f("~(a & b)"), &f("~a | ~b")));
        assert!(!equivalent(&f("a"), &f("a | b")));
        assert!(entails_classically(&f("a"), &f("a | b")));
        assert!(!entails_classically(&f("a | b"), &f("a")));
    }

    #[test]
    fn lle_with_identical_arguments_holds() {
        let m = fixtures::cinema_model();
        let a = f("happy_sat(mary)");
        for c in ["go_to_cinema(mary)", "stay_at_home(bob)"] {
            assert_eq!(entails(&m, &a, &f(c)).unwrap(), entails(&m, &a.clone(), &f(c)).unwrap());
        }
    }

    #[test]
    fn and_on_cinema() {
        let m = fixtures::cinema_model();
        let a = f("happy_sat(mary)");
        let (b, c) = (f("go_to_cinema(mary)"), f("busy(mary)"));
        assert!(entails(&m, &a, &b).unwrap());
        assert!(entails(&m, &a, &c).unwrap());
        assert!(entails(&m, &a, &Formula::and(b, c)).unwrap());
    }

    #[test]
    fn birds_violate_rational_monotonicity() {
        let m = fixtures::birds_model();
        let (a, b, c) = (f("bird"), f("bw"), f("fly"));
        assert!(entails(&m, &a, &c).unwrap());
        assert!(!entails(&m, &a, &Formula::not(b.clone())).unwrap());
        assert!(!entails(&m, &Formula::and(a.clone(), b.clone()), &c).unwrap());
        assert!(violates_rm(&m, &a, &b, &c).unwrap());
    }

    #[test]
    fn zero_budget_finds_nothing() {
        assert!(search_rm_counterexample(0).is_none());
    }

    #[test]
    fn rm_search_results_recheck() {
        if let Some(w) = search_rm_counterexample(40) {
            let m = build_model(&w.program, &w.kb).unwrap();
            assert!(violates_rm(&m, &w.a, &w.b, &w.c).unwrap());
        }
    }

    #[test]
    fn postulate_checks_are_deterministic() {
        let inst = generate_instance(&InstanceSeed::new(3)).unwrap();
        let r1 = check_postulates(&inst.model, 30, 9).unwrap();
        let r2 = check_postulates(&inst.model, 30, 9).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.violation_count(Postulate::Reflexivity), 0);
        assert_eq!(r1.violation_count(Postulate::RightWeakening), 0);
        assert_eq!(r1.violation_count(Postulate::And), 0);
    }
}
