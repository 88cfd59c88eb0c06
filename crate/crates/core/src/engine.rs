//! The canonical multi-preferential model of a program and a conditional
//! knowledge base, and entailment of implications with typicality.
//!
//! Worlds are the answer sets of the program. Each distinguished atom `A`
//! orders worlds by its weight `W_A(S)`, the sum of the weights of the
//! conditionals `T(A) -> B` whose consequent `B` holds in `S`; a higher
//! weight is more typical. Boolean combinations of distinguished atoms take
//! `min` for `&`, `max` for `|`, and `Max - W + Min` for `~`, where `Max` and
//! `Min` range over every weighted subject and every world. Ranked subjects
//! instead compare, from the highest rank down, how many of their
//! conditionals each world satisfies.
//!
//! `T(C)` holds at a world iff the world satisfies `C` and no world
//! satisfying `C` is strictly preferred for `C`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Display, Formatter};

use thiserror::Error;

use crate::ground::{ground, simplify, GroundError};
use crate::model::{eval_unchecked, validate_formula, AnswerSet, Atom, ConditionalKB, Formula, ModelError, Program};
use crate::solver::{enumerate_limited, normalize, SolverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("program inconsistent: it has no answer sets")]
    InconsistentProgram,
    #[error("{0} is a ranked subject; it has no weight")]
    RankedSubject(Atom),
    #[error("{0} is not a ranked subject")]
    NotRankedSubject(Atom),
    #[error("ranked subjects cannot be combined with &, | or ~ inside T(...): {0}")]
    RankedComplexCombination(Formula),
    #[error("only atoms, &, | and ~ have a weight: {0}")]
    UnsupportedShape(Formula),
    #[error("query must be an implication A -> B: {0}")]
    NotAnImplication(Formula),
    #[error("weight arithmetic overflowed 64 bits")]
    Overflow,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/***** WEIGHTS *****/
/// `W_A(s)`: sum of the weights of the conditionals for `A` whose consequent
/// holds in `s`. Zero for atoms with no conditionals.
pub fn weight_of(kb: &ConditionalKB, subject: &Atom, s: &AnswerSet) -> Result<i64, EngineError> {
    if kb.is_ranked_subject(subject) {
        return Err(EngineError::RankedSubject(subject.clone()));
    }
    kb.weighted()
        .iter()
        .filter(|c| &c.subject == subject && eval_unchecked(s, &c.consequent))
        .try_fold(0i64, |acc, c| acc.checked_add(c.weight).ok_or(EngineError::Overflow))
}

/// Number of rank-`rank` conditionals for `subject` satisfied by `s`; a
/// conditional is satisfied when `s` falsifies the subject or satisfies the
/// consequent.
pub fn ranked_satisfied_count(kb: &ConditionalKB, subject: &Atom, rank: u32, s: &AnswerSet) -> Result<usize, EngineError> {
    if !kb.is_ranked_subject(subject) {
        return Err(EngineError::NotRankedSubject(subject.clone()));
    }
    let subject_holds = s.contains(subject);
    Ok(kb.ranked().iter().filter(|c| &c.subject == subject && c.rank == rank).filter(|c| !subject_holds || eval_unchecked(s, &c.consequent)).count())
}

/// Per-world weights of every weighted subject, plus the global extremes
/// used by negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    weights: BTreeMap<Atom, Vec<i64>>,
    global_max: i64,
    global_min: i64,
}

impl WeightTable {
    fn build(kb: &ConditionalKB, worlds: &[AnswerSet]) -> Result<Self, EngineError> {
        let mut weights = BTreeMap::new();
        for subject in kb.weighted_subjects() {
            let row = worlds.iter().map(|w| weight_of(kb, &subject, w)).collect::<Result<Vec<_>, _>>()?;
            weights.insert(subject, row);
        }
        let all = weights.values().flatten();
        let global_max = all.clone().copied().max().unwrap_or(0);
        let global_min = all.copied().min().unwrap_or(0);
        Ok(Self { weights, global_max, global_min })
    }

    /// Weight of `subject` at world `world`; zero for atoms without weighted
    /// conditionals.
    pub fn get(&self, subject: &Atom, world: usize) -> i64 {
        self.weights.get(subject).map_or(0, |row| row[world])
    }

    pub fn row(&self, subject: &Atom) -> Option<&[i64]> {
        self.weights.get(subject).map(Vec::as_slice)
    }

    pub fn subjects(&self) -> impl Iterator<Item = &Atom> {
        self.weights.keys()
    }

    pub fn max(&self) -> i64 {
        self.global_max
    }

    pub fn min(&self) -> i64 {
        self.global_min
    }
}

/// `Max - w + Min`, checked.
fn complement(max: i64, min: i64, w: i64) -> Result<i64, EngineError> {
    max.checked_sub(w).and_then(|x| x.checked_add(min)).ok_or(EngineError::Overflow)
}

fn combine(f: &Formula, atom_weight: &mut dyn FnMut(&Atom) -> Result<i64, EngineError>, max: i64, min: i64) -> Result<i64, EngineError> {
    match f {
        Formula::Atom(a) => atom_weight(a),
        Formula::And(l, r) => Ok(combine(l, atom_weight, max, min)?.min(combine(r, atom_weight, max, min)?)),
        Formula::Or(l, r) => Ok(combine(l, atom_weight, max, min)?.max(combine(r, atom_weight, max, min)?)),
        Formula::Not(x) => complement(max, min, combine(x, atom_weight, max, min)?),
        Formula::Top | Formula::Bottom | Formula::Implies(..) | Formula::Typ(_) => Err(EngineError::UnsupportedShape(f.clone())),
    }
}

/// Weight of a boolean combination of atoms at `s`, computed from the
/// knowledge base.
pub fn weight_of_formula(model: &PreferentialModel, f: &Formula, s: &AnswerSet) -> Result<i64, EngineError> {
    let (max, min) = (model.weights.max(), model.weights.min());
    combine(f, &mut |a| weight_of(&model.kb, a, s), max, min)
}

/***** PREFERENCES *****/
/// How much a world is preferred for some argument of `T`. Larger is more
/// typical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PreferenceKey {
    Weight(i64),
    /// Satisfied-conditional counts, highest rank first.
    Ranked(Vec<usize>),
}

impl Display for PreferenceKey {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            PreferenceKey::Weight(w) => write!(f, "{w}"),
            PreferenceKey::Ranked(counts) => {
                f.write_str("[")?;
                for (i, c) in counts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            },
        }
    }
}

/// Outcome of comparing two worlds under `<=_A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    /// The first world is strictly preferred (`s1 <_A s2`).
    StrictlyLess,
    Equivalent,
    StrictlyGreater,
}

/// The canonical model: every answer set as a world, the weight table, and
/// the ranked conditionals grouped by subject and rank.
#[derive(Debug, Clone)]
pub struct PreferentialModel {
    worlds: Vec<AnswerSet>,
    kb: ConditionalKB,
    weights: WeightTable,
    ranked_index: BTreeMap<Atom, BTreeMap<u32, Vec<Formula>>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Skip [`simplify`] after grounding.
    pub no_simplify: bool,
    pub max_answer_sets: Option<usize>,
}

/// Grounds and solves `pi`, then builds the canonical model for `kb`.
pub fn build_model(pi: &Program, kb: &ConditionalKB) -> Result<PreferentialModel, EngineError> {
    build_model_with(pi, kb, BuildOptions::default())
}

pub fn build_model_with(pi: &Program, kb: &ConditionalKB, opts: BuildOptions) -> Result<PreferentialModel, EngineError> {
    let mut g = ground(pi)?;
    if !opts.no_simplify {
        g = simplify(&g);
    }
    let worlds = enumerate_limited(&normalize(&g), opts.max_answer_sets)?;
    PreferentialModel::from_worlds(worlds, kb.clone())
}

impl PreferentialModel {
    /// Model over the given worlds, which are sorted into canonical order.
    pub fn from_worlds(mut worlds: Vec<AnswerSet>, kb: ConditionalKB) -> Result<Self, EngineError> {
        worlds.sort();
        worlds.dedup();
        if worlds.is_empty() {
            return Err(EngineError::InconsistentProgram);
        }
        let weights = WeightTable::build(&kb, &worlds)?;
        let ranked_index = kb
            .ranked_subjects()
            .into_iter()
            .map(|a| {
                let levels = kb.ranked_levels(&a).into_iter().map(|(l, fs)| (l, fs.into_iter().cloned().collect())).collect();
                (a, levels)
            })
            .collect();
        Ok(Self { worlds, kb, weights, ranked_index })
    }

    pub fn worlds(&self) -> &[AnswerSet] {
        &self.worlds
    }

    pub fn kb(&self) -> &ConditionalKB {
        &self.kb
    }

    pub fn weight_table(&self) -> &WeightTable {
        &self.weights
    }

    pub fn ranked_index(&self) -> &BTreeMap<Atom, BTreeMap<u32, Vec<Formula>>> {
        &self.ranked_index
    }

    pub fn distinguished(&self) -> BTreeSet<Atom> {
        self.kb.distinguished()
    }

    pub fn world_index(&self, s: &AnswerSet) -> Option<usize> {
        self.worlds.binary_search(s).ok()
    }

    /// Satisfied counts for a ranked subject, highest rank first.
    fn ranked_counts(&self, subject: &Atom, s: &AnswerSet) -> Vec<usize> {
        let holds = s.contains(subject);
        self.ranked_index[subject].values().rev().map(|level| level.iter().filter(|b| !holds || eval_unchecked(s, b)).count()).collect()
    }

    /// Checks that `f` may be used as a preference argument and tells
    /// whether it is a lone ranked subject.
    fn classify<'a>(&self, f: &'a Formula) -> Result<Option<&'a Atom>, EngineError> {
        if let Formula::Atom(a) = f {
            return Ok(self.ranked_index.contains_key(a).then_some(a));
        }
        combine(f, &mut |_| Ok(0), 0, 0)?;
        if f.atoms().iter().any(|a| self.ranked_index.contains_key(a)) {
            return Err(EngineError::RankedComplexCombination(f.clone()));
        }
        Ok(None)
    }

    fn key_for(&self, f: &Formula, ranked: Option<&Atom>, s: &AnswerSet) -> Result<PreferenceKey, EngineError> {
        match ranked {
            Some(a) => Ok(PreferenceKey::Ranked(self.ranked_counts(a, s))),
            None => weight_of_formula(self, f, s).map(PreferenceKey::Weight),
        }
    }

    /// Preference key of world `i`, read from the weight table.
    fn key_at(&self, f: &Formula, ranked: Option<&Atom>, i: usize) -> Result<PreferenceKey, EngineError> {
        match ranked {
            Some(a) => Ok(PreferenceKey::Ranked(self.ranked_counts(a, &self.worlds[i]))),
            None => {
                let w = &self.weights;
                combine(f, &mut |a| Ok(w.get(a, i)), w.max(), w.min()).map(PreferenceKey::Weight)
            },
        }
    }

    /// Preference key of `s` for argument `f`.
    pub fn preference_key(&self, f: &Formula, s: &AnswerSet) -> Result<PreferenceKey, EngineError> {
        let ranked = self.classify(f)?;
        self.key_for(f, ranked, s)
    }

    /// Indices of the typical worlds of `f` and their common key.
    fn typical_indices(&self, f: &Formula) -> Result<(Vec<usize>, Option<PreferenceKey>), EngineError> {
        let ranked = self.classify(f)?;
        let mut best: Option<PreferenceKey> = None;
        let mut out = Vec::new();
        for (i, w) in self.worlds.iter().enumerate() {
            if !eval_unchecked(w, f) {
                continue;
            }
            let key = self.key_at(f, ranked, i)?;
            match best.as_ref().map(|b| key.cmp(b)) {
                None | Some(Ordering::Greater) => {
                    best = Some(key);
                    out.clear();
                    out.push(i);
                },
                Some(Ordering::Equal) => out.push(i),
                Some(Ordering::Less) => {},
            }
        }
        Ok((out, best))
    }
}

/// Compares `s1` and `s2` under `<=_f`.
pub fn prefers(model: &PreferentialModel, f: &Formula, s1: &AnswerSet, s2: &AnswerSet) -> Result<Preference, EngineError> {
    let ranked = model.classify(f)?;
    let (k1, k2) = (model.key_for(f, ranked, s1)?, model.key_for(f, ranked, s2)?);
    Ok(match k1.cmp(&k2) {
        Ordering::Greater => Preference::StrictlyLess,
        Ordering::Equal => Preference::Equivalent,
        Ordering::Less => Preference::StrictlyGreater,
    })
}

/// The `<_f`-minimal worlds among those satisfying `f`, in canonical order.
pub fn typical_worlds(model: &PreferentialModel, f: &Formula) -> Result<Vec<AnswerSet>, EngineError> {
    let (idx, _) = model.typical_indices(f)?;
    Ok(idx.into_iter().map(|i| model.worlds[i].clone()).collect())
}

/// Truth of `f` at `s`, with `T(C)` true iff `s` is a typical world of `C`.
pub fn eval_lt(model: &PreferentialModel, s: &AnswerSet, f: &Formula) -> Result<bool, EngineError> {
    validate_formula(f)?;
    let mut typical: BTreeMap<&Formula, BTreeSet<usize>> = BTreeMap::new();
    for c in f.typ_arguments() {
        if !typical.contains_key(c) {
            typical.insert(c, model.typical_indices(c)?.0.into_iter().collect());
        }
    }
    let here = model.world_index(s);
    Ok(eval_with_typ(f, s, &|c| here.is_some_and(|i| typical[c].contains(&i))))
}

fn eval_with_typ(f: &Formula, s: &AnswerSet, typ: &dyn Fn(&Formula) -> bool) -> bool {
    match f {
        Formula::Atom(a) => s.contains(a),
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Not(x) => !eval_with_typ(x, s, typ),
        Formula::And(l, r) => eval_with_typ(l, s, typ) && eval_with_typ(r, s, typ),
        Formula::Or(l, r) => eval_with_typ(l, s, typ) || eval_with_typ(r, s, typ),
        Formula::Implies(l, r) => !eval_with_typ(l, s, typ) || eval_with_typ(r, s, typ),
        Formula::Typ(c) => typ(c),
    }
}

/***** ENTAILMENT *****/
/// The best preference key and the typical worlds of one `T(C)` argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypWitness {
    pub argument: Formula,
    /// `None` when no world satisfies the argument.
    pub best: Option<PreferenceKey>,
    pub typical: Vec<AnswerSet>,
}

impl TypWitness {
    /// Maximal weight over the worlds satisfying the argument, for weighted
    /// arguments.
    pub fn max_weight(&self) -> Option<i64> {
        match self.best {
            Some(PreferenceKey::Weight(w)) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailmentVerdict {
    pub entailed: bool,
    /// First world, in canonical order, falsifying the query.
    pub counterexample: Option<AnswerSet>,
    /// One entry per distinct `T(C)` argument, in order of first occurrence.
    pub typ_witnesses: Vec<TypWitness>,
}

/// Decides whether the implication `query` holds at every world.
pub fn check_entailment(model: &PreferentialModel, query: &Formula) -> Result<EntailmentVerdict, EngineError> {
    if !matches!(query, Formula::Implies(..)) {
        return Err(EngineError::NotAnImplication(query.clone()));
    }
    validate_formula(query)?;
    let mut witnesses: Vec<TypWitness> = Vec::new();
    let mut typical: BTreeMap<&Formula, BTreeSet<usize>> = BTreeMap::new();
    for c in query.typ_arguments() {
        if typical.contains_key(c) {
            continue;
        }
        let (idx, best) = model.typical_indices(c)?;
        witnesses.push(TypWitness { argument: c.clone(), best, typical: idx.iter().map(|&i| model.worlds[i].clone()).collect() });
        typical.insert(c, idx.into_iter().collect());
    }
    let counterexample = model.worlds.iter().enumerate().find(|(i, w)| !eval_with_typ(query, w, &|c| typical[c].contains(i))).map(|(_, w)| w.clone());
    Ok(EntailmentVerdict { entailed: counterexample.is_none(), counterexample, typ_witnesses: witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parser::{parse_formula, parse_kb, parse_program, parse_query};

    fn set(atoms: &[&str]) -> AnswerSet {
        AnswerSet::new(atoms.iter().map(|a| Atom::prop(*a)))
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn students() -> (PreferentialModel, AnswerSet, AnswerSet) {
        let s1 = set(&["student", "employee", "adult", "has_SSN", "young", "has_classes"]);
        let s2 = set(&["student", "employee", "adult", "has_SSN", "has_boss"]);
        let model = PreferentialModel::from_worlds(vec![s1.clone(), s2.clone()], fixtures::students_kb()).unwrap();
        (model, s1, s2)
    }

    #[test]
    fn student_employee_weights() {
        let kb = fixtures::students_kb();
        let (_, s1, s2) = students();
        let (student, employee) = (Atom::prop("student"), Atom::prop("employee"));
        assert_eq!(weight_of(&kb, &student, &s1), Ok(170));
        assert_eq!(weight_of(&kb, &employee, &s1), Ok(-120));
        assert_eq!(weight_of(&kb, &student, &s2), Ok(-80));
        assert_eq!(weight_of(&kb, &employee, &s2), Ok(100));
        assert_eq!(weight_of(&kb, &Atom::prop("adult"), &s1), Ok(0));
    }

    #[test]
    fn student_employee_preferences() {
        let (m, s1, s2) = students();
        assert_eq!(prefers(&m, &f("student"), &s1, &s2), Ok(Preference::StrictlyLess));
        assert_eq!(prefers(&m, &f("employee"), &s2, &s1), Ok(Preference::StrictlyLess));
        assert_eq!(prefers(&m, &f("employee"), &s1, &s2), Ok(Preference::StrictlyGreater));
        assert_eq!(prefers(&m, &f("student"), &s1, &s1), Ok(Preference::Equivalent));
    }

    #[test]
    fn students_program_has_exactly_s1_and_s2() {
        let m = build_model(&fixtures::students_program(), &fixtures::students_kb()).unwrap();
        let (_, s1, s2) = students();
        let mut expected = vec![s1, s2];
        expected.sort();
        assert_eq!(m.worlds(), expected.as_slice());
        assert_eq!(m.weight_table().max(), 170);
        assert_eq!(m.weight_table().min(), -120);
    }

    #[test]
    fn formula_weights_follow_min_max_complement() {
        let (m, s1, s2) = students();
        for s in [&s1, &s2] {
            let ws = weight_of_formula(&m, &f("student"), s).unwrap();
            let we = weight_of_formula(&m, &f("employee"), s).unwrap();
            assert_eq!(weight_of_formula(&m, &f("student & employee"), s), Ok(ws.min(we)));
            assert_eq!(weight_of_formula(&m, &f("student | employee"), s), Ok(ws.max(we)));
            assert_eq!(weight_of_formula(&m, &f("~student"), s), Ok(170 - ws - 120));
            assert_eq!(weight_of_formula(&m, &f("student & student"), s), Ok(ws));
            assert_eq!(weight_of_formula(&m, &f("~~student"), s), Ok(ws));
        }
        assert!(matches!(weight_of_formula(&m, &f("a -> b"), &s1), Err(EngineError::UnsupportedShape(_))));
        assert!(matches!(weight_of_formula(&m, &Formula::Top, &s1), Err(EngineError::UnsupportedShape(_))));
    }

    fn horses() -> PreferentialModel {
        build_model(&fixtures::horses_program(), &fixtures::horses_kb()).unwrap()
    }

    #[test]
    fn ranked_counts() {
        let kb = fixtures::horses_kb();
        let horse = Atom::prop("horse");
        let s = set(&["horse", "has_tail", "run_fast"]);
        assert_eq!(ranked_satisfied_count(&kb, &horse, 1, &s), Ok(2));
        assert_eq!(ranked_satisfied_count(&kb, &horse, 0, &s), Ok(0));
        assert_eq!(ranked_satisfied_count(&kb, &horse, 7, &s), Ok(0));
        // vacuous when the subject is false
        assert_eq!(ranked_satisfied_count(&kb, &horse, 0, &set(&[])), Ok(2));
        assert!(matches!(ranked_satisfied_count(&kb, &Atom::prop("cow"), 0, &s), Err(EngineError::NotRankedSubject(_))));
    }

    #[test]
    fn ranked_preference_is_lexicographic_from_the_top_rank() {
        let m = horses();
        let fast_tail = set(&["horse", "run_fast", "has_tail"]);
        let saddle_mane_fast = set(&["horse", "has_Saddle", "has_Long_Mane", "run_fast"]);
        assert_eq!(prefers(&m, &f("horse"), &fast_tail, &saddle_mane_fast), Ok(Preference::StrictlyLess));
        assert_eq!(prefers(&m, &f("horse"), &saddle_mane_fast, &fast_tail), Ok(Preference::StrictlyGreater));
        let typical = typical_worlds(&m, &f("horse")).unwrap();
        assert_eq!(typical, vec![set(&["has_Long_Mane", "has_Saddle", "has_tail", "horse", "run_fast"])]);
    }

    #[test]
    fn ranked_subjects_have_no_weight_and_do_not_combine() {
        let m = horses();
        let s = &m.worlds()[0].clone();
        assert!(matches!(weight_of(m.kb(), &Atom::prop("horse"), s), Err(EngineError::RankedSubject(_))));
        assert!(matches!(typical_worlds(&m, &f("horse & run_fast")), Err(EngineError::RankedComplexCombination(_))));
        assert!(matches!(prefers(&m, &f("~horse"), s, s), Err(EngineError::RankedComplexCombination(_))));
    }

    #[test]
    fn typical_worlds_edge_cases() {
        let (m, s1, s2) = students();
        assert!(typical_worlds(&m, &f("has_boss & young")).unwrap().is_empty());
        // adult has no conditionals: every adult world ties
        let mut both = vec![s1.clone(), s2.clone()];
        both.sort();
        assert_eq!(typical_worlds(&m, &f("adult")).unwrap(), both);
        assert_eq!(typical_worlds(&m, &f("student")).unwrap(), vec![s1]);
        assert_eq!(typical_worlds(&m, &f("employee")).unwrap(), vec![s2]);
    }

    #[test]
    fn eval_lt_typ_implies_argument() {
        let (m, s1, s2) = students();
        for s in [&s1, &s2] {
            for c in ["student", "employee", "student & ~young", "young | has_boss"] {
                if eval_lt(&m, s, &Formula::typ(f(c))).unwrap() {
                    assert!(eval_lt(&m, s, &f(c)).unwrap());
                }
            }
            assert_eq!(eval_lt(&m, s, &f("young -> has_classes")).unwrap(), eval_unchecked(s, &f("young -> has_classes")));
        }
    }

    #[test]
    fn build_model_errors_and_trivial_cases() {
        let m = build_model(&parse_program("a.").unwrap(), &ConditionalKB::empty()).unwrap();
        assert_eq!(m.worlds(), &[set(&["a"])]);
        assert_eq!((m.weight_table().max(), m.weight_table().min()), (0, 0));
        assert_eq!(weight_of_formula(&m, &f("a"), &m.worlds()[0]), Ok(0));
        assert!(matches!(build_model(&parse_program(":- .").unwrap(), &ConditionalKB::empty()), Err(EngineError::InconsistentProgram)));
    }

    #[test]
    fn entailment_requires_an_implication() {
        let (m, ..) = students();
        assert!(matches!(check_entailment(&m, &f("T(student)")), Err(EngineError::NotAnImplication(_))));
    }

    #[test]
    fn empty_antecedent_is_trivially_entailed() {
        let (m, ..) = students();
        let v = check_entailment(&m, &parse_query("T(has_boss & young) -> has_classes").unwrap()).unwrap();
        assert!(v.entailed);
        assert_eq!(v.counterexample, None);
        assert_eq!(v.typ_witnesses[0].best, None);
    }

    #[test]
    fn overflow_is_detected() {
        let kb = parse_kb(&format!("T(a) -> a : {}.\nT(a) -> b : {}.", i64::MAX, i64::MAX)).unwrap();
        let err = build_model(&parse_program("a. b.").unwrap(), &kb).unwrap_err();
        assert_eq!(err, EngineError::Overflow);
        let kb = parse_kb(&format!("T(a) -> a : {}.\nT(b) -> b : -{}.", i64::MAX, i64::MAX)).unwrap();
        let m = build_model(&parse_program("a. b.").unwrap(), &kb).unwrap();
        // Max - W + Min with W = Min: MAX - (-MAX) overflows
        assert_eq!(weight_of_formula(&m, &f("~b"), &m.worlds()[0]), Err(EngineError::Overflow));
    }

    #[test]
    fn cinema_distinguished_atoms() {
        let m = fixtures::cinema_model();
        let d: Vec<String> = m.distinguished().iter().map(|a| a.to_string()).collect();
        assert_eq!(d, vec!["happy_sat(ada)", "happy_sat(bob)", "happy_sat(mary)"]);
    }
}
