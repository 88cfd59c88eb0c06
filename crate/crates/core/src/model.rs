//! Shared data model: terms, atoms, rules, programs, answer sets, formulas of
//! the typicality logic, and conditional knowledge bases.
//!
//! Everything here is plain immutable data. The only logic is structural
//! validation ([`validate_formula`], [`ConditionalKB::new`]) and classical
//! evaluation of typicality-free formulas ([`eval_classical`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Display, Formatter};

use thiserror::Error;

/***** ERRORS *****/
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("typicality operator cannot be nested: {0}")]
    NestedTypicality(Formula),
    #[error("`{inner}` is not allowed inside T(...)")]
    ForbiddenInsideTyp { inner: Formula },
    #[error("typicality operator not allowed in classical formula {0}")]
    TypNotAllowed(Formula),
    #[error("consequent of a conditional must not contain T(...): {0}")]
    TypInConsequent(Formula),
    #[error("subject {0} has both weighted and ranked conditionals")]
    MixedStrategyForSubject(Atom),
}

/***** TERMS AND ATOMS *****/
/// A ground constant: a lowercase symbol or an integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    Int(i64),
    Sym(String),
}

impl Constant {
    pub fn sym(name: impl Into<String>) -> Self {
        Constant::Sym(name.into())
    }
}

impl Display for Constant {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Int(i) => write!(f, "{i}"),
            Constant::Sym(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Constant(Constant),
    Variable(String),
}

impl Term {
    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant(c) => c.fmt(f),
            Term::Variable(v) => f.write_str(v),
        }
    }
}

/// A ground atom `pred(c1,...,cn)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Constant>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Constant>) -> Self {
        Self { predicate: predicate.into(), args }
    }

    /// Zero-arity atom.
    pub fn prop(predicate: impl Into<String>) -> Self {
        Self::new(predicate, Vec::new())
    }

    /// Atom with symbolic arguments only, e.g. `Atom::syms("married", &["bob", "mary"])`.
    pub fn syms(predicate: impl Into<String>, args: &[&str]) -> Self {
        Self::new(predicate, args.iter().map(|a| Constant::sym(*a)).collect())
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                a.fmt(f)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// An atom that may still contain variables, as written in a rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomPattern {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl AtomPattern {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Self { predicate: predicate.into(), args }
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Variable(v) => Some(v.as_str()),
            Term::Constant(_) => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_variable())
    }

    /// Returns the ground atom if no variables occur.
    pub fn to_ground(&self) -> Option<Atom> {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Constant(c) => Some(c.clone()),
                Term::Variable(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Atom::new(self.predicate.clone(), args))
    }
}

impl From<&Atom> for AtomPattern {
    fn from(a: &Atom) -> Self {
        AtomPattern::new(a.predicate.clone(), a.args.iter().cloned().map(Term::Constant).collect())
    }
}

impl Display for AtomPattern {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                a.fmt(f)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/***** RULES AND PROGRAMS *****/
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
}

impl Display for CmpOp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BodyElement {
    Positive(AtomPattern),
    /// Default negation, `not a`.
    Negated(AtomPattern),
    Comparison {
        left: Term,
        op: CmpOp,
        right: Term,
    },
    /// `l { a1; ...; an }`: at least `lower` of the atoms hold.
    CardinalityLower {
        lower: u32,
        atoms: Vec<AtomPattern>,
    },
}

impl BodyElement {
    /// Variables occurring anywhere in this element.
    pub fn variables(&self) -> Vec<&str> {
        match self {
            BodyElement::Positive(a) | BodyElement::Negated(a) => a.variables().collect(),
            BodyElement::Comparison { left, right, .. } => [left, right]
                .into_iter()
                .filter_map(|t| match t {
                    Term::Variable(v) => Some(v.as_str()),
                    Term::Constant(_) => None,
                })
                .collect(),
            BodyElement::CardinalityLower { atoms, .. } => atoms.iter().flat_map(|a| a.variables()).collect(),
        }
    }
}

impl Display for BodyElement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            BodyElement::Positive(a) => a.fmt(f),
            BodyElement::Negated(a) => write!(f, "not {a}"),
            BodyElement::Comparison { left, op, right } => write!(f, "{left} {op} {right}"),
            BodyElement::CardinalityLower { lower, atoms } => {
                write!(f, "{lower} {{ ")?;
                write_joined(f, atoms, "; ")?;
                f.write_str(" }")
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Head {
    Normal(AtomPattern),
    Choice {
        lower: Option<u32>,
        atoms: Vec<AtomPattern>,
        upper: Option<u32>,
    },
    /// Integrity constraint.
    Empty,
}

impl Head {
    pub fn atoms(&self) -> &[AtomPattern] {
        match self {
            Head::Normal(a) => std::slice::from_ref(a),
            Head::Choice { atoms, .. } => atoms,
            Head::Empty => &[],
        }
    }
}

impl Display for Head {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Head::Normal(a) => a.fmt(f),
            Head::Choice { lower, atoms, upper } => {
                if let Some(l) = lower {
                    write!(f, "{l} ")?;
                }
                f.write_str("{ ")?;
                write_joined(f, atoms, "; ")?;
                f.write_str(" }")?;
                if let Some(u) = upper {
                    write!(f, " {u}")?;
                }
                Ok(())
            },
            Head::Empty => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Head,
    pub body: Vec<BodyElement>,
}

impl Rule {
    pub fn fact(atom: &Atom) -> Self {
        Rule { head: Head::Normal(atom.into()), body: Vec::new() }
    }

    pub fn is_constraint(&self) -> bool {
        matches!(self.head, Head::Empty)
    }

    /// All variables of the rule, sorted and deduplicated.
    pub fn variables(&self) -> BTreeSet<&str> {
        let mut vars: BTreeSet<&str> = self.head.atoms().iter().flat_map(|a| a.variables()).collect();
        for b in &self.body {
            vars.extend(b.variables());
        }
        vars
    }

    /// Variables bound by a positive, non-comparison, non-cardinality body atom.
    pub fn bound_variables(&self) -> BTreeSet<&str> {
        self.body
            .iter()
            .filter_map(|b| match b {
                BodyElement::Positive(a) => Some(a.variables()),
                _ => None,
            })
            .flatten()
            .collect()
    }

    /// The first variable (in sorted order) violating safety, if any.
    pub fn unsafe_variable(&self) -> Option<&str> {
        let bound = self.bound_variables();
        self.variables().into_iter().find(|v| !bound.contains(v))
    }

    pub fn is_ground(&self) -> bool {
        self.variables().is_empty()
    }
}

impl Display for Rule {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        self.head.fmt(f)?;
        if self.body.is_empty() {
            if self.is_constraint() {
                f.write_str(":- .")
            } else {
                f.write_str(".")
            }
        } else {
            if !self.is_constraint() {
                f.write_str(" ")?;
            }
            f.write_str(":- ")?;
            write_joined(f, &self.body, ", ")?;
            f.write_str(".")
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Display for Program {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A variable-free program together with its Herbrand base.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<Rule>,
    pub herbrand_base: BTreeSet<Atom>,
}

impl GroundProgram {
    /// Ground atoms occurring anywhere in the rules.
    pub fn rule_atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            for a in r.head.atoms() {
                out.extend(a.to_ground());
            }
            for b in &r.body {
                match b {
                    BodyElement::Positive(a) | BodyElement::Negated(a) => out.extend(a.to_ground()),
                    BodyElement::CardinalityLower { atoms, .. } => out.extend(atoms.iter().filter_map(|a| a.to_ground())),
                    BodyElement::Comparison { .. } => {},
                }
            }
        }
        out
    }
}

impl Display for GroundProgram {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/***** ANSWER SETS *****/
/// A set of true ground atoms; every other atom is false.
///
/// Answer sets order by their sorted atom sequence, which is the canonical
/// world order used throughout.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnswerSet {
    pub atoms: BTreeSet<Atom>,
}

impl AnswerSet {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        Self { atoms: atoms.into_iter().collect() }
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.atoms.contains(a)
    }
}

impl Display for AnswerSet {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.atoms, " ")
    }
}

/***** FORMULAS *****/
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Typ(Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }
    pub fn prop(name: &str) -> Self {
        Formula::Atom(Atom::prop(name))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }
    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }
    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }
    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }
    pub fn typ(f: Formula) -> Self {
        Formula::Typ(Box::new(f))
    }

    pub fn contains_typ(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => false,
            Formula::Typ(_) => true,
            Formula::Not(f) => f.contains_typ(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => l.contains_typ() || r.contains_typ(),
        }
    }

    /// Atoms occurring in the formula, including under `T`.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            },
            Formula::Top | Formula::Bottom => {},
            Formula::Not(f) | Formula::Typ(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            },
        }
    }

    /// Arguments of every `T(...)` occurrence, left to right.
    pub fn typ_arguments(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.collect_typ(&mut out);
        out
    }

    fn collect_typ<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => {},
            Formula::Typ(f) => out.push(f),
            Formula::Not(f) => f.collect_typ(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_typ(out);
                r.collect_typ(out);
            },
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }
}

/// Prints in the query syntax (`& | ~ ->`, `T(...)`, `#true`, `#false`).
/// Binary children are parenthesised whenever they are themselves binary, so
/// the output re-parses to the same tree.
impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        fn child(f: &mut Formatter<'_>, c: &Formula) -> fmt::Result {
            if c.precedence() < 4 {
                write!(f, "({c})")
            } else {
                c.fmt(f)
            }
        }
        match self {
            Formula::Atom(a) => a.fmt(f),
            Formula::Top => f.write_str("#true"),
            Formula::Bottom => f.write_str("#false"),
            Formula::Not(x) => {
                f.write_str("~")?;
                child(f, x)
            },
            Formula::Typ(x) => write!(f, "T({x})"),
            Formula::And(l, r) => {
                child(f, l)?;
                f.write_str(" & ")?;
                child(f, r)
            },
            Formula::Or(l, r) => {
                child(f, l)?;
                f.write_str(" | ")?;
                child(f, r)
            },
            Formula::Implies(l, r) => {
                child(f, l)?;
                f.write_str(" -> ")?;
                child(f, r)
            },
        }
    }
}

/// Checks that `T` is not nested and that typicality arguments are built
/// from atoms with `&`, `|` and `~` only.
pub fn validate_formula(f: &Formula) -> Result<(), ModelError> {
    fn inside_typ(f: &Formula) -> Result<(), ModelError> {
        match f {
            Formula::Atom(_) => Ok(()),
            Formula::Typ(_) => Err(ModelError::NestedTypicality(f.clone())),
            Formula::Top | Formula::Bottom | Formula::Implies(..) => Err(ModelError::ForbiddenInsideTyp { inner: f.clone() }),
            Formula::Not(x) => inside_typ(x),
            Formula::And(l, r) | Formula::Or(l, r) => {
                inside_typ(l)?;
                inside_typ(r)
            },
        }
    }
    match f {
        Formula::Atom(_) | Formula::Top | Formula::Bottom => Ok(()),
        Formula::Typ(x) => inside_typ(x).map_err(|e| match e {
            ModelError::NestedTypicality(_) => ModelError::NestedTypicality(f.clone()),
            e => e,
        }),
        Formula::Not(x) => validate_formula(x),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            validate_formula(l)?;
            validate_formula(r)
        },
    }
}

/// Truth of a typicality-free formula in the interpretation where exactly
/// the atoms of `s` are true.
pub fn eval_classical(s: &AnswerSet, f: &Formula) -> Result<bool, ModelError> {
    if f.contains_typ() {
        return Err(ModelError::TypNotAllowed(f.clone()));
    }
    Ok(eval_unchecked(s, f))
}

/// Classical evaluation for formulas already known to be `T`-free.
pub(crate) fn eval_unchecked(s: &AnswerSet, f: &Formula) -> bool {
    eval_with(f, &|a| s.contains(a))
}

/// Classical evaluation under an arbitrary valuation. `T` nodes evaluate
/// their argument classically.
pub fn eval_with(f: &Formula, val: &dyn Fn(&Atom) -> bool) -> bool {
    match f {
        Formula::Atom(a) => val(a),
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Not(x) => !eval_with(x, val),
        Formula::And(l, r) => eval_with(l, val) && eval_with(r, val),
        Formula::Or(l, r) => eval_with(l, val) || eval_with(r, val),
        Formula::Implies(l, r) => !eval_with(l, val) || eval_with(r, val),
        Formula::Typ(x) => eval_with(x, val),
    }
}

/***** CONDITIONAL KNOWLEDGE BASES *****/
/// `(T(subject) -> consequent, weight)`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedConditional {
    pub subject: Atom,
    pub consequent: Formula,
    pub weight: i64,
}

impl Display for WeightedConditional {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "T({}) -> {} : {}.", self.subject, self.consequent, self.weight)
    }
}

/// `(T(subject) -> consequent)` with a rank; higher ranks matter more.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankedConditional {
    pub subject: Atom,
    pub consequent: Formula,
    pub rank: u32,
}

impl Display for RankedConditional {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "T({}) -> {} @ {}.", self.subject, self.consequent, self.rank)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConditionalKB {
    weighted: Vec<WeightedConditional>,
    ranked: Vec<RankedConditional>,
}

impl ConditionalKB {
    /// Builds a KB, rejecting typicality in consequents and subjects that
    /// mix weighted and ranked conditionals.
    pub fn new(weighted: Vec<WeightedConditional>, ranked: Vec<RankedConditional>) -> Result<Self, ModelError> {
        for c in &weighted {
            if c.consequent.contains_typ() {
                return Err(ModelError::TypInConsequent(c.consequent.clone()));
            }
        }
        for c in &ranked {
            if c.consequent.contains_typ() {
                return Err(ModelError::TypInConsequent(c.consequent.clone()));
            }
        }
        let weighted_subjects: BTreeSet<&Atom> = weighted.iter().map(|c| &c.subject).collect();
        if let Some(c) = ranked.iter().find(|c| weighted_subjects.contains(&c.subject)) {
            return Err(ModelError::MixedStrategyForSubject(c.subject.clone()));
        }
        Ok(Self { weighted, ranked })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn weighted(&self) -> &[WeightedConditional] {
        &self.weighted
    }

    pub fn ranked(&self) -> &[RankedConditional] {
        &self.ranked
    }

    pub fn is_empty(&self) -> bool {
        self.weighted.is_empty() && self.ranked.is_empty()
    }

    /// Every atom used as the subject of some conditional.
    pub fn distinguished(&self) -> BTreeSet<Atom> {
        self.weighted_subjects().into_iter().chain(self.ranked_subjects()).collect()
    }

    pub fn weighted_subjects(&self) -> BTreeSet<Atom> {
        self.weighted.iter().map(|c| c.subject.clone()).collect()
    }

    pub fn ranked_subjects(&self) -> BTreeSet<Atom> {
        self.ranked.iter().map(|c| c.subject.clone()).collect()
    }

    pub fn is_ranked_subject(&self, a: &Atom) -> bool {
        self.ranked.iter().any(|c| &c.subject == a)
    }

    /// Ranked conditionals for `subject`, grouped by rank.
    pub fn ranked_levels(&self, subject: &Atom) -> BTreeMap<u32, Vec<&Formula>> {
        let mut out: BTreeMap<u32, Vec<&Formula>> = BTreeMap::new();
        for c in self.ranked.iter().filter(|c| &c.subject == subject) {
            out.entry(c.rank).or_default().push(&c.consequent);
        }
        out
    }
}

impl Display for ConditionalKB {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for c in &self.weighted {
            writeln!(f, "{c}")?;
        }
        for c in &self.ranked {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

fn write_joined<T: Display>(f: &mut Formatter<'_>, items: impl IntoIterator<Item = T>, sep: &str) -> fmt::Result {
    for (i, x) in items.into_iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        x.fmt(f)?;
    }
    Ok(())
}

/***** TESTS *****/
