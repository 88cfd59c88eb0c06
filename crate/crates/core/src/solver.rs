//! Stable-model enumeration for ground programs.
//!
//! Choice rules are translated into pairs of normal rules over fresh
//! complement atoms; their cardinality bounds and body cardinality elements
//! stay native and are evaluated directly. The enumerator is a backtracking
//! search with completion-style propagation, and every total candidate passes
//! through [`is_stable`] before it is reported, so propagation only needs to
//! be sound, never complete. [`oracle_enumerate`] checks every subset and
//! exists for differential testing.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Display, Formatter};

use thiserror::Error;

use crate::model::{AnswerSet, Atom, AtomPattern, BodyElement, GroundProgram, Head};

/// Hard cap on the atoms the brute-force oracle will enumerate.
pub const ORACLE_MAX_ATOMS: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("oracle enumeration over {atoms} atoms exceeds the cap of {ORACLE_MAX_ATOMS}")]
    TooLarge { atoms: usize },
    #[error("more than {limit} answer sets")]
    TooManyAnswerSets { limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverAtom {
    User(Atom),
    /// Complement of `of` for the choice rule with index `rule`.
    Fresh {
        of: Atom,
        rule: usize,
    },
}

impl Display for SolverAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            SolverAtom::User(a) => a.fmt(f),
            SolverAtom::Fresh { of, rule } => write!(f, "__not{rule}_{of}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cardinality {
    pub lower: u32,
    pub atoms: Vec<AtomId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Body {
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
    pub cards: Vec<Cardinality>,
}

impl Body {
    fn holds(&self, s: &[bool]) -> bool {
        self.pos.iter().all(|a| s[a.0])
            && self.neg.iter().all(|a| !s[a.0])
            && self.cards.iter().all(|c| c.atoms.iter().filter(|a| s[a.0]).count() >= c.lower as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalRule {
    pub head: AtomId,
    pub body: Body,
}

/// `lower <= |atoms ∩ S| <= upper` whenever `body` holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub body: Body,
    pub atoms: Vec<AtomId>,
    pub lower: Option<u32>,
    pub upper: Option<u32>,
}

impl BoundCheck {
    fn satisfied(&self, s: &[bool]) -> bool {
        if !self.body.holds(s) {
            return true;
        }
        let n = self.atoms.iter().filter(|a| s[a.0]).count() as u32;
        self.lower.is_none_or(|l| n >= l) && self.upper.is_none_or(|u| n <= u)
    }
}

/// A ground program with normal heads only, plus native constraint records.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizedProgram {
    pub atoms: Vec<SolverAtom>,
    pub rules: Vec<NormalRule>,
    pub constraints: Vec<Body>,
    pub bounds: Vec<BoundCheck>,
    index: HashMap<Atom, AtomId>,
}

impl NormalizedProgram {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn id(&self, a: &Atom) -> Option<AtomId> {
        self.index.get(a).copied()
    }

    pub fn is_fresh(&self, id: AtomId) -> bool {
        matches!(self.atoms[id.0], SolverAtom::Fresh { .. })
    }

    /// Ids of the non-fresh atoms.
    pub fn user_atoms(&self) -> Vec<AtomId> {
        (0..self.atoms.len()).map(AtomId).filter(|&i| !self.is_fresh(i)).collect()
    }

    /// Candidate set from user atoms, with every fresh atom set to the only
    /// value a stable model can give it: a fresh complement `h'` is defined
    /// by the single rule `h' :- B, not h`.
    pub fn complete_fresh(&self, user: &BTreeSet<AtomId>) -> BTreeSet<AtomId> {
        let mut s = vec![false; self.atoms.len()];
        for a in user {
            s[a.0] = true;
        }
        for r in &self.rules {
            if self.is_fresh(r.head) {
                s[r.head.0] = r.body.holds(&s);
            }
        }
        to_set(&s)
    }

    fn answer_set(&self, s: &[bool]) -> AnswerSet {
        AnswerSet::new(s.iter().enumerate().filter(|(_, t)| **t).filter_map(|(i, _)| match &self.atoms[i] {
            SolverAtom::User(a) => Some(a.clone()),
            SolverAtom::Fresh { .. } => None,
        }))
    }

    fn intern(&mut self, a: &AtomPattern) -> AtomId {
        let atom = a.to_ground().expect("normalize expects a ground program");
        if let Some(&id) = self.index.get(&atom) {
            return id;
        }
        let id = AtomId(self.atoms.len());
        self.atoms.push(SolverAtom::User(atom.clone()));
        self.index.insert(atom, id);
        id
    }
}

fn to_set(s: &[bool]) -> BTreeSet<AtomId> {
    s.iter().enumerate().filter(|(_, t)| **t).map(|(i, _)| AtomId(i)).collect()
}

/// Translates choice rules `l {H} u :- B` into `h :- B, not h'` and
/// `h' :- B, not h` per head atom plus a native bound check.
pub fn normalize(g: &GroundProgram) -> NormalizedProgram {
    let mut np = NormalizedProgram::default();
    // user atoms first, in sorted order, so ids are canonical
    for a in g.rule_atoms() {
        np.intern(&AtomPattern::from(&a));
    }
    for (idx, rule) in g.rules.iter().enumerate() {
        let mut body = Body::default();
        for b in &rule.body {
            match b {
                BodyElement::Positive(a) => body.pos.push(np.intern(a)),
                BodyElement::Negated(a) => body.neg.push(np.intern(a)),
                BodyElement::CardinalityLower { lower, atoms } => {
                    let atoms = atoms.iter().map(|a| np.intern(a)).collect();
                    body.cards.push(Cardinality { lower: *lower, atoms });
                },
                BodyElement::Comparison { .. } => panic!("comparisons are resolved by the grounder"),
            }
        }
        match &rule.head {
            Head::Normal(a) => {
                let head = np.intern(a);
                np.rules.push(NormalRule { head, body });
            },
            Head::Empty => np.constraints.push(body),
            Head::Choice { lower, atoms, upper } => {
                let mut ids = Vec::new();
                for a in atoms {
                    let h = np.intern(a);
                    if ids.contains(&h) {
                        continue;
                    }
                    ids.push(h);
                    let fresh = AtomId(np.atoms.len());
                    np.atoms.push(SolverAtom::Fresh { of: a.to_ground().unwrap(), rule: idx });
                    let mut with_not_fresh = body.clone();
                    with_not_fresh.neg.push(fresh);
                    np.rules.push(NormalRule { head: h, body: with_not_fresh });
                    let mut with_not_h = body.clone();
                    with_not_h.neg.push(h);
                    np.rules.push(NormalRule { head: fresh, body: with_not_h });
                }
                if lower.is_some() || upper.is_some() {
                    np.bounds.push(BoundCheck { body, atoms: ids, lower: *lower, upper: *upper });
                }
            },
        }
    }
    np
}

/// Least model of the reduct of the normal rules with respect to `s`.
fn reduct_least_model(np: &NormalizedProgram, s: &[bool]) -> Vec<bool> {
    let active: Vec<&NormalRule> = np.rules.iter().filter(|r| r.body.neg.iter().all(|a| !s[a.0])).collect();
    let mut m = vec![false; np.atoms.len()];
    loop {
        let mut changed = false;
        for r in &active {
            if m[r.head.0] {
                continue;
            }
            let fires = r.body.pos.iter().all(|a| m[a.0]) && r.body.cards.iter().all(|c| c.atoms.iter().filter(|a| m[a.0]).count() >= c.lower as usize);
            if fires {
                m[r.head.0] = true;
                changed = true;
            }
        }
        if !changed {
            return m;
        }
    }
}

fn is_stable_vec(np: &NormalizedProgram, s: &[bool]) -> bool {
    np.constraints.iter().all(|c| !c.holds(s)) && np.bounds.iter().all(|b| b.satisfied(s)) && reduct_least_model(np, s) == s
}

/// Whether `s` (over user and fresh atoms) satisfies every constraint and
/// bound and equals the least model of its Gelfond-Lifschitz reduct.
pub fn is_stable(np: &NormalizedProgram, s: &BTreeSet<AtomId>) -> bool {
    let mut v = vec![false; np.atoms.len()];
    for a in s {
        if a.0 >= v.len() {
            return false;
        }
        v[a.0] = true;
    }
    is_stable_vec(np, &v)
}

/***** SEARCH *****/
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Val {
    Unknown,
    True,
    False,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    True,
    False,
    Unknown,
}

struct Search<'a> {
    np: &'a NormalizedProgram,
    assign: Vec<Val>,
    trail: Vec<usize>,
    /// Rules indexed by head atom.
    support: Vec<Vec<usize>>,
    limit: Option<usize>,
    found: Vec<AnswerSet>,
}

struct Conflict;

enum Stop {
    Limit,
}

impl<'a> Search<'a> {
    fn new(np: &'a NormalizedProgram, limit: Option<usize>) -> Self {
        let mut support = vec![Vec::new(); np.atoms.len()];
        for (i, r) in np.rules.iter().enumerate() {
            support[r.head.0].push(i);
        }
        Self { np, assign: vec![Val::Unknown; np.atoms.len()], trail: Vec::new(), support, limit, found: Vec::new() }
    }

    fn set(&mut self, a: AtomId, value: bool) -> Result<bool, Conflict> {
        let v = if value { Val::True } else { Val::False };
        match self.assign[a.0] {
            Val::Unknown => {
                self.assign[a.0] = v;
                self.trail.push(a.0);
                Ok(true)
            },
            cur if cur == v => Ok(false),
            _ => Err(Conflict),
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            self.assign[a] = Val::Unknown;
        }
    }

    fn card_status(&self, c: &Cardinality) -> Status {
        let (mut t, mut u) = (0usize, 0usize);
        for a in &c.atoms {
            match self.assign[a.0] {
                Val::True => t += 1,
                Val::Unknown => u += 1,
                Val::False => {},
            }
        }
        if t >= c.lower as usize {
            Status::True
        } else if t + u < c.lower as usize {
            Status::False
        } else {
            Status::Unknown
        }
    }

    /// Three-valued body status, plus the single unknown plain literal when
    /// it is the only thing left undecided.
    fn body_status(&self, b: &Body) -> (Status, Option<(AtomId, bool)>) {
        let mut unknown_plain = None;
        let mut unknowns = 0usize;
        for a in &b.pos {
            match self.assign[a.0] {
                Val::False => return (Status::False, None),
                Val::Unknown => {
                    unknowns += 1;
                    unknown_plain = Some((*a, true));
                },
                Val::True => {},
            }
        }
        for a in &b.neg {
            match self.assign[a.0] {
                Val::True => return (Status::False, None),
                Val::Unknown => {
                    unknowns += 1;
                    unknown_plain = Some((*a, false));
                },
                Val::False => {},
            }
        }
        let mut card_unknown = false;
        for c in &b.cards {
            match self.card_status(c) {
                Status::False => return (Status::False, None),
                Status::Unknown => card_unknown = true,
                Status::True => {},
            }
        }
        if unknowns == 0 && !card_unknown {
            (Status::True, None)
        } else if unknowns == 1 && !card_unknown {
            (Status::Unknown, unknown_plain)
        } else {
            (Status::Unknown, None)
        }
    }

    /// Makes every unknown plain literal of `b` true.
    fn force_body(&mut self, b: &Body) -> Result<bool, Conflict> {
        let mut changed = false;
        for a in &b.pos {
            changed |= self.set(*a, true)?;
        }
        for a in &b.neg {
            changed |= self.set(*a, false)?;
        }
        Ok(changed)
    }

    fn propagate(&mut self) -> Result<(), Conflict> {
        let np = self.np;
        loop {
            let mut changed = false;
            for r in &np.rules {
                match self.body_status(&r.body) {
                    (Status::True, _) => changed |= self.set(r.head, true)?,
                    (Status::Unknown, Some((lit, polarity))) if self.assign[r.head.0] == Val::False => {
                        changed |= self.set(lit, !polarity)?;
                    },
                    _ => {},
                }
            }
            for a in 0..np.atoms.len() {
                let mut open = self.support[a].iter().filter(|&&i| self.body_status(&np.rules[i].body).0 != Status::False);
                let first = open.next().copied();
                let more = open.next().is_some();
                match (first, more) {
                    (None, _) => changed |= self.set(AtomId(a), false)?,
                    (Some(i), false) if self.assign[a] == Val::True => changed |= self.force_body(&np.rules[i].body)?,
                    _ => {},
                }
            }
            for c in &np.constraints {
                match self.body_status(c) {
                    (Status::True, _) => return Err(Conflict),
                    (Status::Unknown, Some((lit, polarity))) => changed |= self.set(lit, !polarity)?,
                    _ => {},
                }
            }
            for b in &np.bounds {
                if self.body_status(&b.body).0 != Status::True {
                    continue;
                }
                let t = b.atoms.iter().filter(|a| self.assign[a.0] == Val::True).count() as u32;
                let u = b.atoms.iter().filter(|a| self.assign[a.0] == Val::Unknown).count() as u32;
                if b.upper.is_some_and(|up| t > up) || b.lower.is_some_and(|lo| t + u < lo) {
                    return Err(Conflict);
                }
                if u > 0 {
                    let value = if b.upper == Some(t) {
                        Some(false)
                    } else if b.lower == Some(t + u) {
                        Some(true)
                    } else {
                        None
                    };
                    if let Some(v) = value {
                        for a in &b.atoms {
                            if self.assign[a.0] == Val::Unknown {
                                changed |= self.set(*a, v)?;
                            }
                        }
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn dfs(&mut self) -> Result<(), Stop> {
        let mark = self.trail.len();
        if self.propagate().is_ok() {
            match self.assign.iter().position(|v| *v == Val::Unknown) {
                None => {
                    let s: Vec<bool> = self.assign.iter().map(|v| *v == Val::True).collect();
                    if is_stable_vec(self.np, &s) {
                        if self.limit.is_some_and(|l| self.found.len() >= l) {
                            self.undo(mark);
                            return Err(Stop::Limit);
                        }
                        self.found.push(self.np.answer_set(&s));
                    }
                },
                Some(a) => {
                    for value in [false, true] {
                        let m = self.trail.len();
                        if self.set(AtomId(a), value).is_ok() {
                            let r = self.dfs();
                            self.undo(m);
                            if r.is_err() {
                                self.undo(mark);
                                return r;
                            }
                        }
                    }
                },
            }
        }
        self.undo(mark);
        Ok(())
    }
}

fn canonical(mut sets: Vec<AnswerSet>) -> Vec<AnswerSet> {
    sets.sort();
    sets.dedup();
    sets
}

/// All stable models, fresh atoms stripped, in canonical order.
pub fn enumerate(np: &NormalizedProgram) -> Vec<AnswerSet> {
    enumerate_limited(np, None).expect("no limit set")
}

/// Like [`enumerate`], failing once more than `limit` answer sets are found.
pub fn enumerate_limited(np: &NormalizedProgram, limit: Option<usize>) -> Result<Vec<AnswerSet>, SolverError> {
    let mut search = Search::new(np, limit);
    match search.dfs() {
        Ok(()) => Ok(canonical(search.found)),
        Err(Stop::Limit) => Err(SolverError::TooManyAnswerSets { limit: limit.unwrap_or(0) }),
    }
}

/// Brute force: tests [`is_stable`] on every subset of the user atoms (fresh
/// atoms completed by [`NormalizedProgram::complete_fresh`]).
pub fn oracle_enumerate(np: &NormalizedProgram) -> Result<Vec<AnswerSet>, SolverError> {
    let user = np.user_atoms();
    if user.len() > ORACLE_MAX_ATOMS {
        return Err(SolverError::TooLarge { atoms: user.len() });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << user.len()) {
        let chosen: BTreeSet<AtomId> = user.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| *a).collect();
        let candidate = np.complete_fresh(&chosen);
        if is_stable(np, &candidate) {
            let mut v = vec![false; np.atoms.len()];
            for a in &candidate {
                v[a.0] = true;
            }
            out.push(np.answer_set(&v));
        }
    }
    Ok(canonical(out))
}
