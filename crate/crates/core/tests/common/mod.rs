//! A from-scratch reference implementation of weights, typicality and
//! entailment, sharing nothing with the engine beyond the data types.

#![allow(dead_code)]

use condasp::model::{eval_classical, AnswerSet, Atom, ConditionalKB, Formula};

pub struct Reference<'a> {
    pub worlds: &'a [AnswerSet],
    pub kb: &'a ConditionalKB,
    pub max: i64,
    pub min: i64,
}

impl<'a> Reference<'a> {
    pub fn new(worlds: &'a [AnswerSet], kb: &'a ConditionalKB) -> Self {
        let subjects: Vec<Atom> = kb.weighted().iter().map(|c| c.subject.clone()).collect();
        let all: Vec<i64> = subjects.iter().flat_map(|a| worlds.iter().map(|w| atom_weight(kb, a, w))).collect();
        Self { worlds, kb, max: all.iter().copied().max().unwrap_or(0), min: all.iter().copied().min().unwrap_or(0) }
    }

    pub fn weight(&self, f: &Formula, w: &AnswerSet) -> i64 {
        match f {
            Formula::Atom(a) => atom_weight(self.kb, a, w),
            Formula::And(l, r) => self.weight(l, w).min(self.weight(r, w)),
            Formula::Or(l, r) => self.weight(l, w).max(self.weight(r, w)),
            Formula::Not(x) => self.max - self.weight(x, w) + self.min,
            other => panic!("not a combination: {other}"),
        }
    }

    pub fn typical(&self, c: &Formula) -> Vec<&'a AnswerSet> {
        let sat: Vec<&AnswerSet> = self.worlds.iter().filter(|w| eval_classical(w, c).unwrap()).collect();
        let Some(best) = sat.iter().map(|w| self.weight(c, w)).max() else { return vec![] };
        sat.into_iter().filter(|w| self.weight(c, w) == best).collect()
    }

    pub fn holds(&self, f: &Formula, w: &AnswerSet) -> bool {
        match f {
            Formula::Atom(a) => w.contains(a),
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Not(x) => !self.holds(x, w),
            Formula::And(l, r) => self.holds(l, w) && self.holds(r, w),
            Formula::Or(l, r) => self.holds(l, w) || self.holds(r, w),
            Formula::Implies(l, r) => !self.holds(l, w) || self.holds(r, w),
            Formula::Typ(c) => self.typical(c).contains(&w),
        }
    }

    /// First world falsifying `query`, if any.
    pub fn counterexample(&self, query: &Formula) -> Option<&'a AnswerSet> {
        let mut sorted: Vec<&AnswerSet> = self.worlds.iter().collect();
        sorted.sort();
        sorted.into_iter().find(|w| !self.holds(query, w))
    }
}

pub fn atom_weight(kb: &ConditionalKB, a: &Atom, w: &AnswerSet) -> i64 {
    kb.weighted().iter().filter(|c| &c.subject == a && eval_classical(w, &c.consequent).unwrap()).map(|c| c.weight).sum()
}
