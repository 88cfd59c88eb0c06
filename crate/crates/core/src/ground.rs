//! Naive instantiation of safe programs over their Herbrand universe.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Atom, AtomPattern, BodyElement, CmpOp, Constant, GroundProgram, Head, Program, Rule, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("program has variables but no constants to instantiate them with")]
    EmptyUniverse,
    #[error("unsafe variable {var} in rule `{rule}`")]
    UnsafeVariable { rule: String, var: String },
}

/// Variable name to constant, total over the variables of one rule.
pub type Substitution = BTreeMap<String, Constant>;

fn apply_term(t: &Term, sub: &Substitution) -> Constant {
    match t {
        Term::Constant(c) => c.clone(),
        Term::Variable(v) => sub[v].clone(),
    }
}

fn apply_atom(a: &AtomPattern, sub: &Substitution) -> AtomPattern {
    AtomPattern::new(a.predicate.clone(), a.args.iter().map(|t| Term::Constant(apply_term(t, sub))).collect())
}

/// Instantiates `rule` under `sub`. Returns `None` when a comparison fails;
/// satisfied comparisons are dropped.
fn instantiate(rule: &Rule, sub: &Substitution) -> Option<Rule> {
    let head = match &rule.head {
        Head::Normal(a) => Head::Normal(apply_atom(a, sub)),
        Head::Choice { lower, atoms, upper } => Head::Choice { lower: *lower, atoms: atoms.iter().map(|a| apply_atom(a, sub)).collect(), upper: *upper },
        Head::Empty => Head::Empty,
    };
    let mut body = Vec::with_capacity(rule.body.len());
    for b in &rule.body {
        match b {
            BodyElement::Positive(a) => body.push(BodyElement::Positive(apply_atom(a, sub))),
            BodyElement::Negated(a) => body.push(BodyElement::Negated(apply_atom(a, sub))),
            BodyElement::Comparison { left, op, right } => {
                let equal = apply_term(left, sub) == apply_term(right, sub);
                if equal != (*op == CmpOp::Eq) {
                    return None;
                }
            },
            BodyElement::CardinalityLower { lower, atoms } => {
                body.push(BodyElement::CardinalityLower { lower: *lower, atoms: atoms.iter().map(|a| apply_atom(a, sub)).collect() })
            },
        }
    }
    Some(Rule { head, body })
}

/// Constants appearing anywhere in the program, sorted.
pub fn herbrand_universe(p: &Program) -> BTreeSet<Constant> {
    let mut out = BTreeSet::new();
    let mut terms = |ts: &[Term]| {
        for t in ts {
            if let Term::Constant(c) = t {
                out.insert(c.clone());
            }
        }
    };
    for r in &p.rules {
        for a in r.head.atoms() {
            terms(&a.args);
        }
        for b in &r.body {
            match b {
                BodyElement::Positive(a) | BodyElement::Negated(a) => terms(&a.args),
                BodyElement::Comparison { left, right, .. } => terms(&[left.clone(), right.clone()]),
                BodyElement::CardinalityLower { atoms, .. } => {
                    for a in atoms {
                        terms(&a.args);
                    }
                },
            }
        }
    }
    out
}

fn predicates(p: &Program) -> BTreeSet<(String, usize)> {
    let mut out = BTreeSet::new();
    for r in &p.rules {
        for a in r.head.atoms() {
            out.insert((a.predicate.clone(), a.args.len()));
        }
        for b in &r.body {
            match b {
                BodyElement::Positive(a) | BodyElement::Negated(a) => {
                    out.insert((a.predicate.clone(), a.args.len()));
                },
                BodyElement::CardinalityLower { atoms, .. } => {
                    out.extend(atoms.iter().map(|a| (a.predicate.clone(), a.args.len())));
                },
                BodyElement::Comparison { .. } => {},
            }
        }
    }
    out
}

/// Calls `f` on every tuple in `universe^arity`, in lexicographic order.
fn for_each_tuple(universe: &[Constant], arity: usize, f: &mut dyn FnMut(&[Constant])) {
    let mut idx = vec![0usize; arity];
    let mut tuple: Vec<Constant> = Vec::with_capacity(arity);
    if arity > 0 && universe.is_empty() {
        return;
    }
    loop {
        tuple.clear();
        tuple.extend(idx.iter().map(|&i| universe[i].clone()));
        f(&tuple);
        // odometer increment, last position fastest
        let mut pos = arity;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < universe.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Instantiates every rule under every substitution over the Herbrand
/// universe. Output rules are sorted and deduplicated.
pub fn ground(p: &Program) -> Result<GroundProgram, GroundError> {
    let universe: Vec<Constant> = herbrand_universe(p).into_iter().collect();
    let mut rules = BTreeSet::new();
    for rule in &p.rules {
        if let Some(var) = rule.unsafe_variable() {
            return Err(GroundError::UnsafeVariable { rule: rule.to_string(), var: var.to_string() });
        }
        let vars: Vec<&str> = rule.variables().into_iter().collect();
        if vars.is_empty() {
            rules.extend(instantiate(rule, &Substitution::new()));
            continue;
        }
        if universe.is_empty() {
            return Err(GroundError::EmptyUniverse);
        }
        for_each_tuple(&universe, vars.len(), &mut |tuple| {
            let sub: Substitution = vars.iter().map(|v| v.to_string()).zip(tuple.iter().cloned()).collect();
            rules.extend(instantiate(rule, &sub));
        });
    }

    let mut herbrand_base = BTreeSet::new();
    for (pred, arity) in predicates(p) {
        for_each_tuple(&universe, arity, &mut |tuple| {
            herbrand_base.insert(Atom::new(pred.clone(), tuple.to_vec()));
        });
    }
    let mut g = GroundProgram { rules: rules.into_iter().collect(), herbrand_base };
    g.herbrand_base.extend(g.rule_atoms());
    Ok(g)
}

/// Removes rules with a positive body atom that no remaining rule can
/// derive, repeating until nothing changes. Stable models are unaffected: such
/// an atom is false in every stable model, so the rule never fires.
pub fn simplify(g: &GroundProgram) -> GroundProgram {
    let mut rules = g.rules.clone();
    loop {
        let derivable: BTreeSet<&AtomPattern> = rules.iter().flat_map(|r| r.head.atoms()).collect();
        let keep: Vec<bool> = rules.iter().map(|r| r.body.iter().all(|b| !matches!(b, BodyElement::Positive(a) if !derivable.contains(a)))).collect();
        if keep.iter().all(|k| *k) {
            break;
        }
        let mut it = keep.into_iter();
        rules.retain(|_| it.next().unwrap_or(true));
    }
    GroundProgram { rules, herbrand_base: g.herbrand_base.clone() }
}
