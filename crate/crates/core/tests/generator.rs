use condasp::klm::{generate_instance, InstanceSeed, KlmError, GENERATION_RETRIES};
use condasp::model::Head;

#[test]
fn most_instances_are_consistent_on_the_first_try() {
    let first_try = (0..500).filter(|&s| generate_instance(&InstanceSeed::new(s)).unwrap().attempts == 1).count();
    assert!(first_try * 10 >= 500 * 9, "{first_try}/500 consistent on the first try");
}

#[test]
fn instances_stay_within_budget() {
    for seed in 0..100 {
        let s = InstanceSeed { seed, atoms: 1 + seed as usize % 8, rules: 1 + seed as usize % 12, conditionals: 1 + seed as usize % 10 };
        let inst = generate_instance(&s).unwrap();
        assert_eq!(inst.program.rules.len(), s.rules);
        assert_eq!(inst.kb.weighted().len(), s.conditionals);
        assert!(inst.kb.ranked().is_empty());
        assert!(inst.kb.weighted().iter().all(|c| (-100..=100).contains(&c.weight)));
        let atoms = inst.model.worlds().iter().flat_map(|w| w.atoms.iter()).collect::<std::collections::BTreeSet<_>>();
        assert!(atoms.len() <= s.atoms);
        assert!(inst.attempts <= GENERATION_RETRIES);
    }
}

#[test]
fn every_rule_kind_is_generated() {
    let (mut facts, mut choices, mut constraints, mut normal) = (0, 0, 0, 0);
    for seed in 0..100 {
        for r in generate_instance(&InstanceSeed::new(seed)).unwrap().program.rules {
            match r.head {
                Head::Normal(_) if r.body.is_empty() => facts += 1,
                Head::Normal(_) => normal += 1,
                Head::Choice { .. } => choices += 1,
                Head::Empty => constraints += 1,
            }
        }
    }
    assert!(facts > 0 && choices > 0 && constraints > 0 && normal > 0);
}

#[test]
fn hopeless_budget_reports_exhaustion_or_succeeds() {
    // one atom and twelve rules: some seeds will retry; none may panic
    for seed in 0..50 {
        match generate_instance(&InstanceSeed { seed, atoms: 1, rules: 12, conditionals: 1 }) {
            Ok(inst) => assert!(!inst.model.worlds().is_empty()),
            Err(e) => assert_eq!(e, KlmError::GenerationExhausted { seed, attempts: GENERATION_RETRIES }),
        }
    }
}
