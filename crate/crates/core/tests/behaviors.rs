mod common;

use arcc_core::behaviors::{
    activity_step, automaton_step, check_determinism, enabled_transitions, eval_expr,
    int_representatives, StepError, ValueEnv, Verdict, DEFAULT_DOMAIN_LIMIT,
};
use arcc_core::model::{BehaviorModel, Value};
use common::gen::{load_automaton, random_automaton_source, random_env};
use common::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn overlapping(guard2: &str) -> String {
    format!(
        "component Top {{\n  port in Int x;\n  port out Int y;\n  automaton {{\n    states S;\n    initial S;\n    S -> S [x < 10] / y = 1;\n    S -> S [{guard2}] / y = 2;\n  }}\n}}\n"
    )
}

#[test]
fn overlapping_guards_yield_a_concrete_witness() {
    let (_, a, syms) = load_automaton(&overlapping("x > 5"));
    let Verdict::Witness(w) = check_determinism(&a, &syms, DEFAULT_DOMAIN_LIMIT).unwrap() else {
        panic!("expected a witness")
    };
    assert_eq!(w.state, "S");
    assert_eq!(w.transitions, [0, 1]);
    let x = w.env.get("x").and_then(Value::as_int).unwrap();
    assert!(5 < x && x < 10, "representative {x}");
    // Re-evaluate the witness concretely.
    assert_eq!(enabled_transitions(&a, "S", &w.env).unwrap(), [0, 1]);
    let err = automaton_step(&a, "S", &ValueEnv::new(), &w.env).unwrap_err();
    assert!(matches!(err, StepError::NondeterministicChoice { .. }));
}

#[test]
fn disjoint_guards_are_deterministic() {
    let (_, a, syms) = load_automaton(&overlapping("x >= 10"));
    assert_eq!(
        check_determinism(&a, &syms, DEFAULT_DOMAIN_LIMIT).unwrap(),
        Verdict::Deterministic
    );
}

#[test]
fn absence_is_part_of_the_domain() {
    let (_, a, syms) = load_automaton(&overlapping("!present(x)"));
    assert_eq!(
        check_determinism(&a, &syms, DEFAULT_DOMAIN_LIMIT).unwrap(),
        Verdict::Deterministic
    );
    let (_, a, syms) = load_automaton(&overlapping("!(x < 10)"));
    // Absent x disables both guards, so strict absence keeps this deterministic.
    assert_eq!(
        check_determinism(&a, &syms, DEFAULT_DOMAIN_LIMIT).unwrap(),
        Verdict::Deterministic
    );
}

#[test]
fn domain_limit_is_enforced() {
    let (_, a, syms) = load_automaton(&overlapping("x > 5"));
    assert!(check_determinism(&a, &syms, 2).is_err());
}

#[test]
fn representatives_cover_every_interval() {
    assert_eq!(
        int_representatives(&[5, 10].into_iter().collect()),
        Some(vec![4, 5, 6, 10, 11])
    );
    assert_eq!(int_representatives(&[3, 4].into_iter().collect()), Some(vec![2, 3, 4, 5]));
    assert_eq!(int_representatives(&Default::default()), Some(vec![0]));
    assert_eq!(int_representatives(&[i64::MAX].into_iter().collect()), None);
}

#[test]
fn corpus_controller_steps_through_its_phases() {
    let arch = corpus_arch();
    let c = arch.component("Controller").unwrap();
    let BehaviorModel::Automaton(a) = &c.behaviors[0].model else {
        panic!()
    };
    let vars = ValueEnv::new().with("backCount", Value::Int(0));
    let inputs = ValueEnv::new()
        .with("backupTicks", Value::Int(3))
        .with("pressed", Value::Bool(true));
    let r = automaton_step(a, "IDLE", &vars, &inputs).unwrap();
    assert_eq!(r.next_state.as_deref(), Some("EXPLORING"));
    assert_eq!(
        r.outputs.get("cmd"),
        Some(&Value::enum_lit("NavigationCommand", "FORWARD"))
    );
    let inputs = ValueEnv::new()
        .with("backupTicks", Value::Int(3))
        .with("distance", Value::Int(15));
    let r = automaton_step(a, "EXPLORING", &vars, &inputs).unwrap();
    assert_eq!(r.next_state.as_deref(), Some("BACKING"));
    assert_eq!(r.outputs.get("obstacle"), Some(&Value::Int(15)));
    assert_eq!(r.vars.get("backCount"), Some(&Value::Int(1)));
}

#[test]
fn corpus_timer_fires_after_its_limit() {
    let arch = corpus_arch();
    let t = arch.component("Timer").unwrap();
    let BehaviorModel::Activity(g) = &t.behaviors[0].model else {
        panic!()
    };
    let params = ValueEnv::new().with("limit", Value::Int(3));
    let mut vars = ValueEnv::new().with("ticks", Value::Int(0));
    let mut fired = Vec::new();
    for _ in 0..8 {
        let r = activity_step(g, &vars, &params).unwrap();
        fired.push(r.outputs.get("done").is_some());
        vars = r.vars;
    }
    assert_eq!(fired, [false, false, false, true, false, false, false, true]);
}

#[test]
fn strict_absence_with_short_circuit() {
    let arch = corpus_arch();
    let c = arch.component("Controller").unwrap();
    let BehaviorModel::Automaton(a) = &c.behaviors[0].model else {
        panic!()
    };
    // `present(distance) && distance < 20` with distance absent is false, not absent.
    let g = a.transitions[1].guard.as_ref().unwrap();
    assert_eq!(eval_expr(g, &ValueEnv::new()).unwrap(), Some(Value::Bool(false)));
}

#[test]
fn random_automata_verdicts_agree_with_concrete_runs() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..40 {
        let (_, a, syms) = load_automaton(&random_automaton_source(&mut rng));
        match check_determinism(&a, &syms, DEFAULT_DOMAIN_LIMIT).unwrap() {
            Verdict::Deterministic => {
                for s in &a.states {
                    for _ in 0..300 {
                        let env = random_env(&mut rng);
                        assert!(enabled_transitions(&a, s, &env).unwrap().len() <= 1);
                    }
                }
            }
            Verdict::Witness(w) => {
                assert!(enabled_transitions(&a, &w.state, &w.env).unwrap().len() >= 2);
            }
        }
    }
}
