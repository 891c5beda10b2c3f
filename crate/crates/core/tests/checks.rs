mod common;

use arcc_core::checks::{
    check_architecture, profile_rule_ids, run_checks, CheckContext, CheckError, RulePool,
};
use arcc_core::diag::Diagnostic;
use arcc_core::frontend::BehaviorRegistry;
use arcc_core::model::{Architecture, ProfileId};
use common::*;

const LEAF_A: (&str, &str) = ("A.arc", "component A {\n  port in Int i;\n  port out Int o;\n}\n");
const LEAF_B: (&str, &str) = ("B.arc", "component B {\n  port in Int i;\n  port out Int o;\n}\n");
const LEAF_FLAG: (&str, &str) = ("F.arc", "component F {\n  port in Bool i;\n}\n");

fn top(body: &str) -> String {
    format!("component Top {{\n{body}}}\n")
}

fn arch(files: &[(&str, &str)]) -> std::sync::Arc<Architecture> {
    load_inline(files, "Top")
        .unwrap_or_else(|e| panic!("fixture does not load: {e:?}"))
        .architecture
}

fn run_rule(a: &Architecture, id: &str) -> Vec<Diagnostic> {
    let reg = BehaviorRegistry::with_builtins();
    let ctx = CheckContext::new(a, &reg);
    run_checks(&ctx, &[id.to_string()], &RulePool::new(&reg))
        .unwrap()
        .diagnostics()
}

/// Asserts that `good` passes `id` and `bad` fails it, and returns the failures.
fn pair(id: &str, good: &[(&str, &str)], bad: &[(&str, &str)]) -> Vec<Diagnostic> {
    let ok = run_rule(&arch(good), id);
    assert!(ok.is_empty(), "{id} good fixture: {ok:?}");
    let errs = run_rule(&arch(bad), id);
    assert!(!errs.is_empty(), "{id} bad fixture passed");
    assert!(errs.iter().all(|d| d.code == id), "{errs:?}");
    errs
}

#[test]
fn corpus_passes_every_profile_rule() {
    let arch = corpus_arch();
    let report = check_architecture(&arch, &BehaviorRegistry::with_builtins());
    assert!(report.passed, "{:?}", report.diagnostics());
    assert!(report.diagnostics().is_empty());
    let ids: Vec<&str> = report.results.iter().map(|(id, _)| id.as_str()).collect();
    assert!(ids.contains(&"C007"));
}

#[test]
fn base_profile_has_no_schedule_rule() {
    assert!(!profile_rule_ids(ProfileId::Base).contains(&"C007".to_string()));
    assert!(profile_rule_ids(ProfileId::Scheduled).contains(&"C007".to_string()));
}

#[test]
fn unknown_rule_names_are_errors() {
    let a = corpus_arch();
    let reg = BehaviorRegistry::with_builtins();
    let ctx = CheckContext::new(&a, &reg);
    let err = run_checks(&ctx, &["Nope".into()], &RulePool::new(&reg)).unwrap_err();
    assert_eq!(err, CheckError::UnknownRule("Nope".into()));
}

#[test]
fn rules_are_addressable_by_name() {
    let reg = BehaviorRegistry::with_builtins();
    let pool = RulePool::new(&reg);
    assert_eq!(pool.get("DeterministicAutomaton").unwrap().id, "G001");
    assert_eq!(pool.get("GuardCoverage").unwrap().id, "G002");
    assert_eq!(pool.get("C008").unwrap().name, "NoInstantCycles");
}

#[test]
fn c001_unique_names() {
    pair(
        "C001",
        &[("Top.arc", &top("  port in Int a, out Int b;\n"))],
        &[("Top.arc", &top("  port in Int a, out Int a;\n"))],
    );
}

#[test]
fn c002_connector_types() {
    pair(
        "C002",
        &[LEAF_A, LEAF_B, ("Top.arc", &top("  instance A a;\n  instance B b;\n  connect a.o -> b.i;\n"))],
        &[LEAF_A, LEAF_FLAG, ("Top.arc", &top("  instance A a;\n  instance F f;\n  connect a.o -> f.i;\n"))],
    );
}

#[test]
fn c003_connector_directions() {
    pair(
        "C003",
        &[LEAF_A, LEAF_B, ("Top.arc", &top("  instance A a;\n  instance B b;\n  connect a.o -> b.i;\n"))],
        &[LEAF_A, LEAF_B, ("Top.arc", &top("  instance A a;\n  instance B b;\n  connect b.i -> a.o;\n"))],
    );
}

#[test]
fn c004_single_writer() {
    let body = "  instance A a;\n  instance B b;\n  instance A c;\n  connect a.o -> b.i;\n";
    pair(
        "C004",
        &[LEAF_A, LEAF_B, ("Top.arc", &top(body))],
        &[LEAF_A, LEAF_B, ("Top.arc", &top(&format!("{body}  connect c.o -> b.i;\n")))],
    );
}

#[test]
fn c005_dangling_references() {
    let errs = pair(
        "C005",
        &[LEAF_A, LEAF_B, ("Top.arc", &top("  instance A a;\n  instance B b;\n  connect a.o -> b.i;\n"))],
        &[LEAF_A, LEAF_B, ("Top.arc", &top("  instance A a;\n  instance B b;\n  connect a.zz -> b.i;\n"))],
    );
    assert!(errs[0].message.contains("a.zz"));
}

#[test]
fn c006_atomic_behavior() {
    pair(
        "C006",
        &[LEAF_A, ("Top.arc", &top("  instance A a;\n"))],
        &[LEAF_A, ("Top.arc", &top("  instance A a;\n  var Int n = 0;\n"))],
    );
}

#[test]
fn c007_schedule_valid() {
    let body = "  instance A a;\n  instance B b;\n  connect a.o -> b.i;\n";
    let errs = pair(
        "C007",
        &[LEAF_A, LEAF_B, ("Top.arc", &top(&format!("{body}  schedule a, b;\n")))],
        &[LEAF_A, LEAF_B, ("Top.arc", &top(&format!("{body}  schedule b, a;\n")))],
    );
    assert_eq!(errs[0].message, "schedule violates dataflow order (a must precede b)");
    let missing = run_rule(&arch(&[LEAF_A, LEAF_B, ("Top.arc", &top(&format!("{body}  schedule a;\n")))]), "C007");
    assert_eq!(missing[0].message, "schedule must list every subcomponent exactly once");
}

#[test]
fn corpus_schedule_in_reverse_fails_c007() {
    let text = std::fs::read_to_string(corpus().join("arc/ExplorationControl.arc")).unwrap();
    let flipped = text.replace("schedule controller, logger;", "schedule logger, controller;");
    let p = corpus_with_replaced("ExplorationControl.arc", &flipped).unwrap();
    let errs = run_rule(&p.architecture, "C007");
    assert_eq!(errs.len(), 1);
    assert_eq!(
        errs[0].message,
        "schedule violates dataflow order (controller must precede logger)"
    );
}

#[test]
fn c008_instant_cycles() {
    let cyc = "  instance A a;\n  instance B b;\n  connect a.o -> b.i;\n  connect b.o -> a.i";
    let errs = pair(
        "C008",
        &[LEAF_A, LEAF_B, ("Top.arc", &top(&format!("{cyc} delayed;\n")))],
        &[LEAF_A, LEAF_B, ("Top.arc", &top(&format!("{cyc};\n")))],
    );
    assert_eq!(
        errs[0].message,
        "instant dataflow cycle among subcomponents [a, b]; break it with a delayed connector"
    );
}

#[test]
fn c009_behavior_resolved() {
    let good = "component Top {\n  port in Int x;\n  port out Int y;\n  automaton {\n    states S;\n    initial S;\n    S -> S [x > 1] / y = x;\n  }\n}\n";
    let bad = good.replace("[x > 1]", "[x + 1]");
    pair("C009", &[("Top.arc", good)], &[("Top.arc", &bad)]);
    let to_input = good.replace("/ y = x", "/ x = 1");
    assert!(!run_rule(&arch(&[("Top.arc", &to_input)]), "C009").is_empty());
    let unknown_state = good.replace("S -> S", "S -> Q");
    assert!(!run_rule(&arch(&[("Top.arc", &unknown_state)]), "C009").is_empty());
}

#[test]
fn c010_config_arguments() {
    let leaf = ("P.arc", "component P(Int n) {\n  port out Int o;\n}\n");
    pair(
        "C010",
        &[leaf, ("Top.arc", &top("  instance P p(3);\n"))],
        &[leaf, ("Top.arc", &top("  instance P p(true);\n"))],
    );
    assert!(!run_rule(&arch(&[leaf, ("Top.arc", &top("  instance P p;\n"))]), "C010").is_empty());
}

#[test]
fn c011_generic_instantiation() {
    let bx = ("Box.arc", "component Box<T> {\n  port in T v;\n}\n");
    pair(
        "C011",
        &[bx, ("Top.arc", &top("  instance Box<Int> b;\n"))],
        &[bx, ("Top.arc", &top("  instance Box<Int, Bool> b;\n"))],
    );
    assert!(!run_rule(&arch(&[bx, ("Top.arc", &top("  instance Box b;\n"))]), "C011").is_empty());
}

#[test]
fn g001_deterministic_automaton() {
    let good = "component Top {\n  port in Int x;\n  port out Int y;\n  automaton {\n    states S;\n    initial S;\n    S -> S [x < 10] / y = 1;\n    S -> S [x >= 10] / y = 2;\n  }\n}\n";
    let bad = good.replace("[x >= 10]", "[x > 5]");
    let errs = pair("G001", &[("Top.arc", good)], &[("Top.arc", &bad)]);
    assert!(errs[0].message.contains("nondeterministic in state S"), "{}", errs[0].message);
}

#[test]
fn g002_guard_coverage() {
    let good = "component Top {\n  port in Int x;\n  port out Int y;\n  activity {\n    start -> d;\n    node d: decision\n      -> a [x > 0];\n      -> end [else];\n    node a: action { y = x; }\n      -> end;\n  }\n}\n";
    let bad = good.replace("      -> end [else];\n", "");
    let errs = pair("G002", &[("Top.arc", good)], &[("Top.arc", &bad)]);
    assert_eq!(errs[0].message, "decision node 'd' requires an else edge");
}

#[test]
fn diagnostics_are_sorted() {
    let errs = run_rule(
        &arch(&[LEAF_A, LEAF_B, ("Top.arc", &top("  instance A a;\n  instance B b;\n  connect a.x -> b.y;\n  connect a.q -> b.r;\n"))]),
        "C005",
    );
    let keys: Vec<_> = errs.iter().map(|d| (d.line, d.col, d.message.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(errs.len() >= 2);
}
