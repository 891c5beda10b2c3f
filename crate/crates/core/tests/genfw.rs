mod common;

use std::path::Path;

use arcc_core::binding::BoundArchitecture;
use arcc_core::checks::RulePool;
use arcc_core::frontend::{parse_generator_model, BehaviorRegistry};
use arcc_core::genfw::{
    compose_plan, generate_artifacts, load_generator_registry, run_generation, write_artifacts,
    Artifact, ArtifactSet, GenerationError, GeneratorKind, GeneratorRegistry, PlanError,
};
use arcc_core::pipeline::{bind_architecture, read_binding};
use arcc_core::simulator::Manifest;
use common::*;

fn pool() -> RulePool {
    RulePool::new(&BehaviorRegistry::with_builtins())
}

fn registry() -> GeneratorRegistry {
    load_generator_registry(&corpus().join("gens"), &pool()).unwrap()
}

fn bound(name: &str) -> BoundArchitecture {
    bound_with(corpus_arch(), name)
}

fn bound_with(arch: std::sync::Arc<arcc_core::model::Architecture>, name: &str) -> BoundArchitecture {
    let b = read_binding(&corpus().join(name)).unwrap();
    bind_architecture(&arch, &b).unwrap().0
}

fn generator(src: &str) -> arcc_core::genfw::GeneratorModel {
    parse_generator_model(src, "X.gen").unwrap()
}

#[test]
fn corpus_registry_has_eight_generators() {
    let r = registry();
    assert_eq!(r.len(), 8);
    assert_eq!(r.get("TextgenTypeGen").unwrap().emitter.as_deref(), Some("textgen_type"));
    assert_eq!(
        r.get("InterpActivityGen").unwrap().emitter_name().as_deref(),
        Some("interp_activity")
    );
}

#[test]
fn duplicate_generators_are_r001() {
    let g = generator("generator InterpTypeGen {\n  kind type;\n  platform interp;\n}\n");
    let errs = registry().with(g, &pool()).unwrap_err();
    assert_eq!(codes(&errs), ["R001"]);
}

#[test]
fn unknown_emitters_are_r002() {
    let g = generator("generator G {\n  kind type;\n  platform ros;\n}\n");
    assert_eq!(codes(&registry().with(g, &pool()).unwrap_err()), ["R002"]);
    let g = generator("generator G {\n  kind type;\n  platform interp;\n  emitter interp_component;\n}\n");
    assert_eq!(codes(&registry().with(g, &pool()).unwrap_err()), ["R002"]);
}

#[test]
fn unknown_required_checks_are_r003() {
    let g = generator("generator G {\n  kind type;\n  platform interp;\n  requires NoSuchRule;\n}\n");
    assert_eq!(codes(&registry().with(g, &pool()).unwrap_err()), ["R003"]);
}

#[test]
fn one_plan_per_platform() {
    let r = registry();
    for (bind, platform, prefix) in [("sim.bind", "interp", "Interp"), ("lejos.bind", "textgen", "Textgen")] {
        let plan = compose_plan(&r, platform, &bound(bind), None).unwrap();
        assert_eq!(plan.component_gen.name, format!("{prefix}CompGen"));
        assert_eq!(plan.component_gen.kind, GeneratorKind::Component);
        assert_eq!(plan.type_gen.name, format!("{prefix}TypeGen"));
        let langs: Vec<&str> = plan.behavior_gens.keys().map(String::as_str).collect();
        assert_eq!(langs, ["activity", "automaton"]);
        assert_eq!(plan.behavior_gens["automaton"].name, format!("{prefix}AutomatonGen"));
        assert_eq!(plan.checks, ["DeterministicAutomaton", "GuardCoverage"]);
    }
}

#[test]
fn missing_behavior_generator_is_reported() {
    let r = registry().without("InterpAutomatonGen");
    let errs = compose_plan(&r, "interp", &bound("sim.bind"), None).unwrap_err();
    assert_eq!(
        errs,
        [PlanError::MissingBehaviorGenerator {
            language: "automaton".into(),
            rts: "interp-rts-1".into()
        }]
    );
}

#[test]
fn ambiguous_component_generators_need_an_override() {
    let dup = generator(
        "generator InterpCompGen2 {\n  kind component;\n  platform interp;\n  rts \"interp-rts-1\";\n  entrypoint ExplorerBot;\n}\n",
    );
    let r = registry().with(dup, &pool()).unwrap();
    let b = bound("sim.bind");
    let errs = compose_plan(&r, "interp", &b, None).unwrap_err();
    assert!(matches!(
        &errs[..],
        [PlanError::AmbiguousComponentGenerator { candidates, .. }]
            if candidates == &["InterpCompGen".to_string(), "InterpCompGen2".to_string()]
    ));
    let plan = compose_plan(&r, "interp", &b, Some("InterpCompGen2")).unwrap();
    assert_eq!(plan.component_gen.name, "InterpCompGen2");
    let errs = compose_plan(&r, "interp", &b, Some("Nope")).unwrap_err();
    assert!(matches!(&errs[..], [PlanError::UnknownOverride { .. }]));
}

#[test]
fn platform_must_match_the_binding() {
    let errs = compose_plan(&registry(), "textgen", &bound("sim.bind"), None).unwrap_err();
    assert!(matches!(&errs[..], [PlanError::PlatformMismatch { .. }]));
}

#[test]
fn every_unmet_criterion_is_reported() {
    let r = registry().without("InterpTypeGen").without("InterpActivityGen");
    let errs = compose_plan(&r, "interp", &bound("sim.bind"), None).unwrap_err();
    assert_eq!(errs.len(), 2, "{errs:?}");
}

#[test]
fn interp_manifest_describes_the_network() {
    let b = bound("sim.bind");
    let plan = compose_plan(&registry(), "interp", &b, None).unwrap();
    let set = generate_artifacts(&plan, &b).unwrap();
    assert_eq!(
        set.paths(),
        [
            "manifest.json",
            "stubs/Button.csv",
            "stubs/Logger.csv",
            "stubs/Motor.csv",
            "stubs/UltraSonic.csv"
        ]
    );
    let m: Manifest = serde_json::from_slice(&set.get("manifest.json").unwrap().content).unwrap();
    assert_eq!(m.rts, "interp-rts-1");
    assert_eq!(m.instances.len(), 8);
    assert_eq!(m.schedules["explorationControl"], ["controller", "logger"]);
    let mut root_children = m.schedules[""].clone();
    root_children.sort();
    assert_eq!(
        root_children,
        ["button", "explorationControl", "navigation", "timer", "ultraSonic"]
    );
    let pos = |n: &str| m.schedules[""].iter().position(|x| x == n).unwrap();
    assert!(pos("button") < pos("explorationControl"));
    assert!(pos("timer") < pos("explorationControl"));
    assert!(pos("explorationControl") < pos("navigation"));
    let timer = m.instances.iter().find(|i| i.path == "timer").unwrap();
    assert_eq!(timer.params["limit"], arcc_core::model::Value::Int(3));
    assert!(m.links.iter().any(|l| l.from == "explorationControl/controller.cmd"
        && l.to == "navigation/translator.cmd"
        && !l.delayed));
}

#[test]
fn extern_bindings_cannot_feed_the_interp_backend() {
    let arch = corpus_arch();
    let mut b = read_binding(&corpus().join("lejos.bind")).unwrap();
    b.platform = "interp".into();
    let (bound, _) = bind_architecture(&arch, &b).unwrap();
    let plan = compose_plan(&registry(), "interp", &bound, None).unwrap();
    let err = generate_artifacts(&plan, &bound).unwrap_err();
    assert!(matches!(err, GenerationError::Emit(m) if m.contains("extern")));
}

#[test]
fn failed_checks_write_nothing() {
    let text = std::fs::read_to_string(corpus().join("arc/Controller.arc")).unwrap();
    let bad = text.replace(
        "EXPLORING -> EXPLORING [!(present(distance) && distance < 20)]",
        "EXPLORING -> EXPLORING [present(distance) && distance < 30]",
    );
    assert_ne!(bad, text);
    let arch = corpus_with_replaced("Controller.arc", &bad).unwrap().architecture;
    let b = bound_with(arch, "sim.bind");
    let plan = compose_plan(&registry(), "interp", &b, None).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let err = run_generation(&plan, &b, &BehaviorRegistry::with_builtins(), &out).unwrap_err();
    let GenerationError::Checks(report) = err else {
        panic!("expected check failure")
    };
    assert!(!report.for_rule("G001").is_empty());
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn writing_into_an_existing_directory_keeps_other_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    std::fs::create_dir(&out).unwrap();
    std::fs::write(out.join("keep.txt"), "x").unwrap();
    let set = ArtifactSet::new(
        vec![Artifact::new("a/b.txt", "1"), Artifact::new("c.txt", "2")],
        None,
    );
    write_artifacts(&set, &out).unwrap();
    assert_eq!(std::fs::read_to_string(out.join("a/b.txt")).unwrap(), "1");
    assert_eq!(std::fs::read_to_string(out.join("keep.txt")).unwrap(), "x");
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1, "staging directory removed");
}

#[test]
fn generation_is_reproducible() {
    for (bind, platform) in [("sim.bind", "interp"), ("lejos.bind", "textgen")] {
        let b = bound(bind);
        let plan = compose_plan(&registry(), platform, &b, None).unwrap();
        let one = generate_artifacts(&plan, &b).unwrap();
        let two = generate_artifacts(&plan, &bound(bind)).unwrap();
        assert_eq!(one, two);
    }
}

fn textgen_artifacts() -> ArtifactSet {
    let b = bound("lejos.bind");
    let plan = compose_plan(&registry(), "textgen", &b, None).unwrap();
    generate_artifacts(&plan, &b).unwrap()
}

#[test]
fn textgen_output_shape() {
    let set = textgen_artifacts();
    assert_eq!(set.files.len(), 15);
    let comps = set.paths().iter().filter(|p| p.starts_with("components/")).count();
    let behaviors: Vec<&str> = set
        .paths()
        .into_iter()
        .filter(|p| p.starts_with("behaviors/"))
        .collect();
    assert_eq!(comps, 10);
    assert_eq!(
        behaviors,
        [
            "behaviors/Controller.gen.txt",
            "behaviors/Timer.gen.txt",
            "behaviors/Translator.gen.txt"
        ]
    );
    assert!(set
        .get("components/Motor.gen.txt")
        .unwrap()
        .text()
        .lines()
        .any(|l| l == "extern impl \"lejos/MotorImpl\""));
    assert!(set
        .get("types/ExplorerTypes.gen.txt")
        .unwrap()
        .text()
        .lines()
        .any(|l| l == "enum NavigationCommand: FORWARD, BACKWARD, TURN_LEFT, TURN_RIGHT, STOP"));
}

/// Compares against the checked-in golden files; set UPDATE_GOLDEN=1 to rewrite them.
#[test]
fn textgen_golden_files() {
    let golden = corpus().join("expected/textgen");
    let set = textgen_artifacts();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        let _ = std::fs::remove_dir_all(&golden);
        write_artifacts(&set, &golden).unwrap();
    }
    for a in &set.files {
        let expected = std::fs::read_to_string(golden.join(&a.path))
            .unwrap_or_else(|e| panic!("{}: {e}", a.path));
        assert_eq!(a.text(), expected, "{}", a.path);
    }
    let on_disk = walk(&golden);
    assert_eq!(on_disk.len(), set.files.len());
}

fn walk(dir: &Path) -> Vec<String> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p.display().to_string());
        }
    }
    out
}
