//! Random fixture generators shared by the property and acceptance tests.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use arcc_core::behaviors::Symbols;
use arcc_core::binding::{apply_binding, BindingModel};
use arcc_core::checks::RulePool;
use arcc_core::diag::Loc;
use arcc_core::frontend::BehaviorRegistry;
use arcc_core::genfw::{compose_plan, generate_artifacts, load_generator_registry, MANIFEST_FILE};
use arcc_core::model::{Architecture, Automaton, BehaviorModel, Value};
use arcc_core::simulator::{Manifest, SimManifest, Trace};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{corpus, load_inline};

/// Guard over in-ports `x: Int`, `b: Bool` and variable `v: Int`, built
/// from comparisons of one atom with a constant.
fn random_guard(rng: &mut StdRng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.4) {
        let c: i64 = rng.gen_range(-5..15);
        return match rng.gen_range(0..9) {
            0 => format!("x < {c}"),
            1 => format!("x >= {c}"),
            2 => format!("x == {c}"),
            3 => format!("x > {c}"),
            4 => "b".into(),
            5 => "present(x)".into(),
            6 => "present(b)".into(),
            7 => format!("v <= {c}"),
            _ => format!("v != {c}"),
        };
    }
    let l = random_guard(rng, depth - 1);
    let r = random_guard(rng, depth - 1);
    match rng.gen_range(0..3) {
        0 => format!("({l} && {r})"),
        1 => format!("({l} || {r})"),
        _ => format!("!({l})"),
    }
}

/// An atomic component `Top` with a random automaton.
pub fn random_automaton_source(rng: &mut StdRng) -> String {
    let n_states = rng.gen_range(1..=3);
    let states: Vec<String> = (0..n_states).map(|i| format!("S{i}")).collect();
    let mut src = String::from(
        "component Top {\n  port in Int x, in Bool b;\n  port out Int y;\n  var Int v = 0;\n  automaton {\n",
    );
    src.push_str(&format!("    states {};\n    initial S0;\n", states.join(" ")));
    for s in &states {
        for k in 0..rng.gen_range(1..=3) {
            let to = states.choose(rng).unwrap();
            let guard = random_guard(rng, 2);
            src.push_str(&format!(
                "    {s} -> {to} [{guard}] / y = {k}, v = v + {};\n",
                rng.gen_range(-2..3)
            ));
        }
    }
    src.push_str("  }\n}\n");
    src
}

pub fn load_automaton(src: &str) -> (Arc<Architecture>, Automaton, Symbols) {
    let p = load_inline(&[("Top.arc", src)], "Top").expect("generated automaton loads");
    let arch = p.architecture;
    let top = arch.component("Top").unwrap();
    let BehaviorModel::Automaton(a) = &top.behaviors[0].model else {
        unreachable!()
    };
    let syms = Symbols::of(&arch, top);
    let a = a.clone();
    (arch, a, syms)
}

/// A concrete environment for [`random_automaton_source`] automata.
pub fn random_env(rng: &mut StdRng) -> arcc_core::behaviors::ValueEnv {
    let mut env = arcc_core::behaviors::ValueEnv::new();
    let x = rng
        .gen_bool(0.85)
        .then(|| Value::Int(rng.gen_range(-30..40)));
    let b = rng.gen_bool(0.85).then(|| Value::Bool(rng.gen_bool(0.5)));
    env.set("x", x);
    env.set("b", b);
    env.set("v", Some(Value::Int(rng.gen_range(-30..40))));
    env
}

/// A random acyclic network of at most six atomic nodes below `Top`.
/// Returns the sources without a schedule line and the instant edges
/// between node instances.
pub struct DagFixture {
    pub files: Vec<(String, String)>,
    pub nodes: Vec<String>,
    pub instant: Vec<(usize, usize)>,
}

pub fn random_dag(rng: &mut StdRng) -> DagFixture {
    let n = rng.gen_range(2..=6);
    let nodes: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let mut files = Vec::new();
    let mut body = String::from("  port in Int x;\n  port out Int y;\n");
    let mut instant = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        let k = rng.gen_range(1..4);
        let ty = format!("N{i}");
        files.push((
            format!("{ty}.arc"),
            format!(
                "component {ty} {{\n  port in Int i0, in Int i1;\n  port out Int o;\n  var Int c = 0;\n  automaton {{\n    states S;\n    initial S;\n    S -> S [present(i0) && present(i1)] / o = i0 * {k} + i1 + c, c = c + 1;\n    S -> S [present(i0) && !present(i1)] / o = i0 + {k}, c = c + 1;\n    S -> S [!present(i0)] / o = c;\n  }}\n}}\n"
            ),
        ));
        body.push_str(&format!("  instance {ty} {node};\n"));
    }
    body.push_str("  connect x -> n0.i0;\n");
    for j in 1..n {
        let mut preds: Vec<usize> = (0..j).collect();
        preds.shuffle(rng);
        for (slot, &p) in preds.iter().take(rng.gen_range(1..=2)).enumerate() {
            let delayed = rng.gen_bool(0.2);
            body.push_str(&format!(
                "  connect {}.o -> {}.i{slot}{};\n",
                nodes[p],
                nodes[j],
                if delayed { " delayed" } else { "" }
            ));
            if !delayed {
                instant.push((p, j));
            }
        }
    }
    body.push_str(&format!("  connect {}.o -> y;\n", nodes[n - 1]));
    files.push(("Top.arc".into(), format!("component Top {{\n{body}SCHEDULE}}\n")));
    DagFixture {
        files,
        nodes,
        instant,
    }
}

/// A random linear extension of the instant edges.
pub fn random_schedule(rng: &mut StdRng, d: &DagFixture) -> Vec<String> {
    let n = d.nodes.len();
    let mut placed: BTreeSet<usize> = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let ready: Vec<usize> = (0..n)
            .filter(|v| !placed.contains(v))
            .filter(|v| {
                d.instant
                    .iter()
                    .all(|&(a, b)| b != *v || placed.contains(&a))
            })
            .collect();
        let pick = *ready.choose(rng).unwrap();
        placed.insert(pick);
        out.push(d.nodes[pick].clone());
    }
    out
}

pub fn with_schedule(d: &DagFixture, order: &[String]) -> Vec<(String, String)> {
    d.files
        .iter()
        .map(|(p, t)| {
            (
                p.clone(),
                t.replace("SCHEDULE", &format!("  schedule {};\n", order.join(", "))),
            )
        })
        .collect()
}

/// Generates the interp manifest for an architecture whose atomic
/// components all carry behaviors, using the corpus generator models.
pub fn interp_manifest(arch: &Arc<Architecture>) -> SimManifest {
    let reg = BehaviorRegistry::with_builtins();
    let gens = load_generator_registry(&corpus().join("gens"), &RulePool::new(&reg)).unwrap();
    let binding = BindingModel {
        name: "Mem".into(),
        root: arch.root.clone(),
        platform: "interp".into(),
        entries: Default::default(),
        file: "mem.bind".into(),
        loc: Loc::new(1, 1),
    };
    let bound = apply_binding(arch, &binding);
    let plan = compose_plan(&gens, "interp", &bound, None).unwrap();
    let set = generate_artifacts(&plan, &bound).unwrap();
    let m: Manifest = serde_json::from_slice(&set.get(MANIFEST_FILE).unwrap().content).unwrap();
    SimManifest::new(m, Path::new(".")).unwrap()
}

pub fn random_inputs(rng: &mut StdRng, ticks: usize) -> Trace {
    Trace {
        columns: vec!["x".into()],
        rows: (0..ticks)
            .map(|_| vec![rng.gen_bool(0.8).then(|| Value::Int(rng.gen_range(-9..10)))])
            .collect(),
    }
}
