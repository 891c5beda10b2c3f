use super::plan::GenerationPlan;
use super::run::{Artifact, ArtifactSet, GenerationError};
use crate::binding::{BoundArchitecture, ImplKind};
use crate::frontend::print_expr;
use crate::model::{
    flatten_architecture, Action, BehaviorModel, ComponentType, DataModel, EdgeGuard, EdgeTarget,
    NodeKind,
};

fn actions(list: &[Action]) -> String {
    list.iter()
        .map(|a| format!("{} = {}", a.target, print_expr(&a.value)))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Behavior section: a state enumeration and transition table for
/// automata, a node table for activities.
fn behavior_section(language: &str, model: &BehaviorModel, out: &mut Vec<String>) {
    out.push(format!("behavior {language}"));
    match model {
        BehaviorModel::Automaton(a) => {
            for s in &a.states {
                if *s == a.initial {
                    out.push(format!("  state {s} initial"));
                } else {
                    out.push(format!("  state {s}"));
                }
            }
            for (i, t) in a.transitions.iter().enumerate() {
                let guard = t.guard.as_ref().map_or("true".to_string(), print_expr);
                out.push(format!(
                    "  transition {i}: {} -> {} when {guard} do {}",
                    t.from,
                    t.to,
                    actions(&t.actions)
                ));
            }
        }
        BehaviorModel::Activity(g) => {
            out.push(format!("  start {}", g.start));
            for n in &g.nodes {
                match &n.kind {
                    NodeKind::Decision => out.push(format!("  node {} decision", n.name)),
                    NodeKind::Action(list) => {
                        out.push(format!("  node {} action do {}", n.name, actions(list)))
                    }
                }
                for e in &n.edges {
                    let target = match &e.target {
                        EdgeTarget::End => "end".to_string(),
                        EdgeTarget::Node(t) => t.clone(),
                    };
                    let guard = match &e.guard {
                        EdgeGuard::Always => "always".to_string(),
                        EdgeGuard::Else => "else".to_string(),
                        EdgeGuard::When(x) => print_expr(x),
                    };
                    out.push(format!("    edge {} -> {target} when {guard}", n.name));
                }
            }
        }
    }
}

fn finish(lines: Vec<String>) -> Vec<u8> {
    let mut s = lines.join("\n");
    s.push('\n');
    s.into_bytes()
}

fn type_artifact(m: &DataModel, platform: &str) -> Vec<u8> {
    let mut out = vec![format!("types {} on platform {platform}", m.name)];
    for e in &m.enums {
        out.push(format!("enum {}: {}", e.name, e.literals.join(", ")));
    }
    for r in &m.records {
        let fields: Vec<String> = r.fields.iter().map(|f| format!("{} {}", f.ty, f.name)).collect();
        out.push(format!("record {}: {}", r.name, fields.join(", ")));
    }
    out.push("end".into());
    finish(out)
}

fn component_artifact(c: &ComponentType, bound: &BoundArchitecture) -> Vec<u8> {
    let mut header = format!("component {}", c.name);
    if !c.type_params.is_empty() {
        header.push_str(&format!("<{}>", c.type_params.join(", ")));
    }
    header.push_str(&format!(" on platform {}", bound.platform));
    let mut out = vec![header];
    for p in &c.ports {
        out.push(format!("port {} {} {}", p.direction, p.ty, p.name));
    }
    for v in &c.variables {
        match &v.initial {
            Some(init) => out.push(format!("var {} {} = {init}", v.ty, v.name)),
            None => out.push(format!("var {} {}", v.ty, v.name)),
        }
    }
    for p in &c.config_params {
        out.push(format!("param {} {}", p.ty, p.name));
    }
    for s in &c.subcomponents {
        let args: Vec<String> = s.args.iter().map(|a| a.to_string()).collect();
        out.push(format!("instance {} {}({})", s.ty, s.name, args.join(", ")));
    }
    for con in &c.connectors {
        let targets: Vec<String> = con.targets.iter().map(|t| t.to_string()).collect();
        out.push(format!(
            "connect {} -> {}{}",
            con.source,
            targets.join(", "),
            if con.delayed { " delayed" } else { "" }
        ));
    }
    if let Some(s) = &c.schedule {
        out.push(format!("schedule {}", s.order.join(", ")));
    }
    if let Some(b) = c.behavior() {
        behavior_section(&b.language, &b.model, &mut out);
    }
    if let Some(imp) = bound.resolved_impls.get(&c.name) {
        match imp.kind {
            ImplKind::Extern => out.push(format!("extern impl \"{}\"", imp.locator)),
            ImplKind::Stub => out.push(format!("stub trace \"{}\"", imp.locator)),
        }
    }
    out.push("end".into());
    finish(out)
}

fn behavior_artifact(c: &ComponentType, platform: &str) -> Option<Vec<u8>> {
    let b = c.behavior()?;
    let mut out = vec![format!("behavior of {} on platform {platform}", c.name)];
    behavior_section(&b.language, &b.model, &mut out);
    out.push("end".into());
    Some(finish(out))
}

fn main_artifact(plan: &GenerationPlan, bound: &BoundArchitecture) -> Result<Vec<u8>, GenerationError> {
    let net = flatten_architecture(&bound.architecture)
        .map_err(|e| GenerationError::Emit(e.to_string()))?;
    let mut out = vec![
        format!("main {} on platform {}", net.root_type, plan.platform),
        format!("rts \"{}\"", plan.rts),
    ];
    let mut paths: Vec<(String, String)> = net
        .composites
        .iter()
        .filter(|c| !c.path.is_empty())
        .map(|c| (c.path.clone(), c.component_type.clone()))
        .chain(
            net.instances
                .iter()
                .filter(|i| !i.path.is_empty())
                .map(|i| (i.path.clone(), i.component_type.clone())),
        )
        .collect();
    paths.sort();
    for (p, t) in paths {
        out.push(format!("instance {p}: {t}"));
    }
    out.push("end".into());
    Ok(finish(out))
}

/// Emits one artifact per data model, per behavioral atomic component,
/// per reachable component type, and the `main` bootstrap.
pub fn emit_text_sources(
    plan: &GenerationPlan,
    bound: &BoundArchitecture,
) -> Result<ArtifactSet, GenerationError> {
    let arch = &bound.architecture;
    let mut files = Vec::new();
    for m in &arch.data_models {
        files.push(Artifact::new(
            &format!("types/{}.gen.txt", m.name),
            type_artifact(m, &plan.platform),
        ));
    }
    let mut reachable = arch.reachable_components();
    reachable.sort_by(|a, b| a.name.cmp(&b.name));
    for c in &reachable {
        if let Some(bytes) = behavior_artifact(c, &plan.platform) {
            files.push(Artifact::new(&format!("behaviors/{}.gen.txt", c.name), bytes));
        }
    }
    for c in &reachable {
        files.push(Artifact::new(
            &format!("components/{}.gen.txt", c.name),
            component_artifact(c, bound),
        ));
    }
    files.push(Artifact::new("main.gen.txt", main_artifact(plan, bound)?));
    Ok(ArtifactSet::new(files, None))
}
