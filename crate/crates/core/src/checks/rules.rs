use std::collections::{BTreeMap, BTreeSet};

use super::{CheckContext, CheckRule, RuleScope};
use crate::behaviors::{type_of, Symbol, Symbols};
use crate::diag::{Diagnostic, Loc};
use crate::model::{
    dataflow_graph, Action, Architecture, BehaviorModel, ComponentType, DataType, Direction,
    EdgeGuard, EdgeTarget, Expr, GenericScope, NodeKind, PortRef, ResolveError, TypeRef,
};

/// The core rule set, C001 to C011.
pub fn core_rules() -> Vec<CheckRule> {
    use RuleScope::Component as C;
    vec![
        CheckRule::new("C001", "UniqueNames", "names are unique within their namespace", C, unique_names),
        CheckRule::new("C002", "ConnectorTypes", "connected ports have equal types", C, connector_types),
        CheckRule::new("C003", "ConnectorDirections", "connectors run from sources to sinks", C, connector_directions),
        CheckRule::new("C004", "SingleWriter", "each port is targeted at most once", C, single_writer),
        CheckRule::new("C005", "NoDanglingReferences", "port references resolve", C, dangling_references),
        CheckRule::new("C006", "AtomicBehavior", "behavior and variables only on atomic components", C, atomic_behavior),
        CheckRule::new("C007", "ScheduleValid", "schedules list every subcomponent once in dataflow order", C, schedule_valid),
        CheckRule::new("C008", "NoInstantCycles", "instant dataflow between subcomponents is acyclic", C, no_instant_cycles),
        CheckRule::new("C009", "BehaviorResolved", "behavior blocks are registered, resolved and well typed", C, behavior_resolved),
        CheckRule::new("C010", "ConfigArguments", "configuration arguments and variable initials match their types", C, config_arguments),
        CheckRule::new("C011", "GenericInstantiation", "generic types are fully instantiated with matching arity", RuleScope::Architecture, generic_instantiation),
    ]
}

fn err(id: &str, c: &ComponentType, loc: Loc, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error(id, &c.file, loc, msg)
}

fn unique_names(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in ctx.arch.components.values() {
        let mut seen = BTreeSet::new();
        let members = c
            .config_params
            .iter()
            .map(|p| (&p.name, p.loc, "configuration parameter"))
            .chain(c.ports.iter().map(|p| (&p.name, p.loc, "port")))
            .chain(c.variables.iter().map(|v| (&v.name, v.loc, "variable")));
        for (name, loc, what) in members {
            if !seen.insert(name) {
                out.push(err("C001", c, loc, format!("duplicate name `{name}` ({what})")));
            }
        }
        let mut subs = BTreeSet::new();
        for s in &c.subcomponents {
            if !subs.insert(&s.name) {
                out.push(err("C001", c, s.loc, format!("duplicate subcomponent `{}`", s.name)));
            }
        }
        let mut params = BTreeSet::new();
        for p in &c.type_params {
            if !params.insert(p) {
                out.push(err("C001", c, c.loc, format!("duplicate type parameter `{p}`")));
            }
        }
    }
    out
}

/// Direction and, when resolvable, data type of a connector endpoint.
fn endpoint(
    arch: &Architecture,
    owner: &ComponentType,
    r: &PortRef,
) -> Option<(Direction, Option<DataType>)> {
    let own_scope = GenericScope::of(&owner.type_params);
    match &r.instance {
        None => {
            let p = owner.port(&r.port)?;
            Some((p.direction, arch.data_type(&p.ty, own_scope).ok()))
        }
        Some(i) => {
            let sub = owner.subcomponent(i)?;
            let ty = arch.component(&sub.ty.name)?;
            let p = ty.port(&r.port)?;
            if ty.type_params.len() != sub.ty.args.len() {
                return Some((p.direction, None));
            }
            let subst: Vec<(String, TypeRef)> = ty
                .type_params
                .iter()
                .cloned()
                .zip(sub.ty.args.iter().cloned())
                .collect();
            let scope = GenericScope {
                params: &owner.type_params,
                bindings: &subst,
            };
            Some((p.direction, arch.data_type(&p.ty, scope).ok()))
        }
    }
}

fn connector_types(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in ctx.arch.components.values() {
        for con in &c.connectors {
            let Some((_, Some(st))) = endpoint(ctx.arch, c, &con.source) else {
                continue;
            };
            for t in &con.targets {
                if let Some((_, Some(tt))) = endpoint(ctx.arch, c, t) {
                    if st != tt {
                        out.push(err(
                            "C002",
                            c,
                            con.loc,
                            format!(
                                "cannot connect `{}` of type {st} to `{t}` of type {tt}",
                                con.source
                            ),
                        ));
                    }
                }
            }
        }
    }
    out
}

fn connector_directions(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in ctx.arch.components.values() {
        if c.is_atomic() {
            for con in &c.connectors {
                out.push(err(
                    "C003",
                    c,
                    con.loc,
                    format!("atomic component `{}` cannot declare connectors", c.name),
                ));
            }
            continue;
        }
        for con in &c.connectors {
            if let Some((dir, _)) = endpoint(ctx.arch, c, &con.source) {
                let ok = match con.source.instance {
                    None => dir == Direction::In,
                    Some(_) => dir == Direction::Out,
                };
                if !ok {
                    out.push(err(
                        "C003",
                        c,
                        con.loc,
                        format!(
                            "connector source `{}` must be a subcomponent out-port or an own in-port",
                            con.source
                        ),
                    ));
                }
            }
            for t in &con.targets {
                if let Some((dir, _)) = endpoint(ctx.arch, c, t) {
                    let ok = match t.instance {
                        None => dir == Direction::Out,
                        Some(_) => dir == Direction::In,
                    };
                    if !ok {
                        out.push(err(
                            "C003",
                            c,
                            con.loc,
                            format!(
                                "connector target `{t}` must be a subcomponent in-port or an own out-port"
                            ),
                        ));
                    }
                }
            }
        }
    }
    out
}

fn single_writer(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in ctx.arch.components.values() {
        let mut seen = BTreeSet::new();
        for con in &c.connectors {
            for t in &con.targets {
                if !seen.insert(t) {
                    out.push(err(
                        "C004",
                        c,
                        con.loc,
                        format!("port `{t}` is targeted by more than one connector"),
                    ));
                }
            }
        }
    }
    out
}

fn dangling_references(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in ctx.arch.components.values() {
        for con in &c.connectors {
            for r in std::iter::once(&con.source).chain(&con.targets) {
                let problem = match &r.instance {
                    None => c
                        .port(&r.port)
                        .is_none()
                        .then(|| format!("`{}` has no port `{}`", c.name, r.port)),
                    Some(i) => match c.subcomponent(i) {
                        None => Some(format!("unknown subcomponent `{i}`")),
                        Some(s) => match ctx.arch.component(&s.ty.name) {
                            Some(ty) if ty.port(&r.port).is_none() => Some(format!(
                                "subcomponent `{i}` of type `{}` has no port `{}`",
                                ty.name, r.port
                            )),
                            _ => None,
                        },
                    },
                };
                if let Some(msg) = problem {
                    out.push(err("C005", c, con.loc, format!("dangling reference `{r}`: {msg}")));
                }
            }
        }
    }
    out
}

fn atomic_behavior(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in ctx.arch.components.values() {
        if c.is_atomic() {
            for b in c.behaviors.iter().skip(1) {
                out.push(err(
                    "C006",
                    c,
                    b.loc,
                    format!("component `{}` declares more than one behavior", c.name),
                ));
            }
        } else {
            for b in &c.behaviors {
                out.push(err(
                    "C006",
                    c,
                    b.loc,
                    format!("composed component `{}` cannot have a behavior", c.name),
                ));
            }
            for v in &c.variables {
                out.push(err(
                    "C006",
                    c,
                    v.loc,
                    format!("composed component `{}` cannot declare variable `{}`", c.name, v.name),
                ));
            }
        }
    }
    out
}

fn schedule_valid(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in ctx.arch.components.values() {
        let Some(s) = &c.schedule else { continue };
        if c.is_atomic() {
            out.push(err("C007", c, s.loc, "only composed components can declare a schedule"));
            continue;
        }
        let mut listed = s.order.clone();
        listed.sort();
        let mut subs: Vec<String> = c.subcomponents.iter().map(|x| x.name.clone()).collect();
        subs.sort();
        subs.dedup();
        if listed != subs {
            out.push(err("C007", c, s.loc, "schedule must list every subcomponent exactly once"));
            continue;
        }
        if let Some((a, b)) = dataflow_graph(ctx.arch, c).first_violation(&s.order) {
            out.push(err(
                "C007",
                c,
                s.loc,
                format!("schedule violates dataflow order ({a} must precede {b})"),
            ));
        }
    }
    out
}

fn no_instant_cycles(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in ctx.arch.components.values().filter(|c| !c.is_atomic()) {
        if let Some(cycle) = dataflow_graph(ctx.arch, c).find_cycle() {
            out.push(err(
                "C008",
                c,
                c.loc,
                format!(
                    "instant dataflow cycle among subcomponents [{}]; break it with a delayed connector",
                    cycle.join(", ")
                ),
            ));
        }
    }
    out
}

fn check_expr(
    c: &ComponentType,
    syms: &Symbols,
    e: &Expr,
    want: Option<&DataType>,
    loc: Loc,
    out: &mut Vec<Diagnostic>,
) {
    match type_of(e, syms) {
        Err(msg) => out.push(err("C009", c, loc, msg)),
        Ok(t) => {
            if let Some(w) = want {
                if &t != w {
                    out.push(err("C009", c, loc, format!("expected {w}, found {t}")));
                }
            }
        }
    }
}

fn check_actions(c: &ComponentType, syms: &Symbols, actions: &[Action], out: &mut Vec<Diagnostic>) {
    let mut targets = BTreeSet::new();
    for a in actions {
        if !targets.insert(&a.target) {
            out.push(err("C009", c, a.loc, format!("`{}` is assigned twice in one action list", a.target)));
        }
        match syms.get(&a.target) {
            Some(Symbol::Var(t)) | Some(Symbol::Port(Direction::Out, t)) => {
                check_expr(c, syms, &a.value, Some(t), a.loc, out)
            }
            _ => {
                out.push(err(
                    "C009",
                    c,
                    a.loc,
                    format!("action target `{}` must be an out-port or a variable", a.target),
                ));
                check_expr(c, syms, &a.value, None, a.loc, out);
            }
        }
    }
}

fn behavior_resolved(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let boolean = Some(&DataType::Bool);
    for c in ctx.arch.components.values() {
        if c.behaviors.is_empty() {
            continue;
        }
        let syms = Symbols::of(ctx.arch, c);
        for b in &c.behaviors {
            if ctx.registry.by_id(&b.language).is_none() {
                out.push(err(
                    "C009",
                    c,
                    b.loc,
                    format!("behavior language `{}` is not registered", b.language),
                ));
            }
            match &b.model {
                BehaviorModel::Automaton(a) => {
                    let mut states = BTreeSet::new();
                    for s in &a.states {
                        if !states.insert(s) {
                            out.push(err("C009", c, a.loc, format!("duplicate state `{s}`")));
                        }
                    }
                    if !states.contains(&a.initial) {
                        out.push(err("C009", c, a.loc, format!("initial state `{}` is not declared", a.initial)));
                    }
                    for t in &a.transitions {
                        for s in [&t.from, &t.to] {
                            if !states.contains(s) {
                                out.push(err("C009", c, t.loc, format!("unknown state `{s}`")));
                            }
                        }
                        if let Some(g) = &t.guard {
                            check_expr(c, &syms, g, boolean, t.loc, &mut out);
                        }
                        check_actions(c, &syms, &t.actions, &mut out);
                    }
                }
                BehaviorModel::Activity(g) => {
                    let mut nodes = BTreeSet::new();
                    for n in &g.nodes {
                        if !nodes.insert(&n.name) {
                            out.push(err("C009", c, n.loc, format!("duplicate node `{}`", n.name)));
                        }
                    }
                    if !nodes.contains(&g.start) {
                        out.push(err("C009", c, g.loc, format!("start node `{}` is not declared", g.start)));
                    }
                    for n in &g.nodes {
                        if let NodeKind::Action(actions) = &n.kind {
                            check_actions(c, &syms, actions, &mut out);
                        }
                        for e in &n.edges {
                            if let EdgeTarget::Node(t) = &e.target {
                                if !nodes.contains(t) {
                                    out.push(err("C009", c, e.loc, format!("unknown node `{t}`")));
                                }
                            }
                            if let EdgeGuard::When(x) = &e.guard {
                                check_expr(c, &syms, x, boolean, e.loc, &mut out);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn config_arguments(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let arch = ctx.arch;
    for c in arch.components.values() {
        for s in &c.subcomponents {
            let Some(ty) = arch.component(&s.ty.name) else { continue };
            if s.args.len() != ty.config_params.len() {
                out.push(err(
                    "C010",
                    c,
                    s.loc,
                    format!(
                        "`{}` expects {} configuration argument(s), got {}",
                        ty.name,
                        ty.config_params.len(),
                        s.args.len()
                    ),
                ));
                continue;
            }
            if ty.type_params.len() != s.ty.args.len() {
                continue;
            }
            let subst: Vec<(String, TypeRef)> = ty
                .type_params
                .iter()
                .cloned()
                .zip(s.ty.args.iter().cloned())
                .collect();
            let scope = GenericScope {
                params: &c.type_params,
                bindings: &subst,
            };
            for (p, lit) in ty.config_params.iter().zip(&s.args) {
                match arch.data_type(&p.ty, scope) {
                    Ok(DataType::Param(t)) => out.push(err(
                        "C010",
                        c,
                        s.loc,
                        format!("argument for `{}` has generic type `{t}` and cannot be a literal", p.name),
                    )),
                    Ok(t) => {
                        if let Err(msg) = arch.literal_value(lit, &t) {
                            out.push(err("C010", c, s.loc, format!("argument for `{}`: {msg}", p.name)));
                        }
                    }
                    Err(_) => {}
                }
            }
        }
        let scope = GenericScope::of(&c.type_params);
        for v in &c.variables {
            let Some(init) = &v.initial else { continue };
            match arch.data_type(&v.ty, scope) {
                Ok(DataType::Param(t)) => out.push(err(
                    "C010",
                    c,
                    v.loc,
                    format!("variable `{}` has generic type `{t}` and cannot take a literal", v.name),
                )),
                Ok(t) => {
                    if let Err(msg) = arch.literal_value(init, &t) {
                        out.push(err("C010", c, v.loc, format!("initial value of `{}`: {msg}", v.name)));
                    }
                }
                Err(_) => {}
            }
        }
    }
    out
}

fn generic_instantiation(ctx: &CheckContext<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let arch = ctx.arch;
    let report = |file: &str, e: ResolveError, out: &mut Vec<Diagnostic>| match e {
        ResolveError::ArityMismatch { .. } | ResolveError::NotADataType { .. } => {
            out.push(Diagnostic::error("C011", file, e.loc(), e.to_string()))
        }
        ResolveError::UnknownType { .. } => {}
    };
    for c in arch.components.values() {
        let scope = GenericScope::of(&c.type_params);
        let mut reported = BTreeMap::new();
        for r in c.type_refs() {
            if let Err(e) = arch.resolve_type_ref(r, scope) {
                if reported.insert((r.loc.line, r.loc.col), ()).is_none() {
                    report(&c.file, e, &mut out);
                }
            }
        }
    }
    for m in &arch.data_models {
        for r in &m.records {
            for f in &r.fields {
                if let Err(e) = arch.data_type(&f.ty, GenericScope::default()) {
                    report(&m.file, e, &mut out);
                }
            }
        }
    }
    out
}
