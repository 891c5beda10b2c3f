//! Body grammar of the `activity` behavior language: a single-tick,
//! terminating traversal from `start` to `end`.
//!
//! ```text
//! actBody  := "start" "->" ID ";" nodeDecl*
//! nodeDecl := "node" ID ":" ("action" "{" (action ";")* "}" | "decision") edge+
//! edge     := "->" (ID | "end") ("[" (expr | "else") "]")? ";"
//! ```

use super::automaton::parse_action;
use super::cursor::{PResult, TokenCursor};
use super::expr::parse_expr;
use super::print::{print_expr, Printer};
use crate::model::{ActivityGraph, ActivityNode, BehaviorModel, Edge, EdgeGuard, EdgeTarget, NodeKind};

pub fn parse_activity_body(c: &mut TokenCursor) -> PResult<BehaviorModel> {
    let loc = c.expect_kw("start")?;
    c.expect_sym("->")?;
    let (start, _) = c.expect_ident()?;
    c.expect_sym(";")?;
    let mut nodes = Vec::new();
    while c.is_kw("node") {
        let nloc = c.bump().loc;
        let (name, _) = c.expect_ident()?;
        c.expect_sym(":")?;
        let kind = if c.eat_kw("action") {
            c.expect_sym("{")?;
            let mut actions = Vec::new();
            while !c.is_sym("}") {
                actions.push(parse_action(c)?);
                c.expect_sym(";")?;
            }
            c.expect_sym("}")?;
            NodeKind::Action(actions)
        } else if c.eat_kw("decision") {
            NodeKind::Decision
        } else {
            return Err(c.unexpected("`action` or `decision`"));
        };
        let mut edges = Vec::new();
        while c.is_sym("->") {
            let eloc = c.bump().loc;
            let target = if c.eat_kw("end") {
                EdgeTarget::End
            } else {
                EdgeTarget::Node(c.expect_ident()?.0)
            };
            let guard = if c.eat_sym("[") {
                let g = if c.eat_kw("else") {
                    EdgeGuard::Else
                } else {
                    EdgeGuard::When(parse_expr(c)?)
                };
                c.expect_sym("]")?;
                g
            } else {
                EdgeGuard::Always
            };
            c.expect_sym(";")?;
            edges.push(Edge {
                target,
                guard,
                loc: eloc,
            });
        }
        if edges.is_empty() {
            return Err(c.unexpected("`->` starting an edge"));
        }
        nodes.push(ActivityNode {
            name,
            kind,
            edges,
            loc: nloc,
        });
    }
    Ok(BehaviorModel::Activity(ActivityGraph { start, nodes, loc }))
}

pub fn print_activity_body(model: &BehaviorModel, p: &mut Printer) {
    let BehaviorModel::Activity(g) = model else {
        return;
    };
    p.line(&format!("start -> {};", g.start));
    for n in &g.nodes {
        match &n.kind {
            NodeKind::Decision => p.line(&format!("node {}: decision", n.name)),
            NodeKind::Action(actions) => {
                let body: String = actions
                    .iter()
                    .map(|a| format!(" {} = {};", a.target, print_expr(&a.value)))
                    .collect();
                p.line(&format!("node {}: action {{{body} }}", n.name));
            }
        }
        p.indent();
        for e in &n.edges {
            let target = match &e.target {
                EdgeTarget::End => "end".to_string(),
                EdgeTarget::Node(t) => t.clone(),
            };
            let guard = match &e.guard {
                EdgeGuard::Always => String::new(),
                EdgeGuard::Else => " [else]".to_string(),
                EdgeGuard::When(x) => format!(" [{}]", print_expr(x)),
            };
            p.line(&format!("-> {target}{guard};"));
        }
        p.dedent();
    }
}
