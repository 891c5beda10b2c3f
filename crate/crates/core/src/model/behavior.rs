use serde::{Deserialize, Serialize};

use super::expr::Expr;
use crate::diag::Loc;

/// `target = value`; the target is an out-port or a variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Action {
    pub target: String,
    pub value: Expr,
    #[serde(skip)]
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub from: String,
    pub to: String,
    pub guard: Option<Expr>,
    pub actions: Vec<Action>,
    #[serde(skip)]
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automaton {
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: Vec<Transition>,
    #[serde(skip)]
    pub loc: Loc,
}

impl Automaton {
    /// Indices of transitions leaving `state`, in declaration order.
    pub fn outgoing(&self, state: &str) -> Vec<usize> {
        self.transitions
            .iter()
            .enumerate()
            .filter(|(_, t)| t.from == state)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeTarget {
    End,
    Node(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeGuard {
    Always,
    Else,
    When(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub target: EdgeTarget,
    pub guard: EdgeGuard,
    #[serde(skip)]
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Action(Vec<Action>),
    Decision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivityNode {
    pub name: String,
    pub kind: NodeKind,
    pub edges: Vec<Edge>,
    #[serde(skip)]
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivityGraph {
    pub start: String,
    pub nodes: Vec<ActivityNode>,
    #[serde(skip)]
    pub loc: Loc,
}

impl ActivityGraph {
    pub fn node(&self, name: &str) -> Option<&ActivityNode> {
        self.nodes.iter().find(|n| n.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BehaviorModel {
    Automaton(Automaton),
    Activity(ActivityGraph),
}

impl BehaviorModel {
    pub fn exprs(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        match self {
            BehaviorModel::Automaton(a) => {
                for t in &a.transitions {
                    out.extend(t.guard.iter());
                    out.extend(t.actions.iter().map(|a| &a.value));
                }
            }
            BehaviorModel::Activity(g) => {
                for n in &g.nodes {
                    if let NodeKind::Action(actions) = &n.kind {
                        out.extend(actions.iter().map(|a| &a.value));
                    }
                    for e in &n.edges {
                        if let EdgeGuard::When(x) = &e.guard {
                            out.push(x);
                        }
                    }
                }
            }
        }
        out
    }
}

/// A behavior block embedded in a component body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehaviorAttachment {
    pub language: String,
    pub model: BehaviorModel,
    #[serde(skip)]
    pub loc: Loc,
}
