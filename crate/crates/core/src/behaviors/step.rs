use thiserror::Error;

use super::eval::{eval_expr, EvalError, ValueEnv};
use crate::model::{Action, ActivityGraph, Automaton, EdgeGuard, EdgeTarget, NodeKind, Value};

/// Node visits after which an activity traversal is abandoned.
pub const TRAVERSAL_LIMIT: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    /// Next automaton state; `None` for activities.
    pub next_state: Option<String>,
    pub vars: ValueEnv,
    /// Out-ports assigned a value this step.
    pub outputs: ValueEnv,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("nondeterministic choice in state `{state}` between transitions {transitions:?}")]
    NondeterministicChoice {
        state: String,
        transitions: Vec<usize>,
    },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown activity node `{0}`")]
    UnknownNode(String),
    #[error("activity traversal exceeded {TRAVERSAL_LIMIT} node visits")]
    TraversalLimitExceeded,
    #[error("no edge leaves activity node `{0}`")]
    Stuck(String),
    #[error("variable `{0}` assigned an absent value")]
    AbsentVariable(String),
    #[error("guard is not a Bool")]
    NonBoolGuard,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Applies one action list: every value is read from `env`, the writes go
/// to `vars` (if the target is a variable) or `outputs`.
fn apply_actions(
    actions: &[Action],
    env: &ValueEnv,
    vars: &mut ValueEnv,
    outputs: &mut ValueEnv,
) -> Result<(), StepError> {
    let mut writes = Vec::with_capacity(actions.len());
    for a in actions {
        writes.push((&a.target, eval_expr(&a.value, env)?));
    }
    for (target, v) in writes {
        if vars.contains(target) {
            let v = v.ok_or_else(|| StepError::AbsentVariable(target.clone()))?;
            vars.set(target, Some(v));
        } else if let Some(v) = v {
            outputs.set(target, Some(v));
        }
    }
    Ok(())
}

pub(crate) fn guard_holds(guard: Option<&crate::model::Expr>, env: &ValueEnv) -> Result<bool, StepError> {
    match guard {
        None => Ok(true),
        Some(g) => match eval_expr(g, env)? {
            None | Some(Value::Bool(false)) => Ok(false),
            Some(Value::Bool(true)) => Ok(true),
            Some(_) => Err(StepError::NonBoolGuard),
        },
    }
}

/// Indices of the transitions leaving `state` whose guard holds in `env`.
pub fn enabled_transitions(
    a: &Automaton,
    state: &str,
    env: &ValueEnv,
) -> Result<Vec<usize>, StepError> {
    let mut out = Vec::new();
    for i in a.outgoing(state) {
        if guard_holds(a.transitions[i].guard.as_ref(), env)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// One reaction of an automaton. `inputs` holds in-port values and
/// configuration parameters.
pub fn automaton_step(
    a: &Automaton,
    state: &str,
    vars: &ValueEnv,
    inputs: &ValueEnv,
) -> Result<StepResult, StepError> {
    if !a.states.iter().any(|s| s == state) {
        return Err(StepError::UnknownState(state.to_string()));
    }
    let env = inputs.merged(vars);
    let enabled = enabled_transitions(a, state, &env)?;
    match enabled.as_slice() {
        [] => Ok(StepResult {
            next_state: Some(state.to_string()),
            vars: vars.clone(),
            outputs: ValueEnv::new(),
        }),
        [i] => {
            let t = &a.transitions[*i];
            let mut next_vars = vars.clone();
            let mut outputs = ValueEnv::new();
            apply_actions(&t.actions, &env, &mut next_vars, &mut outputs)?;
            Ok(StepResult {
                next_state: Some(t.to.clone()),
                vars: next_vars,
                outputs,
            })
        }
        _ => Err(StepError::NondeterministicChoice {
            state: state.to_string(),
            transitions: enabled,
        }),
    }
}

/// One full traversal of an activity from its start node to `end`.
/// Later nodes observe the writes of earlier ones.
pub fn activity_step(
    g: &ActivityGraph,
    vars: &ValueEnv,
    inputs: &ValueEnv,
) -> Result<StepResult, StepError> {
    let mut vars = vars.clone();
    let mut outputs = ValueEnv::new();
    let mut current = g.start.clone();
    for _ in 0..TRAVERSAL_LIMIT {
        let node = g
            .node(&current)
            .ok_or_else(|| StepError::UnknownNode(current.clone()))?;
        let env = inputs.merged(&outputs).merged(&vars);
        let edge = match &node.kind {
            NodeKind::Action(actions) => {
                apply_actions(actions, &env, &mut vars, &mut outputs)?;
                node.edges.first()
            }
            NodeKind::Decision => {
                let mut chosen = None;
                for e in &node.edges {
                    if let EdgeGuard::When(x) = &e.guard {
                        if guard_holds(Some(x), &env)? {
                            chosen = Some(e);
                            break;
                        }
                    }
                }
                chosen.or_else(|| {
                    node.edges
                        .iter()
                        .find(|e| matches!(e.guard, EdgeGuard::Else))
                })
            }
        };
        match edge.map(|e| &e.target) {
            Some(EdgeTarget::End) => {
                return Ok(StepResult {
                    next_state: None,
                    vars,
                    outputs,
                })
            }
            Some(EdgeTarget::Node(n)) => current = n.clone(),
            None => return Err(StepError::Stuck(node.name.clone())),
        }
    }
    Err(StepError::TraversalLimitExceeded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BinaryOp, Expr, Transition};

    fn tr(from: &str, to: &str, guard: Option<Expr>, actions: Vec<(&str, Expr)>) -> Transition {
        Transition {
            from: from.into(),
            to: to.into(),
            guard,
            actions: actions
                .into_iter()
                .map(|(t, v)| Action {
                    target: t.into(),
                    value: v,
                    loc: Default::default(),
                })
                .collect(),
            loc: Default::default(),
        }
    }

    fn automaton(states: &[&str], transitions: Vec<Transition>) -> Automaton {
        Automaton {
            states: states.iter().map(|s| s.to_string()).collect(),
            initial: states[0].into(),
            transitions,
            loc: Default::default(),
        }
    }

    #[test]
    fn stutters_without_enabled_transition() {
        let a = automaton(&["S"], vec![]);
        let vars = ValueEnv::new().with("v", Value::Int(1));
        let r = automaton_step(&a, "S", &vars, &ValueEnv::new()).unwrap();
        assert_eq!(r.next_state.as_deref(), Some("S"));
        assert_eq!(r.vars, vars);
        assert!(r.outputs.is_empty());
    }

    #[test]
    fn actions_read_the_pre_step_environment() {
        let a = automaton(
            &["S"],
            vec![tr(
                "S",
                "S",
                None,
                vec![
                    ("v", Expr::binary(BinaryOp::Add, Expr::Var("v".into()), Expr::int(1))),
                    ("out", Expr::Var("v".into())),
                ],
            )],
        );
        let vars = ValueEnv::new().with("v", Value::Int(5));
        let r = automaton_step(&a, "S", &vars, &ValueEnv::new()).unwrap();
        assert_eq!(r.vars.get("v"), Some(&Value::Int(6)));
        assert_eq!(r.outputs.get("out"), Some(&Value::Int(5)));
    }

    #[test]
    fn two_guardless_transitions_are_nondeterministic() {
        let a = automaton(&["S"], vec![tr("S", "S", None, vec![]), tr("S", "S", None, vec![])]);
        let err = automaton_step(&a, "S", &ValueEnv::new(), &ValueEnv::new()).unwrap_err();
        assert_eq!(
            err,
            StepError::NondeterministicChoice {
                state: "S".into(),
                transitions: vec![0, 1]
            }
        );
    }

    #[test]
    fn absent_output_assignment_leaves_port_absent() {
        let a = automaton(
            &["S"],
            vec![tr("S", "S", None, vec![("out", Expr::Port("x".into()))])],
        );
        let r = automaton_step(&a, "S", &ValueEnv::new(), &ValueEnv::new()).unwrap();
        assert!(r.outputs.get("out").is_none());
    }
}
