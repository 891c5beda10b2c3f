//! Semantics and analyses of the embedded behavior languages.

mod coverage;
mod determinism;
mod eval;
mod step;
mod typing;

pub use coverage::check_guard_coverage;
pub use determinism::{
    check_determinism, int_representatives, DeterminismError, Verdict, Witness,
    DEFAULT_DOMAIN_LIMIT,
};
pub use eval::{eval_expr, EvalError, ValueEnv};
pub use step::{
    activity_step, automaton_step, enabled_transitions, StepError, StepResult, TRAVERSAL_LIMIT,
};
pub use typing::{resolve_names, type_of, Symbol, Symbols};
