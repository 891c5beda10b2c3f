//! Well-formedness rules and the runner that executes them.

mod rules;

use std::fmt;

use thiserror::Error;

use crate::behaviors::{check_determinism, check_guard_coverage, Symbols, Verdict, DEFAULT_DOMAIN_LIMIT};
use crate::diag::{has_errors, sort_diagnostics, Diagnostic};
use crate::frontend::BehaviorRegistry;
use crate::model::{Architecture, BehaviorModel, ProfileId};

pub use rules::core_rules;

/// Whether a rule inspects the architecture as a whole or each component on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleScope {
    Architecture,
    Component,
}

pub type RuleFn = fn(&CheckContext<'_>) -> Vec<Diagnostic>;

/// A named, pure context condition.
#[derive(Clone)]
pub struct CheckRule {
    pub id: String,
    pub name: String,
    pub description: String,
    pub scope: RuleScope,
    pub run: RuleFn,
}

impl fmt::Debug for CheckRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckRule")
            .field("id", &self.id)
            .field("name", &self.name)
            .finish()
    }
}

impl CheckRule {
    pub fn new(id: &str, name: &str, description: &str, scope: RuleScope, run: RuleFn) -> Self {
        CheckRule {
            id: id.to_string(),
            name: name.to_string(),
            description: description.to_string(),
            scope,
            run,
        }
    }
}

pub struct CheckContext<'a> {
    pub arch: &'a Architecture,
    pub registry: &'a BehaviorRegistry,
    /// Abstract-environment cap for the determinism analysis.
    pub domain_limit: u64,
}

impl<'a> CheckContext<'a> {
    pub fn new(arch: &'a Architecture, registry: &'a BehaviorRegistry) -> Self {
        CheckContext {
            arch,
            registry,
            domain_limit: DEFAULT_DOMAIN_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown check rule `{0}`")]
    UnknownRule(String),
}

/// Rules addressable by id or name.
#[derive(Debug, Clone, Default)]
pub struct RulePool {
    rules: Vec<CheckRule>,
}

impl RulePool {
    /// The core rules plus every rule contributed by a registered behavior language.
    pub fn new(registry: &BehaviorRegistry) -> Self {
        let mut pool = RulePool::default();
        for r in core_rules() {
            pool.add(r);
        }
        for r in registry.check_rules() {
            pool.add(r.clone());
        }
        pool
    }

    /// Adds a rule unless one with the same id is already present.
    pub fn add(&mut self, rule: CheckRule) -> bool {
        if self.get(&rule.id).is_some() {
            return false;
        }
        self.rules.push(rule);
        true
    }

    pub fn get(&self, id_or_name: &str) -> Option<&CheckRule> {
        self.rules
            .iter()
            .find(|r| r.id == id_or_name || r.name == id_or_name)
    }

    pub fn rules(&self) -> &[CheckRule] {
        &self.rules
    }
}

/// Ids of the rules every architecture must pass under `profile`.
pub fn profile_rule_ids(profile: ProfileId) -> Vec<String> {
    let mut ids: Vec<String> = core_rules()
        .into_iter()
        .map(|r| r.id)
        .filter(|id| id != "C007")
        .collect();
    if profile == ProfileId::Scheduled {
        ids.push("C007".into());
        ids.sort();
    }
    ids
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    /// Per rule, in the order the rules were requested.
    pub results: Vec<(String, Vec<Diagnostic>)>,
    pub passed: bool,
}

impl CheckReport {
    /// All diagnostics ordered by file, line, column and rule id.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut all: Vec<Diagnostic> = self
            .results
            .iter()
            .flat_map(|(_, d)| d.iter().cloned())
            .collect();
        sort_diagnostics(&mut all);
        all
    }

    pub fn errors(&self) -> Vec<Diagnostic> {
        self.diagnostics().into_iter().filter(Diagnostic::is_error).collect()
    }

    pub fn for_rule(&self, id: &str) -> &[Diagnostic] {
        self.results
            .iter()
            .find(|(r, _)| r == id)
            .map(|(_, d)| d.as_slice())
            .unwrap_or(&[])
    }
}

/// Runs the selected rules. Names are accepted in place of ids; a rule
/// selected twice runs once.
pub fn run_checks(
    ctx: &CheckContext<'_>,
    rule_ids: &[String],
    pool: &RulePool,
) -> Result<CheckReport, CheckError> {
    let mut selected: Vec<&CheckRule> = Vec::new();
    for id in rule_ids {
        let rule = pool
            .get(id)
            .ok_or_else(|| CheckError::UnknownRule(id.clone()))?;
        if !selected.iter().any(|r| r.id == rule.id) {
            selected.push(rule);
        }
    }
    let results: Vec<(String, Vec<Diagnostic>)> = selected
        .into_iter()
        .map(|r| {
            let mut d = (r.run)(ctx);
            sort_diagnostics(&mut d);
            (r.id.clone(), d)
        })
        .collect();
    let passed = !results.iter().any(|(_, d)| has_errors(d));
    Ok(CheckReport { results, passed })
}

/// Runs the rule set of the architecture's profile.
pub fn check_architecture(arch: &Architecture, registry: &BehaviorRegistry) -> CheckReport {
    let ctx = CheckContext::new(arch, registry);
    run_checks(&ctx, &profile_rule_ids(arch.profile), &RulePool::new(registry))
        .expect("profile rules are in the core pool")
}

/// G001: every automaton is deterministic over its abstract input domain.
pub fn deterministic_automaton_rule() -> CheckRule {
    CheckRule::new(
        "G001",
        "DeterministicAutomaton",
        "no reachable abstract input enables two transitions of one state",
        RuleScope::Component,
        |ctx| {
            let mut out = Vec::new();
            for c in ctx.arch.components.values() {
                for b in &c.behaviors {
                    let BehaviorModel::Automaton(a) = &b.model else {
                        continue;
                    };
                    let syms = Symbols::of(ctx.arch, c);
                    match check_determinism(a, &syms, ctx.domain_limit) {
                        Ok(Verdict::Deterministic) => {}
                        Ok(Verdict::Witness(w)) => {
                            let env: Vec<String> = w
                                .env
                                .iter()
                                .map(|(k, v)| match v {
                                    Some(v) => format!("{k}={v}"),
                                    None => format!("{k}=absent"),
                                })
                                .collect();
                            let loc = a.transitions[w.transitions[0]].loc;
                            out.push(Diagnostic::error(
                                "G001",
                                &c.file,
                                loc,
                                format!(
                                    "automaton of `{}` is nondeterministic in state {}: transitions {:?} are all enabled by {{{}}}",
                                    c.name,
                                    w.state,
                                    w.transitions,
                                    env.join(", ")
                                ),
                            ));
                        }
                        Err(e) => out.push(Diagnostic::error("G001", &c.file, a.loc, e.to_string())),
                    }
                }
            }
            out
        },
    )
}

/// G002: activity decision nodes have an else edge and action nodes one plain edge.
pub fn guard_coverage_rule() -> CheckRule {
    CheckRule::new(
        "G002",
        "GuardCoverage",
        "decision nodes have an else edge; action nodes have exactly one unguarded edge",
        RuleScope::Component,
        |ctx| {
            let mut out = Vec::new();
            for c in ctx.arch.components.values() {
                for b in &c.behaviors {
                    if let BehaviorModel::Activity(g) = &b.model {
                        for (loc, msg) in check_guard_coverage(g) {
                            out.push(Diagnostic::error("G002", &c.file, loc, msg));
                        }
                    }
                }
            }
            out
        },
    )
}
