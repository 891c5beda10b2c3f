use std::fmt;

use thiserror::Error;

use super::activity::{parse_activity_body, print_activity_body};
use super::automaton::{parse_automaton_body, print_automaton_body};
use super::cursor::{PResult, TokenCursor};
use super::print::Printer;
use crate::checks::{self, CheckRule};
use crate::model::BehaviorModel;

pub type BodyParser = fn(&mut TokenCursor) -> PResult<BehaviorModel>;
pub type BodyPrinter = fn(&BehaviorModel, &mut Printer);

/// ADL element keywords; a behavior language may not claim them.
pub const ELEMENT_KEYWORDS: &[&str] = &["port", "var", "instance", "connect", "schedule"];

/// One embeddable behavior language: the keyword that opens its block,
/// the parser and printer for the block body, and the checks it adds.
#[derive(Clone)]
pub struct BehaviorLanguage {
    pub id: String,
    pub keyword: String,
    pub parse: BodyParser,
    pub print: BodyPrinter,
    pub checks: Vec<CheckRule>,
}

impl fmt::Debug for BehaviorLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BehaviorLanguage")
            .field("id", &self.id)
            .field("keyword", &self.keyword)
            .field("checks", &self.checks.iter().map(|c| &c.id).collect::<Vec<_>>())
            .finish()
    }
}

impl BehaviorLanguage {
    pub fn automaton() -> Self {
        BehaviorLanguage {
            id: "automaton".into(),
            keyword: "automaton".into(),
            parse: parse_automaton_body,
            print: print_automaton_body,
            checks: vec![checks::deterministic_automaton_rule()],
        }
    }

    pub fn activity() -> Self {
        BehaviorLanguage {
            id: "activity".into(),
            keyword: "activity".into(),
            parse: parse_activity_body,
            print: print_activity_body,
            checks: vec![checks::guard_coverage_rule()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("behavior keyword `{0}` is already registered")]
    DuplicateKeyword(String),
    #[error("behavior language `{0}` is already registered")]
    DuplicateLanguage(String),
    #[error("`{0}` is an ADL element keyword")]
    ReservedKeyword(String),
}

/// Keyword-indexed behavior languages, consulted only at the component-body
/// extension point.
#[derive(Debug, Clone, Default)]
pub struct BehaviorRegistry {
    languages: Vec<BehaviorLanguage>,
}

impl BehaviorRegistry {
    pub fn empty() -> Self {
        BehaviorRegistry::default()
    }

    /// Registry with the shipped `automaton` and `activity` languages.
    pub fn with_builtins() -> Self {
        let mut r = BehaviorRegistry::empty();
        r.register(BehaviorLanguage::automaton())
            .expect("builtin keywords are distinct");
        r.register(BehaviorLanguage::activity())
            .expect("builtin keywords are distinct");
        r
    }

    pub fn register(&mut self, lang: BehaviorLanguage) -> Result<(), RegistryError> {
        if ELEMENT_KEYWORDS.contains(&lang.keyword.as_str()) {
            return Err(RegistryError::ReservedKeyword(lang.keyword));
        }
        if self.by_keyword(&lang.keyword).is_some() {
            return Err(RegistryError::DuplicateKeyword(lang.keyword));
        }
        if self.by_id(&lang.id).is_some() {
            return Err(RegistryError::DuplicateLanguage(lang.id));
        }
        self.languages.push(lang);
        Ok(())
    }

    pub fn by_keyword(&self, kw: &str) -> Option<&BehaviorLanguage> {
        self.languages.iter().find(|l| l.keyword == kw)
    }

    pub fn by_id(&self, id: &str) -> Option<&BehaviorLanguage> {
        self.languages.iter().find(|l| l.id == id)
    }

    pub fn languages(&self) -> &[BehaviorLanguage] {
        &self.languages
    }

    pub fn check_rules(&self) -> impl Iterator<Item = &CheckRule> {
        self.languages.iter().flat_map(|l| l.checks.iter())
    }
}

/// Functional form of [`BehaviorRegistry::register`].
pub fn register_behavior_language(
    lang: BehaviorLanguage,
    mut registry: BehaviorRegistry,
) -> Result<BehaviorRegistry, RegistryError> {
    registry.register(lang)?;
    Ok(registry)
}
