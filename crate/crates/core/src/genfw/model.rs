use std::fmt;

use crate::diag::Loc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// Component hulls and the entry point.
    Component,
    /// Code for one embedded behavior language.
    Behavior,
    /// Data type code.
    Type,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::Component => "component",
            GeneratorKind::Behavior => "behavior",
            GeneratorKind::Type => "type",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryPoint {
    Any,
    Component(String),
}

impl EntryPoint {
    pub fn accepts(&self, root: &str) -> bool {
        match self {
            EntryPoint::Any => true,
            EntryPoint::Component(c) => c == root,
        }
    }
}

impl fmt::Display for EntryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntryPoint::Any => f.write_str("*"),
            EntryPoint::Component(c) => f.write_str(c),
        }
    }
}

/// Declarative description of one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorModel {
    pub name: String,
    pub kind: GeneratorKind,
    pub platform: Option<String>,
    pub language: Option<String>,
    pub rts: Option<String>,
    pub entry_point: Option<EntryPoint>,
    /// Check rule ids or names that must pass before this generator runs.
    pub required_checks: Vec<String>,
    /// Built-in emitter; derived from kind and target when omitted.
    pub emitter: Option<String>,
    pub file: String,
    pub loc: Loc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// JSON manifest for the bundled simulator.
    Interp,
    /// Plain-text source artifacts.
    Textgen,
}

impl Backend {
    pub fn prefix(self) -> &'static str {
        match self {
            Backend::Interp => "interp",
            Backend::Textgen => "textgen",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmitterInfo {
    pub name: &'static str,
    pub kind: GeneratorKind,
    pub backend: Backend,
    /// Behavior language handled, for behavior emitters.
    pub language: Option<&'static str>,
}

const fn em(
    name: &'static str,
    kind: GeneratorKind,
    backend: Backend,
    language: Option<&'static str>,
) -> EmitterInfo {
    EmitterInfo {
        name,
        kind,
        backend,
        language,
    }
}

/// The built-in emitters generator models can refer to.
pub const EMITTERS: &[EmitterInfo] = &[
    em("interp_component", GeneratorKind::Component, Backend::Interp, None),
    em("interp_automaton", GeneratorKind::Behavior, Backend::Interp, Some("automaton")),
    em("interp_activity", GeneratorKind::Behavior, Backend::Interp, Some("activity")),
    em("interp_type", GeneratorKind::Type, Backend::Interp, None),
    em("textgen_component", GeneratorKind::Component, Backend::Textgen, None),
    em("textgen_automaton", GeneratorKind::Behavior, Backend::Textgen, Some("automaton")),
    em("textgen_activity", GeneratorKind::Behavior, Backend::Textgen, Some("activity")),
    em("textgen_type", GeneratorKind::Type, Backend::Textgen, None),
];

pub fn emitter(name: &str) -> Option<&'static EmitterInfo> {
    EMITTERS.iter().find(|e| e.name == name)
}

impl GeneratorModel {
    /// The declared emitter, or `<target>_<kind-or-language>` where the
    /// target is the platform (or, for behavior generators, the RTS id up
    /// to `-rts`).
    pub fn emitter_name(&self) -> Option<String> {
        if let Some(e) = &self.emitter {
            return Some(e.clone());
        }
        let target = match self.kind {
            GeneratorKind::Behavior => {
                let rts = self.rts.as_deref()?;
                rts.split_once("-rts").map_or(rts, |(t, _)| t).to_string()
            }
            _ => self.platform.clone()?,
        };
        let suffix = match self.kind {
            GeneratorKind::Component => "component",
            GeneratorKind::Type => "type",
            GeneratorKind::Behavior => self.language.as_deref()?,
        };
        Some(format!("{target}_{suffix}"))
    }

    pub fn emitter_info(&self) -> Option<&'static EmitterInfo> {
        emitter(&self.emitter_name()?)
    }
}
