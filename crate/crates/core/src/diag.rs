use std::fmt;

/// 1-based position inside a source file.
///
/// Locations never take part in structural equality: two models that differ
/// only in where their elements were written compare equal. This is what
/// makes parse/print/parse round trips comparable with `==`.
#[derive(Debug, Clone, Copy, Default, Eq)]
pub struct Loc {
    pub line: u32,
    pub col: u32,
}

impl Loc {
    pub fn new(line: u32, col: u32) -> Self {
        Loc { line, col }
    }
}

impl PartialEq for Loc {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
            Severity::Warning => f.write_str("warning"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    pub file: String,
    pub line: u32,
    pub col: u32,
}

impl Diagnostic {
    pub fn error(code: &str, file: &str, loc: Loc, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code: code.to_string(),
            message: message.into(),
            file: file.to_string(),
            line: loc.line.max(1),
            col: loc.col.max(1),
        }
    }

    pub fn warning(code: &str, file: &str, loc: Loc, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(code, file, loc, message)
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    pub fn loc(&self) -> Loc {
        Loc::new(self.line, self.col)
    }

    /// Ordering key used wherever diagnostics are reported together.
    pub fn sort_key(&self) -> (&str, u32, u32, &str, &str) {
        (&self.file, self.line, self.col, &self.code, &self.message)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: {} [{}] {}",
            self.file, self.line, self.col, self.severity, self.code, self.message
        )
    }
}

pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// Diagnostic codes that are not owned by a check rule.
pub mod codes {
    pub const SYNTAX: &str = "P001";
    pub const UNKNOWN_BEHAVIOR_KEYWORD: &str = "P002";
    pub const PROFILE_VIOLATION: &str = "P003";
    pub const DUPLICATE_TYPE_NAME: &str = "P004";
    pub const DUPLICATE_BINDING: &str = "P005";
    pub const GENERATOR_FIELD: &str = "P006";

    pub const DUPLICATE_COMPONENT_TYPE: &str = "L001";
    pub const MISSING_ROOT: &str = "L002";
    pub const UNKNOWN_TYPE: &str = "L003";
    pub const RECURSIVE_CONTAINMENT: &str = "L004";
    pub const FILE_NAME: &str = "L005";
    pub const UNKNOWN_EXTENSION: &str = "L006";
    pub const NOT_A_DATA_TYPE: &str = "L007";
    pub const ROOT_PARAMETERS: &str = "L008";
    pub const IO: &str = "L009";
    pub const RECURSIVE_RECORD: &str = "L010";

    pub const BINDING_ROOT: &str = "B001";
    pub const BINDING_UNBOUND: &str = "B002";
    pub const BINDING_UNKNOWN: &str = "B003";
    pub const BINDING_OVERBOUND: &str = "B004";
    pub const BINDING_UNREACHABLE: &str = "B005";
    pub const BINDING_LOCATOR: &str = "B006";

    pub const DUPLICATE_GENERATOR: &str = "R001";
    pub const UNKNOWN_EMITTER: &str = "R002";
    pub const UNKNOWN_RULE: &str = "R003";

    pub const PLAN: &str = "M001";
    pub const EMIT: &str = "E001";
}
