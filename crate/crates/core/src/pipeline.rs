//! Glue between the stages, shared by the command-line driver and tests.

use std::path::Path;
use std::sync::Arc;

use crate::binding::{apply_binding, validate_binding, BindingModel, BoundArchitecture};
use crate::diag::{codes, has_errors, sort_diagnostics, Diagnostic, Loc};
use crate::frontend::{parse_binding, PROJECT_FILE};
use crate::genfw::{GenerationError, PlanError};
use crate::model::Architecture;

fn project_error(code: &str, msg: String) -> Diagnostic {
    Diagnostic::error(code, PROJECT_FILE, Loc::new(1, 1), msg)
}

/// Reads and parses one binding file.
pub fn read_binding(path: &Path) -> Result<BindingModel, Vec<Diagnostic>> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| {
        vec![Diagnostic::error(
            codes::IO,
            &shown,
            Loc::new(1, 1),
            format!("cannot read file: {e}"),
        )]
    })?;
    parse_binding(&text, &shown)
}

/// Validates and applies `binding`. Warnings are returned with the bound
/// architecture; any error rejects the binding.
pub fn bind_architecture(
    arch: &Arc<Architecture>,
    binding: &BindingModel,
) -> Result<(BoundArchitecture, Vec<Diagnostic>), Vec<Diagnostic>> {
    let mut diags = validate_binding(arch, binding);
    sort_diagnostics(&mut diags);
    if has_errors(&diags) {
        return Err(diags);
    }
    Ok((apply_binding(arch, binding), diags))
}

pub fn plan_diagnostics(errors: &[PlanError]) -> Vec<Diagnostic> {
    errors
        .iter()
        .map(|e| project_error(codes::PLAN, e.to_string()))
        .collect()
}

pub fn generation_diagnostics(err: &GenerationError) -> Vec<Diagnostic> {
    match err {
        GenerationError::Checks(report) => report.diagnostics(),
        other => vec![project_error(codes::EMIT, other.to_string())],
    }
}
