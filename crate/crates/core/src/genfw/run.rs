use std::path::{Path, PathBuf};

use thiserror::Error;

use super::interp::emit_interp_manifest;
use super::model::Backend;
use super::plan::GenerationPlan;
use super::textgen::emit_text_sources;
use crate::binding::BoundArchitecture;
use crate::checks::{profile_rule_ids, run_checks, CheckContext, CheckReport, RulePool};
use crate::frontend::BehaviorRegistry;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    /// Relative to the output directory, `/`-separated.
    pub path: String,
    pub content: Vec<u8>,
}

impl Artifact {
    pub fn new(path: &str, content: impl Into<Vec<u8>>) -> Self {
        Artifact {
            path: path.to_string(),
            content: content.into(),
        }
    }

    pub fn text(&self) -> String {
        String::from_utf8_lossy(&self.content).into_owned()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArtifactSet {
    /// Sorted by path.
    pub files: Vec<Artifact>,
    pub manifest_path: Option<String>,
}

impl ArtifactSet {
    pub fn new(mut files: Vec<Artifact>, manifest_path: Option<String>) -> Self {
        files.sort_by(|a, b| a.path.cmp(&b.path));
        ArtifactSet {
            files,
            manifest_path,
        }
    }

    pub fn get(&self, path: &str) -> Option<&Artifact> {
        self.files.iter().find(|a| a.path == path)
    }

    pub fn paths(&self) -> Vec<&str> {
        self.files.iter().map(|a| a.path.as_str()).collect()
    }
}

#[derive(Debug, Error)]
pub enum GenerationError {
    #[error("checks failed")]
    Checks(CheckReport),
    #[error("{0}")]
    Emit(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Produces the artifacts for `plan` in memory. The component
/// generator's emitter picks the backend.
pub fn generate_artifacts(
    plan: &GenerationPlan,
    bound: &BoundArchitecture,
) -> Result<ArtifactSet, GenerationError> {
    let info = plan.component_gen.emitter_info().ok_or_else(|| {
        GenerationError::Emit(format!(
            "generator `{}` has no known emitter",
            plan.component_gen.name
        ))
    })?;
    for g in plan.behavior_gens.values().chain(std::iter::once(&plan.type_gen)) {
        let other = g.emitter_info().map(|e| e.backend);
        if other != Some(info.backend) {
            return Err(GenerationError::Emit(format!(
                "generator `{}` does not share the {} backend of `{}`",
                g.name,
                info.backend.prefix(),
                plan.component_gen.name
            )));
        }
    }
    match info.backend {
        Backend::Interp => emit_interp_manifest(plan, bound),
        Backend::Textgen => emit_text_sources(plan, bound),
    }
}

/// Writes `set` below `out_dir` through a staging directory, so a failed
/// write leaves `out_dir` untouched.
pub fn write_artifacts(set: &ArtifactSet, out_dir: &Path) -> Result<(), GenerationError> {
    let parent = match out_dir.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&parent)?;
    let staging = tempfile::Builder::new()
        .prefix(".arcc-staging-")
        .tempdir_in(&parent)?;
    for a in &set.files {
        let p = staging.path().join(&a.path);
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(&p, &a.content)?;
    }
    if !out_dir.exists() {
        let staged = staging.keep();
        if let Err(e) = std::fs::rename(&staged, out_dir) {
            let _ = std::fs::remove_dir_all(&staged);
            return Err(e.into());
        }
        return Ok(());
    }
    for a in &set.files {
        let from = staging.path().join(&a.path);
        let to = out_dir.join(&a.path);
        if let Some(dir) = to.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::rename(&from, &to)?;
    }
    Ok(())
}

/// Runs the profile rules and every check the plan requires, then emits
/// and writes the artifacts. Nothing is written when a check fails.
pub fn run_generation(
    plan: &GenerationPlan,
    bound: &BoundArchitecture,
    registry: &BehaviorRegistry,
    out_dir: &Path,
) -> Result<ArtifactSet, GenerationError> {
    let arch = &bound.architecture;
    let pool = RulePool::new(registry);
    let mut ids = profile_rule_ids(arch.profile);
    ids.extend(plan.checks.iter().cloned());
    let ctx = CheckContext::new(arch, registry);
    let report = run_checks(&ctx, &ids, &pool).map_err(|e| GenerationError::Emit(e.to_string()))?;
    if !report.passed {
        return Err(GenerationError::Checks(report));
    }
    let set = generate_artifacts(plan, bound)?;
    write_artifacts(&set, out_dir)?;
    Ok(set)
}
