use std::collections::BTreeSet;
use std::path::Path;

use super::model::{GeneratorKind, GeneratorModel};
use crate::checks::RulePool;
use crate::diag::{codes, sort_diagnostics, Diagnostic, Loc};
use crate::frontend::parse_generator_model;

/// Validated generator models, ordered by name.
#[derive(Debug, Clone, Default)]
pub struct GeneratorRegistry {
    generators: Vec<GeneratorModel>,
}

impl GeneratorRegistry {
    /// Validates `models`: unique names, resolvable emitters matching the
    /// generator kind and language, and known required checks.
    pub fn from_models(
        models: Vec<GeneratorModel>,
        pool: &RulePool,
    ) -> Result<GeneratorRegistry, Vec<Diagnostic>> {
        let mut diags = Vec::new();
        let mut names = BTreeSet::new();
        let mut generators = Vec::new();
        for g in models {
            if !names.insert(g.name.clone()) {
                diags.push(Diagnostic::error(
                    codes::DUPLICATE_GENERATOR,
                    &g.file,
                    g.loc,
                    format!("duplicate generator `{}`", g.name),
                ));
                continue;
            }
            diags.extend(validate(&g, pool));
            generators.push(g);
        }
        if diags.is_empty() {
            generators.sort_by(|a, b| a.name.cmp(&b.name));
            Ok(GeneratorRegistry { generators })
        } else {
            sort_diagnostics(&mut diags);
            Err(diags)
        }
    }

    pub fn get(&self, name: &str) -> Option<&GeneratorModel> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn generators(&self) -> &[GeneratorModel] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// A copy without the named generator.
    pub fn without(&self, name: &str) -> GeneratorRegistry {
        GeneratorRegistry {
            generators: self
                .generators
                .iter()
                .filter(|g| g.name != name)
                .cloned()
                .collect(),
        }
    }

    /// A copy with `g` added, subject to the same validation as loading.
    pub fn with(&self, g: GeneratorModel, pool: &RulePool) -> Result<GeneratorRegistry, Vec<Diagnostic>> {
        let mut models = self.generators.clone();
        models.push(g);
        GeneratorRegistry::from_models(models, pool)
    }
}

fn validate(g: &GeneratorModel, pool: &RulePool) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let emitter_err = |msg: String| Diagnostic::error(codes::UNKNOWN_EMITTER, &g.file, g.loc, msg);
    match (g.emitter_name(), g.emitter_info()) {
        (None, _) => out.push(emitter_err(format!(
            "cannot derive an emitter for generator `{}`; declare one with `emitter`",
            g.name
        ))),
        (Some(name), None) => out.push(emitter_err(format!("unknown emitter `{name}`"))),
        (Some(name), Some(info)) => {
            if info.kind != g.kind {
                out.push(emitter_err(format!(
                    "emitter `{name}` generates kind {}, not {}",
                    info.kind, g.kind
                )));
            } else if g.kind == GeneratorKind::Behavior && info.language != g.language.as_deref() {
                out.push(emitter_err(format!(
                    "emitter `{name}` does not handle language `{}`",
                    g.language.as_deref().unwrap_or("")
                )));
            }
        }
    }
    for c in &g.required_checks {
        if pool.get(c).is_none() {
            out.push(Diagnostic::error(
                codes::UNKNOWN_RULE,
                &g.file,
                g.loc,
                format!("unknown check rule `{c}`"),
            ));
        }
    }
    out
}

/// Parses every `.gen` file directly inside `dir`.
pub fn load_generator_registry(
    dir: &Path,
    pool: &RulePool,
) -> Result<GeneratorRegistry, Vec<Diagnostic>> {
    let io_err = |msg: String| {
        vec![Diagnostic::error(
            codes::IO,
            &dir.display().to_string(),
            Loc::new(1, 1),
            msg,
        )]
    };
    let entries = std::fs::read_dir(dir).map_err(|e| io_err(format!("cannot read directory: {e}")))?;
    let mut paths: Vec<_> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "gen"))
        .collect();
    paths.sort();
    let mut diags = Vec::new();
    let mut models = Vec::new();
    for p in paths {
        let shown = p.display().to_string();
        match std::fs::read_to_string(&p) {
            Ok(text) => match parse_generator_model(&text, &shown) {
                Ok(g) => models.push(g),
                Err(d) => diags.extend(d),
            },
            Err(e) => diags.extend(io_err(format!("cannot read {shown}: {e}"))),
        }
    }
    if !diags.is_empty() {
        sort_diagnostics(&mut diags);
        return Err(diags);
    }
    GeneratorRegistry::from_models(models, pool)
}
