#![allow(dead_code)]

pub mod gen;

use std::path::PathBuf;
use std::sync::Arc;

use arcc_core::diag::Diagnostic;
use arcc_core::frontend::{load_project, load_sources, BehaviorRegistry, LoadOptions, Project, SourceFile};
use arcc_core::model::{Architecture, ProfileId};

pub const ROOT: &str = "ExplorerBot";

pub fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/explorerbot")
}

fn files_in(dir: &str, ext: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(corpus().join(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    out.sort();
    out
}

/// The corpus `.arc` and `.types` files.
pub fn model_files() -> Vec<PathBuf> {
    let mut v = files_in("arc", "arc");
    v.extend(files_in("types", "types"));
    v
}

pub fn generator_files() -> Vec<PathBuf> {
    files_in("gens", "gen")
}

pub fn load_corpus_with(profile: ProfileId, registry: &BehaviorRegistry) -> Result<Project, Vec<Diagnostic>> {
    let mut opts = LoadOptions::new(ROOT);
    opts.profile = profile;
    load_project(&model_files(), &opts, registry)
}

pub fn corpus_arch() -> Arc<Architecture> {
    load_corpus_with(ProfileId::Scheduled, &BehaviorRegistry::with_builtins())
        .expect("corpus loads")
        .architecture
}

/// Corpus sources held in memory, keyed by their displayed path.
pub fn corpus_sources() -> Vec<SourceFile> {
    model_files()
        .into_iter()
        .map(|p| SourceFile::new(p.display().to_string(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

/// Loads corpus sources after replacing the file whose name ends in `suffix`.
pub fn corpus_with_replaced(suffix: &str, text: &str) -> Result<Project, Vec<Diagnostic>> {
    let mut srcs = corpus_sources();
    let f = srcs
        .iter_mut()
        .find(|s| s.path.ends_with(suffix))
        .expect("corpus file exists");
    f.text = text.to_string();
    load_sources(&srcs, ROOT, ProfileId::Scheduled, &BehaviorRegistry::with_builtins())
}

pub fn load_inline(files: &[(&str, &str)], root: &str) -> Result<Project, Vec<Diagnostic>> {
    load_inline_with(files, root, ProfileId::Scheduled)
}

pub fn load_inline_with(files: &[(&str, &str)], root: &str, profile: ProfileId) -> Result<Project, Vec<Diagnostic>> {
    let srcs: Vec<SourceFile> = files.iter().map(|(p, t)| SourceFile::new(*p, *t)).collect();
    load_sources(&srcs, root, profile, &BehaviorRegistry::with_builtins())
}

pub fn codes(diags: &[Diagnostic]) -> Vec<String> {
    diags.iter().map(|d| d.code.clone()).collect()
}

pub fn has_code(diags: &[Diagnostic], code: &str) -> bool {
    diags.iter().any(|d| d.code == code)
}

/// Shared data model for inline fixtures.
pub const TYPES: (&str, &str) = (
    "T.types",
    "types T {\n  enum Cmd { GO, STOP; }\n  record Pair { Int a; Int b; }\n}\n",
);
