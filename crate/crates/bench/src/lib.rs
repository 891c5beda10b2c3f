//! Fixtures for the pipeline benchmarks, built from the ExplorerBot corpus.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use arcc_core::binding::BoundArchitecture;
use arcc_core::checks::RulePool;
use arcc_core::frontend::{load_project, BehaviorRegistry, LoadOptions};
use arcc_core::genfw::{compose_plan, load_generator_registry, run_generation, GenerationPlan};
use arcc_core::model::Architecture;
use arcc_core::pipeline::{bind_architecture, read_binding};
use arcc_core::simulator::{load_manifest, SimManifest};

pub const ROOT: &str = "ExplorerBot";

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/explorerbot")
}

/// The corpus `.arc` and `.types` files in a stable order.
pub fn model_files() -> Vec<PathBuf> {
    let mut files = Vec::new();
    for sub in ["arc", "types"] {
        for e in std::fs::read_dir(corpus_dir().join(sub)).expect("corpus directory") {
            files.push(e.expect("corpus entry").path());
        }
    }
    files.sort();
    files
}

pub fn load_corpus(registry: &BehaviorRegistry) -> Arc<Architecture> {
    load_project(&model_files(), &LoadOptions::new(ROOT), registry)
        .expect("corpus loads")
        .architecture
}

pub fn bind(arch: &Arc<Architecture>, binding: &str) -> BoundArchitecture {
    let b = read_binding(&corpus_dir().join(binding)).expect("binding parses");
    bind_architecture(arch, &b).expect("binding validates").0
}

pub fn plan(bound: &BoundArchitecture, registry: &BehaviorRegistry) -> GenerationPlan {
    let gens = load_generator_registry(&corpus_dir().join("gens"), &RulePool::new(registry))
        .expect("generator models load");
    compose_plan(&gens, &bound.platform, bound, None).expect("plan composes")
}

/// Generated interp artifacts on disk, removed on drop.
pub struct InterpOutput {
    _dir: tempfile::TempDir,
    manifest: PathBuf,
}

impl InterpOutput {
    pub fn generate() -> Self {
        let registry = BehaviorRegistry::with_builtins();
        let bound = bind(&load_corpus(&registry), "sim.bind");
        let dir = tempfile::tempdir().expect("temporary directory");
        let out = dir.path().join("out");
        run_generation(&plan(&bound, &registry), &bound, &registry, &out).expect("generation");
        InterpOutput {
            _dir: dir,
            manifest: out.join("manifest.json"),
        }
    }

    pub fn manifest_path(&self) -> &Path {
        &self.manifest
    }

    pub fn load(&self) -> SimManifest {
        load_manifest(&self.manifest).expect("manifest loads")
    }
}
