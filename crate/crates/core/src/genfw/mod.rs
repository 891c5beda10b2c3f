//! Generator models, their registry, plan composition and the built-in emitters.

mod interp;
mod model;
mod plan;
mod registry;
mod run;
mod textgen;

pub use interp::{emit_interp_manifest, MANIFEST_FILE};
pub use model::{emitter, Backend, EmitterInfo, EntryPoint, GeneratorKind, GeneratorModel, EMITTERS};
pub use plan::{compose_plan, GenerationPlan, PlanError};
pub use registry::{load_generator_registry, GeneratorRegistry};
pub use run::{
    generate_artifacts, run_generation, write_artifacts, Artifact, ArtifactSet, GenerationError,
};
pub use textgen::emit_text_sources;
