//! Toolchain for a component & connector architecture description language
//! with embedded behavior languages: parsing and loading, well-formedness
//! checks, platform binding, generator composition and a tick-based
//! simulator for the generated manifests.

pub mod behaviors;
pub mod binding;
pub mod checks;
pub mod diag;
pub mod frontend;
pub mod genfw;
pub mod model;
pub mod pipeline;
pub mod simulator;

pub use binding::{apply_binding, validate_binding, BindingModel, BoundArchitecture, ImplKind, ImplRef};
pub use checks::{check_architecture, run_checks, CheckContext, CheckReport, CheckRule, RulePool};
pub use diag::{Diagnostic, Loc, Severity};
pub use frontend::{load_project, load_sources, BehaviorRegistry, LanguageProfile, LoadOptions, Project};
pub use genfw::{compose_plan, run_generation, GenerationPlan, GeneratorRegistry};
pub use model::{Architecture, ProfileId};
pub use simulator::{load_manifest, simulate, SimManifest, Trace};
