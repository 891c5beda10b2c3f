use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::model::{GeneratorKind, GeneratorModel};
use super::registry::GeneratorRegistry;
use crate::binding::BoundArchitecture;

/// The generators selected for one bound architecture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationPlan {
    pub component_gen: GeneratorModel,
    /// Keyed by behavior language id.
    pub behavior_gens: BTreeMap<String, GeneratorModel>,
    pub type_gen: GeneratorModel,
    /// Union of the required checks of every selected generator, sorted.
    pub checks: Vec<String>,
    pub platform: String,
    pub rts: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("bound architecture targets platform `{bound}`, not `{requested}`")]
    PlatformMismatch { requested: String, bound: String },
    #[error("no component generator for platform `{platform}` with entry point `{root}` or `*`")]
    MissingComponentGenerator { platform: String, root: String },
    #[error("ambiguous component generators for platform `{platform}`: {}; choose one with --component-generator", candidates.join(", "))]
    AmbiguousComponentGenerator {
        platform: String,
        candidates: Vec<String>,
    },
    #[error("component generator `{name}` is not a candidate for platform `{platform}` (candidates: {})", candidates.join(", "))]
    UnknownOverride {
        name: String,
        platform: String,
        candidates: Vec<String>,
    },
    #[error("no behavior generator for language `{language}` and rts `{rts}`")]
    MissingBehaviorGenerator { language: String, rts: String },
    #[error("ambiguous behavior generators for language `{language}` and rts `{rts}`: {}", candidates.join(", "))]
    AmbiguousBehaviorGenerator {
        language: String,
        rts: String,
        candidates: Vec<String>,
    },
    #[error("no type generator for platform `{platform}`")]
    MissingTypeGenerator { platform: String },
    #[error("ambiguous type generators for platform `{platform}`: {}", candidates.join(", "))]
    AmbiguousTypeGenerator {
        platform: String,
        candidates: Vec<String>,
    },
}

fn names(gs: &[&GeneratorModel]) -> Vec<String> {
    gs.iter().map(|g| g.name.clone()).collect()
}

/// Selects a component generator, one behavior generator per behavior
/// language in use, and a type generator. Every unmet criterion is
/// reported, not only the first.
pub fn compose_plan(
    registry: &GeneratorRegistry,
    platform: &str,
    bound: &BoundArchitecture,
    component_override: Option<&str>,
) -> Result<GenerationPlan, Vec<PlanError>> {
    if bound.platform != platform {
        return Err(vec![PlanError::PlatformMismatch {
            requested: platform.to_string(),
            bound: bound.platform.clone(),
        }]);
    }
    let arch = &bound.architecture;
    let mut errors = Vec::new();
    let of_kind = |k: GeneratorKind| registry.generators().iter().filter(move |g| g.kind == k);

    let candidates: Vec<&GeneratorModel> = of_kind(GeneratorKind::Component)
        .filter(|g| g.platform.as_deref() == Some(platform))
        .filter(|g| g.entry_point.as_ref().is_some_and(|e| e.accepts(&arch.root)))
        .collect();
    let component_gen = match (candidates.as_slice(), component_override) {
        ([], _) => {
            errors.push(PlanError::MissingComponentGenerator {
                platform: platform.to_string(),
                root: arch.root.clone(),
            });
            None
        }
        (_, Some(name)) => match candidates.iter().find(|g| g.name == name) {
            Some(g) => Some(*g),
            None => {
                errors.push(PlanError::UnknownOverride {
                    name: name.to_string(),
                    platform: platform.to_string(),
                    candidates: names(&candidates),
                });
                None
            }
        },
        ([one], None) => Some(*one),
        (many, None) => {
            errors.push(PlanError::AmbiguousComponentGenerator {
                platform: platform.to_string(),
                candidates: names(many),
            });
            None
        }
    };

    let rts = component_gen.and_then(|g| g.rts.clone());
    let languages: BTreeSet<&str> = arch
        .reachable_components()
        .into_iter()
        .filter(|c| c.is_atomic())
        .filter_map(|c| c.behavior())
        .map(|b| b.language.as_str())
        .collect();
    let mut behavior_gens = BTreeMap::new();
    if let Some(rts) = &rts {
        for lang in languages {
            let found: Vec<&GeneratorModel> = of_kind(GeneratorKind::Behavior)
                .filter(|g| g.language.as_deref() == Some(lang) && g.rts.as_ref() == Some(rts))
                .collect();
            match found.as_slice() {
                [] => errors.push(PlanError::MissingBehaviorGenerator {
                    language: lang.to_string(),
                    rts: rts.clone(),
                }),
                [one] => {
                    behavior_gens.insert(lang.to_string(), (*one).clone());
                }
                many => errors.push(PlanError::AmbiguousBehaviorGenerator {
                    language: lang.to_string(),
                    rts: rts.clone(),
                    candidates: names(many),
                }),
            }
        }
    }

    let types: Vec<&GeneratorModel> = of_kind(GeneratorKind::Type)
        .filter(|g| g.platform.as_deref() == Some(platform))
        .collect();
    let type_gen = match types.as_slice() {
        [] => {
            errors.push(PlanError::MissingTypeGenerator {
                platform: platform.to_string(),
            });
            None
        }
        [one] => Some(*one),
        many => {
            errors.push(PlanError::AmbiguousTypeGenerator {
                platform: platform.to_string(),
                candidates: names(many),
            });
            None
        }
    };

    match (component_gen, type_gen, rts) {
        (Some(c), Some(t), Some(rts)) if errors.is_empty() => {
            let checks: BTreeSet<String> = std::iter::once(c)
                .chain(behavior_gens.values())
                .chain(std::iter::once(t))
                .flat_map(|g| g.required_checks.iter().cloned())
                .collect();
            Ok(GenerationPlan {
                component_gen: c.clone(),
                behavior_gens,
                type_gen: t.clone(),
                checks: checks.into_iter().collect(),
                platform: platform.to_string(),
                rts,
            })
        }
        _ => Err(errors),
    }
}
