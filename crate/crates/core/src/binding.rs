//! Platform bindings: which implementation stands in for each atomic
//! component type that has no behavior model.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::diag::{codes, Diagnostic, Loc};
use crate::model::Architecture;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ImplKind {
    /// Trace-driven stand-in replayed by the simulator.
    Stub,
    /// Opaque implementation locator for text backends.
    Extern,
}

impl fmt::Display for ImplKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImplKind::Stub => "stub",
            ImplKind::Extern => "extern",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplRef {
    pub kind: ImplKind,
    pub locator: String,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingModel {
    pub name: String,
    pub root: String,
    pub platform: String,
    pub entries: BTreeMap<String, ImplRef>,
    pub file: String,
    pub loc: Loc,
}

impl BindingModel {
    /// Directory that stub locators are relative to.
    pub fn base_dir(&self) -> PathBuf {
        Path::new(&self.file)
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_default()
    }
}

/// An architecture committed to one platform. The architecture value is
/// shared, never copied or modified, so one architecture can be bound to
/// several platforms.
#[derive(Debug, Clone)]
pub struct BoundArchitecture {
    pub architecture: Arc<Architecture>,
    pub platform: String,
    pub resolved_impls: BTreeMap<String, ImplRef>,
    /// Directory that stub locators are relative to.
    pub base_dir: PathBuf,
}

impl BoundArchitecture {
    pub fn stub_path(&self, component_type: &str) -> Option<PathBuf> {
        let r = self.resolved_impls.get(component_type)?;
        (r.kind == ImplKind::Stub).then(|| self.base_dir.join(&r.locator))
    }
}

pub fn validate_binding(arch: &Architecture, b: &BindingModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if b.root != arch.root {
        out.push(Diagnostic::error(
            codes::BINDING_ROOT,
            &b.file,
            b.loc,
            format!(
                "binding `{}` is for `{}` but the root architecture is `{}`",
                b.name, b.root, arch.root
            ),
        ));
    }
    let reachable = arch.reachable_components();
    let mut unbound: Vec<&str> = reachable
        .iter()
        .filter(|c| c.is_atomic() && c.behavior().is_none() && !b.entries.contains_key(&c.name))
        .map(|c| c.name.as_str())
        .collect();
    unbound.sort();
    if !unbound.is_empty() {
        out.push(Diagnostic::error(
            codes::BINDING_UNBOUND,
            &b.file,
            b.loc,
            format!(
                "unbound atomic component types without behavior: {}",
                unbound.join(", ")
            ),
        ));
    }
    for (ty, r) in &b.entries {
        match arch.component(ty) {
            None => out.push(Diagnostic::error(
                codes::BINDING_UNKNOWN,
                &b.file,
                r.loc,
                format!("unknown component type `{ty}`"),
            )),
            Some(c) if !c.is_atomic() => out.push(Diagnostic::error(
                codes::BINDING_UNKNOWN,
                &b.file,
                r.loc,
                format!("`{ty}` is a composed component type and cannot be bound"),
            )),
            Some(c) if c.behavior().is_some() => out.push(Diagnostic::error(
                codes::BINDING_OVERBOUND,
                &b.file,
                r.loc,
                format!("`{ty}` has a behavior model and must not be bound"),
            )),
            Some(c) if !reachable.iter().any(|x| x.name == c.name) => {
                out.push(Diagnostic::warning(
                    codes::BINDING_UNREACHABLE,
                    &b.file,
                    r.loc,
                    format!("`{ty}` is not reachable from `{}`", arch.root),
                ))
            }
            Some(_) => {}
        }
        let bad_locator = match r.kind {
            ImplKind::Stub => (!r.locator.ends_with(".csv"))
                .then(|| format!("stub locator `{}` must name a .csv file", r.locator)),
            ImplKind::Extern => r
                .locator
                .is_empty()
                .then(|| "extern locator must not be empty".to_string()),
        };
        if let Some(msg) = bad_locator {
            out.push(Diagnostic::error(codes::BINDING_LOCATOR, &b.file, r.loc, msg));
        }
    }
    out
}

/// Binds `arch` to the binding's platform. Entries for types that are not
/// reachable atomic types without behavior are dropped.
pub fn apply_binding(arch: &Arc<Architecture>, b: &BindingModel) -> BoundArchitecture {
    let resolved_impls = arch
        .reachable_components()
        .into_iter()
        .filter(|c| c.is_atomic() && c.behavior().is_none())
        .filter_map(|c| Some((c.name.clone(), b.entries.get(&c.name)?.clone())))
        .collect();
    BoundArchitecture {
        architecture: Arc::clone(arch),
        platform: b.platform.clone(),
        resolved_impls,
        base_dir: b.base_dir(),
    }
}
