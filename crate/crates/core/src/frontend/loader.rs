//! Assembles parsed files into one resolved [`Architecture`].

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use walkdir::WalkDir;

use super::parse::{parse_architecture, parse_binding, parse_data_model, parse_generator_model};
use super::profile::LanguageProfile;
use super::registry::BehaviorRegistry;
use crate::behaviors::{resolve_names, Symbol, Symbols};
use crate::binding::BindingModel;
use crate::diag::{codes, has_errors, sort_diagnostics, Diagnostic, Loc};
use crate::genfw::GeneratorModel;
use crate::model::{
    Action, Architecture, BehaviorModel, ComponentType, DataModel, DataType, EdgeGuard, NodeKind,
    Primitive, ProfileId, TypeRef,
};

/// Pseudo file name for diagnostics that belong to no source file.
pub const PROJECT_FILE: &str = "<project>";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    /// Path as shown in diagnostics.
    pub path: String,
    pub text: String,
}

impl SourceFile {
    pub fn new(path: impl Into<String>, text: impl Into<String>) -> Self {
        SourceFile {
            path: path.into(),
            text: text.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub root: String,
    pub profile: ProfileId,
    /// Model library directories searched for `.arc` and `.types` files.
    pub libs: Vec<PathBuf>,
}

impl LoadOptions {
    pub fn new(root: &str) -> Self {
        LoadOptions {
            root: root.to_string(),
            profile: ProfileId::default(),
            libs: Vec::new(),
        }
    }
}

/// A loaded architecture plus the bindings and generator models that were
/// passed alongside it.
#[derive(Debug, Clone)]
pub struct Project {
    pub architecture: Arc<Architecture>,
    pub bindings: Vec<BindingModel>,
    pub generators: Vec<GeneratorModel>,
    pub warnings: Vec<Diagnostic>,
}

/// Reads `paths` (plus every model file below the library directories)
/// and loads them as one project.
pub fn load_project(
    paths: &[PathBuf],
    opts: &LoadOptions,
    registry: &BehaviorRegistry,
) -> Result<Project, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut files: Vec<PathBuf> = paths.to_vec();
    for lib in &opts.libs {
        if !lib.is_dir() {
            diags.push(Diagnostic::error(
                codes::IO,
                &lib.display().to_string(),
                Loc::new(1, 1),
                "library directory does not exist",
            ));
            continue;
        }
        let mut found: Vec<PathBuf> = WalkDir::new(lib)
            .into_iter()
            .filter_map(Result::ok)
            .filter(|e| e.file_type().is_file())
            .map(|e| e.into_path())
            .filter(|p| matches!(extension(p), "arc" | "types"))
            .collect();
        found.sort();
        files.extend(found);
    }
    let mut seen = BTreeSet::new();
    let mut sources = Vec::new();
    for p in files {
        let key = p.canonicalize().unwrap_or_else(|_| p.clone());
        if !seen.insert(key) {
            continue;
        }
        match std::fs::read_to_string(&p) {
            Ok(text) => sources.push(SourceFile::new(p.display().to_string(), text)),
            Err(e) => diags.push(Diagnostic::error(
                codes::IO,
                &p.display().to_string(),
                Loc::new(1, 1),
                format!("cannot read file: {e}"),
            )),
        }
    }
    if !diags.is_empty() {
        sort_diagnostics(&mut diags);
        return Err(diags);
    }
    load_sources(&sources, opts.root.as_str(), opts.profile, registry)
}

fn extension(p: &Path) -> &str {
    p.extension().and_then(|e| e.to_str()).unwrap_or("")
}

/// Loads in-memory sources. The file extension in each `path` selects the parser.
pub fn load_sources(
    sources: &[SourceFile],
    root: &str,
    profile: ProfileId,
    registry: &BehaviorRegistry,
) -> Result<Project, Vec<Diagnostic>> {
    let lang = LanguageProfile::of(profile);
    let mut diags = Vec::new();
    let mut components: BTreeMap<String, ComponentType> = BTreeMap::new();
    let mut data_models = Vec::new();
    let mut bindings = Vec::new();
    let mut generators = Vec::new();

    for src in sources {
        let path = Path::new(&src.path);
        match extension(path) {
            "arc" => match parse_architecture(&src.text, &src.path, &lang, registry) {
                Ok(c) => {
                    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
                    if stem != c.name {
                        diags.push(Diagnostic::error(
                            codes::FILE_NAME,
                            &src.path,
                            c.loc,
                            format!("component `{}` must be declared in `{}.arc`", c.name, c.name),
                        ));
                    }
                    if let Some(prev) = components.get(&c.name) {
                        diags.push(Diagnostic::error(
                            codes::DUPLICATE_COMPONENT_TYPE,
                            &src.path,
                            c.loc,
                            format!(
                                "component type `{}` is already declared in {}",
                                c.name, prev.file
                            ),
                        ));
                    } else {
                        components.insert(c.name.clone(), c);
                    }
                }
                Err(d) => diags.extend(d),
            },
            "types" => match parse_data_model(&src.text, &src.path) {
                Ok(m) => data_models.push(m),
                Err(d) => diags.extend(d),
            },
            "bind" => match parse_binding(&src.text, &src.path) {
                Ok(b) => bindings.push(b),
                Err(d) => diags.extend(d),
            },
            "gen" => match parse_generator_model(&src.text, &src.path) {
                Ok(g) => generators.push(g),
                Err(d) => diags.extend(d),
            },
            other => diags.push(Diagnostic::error(
                codes::UNKNOWN_EXTENSION,
                &src.path,
                Loc::new(1, 1),
                format!("unknown file extension `.{other}` (expected .arc, .types, .bind or .gen)"),
            )),
        }
    }

    // Cross-file checks on a partial model would only echo the parse errors.
    if has_errors(&diags) {
        sort_diagnostics(&mut diags);
        return Err(diags);
    }
    check_type_names(&components, &data_models, &mut diags);
    let mut arch = Architecture {
        root: root.to_string(),
        components,
        data_models,
        profile,
    };
    match arch.root_component() {
        None => diags.push(Diagnostic::error(
            codes::MISSING_ROOT,
            PROJECT_FILE,
            Loc::new(1, 1),
            format!("root component `{root}` is not declared"),
        )),
        Some(r) if !r.type_params.is_empty() || !r.config_params.is_empty() => {
            diags.push(Diagnostic::error(
                codes::ROOT_PARAMETERS,
                &r.file,
                r.loc,
                format!("root component `{root}` must not declare type or configuration parameters"),
            ))
        }
        Some(_) => {}
    }
    check_references(&arch, &mut diags);
    check_containment(&arch, &mut diags);
    check_records(&arch, &mut diags);

    if has_errors(&diags) {
        sort_diagnostics(&mut diags);
        return Err(diags);
    }
    resolve_behaviors(&mut arch);
    sort_diagnostics(&mut diags);
    Ok(Project {
        architecture: Arc::new(arch),
        bindings,
        generators,
        warnings: diags,
    })
}

fn check_type_names(
    components: &BTreeMap<String, ComponentType>,
    models: &[DataModel],
    diags: &mut Vec<Diagnostic>,
) {
    let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
    for m in models {
        let names = m
            .enums
            .iter()
            .map(|e| (&e.name, e.loc))
            .chain(m.records.iter().map(|r| (&r.name, r.loc)));
        for (name, loc) in names {
            let clash = seen
                .get(name.as_str())
                .map(|f| f.to_string())
                .or_else(|| components.get(name).map(|c| c.file.clone()));
            if let Some(other) = clash {
                diags.push(Diagnostic::error(
                    codes::DUPLICATE_TYPE_NAME,
                    &m.file,
                    loc,
                    format!("type name `{name}` is already declared in {other}"),
                ));
            } else {
                seen.insert(name, &m.file);
            }
        }
    }
    for c in components.values() {
        if Primitive::from_name(&c.name).is_some() {
            diags.push(Diagnostic::error(
                codes::DUPLICATE_TYPE_NAME,
                &c.file,
                c.loc,
                format!("component type `{}` shadows a builtin type", c.name),
            ));
        }
    }
}

fn unknown_names<'a>(arch: &Architecture, params: &[String], r: &'a TypeRef, out: &mut Vec<&'a TypeRef>) {
    if !params.contains(&r.name) && !arch.type_exists(&r.name) {
        out.push(r);
    }
    for a in &r.args {
        unknown_names(arch, params, a, out);
    }
}

/// Unknown type names (L003) and data/component kind confusion (L007).
/// Arity problems are left to the generic-instantiation rule.
fn check_references(arch: &Architecture, diags: &mut Vec<Diagnostic>) {
    for c in arch.components.values() {
        let mut unknown = Vec::new();
        for r in c.type_refs() {
            unknown_names(arch, &c.type_params, r, &mut unknown);
        }
        for r in unknown {
            diags.push(Diagnostic::error(
                codes::UNKNOWN_TYPE,
                &c.file,
                r.loc,
                format!("unknown type `{}`", r.name),
            ));
        }
        let is_component = |r: &TypeRef| !c.type_params.contains(&r.name) && arch.components.contains_key(&r.name);
        let data_refs = c
            .config_params
            .iter()
            .map(|p| &p.ty)
            .chain(c.ports.iter().map(|p| &p.ty))
            .chain(c.variables.iter().map(|v| &v.ty));
        for r in data_refs {
            if is_component(r) {
                diags.push(Diagnostic::error(
                    codes::NOT_A_DATA_TYPE,
                    &c.file,
                    r.loc,
                    format!("component type `{}` cannot be used as a data type", r.name),
                ));
            }
        }
        for s in &c.subcomponents {
            if arch.type_exists(&s.ty.name) && !arch.components.contains_key(&s.ty.name) {
                diags.push(Diagnostic::error(
                    codes::NOT_A_DATA_TYPE,
                    &c.file,
                    s.ty.loc,
                    format!("`{}` is not a component type", s.ty.name),
                ));
            } else if c.type_params.contains(&s.ty.name) {
                diags.push(Diagnostic::error(
                    codes::NOT_A_DATA_TYPE,
                    &c.file,
                    s.ty.loc,
                    format!("type parameter `{}` cannot be instantiated as a subcomponent", s.ty.name),
                ));
            }
        }
    }
    for m in &arch.data_models {
        for r in &m.records {
            for f in &r.fields {
                let mut unknown = Vec::new();
                unknown_names(arch, &[], &f.ty, &mut unknown);
                for u in unknown {
                    diags.push(Diagnostic::error(
                        codes::UNKNOWN_TYPE,
                        &m.file,
                        u.loc,
                        format!("unknown type `{}`", u.name),
                    ));
                }
                if arch.components.contains_key(&f.ty.name) {
                    diags.push(Diagnostic::error(
                        codes::NOT_A_DATA_TYPE,
                        &m.file,
                        f.ty.loc,
                        format!("component type `{}` cannot be used as a data type", f.ty.name),
                    ));
                }
            }
        }
    }
}

/// Rejects component types that (transitively) contain themselves.
fn check_containment(arch: &Architecture, diags: &mut Vec<Diagnostic>) {
    fn reaches(arch: &Architecture, from: &str, target: &str, seen: &mut BTreeSet<String>) -> bool {
        let Some(c) = arch.component(from) else {
            return false;
        };
        for s in &c.subcomponents {
            if s.ty.name == target {
                return true;
            }
            if seen.insert(s.ty.name.clone()) && reaches(arch, &s.ty.name, target, seen) {
                return true;
            }
        }
        false
    }
    for c in arch.components.values() {
        if reaches(arch, &c.name, &c.name, &mut BTreeSet::new()) {
            diags.push(Diagnostic::error(
                codes::RECURSIVE_CONTAINMENT,
                &c.file,
                c.loc,
                format!("component type `{}` contains itself", c.name),
            ));
        }
    }
}

/// Rejects records that contain themselves through their fields.
fn check_records(arch: &Architecture, diags: &mut Vec<Diagnostic>) {
    fn reaches(arch: &Architecture, from: &str, target: &str, seen: &mut BTreeSet<String>) -> bool {
        let Some(r) = arch.find_record(from) else {
            return false;
        };
        r.fields.iter().any(|f| {
            f.ty.name == target
                || (seen.insert(f.ty.name.clone()) && reaches(arch, &f.ty.name, target, seen))
        })
    }
    for m in &arch.data_models {
        for r in &m.records {
            if reaches(arch, &r.name, &r.name, &mut BTreeSet::new()) {
                diags.push(Diagnostic::error(
                    codes::RECURSIVE_RECORD,
                    &m.file,
                    r.loc,
                    format!("record `{}` contains itself", r.name),
                ));
            }
        }
    }
}

/// Rewrites names inside every behavior block into resolved references.
fn resolve_behaviors(arch: &mut Architecture) {
    let resolved: Vec<(String, Vec<BehaviorModel>)> = arch
        .components
        .values()
        .filter(|c| !c.behaviors.is_empty())
        .map(|c| {
            let syms = Symbols::of(arch, c);
            let models = c
                .behaviors
                .iter()
                .map(|b| resolve_model(&b.model, &syms))
                .collect();
            (c.name.clone(), models)
        })
        .collect();
    for (name, models) in resolved {
        if let Some(c) = arch.components.get_mut(&name) {
            for (b, m) in c.behaviors.iter_mut().zip(models) {
                b.model = m;
            }
        }
    }
}

fn resolve_actions(actions: &[Action], syms: &Symbols) -> Vec<Action> {
    actions
        .iter()
        .map(|a| {
            let expected = syms.get(&a.target).map(Symbol::ty);
            Action {
                value: resolve_names(&a.value, syms, expected),
                ..a.clone()
            }
        })
        .collect()
}

fn resolve_model(m: &BehaviorModel, syms: &Symbols) -> BehaviorModel {
    let boolean = Some(&DataType::Bool);
    match m {
        BehaviorModel::Automaton(a) => {
            let mut a = a.clone();
            for t in &mut a.transitions {
                t.guard = t.guard.as_ref().map(|g| resolve_names(g, syms, boolean));
                t.actions = resolve_actions(&t.actions, syms);
            }
            BehaviorModel::Automaton(a)
        }
        BehaviorModel::Activity(g) => {
            let mut g = g.clone();
            for n in &mut g.nodes {
                if let NodeKind::Action(actions) = &n.kind {
                    n.kind = NodeKind::Action(resolve_actions(actions, syms));
                }
                for e in &mut n.edges {
                    if let EdgeGuard::When(x) = &e.guard {
                        e.guard = EdgeGuard::When(resolve_names(x, syms, boolean));
                    }
                }
            }
            BehaviorModel::Activity(g)
        }
    }
}
