use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::arch::{Architecture, GenericScope, ResolveError};
use super::behavior::BehaviorAttachment;
use super::component::{ComponentType, Direction, PortRef};
use super::types::{DataType, Literal, TypeRef, Value};

/// A port of a concrete instance; `path` is empty for the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortAddr {
    pub path: String,
    pub port: String,
}

impl PortAddr {
    pub fn new(path: &str, port: &str) -> Self {
        PortAddr {
            path: path.to_string(),
            port: port.to_string(),
        }
    }

    /// Parses `a/b.port` or a bare boundary `port`.
    pub fn parse(s: &str) -> Option<PortAddr> {
        match s.rsplit_once('.') {
            Some((path, port)) if !path.is_empty() && !port.is_empty() => {
                Some(PortAddr::new(path, port))
            }
            Some(_) => None,
            None if !s.is_empty() => Some(PortAddr::new("", s)),
            None => None,
        }
    }
}

impl fmt::Display for PortAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.port)
        } else {
            write!(f, "{}.{}", self.path, self.port)
        }
    }
}

pub fn join_path(parent: &str, child: &str) -> String {
    if parent.is_empty() {
        child.to_string()
    } else {
        format!("{parent}/{child}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedPort {
    pub name: String,
    pub direction: Direction,
    pub ty: DataType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicInstance {
    pub path: String,
    pub component_type: String,
    pub ports: Vec<ResolvedPort>,
    pub params: Vec<(String, Value)>,
    pub var_init: Vec<(String, DataType, Value)>,
    pub behavior: Option<BehaviorAttachment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeInstance {
    pub path: String,
    pub component_type: String,
    /// Direct subcomponent instance names in declaration order.
    pub children: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub from: PortAddr,
    pub to: PortAddr,
    pub delayed: bool,
}

/// The flattened architecture: atomic instances wired directly to each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceNetwork {
    pub root_type: String,
    pub boundary_ports: Vec<ResolvedPort>,
    pub instances: Vec<AtomicInstance>,
    pub composites: Vec<CompositeInstance>,
    pub links: Vec<Link>,
}

impl InstanceNetwork {
    pub fn instance(&self, path: &str) -> Option<&AtomicInstance> {
        self.instances.iter().find(|i| i.path == path)
    }
}

/// Raised only when flattening an architecture that did not pass the checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlattenError {
    #[error("root component `{0}` is not defined")]
    MissingRoot(String),
    #[error("component type `{0}` is not defined")]
    UnknownComponent(String),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("instance `{path}`: {message}")]
    Literal { path: String, message: String },
    #[error("instance `{path}`: variable `{var}` of type `{ty}` has no initial value")]
    NoInitialValue {
        path: String,
        var: String,
        ty: DataType,
    },
    #[error("instance `{path}` expects {expected} configuration argument(s), got {got}")]
    ArgumentCount {
        path: String,
        expected: usize,
        got: usize,
    },
    #[error("dangling port reference `{0}`")]
    DanglingPort(String),
    #[error("containment cycle through `{0}`")]
    Recursive(String),
}

struct Walker<'a> {
    arch: &'a Architecture,
    net: InstanceNetwork,
    /// Connector edges between concrete ports.
    edges: BTreeMap<PortAddr, Vec<(PortAddr, bool)>>,
    /// Ports that terminate a link: atomic ports and root boundary ports.
    terminals: BTreeSet<PortAddr>,
    stack: Vec<String>,
}

/// Flattens the hierarchy below the root into atomic instances and
/// contracted links.
pub fn flatten_architecture(arch: &Architecture) -> Result<InstanceNetwork, FlattenError> {
    let root = arch
        .root_component()
        .ok_or_else(|| FlattenError::MissingRoot(arch.root.clone()))?;
    let mut w = Walker {
        arch,
        net: InstanceNetwork {
            root_type: root.name.clone(),
            boundary_ports: Vec::new(),
            instances: Vec::new(),
            composites: Vec::new(),
            links: Vec::new(),
        },
        edges: BTreeMap::new(),
        terminals: BTreeSet::new(),
        stack: Vec::new(),
    };
    w.net.boundary_ports = resolve_ports(arch, root, &[])?;
    for p in &w.net.boundary_ports {
        w.terminals.insert(PortAddr::new("", &p.name));
    }
    w.walk("", root, &[], &[])?;
    w.contract();
    Ok(w.net)
}

fn resolve_ports(
    arch: &Architecture,
    comp: &ComponentType,
    subst: &[(String, TypeRef)],
) -> Result<Vec<ResolvedPort>, FlattenError> {
    let scope = GenericScope {
        params: &comp.type_params,
        bindings: subst,
    };
    comp.ports
        .iter()
        .map(|p| {
            Ok(ResolvedPort {
                name: p.name.clone(),
                direction: p.direction,
                ty: arch.data_type(&p.ty, scope)?,
            })
        })
        .collect()
}

impl<'a> Walker<'a> {
    fn walk(
        &mut self,
        path: &str,
        comp: &'a ComponentType,
        subst: &[(String, TypeRef)],
        args: &[Literal],
    ) -> Result<(), FlattenError> {
        if self.stack.contains(&comp.name) {
            return Err(FlattenError::Recursive(comp.name.clone()));
        }
        self.stack.push(comp.name.clone());
        let scope = GenericScope {
            params: &comp.type_params,
            bindings: subst,
        };
        if comp.is_atomic() {
            let ports = resolve_ports(self.arch, comp, subst)?;
            for p in &ports {
                self.terminals.insert(PortAddr::new(path, &p.name));
            }
            if args.len() != comp.config_params.len() {
                return Err(FlattenError::ArgumentCount {
                    path: path.to_string(),
                    expected: comp.config_params.len(),
                    got: args.len(),
                });
            }
            let mut params = Vec::new();
            for (p, lit) in comp.config_params.iter().zip(args) {
                let ty = self.arch.data_type(&p.ty, scope)?;
                let v = self
                    .arch
                    .literal_value(lit, &ty)
                    .map_err(|message| FlattenError::Literal {
                        path: path.to_string(),
                        message,
                    })?;
                params.push((p.name.clone(), v));
            }
            let mut var_init = Vec::new();
            for v in &comp.variables {
                let ty = self.arch.data_type(&v.ty, scope)?;
                let value = match &v.initial {
                    Some(lit) => self.arch.literal_value(lit, &ty).map_err(|message| {
                        FlattenError::Literal {
                            path: path.to_string(),
                            message,
                        }
                    })?,
                    None => self.arch.default_value(&ty).ok_or_else(|| {
                        FlattenError::NoInitialValue {
                            path: path.to_string(),
                            var: v.name.clone(),
                            ty: ty.clone(),
                        }
                    })?,
                };
                var_init.push((v.name.clone(), ty, value));
            }
            self.net.instances.push(AtomicInstance {
                path: path.to_string(),
                component_type: comp.name.clone(),
                ports,
                params,
                var_init,
                behavior: comp.behavior().cloned(),
            });
        } else {
            self.net.composites.push(CompositeInstance {
                path: path.to_string(),
                component_type: comp.name.clone(),
                children: comp.subcomponents.iter().map(|s| s.name.clone()).collect(),
            });
            for c in &comp.connectors {
                let from = self.addr(path, comp, &c.source)?;
                for t in &c.targets {
                    let to = self.addr(path, comp, t)?;
                    self.edges
                        .entry(from.clone())
                        .or_default()
                        .push((to, c.delayed));
                }
            }
            for sub in &comp.subcomponents {
                let concrete = sub.ty.substitute(subst);
                let sub_ty = self
                    .arch
                    .component(&concrete.name)
                    .ok_or_else(|| FlattenError::UnknownComponent(concrete.name.clone()))?;
                let sub_subst: Vec<(String, TypeRef)> = sub_ty
                    .type_params
                    .iter()
                    .cloned()
                    .zip(concrete.args.iter().cloned())
                    .collect();
                self.walk(&join_path(path, &sub.name), sub_ty, &sub_subst, &sub.args)?;
            }
        }
        self.stack.pop();
        Ok(())
    }

    fn addr(
        &self,
        path: &str,
        comp: &ComponentType,
        r: &PortRef,
    ) -> Result<PortAddr, FlattenError> {
        match &r.instance {
            None => {
                comp.port(&r.port)
                    .ok_or_else(|| FlattenError::DanglingPort(r.to_string()))?;
                Ok(PortAddr::new(path, &r.port))
            }
            Some(i) => {
                comp.subcomponent(i)
                    .ok_or_else(|| FlattenError::DanglingPort(r.to_string()))?;
                Ok(PortAddr::new(&join_path(path, i), &r.port))
            }
        }
    }

    fn is_source(&self, a: &PortAddr) -> bool {
        let boundary_in = a.path.is_empty()
            && self
                .net
                .boundary_ports
                .iter()
                .any(|p| p.name == a.port && p.direction == Direction::In);
        // An atomic root is also an instance at the empty path.
        boundary_in
            || self.net.instances.iter().any(|i| {
                i.path == a.path
                    && i
                        .ports
                        .iter()
                        .any(|p| p.name == a.port && p.direction == Direction::Out)
            })
    }

    fn contract(&mut self) {
        let mut sources: Vec<PortAddr> = Vec::new();
        for p in &self.net.boundary_ports {
            if p.direction == Direction::In {
                sources.push(PortAddr::new("", &p.name));
            }
        }
        for i in &self.net.instances {
            for p in i.ports.iter().filter(|p| p.direction == Direction::Out) {
                sources.push(PortAddr::new(&i.path, &p.name));
            }
        }
        let mut links = Vec::new();
        for s in sources {
            debug_assert!(self.is_source(&s));
            let mut seen = BTreeSet::new();
            self.follow(&s, &s, false, &mut seen, &mut links);
        }
        self.net.links = links;
    }

    fn follow(
        &self,
        source: &PortAddr,
        at: &PortAddr,
        delayed: bool,
        seen: &mut BTreeSet<PortAddr>,
        links: &mut Vec<Link>,
    ) {
        let Some(next) = self.edges.get(at) else {
            return;
        };
        for (to, d) in next {
            let delayed = delayed || *d;
            if self.terminals.contains(to) {
                links.push(Link {
                    from: source.clone(),
                    to: to.clone(),
                    delayed,
                });
            } else if seen.insert(to.clone()) {
                self.follow(source, to, delayed, seen, links);
            }
        }
    }
}
