use std::fmt;

use super::behavior::BehaviorAttachment;
use super::types::{Literal, TypeRef};
use crate::diag::Loc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

impl Direction {
    pub fn keyword(self) -> &'static str {
        match self {
            Direction::In => "in",
            Direction::Out => "out",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortDecl {
    pub name: String,
    pub direction: Direction,
    pub ty: TypeRef,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigParam {
    pub ty: TypeRef,
    pub name: String,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub ty: TypeRef,
    pub initial: Option<Literal>,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcomponentInstance {
    pub name: String,
    pub ty: TypeRef,
    pub args: Vec<Literal>,
    pub loc: Loc,
}

/// `instance.port`, or just `port` for the enclosing component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub instance: Option<String>,
    pub port: String,
}

impl PortRef {
    pub fn own(port: &str) -> Self {
        PortRef {
            instance: None,
            port: port.to_string(),
        }
    }

    pub fn of(instance: &str, port: &str) -> Self {
        PortRef {
            instance: Some(instance.to_string()),
            port: port.to_string(),
        }
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.instance {
            Some(i) => write!(f, "{i}.{}", self.port),
            None => f.write_str(&self.port),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connector {
    pub source: PortRef,
    pub targets: Vec<PortRef>,
    pub delayed: bool,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub order: Vec<String>,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentType {
    pub name: String,
    pub type_params: Vec<String>,
    pub config_params: Vec<ConfigParam>,
    pub ports: Vec<PortDecl>,
    pub variables: Vec<VarDecl>,
    pub subcomponents: Vec<SubcomponentInstance>,
    pub connectors: Vec<Connector>,
    /// Every behavior block in source order; well-formed components have at most one.
    pub behaviors: Vec<BehaviorAttachment>,
    pub schedule: Option<Schedule>,
    pub file: String,
    pub loc: Loc,
}

impl ComponentType {
    pub fn new(name: &str) -> Self {
        ComponentType {
            name: name.to_string(),
            type_params: Vec::new(),
            config_params: Vec::new(),
            ports: Vec::new(),
            variables: Vec::new(),
            subcomponents: Vec::new(),
            connectors: Vec::new(),
            behaviors: Vec::new(),
            schedule: None,
            file: format!("{name}.arc"),
            loc: Loc::new(1, 1),
        }
    }

    pub fn is_atomic(&self) -> bool {
        self.subcomponents.is_empty()
    }

    pub fn behavior(&self) -> Option<&BehaviorAttachment> {
        self.behaviors.first()
    }

    pub fn port(&self, name: &str) -> Option<&PortDecl> {
        self.ports.iter().find(|p| p.name == name)
    }

    pub fn variable(&self, name: &str) -> Option<&VarDecl> {
        self.variables.iter().find(|v| v.name == name)
    }

    pub fn config_param(&self, name: &str) -> Option<&ConfigParam> {
        self.config_params.iter().find(|p| p.name == name)
    }

    pub fn subcomponent(&self, name: &str) -> Option<&SubcomponentInstance> {
        self.subcomponents.iter().find(|s| s.name == name)
    }

    pub fn ports_in(&self, dir: Direction) -> impl Iterator<Item = &PortDecl> {
        self.ports.iter().filter(move |p| p.direction == dir)
    }

    /// Every TypeRef written in this component.
    pub fn type_refs(&self) -> Vec<&TypeRef> {
        let mut out: Vec<&TypeRef> = Vec::new();
        out.extend(self.config_params.iter().map(|p| &p.ty));
        out.extend(self.ports.iter().map(|p| &p.ty));
        out.extend(self.variables.iter().map(|v| &v.ty));
        out.extend(self.subcomponents.iter().map(|s| &s.ty));
        out
    }
}
