//! JSON manifest shared by the interp emitter and the simulator.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::{BehaviorAttachment, DataType, Direction, Value};

pub const INTERP_RTS: &str = "interp-rts-1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Manifest {
    pub rts: String,
    pub root: String,
    pub boundary_ports: Vec<PortEntry>,
    pub instances: Vec<InstanceEntry>,
    pub composites: Vec<CompositeEntry>,
    pub links: Vec<LinkEntry>,
    /// Composed instance path (root is `""`) to its child execution order.
    pub schedules: BTreeMap<String, Vec<String>>,
    pub data_model: DataModelEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortEntry {
    pub name: String,
    pub direction: Direction,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarEntry {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub init: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceEntry {
    pub path: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub ports: Vec<PortEntry>,
    pub params: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub behavior: Option<BehaviorAttachment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<VarEntry>>,
    /// Stub trace, relative to the manifest's directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stub: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeEntry {
    pub path: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub children: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkEntry {
    pub from: String,
    pub to: String,
    pub delayed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DataModelEntry {
    pub enums: Vec<EnumEntry>,
    pub records: Vec<RecordEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumEntry {
    pub name: String,
    pub literals: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordEntry {
    pub name: String,
    pub fields: Vec<FieldEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldEntry {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
}

impl DataModelEntry {
    /// Resolves a type name written in the manifest.
    pub fn data_type(&self, name: &str) -> Option<DataType> {
        match name {
            "Int" => Some(DataType::Int),
            "Bool" => Some(DataType::Bool),
            "String" => Some(DataType::String),
            _ if self.enums.iter().any(|e| e.name == name) => Some(DataType::Enum(name.into())),
            _ if self.records.iter().any(|r| r.name == name) => {
                Some(DataType::Record(name.into()))
            }
            _ => None,
        }
    }

    pub fn enum_literals(&self, name: &str) -> Option<&[String]> {
        self.enums
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.literals.as_slice())
    }
}

impl Manifest {
    pub fn to_json_string(&self) -> Result<String, serde_json::Error> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
