use std::fmt;

use crate::diag::Loc;

/// The three builtin primitive types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Primitive {
    Int,
    Bool,
    String,
}

impl Primitive {
    pub fn from_name(name: &str) -> Option<Primitive> {
        match name {
            "Int" => Some(Primitive::Int),
            "Bool" => Some(Primitive::Bool),
            "String" => Some(Primitive::String),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Primitive::Int => "Int",
            Primitive::Bool => "Bool",
            Primitive::String => "String",
        }
    }
}

/// A type as written in source: a name plus optional type arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRef {
    pub name: String,
    pub args: Vec<TypeRef>,
    pub loc: Loc,
}

impl TypeRef {
    pub fn simple(name: &str) -> Self {
        TypeRef {
            name: name.to_string(),
            args: Vec::new(),
            loc: Loc::default(),
        }
    }

    pub fn with_args(name: &str, args: Vec<TypeRef>) -> Self {
        TypeRef {
            name: name.to_string(),
            args,
            loc: Loc::default(),
        }
    }

    /// Replaces type-parameter names according to `subst`.
    pub fn substitute(&self, subst: &[(String, TypeRef)]) -> TypeRef {
        if self.args.is_empty() {
            if let Some((_, to)) = subst.iter().find(|(p, _)| *p == self.name) {
                return to.clone();
            }
        }
        TypeRef {
            name: self.name.clone(),
            args: self.args.iter().map(|a| a.substitute(subst)).collect(),
            loc: self.loc,
        }
    }
}

impl fmt::Display for TypeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("<")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(">")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumDecl {
    pub name: String,
    pub literals: Vec<String>,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDecl {
    pub name: String,
    pub ty: TypeRef,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordDecl {
    pub name: String,
    pub fields: Vec<FieldDecl>,
    pub loc: Loc,
}

/// A `.types` file: a named collection of enums and records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataModel {
    pub name: String,
    pub enums: Vec<EnumDecl>,
    pub records: Vec<RecordDecl>,
    pub file: String,
    pub loc: Loc,
}

impl DataModel {
    pub fn find_enum(&self, name: &str) -> Option<&EnumDecl> {
        self.enums.iter().find(|e| e.name == name)
    }

    pub fn find_record(&self, name: &str) -> Option<&RecordDecl> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// A fully resolved data type. `Param` only occurs inside generic
/// component types before their parameters are substituted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DataType {
    Int,
    Bool,
    String,
    Enum(String),
    Record(String),
    Param(String),
}

impl DataType {
    pub fn name(&self) -> &str {
        match self {
            DataType::Int => "Int",
            DataType::Bool => "Bool",
            DataType::String => "String",
            DataType::Enum(n) | DataType::Record(n) | DataType::Param(n) => n,
        }
    }
}

impl From<Primitive> for DataType {
    fn from(p: Primitive) -> Self {
        match p {
            Primitive::Int => DataType::Int,
            Primitive::Bool => DataType::Bool,
            Primitive::String => DataType::String,
        }
    }
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A source literal. Bare enum literals (`FORWARD`) carry no type until
/// they are resolved against an expected type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Int(i64),
    Bool(bool),
    Str(String),
    Enum { ty: Option<String>, literal: String },
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(i) => write!(f, "{i}"),
            Literal::Bool(b) => write!(f, "{b}"),
            Literal::Str(s) => write!(f, "\"{s}\""),
            Literal::Enum { ty: Some(t), literal } => write!(f, "{t}.{literal}"),
            Literal::Enum { ty: None, literal } => f.write_str(literal),
        }
    }
}

/// A runtime value carried on a port or held in a variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Str(String),
    Enum { ty: String, literal: String },
    Record { ty: String, fields: Vec<(String, Value)> },
}

impl Value {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn enum_lit(ty: &str, literal: &str) -> Value {
        Value::Enum {
            ty: ty.to_string(),
            literal: literal.to_string(),
        }
    }

    /// Converts a literal whose enum type (if any) is already known.
    pub fn from_literal(lit: &Literal) -> Option<Value> {
        Some(match lit {
            Literal::Int(i) => Value::Int(*i),
            Literal::Bool(b) => Value::Bool(*b),
            Literal::Str(s) => Value::Str(s.clone()),
            Literal::Enum {
                ty: Some(ty),
                literal,
            } => Value::enum_lit(ty, literal),
            Literal::Enum { ty: None, .. } => return None,
        })
    }

    pub fn to_literal(&self) -> Option<Literal> {
        Some(match self {
            Value::Int(i) => Literal::Int(*i),
            Value::Bool(b) => Literal::Bool(*b),
            Value::Str(s) => Literal::Str(s.clone()),
            Value::Enum { ty, literal } => Literal::Enum {
                ty: Some(ty.clone()),
                literal: literal.clone(),
            },
            Value::Record { .. } => return None,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            Value::Int(i) => json!(i),
            Value::Bool(b) => json!(b),
            Value::Str(s) => json!(s),
            Value::Enum { ty, literal } => json!({ "enum": ty, "literal": literal }),
            Value::Record { ty, fields } => json!({
                "record": ty,
                "fields": fields.iter().map(|(n, v)| json!([n, v.to_json()])).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Value, String> {
        use serde_json::Value as J;
        match v {
            J::Number(n) => n
                .as_i64()
                .map(Value::Int)
                .ok_or_else(|| format!("integer out of range: {n}")),
            J::Bool(b) => Ok(Value::Bool(*b)),
            J::String(s) => Ok(Value::Str(s.clone())),
            J::Object(map) => {
                if let (Some(J::String(ty)), Some(J::String(lit))) =
                    (map.get("enum"), map.get("literal"))
                {
                    return Ok(Value::enum_lit(ty, lit));
                }
                if let (Some(J::String(ty)), Some(J::Array(fields))) =
                    (map.get("record"), map.get("fields"))
                {
                    let mut out = Vec::with_capacity(fields.len());
                    for f in fields {
                        match f.as_array().map(|a| a.as_slice()) {
                            Some([J::String(name), value]) => {
                                out.push((name.clone(), Value::from_json(value)?))
                            }
                            _ => return Err(format!("malformed record field: {f}")),
                        }
                    }
                    return Ok(Value::Record {
                        ty: ty.clone(),
                        fields: out,
                    });
                }
                Err(format!("malformed value object: {v}"))
            }
            _ => Err(format!("malformed value: {v}")),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Str(s) => write!(f, "\"{s}\""),
            Value::Enum { literal, .. } => f.write_str(literal),
            Value::Record { ty, fields } => {
                write!(f, "{ty}{{")?;
                for (i, (n, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{n}={v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl serde::Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Value {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        Value::from_json(&raw).map_err(serde::de::Error::custom)
    }
}
