use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::component::ComponentType;
use super::types::{DataModel, DataType, EnumDecl, Literal, Primitive, RecordDecl, TypeRef, Value};
use crate::diag::Loc;

/// Language profile of the ADL. `Scheduled` extends `Base` with the
/// `schedule` element and its well-formedness rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum ProfileId {
    Base,
    #[default]
    Scheduled,
}

impl ProfileId {
    pub fn name(self) -> &'static str {
        match self {
            ProfileId::Base => "base",
            ProfileId::Scheduled => "scheduled",
        }
    }

    pub fn from_name(s: &str) -> Option<ProfileId> {
        match s {
            "base" => Some(ProfileId::Base),
            "scheduled" => Some(ProfileId::Scheduled),
            _ => None,
        }
    }
}

impl fmt::Display for ProfileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("unknown type `{name}`")]
    UnknownType { name: String, loc: Loc },
    #[error("type `{name}` expects {expected} type argument(s), got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
        loc: Loc,
    },
    #[error("component type `{name}` cannot be used as a data type")]
    NotADataType { name: String, loc: Loc },
}

impl ResolveError {
    pub fn loc(&self) -> Loc {
        match self {
            ResolveError::UnknownType { loc, .. }
            | ResolveError::ArityMismatch { loc, .. }
            | ResolveError::NotADataType { loc, .. } => *loc,
        }
    }
}

/// What a [`TypeRef`] denotes after resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolvedType<'a> {
    Primitive(Primitive),
    Enum(&'a EnumDecl),
    Record(&'a RecordDecl),
    Component {
        ty: &'a ComponentType,
        args: Vec<TypeRef>,
    },
    TypeParam(String),
}

/// Type parameters in scope plus substitutions for parameters already bound.
#[derive(Debug, Clone, Copy, Default)]
pub struct GenericScope<'a> {
    pub params: &'a [String],
    pub bindings: &'a [(String, TypeRef)],
}

impl<'a> GenericScope<'a> {
    pub fn of(params: &'a [String]) -> Self {
        GenericScope {
            params,
            bindings: &[],
        }
    }
}

/// A loaded set of component types and data models with a designated root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Architecture {
    pub root: String,
    pub components: BTreeMap<String, ComponentType>,
    pub data_models: Vec<DataModel>,
    pub profile: ProfileId,
}

impl Architecture {
    pub fn root_component(&self) -> Option<&ComponentType> {
        self.components.get(&self.root)
    }

    pub fn component(&self, name: &str) -> Option<&ComponentType> {
        self.components.get(name)
    }

    pub fn find_enum(&self, name: &str) -> Option<&EnumDecl> {
        self.data_models.iter().find_map(|m| m.find_enum(name))
    }

    pub fn find_record(&self, name: &str) -> Option<&RecordDecl> {
        self.data_models.iter().find_map(|m| m.find_record(name))
    }

    pub fn enums(&self) -> impl Iterator<Item = &EnumDecl> {
        self.data_models.iter().flat_map(|m| m.enums.iter())
    }

    /// Resolves `r` in `scope`, substituting bound generic parameters first.
    pub fn resolve_type_ref<'s>(
        &'s self,
        r: &TypeRef,
        scope: GenericScope<'_>,
    ) -> Result<ResolvedType<'s>, ResolveError> {
        let r = r.substitute(scope.bindings);
        let arity = |expected: usize| -> Result<(), ResolveError> {
            if r.args.len() == expected {
                Ok(())
            } else {
                Err(ResolveError::ArityMismatch {
                    name: r.name.clone(),
                    expected,
                    got: r.args.len(),
                    loc: r.loc,
                })
            }
        };
        if scope.params.contains(&r.name) {
            arity(0)?;
            return Ok(ResolvedType::TypeParam(r.name.clone()));
        }
        if let Some(p) = Primitive::from_name(&r.name) {
            arity(0)?;
            return Ok(ResolvedType::Primitive(p));
        }
        if let Some(e) = self.find_enum(&r.name) {
            arity(0)?;
            return Ok(ResolvedType::Enum(e));
        }
        if let Some(rec) = self.find_record(&r.name) {
            arity(0)?;
            return Ok(ResolvedType::Record(rec));
        }
        if let Some(c) = self.components.get(&r.name) {
            arity(c.type_params.len())?;
            for a in &r.args {
                self.data_type(a, scope)?;
            }
            return Ok(ResolvedType::Component {
                ty: c,
                args: r.args.clone(),
            });
        }
        Err(ResolveError::UnknownType {
            name: r.name.clone(),
            loc: r.loc,
        })
    }

    /// Resolves a TypeRef that must denote a data type.
    pub fn data_type(&self, r: &TypeRef, scope: GenericScope<'_>) -> Result<DataType, ResolveError> {
        Ok(match self.resolve_type_ref(r, scope)? {
            ResolvedType::Primitive(p) => p.into(),
            ResolvedType::Enum(e) => DataType::Enum(e.name.clone()),
            ResolvedType::Record(rec) => DataType::Record(rec.name.clone()),
            ResolvedType::TypeParam(p) => DataType::Param(p),
            ResolvedType::Component { ty, .. } => {
                return Err(ResolveError::NotADataType {
                    name: ty.name.clone(),
                    loc: r.loc,
                })
            }
        })
    }

    /// Whether `name` refers to any data type or component type.
    pub fn type_exists(&self, name: &str) -> bool {
        Primitive::from_name(name).is_some()
            || self.find_enum(name).is_some()
            || self.find_record(name).is_some()
            || self.components.contains_key(name)
    }

    /// Types a literal against an expected data type.
    pub fn literal_value(&self, lit: &Literal, expected: &DataType) -> Result<Value, String> {
        match (lit, expected) {
            (Literal::Int(i), DataType::Int) => Ok(Value::Int(*i)),
            (Literal::Bool(b), DataType::Bool) => Ok(Value::Bool(*b)),
            (Literal::Str(s), DataType::String) => Ok(Value::Str(s.clone())),
            (Literal::Enum { ty, literal }, DataType::Enum(e)) => {
                if let Some(t) = ty {
                    if t != e {
                        return Err(format!("expected a literal of `{e}`, found `{t}.{literal}`"));
                    }
                }
                let decl = self
                    .find_enum(e)
                    .ok_or_else(|| format!("unknown enum `{e}`"))?;
                if decl.literals.contains(literal) {
                    Ok(Value::enum_lit(e, literal))
                } else {
                    Err(format!("enum `{e}` has no literal `{literal}`"))
                }
            }
            (lit, ty) => Err(format!("literal `{lit}` does not have type `{ty}`")),
        }
    }

    /// Value a variable holds when declared without an initial literal.
    pub fn default_value(&self, ty: &DataType) -> Option<Value> {
        self.default_value_depth(ty, 0)
    }

    fn default_value_depth(&self, ty: &DataType, depth: usize) -> Option<Value> {
        if depth > 64 {
            return None;
        }
        Some(match ty {
            DataType::Int => Value::Int(0),
            DataType::Bool => Value::Bool(false),
            DataType::String => Value::Str(String::new()),
            DataType::Enum(e) => Value::enum_lit(e, self.find_enum(e)?.literals.first()?),
            DataType::Record(r) => {
                let decl = self.find_record(r)?;
                let mut fields = Vec::with_capacity(decl.fields.len());
                for f in &decl.fields {
                    let fty = self.data_type(&f.ty, GenericScope::default()).ok()?;
                    fields.push((f.name.clone(), self.default_value_depth(&fty, depth + 1)?));
                }
                Value::Record {
                    ty: r.clone(),
                    fields,
                }
            }
            DataType::Param(_) => return None,
        })
    }

    /// Component types reachable from the root through subcomponent
    /// declarations, root first, then in breadth-first declaration order.
    pub fn reachable_components(&self) -> Vec<&ComponentType> {
        let mut seen: Vec<&str> = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        if let Some(root) = self.root_component() {
            queue.push_back(root);
        }
        let mut out = Vec::new();
        while let Some(c) = queue.pop_front() {
            if seen.contains(&c.name.as_str()) {
                continue;
            }
            seen.push(&c.name);
            out.push(c);
            for s in &c.subcomponents {
                if let Some(sub) = self.components.get(&s.ty.name) {
                    queue.push_back(sub);
                }
            }
        }
        out
    }
}
