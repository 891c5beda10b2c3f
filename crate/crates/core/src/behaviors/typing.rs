use std::collections::BTreeMap;

use crate::model::{
    Architecture, BinaryOp, ComponentType, DataType, Direction, Expr, GenericScope, Literal,
    UnaryOp,
};

/// What a bare name inside a behavior refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Symbol {
    Port(Direction, DataType),
    Var(DataType),
    Param(DataType),
}

impl Symbol {
    pub fn ty(&self) -> &DataType {
        match self {
            Symbol::Port(_, t) | Symbol::Var(t) | Symbol::Param(t) => t,
        }
    }
}

/// The names a behavior of one component can refer to. Declarations whose
/// types do not resolve are left out; other rules report them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Symbols {
    pub names: BTreeMap<String, Symbol>,
    /// Literal lists of every enum in scope, used for literal resolution.
    pub enums: BTreeMap<String, Vec<String>>,
}

impl Symbols {
    pub fn of(arch: &Architecture, comp: &ComponentType) -> Symbols {
        let scope = GenericScope::of(&comp.type_params);
        let mut names = BTreeMap::new();
        for p in &comp.config_params {
            if let Ok(t) = arch.data_type(&p.ty, scope) {
                names.entry(p.name.clone()).or_insert(Symbol::Param(t));
            }
        }
        for v in &comp.variables {
            if let Ok(t) = arch.data_type(&v.ty, scope) {
                names.entry(v.name.clone()).or_insert(Symbol::Var(t));
            }
        }
        for p in &comp.ports {
            if let Ok(t) = arch.data_type(&p.ty, scope) {
                names
                    .entry(p.name.clone())
                    .or_insert(Symbol::Port(p.direction, t));
            }
        }
        let enums = arch
            .enums()
            .map(|e| (e.name.clone(), e.literals.clone()))
            .collect();
        Symbols { names, enums }
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.names.get(name)
    }

    fn enum_owning(&self, literal: &str) -> Vec<&str> {
        self.enums
            .iter()
            .filter(|(_, lits)| lits.iter().any(|l| l == literal))
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

/// Rewrites `Name` leaves into ports, variables, parameters or typed enum
/// literals. Bare literals take the expected type when one is known and
/// otherwise resolve only when exactly one enum declares them. Names that
/// cannot be resolved stay `Name` for the checks to report.
pub fn resolve_names(e: &Expr, syms: &Symbols, expected: Option<&DataType>) -> Expr {
    match e {
        Expr::Name(n) => match syms.get(n) {
            Some(Symbol::Port(..)) => Expr::Port(n.clone()),
            Some(Symbol::Var(_)) => Expr::Var(n.clone()),
            Some(Symbol::Param(_)) => Expr::Param(n.clone()),
            None => resolve_literal(n, syms, expected).unwrap_or_else(|| e.clone()),
        },
        Expr::Lit(Literal::Enum { ty: None, literal }) => {
            resolve_literal(literal, syms, expected).unwrap_or_else(|| e.clone())
        }
        Expr::Unary(op, x) => {
            let want = match op {
                UnaryOp::Not => DataType::Bool,
                UnaryOp::Neg => DataType::Int,
            };
            Expr::unary(*op, resolve_names(x, syms, Some(&want)))
        }
        Expr::Binary(op, l, r) => {
            let (l, r) = match op {
                BinaryOp::And | BinaryOp::Or => (
                    resolve_names(l, syms, Some(&DataType::Bool)),
                    resolve_names(r, syms, Some(&DataType::Bool)),
                ),
                BinaryOp::Eq | BinaryOp::Ne => {
                    let l0 = resolve_names(l, syms, None);
                    let r0 = resolve_names(r, syms, None);
                    let lt = type_of(&l0, syms).ok();
                    let rt = type_of(&r0, syms).ok();
                    (
                        resolve_names(l, syms, rt.as_ref()),
                        resolve_names(r, syms, lt.as_ref()),
                    )
                }
                _ => (
                    resolve_names(l, syms, Some(&DataType::Int)),
                    resolve_names(r, syms, Some(&DataType::Int)),
                ),
            };
            Expr::binary(*op, l, r)
        }
        _ => e.clone(),
    }
}

fn resolve_literal(name: &str, syms: &Symbols, expected: Option<&DataType>) -> Option<Expr> {
    let owner = match expected {
        Some(DataType::Enum(en)) => {
            let lits = syms.enums.get(en)?;
            lits.iter().any(|l| l == name).then(|| en.clone())?
        }
        Some(_) => return None,
        None => match syms.enum_owning(name).as_slice() {
            [only] => only.to_string(),
            _ => return None,
        },
    };
    Some(Expr::Lit(Literal::Enum {
        ty: Some(owner),
        literal: name.to_string(),
    }))
}

/// Static type of a resolved behavior expression. Reading an out-port is a
/// type error: behaviors may only read in-ports, variables and parameters.
pub fn type_of(e: &Expr, syms: &Symbols) -> Result<DataType, String> {
    match e {
        Expr::Lit(Literal::Int(_)) => Ok(DataType::Int),
        Expr::Lit(Literal::Bool(_)) => Ok(DataType::Bool),
        Expr::Lit(Literal::Str(_)) => Ok(DataType::String),
        Expr::Lit(Literal::Enum {
            ty: Some(t),
            literal,
        }) => match syms.enums.get(t) {
            Some(lits) if lits.contains(literal) => Ok(DataType::Enum(t.clone())),
            Some(_) => Err(format!("enum `{t}` has no literal `{literal}`")),
            None => Err(format!("unknown enum `{t}`")),
        },
        Expr::Lit(Literal::Enum { ty: None, literal }) => {
            Err(format!("cannot determine the enum of literal `{literal}`"))
        }
        Expr::Name(n) => Err(format!("unresolved name `{n}`")),
        Expr::Port(n) => match syms.get(n) {
            Some(Symbol::Port(Direction::In, t)) => Ok(t.clone()),
            Some(Symbol::Port(Direction::Out, _)) => Err(format!("cannot read out-port `{n}`")),
            _ => Err(format!("`{n}` is not a port")),
        },
        Expr::Var(n) => match syms.get(n) {
            Some(Symbol::Var(t)) => Ok(t.clone()),
            _ => Err(format!("`{n}` is not a variable")),
        },
        Expr::Param(n) => match syms.get(n) {
            Some(Symbol::Param(t)) => Ok(t.clone()),
            _ => Err(format!("`{n}` is not a configuration parameter")),
        },
        Expr::Present(n) => match syms.get(n) {
            Some(Symbol::Port(Direction::In, _)) => Ok(DataType::Bool),
            _ => Err(format!("present() needs an in-port, `{n}` is not one")),
        },
        Expr::Unary(op, x) => {
            let t = type_of(x, syms)?;
            let want = match op {
                UnaryOp::Not => DataType::Bool,
                UnaryOp::Neg => DataType::Int,
            };
            if t == want {
                Ok(want)
            } else {
                Err(format!("operand of `{}` must be {want}, found {t}", unary_symbol(*op)))
            }
        }
        Expr::Binary(op, l, r) => {
            let lt = type_of(l, syms)?;
            let rt = type_of(r, syms)?;
            let (operand, result) = match op {
                BinaryOp::And | BinaryOp::Or => (Some(DataType::Bool), DataType::Bool),
                BinaryOp::Eq | BinaryOp::Ne => (None, DataType::Bool),
                BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => {
                    (Some(DataType::Int), DataType::Bool)
                }
                _ => (Some(DataType::Int), DataType::Int),
            };
            if lt != rt {
                return Err(format!(
                    "operands of `{}` have different types {lt} and {rt}",
                    op.symbol()
                ));
            }
            match operand {
                Some(want) if lt != want => Err(format!(
                    "operands of `{}` must be {want}, found {lt}",
                    op.symbol()
                )),
                _ => Ok(result),
            }
        }
    }
}

fn unary_symbol(op: UnaryOp) -> &'static str {
    match op {
        UnaryOp::Not => "!",
        UnaryOp::Neg => "-",
    }
}
