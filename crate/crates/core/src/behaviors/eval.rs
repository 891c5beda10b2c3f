use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::{BinaryOp, Expr, UnaryOp, Value};

/// Name to value bindings for one evaluation. A port entry may hold
/// `None` (no message this tick); a missing port entry means the same.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValueEnv {
    entries: BTreeMap<String, Option<Value>>,
}

impl ValueEnv {
    pub fn new() -> Self {
        ValueEnv::default()
    }

    pub fn set(&mut self, name: &str, v: Option<Value>) {
        self.entries.insert(name.to_string(), v);
    }

    pub fn with(mut self, name: &str, v: Value) -> Self {
        self.set(name, Some(v));
        self
    }

    /// `None` if the name is unbound, `Some(None)` if bound but absent.
    pub fn lookup(&self, name: &str) -> Option<&Option<Value>> {
        self.entries.get(name)
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.entries.get(name).and_then(Option::as_ref)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Option<Value>)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Bindings of `self` overridden by those of `other`.
    pub fn merged(&self, other: &ValueEnv) -> ValueEnv {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.entries.insert(k.clone(), v.clone());
        }
        out
    }
}

impl FromIterator<(String, Option<Value>)> for ValueEnv {
    fn from_iter<I: IntoIterator<Item = (String, Option<Value>)>>(iter: I) -> Self {
        ValueEnv {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer overflow")]
    Overflow,
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
}

/// Evaluates `e` with strict absence: arithmetic and comparisons over an
/// absent operand are absent, `present` is never absent, and `&&`/`||`
/// short-circuit so that `false && absent` is false and `true || absent`
/// is true.
pub fn eval_expr(e: &Expr, env: &ValueEnv) -> Result<Option<Value>, EvalError> {
    match e {
        Expr::Lit(l) => Value::from_literal(l)
            .map(Some)
            .ok_or_else(|| EvalError::TypeMismatch(format!("untyped literal `{l}`"))),
        Expr::Port(n) => Ok(env.lookup(n).cloned().flatten()),
        Expr::Var(n) | Expr::Param(n) => match env.lookup(n) {
            Some(Some(v)) => Ok(Some(v.clone())),
            _ => Err(EvalError::Unbound(n.clone())),
        },
        Expr::Name(n) => Err(EvalError::Unbound(n.clone())),
        Expr::Present(n) => Ok(Some(Value::Bool(env.get(n).is_some()))),
        Expr::Unary(op, x) => {
            let Some(v) = eval_expr(x, env)? else {
                return Ok(None);
            };
            match (op, v) {
                (UnaryOp::Not, Value::Bool(b)) => Ok(Some(Value::Bool(!b))),
                (UnaryOp::Neg, Value::Int(i)) => {
                    i.checked_neg().map(|i| Some(Value::Int(i))).ok_or(EvalError::Overflow)
                }
                (_, v) => Err(EvalError::TypeMismatch(format!("bad unary operand {v}"))),
            }
        }
        Expr::Binary(BinaryOp::And, l, r) => {
            let lv = bool_operand(eval_expr(l, env)?)?;
            if lv == Some(false) {
                return Ok(Some(Value::Bool(false)));
            }
            let rv = bool_operand(eval_expr(r, env)?)?;
            Ok(match (lv, rv) {
                (_, Some(false)) => Some(Value::Bool(false)),
                (Some(true), Some(true)) => Some(Value::Bool(true)),
                _ => None,
            })
        }
        Expr::Binary(BinaryOp::Or, l, r) => {
            let lv = bool_operand(eval_expr(l, env)?)?;
            if lv == Some(true) {
                return Ok(Some(Value::Bool(true)));
            }
            let rv = bool_operand(eval_expr(r, env)?)?;
            Ok(match (lv, rv) {
                (_, Some(true)) => Some(Value::Bool(true)),
                (Some(false), Some(false)) => Some(Value::Bool(false)),
                _ => None,
            })
        }
        Expr::Binary(op, l, r) => {
            let (Some(lv), Some(rv)) = (eval_expr(l, env)?, eval_expr(r, env)?) else {
                return Ok(None);
            };
            binary(*op, lv, rv).map(Some)
        }
    }
}

fn bool_operand(v: Option<Value>) -> Result<Option<bool>, EvalError> {
    match v {
        None => Ok(None),
        Some(Value::Bool(b)) => Ok(Some(b)),
        Some(v) => Err(EvalError::TypeMismatch(format!("expected Bool, found {v}"))),
    }
}

fn binary(op: BinaryOp, l: Value, r: Value) -> Result<Value, EvalError> {
    use BinaryOp::*;
    match op {
        Eq => return Ok(Value::Bool(l == r)),
        Ne => return Ok(Value::Bool(l != r)),
        _ => {}
    }
    let (Value::Int(a), Value::Int(b)) = (&l, &r) else {
        return Err(EvalError::TypeMismatch(format!(
            "`{}` expects Int operands, found {l} and {r}",
            op.symbol()
        )));
    };
    let (a, b) = (*a, *b);
    let int = |x: Option<i64>| x.map(Value::Int).ok_or(EvalError::Overflow);
    match op {
        Lt => Ok(Value::Bool(a < b)),
        Le => Ok(Value::Bool(a <= b)),
        Gt => Ok(Value::Bool(a > b)),
        Ge => Ok(Value::Bool(a >= b)),
        Add => int(a.checked_add(b)),
        Sub => int(a.checked_sub(b)),
        Mul => int(a.checked_mul(b)),
        Div if b == 0 => Err(EvalError::DivisionByZero),
        Div => int(a.checked_div(b)),
        And | Or | Eq | Ne => unreachable!("handled above"),
    }
}
