use serde_json::{json, Value as Json};

use super::types::{Literal, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Not,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Or,
    And,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Or => "||",
            BinaryOp::And => "&&",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
        }
    }

    pub fn from_symbol(s: &str) -> Option<BinaryOp> {
        use BinaryOp::*;
        Some(match s {
            "||" => Or,
            "&&" => And,
            "==" => Eq,
            "!=" => Ne,
            "<" => Lt,
            "<=" => Le,
            ">" => Gt,
            ">=" => Ge,
            "+" => Add,
            "-" => Sub,
            "*" => Mul,
            "/" => Div,
            _ => return None,
        })
    }

    /// Binding strength; larger binds tighter.
    pub fn precedence(self) -> u8 {
        use BinaryOp::*;
        match self {
            Or => 1,
            And => 2,
            Eq | Ne | Lt | Le | Gt | Ge => 3,
            Add | Sub => 4,
            Mul | Div => 5,
        }
    }

    pub fn is_comparison(self) -> bool {
        self.precedence() == 3
    }
}

/// Guard and action expressions.
///
/// The parser produces `Name` for every bare identifier; loading rewrites
/// names into `Port`, `Var`, `Param` or an enum literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(Literal),
    Name(String),
    Port(String),
    Var(String),
    Param(String),
    Present(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn binary(op: BinaryOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn unary(op: UnaryOp, e: Expr) -> Expr {
        Expr::Unary(op, Box::new(e))
    }

    pub fn int(i: i64) -> Expr {
        Expr::Lit(Literal::Int(i))
    }

    /// Visits every sub-expression, parents before children.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Unary(_, e) => e.walk(f),
            Expr::Binary(_, l, r) => {
                l.walk(f);
                r.walk(f);
            }
            _ => {}
        }
    }

    /// Names of ports read by this expression, including `present(p)`.
    pub fn ports_read(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |e| match e {
            Expr::Port(p) | Expr::Present(p) if !out.contains(p) => out.push(p.clone()),
            _ => {}
        });
        out
    }

    pub fn to_json(&self) -> Result<Json, String> {
        Ok(match self {
            Expr::Lit(lit) => {
                let v = Value::from_literal(lit)
                    .ok_or_else(|| format!("unresolved enum literal `{lit}`"))?;
                json!(["lit", v.to_json()])
            }
            Expr::Name(n) => return Err(format!("unresolved name `{n}`")),
            Expr::Port(n) => json!(["port", n]),
            Expr::Var(n) => json!(["var", n]),
            Expr::Param(n) => json!(["param", n]),
            Expr::Present(n) => json!(["present", n]),
            Expr::Unary(UnaryOp::Not, e) => json!(["!", e.to_json()?]),
            Expr::Unary(UnaryOp::Neg, e) => json!(["neg", e.to_json()?]),
            Expr::Binary(op, l, r) => json!([op.symbol(), l.to_json()?, r.to_json()?]),
        })
    }

    pub fn from_json(j: &Json) -> Result<Expr, String> {
        let arr = j
            .as_array()
            .ok_or_else(|| format!("expression must be an array: {j}"))?;
        let (head, rest) = arr
            .split_first()
            .ok_or_else(|| "empty expression array".to_string())?;
        let head = head
            .as_str()
            .ok_or_else(|| format!("expression operator must be a string: {head}"))?;
        let name = |rest: &[Json]| -> Result<String, String> {
            match rest {
                [Json::String(s)] => Ok(s.clone()),
                _ => Err(format!("`{head}` expects one name")),
            }
        };
        Ok(match head {
            "lit" => match rest {
                [v] => Expr::Lit(
                    Value::from_json(v)?
                        .to_literal()
                        .ok_or_else(|| "record literals are not supported".to_string())?,
                ),
                _ => return Err("`lit` expects one value".into()),
            },
            "port" => Expr::Port(name(rest)?),
            "var" => Expr::Var(name(rest)?),
            "param" => Expr::Param(name(rest)?),
            "present" => Expr::Present(name(rest)?),
            "!" | "neg" => match rest {
                [e] => Expr::unary(
                    if head == "!" { UnaryOp::Not } else { UnaryOp::Neg },
                    Expr::from_json(e)?,
                ),
                _ => return Err(format!("`{head}` expects one operand")),
            },
            op => {
                let op = BinaryOp::from_symbol(op)
                    .ok_or_else(|| format!("unknown expression operator `{op}`"))?;
                match rest {
                    [l, r] => Expr::binary(op, Expr::from_json(l)?, Expr::from_json(r)?),
                    _ => return Err(format!("`{}` expects two operands", op.symbol())),
                }
            }
        })
    }
}

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json()
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Expr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Json::deserialize(d)?;
        Expr::from_json(&raw).map_err(serde::de::Error::custom)
    }
}
