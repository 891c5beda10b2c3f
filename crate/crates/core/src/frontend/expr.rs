//! Expressions and literals shared by the ADL and the behavior languages.

use super::cursor::{PResult, TokenCursor};
use super::lexer::Tok;
use crate::model::{BinaryOp, Expr, Literal, TypeRef, UnaryOp};

pub fn parse_expr(c: &mut TokenCursor) -> PResult<Expr> {
    parse_binary(c, 1)
}

fn binary_op(c: &TokenCursor) -> Option<BinaryOp> {
    match c.peek() {
        Tok::Sym(s) => BinaryOp::from_symbol(s),
        _ => None,
    }
}

fn parse_binary(c: &mut TokenCursor, min_prec: u8) -> PResult<Expr> {
    if min_prec > 5 {
        return parse_unary(c);
    }
    let mut lhs = parse_binary(c, min_prec + 1)?;
    while let Some(op) = binary_op(c).filter(|op| op.precedence() == min_prec) {
        c.bump();
        let rhs = parse_binary(c, min_prec + 1)?;
        lhs = Expr::binary(op, lhs, rhs);
        if op.is_comparison() {
            if binary_op(c).is_some_and(BinaryOp::is_comparison) {
                return Err(c.error("comparison operators do not chain; add parentheses"));
            }
            break;
        }
    }
    Ok(lhs)
}

fn negative_int(c: &mut TokenCursor, magnitude: u64) -> PResult<i64> {
    if magnitude == 1u64 << 63 {
        Ok(i64::MIN)
    } else {
        i64::try_from(magnitude)
            .map(|v| -v)
            .map_err(|_| c.error(format!("integer literal -{magnitude} is out of range")))
    }
}

fn positive_int(c: &mut TokenCursor, magnitude: u64) -> PResult<i64> {
    i64::try_from(magnitude)
        .map_err(|_| c.error(format!("integer literal {magnitude} is out of range")))
}

fn parse_unary(c: &mut TokenCursor) -> PResult<Expr> {
    if c.eat_sym("!") {
        return Ok(Expr::unary(UnaryOp::Not, parse_unary(c)?));
    }
    if c.is_sym("-") {
        c.bump();
        if let Tok::Int(m) = *c.peek() {
            let v = negative_int(c, m)?;
            c.bump();
            return Ok(Expr::int(v));
        }
        return Ok(Expr::unary(UnaryOp::Neg, parse_unary(c)?));
    }
    parse_primary(c)
}

fn parse_primary(c: &mut TokenCursor) -> PResult<Expr> {
    match c.peek().clone() {
        Tok::Int(m) => {
            let v = positive_int(c, m)?;
            c.bump();
            Ok(Expr::int(v))
        }
        Tok::Str(s) => {
            c.bump();
            Ok(Expr::Lit(Literal::Str(s)))
        }
        Tok::Sym("(") => {
            c.bump();
            let e = parse_expr(c)?;
            c.expect_sym(")")?;
            Ok(e)
        }
        Tok::Ident(id) if id == "true" || id == "false" => {
            c.bump();
            Ok(Expr::Lit(Literal::Bool(id == "true")))
        }
        Tok::Ident(id) if id == "present" => {
            c.bump();
            c.expect_sym("(")?;
            let (port, _) = c.expect_ident()?;
            c.expect_sym(")")?;
            Ok(Expr::Present(port))
        }
        Tok::Ident(_) => {
            let (name, _) = c.expect_ident()?;
            if c.eat_sym(".") {
                let (literal, _) = c.expect_ident()?;
                Ok(Expr::Lit(Literal::Enum {
                    ty: Some(name),
                    literal,
                }))
            } else {
                Ok(Expr::Name(name))
            }
        }
        _ => Err(c.unexpected("an expression")),
    }
}

pub fn parse_literal(c: &mut TokenCursor) -> PResult<Literal> {
    match c.peek().clone() {
        Tok::Int(m) => {
            let v = positive_int(c, m)?;
            c.bump();
            Ok(Literal::Int(v))
        }
        Tok::Sym("-") => {
            c.bump();
            match *c.peek() {
                Tok::Int(m) => {
                    let v = negative_int(c, m)?;
                    c.bump();
                    Ok(Literal::Int(v))
                }
                _ => Err(c.unexpected("an integer literal")),
            }
        }
        Tok::Str(s) => {
            c.bump();
            Ok(Literal::Str(s))
        }
        Tok::Ident(id) if id == "true" || id == "false" => {
            c.bump();
            Ok(Literal::Bool(id == "true"))
        }
        Tok::Ident(_) => {
            let (name, _) = c.expect_ident()?;
            if c.eat_sym(".") {
                let (literal, _) = c.expect_ident()?;
                Ok(Literal::Enum {
                    ty: Some(name),
                    literal,
                })
            } else {
                Ok(Literal::Enum {
                    ty: None,
                    literal: name,
                })
            }
        }
        _ => Err(c.unexpected("a literal")),
    }
}

/// `type := ID ("<" type ("," type)* ">")?`
pub fn parse_type(c: &mut TokenCursor) -> PResult<TypeRef> {
    let (name, loc) = c.expect_ident()?;
    let mut args = Vec::new();
    if c.eat_sym("<") {
        loop {
            args.push(parse_type(c)?);
            if !c.eat_sym(",") {
                break;
            }
        }
        c.expect_sym(">")?;
    }
    Ok(TypeRef { name, args, loc })
}
