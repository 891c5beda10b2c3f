use std::collections::BTreeSet;

use thiserror::Error;

use super::eval::ValueEnv;
use super::step::guard_holds;
use super::typing::{Symbol, Symbols};
use crate::model::{Automaton, BinaryOp, DataType, Direction, Expr, Literal, UnaryOp, Value};

/// Default cap on the number of abstract environments per state.
pub const DEFAULT_DOMAIN_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub state: String,
    pub env: ValueEnv,
    pub transitions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Deterministic,
    Witness(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeterminismError {
    #[error("state `{state}` needs {count} abstract environments (limit {limit}); simplify its guards")]
    DomainTooLarge { state: String, count: u128, limit: u64 },
    #[error("representative for `{atom}` in state `{state}` overflows 64-bit range")]
    Overflow { state: String, atom: String },
    #[error("guard atom `{0}` has no known type")]
    UnknownAtom(String),
}

/// A symbol and the abstract values it ranges over.
type Domain = (String, Vec<Option<Value>>);

/// Decides whether some abstract environment enables two or more
/// transitions from one state.
///
/// Each atom read by a state's guards ranges over a finite abstract
/// domain: Bool over both values, enums over their literals, Int over one
/// representative per interval induced by the integer constants in the
/// state's guards, String over its compared literals plus one fresh value,
/// and in-ports additionally over absence.
pub fn check_determinism(
    a: &Automaton,
    syms: &Symbols,
    limit: u64,
) -> Result<Verdict, DeterminismError> {
    for state in &a.states {
        let outgoing = a.outgoing(state);
        if outgoing.len() < 2 {
            continue;
        }
        let guards: Vec<&Expr> = outgoing
            .iter()
            .filter_map(|&i| a.transitions[i].guard.as_ref())
            .collect();
        let domains = state_domains(state, &guards, syms)?;
        let count = domains
            .iter()
            .map(|(_, d)| d.len() as u128)
            .product::<u128>();
        if count > limit as u128 {
            return Err(DeterminismError::DomainTooLarge {
                state: state.clone(),
                count,
                limit,
            });
        }
        let mut idx = vec![0usize; domains.len()];
        loop {
            let env: ValueEnv = domains
                .iter()
                .zip(&idx)
                .map(|((name, d), &i)| (name.clone(), d[i].clone()))
                .collect();
            let enabled: Vec<usize> = outgoing
                .iter()
                .copied()
                .filter(|&i| guard_holds(a.transitions[i].guard.as_ref(), &env).unwrap_or(false))
                .collect();
            if enabled.len() >= 2 {
                return Ok(Verdict::Witness(Witness {
                    state: state.clone(),
                    env,
                    transitions: enabled,
                }));
            }
            if !advance(&mut idx, &domains) {
                break;
            }
        }
    }
    Ok(Verdict::Deterministic)
}

fn advance(idx: &mut [usize], domains: &[Domain]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < domains[k].1.len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn state_domains(
    state: &str,
    guards: &[&Expr],
    syms: &Symbols,
) -> Result<Vec<Domain>, DeterminismError> {
    let mut atoms = BTreeSet::new();
    let mut ints = BTreeSet::new();
    let mut strings = BTreeSet::new();
    let mut relational = false;
    for g in guards {
        collect(g, &mut atoms, &mut ints, &mut strings, &mut relational);
    }
    if relational {
        ints.extend([-1, 0, 1]);
    }
    let int_reps = int_representatives(&ints).ok_or_else(|| DeterminismError::Overflow {
        state: state.to_string(),
        atom: atoms.iter().next().cloned().unwrap_or_default(),
    })?;
    let mut out = Vec::new();
    for atom in atoms {
        let sym = syms
            .get(&atom)
            .ok_or_else(|| DeterminismError::UnknownAtom(atom.clone()))?;
        let mut dom: Vec<Option<Value>> = match sym.ty() {
            DataType::Bool => vec![Some(Value::Bool(false)), Some(Value::Bool(true))],
            DataType::Int => int_reps.iter().map(|&i| Some(Value::Int(i))).collect(),
            DataType::Enum(e) => syms
                .enums
                .get(e)
                .ok_or_else(|| DeterminismError::UnknownAtom(atom.clone()))?
                .iter()
                .map(|l| Some(Value::enum_lit(e, l)))
                .collect(),
            DataType::String => {
                let mut d: Vec<Option<Value>> =
                    strings.iter().map(|s: &String| Some(Value::Str(s.clone()))).collect();
                d.push(Some(Value::Str(fresh_string(&strings))));
                d
            }
            DataType::Record(r) | DataType::Param(r) => (0..2)
                .map(|i| {
                    Some(Value::Record {
                        ty: r.clone(),
                        fields: vec![("token".into(), Value::Int(i))],
                    })
                })
                .collect(),
        };
        if matches!(sym, Symbol::Port(Direction::In, _)) {
            dom.push(None);
        }
        out.push((atom, dom));
    }
    Ok(out)
}

fn fresh_string(taken: &BTreeSet<String>) -> String {
    let mut s = String::from("~");
    while taken.contains(&s) {
        s.push('~');
    }
    s
}

/// One value per interval of the integer line cut at `consts`: below the
/// least constant, each constant, strictly between neighbours when that
/// interval is non-empty, and above the greatest. `None` on overflow.
pub fn int_representatives(consts: &BTreeSet<i64>) -> Option<Vec<i64>> {
    let cs: Vec<i64> = consts.iter().copied().collect();
    let (Some(&first), Some(&last)) = (cs.first(), cs.last()) else {
        return Some(vec![0]);
    };
    let mut reps = vec![first.checked_sub(1)?];
    for (i, &c) in cs.iter().enumerate() {
        reps.push(c);
        if let Some(&next) = cs.get(i + 1) {
            if next as i128 - c as i128 >= 2 {
                reps.push(c + 1);
            }
        }
    }
    reps.push(last.checked_add(1)?);
    Some(reps)
}

fn collect(
    e: &Expr,
    atoms: &mut BTreeSet<String>,
    ints: &mut BTreeSet<i64>,
    strings: &mut BTreeSet<String>,
    relational: &mut bool,
) {
    e.walk(&mut |x| match x {
        Expr::Port(n) | Expr::Var(n) | Expr::Param(n) | Expr::Present(n) => {
            atoms.insert(n.clone());
        }
        Expr::Lit(Literal::Int(i)) => {
            ints.insert(*i);
        }
        Expr::Unary(UnaryOp::Neg, inner) => {
            if let Expr::Lit(Literal::Int(i)) = inner.as_ref() {
                if let Some(n) = i.checked_neg() {
                    ints.insert(n);
                }
            } else {
                *relational = true;
            }
        }
        Expr::Lit(Literal::Str(s)) => {
            strings.insert(s.clone());
        }
        Expr::Binary(op, l, r) => {
            let is_const = |e: &Expr| {
                matches!(e, Expr::Lit(_))
                    || matches!(e, Expr::Unary(UnaryOp::Neg, x) if matches!(x.as_ref(), Expr::Lit(_)))
            };
            let arith = matches!(op, BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div);
            if arith || (op.is_comparison() && !is_const(l) && !is_const(r)) {
                *relational = true;
            }
        }
        _ => {}
    });
}
