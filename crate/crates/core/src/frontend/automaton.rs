//! Body grammar of the `automaton` behavior language.
//!
//! ```text
//! autoBody   := "states" ID+ ";" "initial" ID ";" transition*
//! transition := ID "->" ID ("[" expr "]")? ("/" action ("," action)*)? ";"
//! action     := ID "=" expr
//! ```

use super::cursor::{PResult, TokenCursor};
use super::expr::parse_expr;
use super::print::{print_expr, Printer};
use crate::model::{Action, Automaton, BehaviorModel, Transition};

pub fn parse_automaton_body(c: &mut TokenCursor) -> PResult<BehaviorModel> {
    let loc = c.expect_kw("states")?;
    let mut states = Vec::new();
    while !c.is_sym(";") {
        states.push(c.expect_ident()?.0);
    }
    if states.is_empty() {
        return Err(c.unexpected("at least one state"));
    }
    c.expect_sym(";")?;
    c.expect_kw("initial")?;
    let (initial, _) = c.expect_ident()?;
    c.expect_sym(";")?;
    let mut transitions = Vec::new();
    while !c.is_sym("}") && !c.at_eof() {
        let (from, tloc) = c.expect_ident()?;
        c.expect_sym("->")?;
        let (to, _) = c.expect_ident()?;
        let guard = if c.eat_sym("[") {
            let g = parse_expr(c)?;
            c.expect_sym("]")?;
            Some(g)
        } else {
            None
        };
        let mut actions = Vec::new();
        if c.eat_sym("/") {
            loop {
                actions.push(parse_action(c)?);
                if !c.eat_sym(",") {
                    break;
                }
            }
        }
        c.expect_sym(";")?;
        transitions.push(Transition {
            from,
            to,
            guard,
            actions,
            loc: tloc,
        });
    }
    Ok(BehaviorModel::Automaton(Automaton {
        states,
        initial,
        transitions,
        loc,
    }))
}

pub(crate) fn parse_action(c: &mut TokenCursor) -> PResult<Action> {
    let (target, loc) = c.expect_ident()?;
    c.expect_sym("=")?;
    let value = parse_expr(c)?;
    Ok(Action { target, value, loc })
}

pub fn print_automaton_body(model: &BehaviorModel, p: &mut Printer) {
    let BehaviorModel::Automaton(a) = model else {
        return;
    };
    p.line(&format!("states {};", a.states.join(" ")));
    p.line(&format!("initial {};", a.initial));
    for t in &a.transitions {
        let mut s = format!("{} -> {}", t.from, t.to);
        if let Some(g) = &t.guard {
            s.push_str(&format!(" [{}]", print_expr(g)));
        }
        if !t.actions.is_empty() {
            let acts: Vec<String> = t
                .actions
                .iter()
                .map(|a| format!("{} = {}", a.target, print_expr(&a.value)))
                .collect();
            s.push_str(&format!(" / {}", acts.join(", ")));
        }
        s.push(';');
        p.line(&s);
    }
}
