//! Canonical pretty-printing for every source language. Printing a parsed
//! model and parsing the result yields a structurally equal model.

use super::registry::BehaviorRegistry;
use crate::binding::{BindingModel, ImplKind};
use crate::genfw::{EntryPoint, GeneratorModel};
use crate::model::{ComponentType, DataModel, Expr, Literal, UnaryOp};

#[derive(Debug, Default)]
pub struct Printer {
    out: String,
    depth: usize,
}

impl Printer {
    pub fn new() -> Self {
        Printer::default()
    }

    pub fn line(&mut self, s: &str) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
        self.out.push_str(s);
        self.out.push('\n');
    }

    pub fn indent(&mut self) {
        self.depth += 1;
    }

    pub fn dedent(&mut self) {
        self.depth = self.depth.saturating_sub(1);
    }

    pub fn finish(self) -> String {
        self.out
    }
}

fn expr_prec(e: &Expr) -> u8 {
    match e {
        Expr::Binary(op, ..) => op.precedence(),
        Expr::Unary(..) => 6,
        _ => 7,
    }
}

pub fn print_expr(e: &Expr) -> String {
    print_expr_min(e, 0)
}

fn print_expr_min(e: &Expr, min: u8) -> String {
    let s = match e {
        Expr::Lit(l) => print_literal(l),
        Expr::Name(n) | Expr::Port(n) | Expr::Var(n) | Expr::Param(n) => n.clone(),
        Expr::Present(p) => format!("present({p})"),
        Expr::Unary(UnaryOp::Not, x) => format!("!{}", print_expr_min(x, 6)),
        Expr::Unary(UnaryOp::Neg, x) => match x.as_ref() {
            Expr::Lit(Literal::Int(_)) => format!("-({})", print_expr(x)),
            _ => format!("-{}", print_expr_min(x, 6)),
        },
        Expr::Binary(op, l, r) => {
            let p = op.precedence();
            let lmin = if op.is_comparison() { p + 1 } else { p };
            format!(
                "{} {} {}",
                print_expr_min(l, lmin),
                op.symbol(),
                print_expr_min(r, p + 1)
            )
        }
    };
    if expr_prec(e) < min {
        format!("({s})")
    } else {
        s
    }
}

pub fn print_literal(l: &Literal) -> String {
    l.to_string()
}

pub fn print_component(c: &ComponentType, registry: &BehaviorRegistry) -> String {
    let mut p = Printer::new();
    let mut header = format!("component {}", c.name);
    if !c.type_params.is_empty() {
        header.push_str(&format!("<{}>", c.type_params.join(", ")));
    }
    if !c.config_params.is_empty() {
        let ps: Vec<String> = c
            .config_params
            .iter()
            .map(|p| format!("{} {}", p.ty, p.name))
            .collect();
        header.push_str(&format!("({})", ps.join(", ")));
    }
    header.push_str(" {");
    p.line(&header);
    p.indent();
    for port in &c.ports {
        p.line(&format!("port {} {} {};", port.direction, port.ty, port.name));
    }
    for v in &c.variables {
        match &v.initial {
            Some(init) => p.line(&format!("var {} {} = {};", v.ty, v.name, print_literal(init))),
            None => p.line(&format!("var {} {};", v.ty, v.name)),
        }
    }
    for s in &c.subcomponents {
        if s.args.is_empty() {
            p.line(&format!("instance {} {};", s.ty, s.name));
        } else {
            let args: Vec<String> = s.args.iter().map(print_literal).collect();
            p.line(&format!("instance {} {}({});", s.ty, s.name, args.join(", ")));
        }
    }
    for con in &c.connectors {
        let targets: Vec<String> = con.targets.iter().map(|t| t.to_string()).collect();
        p.line(&format!(
            "connect {} -> {}{};",
            con.source,
            targets.join(", "),
            if con.delayed { " delayed" } else { "" }
        ));
    }
    if let Some(s) = &c.schedule {
        p.line(&format!("schedule {};", s.order.join(", ")));
    }
    for b in &c.behaviors {
        let lang = registry.by_id(&b.language);
        let keyword = lang.map_or(b.language.as_str(), |l| l.keyword.as_str());
        p.line(&format!("{keyword} {{"));
        p.indent();
        if let Some(lang) = lang {
            (lang.print)(&b.model, &mut p);
        }
        p.dedent();
        p.line("}");
    }
    p.dedent();
    p.line("}");
    p.finish()
}

pub fn print_data_model(m: &DataModel) -> String {
    let mut p = Printer::new();
    p.line(&format!("types {} {{", m.name));
    p.indent();
    for e in &m.enums {
        p.line(&format!("enum {} {{ {}; }}", e.name, e.literals.join(", ")));
    }
    for r in &m.records {
        p.line(&format!("record {} {{", r.name));
        p.indent();
        for f in &r.fields {
            p.line(&format!("{} {};", f.ty, f.name));
        }
        p.dedent();
        p.line("}");
    }
    p.dedent();
    p.line("}");
    p.finish()
}

pub fn print_binding(b: &BindingModel) -> String {
    let mut p = Printer::new();
    p.line(&format!(
        "binding {} for {} platform {} {{",
        b.name, b.root, b.platform
    ));
    p.indent();
    for (ty, r) in &b.entries {
        let kind = match r.kind {
            ImplKind::Stub => "stub",
            ImplKind::Extern => "extern",
        };
        p.line(&format!("bind {ty} -> {kind} \"{}\";", r.locator));
    }
    p.dedent();
    p.line("}");
    p.finish()
}

pub fn print_generator(g: &GeneratorModel) -> String {
    let mut p = Printer::new();
    p.line(&format!("generator {} {{", g.name));
    p.indent();
    p.line(&format!("kind {};", g.kind));
    if let Some(x) = &g.platform {
        p.line(&format!("platform {x};"));
    }
    if let Some(x) = &g.language {
        p.line(&format!("language {x};"));
    }
    if let Some(x) = &g.rts {
        p.line(&format!("rts \"{x}\";"));
    }
    if let Some(e) = &g.entry_point {
        match e {
            EntryPoint::Any => p.line("entrypoint *;"),
            EntryPoint::Component(c) => p.line(&format!("entrypoint {c};")),
        }
    }
    if !g.required_checks.is_empty() {
        p.line(&format!("requires {};", g.required_checks.join(", ")));
    }
    if let Some(x) = &g.emitter {
        p.line(&format!("emitter {x};"));
    }
    p.dedent();
    p.line("}");
    p.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BinaryOp;

    #[test]
    fn parenthesizes_only_where_needed() {
        let e = Expr::binary(
            BinaryOp::Mul,
            Expr::binary(BinaryOp::Add, Expr::int(1), Expr::int(2)),
            Expr::int(3),
        );
        assert_eq!(print_expr(&e), "(1 + 2) * 3");
        let e = Expr::binary(
            BinaryOp::Sub,
            Expr::int(1),
            Expr::binary(BinaryOp::Sub, Expr::int(2), Expr::int(3)),
        );
        assert_eq!(print_expr(&e), "1 - (2 - 3)");
        let e = Expr::unary(
            UnaryOp::Not,
            Expr::binary(BinaryOp::And, Expr::Present("a".into()), Expr::Name("a".into())),
        );
        assert_eq!(print_expr(&e), "!(present(a) && a)");
    }
}
