//! Recursive-descent parsers for `.arc`, `.types`, `.bind` and `.gen` files.

use std::collections::BTreeMap;

use super::cursor::{PResult, TokenCursor};
use super::expr::{parse_literal, parse_type};
use super::lexer::Tok;
use super::profile::LanguageProfile;
use super::registry::BehaviorRegistry;
use crate::binding::{BindingModel, ImplKind, ImplRef};
use crate::diag::{codes, Diagnostic, Loc};
use crate::genfw::{EntryPoint, GeneratorKind, GeneratorModel};
use crate::model::{
    BehaviorAttachment, ComponentType, ConfigParam, Connector, DataModel, Direction, EnumDecl,
    FieldDecl, PortDecl, PortRef, RecordDecl, Schedule, SubcomponentInstance, VarDecl,
};

/// Parses one `.arc` compilation unit.
pub fn parse_architecture(
    source: &str,
    file: &str,
    profile: &LanguageProfile,
    registry: &BehaviorRegistry,
) -> Result<ComponentType, Vec<Diagnostic>> {
    let mut c = TokenCursor::new(source, file).map_err(|d| vec![d])?;
    parse_component(&mut c, profile, registry).map_err(|d| vec![d])
}

fn parse_component(
    c: &mut TokenCursor,
    profile: &LanguageProfile,
    registry: &BehaviorRegistry,
) -> PResult<ComponentType> {
    let loc = c.expect_kw("component")?;
    let (name, _) = c.expect_ident()?;
    let mut comp = ComponentType::new(&name);
    comp.file = c.file().to_string();
    comp.loc = loc;
    if c.eat_sym("<") {
        loop {
            comp.type_params.push(c.expect_ident()?.0);
            if !c.eat_sym(",") {
                break;
            }
        }
        c.expect_sym(">")?;
    }
    if c.eat_sym("(") {
        loop {
            let ty = parse_type(c)?;
            let (pname, ploc) = c.expect_ident()?;
            comp.config_params.push(ConfigParam {
                ty,
                name: pname,
                loc: ploc,
            });
            if !c.eat_sym(",") {
                break;
            }
        }
        c.expect_sym(")")?;
    }
    c.expect_sym("{")?;
    while !c.is_sym("}") {
        parse_element(c, &mut comp, profile, registry)?;
    }
    c.expect_sym("}")?;
    c.expect_eof()?;
    Ok(comp)
}

fn parse_element(
    c: &mut TokenCursor,
    comp: &mut ComponentType,
    profile: &LanguageProfile,
    registry: &BehaviorRegistry,
) -> PResult<()> {
    let loc = c.loc();
    let Tok::Ident(kw) = c.peek().clone() else {
        return Err(c.unexpected("a component element"));
    };
    match kw.as_str() {
        "port" => {
            c.bump();
            loop {
                let ploc = c.loc();
                let direction = if c.eat_kw("in") {
                    Direction::In
                } else if c.eat_kw("out") {
                    Direction::Out
                } else {
                    return Err(c.unexpected("`in` or `out`"));
                };
                let ty = parse_type(c)?;
                let (name, _) = c.expect_ident()?;
                comp.ports.push(PortDecl {
                    name,
                    direction,
                    ty,
                    loc: ploc,
                });
                if !c.eat_sym(",") {
                    break;
                }
            }
            c.expect_sym(";")?;
        }
        "var" => {
            c.bump();
            let ty = parse_type(c)?;
            let (name, _) = c.expect_ident()?;
            let initial = if c.eat_sym("=") {
                Some(parse_literal(c)?)
            } else {
                None
            };
            c.expect_sym(";")?;
            comp.variables.push(VarDecl {
                name,
                ty,
                initial,
                loc,
            });
        }
        "instance" => {
            c.bump();
            let ty = parse_type(c)?;
            let (name, _) = c.expect_ident()?;
            let mut args = Vec::new();
            if c.eat_sym("(") {
                loop {
                    args.push(parse_literal(c)?);
                    if !c.eat_sym(",") {
                        break;
                    }
                }
                c.expect_sym(")")?;
            }
            c.expect_sym(";")?;
            comp.subcomponents.push(SubcomponentInstance {
                name,
                ty,
                args,
                loc,
            });
        }
        "connect" => {
            c.bump();
            let source = parse_port_ref(c)?;
            c.expect_sym("->")?;
            let mut targets = vec![parse_port_ref(c)?];
            while c.eat_sym(",") {
                targets.push(parse_port_ref(c)?);
            }
            let delayed = c.eat_kw("delayed");
            c.expect_sym(";")?;
            comp.connectors.push(Connector {
                source,
                targets,
                delayed,
                loc,
            });
        }
        "schedule" => {
            if !profile.allows_element("schedule") {
                return Err(c.error_at(
                    loc,
                    codes::PROFILE_VIOLATION,
                    "schedule requires profile=scheduled",
                ));
            }
            c.bump();
            if comp.schedule.is_some() {
                return Err(c.error_at(loc, codes::SYNTAX, "a component declares at most one schedule"));
            }
            let mut order = vec![c.expect_ident()?.0];
            while c.eat_sym(",") {
                order.push(c.expect_ident()?.0);
            }
            c.expect_sym(";")?;
            comp.schedule = Some(Schedule { order, loc });
        }
        _ if matches!(c.peek_at(1), Tok::Sym("{")) => {
            let Some(lang) = registry.by_keyword(&kw) else {
                return Err(c.error_at(
                    loc,
                    codes::UNKNOWN_BEHAVIOR_KEYWORD,
                    format!("unknown behavior keyword `{kw}`"),
                ));
            };
            c.bump();
            c.expect_sym("{")?;
            let model = (lang.parse)(c)?;
            c.expect_sym("}")?;
            comp.behaviors.push(BehaviorAttachment {
                language: lang.id.clone(),
                model,
                loc,
            });
        }
        _ => return Err(c.unexpected("a component element")),
    }
    Ok(())
}

fn parse_port_ref(c: &mut TokenCursor) -> PResult<PortRef> {
    let (first, _) = c.expect_ident()?;
    if c.eat_sym(".") {
        let (port, _) = c.expect_ident()?;
        Ok(PortRef::of(&first, &port))
    } else {
        Ok(PortRef::own(&first))
    }
}

/// Parses a `.types` file. Duplicate names are reported, never merged.
pub fn parse_data_model(source: &str, file: &str) -> Result<DataModel, Vec<Diagnostic>> {
    let mut c = TokenCursor::new(source, file).map_err(|d| vec![d])?;
    let model = parse_types_unit(&mut c).map_err(|d| vec![d])?;
    let mut diags = Vec::new();
    let mut seen: BTreeMap<&str, Loc> = BTreeMap::new();
    let decls = model
        .enums
        .iter()
        .map(|e| (&e.name, e.loc))
        .chain(model.records.iter().map(|r| (&r.name, r.loc)));
    for (name, loc) in decls {
        if crate::model::Primitive::from_name(name).is_some() || seen.contains_key(name.as_str()) {
            diags.push(Diagnostic::error(
                codes::DUPLICATE_TYPE_NAME,
                file,
                loc,
                format!("duplicate type name `{name}`"),
            ));
        }
        seen.insert(name, loc);
    }
    for e in &model.enums {
        for (i, l) in e.literals.iter().enumerate() {
            if e.literals[..i].contains(l) {
                diags.push(Diagnostic::error(
                    codes::DUPLICATE_TYPE_NAME,
                    file,
                    e.loc,
                    format!("duplicate literal `{l}` in enum `{}`", e.name),
                ));
            }
        }
    }
    for r in &model.records {
        for (i, f) in r.fields.iter().enumerate() {
            if r.fields[..i].iter().any(|g| g.name == f.name) {
                diags.push(Diagnostic::error(
                    codes::DUPLICATE_TYPE_NAME,
                    file,
                    f.loc,
                    format!("duplicate field `{}` in record `{}`", f.name, r.name),
                ));
            }
        }
    }
    if diags.is_empty() {
        Ok(model)
    } else {
        Err(diags)
    }
}

fn parse_types_unit(c: &mut TokenCursor) -> PResult<DataModel> {
    let loc = c.expect_kw("types")?;
    let (name, _) = c.expect_ident()?;
    c.expect_sym("{")?;
    let mut model = DataModel {
        name,
        enums: Vec::new(),
        records: Vec::new(),
        file: c.file().to_string(),
        loc,
    };
    loop {
        let dloc = c.loc();
        if c.eat_kw("enum") {
            let (ename, _) = c.expect_ident()?;
            c.expect_sym("{")?;
            let mut literals = vec![c.expect_ident()?.0];
            while c.eat_sym(",") {
                literals.push(c.expect_ident()?.0);
            }
            c.expect_sym(";")?;
            c.expect_sym("}")?;
            model.enums.push(EnumDecl {
                name: ename,
                literals,
                loc: dloc,
            });
        } else if c.eat_kw("record") {
            let (rname, _) = c.expect_ident()?;
            c.expect_sym("{")?;
            let mut fields = Vec::new();
            while !c.is_sym("}") {
                let floc = c.loc();
                let ty = parse_type(c)?;
                let (fname, _) = c.expect_ident()?;
                c.expect_sym(";")?;
                fields.push(FieldDecl {
                    name: fname,
                    ty,
                    loc: floc,
                });
            }
            c.expect_sym("}")?;
            model.records.push(RecordDecl {
                name: rname,
                fields,
                loc: dloc,
            });
        } else {
            break;
        }
    }
    c.expect_sym("}")?;
    c.expect_eof()?;
    Ok(model)
}

/// Parses a `.bind` file.
pub fn parse_binding(source: &str, file: &str) -> Result<BindingModel, Vec<Diagnostic>> {
    let mut c = TokenCursor::new(source, file).map_err(|d| vec![d])?;
    let mut diags = Vec::new();
    let model = parse_binding_unit(&mut c, &mut diags).map_err(|d| vec![d])?;
    if diags.is_empty() {
        Ok(model)
    } else {
        Err(diags)
    }
}

fn parse_binding_unit(c: &mut TokenCursor, diags: &mut Vec<Diagnostic>) -> PResult<BindingModel> {
    let loc = c.expect_kw("binding")?;
    let (name, _) = c.expect_ident()?;
    c.expect_kw("for")?;
    let (root, _) = c.expect_ident()?;
    c.expect_kw("platform")?;
    let (platform, _) = c.expect_ident()?;
    c.expect_sym("{")?;
    let mut entries = BTreeMap::new();
    while c.is_kw("bind") {
        let bloc = c.bump().loc;
        let (ty, _) = c.expect_ident()?;
        c.expect_sym("->")?;
        let kind = if c.eat_kw("stub") {
            ImplKind::Stub
        } else if c.eat_kw("extern") {
            ImplKind::Extern
        } else {
            return Err(c.unexpected("`stub` or `extern`"));
        };
        let (locator, _) = c.expect_string()?;
        c.expect_sym(";")?;
        if entries.contains_key(&ty) {
            diags.push(c.error_at(
                bloc,
                codes::DUPLICATE_BINDING,
                format!("duplicate binding for component type `{ty}`"),
            ));
            continue;
        }
        entries.insert(
            ty,
            ImplRef {
                kind,
                locator,
                loc: bloc,
            },
        );
    }
    c.expect_sym("}")?;
    c.expect_eof()?;
    Ok(BindingModel {
        name,
        root,
        platform,
        entries,
        file: c.file().to_string(),
        loc,
    })
}

/// Parses a `.gen` generator model and validates field presence against its kind.
pub fn parse_generator_model(source: &str, file: &str) -> Result<GeneratorModel, Vec<Diagnostic>> {
    let mut c = TokenCursor::new(source, file).map_err(|d| vec![d])?;
    let (model, field_locs) = parse_generator_unit(&mut c).map_err(|d| vec![d])?;
    let mut diags = Vec::new();
    let (needs_platform, needs_language, needs_rts, needs_entry) = match model.kind {
        GeneratorKind::Component => (true, false, true, true),
        GeneratorKind::Behavior => (false, true, true, false),
        GeneratorKind::Type => (true, false, false, false),
    };
    let checks = [
        ("platform", model.platform.is_some(), needs_platform),
        ("language", model.language.is_some(), needs_language),
        ("rts", model.rts.is_some(), needs_rts),
        ("entrypoint", model.entry_point.is_some(), needs_entry),
    ];
    for (field, present, needed) in checks {
        if present && !needed {
            let loc = field_locs.get(field).copied().unwrap_or(model.loc);
            diags.push(Diagnostic::error(
                codes::GENERATOR_FIELD,
                file,
                loc,
                format!("`{field}` is invalid for kind {}", model.kind),
            ));
        } else if needed && !present {
            diags.push(Diagnostic::error(
                codes::GENERATOR_FIELD,
                file,
                model.loc,
                format!("kind {} requires `{field}`", model.kind),
            ));
        }
    }
    if diags.is_empty() {
        Ok(model)
    } else {
        Err(diags)
    }
}

fn parse_generator_unit(
    c: &mut TokenCursor,
) -> PResult<(GeneratorModel, BTreeMap<&'static str, Loc>)> {
    let loc = c.expect_kw("generator")?;
    let (name, _) = c.expect_ident()?;
    c.expect_sym("{")?;
    c.expect_kw("kind")?;
    let kind = match c.expect_ident()?.0.as_str() {
        "component" => GeneratorKind::Component,
        "behavior" => GeneratorKind::Behavior,
        "type" => GeneratorKind::Type,
        other => {
            return Err(c.error(format!(
                "unknown generator kind `{other}` (expected component, behavior or type)"
            )))
        }
    };
    c.expect_sym(";")?;
    let mut g = GeneratorModel {
        name,
        kind,
        platform: None,
        language: None,
        rts: None,
        entry_point: None,
        required_checks: Vec::new(),
        emitter: None,
        file: c.file().to_string(),
        loc,
    };
    let mut locs = BTreeMap::new();
    while !c.is_sym("}") {
        let floc = c.loc();
        let field: &'static str = match c.peek() {
            Tok::Ident(f) => match f.as_str() {
                "platform" => "platform",
                "language" => "language",
                "rts" => "rts",
                "entrypoint" => "entrypoint",
                "requires" => "requires",
                "emitter" => "emitter",
                _ => return Err(c.unexpected("a generator field")),
            },
            _ => return Err(c.unexpected("a generator field")),
        };
        if locs.insert(field, floc).is_some() {
            return Err(c.error(format!("duplicate field `{field}`")));
        }
        c.bump();
        match field {
            "platform" => g.platform = Some(c.expect_ident()?.0),
            "language" => g.language = Some(c.expect_ident()?.0),
            "rts" => g.rts = Some(c.expect_string()?.0),
            "entrypoint" => {
                g.entry_point = Some(if c.eat_sym("*") {
                    EntryPoint::Any
                } else {
                    EntryPoint::Component(c.expect_ident()?.0)
                })
            }
            "requires" => {
                g.required_checks.push(c.expect_ident()?.0);
                while c.eat_sym(",") {
                    g.required_checks.push(c.expect_ident()?.0);
                }
            }
            _ => g.emitter = Some(c.expect_ident()?.0),
        }
        c.expect_sym(";")?;
    }
    c.expect_sym("}")?;
    c.expect_eof()?;
    Ok((g, locs))
}
