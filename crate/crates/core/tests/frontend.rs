mod common;

use arcc_core::diag::{codes, Diagnostic, Loc};
use arcc_core::frontend::{
    load_project, parse_architecture, parse_binding, parse_data_model, parse_expr,
    parse_generator_model, print_binding, print_component, print_data_model, print_expr,
    print_generator, BehaviorLanguage, BehaviorRegistry, LanguageProfile, LoadOptions,
    TokenCursor,
};
use arcc_core::model::{BehaviorModel, BinaryOp, Expr, Literal, ProfileId, UnaryOp};
use common::*;
use proptest::prelude::*;

fn parse_comp(src: &str) -> Result<arcc_core::model::ComponentType, Vec<Diagnostic>> {
    parse_architecture(
        src,
        "X.arc",
        &LanguageProfile::scheduled(),
        &BehaviorRegistry::with_builtins(),
    )
}

#[test]
fn corpus_loads_with_ten_component_types() {
    let arch = corpus_arch();
    let names: Vec<&str> = arch.components.keys().map(String::as_str).collect();
    assert_eq!(
        names,
        [
            "Button",
            "Controller",
            "ExplorationControl",
            "ExplorerBot",
            "Logger",
            "Motor",
            "Navigation",
            "Timer",
            "Translator",
            "UltraSonic"
        ]
    );
    assert_eq!(arch.root, "ExplorerBot");
    assert_eq!(arch.profile, ProfileId::Scheduled);
    assert_eq!(arch.data_models.len(), 1);
}

#[test]
fn bare_enum_literals_are_resolved_against_the_port_type() {
    let arch = corpus_arch();
    let t = arch.component("Translator").unwrap();
    let BehaviorModel::Automaton(a) = &t.behaviors[0].model else {
        panic!("automaton expected")
    };
    let g = a.transitions[0].guard.as_ref().unwrap();
    assert_eq!(
        g,
        &Expr::binary(
            BinaryOp::Eq,
            Expr::Port("cmd".into()),
            Expr::Lit(Literal::Enum {
                ty: Some("NavigationCommand".into()),
                literal: "FORWARD".into()
            })
        )
    );
}

#[test]
fn every_corpus_file_round_trips_through_the_printer() {
    let reg = BehaviorRegistry::with_builtins();
    let prof = LanguageProfile::scheduled();
    for p in model_files() {
        let text = std::fs::read_to_string(&p).unwrap();
        let shown = p.display().to_string();
        if shown.ends_with(".arc") {
            let a = parse_architecture(&text, &shown, &prof, &reg).unwrap();
            let printed = print_component(&a, &reg);
            let b = parse_architecture(&printed, &shown, &prof, &reg).unwrap();
            assert_eq!(a, b, "{shown}");
            assert_eq!(printed, print_component(&b, &reg), "printer is stable for {shown}");
        } else {
            let a = parse_data_model(&text, &shown).unwrap();
            let b = parse_data_model(&print_data_model(&a), &shown).unwrap();
            assert_eq!(a, b, "{shown}");
        }
    }
    for name in ["sim.bind", "lejos.bind"] {
        let p = corpus().join(name);
        let shown = p.display().to_string();
        let a = parse_binding(&std::fs::read_to_string(&p).unwrap(), &shown).unwrap();
        let b = parse_binding(&print_binding(&a), &shown).unwrap();
        assert_eq!(a, b, "{name}");
    }
    for p in generator_files() {
        let shown = p.display().to_string();
        let a = parse_generator_model(&std::fs::read_to_string(&p).unwrap(), &shown).unwrap();
        let b = parse_generator_model(&print_generator(&a), &shown).unwrap();
        assert_eq!(a, b, "{shown}");
    }
}

#[test]
fn syntax_errors_carry_file_line_and_column() {
    let errs = parse_comp("component X {\n  port in Int a\n}\n").unwrap_err();
    assert_eq!(errs.len(), 1);
    let d = &errs[0];
    assert_eq!(d.code, codes::SYNTAX);
    assert_eq!((d.file.as_str(), d.line, d.col), ("X.arc", 3, 1));
    assert!(d.to_string().starts_with("X.arc:3:1: error [P001] "), "{d}");
}

#[test]
fn unknown_behavior_keyword_is_reported_at_the_block() {
    let errs = parse_comp("component X {\n  statechart { }\n}\n").unwrap_err();
    assert_eq!(codes(&errs), ["P002"]);
    assert_eq!(errs[0].loc(), Loc::new(2, 3));
}

#[test]
fn schedule_needs_the_scheduled_profile() {
    let src = "component X {\n  instance Y a;\n  schedule a;\n}\n";
    let reg = BehaviorRegistry::with_builtins();
    assert!(parse_architecture(src, "X.arc", &LanguageProfile::scheduled(), &reg).is_ok());
    let errs = parse_architecture(src, "X.arc", &LanguageProfile::base(), &reg).unwrap_err();
    assert_eq!(codes(&errs), ["P003"]);
    assert_eq!(errs[0].line, 3);
}

#[test]
fn second_schedule_is_rejected() {
    let errs = parse_comp("component X {\n  instance Y a;\n  schedule a;\n  schedule a;\n}\n").unwrap_err();
    assert_eq!(codes(&errs), ["P001"]);
    assert_eq!(errs[0].line, 4);
}

#[test]
fn duplicate_type_names_in_a_data_model() {
    let errs = parse_data_model("types T {\n  enum A { X; }\n  record A { Int f; }\n}\n", "T.types").unwrap_err();
    assert_eq!(codes(&errs), ["P004"]);
    let errs = parse_data_model("types T {\n  enum Int { X; }\n}\n", "T.types").unwrap_err();
    assert_eq!(codes(&errs), ["P004"]);
    let errs = parse_data_model("types T {\n  enum A { X, X; }\n}\n", "T.types").unwrap_err();
    assert_eq!(codes(&errs), ["P004"]);
}

#[test]
fn duplicate_binding_entries() {
    let src = "binding B for R platform p {\n  bind M -> stub \"a.csv\";\n  bind M -> stub \"b.csv\";\n}\n";
    let errs = parse_binding(src, "b.bind").unwrap_err();
    assert_eq!(codes(&errs), ["P005"]);
    assert_eq!(errs[0].line, 3);
}

#[test]
fn generator_fields_depend_on_kind() {
    let ok = "generator G {\n  kind behavior;\n  language automaton;\n  rts \"r-rts-1\";\n}\n";
    assert!(parse_generator_model(ok, "G.gen").is_ok());
    let extra = "generator G {\n  kind behavior;\n  platform p;\n  language automaton;\n  rts \"r\";\n}\n";
    assert_eq!(codes(&parse_generator_model(extra, "G.gen").unwrap_err()), ["P006"]);
    let missing = "generator G {\n  kind component;\n  platform p;\n  rts \"r\";\n}\n";
    assert_eq!(codes(&parse_generator_model(missing, "G.gen").unwrap_err()), ["P006"]);
}

#[test]
fn comparisons_do_not_chain() {
    let mut c = TokenCursor::new("a < b < c", "e").unwrap();
    let e = parse_expr(&mut c);
    assert!(e.is_err() || !c.at_eof());
}

#[test]
fn loader_reports_each_project_error() {
    type Case<'a> = (&'a [(&'a str, &'a str)], &'a str, &'a str);
    let cases: &[Case] = &[
        (&[("a/X.arc", "component X { }"), ("b/X.arc", "component X { }")], "X", "L001"),
        (&[("X.arc", "component X { }")], "Nope", "L002"),
        (&[("X.arc", "component X { port in Missing p; }")], "X", "L003"),
        (
            &[
                ("X.arc", "component X { instance Y y; }"),
                ("Y.arc", "component Y { instance X x; }"),
            ],
            "X",
            "L004",
        ),
        (&[("Y.arc", "component X { }")], "X", "L005"),
        (&[("X.arc", "component X { }"), ("notes.txt", "")], "X", "L006"),
        (
            &[("X.arc", "component X { port in Y p; }"), ("Y.arc", "component Y { }")],
            "X",
            "L007",
        ),
        (&[("X.arc", "component X(Int n) { }")], "X", "L008"),
        (&[("X.arc", "component X { }"), ("R.types", "types R { record R { R inner; } }")], "X", "L010"),
    ];
    for (files, root, code) in cases {
        let errs = load_inline(files, root).unwrap_err();
        assert!(has_code(&errs, code), "{code}: got {errs:?}");
    }
}

#[test]
fn missing_root_is_reported_against_the_project() {
    let errs = load_inline(&[("X.arc", "component X { }")], "Nope").unwrap_err();
    assert_eq!(errs[0].file, "<project>");
}

#[test]
fn unreadable_files_are_io_errors() {
    let opts = LoadOptions::new("X");
    let errs = load_project(
        &[std::path::PathBuf::from("/nonexistent/X.arc")],
        &opts,
        &BehaviorRegistry::with_builtins(),
    )
    .unwrap_err();
    assert_eq!(codes(&errs), ["L009"]);
}

#[test]
fn library_directories_are_searched() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("Leaf.arc"), "component Leaf { port out Int o; }").unwrap();
    let top = dir.path().join("top");
    std::fs::create_dir(&top).unwrap();
    let main = top.join("Top.arc");
    std::fs::write(&main, "component Top { instance Leaf l; }").unwrap();
    let mut opts = LoadOptions::new("Top");
    opts.libs.push(dir.path().to_path_buf());
    let p = load_project(&[main], &opts, &BehaviorRegistry::with_builtins()).unwrap();
    assert!(p.architecture.component("Leaf").is_some());
}

#[test]
fn behavior_languages_can_be_registered_without_touching_other_parsers() {
    let mut only_automata = BehaviorRegistry::empty();
    only_automata.register(BehaviorLanguage::automaton()).unwrap();
    let errs = load_corpus_with(ProfileId::Scheduled, &only_automata).unwrap_err();
    assert_eq!(codes(&errs), ["P002"]);
    assert!(errs[0].file.ends_with("Timer.arc"));
    let mut both = only_automata.clone();
    both.register(BehaviorLanguage::activity()).unwrap();
    assert!(load_corpus_with(ProfileId::Scheduled, &both).is_ok());
    assert!(both.register(BehaviorLanguage::activity()).is_err());
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..1000).prop_map(|i| Expr::Lit(Literal::Int(i))),
        any::<bool>().prop_map(|b| Expr::Lit(Literal::Bool(b))),
        "[a-z]{1,3}x".prop_map(Expr::Name),
        "[a-z]{1,3}p".prop_map(Expr::Present),
        "[a-z]{0,4}".prop_map(|s| Expr::Lit(Literal::Str(s))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let ops = prop_oneof![
            Just(BinaryOp::Add),
            Just(BinaryOp::Sub),
            Just(BinaryOp::Mul),
            Just(BinaryOp::Div),
            Just(BinaryOp::And),
            Just(BinaryOp::Or),
            Just(BinaryOp::Lt),
            Just(BinaryOp::Eq),
            Just(BinaryOp::Ge),
        ];
        prop_oneof![
            (ops, inner.clone(), inner.clone()).prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            inner.clone().prop_map(|e| Expr::unary(UnaryOp::Not, e)),
            inner.prop_map(|e| Expr::unary(UnaryOp::Neg, e)),
        ]
    })
}

proptest! {
    #[test]
    fn printed_expressions_parse_back(e in arb_expr()) {
        let printed = print_expr(&e);
        let mut c = TokenCursor::new(&printed, "e").unwrap();
        let back = parse_expr(&mut c).unwrap();
        prop_assert!(c.at_eof());
        prop_assert_eq!(print_expr(&back), printed);
    }

    #[test]
    fn generated_components_round_trip(
        ports in prop::collection::btree_set("[a-z]{2,5}", 1..5),
        n_inst in 0usize..4,
        delayed in any::<bool>(),
    ) {
        let mut src = String::from("component Gen {\n");
        for (i, p) in ports.iter().enumerate() {
            let dir = if i % 2 == 0 { "in" } else { "out" };
            src.push_str(&format!("  port {dir} Int {p};\n"));
        }
        for i in 0..n_inst {
            src.push_str(&format!("  instance Leaf s{i}(1, true);\n"));
        }
        if n_inst >= 2 {
            let d = if delayed { " delayed" } else { "" };
            src.push_str(&format!("  connect s0.o -> s1.i{d};\n"));
            src.push_str("  schedule s0, s1;\n");
        }
        src.push_str("}\n");
        let reg = BehaviorRegistry::with_builtins();
        let prof = LanguageProfile::scheduled();
        let a = parse_architecture(&src, "Gen.arc", &prof, &reg).unwrap();
        let b = parse_architecture(&print_component(&a, &reg), "Gen.arc", &prof, &reg).unwrap();
        prop_assert_eq!(a, b);
    }
}
