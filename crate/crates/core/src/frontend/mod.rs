//! Parsers for the five textual languages, the behavior-language registry
//! and the ADL profiles.

mod activity;
mod automaton;
mod cursor;
mod expr;
mod lexer;
mod loader;
mod parse;
mod print;
mod profile;
mod registry;

pub use activity::{parse_activity_body, print_activity_body};
pub use automaton::{parse_automaton_body, print_automaton_body};
pub use cursor::{PResult, TokenCursor, RESERVED};
pub use expr::{parse_expr, parse_literal, parse_type};
pub use lexer::{tokenize, LexError, Tok, Token};
pub use loader::{load_project, load_sources, LoadOptions, Project, SourceFile, PROJECT_FILE};
pub use parse::{parse_architecture, parse_binding, parse_data_model, parse_generator_model};
pub use print::{
    print_binding, print_component, print_data_model, print_expr, print_generator, print_literal,
    Printer,
};
pub use profile::LanguageProfile;
pub use registry::{
    register_behavior_language, BehaviorLanguage, BehaviorRegistry, BodyParser, BodyPrinter,
    RegistryError, ELEMENT_KEYWORDS,
};
