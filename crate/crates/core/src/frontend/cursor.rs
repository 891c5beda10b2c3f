use super::lexer::{tokenize, Tok, Token};
use crate::diag::{codes, Diagnostic, Loc};

pub type PResult<T> = Result<T, Diagnostic>;

/// Identifiers that can never name a model element.
pub const RESERVED: &[&str] = &["true", "false", "present", "end", "else"];

/// Token stream shared by every parser, including registered behavior body parsers.
pub struct TokenCursor {
    tokens: Vec<Token>,
    pos: usize,
    file: String,
}

impl TokenCursor {
    pub fn new(src: &str, file: &str) -> PResult<TokenCursor> {
        let tokens = tokenize(src)
            .map_err(|e| Diagnostic::error(codes::SYNTAX, file, e.loc, e.message))?;
        Ok(TokenCursor {
            tokens,
            pos: 0,
            file: file.to_string(),
        })
    }

    pub fn file(&self) -> &str {
        &self.file
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    pub fn loc(&self) -> Loc {
        self.tokens[self.pos].loc
    }

    pub fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    pub fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == kw)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(codes::SYNTAX, &self.file, self.loc(), message)
    }

    pub fn error_at(&self, loc: Loc, code: &str, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(code, &self.file, loc, message)
    }

    pub fn unexpected(&self, expected: &str) -> Diagnostic {
        self.error(format!("expected {expected}, found {}", self.peek().describe()))
    }

    pub fn expect_sym(&mut self, s: &str) -> PResult<Loc> {
        if self.is_sym(s) {
            Ok(self.bump().loc)
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    pub fn expect_kw(&mut self, kw: &str) -> PResult<Loc> {
        if self.is_kw(kw) {
            Ok(self.bump().loc)
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    pub fn expect_ident(&mut self) -> PResult<(String, Loc)> {
        match self.peek().clone() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                let loc = self.bump().loc;
                Ok((s, loc))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn expect_string(&mut self) -> PResult<(String, Loc)> {
        match self.peek().clone() {
            Tok::Str(s) => {
                let loc = self.bump().loc;
                Ok((s, loc))
            }
            _ => Err(self.unexpected("a string literal")),
        }
    }

    pub fn expect_eof(&mut self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.unexpected("end of file"))
        }
    }
}
