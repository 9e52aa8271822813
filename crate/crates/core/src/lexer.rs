//! Tokenizer shared by the expression, SFC, BIP and invariant parsers.

use std::fmt;

use crate::diag::{Diagnostic, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    /// Punctuation and operators, longest match first.
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(i) => write!(f, "integer `{i}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

const SYMBOLS: &[&str] = &[
    ":=", "==", "!=", "<=", ">=", "&&", "||", "->", "..", "{", "}", "(", ")", "[", "]", ";", ":",
    ",", ".", "<", ">", "+", "-", "*", "!", "=", "@",
];

pub fn tokenize(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        // line comments: `//` and `#`
        if c == b'#' || (c == b'/' && bytes.get(i + 1) == Some(&b'/')) {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let pos = Pos { line, col };
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                pos,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let n: i64 = src[start..i].parse().map_err(|_| {
                Diagnostic::new("syntax", format!("integer literal `{}` out of range", &src[start..i]))
                    .at(pos)
            })?;
            out.push(Token { tok: Tok::Int(n), pos });
            continue;
        }
        let rest = &src[i..];
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(sym) => {
                i += sym.len();
                col += sym.len();
                out.push(Token { tok: Tok::Sym(sym), pos });
            }
            None => {
                let ch = rest.chars().next().unwrap_or('?');
                return Err(Diagnostic::new("syntax", format!("unexpected character `{ch}`")).at(pos));
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

/// Cursor over a token vector with the small helpers every parser here needs.
#[derive(Debug, Clone)]
pub struct Cursor {
    toks: Vec<Token>,
    idx: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self, Diagnostic> {
        Ok(Cursor {
            toks: tokenize(src)?,
            idx: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.idx].tok
    }

    pub fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.idx + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub fn pos(&self) -> Pos {
        self.toks[self.idx].pos
    }

    pub fn mark(&self) -> usize {
        self.idx
    }

    pub fn reset(&mut self, mark: usize) {
        self.idx = mark;
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].tok.clone();
        if self.idx < self.toks.len() - 1 {
            self.idx += 1;
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

    pub fn unexpected(&self, wanted: &str) -> Diagnostic {
        Diagnostic::new("syntax", format!("expected {wanted}, found {}", self.peek())).at(self.pos())
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<(), Diagnostic> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    pub fn expect_kw(&mut self, kw: &str) -> Result<(), Diagnostic> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    pub fn ident(&mut self) -> Result<String, Diagnostic> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    /// Signed integer literal.
    pub fn int(&mut self) -> Result<i64, Diagnostic> {
        let neg = self.eat_sym("-");
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.unexpected("integer")),
        }
    }

    pub fn expect_eof(&self) -> Result<(), Diagnostic> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}
