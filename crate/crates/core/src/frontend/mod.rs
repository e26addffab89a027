//! Concrete syntax: tokenizer, parser and desugarer to core expressions.

mod desugar;
mod lexer;
mod parser;
pub mod syntax;

use std::fmt;

pub use desugar::desugar;
pub use lexer::{tokenize, Tok, Token};

use crate::ast::Expr;
use syntax::SExpr;

/// Byte range in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Lex,
    Syntax,
    Desugar,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Lex => "lexical",
            ErrorKind::Syntax => "syntax",
            ErrorKind::Desugar => "desugar",
        })
    }
}

/// Error with a source position; `line` and `column` are 1-based and stay
/// 0 until [`FrontendError::locate`] has seen the source.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} error at line {line}, column {column}: {message}")]
pub struct FrontendError {
    pub kind: ErrorKind,
    pub message: String,
    pub span: Span,
    pub line: usize,
    pub column: usize,
}

impl FrontendError {
    fn new(kind: ErrorKind, message: impl Into<String>, span: Span) -> Self {
        FrontendError {
            kind,
            message: message.into(),
            span,
            line: 0,
            column: 0,
        }
    }

    pub fn lex(message: impl Into<String>, span: Span) -> Self {
        Self::new(ErrorKind::Lex, message, span)
    }

    pub fn syntax(message: impl Into<String>, span: Span) -> Self {
        Self::new(ErrorKind::Syntax, message, span)
    }

    pub fn desugar(message: impl Into<String>, span: Span) -> Self {
        Self::new(ErrorKind::Desugar, message, span)
    }

    /// Fills in line and column from the source text.
    pub fn locate(mut self, src: &str) -> Self {
        let upto = &src[..self.span.start.min(src.len())];
        self.line = upto.matches('\n').count() + 1;
        let line_start = upto.rfind('\n').map_or(0, |i| i + 1);
        self.column = upto[line_start..].chars().count() + 1;
        self
    }
}

/// Parses a whole program (a block of bindings and a result expression).
pub fn parse(src: &str) -> Result<SExpr, FrontendError> {
    let toks = tokenize(src)?;
    parser::Parser::new(&toks)
        .program()
        .map_err(|e| e.locate(src))
}

/// Parses and desugars `src`. `globals` names variables bound outside
/// the program.
pub fn compile(src: &str, globals: &[&str]) -> Result<Expr, FrontendError> {
    let s = parse(src)?;
    desugar(&s, globals).map_err(|e| e.locate(src))
}
