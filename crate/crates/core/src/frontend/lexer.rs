use num_bigint::BigInt;

use crate::values::Rational;

use super::{FrontendError, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Num(Rational),
    Ident(String),
    Underscore,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    BagOpen,
    BagClose,
    Comma,
    Semi,
    Colon,
    Assign,
    Bar,
    Question,
    Arrow,
    LArrow,
    Dot,
    DotDot,
    Hash,
    Tilde,
    At,
    Plus,
    Minus,
    Star,
    Slash,
    SlashSlash,
    BackBack,
    And,
    Or,
    Not,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        let s = match self {
            Tok::Num(n) => return format!("number {n}"),
            Tok::Ident(s) => return format!("`{s}`"),
            Tok::Underscore => "_",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::BagOpen => "⟨",
            Tok::BagClose => "⟩",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Assign => ":=",
            Tok::Bar => "|",
            Tok::Question => "?",
            Tok::Arrow => "→",
            Tok::LArrow => "←",
            Tok::Dot => ".",
            Tok::DotDot => "..",
            Tok::Hash => "#",
            Tok::Tilde => "~",
            Tok::At => "@",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::SlashSlash => "//",
            Tok::BackBack => "\\\\",
            Tok::And => "∧",
            Tok::Or => "∨",
            Tok::Not => "¬",
            Tok::Eq => "=",
            Tok::Ne => "≠",
            Tok::Lt => "<",
            Tok::Le => "≤",
            Tok::Gt => ">",
            Tok::Ge => "≥",
            Tok::Eof => return "end of input".to_string(),
        };
        format!("`{s}`")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits source text into tokens. `--` starts a comment running to the
/// end of the line. Both Unicode and ASCII spellings of operators are
/// accepted; `}>` closes a bag only while an ASCII `<{` is open.
pub fn tokenize(src: &str) -> Result<Vec<Token>, FrontendError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    // Open brackets; `true` marks an ASCII bag opener.
    let mut open: Vec<bool> = Vec::new();
    let mut i = 0;
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    let offset = |i: usize| chars.get(i).map(|&(o, _)| o).unwrap_or(src.len());
    while i < chars.len() {
        let c = chars[i].1;
        let start = offset(i);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && at(i + 1) == Some('-') {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            let mut digits = String::new();
            while let Some(d) = at(j).filter(char::is_ascii_digit) {
                digits.push(d);
                j += 1;
            }
            let mut value = Rational::from_integer(digits.parse::<BigInt>().expect("digits"));
            // A fraction part needs a digit right after the dot, so that
            // `1..5` stays a range.
            if at(j) == Some('.') && at(j + 1).is_some_and(|d| d.is_ascii_digit()) {
                j += 1;
                let mut frac = String::new();
                while let Some(d) = at(j).filter(char::is_ascii_digit) {
                    frac.push(d);
                    j += 1;
                }
                let scale = num_traits::pow(BigInt::from(10), frac.len());
                let numer: BigInt = frac.parse().expect("digits");
                value += Rational::new(numer, scale);
            }
            out.push(Token {
                tok: Tok::Num(value),
                span: Span::new(start, offset(j)),
            });
            i = j;
            continue;
        }
        if is_ident_start(c) {
            let mut j = i;
            let mut s = String::new();
            while let Some(d) = at(j).filter(|&d| is_ident_char(d)) {
                s.push(d);
                j += 1;
            }
            let tok = if s == "_" {
                Tok::Underscore
            } else {
                Tok::Ident(s)
            };
            out.push(Token {
                tok,
                span: Span::new(start, offset(j)),
            });
            i = j;
            continue;
        }
        let next = at(i + 1);
        let next2 = at(i + 2);
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBrack, 1),
            ']' => (Tok::RBrack, 1),
            '{' => (Tok::LBrace, 1),
            '}' if next == Some('>') && open.last() == Some(&true) => (Tok::BagClose, 2),
            '}' => (Tok::RBrace, 1),
            '⟨' => (Tok::BagOpen, 1),
            '⟩' => (Tok::BagClose, 1),
            ',' => (Tok::Comma, 1),
            ';' => (Tok::Semi, 1),
            ':' if next == Some('=') => (Tok::Assign, 2),
            ':' => (Tok::Colon, 1),
            '|' => (Tok::Bar, 1),
            '?' => (Tok::Question, 1),
            '→' => (Tok::Arrow, 1),
            '←' => (Tok::LArrow, 1),
            '.' if next == Some('.') && next2 == Some('.') => (Tok::DotDot, 3),
            '.' if next == Some('.') => (Tok::DotDot, 2),
            '.' => (Tok::Dot, 1),
            '…' => (Tok::DotDot, 1),
            '#' => (Tok::Hash, 1),
            '~' => (Tok::Tilde, 1),
            '@' => (Tok::At, 1),
            '+' => (Tok::Plus, 1),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '-' => (Tok::Minus, 1),
            '*' => (Tok::Star, 1),
            '/' if next == Some('/') => (Tok::SlashSlash, 2),
            '/' if next == Some('\\') => (Tok::And, 2),
            '/' => (Tok::Slash, 1),
            '\\' if next == Some('\\') => (Tok::BackBack, 2),
            '\\' if next == Some('/') => (Tok::Or, 2),
            '∧' => (Tok::And, 1),
            '∨' => (Tok::Or, 1),
            '¬' => (Tok::Not, 1),
            '!' if next == Some('=') => (Tok::Ne, 2),
            '!' => (Tok::Not, 1),
            '=' => (Tok::Eq, 1),
            '≠' => (Tok::Ne, 1),
            '<' if next == Some('{') => (Tok::BagOpen, 2),
            '<' if next == Some('-') => (Tok::LArrow, 2),
            '<' if next == Some('=') => (Tok::Le, 2),
            '<' => (Tok::Lt, 1),
            '≤' => (Tok::Le, 1),
            '>' if next == Some('=') => (Tok::Ge, 2),
            '>' => (Tok::Gt, 1),
            '≥' => (Tok::Ge, 1),
            other => {
                return Err(FrontendError::lex(
                    format!("unexpected character `{other}`"),
                    Span::new(start, start + other.len_utf8()),
                )
                .locate(src))
            }
        };
        match tok {
            Tok::LParen | Tok::LBrack | Tok::LBrace => open.push(false),
            Tok::BagOpen => open.push(c == '<'),
            Tok::RParen | Tok::RBrack | Tok::RBrace | Tok::BagClose => {
                open.pop();
            }
            _ => {}
        }
        out.push(Token {
            tok,
            span: Span::new(start, offset(i + len)),
        });
        i += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(src.len(), src.len()),
    });
    Ok(out)
}
