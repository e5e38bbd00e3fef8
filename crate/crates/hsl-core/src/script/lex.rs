//! Tokenizer. Byte offsets are kept so the parser can slice polynomial
//! sources verbatim out of the input.

use super::{ScriptError, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Tok {
    Ident(String),
    Nat(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Colon,
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
}

impl Tok {
    pub(super) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(super) struct SpannedTok {
    pub tok: Tok,
    pub span: Span,
    /// Byte range in the source, for verbatim slicing.
    pub start: usize,
    pub end: usize,
}

pub(super) fn tokenize(src: &str) -> Result<Vec<SpannedTok>, ScriptError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut it = src.char_indices().peekable();
    while let Some(&(at, c)) = it.peek() {
        let span = Span { line, col };
        match c {
            '\n' => {
                it.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                it.next();
                col += 1;
            }
            '#' => {
                while let Some(&(_, c)) = it.peek() {
                    if c == '\n' {
                        break;
                    }
                    it.next();
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = at;
                let mut name = String::new();
                while let Some(&(i, c)) = it.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        end = i + c.len_utf8();
                        it.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push(SpannedTok { tok: Tok::Ident(name), span, start: at, end });
            }
            c if c.is_ascii_digit() => {
                let mut end = at;
                let mut n: u64 = 0;
                while let Some(&(i, c)) = it.peek() {
                    if let Some(d) = c.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(d as u64))
                            .ok_or_else(|| ScriptError::Syntax {
                                span,
                                message: "number does not fit in 64 bits".into(),
                            })?;
                        end = i + 1;
                        it.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push(SpannedTok { tok: Tok::Nat(n), span, start: at, end });
            }
            _ => {
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '=' => Tok::Eq,
                    ':' => Tok::Colon,
                    '/' => Tok::Slash,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    other => {
                        return Err(ScriptError::Syntax {
                            span,
                            message: format!("unexpected character `{other}`"),
                        })
                    }
                };
                it.next();
                col += 1;
                toks.push(SpannedTok { tok, span, start: at, end: at + c.len_utf8() });
            }
        }
    }
    Ok(toks)
}
