//! SQL tokenizer with byte offsets and canonical token text.
//!
//! Every token remembers its byte offset (for error reporting) and a
//! canonical rendering (`text`): quoted identifiers are normalized to
//! double-quote form so that re-joining a token slice is a fixed point of
//! lex-then-join. `value` carries the logical identifier spelling.

use super::DdlError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TokKind {
    Ident,
    QuotedIdent,
    Number,
    Str,
    LParen,
    RParen,
    Comma,
    Semi,
    Dot,
    Op,
}

#[derive(Debug, Clone)]
pub(crate) struct Tok {
    pub kind: TokKind,
    /// Canonical rendering used when re-joining token slices.
    pub text: String,
    /// Identifier value without quotes; equals `text` for other kinds.
    pub value: String,
    pub offset: usize,
}

impl Tok {
    pub fn is_kw(&self, kw: &str) -> bool {
        self.kind == TokKind::Ident && self.value.eq_ignore_ascii_case(kw)
    }

    pub fn is_ident(&self) -> bool {
        matches!(self.kind, TokKind::Ident | TokKind::QuotedIdent)
    }
}

fn err(offset: usize, excerpt: &str, message: impl Into<String>) -> DdlError {
    DdlError::Parse {
        offset,
        statement: excerpt.chars().take(48).collect(),
        message: message.into(),
    }
}

pub(crate) fn lex(src: &str) -> Result<Vec<Tok>, DdlError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'-' if bytes.get(i + 1) == Some(&b'-') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if bytes.get(i + 1) == Some(&b'*') => {
                let start = i;
                i += 2;
                loop {
                    if i + 1 >= bytes.len() {
                        return Err(err(start, &src[start..], "unterminated block comment"));
                    }
                    if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                        i += 2;
                        break;
                    }
                    i += 1;
                }
            }
            b'\'' => {
                let start = i;
                i += 1;
                loop {
                    match bytes.get(i) {
                        None => return Err(err(start, &src[start..], "unterminated string literal")),
                        Some(b'\'') if bytes.get(i + 1) == Some(&b'\'') => i += 2,
                        Some(b'\'') => {
                            i += 1;
                            break;
                        }
                        Some(_) => i += 1,
                    }
                }
                let text = src[start..i].to_string();
                toks.push(Tok { kind: TokKind::Str, value: text.clone(), text, offset: start });
            }
            b'"' | b'`' | b'[' => {
                let (open, close) = match b {
                    b'"' => (b'"', b'"'),
                    b'`' => (b'`', b'`'),
                    _ => (b'[', b']'),
                };
                let start = i;
                i += 1;
                let mut value = String::new();
                loop {
                    match bytes.get(i) {
                        None => return Err(err(start, &src[start..], "unterminated quoted identifier")),
                        Some(&c) if c == close && open == close && bytes.get(i + 1) == Some(&close) => {
                            value.push(close as char);
                            i += 2;
                        }
                        Some(&c) if c == close => {
                            i += 1;
                            break;
                        }
                        Some(_) => {
                            // advance one UTF-8 scalar
                            let ch_len = src[i..].chars().next().map_or(1, char::len_utf8);
                            value.push_str(&src[i..i + ch_len]);
                            i += ch_len;
                        }
                    }
                }
                let text = format!("\"{}\"", value.replace('"', "\"\""));
                toks.push(Tok { kind: TokKind::QuotedIdent, text, value, offset: start });
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'.') {
                    // keep "1.5" together but stop before "..": not valid SQL anyway
                    i += 1;
                }
                let text = src[start..i].to_string();
                toks.push(Tok { kind: TokKind::Number, value: text.clone(), text, offset: start });
            }
            b'(' | b')' | b',' | b';' | b'.' => {
                let kind = match b {
                    b'(' => TokKind::LParen,
                    b')' => TokKind::RParen,
                    b',' => TokKind::Comma,
                    b';' => TokKind::Semi,
                    _ => TokKind::Dot,
                };
                let text = (b as char).to_string();
                toks.push(Tok { kind, value: text.clone(), text, offset: i });
                i += 1;
            }
            _ if b.is_ascii_alphabetic() || b == b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'$')
                {
                    i += 1;
                }
                let text = src[start..i].to_string();
                toks.push(Tok { kind: TokKind::Ident, value: text.clone(), text, offset: start });
            }
            _ => {
                let ch_len = src[i..].chars().next().map_or(1, char::len_utf8);
                let text = src[i..i + ch_len].to_string();
                toks.push(Tok { kind: TokKind::Op, value: text.clone(), text, offset: i });
                i += ch_len;
            }
        }
    }
    Ok(toks)
}

/// Joins token texts back into canonical SQL: single spaces everywhere
/// except around parentheses, dots, and before commas/semicolons. Lexing
/// the result reproduces the same token texts.
pub(crate) fn canonical_join(toks: &[Tok]) -> String {
    let mut out = String::new();
    for (i, tok) in toks.iter().enumerate() {
        if i > 0 {
            let prev = &toks[i - 1];
            let no_space = matches!(tok.kind, TokKind::RParen | TokKind::Comma | TokKind::Semi | TokKind::Dot | TokKind::LParen)
                || matches!(prev.kind, TokKind::LParen | TokKind::Dot);
            if !no_space {
                out.push(' ');
            }
        }
        out.push_str(&tok.text);
    }
    out
}
