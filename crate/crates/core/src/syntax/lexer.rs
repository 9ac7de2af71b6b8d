//! Tokenizer for the supported Java subset.
//!
//! Whitespace and comments are skipped; every token keeps the byte span it
//! was read from so later passes can slice the original text. `>` is always
//! emitted as a single-character token so that nested generic arguments
//! (`List<List<T>>`) close cleanly; the expression parser glues adjacent `>`
//! tokens back into shift and comparison operators.

use super::tree::Span;
use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Int,
    Float,
    Str,
    Char,
    Punct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

const PUNCT3: &[&str] = &["<<=", "..."];
const PUNCT2: &[&str] = &["==", "!=", "<=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", "->", "::"];

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'*') {
            let start = i;
            i += 2;
            loop {
                if i + 1 >= bytes.len() {
                    return Err(ParseError::at(text, start, "unterminated block comment"));
                }
                if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                    i += 2;
                    break;
                }
                i += 1;
            }
            continue;
        }
        let start = i;
        if is_ident_start(c) {
            i += 1;
            while i < bytes.len() && is_ident_continue(bytes[i]) {
                i += 1;
            }
            tokens.push(Token { kind: TokenKind::Ident, span: Span::new(start, i) });
            continue;
        }
        if c >= 0x80 {
            // Non-ASCII identifiers are legal Java; treat any multi-byte char run as part of one.
            let ch_len = text[i..].chars().next().map(char::len_utf8).unwrap_or(1);
            i += ch_len;
            while i < bytes.len() && (is_ident_continue(bytes[i]) || bytes[i] >= 0x80) {
                i += text[i..].chars().next().map(char::len_utf8).unwrap_or(1);
            }
            tokens.push(Token { kind: TokenKind::Ident, span: Span::new(start, i) });
            continue;
        }
        if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            let (end, is_float) = scan_number(bytes, i);
            i = end;
            let kind = if is_float { TokenKind::Float } else { TokenKind::Int };
            tokens.push(Token { kind, span: Span::new(start, i) });
            continue;
        }
        if c == b'"' {
            if bytes[i..].starts_with(b"\"\"\"") {
                i += 3;
                loop {
                    if i + 2 >= bytes.len() {
                        return Err(ParseError::at(text, start, "unterminated text block"));
                    }
                    if bytes[i] == b'\\' {
                        i += 2;
                        continue;
                    }
                    if bytes[i..].starts_with(b"\"\"\"") {
                        i += 3;
                        break;
                    }
                    i += 1;
                }
            } else {
                i = scan_quoted(text, i, b'"')?;
            }
            tokens.push(Token { kind: TokenKind::Str, span: Span::new(start, i) });
            continue;
        }
        if c == b'\'' {
            i = scan_quoted(text, i, b'\'')?;
            tokens.push(Token { kind: TokenKind::Char, span: Span::new(start, i) });
            continue;
        }
        let rest = &text[i..];
        let len = if rest.starts_with('>') {
            1
        } else if PUNCT3.iter().any(|p| rest.starts_with(p)) {
            3
        } else if PUNCT2.iter().any(|p| rest.starts_with(p)) {
            2
        } else if is_single_punct(c) {
            1
        } else {
            return Err(ParseError::at(text, i, format!("unexpected character `{}`", rest.chars().next().unwrap_or('?'))));
        };
        i += len;
        tokens.push(Token { kind: TokenKind::Punct, span: Span::new(start, i) });
    }
    Ok(tokens)
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_' || c == b'$'
}

fn is_ident_continue(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'$'
}

fn is_single_punct(c: u8) -> bool {
    b"(){}[];,.@=<>!~?:+-*/&|^%".contains(&c)
}

fn scan_number(bytes: &[u8], mut i: usize) -> (usize, bool) {
    let mut is_float = false;
    if bytes[i] == b'0' && matches!(bytes.get(i + 1), Some(b'x' | b'X' | b'b' | b'B')) {
        i += 2;
        while i < bytes.len() && (bytes[i].is_ascii_hexdigit() || bytes[i] == b'_') {
            i += 1;
        }
    } else {
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'_') {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
            is_float = true;
            i += 1;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'_') {
                i += 1;
            }
        } else if i < bytes.len() && bytes[i] == b'.' && !bytes.get(i + 1).is_some_and(|b| is_ident_start(*b)) {
            // `1.` is a valid double literal.
            is_float = true;
            i += 1;
        }
        if i < bytes.len() && matches!(bytes[i], b'e' | b'E') {
            let mut j = i + 1;
            if j < bytes.len() && matches!(bytes[j], b'+' | b'-') {
                j += 1;
            }
            if j < bytes.len() && bytes[j].is_ascii_digit() {
                is_float = true;
                i = j;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
        }
    }
    if i < bytes.len() {
        match bytes[i] {
            b'l' | b'L' => i += 1,
            b'f' | b'F' | b'd' | b'D' => {
                is_float = true;
                i += 1;
            }
            _ => {}
        }
    }
    (i, is_float)
}

fn scan_quoted(text: &str, start: usize, quote: u8) -> Result<usize, ParseError> {
    let bytes = text.as_bytes();
    let mut i = start + 1;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b'\n' => break,
            b if b == quote => return Ok(i + 1),
            _ => i += 1,
        }
    }
    Err(ParseError::at(text, start, "unterminated literal"))
}
