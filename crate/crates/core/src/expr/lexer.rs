//! Tokenizer for scalar expressions in the variables `t` and `u`.

use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Identifier,
    Operator,
    Paren,
    Comma,
}

/// A lexeme with its 0-based byte offset in the source.
///
/// Concatenating the lexemes in order reproduces the source with all
/// whitespace stripped; positions are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub position: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == '.' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit())
        {
            i = scan_number(bytes, i);
            tokens.push(Token {
                kind: TokenKind::Number,
                lexeme: source[start..i].to_string(),
                position: start,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Identifier,
                lexeme: source[start..i].to_string(),
                position: start,
            });
        } else {
            let kind = match c {
                '+' | '-' | '*' | '/' | '^' => TokenKind::Operator,
                '(' | ')' => TokenKind::Paren,
                ',' => TokenKind::Comma,
                _ => {
                    return Err(ParseError::new(
                        start,
                        format!("unexpected character '{c}'"),
                    ))
                }
            };
            i += 1;
            tokens.push(Token {
                kind,
                lexeme: source[start..i].to_string(),
                position: start,
            });
        }
    }
    Ok(tokens)
}

/// Scans a numeric literal: digits, optional fraction, optional exponent.
/// The exponent is only consumed when followed by a digit, so `2e` lexes
/// as the number `2` and the identifier `e`.
fn scan_number(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            i = j;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
    }
    i
}
