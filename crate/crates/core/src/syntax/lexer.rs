use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Equals,
    And,
    Imp,
    Iff,
    Bottom,
    Neg,
    Forall,
    Exists,
    Exists1,
    Extension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the token in the source text.
    pub offset: usize,
}

/// Splits ASCII input notation into tokens.
///
/// `v` is lexed as an identifier; the parser reads it as disjunction only in
/// connective position, so `v` stays usable as a variable name.
pub fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let rest = &text[i..];
        let kind = if c.is_ascii_whitespace() {
            i += 1;
            continue;
        } else if rest.starts_with("_|_") {
            i += 3;
            TokenKind::Bottom
        } else if rest.starts_with("<->") {
            i += 3;
            TokenKind::Iff
        } else if rest.starts_with("->") {
            i += 2;
            TokenKind::Imp
        } else if c.is_ascii_alphanumeric() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            match &text[start..i] {
                "neg" => TokenKind::Neg,
                "forall" => TokenKind::Forall,
                "exists" => TokenKind::Exists,
                "exists1" => TokenKind::Exists1,
                "extension" => TokenKind::Extension,
                word => TokenKind::Ident(word.to_string()),
            }
        } else {
            i += 1;
            match c {
                b'(' => TokenKind::LParen,
                b')' => TokenKind::RParen,
                b',' => TokenKind::Comma,
                b'.' => TokenKind::Dot,
                b'=' => TokenKind::Equals,
                b'&' => TokenKind::And,
                _ => {
                    let ch = rest.chars().next().unwrap_or('?');
                    return Err(SyntaxError::Lexical { offset: start, ch });
                }
            }
        };
        out.push(Token {
            kind,
            offset: start,
        });
    }
    Ok(out)
}
