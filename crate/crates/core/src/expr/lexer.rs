use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Identifier,
    Operator,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Byte offset of the first character.
    pub position: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let kind = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                i = scan_number(bytes, i);
                TokenKind::Number
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                TokenKind::Identifier
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                i += 1;
                TokenKind::Operator
            }
            b'(' => {
                i += 1;
                TokenKind::LParen
            }
            b')' => {
                i += 1;
                TokenKind::RParen
            }
            b',' => {
                i += 1;
                TokenKind::Comma
            }
            _ => {
                let found = source[i..].chars().next().unwrap_or('\u{fffd}');
                return Err(Error::Lex { position: i, found });
            }
        };
        tokens.push(Token { kind, text: source[start..i].to_string(), position: start });
    }
    Ok(tokens)
}

// digits ('.' digits)? ([eE] [+-]? digits)?
fn scan_number(bytes: &[u8], mut i: usize) -> usize {
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    i = digits(i);
    if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
        i = digits(i + 1);
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            i = digits(j);
        }
    }
    i
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn nested_calls() {
        let toks = tokenize("exp(cos(log(t)))").unwrap();
        assert_eq!(toks.len(), 10);
        assert!(toks[7..].iter().all(|t| t.kind == TokenKind::RParen));
        assert!(toks.windows(2).all(|w| w[0].position < w[1].position));
        let joined: String = toks.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(joined, "exp(cos(log(t)))");
    }

    #[test]
    fn numbers() {
        let toks = tokenize("2^0.5").unwrap();
        assert_eq!(kinds("2^0.5"), vec![TokenKind::Number, TokenKind::Operator, TokenKind::Number]);
        assert_eq!(toks[2].text, "0.5");
        assert_eq!(tokenize("1.5e-3").unwrap()[0].text, "1.5e-3");
        // a trailing `e` without digits is the constant, not an exponent
        let toks = tokenize("2e").unwrap();
        assert_eq!(toks.len(), 2);
        assert_eq!(toks[1].kind, TokenKind::Identifier);
    }

    #[test]
    fn illegal_character() {
        assert_eq!(tokenize("e@t"), Err(Error::Lex { position: 1, found: '@' }));
        assert_eq!(tokenize("t + é").unwrap_err().position(), Some(4));
    }

    #[test]
    fn whitespace_is_skipped() {
        let toks = tokenize("  t *\t2 ").unwrap();
        assert_eq!(toks.len(), 3);
        assert_eq!(toks[0].position, 2);
        assert_eq!(toks[2].position, 6);
    }
}
