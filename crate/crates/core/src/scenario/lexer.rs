use std::sync::Arc;

use super::{ScenarioError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Punct(&'static str),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(i) => format!("'{i}'"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Punct(p) => format!("'{p}'"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

const PUNCT: [&str; 17] = [
    "==", "=", ";", ",", "(", ")", "[", "]", "{", "}", "+", "-", "*", "^", "/", "?", ".",
];

pub fn tokenize(file: &Arc<str>, src: &str) -> Result<Vec<Token>, ScenarioError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    let span = |line, col| Span {
        file: file.clone(),
        line,
        col,
    };
    while i < chars.len() {
        let c = chars[i];
        let start = span(line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
        } else if c.is_ascii_digit() {
            let j = (i..chars.len())
                .find(|&j| !chars[j].is_ascii_digit())
                .unwrap_or(chars.len());
            let text: String = chars[i..j].iter().collect();
            let value = text.parse().map_err(|_| ScenarioError::Syntax {
                at: start.clone(),
                message: format!("integer literal {text} is too large"),
            })?;
            out.push(Token {
                tok: Tok::Int(value),
                span: start,
            });
            let k = j - i;
            i += k;
            col += k as u32;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let j = (i..chars.len())
                .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                .unwrap_or(chars.len());
            out.push(Token {
                tok: Tok::Ident(chars[i..j].iter().collect()),
                span: start,
            });
            let k = j - i;
            i += k;
            col += k as u32;
        } else if c == '"' {
            let j = (i + 1..chars.len())
                .find(|&j| chars[j] == '"' || chars[j] == '\n')
                .filter(|&j| chars[j] == '"')
                .ok_or_else(|| ScenarioError::Syntax {
                    at: start.clone(),
                    message: "unterminated string".into(),
                })?;
            out.push(Token {
                tok: Tok::Str(chars[i + 1..j].iter().collect()),
                span: start,
            });
            let k = j + 1 - i;
            i += k;
            col += k as u32;
        } else {
            let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let p = PUNCT
                .iter()
                .find(|p| rest.starts_with(**p))
                .ok_or_else(|| ScenarioError::Syntax {
                    at: start.clone(),
                    message: format!("unexpected character '{c}'"),
                })?;
            out.push(Token {
                tok: Tok::Punct(p),
                span: start,
            });
            let k = p.len();
            i += k;
            col += k as u32;
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        span: span(line, col),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let file: Arc<str> = Arc::from("x.vgl");
        let toks = tokenize(&file, "let a = s[2]; # note\nassert a == L^-1;").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[0], Tok::Ident("let".into()));
        assert_eq!(kinds[3], Tok::Ident("s".into()));
        assert_eq!(kinds[4], Tok::Punct("["));
        let assert_tok = toks
            .iter()
            .find(|t| t.tok == Tok::Ident("assert".into()))
            .unwrap();
        assert_eq!((assert_tok.span.line, assert_tok.span.col), (2, 1));
        assert!(kinds.contains(&Tok::Punct("==")));
        assert_eq!(kinds.last(), Some(&Tok::Eof));
    }

    #[test]
    fn rejects_stray_characters() {
        let file: Arc<str> = Arc::from("x.vgl");
        let err = tokenize(&file, "let a = 1 @ 2;").unwrap_err();
        assert!(err.to_string().contains("x.vgl:1:11"), "{err}");
        assert!(tokenize(&file, "stratum \"4b").is_err());
    }
}
