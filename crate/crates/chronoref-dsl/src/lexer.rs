//! Tokenizer for the `.chrono` surface syntax.
//!
//! Identifiers start with an ASCII letter or underscore and may contain
//! digits, underscores and dashes (the dash is what makes claim keywords
//! like `preserve-subclock` single tokens). `#` comments run to end of
//! line. Positions are 1-based and count characters, not bytes.

use crate::diagnostics::{DiagnosticKind, ParseDiagnostic};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Int(u32),
    LBrace,
    RBrace,
    Comma,
    Semi,
    At,
    Equals,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("identifier {name:?}"),
            TokenKind::Int(value) => format!("integer {value}"),
            TokenKind::LBrace => "'{'".to_owned(),
            TokenKind::RBrace => "'}'".to_owned(),
            TokenKind::Comma => "','".to_owned(),
            TokenKind::Semi => "';'".to_owned(),
            TokenKind::At => "'@'".to_owned(),
            TokenKind::Equals => "'='".to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: u32,
    pub column: u32,
}

pub(crate) fn lex(source: &str) -> (Vec<Token>, Vec<ParseDiagnostic>) {
    let mut tokens = Vec::new();
    let mut diagnostics = Vec::new();
    let mut chars = source.chars().peekable();
    let mut line: u32 = 1;
    let mut column: u32 = 1;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if let Some(c) = c {
                if c == '\n' {
                    line += 1;
                    column = 1;
                } else {
                    column += 1;
                }
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tok_line, tok_column) = (line, column);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            '{' | '}' | ',' | ';' | '@' | '=' => {
                bump!();
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    ',' => TokenKind::Comma,
                    ';' => TokenKind::Semi,
                    '@' => TokenKind::At,
                    _ => TokenKind::Equals,
                };
                tokens.push(Token {
                    kind,
                    line: tok_line,
                    column: tok_column,
                });
            }
            '0'..='9' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        text.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                match text.parse::<u32>() {
                    Ok(value) => tokens.push(Token {
                        kind: TokenKind::Int(value),
                        line: tok_line,
                        column: tok_column,
                    }),
                    Err(_) => diagnostics.push(ParseDiagnostic {
                        line: tok_line,
                        column: tok_column,
                        kind: DiagnosticKind::Syntax,
                        message: format!("integer {text} is too large"),
                    }),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                        text.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text),
                    line: tok_line,
                    column: tok_column,
                });
            }
            other => {
                bump!();
                diagnostics.push(ParseDiagnostic {
                    line: tok_line,
                    column: tok_column,
                    kind: DiagnosticKind::Syntax,
                    message: format!("unexpected character {other:?}"),
                });
            }
        }
    }
    (tokens, diagnostics)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_a_statement() {
        let (tokens, diags) = lex("universe 15; # trailing\n");
        assert!(diags.is_empty());
        assert_eq!(tokens.len(), 3);
        assert_eq!(tokens[0].kind, TokenKind::Ident("universe".into()));
        assert_eq!(tokens[1].kind, TokenKind::Int(15));
        assert_eq!(tokens[2].kind, TokenKind::Semi);
    }

    #[test]
    fn dashes_join_identifiers() {
        let (tokens, _) = lex("preserve-subclock");
        assert_eq!(tokens.len(), 1);
        assert_eq!(tokens[0].kind, TokenKind::Ident("preserve-subclock".into()));
    }

    #[test]
    fn positions_are_one_based_lines_and_columns() {
        let (tokens, _) = lex("a\n  b");
        assert_eq!((tokens[0].line, tokens[0].column), (1, 1));
        assert_eq!((tokens[1].line, tokens[1].column), (2, 3));
    }

    #[test]
    fn bad_characters_become_diagnostics() {
        let (tokens, diags) = lex("универс 1;");
        assert!(!diags.is_empty());
        assert!(tokens.iter().any(|t| t.kind == TokenKind::Int(1)));
    }

    #[test]
    fn oversized_integers_become_diagnostics() {
        let (_, diags) = lex("universe 99999999999;");
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("too large"));
    }
}
