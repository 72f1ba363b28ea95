//! Tokenizer for the SMT-LIB subset. Comments (`;` to end of line) are
//! stripped here.

use super::SmtError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    LParen,
    RParen,
    /// Symbols, keywords, numerals, #x/#b literals, quoted symbols, and
    /// string literals, all kept verbatim.
    Atom(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/:".contains(c)
}

pub fn lex(src: &str) -> Result<Vec<Token>, SmtError> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    while let Some(&c) = chars.peek() {
        let (tok_line, tok_col) = (line, col);
        let advance = |chars: &mut std::iter::Peekable<std::str::Chars>,
                           line: &mut usize,
                           col: &mut usize|
         -> Option<char> {
            let c = chars.next()?;
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            Some(c)
        };

        match c {
            '(' => {
                advance(&mut chars, &mut line, &mut col);
                tokens.push(Token {
                    kind: TokenKind::LParen,
                    line: tok_line,
                    col: tok_col,
                });
            }
            ')' => {
                advance(&mut chars, &mut line, &mut col);
                tokens.push(Token {
                    kind: TokenKind::RParen,
                    line: tok_line,
                    col: tok_col,
                });
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    advance(&mut chars, &mut line, &mut col);
                }
            }
            c if c.is_whitespace() => {
                advance(&mut chars, &mut line, &mut col);
            }
            '"' => {
                let mut text = String::new();
                text.push(advance(&mut chars, &mut line, &mut col).unwrap());
                let mut closed = false;
                while let Some(&c) = chars.peek() {
                    text.push(advance(&mut chars, &mut line, &mut col).unwrap());
                    if c == '"' {
                        // SMT-LIB escapes a quote by doubling it.
                        if chars.peek() == Some(&'"') {
                            text.push(advance(&mut chars, &mut line, &mut col).unwrap());
                        } else {
                            closed = true;
                            break;
                        }
                    }
                }
                if !closed {
                    return Err(SmtError::Lex {
                        line: tok_line,
                        col: tok_col,
                        msg: "unterminated string literal".into(),
                    });
                }
                tokens.push(Token {
                    kind: TokenKind::Atom(text),
                    line: tok_line,
                    col: tok_col,
                });
            }
            '|' => {
                let mut text = String::new();
                text.push(advance(&mut chars, &mut line, &mut col).unwrap());
                let mut closed = false;
                while let Some(&c) = chars.peek() {
                    text.push(advance(&mut chars, &mut line, &mut col).unwrap());
                    if c == '|' {
                        closed = true;
                        break;
                    }
                }
                if !closed {
                    return Err(SmtError::Lex {
                        line: tok_line,
                        col: tok_col,
                        msg: "unterminated quoted symbol".into(),
                    });
                }
                tokens.push(Token {
                    kind: TokenKind::Atom(text),
                    line: tok_line,
                    col: tok_col,
                });
            }
            '#' => {
                let mut text = String::new();
                text.push(advance(&mut chars, &mut line, &mut col).unwrap());
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() {
                        text.push(advance(&mut chars, &mut line, &mut col).unwrap());
                    } else {
                        break;
                    }
                }
                if text.len() < 3 || !(text.starts_with("#x") || text.starts_with("#b")) {
                    return Err(SmtError::Lex {
                        line: tok_line,
                        col: tok_col,
                        msg: format!("malformed literal `{text}`"),
                    });
                }
                tokens.push(Token {
                    kind: TokenKind::Atom(text),
                    line: tok_line,
                    col: tok_col,
                });
            }
            c if is_symbol_char(c) => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if is_symbol_char(c) {
                        text.push(advance(&mut chars, &mut line, &mut col).unwrap());
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Atom(text),
                    line: tok_line,
                    col: tok_col,
                });
            }
            other => {
                return Err(SmtError::Lex {
                    line: tok_line,
                    col: tok_col,
                    msg: format!("illegal character `{other}`"),
                });
            }
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(src: &str) -> Vec<String> {
        lex(src)
            .unwrap()
            .into_iter()
            .filter_map(|t| match t.kind {
                TokenKind::Atom(a) => Some(a),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn lexes_basic_script() {
        let toks = lex("(declare-const x Bool)\n(assert x)").unwrap();
        assert_eq!(toks.len(), 9);
        assert_eq!(toks[0].kind, TokenKind::LParen);
        assert_eq!(toks[1].kind, TokenKind::Atom("declare-const".into()));
        assert_eq!(toks[5].line, 2);
    }

    #[test]
    fn strips_comments() {
        assert_eq!(atoms("; a comment\nx ; trailing\ny"), vec!["x", "y"]);
    }

    #[test]
    fn bitvec_literals() {
        assert_eq!(atoms("#x0A #b101"), vec!["#x0A", "#b101"]);
        assert!(lex("#").is_err());
        assert!(lex("#z12").is_err());
    }

    #[test]
    fn rejects_non_smtlib_characters() {
        let err = lex("(assert ∀x)").unwrap_err();
        match err {
            SmtError::Lex { msg, .. } => assert!(msg.contains('∀')),
            other => panic!("expected lex error, got {other:?}"),
        }
        assert!(lex("⟨symbol⟩").is_err());
    }

    #[test]
    fn tracks_positions() {
        let toks = lex("x\n  y").unwrap();
        assert_eq!((toks[0].line, toks[0].col), (1, 1));
        assert_eq!((toks[1].line, toks[1].col), (2, 3));
    }
}
