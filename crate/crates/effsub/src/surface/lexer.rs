//! Tokenizer for the concrete syntax. Rule names like `T-Sub` lex as a
//! single word; `->` is its own token so identifiers may not contain dashes.

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Word(String),
    Nat(u64),
    Quoted(String),
    Backslash,
    Dot,
    LAngle,
    RAngle,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Plus,
    Star,
    Comma,
    At,
    Arrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Quoted(_) => "quoted string".to_string(),
            Tok::Backslash => "`\\`".to_string(),
            Tok::Dot => "`.`".to_string(),
            Tok::LAngle => "`<`".to_string(),
            Tok::RAngle => "`>`".to_string(),
            Tok::LBrack => "`[`".to_string(),
            Tok::RBrack => "`]`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::Plus => "`+`".to_string(),
            Tok::Star => "`*`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::At => "`@`".to_string(),
            Tok::Arrow => "`->`".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    macro_rules! push {
        ($tok:expr, $l:expr, $c:expr) => {
            tokens.push(Token { tok: $tok, line: $l, col: $c })
        };
    }

    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '\\' => {
                chars.next();
                col += 1;
                push!(Tok::Backslash, tl, tc);
            }
            '.' => {
                chars.next();
                col += 1;
                push!(Tok::Dot, tl, tc);
            }
            '<' => {
                chars.next();
                col += 1;
                push!(Tok::LAngle, tl, tc);
            }
            '>' => {
                chars.next();
                col += 1;
                push!(Tok::RAngle, tl, tc);
            }
            '[' => {
                chars.next();
                col += 1;
                push!(Tok::LBrack, tl, tc);
            }
            ']' => {
                chars.next();
                col += 1;
                push!(Tok::RBrack, tl, tc);
            }
            '(' => {
                chars.next();
                col += 1;
                push!(Tok::LParen, tl, tc);
            }
            ')' => {
                chars.next();
                col += 1;
                push!(Tok::RParen, tl, tc);
            }
            '+' => {
                chars.next();
                col += 1;
                push!(Tok::Plus, tl, tc);
            }
            '*' => {
                chars.next();
                col += 1;
                push!(Tok::Star, tl, tc);
            }
            ',' => {
                chars.next();
                col += 1;
                push!(Tok::Comma, tl, tc);
            }
            '@' => {
                chars.next();
                col += 1;
                push!(Tok::At, tl, tc);
            }
            '-' => {
                chars.next();
                col += 1;
                match chars.peek() {
                    Some('>') => {
                        chars.next();
                        col += 1;
                        push!(Tok::Arrow, tl, tc);
                    }
                    _ => {
                        return Err(ParseError::new(tl, tc, "`->`", "`-`"));
                    }
                }
            }
            '"' => {
                chars.next();
                col += 1;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => {
                            col += 1;
                            break;
                        }
                        Some('\n') => {
                            return Err(ParseError::new(line, col, "closing `\"`", "newline"));
                        }
                        Some(ch) => {
                            col += 1;
                            s.push(ch);
                        }
                        None => {
                            return Err(ParseError::new(line, col, "closing `\"`", "end of input"));
                        }
                    }
                }
                push!(Tok::Quoted(s), tl, tc);
            }
            c if c.is_ascii_digit() => {
                let mut n: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n = n.wrapping_mul(10).wrapping_add((d as u8 - b'0') as u64);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                push!(Tok::Nat(n), tl, tc);
            }
            c if c.is_ascii_alphabetic() => {
                let mut w = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        w.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                // Rule names: a lone `T` or `S` followed by `-Word`.
                if (w == "T" || w == "S") && chars.peek() == Some(&'-') {
                    let mut lookahead = chars.clone();
                    lookahead.next();
                    if lookahead.peek().is_some_and(|d| d.is_ascii_alphabetic()) {
                        chars.next();
                        col += 1;
                        w.push('-');
                        while let Some(&d) = chars.peek() {
                            if d.is_ascii_alphanumeric() {
                                w.push(d);
                                chars.next();
                                col += 1;
                            } else {
                                break;
                            }
                        }
                    }
                }
                push!(Tok::Word(w), tl, tc);
            }
            other => {
                return Err(ParseError::new(line, col, "a token", &format!("`{other}`")));
            }
        }
    }
    tokens.push(Token { tok: Tok::Eof, line, col });
    Ok(tokens)
}
