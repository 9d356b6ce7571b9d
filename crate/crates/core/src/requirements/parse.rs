//! Text syntax for requirements.
//!
//! ```text
//! formula := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '!' unary | 'G' '<=' INT unary | 'F' '<=' INT unary | primary
//! primary := '(' formula ')' | IDENT CMP INT
//! CMP     := '<=' | '<' | '=' | '>=' | '>'
//! ```
//!
//! Whitespace is insignificant. `G` and `F` are reserved and cannot name a
//! variable. `&` binds tighter than `|`; both associate to the left.

use std::num::NonZeroU32;

use thiserror::Error;

use super::{Comparator, Requirement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(i64),
    Cmp(Comparator),
    Not,
    And,
    Or,
    LParen,
    RParen,
}

fn describe(token: Option<&Token>) -> String {
    match token {
        None => "end of input".to_string(),
        Some(Token::Ident(name)) => format!("identifier `{name}`"),
        Some(Token::Int(v)) => format!("integer {v}"),
        Some(Token::Cmp(c)) => format!("`{}`", c.symbol()),
        Some(Token::Not) => "`!`".to_string(),
        Some(Token::And) => "`&`".to_string(),
        Some(Token::Or) => "`|`".to_string(),
        Some(Token::LParen) => "`(`".to_string(),
        Some(Token::RParen) => "`)`".to_string(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b if b.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'!' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'=' => Token::Cmp(Comparator::Eq),
            b'<' | b'>' => {
                let eq = bytes.get(i + 1) == Some(&b'=');
                if eq {
                    i += 1;
                }
                Token::Cmp(match (c, eq) {
                    (b'<', true) => Comparator::Le,
                    (b'<', false) => Comparator::Lt,
                    (_, true) => Comparator::Ge,
                    (_, false) => Comparator::Gt,
                })
            }
            b'-' | b'0'..=b'9' => {
                let mut end = i + 1;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let literal = &text[start..end];
                let value = literal
                    .parse::<i64>()
                    .map_err(|_| ParseError::new(start, format!("invalid integer `{literal}`")))?;
                i = end;
                tokens.push((start, Token::Int(value)));
                continue;
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let mut end = i + 1;
                while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
                {
                    end += 1;
                }
                i = end;
                tokens.push((start, Token::Ident(text[start..end].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
            }
        };
        i += 1;
        tokens.push((start, token));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        token
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(
            self.offset(),
            format!("expected {wanted}, found {}", describe(self.peek())),
        )
    }

    fn formula(&mut self) -> Result<Requirement, ParseError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.bump();
            left = Requirement::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Requirement, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.bump();
            left = Requirement::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Requirement, ParseError> {
        match self.peek() {
            Some(Token::Not) => {
                self.bump();
                Ok(Requirement::not(self.unary()?))
            }
            Some(Token::Ident(name)) if name == "G" || name == "F" => {
                let always = name == "G";
                self.bump();
                if self.peek() != Some(&Token::Cmp(Comparator::Le)) {
                    return Err(self.unexpected("`<=` after temporal operator"));
                }
                self.bump();
                let at = self.offset();
                let bound = match self.bump() {
                    Some(Token::Int(v)) => v,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("integer bound"));
                    }
                };
                if bound <= 0 {
                    return Err(ParseError::new(at, "bound must be positive"));
                }
                let bound = u32::try_from(bound)
                    .ok()
                    .and_then(NonZeroU32::new)
                    .ok_or_else(|| ParseError::new(at, "bound too large"))?;
                let child = Box::new(self.unary()?);
                Ok(if always {
                    Requirement::Always { bound, child }
                } else {
                    Requirement::Eventually { bound, child }
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Requirement, ParseError> {
        match self.peek() {
            Some(Token::LParen) => {
                self.bump();
                let inner = self.formula()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            Some(Token::Ident(_)) => {
                let Some(Token::Ident(var)) = self.bump() else {
                    unreachable!()
                };
                let cmp = match self.peek() {
                    Some(Token::Cmp(c)) => *c,
                    _ => return Err(self.unexpected("comparison operator")),
                };
                self.bump();
                let value = match self.peek() {
                    Some(Token::Int(v)) => *v,
                    _ => return Err(self.unexpected("integer constant")),
                };
                self.bump();
                Ok(Requirement::Atom { var, cmp, value })
            }
            _ => Err(self.unexpected("`(`, `!`, temporal operator or comparison")),
        }
    }
}

/// Parse a requirement from its text form.
pub fn parse(text: &str) -> Result<Requirement, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let formula = parser.formula()?;
    if parser.peek().is_some() {
        return Err(parser.unexpected("end of input"));
    }
    Ok(formula)
}
