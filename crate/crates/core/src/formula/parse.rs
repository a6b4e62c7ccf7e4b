//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! iff     := imp ("<->" iff)?
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := ("~" | "[]" | "<>") unary | primary
//! primary := ident | "true" | "false" | "(" iff ")"
//! ```
//!
//! The unicode connectives `¬ □ ◇ ∧ ∨ → ↔ ⊤ ⊥` are accepted as synonyms.

use super::Formula;
use alloc::string::{String, ToString};
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Empty,
    Unexpected {
        offset: usize,
        found: String,
        expected: &'static str,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => write!(f, "empty formula"),
            ParseError::Unexpected {
                offset,
                found,
                expected,
            } => write!(f, "at offset {offset}: expected {expected}, found {found}"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    Box,
    Dia,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => alloc::format!("identifier `{s}`"),
            Tok::End => "end of input".to_string(),
            Tok::True => "`true`".to_string(),
            Tok::False => "`false`".to_string(),
            Tok::Not => "`~`".to_string(),
            Tok::Box => "`[]`".to_string(),
            Tok::Dia => "`<>`".to_string(),
            Tok::And => "`&`".to_string(),
            Tok::Or => "`|`".to_string(),
            Tok::Imp => "`->`".to_string(),
            Tok::Iff => "`<->`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(usize, Tok), ParseError> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let start = self.pos;
        let mut chars = trimmed.chars();
        let Some(c) = chars.next() else {
            return Ok((start, Tok::End));
        };
        let (len, tok) = match c {
            '~' | '¬' => (c.len_utf8(), Tok::Not),
            '□' => (c.len_utf8(), Tok::Box),
            '◇' => (c.len_utf8(), Tok::Dia),
            '&' | '∧' => (c.len_utf8(), Tok::And),
            '|' | '∨' => (c.len_utf8(), Tok::Or),
            '→' => (c.len_utf8(), Tok::Imp),
            '↔' => (c.len_utf8(), Tok::Iff),
            '⊤' => (c.len_utf8(), Tok::True),
            '⊥' => (c.len_utf8(), Tok::False),
            '(' => (1, Tok::LParen),
            ')' => (1, Tok::RParen),
            '[' if trimmed.starts_with("[]") => (2, Tok::Box),
            '<' if trimmed.starts_with("<->") => (3, Tok::Iff),
            '<' if trimmed.starts_with("<>") => (2, Tok::Dia),
            '-' if trimmed.starts_with("->") => (2, Tok::Imp),
            c if c.is_ascii_alphabetic() => {
                let len = trimmed
                    .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                    .unwrap_or(trimmed.len());
                let word = &trimmed[..len];
                let tok = match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word.to_string()),
                };
                (len, tok)
            }
            other => {
                return Err(ParseError::Unexpected {
                    offset: start,
                    found: alloc::format!("character `{other}`"),
                    expected: "a formula token",
                })
            }
        };
        self.pos += len;
        Ok((start, tok))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(), ParseError> {
        let (offset, tok) = self.lexer.next_token()?;
        self.offset = offset;
        self.tok = tok;
        Ok(())
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            offset: self.offset,
            found: self.tok.describe(),
            expected,
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.tok == Tok::Iff {
            self.bump()?;
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.tok == Tok::Imp {
            self.bump()?;
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.tok == Tok::Or {
            self.bump()?;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.tok == Tok::And {
            self.bump()?;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.tok {
            Tok::Not => {
                self.bump()?;
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box => {
                self.bump()?;
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Dia => {
                self.bump()?;
                Ok(Formula::diamond(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let f = match &self.tok {
            Tok::Ident(name) => Formula::Var(name.clone()),
            Tok::True => Formula::Top,
            Tok::False => Formula::Bot,
            Tok::LParen => {
                self.bump()?;
                let inner = self.iff()?;
                if self.tok != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                inner
            }
            _ => return Err(self.unexpected("a variable, constant, `(` or prefix operator")),
        };
        self.bump()?;
        Ok(f)
    }
}

/// Parses a formula, reporting the byte offset of the first syntax error.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser {
        lexer: Lexer { src: text, pos: 0 },
        tok: Tok::End,
        offset: 0,
    };
    parser.bump()?;
    let f = parser.iff()?;
    if parser.tok != Tok::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(f)
}

impl core::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn box_or_box_not() {
        assert_eq!(
            parse("[]x | []~x").unwrap(),
            Formula::or(Formula::boxed(v("x")), Formula::boxed(Formula::not(v("x"))))
        );
    }

    #[test]
    fn atom() {
        assert_eq!(parse("p").unwrap(), v("p"));
    }

    #[test]
    fn lemmon_tree() {
        let side = |a: &str, b: &str| Formula::boxed(Formula::implies(Formula::boxed(v(a)), v(b)));
        assert_eq!(
            parse("[]([]x1 -> x2) | []([]x2 -> x1)").unwrap(),
            Formula::or(side("x1", "x2"), side("x2", "x1"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("a -> b -> c").unwrap(),
            Formula::implies(v("a"), Formula::implies(v("b"), v("c")))
        );
        assert_eq!(
            parse("a & b | c <-> d").unwrap(),
            Formula::iff(Formula::or(Formula::and(v("a"), v("b")), v("c")), v("d"))
        );
        assert_eq!(
            parse("~[]<>p & q").unwrap(),
            Formula::and(
                Formula::not(Formula::boxed(Formula::diamond(v("p")))),
                v("q")
            )
        );
        assert_eq!(parse("□◇p ↔ ◇□p"), parse("[]<>p <-> <>[]p"));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse("   "), Err(ParseError::Empty));
        match parse("p & ") {
            Err(ParseError::Unexpected { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse("(p | q") {
            Err(ParseError::Unexpected {
                offset, expected, ..
            }) => {
                assert_eq!(offset, 6);
                assert_eq!(expected, "`)`");
            }
            other => panic!("{other:?}"),
        }
        match parse("p $ q") {
            Err(ParseError::Unexpected { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse("p q").is_err());
        assert!(parse("1p").is_err());
    }
}
