//! The textual term language shared by every module and the CLI.
//!
//! ```text
//! term     := seq
//! seq      := par (";" par)*          vertical composition, top to bottom
//! par      := primary ("|" primary)*  horizontal composition
//! primary  := atom | "(" seq ")"
//! atom     := "id" | "eps" | "delta" | "mu(" rational ")" | "h(" rational ")"
//!           | "swap" | "sigma[" ints "]" | "tau[" ints "]"
//! rational := int "/" int | int
//! ```
//!
//! `sigma[p]` sends input `i` to output `p(i)`; `tau[p]` is its inverse, so
//! output `j` receives input `p(j)`. Horizontal composition binds tighter
//! than vertical composition.

use num::Signed;
use thiserror::Error;

use crate::graph::{Generator, GraphError, GraphTerm, Vertex};
use crate::perm::Permutation;
use crate::rational::{parse_rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at offset {at}")]
    UnexpectedChar { ch: char, at: usize },
    #[error("expected {expected} at offset {at}")]
    Expected { expected: String, at: usize },
    #[error("unknown atom `{name}` at offset {at}")]
    UnknownAtom { name: String, at: usize },
    #[error("parameter {value} at offset {at} lies outside [0,1]")]
    ParameterRange { value: String, at: usize },
    #[error("invalid permutation at offset {at}: {reason}")]
    Permutation { at: usize, reason: String },
    #[error("composition at offset {at} failed: {source}")]
    Compose { at: usize, source: GraphError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(String),
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Bar,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (at, c) = chars[k];
        let single = match c {
            '/' => Some(Token::Slash),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            ',' => Some(Token::Comma),
            ';' => Some(Token::Semi),
            '|' => Some(Token::Bar),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, at));
            k += 1;
        } else if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '-' {
            let start = k;
            k += 1;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            out.push((Token::Int(chars[start..k].iter().map(|x| x.1).collect()), at));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            out.push((Token::Ident(chars[start..k].iter().map(|x| x.1).collect()), at));
        } else {
            return Err(ParseError::UnexpectedChar { ch: c, at });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Expected { expected: what.to_string(), at: self.offset() })
        }
    }

    fn seq(&mut self) -> Result<GraphTerm, ParseError> {
        let mut acc = self.par()?;
        while self.peek() == Some(&Token::Semi) {
            let at = self.offset();
            self.pos += 1;
            let next = self.par()?;
            acc = acc.then(&next).map_err(|source| ParseError::Compose { at, source })?;
        }
        Ok(acc)
    }

    fn par(&mut self) -> Result<GraphTerm, ParseError> {
        let mut parts = vec![self.primary()?];
        while self.peek() == Some(&Token::Bar) {
            self.pos += 1;
            parts.push(self.primary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { GraphTerm::horizontal_compose(&parts) })
    }

    fn primary(&mut self) -> Result<GraphTerm, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.seq()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.atom(&name, at)
            }
            _ => Err(ParseError::Expected { expected: "a term".into(), at }),
        }
    }

    fn atom(&mut self, name: &str, at: usize) -> Result<GraphTerm, ParseError> {
        match name {
            "id" => Ok(GraphTerm::unit(1)),
            "eps" => Ok(GraphTerm::corolla(Vertex::plain(Generator::Counit))),
            "delta" => Ok(GraphTerm::corolla(Vertex::plain(Generator::Coproduct))),
            "mu" | "h" => {
                self.expect(Token::LParen, "`(`")?;
                let s = self.rational()?;
                self.expect(Token::RParen, "`)`")?;
                let generator = if name == "mu" { Generator::Product } else { Generator::CounitHomotopy };
                Ok(GraphTerm::corolla(Vertex::new(generator, vec![s])))
            }
            "swap" => Ok(GraphTerm::permutation(&Permutation::transposition(2, 0, 1))),
            "sigma" | "tau" => {
                self.expect(Token::LBracket, "`[`")?;
                let mut images = Vec::new();
                if self.peek() != Some(&Token::RBracket) {
                    images.push(self.int()?);
                    while self.peek() == Some(&Token::Comma) {
                        self.pos += 1;
                        images.push(self.int()?);
                    }
                }
                self.expect(Token::RBracket, "`]`")?;
                let p = Permutation::from_one_based(&images)
                    .map_err(|e| ParseError::Permutation { at, reason: e.to_string() })?;
                let p = if name == "sigma" { p } else { p.inverse() };
                Ok(GraphTerm::permutation(&p))
            }
            other => Err(ParseError::UnknownAtom { name: other.to_string(), at }),
        }
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(s)) => {
                self.pos += 1;
                s.parse().map_err(|_| ParseError::Expected { expected: "a positive integer".into(), at })
            }
            _ => Err(ParseError::Expected { expected: "an integer".into(), at }),
        }
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        let at = self.offset();
        let num = match self.peek().cloned() {
            Some(Token::Int(s)) => {
                self.pos += 1;
                s
            }
            _ => return Err(ParseError::Expected { expected: "a rational".into(), at }),
        };
        let text = if self.peek() == Some(&Token::Slash) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(d)) => {
                    self.pos += 1;
                    format!("{}/{}", num, d)
                }
                _ => return Err(ParseError::Expected { expected: "a denominator".into(), at: self.offset() }),
            }
        } else {
            num
        };
        let value = parse_rational(&text).map_err(|_| ParseError::Expected { expected: "a rational".into(), at })?;
        if value.is_negative() || value > Q::from_integer(1.into()) {
            return Err(ParseError::ParameterRange { value: text, at });
        }
        Ok(value)
    }
}

/// Parses a term into a valid graph.
pub fn parse_term(text: &str) -> Result<GraphTerm, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len() };
    let g = parser.seq()?;
    if parser.pos != parser.tokens.len() {
        return Err(ParseError::Expected { expected: "end of input".into(), at: parser.offset() });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn parses_atoms() {
        assert_eq!(parse_term("id").unwrap().biarity(), (1, 1));
        assert_eq!(parse_term("eps").unwrap().biarity(), (1, 0));
        assert_eq!(parse_term("delta").unwrap().biarity(), (1, 2));
        let m = parse_term("mu(1/2)").unwrap();
        assert_eq!(m.vertices()[0].params, vec![q(1, 2)]);
        assert_eq!(parse_term("h(0)").unwrap().biarity(), (1, 1));
        assert_eq!(parse_term("sigma[2,3,1]").unwrap().biarity(), (3, 3));
    }

    #[test]
    fn precedence_and_grouping() {
        let g = parse_term("delta ; (mu(1/2) | id)").unwrap_err();
        assert!(matches!(g, ParseError::Compose { .. }));
        let g = parse_term("delta | id ; mu(1/3) | id").unwrap();
        assert_eq!(g.biarity(), (2, 2));
        let g = parse_term("(delta | id) ; (id | mu(1/3))").unwrap();
        assert_eq!(g.biarity(), (2, 2));
        assert!(g.validate().is_ok());
    }

    #[test]
    fn sigma_and_tau_are_inverse() {
        let a = parse_term("sigma[2,3,1] ; tau[2,3,1]").unwrap();
        assert!(a.iso_equal(&GraphTerm::unit(3)));
        let s = parse_term("swap").unwrap();
        assert!(s.iso_equal(&parse_term("sigma[2,1]").unwrap()));
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse_term("mu(3/2)"), Err(ParseError::ParameterRange { .. })));
        assert!(matches!(parse_term("foo"), Err(ParseError::UnknownAtom { .. })));
        assert!(matches!(parse_term("delta ;"), Err(ParseError::Expected { .. })));
        assert!(matches!(parse_term("delta $"), Err(ParseError::UnexpectedChar { .. })));
        assert!(matches!(parse_term("sigma[1,1]"), Err(ParseError::Permutation { .. })));
    }
}
