//! Recursive-descent parser shared by scalar literals and the bracket
//! right-hand sides of algebra files.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | primary
//! primary := integer | 'sqrt2' | 'i' | label | '(' expr ')'
//! ```
//!
//! Values are affine: a scalar part plus a linear combination of labels.
//! Products of two label-carrying factors are rejected.

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::{Rational, Scalar};
use crate::sparse::Vector;

/// Positions are 0-based character offsets into the parsed text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character '{ch}' at offset {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("unexpected {found} at offset {pos}, expected {expected}")]
    UnexpectedToken { pos: usize, found: String, expected: &'static str },
    #[error("division by zero at offset {pos}")]
    DivisionByZero { pos: usize },
    #[error("unknown identifier '{name}' at offset {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("product of two basis elements at offset {pos} is not linear")]
    NonLinear { pos: usize },
    #[error("division by a basis element at offset {pos}")]
    DivideByLabel { pos: usize },
    #[error("bare scalar term in a linear combination at offset {pos}")]
    BareScalar { pos: usize },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::UnexpectedChar { pos, .. }
            | ParseError::UnexpectedToken { pos, .. }
            | ParseError::DivisionByZero { pos }
            | ParseError::UnknownIdentifier { pos, .. }
            | ParseError::NonLinear { pos }
            | ParseError::DivideByLabel { pos }
            | ParseError::BareScalar { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {}", n),
            Tok::Ident(s) => format!("identifier '{}'", s),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

pub(crate) fn is_ident_start(ch: char) -> bool {
    ch.is_ascii_alphabetic() || ch == '_'
}

pub(crate) fn is_ident_char(ch: char) -> bool {
    ch.is_ascii_alphanumeric() || ch == '_' || ch == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let start = i;
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                Tok::Int(digits.parse().expect("ascii digits"))
            }
            c if is_ident_start(c) => {
                while i + 1 < chars.len() && is_ident_char(chars[i + 1]) {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            c => return Err(ParseError::UnexpectedChar { pos: i, ch: c }),
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

#[derive(Clone, Default)]
struct Affine {
    constant: Scalar,
    linear: Vector,
}

impl Affine {
    fn scalar(s: Scalar) -> Self {
        Affine { constant: s, linear: Vector::new() }
    }

    fn is_pure(&self) -> bool {
        self.linear.is_zero()
    }

    fn add(mut self, other: &Affine, sign: i64) -> Affine {
        let k = Scalar::integer(sign);
        self.constant += &(&k * &other.constant);
        self.linear.add_scaled(&k, &other.linear);
        self
    }

    fn scale(&self, k: &Scalar) -> Affine {
        Affine { constant: &self.constant * k, linear: self.linear.scaled(k) }
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    resolve: &'a dyn Fn(&str) -> Option<usize>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Affine, ParseError> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.term()?;
            acc = acc.add(&rhs, sign);
        }
    }

    fn term(&mut self) -> Result<Affine, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    let pos = self.bump().0;
                    let rhs = self.unary()?;
                    acc = if acc.is_pure() {
                        rhs.scale(&acc.constant)
                    } else if rhs.is_pure() {
                        acc.scale(&rhs.constant)
                    } else {
                        return Err(ParseError::NonLinear { pos });
                    };
                }
                Tok::Slash => {
                    let pos = self.bump().0;
                    let rhs = self.unary()?;
                    if !rhs.is_pure() {
                        return Err(ParseError::DivideByLabel { pos });
                    }
                    let inv = rhs.constant.inv().map_err(|_| ParseError::DivisionByZero { pos })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Affine, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.scale(&Scalar::integer(-1)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Affine, ParseError> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Affine::scalar(Scalar::rational(Rational::from_integer(n)))),
            Tok::Ident(name) if name == "sqrt2" => Ok(Affine::scalar(Scalar::sqrt2())),
            Tok::Ident(name) if name == "i" => Ok(Affine::scalar(Scalar::i())),
            Tok::Ident(name) => match (self.resolve)(&name) {
                Some(index) => Ok(Affine { constant: Scalar::zero(), linear: Vector::basis(index) }),
                None => Err(ParseError::UnknownIdentifier { pos, name }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    (_, Tok::RParen) => Ok(inner),
                    (pos, other) => Err(ParseError::UnexpectedToken { pos, found: other.describe(), expected: "')'" }),
                }
            }
            other => Err(ParseError::UnexpectedToken {
                pos,
                found: other.describe(),
                expected: "a number, 'sqrt2', 'i', a label or '('",
            }),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            other => Err(ParseError::UnexpectedToken {
                pos: self.pos(),
                found: other.describe(),
                expected: "an operator or end of input",
            }),
        }
    }
}

fn run(text: &str, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<Affine, ParseError> {
    let mut parser = Parser { toks: lex(text)?, at: 0, resolve };
    let value = parser.expr()?;
    parser.finish()?;
    Ok(value)
}

/// Parses a scalar expression such as `1/2 + (1/2)*sqrt2` or `-i*sqrt2/2`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    Ok(run(text, &|_| None)?.constant)
}

/// Parses a linear combination of labels, e.g. `1/sqrt2*Z3 - Z1`.
/// A literal `0` is accepted as the empty combination.
pub fn parse_linear(text: &str, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<Vector, ParseError> {
    let value = run(text, resolve)?;
    if !value.constant.is_zero() {
        return Err(ParseError::BareScalar { pos: 0 });
    }
    Ok(value.linear)
}
