//! Recursive-descent parser for Laurent polynomial expressions.
//!
//! ```text
//! expr     = [ "+" | "-" ] term { ( "+" | "-" ) term } ;
//! term     = factor { "*" factor } ;
//! factor   = "-" factor | power ;
//! power    = atom [ "^" exponent ] ;
//! exponent = [ "-" ] digits | "(" [ "-" ] digits ")" ;
//! atom     = number | variable | "(" expr ")" ;
//! number   = digits [ "/" digits ] ;
//! variable = "x" digits ;                (index ≥ 1)
//! ```
//!
//! Juxtaposition is not multiplication: `x1x2` is a syntax error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::field::{Field, FieldError};

use super::laurent::LaurentExpr;
use super::word::{VariableId, Word};

/// Largest exponent accepted on a parenthesized sum.
pub const MAX_SUM_EXPONENT: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("variable indices start at 1")]
    BadVariable,
    #[error("exponent zero on an explicit power")]
    ZeroExponent,
    #[error("negative power of an expression that is not an invertible monomial")]
    NonInvertibleBase,
    #[error("exponent of a sum exceeds {MAX_SUM_EXPONENT}")]
    ExponentTooLarge,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("coefficient not representable: {0}")]
    Coefficient(FieldError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(u32),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Var(i) => format!("variable x{i}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Slash => "'/'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |position, kind| ParseError { position, kind };
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '^' | '/' | '(' | ')' => {
                out.push((
                    pos,
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '/' => Tok::Slash,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                ));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                if i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    return Err(err(chars[i].0, ParseErrorKind::UnexpectedChar(chars[i].1)));
                }
                out.push((pos, Tok::Num(digits.parse().expect("ascii digits"))));
            }
            'x' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(err(pos, ParseErrorKind::BadVariable));
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let idx: u32 = digits
                    .parse()
                    .map_err(|_| err(pos, ParseErrorKind::BadVariable))?;
                if idx == 0 {
                    return Err(err(pos, ParseErrorKind::BadVariable));
                }
                if i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    return Err(err(chars[i].0, ParseErrorKind::UnexpectedChar(chars[i].1)));
                }
                out.push((pos, Tok::Var(idx)));
            }
            other => return Err(err(pos, ParseErrorKind::UnexpectedChar(other))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.here(),
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(describe(t))),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentExpr, ParseError> {
        let mut acc = if self.eat(&Tok::Minus) {
            self.term()?.neg()
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentExpr, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentExpr, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.here();
        let e = self.exponent()?;
        let fail = |kind| ParseError { position: at, kind };
        if e == 0 {
            return Err(fail(ParseErrorKind::ZeroExponent));
        }
        match base.terms() {
            [(c, w)] => {
                let c = c
                    .pow(e)
                    .ok_or_else(|| fail(ParseErrorKind::NonInvertibleBase))?;
                Ok(LaurentExpr::from_terms(self.field, [(c, w.pow(e))]))
            }
            _ if e < 0 => Err(fail(ParseErrorKind::NonInvertibleBase)),
            _ if e as u64 > MAX_SUM_EXPONENT => Err(fail(ParseErrorKind::ExponentTooLarge)),
            _ => Ok((1..e).fold(base.clone(), |acc, _| acc.mul(&base))),
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.eat(&Tok::LParen);
        let neg = self.eat(&Tok::Minus);
        let at = self.here();
        let n = match self.peek() {
            Some(Tok::Num(n)) => {
                let n = i64::try_from(n.clone()).map_err(|_| ParseError {
                    position: at,
                    kind: ParseErrorKind::ExponentTooLarge,
                })?;
                self.pos += 1;
                n
            }
            _ => return Err(self.unexpected()),
        };
        if paren && !self.eat(&Tok::RParen) {
            return Err(self.unexpected());
        }
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<LaurentExpr, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(n);
                if self.eat(&Tok::Slash) {
                    let Some(Tok::Num(d)) = self.peek().cloned() else {
                        return Err(self.unexpected());
                    };
                    if d.is_zero() {
                        return Err(self.err(ParseErrorKind::ZeroDenominator));
                    }
                    self.pos += 1;
                    value /= BigRational::from_integer(d);
                }
                let c = self.field.from_rational(&value).map_err(|e| ParseError {
                    position: at,
                    kind: ParseErrorKind::Coefficient(e),
                })?;
                Ok(LaurentExpr::constant(c))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(LaurentExpr::word(
                    self.field,
                    Word::var(VariableId::new(i).expect("lexer rejects x0")),
                ))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected());
                }
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses an expression into canonical form over `field`.
pub fn parse_expr(text: &str, field: &Field) -> Result<LaurentExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        field,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// Parses a single group word (coefficient 1, one term).
pub fn parse_word(text: &str, field: &Field) -> Result<Word, ParseError> {
    let e = parse_expr(text, field)?;
    e.as_word().cloned().ok_or(ParseError {
        position: 0,
        kind: ParseErrorKind::UnexpectedToken(format!(
            "expression '{e}' (expected a single group word)"
        )),
    })
}
