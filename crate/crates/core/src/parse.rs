//! Parser for binary forms written as sums of terms, e.g.
//! `x^4 - x^2*y^2 + 1/4*y^4` or `2x^3y`.
//!
//! Whitespace is ignored, `*` between factors is optional, coefficients
//! are integers or `a/b` fractions. Decimal and exponent notation is only
//! accepted by [`parse_float`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::BinaryForm;
use crate::scalar::{f64_to_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnexpectedChar,
    UnexpectedEnd,
    BadNumber,
    BadExponent,
    DivisionByZero,
    /// Terms of different total degree.
    NotHomogeneous,
    /// Decimal notation in exact mode.
    FloatInExactMode,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at column {}", .span.0 + 1)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    /// Byte range `[start, end)` in the input.
    pub span: (usize, usize),
}

impl ParseError {
    fn new(kind: ParseErrorKind, span: (usize, usize), message: impl Into<String>) -> Self {
        ParseError {
            kind,
            message: message.into(),
            span,
        }
    }

    /// The input line with a caret marker under the offending span.
    pub fn render(&self, input: &str) -> String {
        let width = (self.span.1.saturating_sub(self.span.0)).max(1);
        format!(
            "{input}\n{}{}\n{self}",
            " ".repeat(self.span.0.min(input.len())),
            "^".repeat(width)
        )
    }
}

#[derive(Clone, Debug)]
enum Coefficient {
    Exact(Rational),
    Float(f64),
}

impl Coefficient {
    fn mul(self, other: Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => Coefficient::Exact(a * b),
            (a, b) => Coefficient::Float(a.to_f64() * b.to_f64()),
        }
    }

    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Exact(a) => Coefficient::Exact(-a),
            Coefficient::Float(a) => Coefficient::Float(-a),
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            Coefficient::Exact(a) => crate::scalar::rational_to_f64(a),
            Coefficient::Float(a) => *a,
        }
    }
}

struct Term {
    coeff: Coefficient,
    x: usize,
    y: usize,
    span: (usize, usize),
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    allow_float: bool,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error_here(&self, kind: ParseErrorKind, message: &str) -> ParseError {
        let end = (self.pos + 1).min(self.bytes.len().max(self.pos + 1));
        ParseError::new(kind, (self.pos, end), message)
    }

    fn integer(&mut self) -> Result<(BigInt, (usize, usize)), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_here(ParseErrorKind::BadNumber, "expected digits"));
        }
        let text = &self.src[start..self.pos];
        Ok((text.parse().expect("ascii digits"), (start, self.pos)))
    }

    fn number(&mut self) -> Result<Coefficient, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let mut is_float = false;
        if self.bytes.get(self.pos) == Some(&b'.') {
            is_float = true;
            self.pos += 1;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if matches!(self.bytes.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            let digits = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if digits == self.pos {
                self.pos = save;
            } else {
                is_float = true;
            }
        }
        let text = &self.src[start..self.pos];
        let span = (start, self.pos);
        if text.is_empty() || text == "." {
            return Err(ParseError::new(
                ParseErrorKind::BadNumber,
                span,
                "malformed number",
            ));
        }
        let mut value = if is_float {
            if !self.allow_float {
                return Err(ParseError::new(
                    ParseErrorKind::FloatInExactMode,
                    span,
                    "decimal coefficients require the float backend",
                ));
            }
            let v: f64 = text.parse().map_err(|_| {
                ParseError::new(ParseErrorKind::BadNumber, span, "malformed number")
            })?;
            if !v.is_finite() {
                return Err(ParseError::new(
                    ParseErrorKind::BadNumber,
                    span,
                    "number out of range",
                ));
            }
            Coefficient::Float(v)
        } else {
            Coefficient::Exact(Rational::from_integer(text.parse().expect("ascii digits")))
        };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let (denom, dspan) = self.integer()?;
            if denom.is_zero() {
                return Err(ParseError::new(
                    ParseErrorKind::DivisionByZero,
                    dspan,
                    "division by zero",
                ));
            }
            value = match value {
                Coefficient::Exact(a) => Coefficient::Exact(a / Rational::from_integer(denom)),
                Coefficient::Float(a) => Coefficient::Float(
                    a / crate::scalar::rational_to_f64(&Rational::from_integer(denom)),
                ),
            };
        }
        Ok(value)
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let (e, span) = self.integer()?;
        e.try_into()
            .ok()
            .filter(|&e: &usize| e <= 4096)
            .ok_or_else(|| ParseError::new(ParseErrorKind::BadExponent, span, "exponent too large"))
    }

    fn term(&mut self, negative: bool) -> Result<Term, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut coeff = Coefficient::Exact(Rational::one());
        let (mut x, mut y) = (0usize, 0usize);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == b'.' => {
                    coeff = coeff.mul(self.number()?);
                }
                Some(b'x') | Some(b'X') => {
                    self.pos += 1;
                    x += self.exponent()?;
                }
                Some(b'y') | Some(b'Y') => {
                    self.pos += 1;
                    y += self.exponent()?;
                }
                None if factors == 0 => {
                    return Err(self.error_here(ParseErrorKind::UnexpectedEnd, "expected a term"));
                }
                Some(_) if factors == 0 => {
                    return Err(self.error_here(ParseErrorKind::UnexpectedChar, "expected a term"));
                }
                _ => break,
            }
            factors += 1;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if matches!(self.peek(), None | Some(b'+' | b'-' | b'*')) {
                    return Err(self.error_here(
                        ParseErrorKind::UnexpectedChar,
                        "expected a factor after '*'",
                    ));
                }
            }
        }
        if negative {
            coeff = coeff.neg();
        }
        Ok(Term {
            coeff,
            x,
            y,
            span: (start, self.pos),
        })
    }

    fn terms(&mut self) -> Result<Vec<Term>, ParseError> {
        if self.peek().is_none() {
            return Err(ParseError::new(
                ParseErrorKind::Empty,
                (0, 0),
                "empty polynomial",
            ));
        }
        let mut terms = Vec::new();
        let mut negative = false;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            negative = c == b'-';
            self.pos += 1;
        }
        loop {
            terms.push(self.term(negative)?);
            match self.peek() {
                None => break,
                Some(c @ (b'+' | b'-')) => {
                    negative = c == b'-';
                    self.pos += 1;
                }
                Some(_) => {
                    return Err(
                        self.error_here(ParseErrorKind::UnexpectedChar, "unexpected character")
                    );
                }
            }
        }
        Ok(terms)
    }
}

fn parse_terms(input: &str, allow_float: bool) -> Result<(usize, Vec<Term>), ParseError> {
    let mut parser = Parser {
        src: input,
        bytes: input.as_bytes(),
        pos: 0,
        allow_float,
    };
    let terms = parser.terms()?;
    let degree = terms[0].x + terms[0].y;
    if let Some(t) = terms.iter().find(|t| t.x + t.y != degree) {
        return Err(ParseError::new(
            ParseErrorKind::NotHomogeneous,
            t.span,
            format!(
                "term has degree {} but the form has degree {degree}",
                t.x + t.y
            ),
        ));
    }
    Ok((degree, terms))
}

/// Parses with exact rational coefficients.
pub fn parse_exact(input: &str) -> Result<BinaryForm<Rational>, ParseError> {
    let (degree, terms) = parse_terms(input, false)?;
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for t in terms {
        let Coefficient::Exact(c) = t.coeff else {
            unreachable!("floats are rejected in exact mode")
        };
        coeffs[t.y] += c;
    }
    Ok(BinaryForm::new(coeffs))
}

/// Parses with floating-point coefficients.
pub fn parse_float(input: &str) -> Result<BinaryForm<f64>, ParseError> {
    let (degree, terms) = parse_terms(input, true)?;
    let mut coeffs = vec![0.0; degree + 1];
    for t in terms {
        coeffs[t.y] += t.coeff.to_f64();
    }
    Ok(BinaryForm::new(coeffs))
}

/// Exact view of a float-mode input: every finite double is a dyadic
/// rational.
pub fn float_to_exact(h: &BinaryForm<f64>) -> Option<BinaryForm<Rational>> {
    let coeffs = h
        .coeffs()
        .iter()
        .map(|&c| f64_to_rational(c))
        .collect::<Option<Vec<_>>>()?;
    Some(BinaryForm::new(coeffs))
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
