//! Text form of gross-scalars.
//!
//! Output follows the literal grammar (`8g+12`, `4+8.5g^-1`, `-3.2g^-2.1`,
//! `(20)/(g+2)`). Input accepts a superset: a small arithmetic language with
//! `+ - * /`, parentheses, implicit multiplication (`8g`, `2(g+1)`) and
//! `^` exponents. A numeric literal written `p/q` without spaces is a single
//! rational, so `17/2g^-1` is `(17/2)·①⁻¹`.

use num_traits::{One, Signed, Zero};

use super::poly::GrossPolynomial;
use super::rational::{self, Rational};
use super::{GrossError, GrossScalar};

pub fn parse(text: &str) -> Result<GrossScalar, GrossError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, len: text.len() };
    let value = parser.sum()?;
    match parser.peek() {
        None => Ok(value),
        Some(tok) => Err(GrossError::Parse {
            position: tok.pos,
            message: format!("unexpected {}", tok.kind.describe()),
        }),
    }
}

pub fn format_scalar(x: &GrossScalar) -> String {
    if x.is_polynomial() {
        format_polynomial(x.numerator())
    } else {
        format!("({})/({})", format_polynomial(x.numerator()), format_polynomial(x.denominator()))
    }
}

pub fn format_polynomial(p: &GrossPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in p.terms().iter().enumerate() {
        let neg = t.coefficient.is_negative();
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mag = t.coefficient.abs();
        if t.power.is_zero() {
            out.push_str(&rational::format_rational(&mag));
            continue;
        }
        if !mag.is_one() {
            out.push_str(&rational::format_rational(&mag));
        }
        out.push('g');
        if !t.power.is_one() {
            out.push('^');
            out.push_str(&rational::format_rational(&t.power));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Number(Rational),
    G,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Number(r) => format!("number {}", rational::format_rational(r)),
            Kind::G => "'g'".into(),
            Kind::Plus => "'+'".into(),
            Kind::Minus => "'-'".into(),
            Kind::Star => "'*'".into(),
            Kind::Slash => "'/'".into(),
            Kind::Caret => "'^'".into(),
            Kind::LParen => "'('".into(),
            Kind::RParen => "')'".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, GrossError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' | b'.' => {
                let end = scan_number(bytes, i);
                let mut lit = &text[i..end];
                let mut next = end;
                // `p/q` rational literal: integer '/' integer with no spaces
                if !lit.contains('.') && bytes.get(end) == Some(&b'/') {
                    let den_end = scan_digits(bytes, end + 1);
                    if den_end > end + 1 {
                        lit = &text[i..den_end];
                        next = den_end;
                    }
                }
                let value = rational::parse_rational(lit).ok_or_else(|| GrossError::Parse {
                    position: start,
                    message: format!("malformed number '{lit}'"),
                })?;
                i = next;
                out.push(Token { kind: Kind::Number(value), pos: start });
                continue;
            }
            b'g' | b'G' => Kind::G,
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'/' => Kind::Slash,
            b'^' => Kind::Caret,
            b'(' => Kind::LParen,
            b')' => Kind::RParen,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(GrossError::Parse {
                    position: start,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        i += 1;
        out.push(Token { kind, pos: start });
    }
    Ok(out)
}

fn scan_digits(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

fn scan_number(bytes: &[u8], i: usize) -> usize {
    let mut end = scan_digits(bytes, i);
    if bytes.get(end) == Some(&b'.') {
        end = scan_digits(bytes, end + 1);
    }
    end
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&Kind> {
        self.peek().map(|t| &t.kind)
    }

    fn here(&self) -> usize {
        self.peek().map(|t| t.pos).unwrap_or(self.len)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, GrossError> {
        Err(GrossError::Parse { position: self.here(), message: message.into() })
    }

    fn eat(&mut self, kind: &Kind) -> bool {
        if self.peek_kind() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<GrossScalar, GrossError> {
        let mut acc = self.product()?;
        loop {
            if self.eat(&Kind::Plus) {
                acc = acc + self.product()?;
            } else if self.eat(&Kind::Minus) {
                acc = acc - self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<GrossScalar, GrossError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek_kind() {
                Some(Kind::Star) => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(Kind::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|_| GrossError::Parse {
                        position: at,
                        message: "division by zero".into(),
                    })?;
                }
                // implicit multiplication: `8g`, `2(g+1)`, `(g+1)(g-1)`
                Some(Kind::G) | Some(Kind::LParen) => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<GrossScalar, GrossError> {
        if self.eat(&Kind::Minus) {
            return Ok(-self.unary()?);
        }
        if self.eat(&Kind::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<GrossScalar, GrossError> {
        let is_g = self.peek_kind() == Some(&Kind::G);
        let base = self.atom()?;
        if !self.eat(&Kind::Caret) {
            return Ok(base);
        }
        let at = self.here();
        let exponent = self.exponent()?;
        if is_g {
            return GrossScalar::grossone_pow_scalar(&exponent);
        }
        let e = exponent.to_rational().filter(|r| r.is_integer()).ok_or_else(|| {
            GrossError::Parse {
                position: at,
                message: "only g accepts non-integer exponents".into(),
            }
        })?;
        let e: i64 = e.to_integer().try_into().map_err(|_| GrossError::Parse {
            position: at,
            message: "exponent too large".into(),
        })?;
        base.powi(e).map_err(|_| GrossError::Parse { position: at, message: "division by zero".into() })
    }

    fn exponent(&mut self) -> Result<GrossScalar, GrossError> {
        if self.eat(&Kind::Minus) {
            return Ok(-self.exponent()?);
        }
        if self.eat(&Kind::Plus) {
            return self.exponent();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<GrossScalar, GrossError> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of input");
        };
        match tok.kind {
            Kind::Number(r) => {
                self.pos += 1;
                Ok(GrossScalar::from_rational(r))
            }
            Kind::G => {
                self.pos += 1;
                Ok(GrossScalar::grossone())
            }
            Kind::LParen => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(&Kind::RParen) {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            other => self.error(format!("unexpected {}", other.describe())),
        }
    }
}
