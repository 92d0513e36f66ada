//! Parser for rational functions written like `(t^2 - 1)/(2*t + 3)`.
//!
//! Grammar: integer-coefficient polynomials in `t` built from `+ - * ^ ( )`,
//! with at most one top-level `/` separating numerator and denominator.
//! A number directly followed by `t` or `(` multiplies, so `3t^2` is accepted.

use p1split::arith::{Field, Polynomial, RationalFunction};
use p1split::{Germ, Point};

use crate::CliError;

struct Parser<'a, F: Field> {
    field: &'a F,
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn err(&self, msg: &str) -> CliError {
        CliError::Expression {
            pos: self.offset + self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>, CliError> {
        let mut acc = if self.eat(b'-') { -&self.term()? } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, CliError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b't' | b'(') => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>, CliError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let e: u32 = digits
            .parse()
            .map_err(|_| self.err("expected a small non-negative exponent"))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial<F>, CliError> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(Polynomial::var(self.field.clone()))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Polynomial::constant(self.field.clone(), self.field.parse_elem(digits)?))
            }
            Some(b'/') => Err(self.err("only one top-level `/` is allowed")),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn parse_polynomial_at<F: Field>(field: &F, text: &str, offset: usize) -> Result<Polynomial<F>, CliError> {
    let mut p = Parser {
        field,
        src: text.as_bytes(),
        pos: 0,
        offset,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

pub fn parse_polynomial<F: Field>(field: &F, text: &str) -> Result<Polynomial<F>, CliError> {
    parse_polynomial_at(field, text, 0)
}

pub fn parse_rational_function<F: Field>(field: &F, text: &str) -> Result<RationalFunction<F>, CliError> {
    let mut depth = 0i32;
    let mut slash = None;
    for (i, c) in text.bytes().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 => {
                if slash.is_some() {
                    return Err(CliError::Expression {
                        pos: i,
                        msg: "only one top-level `/` is allowed".into(),
                    });
                }
                slash = Some(i);
            }
            _ => {}
        }
    }
    let Some(i) = slash else {
        return Ok(RationalFunction::from_poly(parse_polynomial(field, text)?));
    };
    let num = parse_polynomial_at(field, &text[..i], 0)?;
    let den = parse_polynomial_at(field, &text[i + 1..], i + 1)?;
    if den.is_zero() {
        return Err(CliError::Expression {
            pos: i + 1,
            msg: "denominator is zero".into(),
        });
    }
    Ok(RationalFunction::new(num, den)?)
}

/// Germ coordinates separated by `;`.
pub fn parse_germ<F: Field>(field: &F, text: &str) -> Result<Germ<F>, CliError> {
    let coords = text
        .split(';')
        .map(|part| parse_rational_function(field, part))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Germ::new(coords))
}

/// `inf`, or a squarefree polynomial whose roots form the point.
pub fn parse_point<F: Field>(field: &F, text: &str) -> Result<Point<F>, CliError> {
    if matches!(text.trim(), "inf" | "infinity" | "∞") {
        return Ok(Point::Infinity);
    }
    let p = parse_polynomial(field, text)?;
    if p.is_zero() {
        return Err(CliError::Invalid("point polynomial is zero".into()));
    }
    Ok(Point::finite(p.monic())?)
}
