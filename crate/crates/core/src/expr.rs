//! Parser for rational functions in `q` and `x`.
//!
//! Grammar, whitespace-insensitive, standard precedence, left associative:
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" ["-"] integer)?
//! atom  := integer | "q" | "x" | "(" expr ")"
//! ```
//!
//! The `Display` output of [`RatX`] parses back to the same value.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::qfield::{QRat, RatX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {pos}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
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

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<RatX, ParseError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<RatX, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                if d.is_zero() {
                    return err(at, "division by zero");
                }
                acc = acc.checked_div(&d).expect("nonzero divisor");
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatX, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatX, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        self.pos += 1;
        let neg = self.eat(b'-');
        let epos = self.pos;
        let n = self.integer()?;
        let n: i64 = match i64::try_from(n) {
            Ok(n) if n <= 1 << 20 => n,
            _ => return err(epos, "exponent too large"),
        };
        let n = if neg { -n } else { n };
        base.pow(n).or_else(|_| err(at, "division by zero"))
    }

    fn atom(&mut self) -> Result<RatX, ParseError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(RatX::q())
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(RatX::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return err(self.pos, "expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatX::from_qrat(QRat::from_rational(BigRational::from_integer(n))))
            }
            Some(c) => err(self.pos, format!("unexpected '{}'", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses a rational function in `q` and `x`.
pub fn parse_ratx(text: &str) -> Result<RatX, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "trailing input");
    }
    Ok(value)
}

/// Parses an element of Q(q); `x` must not occur in the value.
pub fn parse_qrat(text: &str) -> Result<QRat, ParseError> {
    let v = parse_ratx(text)?;
    v.as_qrat().ok_or_else(|| ParseError {
        pos: 0,
        message: "expected an element of Q(q) without x".into(),
    })
}

/// Parses a square matrix written `a, b; c, d` (rows separated by `;`).
pub fn parse_matrix(text: &str) -> Result<Matrix<RatX>, ParseError> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for row_text in text.split(';') {
        let mut row = Vec::new();
        let mut col_offset = offset;
        for entry in row_text.split(',') {
            let v = parse_ratx(entry).map_err(|e| ParseError {
                pos: e.pos + col_offset,
                message: e.message,
            })?;
            row.push(v);
            col_offset += entry.len() + 1;
        }
        rows.push(row);
        offset += row_text.len() + 1;
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return err(0, format!("expected a square matrix, got {n} rows of unequal or wrong length"));
    }
    Ok(Matrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::PolyX;
    use crate::ring::Ring;

    #[test]
    fn examples() {
        assert_eq!(parse_ratx("q*x").unwrap(), RatX::x().scale(&QRat::q()));
        let one = QRat::one();
        let expect = RatX::new(PolyX::linear(QRat::q_pow(-1)).scale(&-QRat::q()), PolyX::linear(one).scale(&-QRat::one()));
        assert_eq!(parse_ratx("(1 - q*x)/(1 - x)").unwrap(), expect);
        assert_eq!(parse_ratx("x^-2").unwrap(), RatX::x_pow(-2));
        assert_eq!(parse_ratx(" - x ^ 2 ").unwrap(), -RatX::x_pow(2));
        assert_eq!(parse_ratx("2/4").unwrap(), RatX::from_qrat(QRat::from_ratio(1, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_ratx("x + / 2").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_ratx("x/(q - q)").unwrap_err();
        assert_eq!((e.pos, e.message.as_str()), (1, "division by zero"));
        assert!(parse_ratx("0^-1").is_err());
        assert!(parse_ratx("(x").is_err());
        assert!(parse_ratx("x y").is_err());
        assert!(parse_ratx("").is_err());
    }

    #[test]
    fn round_trip_of_printed_values() {
        let samples = [
            "(1 - q*x)/(1 - x)",
            "x^-3 + q^-2*x",
            "(q^2 + 1)/(q - 1)*x^2 - 1/2*q",
            "-(x - q)^2/(3*x + q^5)",
            "(1/3*q/(q + 1))*x/(x^2 - q*x + 2)",
        ];
        for s in samples {
            let v = parse_ratx(s).unwrap();
            assert_eq!(parse_ratx(&v.to_string()).unwrap(), v, "{s} printed as {v}");
        }
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("q*x, 1; 0, q*x").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(*m.get(0, 1), RatX::one());
        assert!(parse_matrix("1, 2; 3").is_err());
        let e = parse_matrix("1, 2; 3, )").unwrap_err();
        assert_eq!(e.pos, 9);
        assert_eq!(parse_qrat("q^2/(q+1)").unwrap().to_string(), "q^2/(q + 1)");
        assert!(parse_qrat("x").is_err());
    }
}
