//! Canonical text form of [`Scalar`] and a parser for it.
//!
//! Rendering is `numerator` or `numerator/denominator`, each a polynomial in
//! `t` with ascending exponents, e.g. `(1 - t^4)/(2*t^2)`. The parser accepts
//! any rational expression in `t` built from integers, `+ - * / ^` and
//! parentheses, so golden files can also be written by hand.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::frac::Scalar;
use super::poly::ZPoly;
use crate::Error as ScalarError;

fn poly_terms(p: &ZPoly) -> Vec<(BigInt, usize)> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (c.clone(), i))
        .collect()
}

fn render_poly(p: &ZPoly) -> String {
    let mut s = String::new();
    for (k, (c, e)) in poly_terms(p).into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        match e {
            0 => {
                let _ = write!(s, "{}", a);
            }
            _ => {
                if !a.is_one() {
                    let _ = write!(s, "{}*", a);
                }
                s.push('t');
                if e > 1 {
                    let _ = write!(s, "^{}", e);
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub(crate) fn render(x: &Scalar) -> String {
    let (n, d) = x.numer_denom();
    let ns = render_poly(&n);
    if d.is_one() {
        return ns;
    }
    let wrap = |p: &ZPoly, s: String| {
        let terms = poly_terms(p);
        let simple = terms.len() == 1 && (terms[0].1 == 0 || terms[0].0.is_one());
        if simple {
            s
        } else {
            let mut w = String::from("(");
            w.push_str(&s);
            w.push(')');
            w
        }
    };
    let mut out = wrap(&n, ns);
    out.push('/');
    let ds = render_poly(&d);
    out.push_str(&wrap(&d, ds));
    out
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse(alloc::format!("{} at byte {}", msg, self.i))
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                -self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc += self.term()?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc *= self.power()?;
                }
                Some(b'/') => {
                    self.i += 1;
                    let d = self.power()?;
                    acc = acc.checked_div(&d).ok_or(ScalarError::DivisionByZero)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = if self.peek() == Some(b'-') {
                self.i += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i64 = e.to_string().parse().map_err(|_| self.err("exponent too large"))?;
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer"));
        }
        let txt = core::str::from_utf8(&self.s[start..self.i]).unwrap();
        txt.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(b't') => {
                self.i += 1;
                Ok(Scalar::t_pow(1))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_rat(super::Rat::from_integer(n)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Parse a rational expression in `t`.
pub fn parse_scalar(s: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser { s: s.as_bytes(), i: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_canonical_form() {
        let x = Scalar::laurent(0, &[1, 0, 0, 0, -1]) / Scalar::monomial(super::super::rat_int(2), 2);
        assert_eq!(alloc::format!("{}", x), "(1 - t^4)/(2*t^2)");
        assert_eq!(alloc::format!("{}", Scalar::t_pow(-3)), "1/t^3");
        assert_eq!(alloc::format!("{}", Scalar::ratio(-3, 7)), "-3/7");
        assert_eq!(alloc::format!("{}", Scalar::zero()), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["(1 - t^4)/(2*t^2)", "-t", "3/(1 - 2*t + t^5)", "1/t^3", "0"] {
            let x = parse_scalar(s).unwrap();
            assert_eq!(alloc::format!("{}", x), s);
        }
        assert_eq!(parse_scalar("(t-1)/(t-1)").unwrap(), Scalar::one());
        assert_eq!(parse_scalar("t^-2 * t^2").unwrap(), Scalar::one());
    }
}
