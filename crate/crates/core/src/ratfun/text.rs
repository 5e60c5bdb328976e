//! Canonical text format for polynomials and rational functions, plus a
//! parser accepting the same grammar (used by `show` output, golden files,
//! and `custom:` unit definitions).
//!
//! Format: fully expanded, monomials in descending graded-lex order, integer
//! coefficients, e.g. `1 / (u1^2*u2 + u1*u2^2)` or `u1 + 2*v1` or `0`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::fraction::RatFun;
use super::poly::{Monomial, Polynomial, VarIndex};
use crate::error::Error;
use crate::scalar::Rational;

fn monomial_string(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (code, e) in m.exps() {
        let name = VarIndex::from_code(code).name();
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// Expanded canonical form of a polynomial; terms descend in the monomial order.
pub fn poly_string(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<(&Monomial, &Rational)> = p.terms().collect();
    for (i, (m, c)) in terms.iter().rev().enumerate() {
        debug_assert!(c.is_integer());
        let numer = c.numer_big();
        let mag = numer.abs();
        let neg = numer.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_unit() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&monomial_string(m));
        }
    }
    out
}

/// Canonical form of a rational function.
pub fn ratfun_string(f: &RatFun) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let num = poly_string(f.numerator());
    if f.denominator().is_one() {
        return num;
    }
    let den = poly_string(f.denominator());
    if f.numerator().num_terms() > 1 {
        format!("({num}) / ({den})")
    } else {
        format!("{num} / ({den})")
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(VarIndex),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn next_tok(&mut self) -> Result<Tok, Error> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        self.pos += 1;
        match c {
            b'+' => Ok(Tok::Plus),
            b'-' => Ok(Tok::Minus),
            b'*' => Ok(Tok::Star),
            b'^' => Ok(Tok::Caret),
            b'/' => Ok(Tok::Slash),
            b'(' => Ok(Tok::LParen),
            b')' => Ok(Tok::RParen),
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Tok::Int(text.parse().map_err(|_| Error::Parse(format!("bad integer {text}")))?))
            }
            b'u' | b'v' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(Error::Parse(format!("variable index expected after '{}'", c as char)));
                }
                let idx: usize = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::Parse("bad variable index".into()))?;
                if idx == 0 {
                    return Err(Error::Parse("variable positions start at 1".into()));
                }
                Ok(Tok::Var(if c == b'u' { VarIndex::u(idx) } else { VarIndex::v(idx) }))
            }
            other => Err(Error::Parse(format!("unexpected character '{}'", other as char))),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    cur: Tok,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, Error> {
        let mut lexer = Lexer::new(src);
        let cur = lexer.next_tok()?;
        Ok(Parser { lexer, cur })
    }

    fn bump(&mut self) -> Result<(), Error> {
        self.cur = self.lexer.next_tok()?;
        Ok(())
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut negate = false;
        if self.cur == Tok::Minus {
            negate = true;
            self.bump()?;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.cur {
                Tok::Plus => {
                    self.bump()?;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Tok::Minus => {
                    self.bump()?;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.factor()?;
        while self.cur == Tok::Star {
            self.bump()?;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    // factor := int | var ['^' int] | '(' expr ')' ['^' int]
    fn factor(&mut self) -> Result<Polynomial, Error> {
        match self.cur.clone() {
            Tok::Int(n) => {
                self.bump()?;
                Ok(Polynomial::constant(Rational::new(n, BigInt::one()).unwrap()))
            }
            Tok::Var(v) => {
                self.bump()?;
                let e = self.opt_exponent()?;
                Ok(Polynomial::var(v).pow(e))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.cur != Tok::RParen {
                    return Err(Error::Parse("expected ')'".into()));
                }
                self.bump()?;
                let e = self.opt_exponent()?;
                Ok(inner.pow(e))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn opt_exponent(&mut self) -> Result<u32, Error> {
        if self.cur != Tok::Caret {
            return Ok(1);
        }
        self.bump()?;
        match self.cur.clone() {
            Tok::Int(n) => {
                self.bump()?;
                u32::try_from(&n).map_err(|_| Error::Parse("exponent too large".into()))
            }
            _ => Err(Error::Parse("expected exponent".into())),
        }
    }
}

/// Parse a polynomial in the canonical grammar.
pub fn parse_poly(src: &str) -> Result<Polynomial, Error> {
    let mut p = Parser::new(src)?;
    let poly = p.expr()?;
    if p.cur != Tok::End {
        return Err(Error::Parse(format!("trailing input at token {:?}", p.cur)));
    }
    Ok(poly)
}

/// Parse `numerator [/ denominator]`; the result is normalized.
pub fn parse_ratfun(src: &str) -> Result<RatFun, Error> {
    let mut p = Parser::new(src)?;
    let num = p.expr()?;
    match p.cur {
        Tok::End => RatFun::new(num, Polynomial::one()),
        Tok::Slash => {
            p.bump()?;
            let den = p.expr()?;
            if p.cur != Tok::End {
                return Err(Error::Parse(format!("trailing input at token {:?}", p.cur)));
            }
            RatFun::new(num, den)
        }
        ref other => Err(Error::Parse(format!("unexpected token {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::poly::LinearForm;

    #[test]
    fn prints_spec_examples() {
        let u1 = Polynomial::var(VarIndex::u(1));
        let u2 = Polynomial::var(VarIndex::u(2));
        let f = RatFun::new(Polynomial::one(), u1.mul(&u2)).unwrap();
        assert_eq!(ratfun_string(&f), "1 / (u1*u2)");

        // es length 2 for the u-polar unit: 1/(u1*(u1+u2)), expanded.
        let es2 = RatFun::new(Polynomial::one(), u1.mul(&u1.add(&u2))).unwrap();
        assert_eq!(ratfun_string(&es2), "1 / (u1^2 + u1*u2)");

        assert_eq!(ratfun_string(&RatFun::zero()), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for src in [
            "0",
            "1 / (u1*u2)",
            "(u1 + u2) / (u1*v1)",
            "u1^2 - 2*u1*v3 + v3^2",
            "-u1 + 3",
            "1 / (u1^2*u2 + u1*u2^2)",
        ] {
            let f = parse_ratfun(src).unwrap();
            let printed = ratfun_string(&f);
            let reparsed = parse_ratfun(&printed).unwrap();
            assert_eq!(f, reparsed, "roundtrip failed for {src}");
        }
    }

    #[test]
    fn parser_normalizes() {
        let f = parse_ratfun("u2 / (u1*u2)").unwrap();
        let g = parse_ratfun("1 / u1").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfun("u0").is_err());
        assert!(parse_ratfun("1 +").is_err());
        assert!(parse_ratfun("w1").is_err());
        assert!(parse_ratfun("(u1").is_err());
    }

    #[test]
    fn polar_v_component_prints_with_sign() {
        // 1/(v1 - v2): leading coefficient of the denominator stays positive.
        let form = LinearForm::from_pairs(vec![(VarIndex::v(1).code(), 1), (VarIndex::v(2).code(), -1)]);
        let f = RatFun::inv_linear(&form).unwrap();
        assert_eq!(ratfun_string(&f), "1 / (v1 - v2)");
    }
}
