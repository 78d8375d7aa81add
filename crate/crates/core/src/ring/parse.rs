//! Text grammar for ring specs and element literals.
//!
//! Rings: `Z`, `Z/<n>`, `GF(<p>)[x]`, `GF(<p>)[x]/(<poly>)`, `<ring> x <ring>`.
//! Elements: decimal integers, polynomials such as `x^2+2x+1`, pairs `(a,b)`.

use num_bigint::BigInt;

use super::poly::Poly;
use super::{Elem, RingSpec};
use crate::error::{Error, Result};

/// 1-based line/column of a byte offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParsePosition {
    pub line: usize,
    pub column: usize,
}

impl ParsePosition {
    pub fn of(text: &str, offset: usize) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        ParsePosition { line, column }
    }
}

pub(crate) struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        let at = ParsePosition::of(self.text, self.pos);
        Error::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub(crate) fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    pub(crate) fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    pub(crate) fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Some(s)
    }

    pub(crate) fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let negative = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let digits = self.digits().ok_or_else(|| self.error("expected an integer"))?;
        let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
        Ok(if negative { -n } else { n })
    }

    fn small(&mut self) -> Result<u64> {
        let start = self.pos;
        let digits = self.digits().ok_or_else(|| self.error("expected a number"))?;
        digits.parse().map_err(|_| {
            self.pos = start;
            self.error("number out of range")
        })
    }
}

pub fn parse_ring(text: &str) -> Result<RingSpec> {
    let mut cur = Cursor::new(text);
    let left = ring_atom(&mut cur)?;
    let ring = if cur.eat("x") {
        let right = ring_atom(&mut cur)?;
        RingSpec::product(left, right)?
    } else {
        left
    };
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(ring)
}

fn ring_atom(cur: &mut Cursor) -> Result<RingSpec> {
    if cur.eat("GF(") {
        let p = cur.small()?;
        cur.expect(")")?;
        cur.expect("[x]")?;
        if !super::poly::is_prime_u64(p) {
            return Err(Error::Semantic(format!("{p} is not prime")));
        }
        if cur.eat("/") {
            cur.expect("(")?;
            let f = poly_expr(cur, p)?;
            cur.expect(")")?;
            return RingSpec::poly_quotient(p, f);
        }
        return RingSpec::poly(p);
    }
    if cur.eat("Z") {
        if cur.eat("/") {
            let n: BigInt = cur
                .digits()
                .ok_or_else(|| cur.error("expected modulus"))?
                .parse()
                .unwrap();
            return RingSpec::integers_mod(n);
        }
        return Ok(RingSpec::Integers);
    }
    Err(cur.error("expected `Z` or `GF(`"))
}

/// Parses a polynomial expression in `x` with integer coefficients mod p.
fn poly_expr(cur: &mut Cursor, p: u64) -> Result<Poly> {
    let mut acc = Poly::zero(p);
    let mut first = true;
    loop {
        cur.skip_ws();
        let negative = if cur.eat("-") {
            true
        } else if cur.eat("+") || first {
            false
        } else {
            break;
        };
        first = false;
        let term = poly_term(cur, p)?;
        acc = if negative { acc.sub(&term) } else { acc.add(&term) };
    }
    Ok(acc)
}

fn poly_term(cur: &mut Cursor, p: u64) -> Result<Poly> {
    cur.skip_ws();
    let coeff = match cur.digits() {
        Some(d) => {
            let n: BigInt = d.parse().unwrap();
            let c: u64 = (n % BigInt::from(p)).try_into().unwrap();
            Some(c)
        }
        None => None,
    };
    let has_star = cur.eat("*");
    if cur.eat("x") {
        let exp = if cur.eat("^") { cur.small()? as usize } else { 1 };
        return Ok(Poly::monomial(p, coeff.unwrap_or(1), exp));
    }
    match (coeff, has_star) {
        (Some(c), false) => Ok(Poly::constant(p, c)),
        _ => Err(cur.error("expected a polynomial term")),
    }
}

fn element(cur: &mut Cursor, ring: &RingSpec) -> Result<Elem> {
    match ring {
        RingSpec::Product(a, b) => {
            cur.expect("(")?;
            let x = element(cur, a)?;
            cur.expect(",")?;
            let y = element(cur, b)?;
            cur.expect(")")?;
            Ok(Elem::pair(x, y))
        }
        RingSpec::Integers | RingSpec::IntegersModN(_) => {
            let n = cur.integer()?;
            Ok(ring.from_bigint(&n))
        }
        RingSpec::PolyOverPrimeField(p) | RingSpec::PolyQuotient { p, .. } => {
            let f = poly_expr(cur, *p)?;
            ring.reduce(&Elem::Poly(f))
        }
    }
}

pub fn parse_element(ring: &RingSpec, text: &str) -> Result<Elem> {
    let mut cur = Cursor::new(text);
    let e = element(&mut cur, ring)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(e)
}
