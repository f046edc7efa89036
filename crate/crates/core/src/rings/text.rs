//! Text grammar for rings, elements and polynomials.
//!
//! ```text
//! ring    := factor (" x " factor)*
//! factor  := primary ("[X]/(" poly ")")*
//! primary := "Q" | "GF(" p ")" | "GF(" p "^" n ["," poly] ")" | "(" ring ")"
//! ```
//!
//! Elements are arithmetic expressions in `+ - * / ^` over integers, the
//! generator `a` of GF(p^n), the generator `X` of a quotient, braces `{..}`
//! holding an element of the coefficient ring, and tuples `(e1, e2, ..)` for
//! product rings.

use std::fmt;

use num::{BigInt, Signed, ToPrimitive};

use super::poly::Polynomial;
use super::ring::{Ring, RingElement, RingKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Ast {
    Int(BigInt),
    Sym(char),
    Brace(Box<Ast>),
    Tuple(Vec<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u64),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { src: s.as_bytes(), pos: 0 }
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            perr(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            perr(self.pos, "unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return perr(start, "expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small(&mut self) -> Result<u64> {
        let pos = self.pos;
        self.integer()?.to_u64().map_or_else(|| perr(pos, "integer too large"), Ok)
    }

    // expr := ["-"] term (("+" | "-") term)*
    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if self.eat(b'-') { Ast::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat(b'+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.power()?;
        loop {
            if self.eat(b'*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat(b'/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ast::Int(self.integer()?)),
            Some(c @ (b'X' | b'a')) => {
                self.pos += 1;
                Ok(Ast::Sym(c as char))
            }
            Some(b'{') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b'}')?;
                Ok(Ast::Brace(Box::new(inner)))
            }
            Some(b'(') => {
                self.pos += 1;
                let first = self.expr()?;
                if self.eat(b',') {
                    let mut items = vec![first, self.expr()?];
                    while self.eat(b',') {
                        items.push(self.expr()?);
                    }
                    self.expect(b')')?;
                    return Ok(Ast::Tuple(items));
                }
                self.expect(b')')?;
                Ok(first)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.atom()?)))
            }
            _ => perr(self.pos, "expected element"),
        }
    }

    fn ring(&mut self) -> Result<Ring> {
        let mut factors = vec![self.ring_factor()?];
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b'x')
                && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_whitespace() || *c == b'(' || c.is_ascii_uppercase())
            {
                self.pos += 1;
                factors.push(self.ring_factor()?);
            } else {
                self.pos = save;
                break;
            }
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            Ring::product(factors)
        }
    }

    fn ring_factor(&mut self) -> Result<Ring> {
        let mut r = self.ring_primary()?;
        while self.eat_str("[X]/(") {
            let pos = self.pos;
            let m = self.poly_until_close(&r)?;
            r = Ring::quotient(&r, m).map_err(|e| Error::Parse { pos, msg: e.to_string() })?;
        }
        Ok(r)
    }

    fn poly_until_close(&mut self, r: &Ring) -> Result<Polynomial> {
        let pos = self.pos;
        let ast = self.expr()?;
        self.expect(b')')?;
        eval_poly(r, &ast).map_err(|e| relocate(e, pos))
    }

    fn ring_primary(&mut self) -> Result<Ring> {
        let pos = self.pos;
        if self.eat(b'(') {
            let r = self.ring()?;
            self.expect(b')')?;
            return Ok(r);
        }
        if self.eat_str("Q") {
            return Ok(Ring::rationals());
        }
        if self.eat_str("GF(") {
            let p = self.small()?;
            let prime = Ring::gf(p).map_err(|e| Error::Parse { pos, msg: e.to_string() })?;
            if self.eat(b')') {
                return Ok(prime);
            }
            self.expect(b'^')?;
            let n = self.small()? as usize;
            if self.eat(b',') {
                let r = self.poly_until_close(&prime)?;
                if r.degree() != Some(n) {
                    return perr(pos, format!("modulus must have degree {n}"));
                }
                return Ring::gf_ext_with(p, r).map_err(|e| Error::Parse { pos, msg: e.to_string() });
            }
            self.expect(b')')?;
            return Ring::gf_ext(p, n).map_err(|e| Error::Parse { pos, msg: e.to_string() });
        }
        perr(pos, "expected ring")
    }
}

fn relocate(e: Error, pos: usize) -> Error {
    match e {
        Error::Parse { pos: p, msg } => Error::Parse { pos: pos + p, msg },
        other => Error::Parse { pos, msg: other.to_string() },
    }
}

fn eval_elem(ring: &Ring, ast: &Ast) -> Result<RingElement> {
    let bad = |m: &str| Error::Parse { pos: 0, msg: format!("{m} in {ring}") };
    Ok(match ast {
        Ast::Int(n) => ring.from_bigint(n),
        Ast::Sym(c) => match (ring.kind(), c) {
            (RingKind::Extension { .. }, 'a') | (RingKind::Quotient { .. }, 'X') => ring.generator().unwrap(),
            (RingKind::Quotient { base, .. }, _) => ring.embed_base(&eval_elem(base, ast)?),
            _ => return Err(bad(&format!("unknown symbol '{c}'"))),
        },
        Ast::Brace(inner) => {
            let base = ring.base().ok_or_else(|| bad("braces need a coefficient ring"))?;
            ring.embed_base(&eval_elem(&base, inner)?)
        }
        Ast::Tuple(items) => {
            let fs = ring.factors().ok_or_else(|| bad("tuple outside a product ring"))?;
            if fs.len() != items.len() {
                return Err(bad(&format!("expected {} components", fs.len())));
            }
            RingElement::Tuple(fs.iter().zip(items).map(|(f, a)| eval_elem(f, a)).collect::<Result<_>>()?)
        }
        Ast::Add(a, b) => ring.add(&eval_elem(ring, a)?, &eval_elem(ring, b)?),
        Ast::Sub(a, b) => ring.sub(&eval_elem(ring, a)?, &eval_elem(ring, b)?),
        Ast::Mul(a, b) => ring.mul(&eval_elem(ring, a)?, &eval_elem(ring, b)?),
        Ast::Div(a, b) => {
            let d = eval_elem(ring, b)?;
            ring.div(&eval_elem(ring, a)?, &d).ok_or_else(|| bad("division by a non-unit"))?
        }
        Ast::Neg(a) => ring.neg(&eval_elem(ring, a)?),
        Ast::Pow(a, e) => ring.pow(&eval_elem(ring, a)?, *e as u128),
    })
}

fn eval_poly(ring: &Ring, ast: &Ast) -> Result<Polynomial> {
    Ok(match ast {
        Ast::Sym('X') => Polynomial::x(ring),
        Ast::Int(_) | Ast::Sym(_) | Ast::Tuple(_) => Polynomial::constant(ring, eval_elem(ring, ast)?),
        Ast::Brace(inner) => Polynomial::constant(ring, eval_elem(ring, inner)?),
        Ast::Add(a, b) => eval_poly(ring, a)?.add(&eval_poly(ring, b)?),
        Ast::Sub(a, b) => eval_poly(ring, a)?.sub(&eval_poly(ring, b)?),
        Ast::Mul(a, b) => eval_poly(ring, a)?.mul(&eval_poly(ring, b)?),
        Ast::Div(a, b) => {
            let d = eval_poly(ring, b)?;
            let inv = (d.degree() == Some(0))
                .then(|| ring.inverse(&d.coeff(0)))
                .flatten()
                .ok_or_else(|| Error::Parse { pos: 0, msg: "division by a non-constant or non-unit".into() })?;
            eval_poly(ring, a)?.scale(&inv)
        }
        Ast::Neg(a) => eval_poly(ring, a)?.neg(),
        Ast::Pow(a, e) => eval_poly(ring, a)?.pow(*e),
    })
}

pub fn parse_ring(s: &str) -> Result<Ring> {
    let mut p = Parser::new(s);
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

pub fn parse_element(ring: &Ring, s: &str) -> Result<RingElement> {
    let mut p = Parser::new(s);
    let ast = p.expr()?;
    p.finish()?;
    eval_elem(ring, &ast)
}

/// Polynomial in `X` over `ring`; coefficients that are not plain integers
/// go in braces.
pub fn parse_poly(ring: &Ring, s: &str) -> Result<Polynomial> {
    let mut p = Parser::new(s);
    let ast = p.expr()?;
    p.finish()?;
    eval_poly(ring, &ast)
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}

fn monomial(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

impl Ring {
    /// Canonical text of an element; `parse_element` inverts it.
    pub fn format_element(&self, e: &RingElement) -> String {
        match (self.kind(), e) {
            (RingKind::Rational, RingElement::Rational(q)) => {
                if q.denom() == &BigInt::from(1) {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            (RingKind::Prime(_), RingElement::Residue(r)) => r.to_string(),
            (RingKind::Product(fs), RingElement::Tuple(c)) => {
                let parts: Vec<String> = fs.iter().zip(c).map(|(f, x)| f.format_element(x)).collect();
                format!("({})", parts.join(", "))
            }
            (RingKind::Extension { .. }, RingElement::Poly(_)) => {
                self.base().unwrap().format_poly(&self.to_base_poly(e), "a")
            }
            (RingKind::Quotient { base, .. }, RingElement::Poly(_)) => base.format_poly(&self.to_base_poly(e), "X"),
            _ => "<invalid>".into(),
        }
    }

    /// Text of a polynomial over this ring in the variable `var`.
    pub fn format_poly(&self, f: &Polynomial, var: &str) -> String {
        let mut terms = Vec::new();
        for (k, c) in f.coeffs().iter().enumerate().rev() {
            if self.is_zero(c) {
                continue;
            }
            let mut cs = self.format_element(c);
            let simple = matches!(self.kind(), RingKind::Rational | RingKind::Prime(_));
            let plain_int = cs.trim_start_matches('-').bytes().all(|b| b.is_ascii_digit());
            if !simple && !plain_int {
                cs = format!("{{{cs}}}");
            }
            let m = monomial(var, k);
            terms.push(if m.is_empty() {
                cs
            } else if cs == "1" {
                m
            } else if cs == "-1" {
                format!("-{m}")
            } else {
                format!("{cs}*{m}")
            });
        }
        join_terms(terms)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Rational => write!(f, "Q"),
            RingKind::Prime(p) => write!(f, "GF({p})"),
            RingKind::Extension { p, modulus } => {
                let base = modulus.ring();
                write!(f, "GF({p}^{},{})", modulus.degree().unwrap(), base.format_poly(modulus, "X"))
            }
            RingKind::Quotient { base, modulus } => {
                if base.is_product() {
                    write!(f, "({base})")?;
                } else {
                    write!(f, "{base}")?;
                }
                write!(f, "[X]/({})", base.format_poly(modulus, "X"))
            }
            RingKind::Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|r| if r.is_product() { format!("({r})") } else { r.to_string() })
                    .collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

/// Parse a possibly negative integer (used by the CLI for flags).
pub fn parse_int(s: &str) -> Option<i64> {
    let v: BigInt = s.trim().parse().ok()?;
    if v.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    v.to_i64()
}
