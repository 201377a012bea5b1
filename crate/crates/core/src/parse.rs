//! Textual polynomial grammar shared by the CLI, JSON schemas and tests.
//!
//! Grammar: integer coefficients, variables `q`, `Q`, `L`, `M`, `Kv`,
//! `^` for powers (negative exponents allowed on variables only), `*`
//! optional, parentheses, unary minus. Examples:
//!
//! ```text
//! (L-1)*(L+M^6)
//! q + q^3 - q^4
//! 2q^2Q - 3*Q^2
//! ```
//!
//! Malformed input is rejected with the byte position of the offending token.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Variable slots, in the fixed order used by exponent vectors.
pub const VARS: [&str; 5] = ["q", "Q", "L", "M", "Kv"];

/// Expanded multivariate term list over the five grammar variables.
/// Exponent vector indexed like [`VARS`]. Canonical: no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPoly {
    pub terms: BTreeMap<[i64; 5], BigInt>,
}

impl RawPoly {
    pub fn zero() -> Self {
        RawPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = RawPoly::zero();
        if !c.is_zero() {
            p.terms.insert([0; 5], c);
        }
        p
    }

    pub fn var(idx: usize, exp: i64) -> Self {
        let mut e = [0i64; 5];
        e[idx] = exp;
        let mut p = RawPoly::zero();
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn add_term(&mut self, exps: [i64; 5], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        RawPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = RawPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..5 {
                    e[i] += eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = RawPoly::constant(BigInt::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The set of variable indices actually used.
    pub fn used_vars(&self) -> Vec<usize> {
        let mut used = [false; 5];
        for e in self.terms.keys() {
            for i in 0..5 {
                if e[i] != 0 {
                    used[i] = true;
                }
            }
        }
        (0..5).filter(|&i| used[i]).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    toks: Vec<(usize, Tok)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(usize, Tok)>> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
            toks: Vec::new(),
        };
        while lx.pos < lx.src.len() {
            let p = lx.pos;
            let b = lx.src[p];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => lx.pos += 1,
                b'+' => lx.push1(Tok::Plus),
                b'-' => lx.push1(Tok::Minus),
                b'*' => lx.push1(Tok::Star),
                b'^' => lx.push1(Tok::Caret),
                b'(' => lx.push1(Tok::LParen),
                b')' => lx.push1(Tok::RParen),
                b'0'..=b'9' => {
                    let start = p;
                    while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_digit() {
                        lx.pos += 1;
                    }
                    let text = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap();
                    let n: BigInt = text.parse().map_err(|_| Error::Parse {
                        pos: start,
                        msg: format!("bad integer `{text}`"),
                    })?;
                    lx.toks.push((start, Tok::Int(n)));
                }
                b'K' => {
                    if lx.pos + 1 < lx.src.len() && lx.src[lx.pos + 1] == b'v' {
                        lx.toks.push((p, Tok::Var(4)));
                        lx.pos += 2;
                    } else {
                        return Err(Error::Parse {
                            pos: p,
                            msg: "unknown variable (did you mean `Kv`?)".into(),
                        });
                    }
                }
                b'q' => lx.push1(Tok::Var(0)),
                b'Q' => lx.push1(Tok::Var(1)),
                b'L' => lx.push1(Tok::Var(2)),
                b'M' => lx.push1(Tok::Var(3)),
                _ => {
                    return Err(Error::Parse {
                        pos: p,
                        msg: format!("unexpected character `{}`", b as char),
                    })
                }
            }
        }
        Ok(lx.toks)
    }

    fn push1(&mut self, t: Tok) {
        self.toks.push((self.pos, t));
        self.pos += 1;
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<RawPoly> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                neg = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor (['*'] factor)*
    fn term(&mut self) -> Result<RawPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := base ['^' ['-'] int]
    fn factor(&mut self) -> Result<RawPoly> {
        let base_pos = self.pos();
        let (base, is_var) = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let mut neg = false;
            if let Some(Tok::Minus) = self.peek() {
                self.bump();
                neg = true;
            }
            let exp = match self.bump() {
                Some(Tok::Int(n)) => n,
                _ => return self.err("expected integer exponent after `^`"),
            };
            let exp: i64 = exp.try_into().map_err(|_| Error::Parse {
                pos: base_pos,
                msg: "exponent too large".into(),
            })?;
            let exp = if neg { -exp } else { exp };
            if let Some(vi) = is_var {
                return Ok(RawPoly::var(vi, exp));
            }
            if exp < 0 {
                return self.err("negative exponent allowed on variables only");
            }
            return Ok(base.pow(exp as u32));
        }
        Ok(base)
    }

    // base := int | var | '(' expr ')'
    fn base(&mut self) -> Result<(RawPoly, Option<usize>)> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok((RawPoly::constant(n), None)),
            Some(Tok::Var(vi)) => Ok((RawPoly::var(vi, 1), Some(vi))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok((inner, None)),
                    _ => self.err("expected `)`"),
                }
            }
            _ => self.err("expected integer, variable or `(`"),
        }
    }
}

/// Parse a polynomial expression into an expanded term list.
pub fn parse_raw(src: &str) -> Result<RawPoly> {
    let toks = Lexer::run(src)?;
    let mut parser = Parser {
        toks,
        idx: 0,
        end: src.len(),
    };
    let p = parser.expr()?;
    if parser.idx != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}

/// Check that only the allowed variable indices occur.
pub fn restrict_vars(p: &RawPoly, allowed: &[usize], what: &str) -> Result<()> {
    for used in p.used_vars() {
        if !allowed.contains(&used) {
            return Err(Error::Domain(format!(
                "variable `{}` not allowed in {what}",
                VARS[used]
            )));
        }
    }
    Ok(())
}

/// One displayed monomial: the variable parts of a term, e.g. `q^2*Q`.
/// `exp == 1` prints the bare variable, negative exponents print `q^-1`.
pub fn format_monomial(parts: &[(&str, i64)]) -> String {
    let mut out = String::new();
    for (name, exp) in parts {
        if *exp == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(name);
        if *exp != 1 {
            out.push('^');
            out.push_str(&exp.to_string());
        }
    }
    out
}

/// Join (coefficient, monomial) pairs into `a + b - c` form.
/// Unit coefficients on nonconstant monomials are suppressed.
pub fn format_terms(terms: &[(BigInt, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (coeff, mono)) in terms.iter().enumerate() {
        let negative = coeff.is_negative();
        let abs = coeff.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(mono);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_powers() {
        let p = parse_raw("(L-1)*(L+M^6)").unwrap();
        let q = parse_raw("L^2 + L*M^6 - L - M^6").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn implicit_multiplication() {
        let p = parse_raw("2q^2Q").unwrap();
        let q = parse_raw("2*q^2*Q").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn negative_exponents_on_vars_only() {
        assert!(parse_raw("q^-3 + 1").is_ok());
        let e = parse_raw("(q+1)^-2").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }

    #[test]
    fn error_positions() {
        match parse_raw("q + #") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_raw("q + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn kv_variable() {
        let p = parse_raw("q*Q*Kv^2").unwrap();
        assert_eq!(p.used_vars(), vec![0, 1, 4]);
    }
}
