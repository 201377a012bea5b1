//! Polynomials in (q, Q) over the integers.
//!
//! Coefficient ring of normalized recursion operators. Exponents are
//! nonnegative; Laurent content in Q (common factors Q^b) is extracted
//! during operator normalization in the `ore` module, not stored here.
//!
//! The fixed monomial order is graded lexicographic taking q before Q:
//! compare total degree first, then the q-exponent (so q^2*Q beats q*Q^2).
//! It is used only to pick a canonical sign (primitive parts carry a
//! positive leading coefficient; the content carries the sign).

use crate::laurent::LaurentPoly;
use crate::parse::{self, format_monomial, format_terms, RawPoly};
use crate::upoly::UPoly;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in (q, Q) over Z, keyed by (q-exponent, Q-exponent).
/// Canonical: no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(0, 0, BigInt::one())
    }

    pub fn constant(c: i64) -> Self {
        BiPoly::monomial(0, 0, BigInt::from(c))
    }

    pub fn monomial(qe: u32, biq: u32, coeff: BigInt) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(qe, biq, coeff);
        p
    }

    /// The variable q.
    pub fn q() -> Self {
        BiPoly::monomial(1, 0, BigInt::one())
    }

    /// The variable Q.
    pub fn big_q() -> Self {
        BiPoly::monomial(0, 1, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, qe: u32, biq: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((qe, biq)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(qe, biq));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiply by the monomial q^dq * Q^dQ.
    pub fn mul_monomial(&self, dq: u32, dbig: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + dq, b + dbig), c.clone()))
                .collect(),
        }
    }

    pub fn deg_q(&self) -> u32 {
        self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    pub fn deg_big_q(&self) -> u32 {
        self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0)
    }

    pub fn min_deg_q(&self) -> u32 {
        self.terms.keys().map(|&(a, _)| a).min().unwrap_or(0)
    }

    pub fn min_deg_big_q(&self) -> u32 {
        self.terms.keys().map(|&(_, b)| b).min().unwrap_or(0)
    }

    /// Leading coefficient under the fixed monomial order
    /// (graded lex, ties broken by higher q-exponent).
    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .max_by_key(|(&(a, b), _)| (a as u64 + b as u64, a))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Signed content and primitive part: `self = content * primitive`,
    /// primitive has content 1 and a positive leading coefficient under the
    /// fixed order; the content carries the sign (so -5Q -> (-5, Q)).
    pub fn content_and_primitive(&self) -> Result<(BigInt, BiPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("content_and_primitive input"));
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num::Integer::gcd(&g, c);
        }
        let mut content = g;
        let mut prim = BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c / &content))
                .collect(),
        };
        if prim.leading_coeff().is_negative() {
            prim = prim.neg();
            content = -content;
        }
        Ok((content, prim))
    }

    /// Integer content (unsigned).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num::Integer::gcd(&g, c);
        }
        g
    }

    /// Gcd over Z[q, Q], including integer content; result carries a
    /// positive leading coefficient under the fixed order.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.gcd_normal_sign();
        }
        if other.is_zero() {
            return self.gcd_normal_sign();
        }
        let a = self.to_nested();
        let b = other.to_nested();
        let g = a.gcd(&b);
        Self::from_nested(&g).gcd_normal_sign()
    }

    fn gcd_normal_sign(&self) -> Self {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let q = self.to_nested().div_exact(&d.to_nested())?;
        Some(Self::from_nested(&q))
    }

    /// Substitution q -> 1, recollected in Q (the result is q-free).
    pub fn eval_q_at_1(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(_, b), c) in &self.terms {
            out.add_term(0, b, c.clone());
        }
        out
    }

    /// Substitution Q -> q^n, exact, as a Laurent polynomial in q.
    pub fn eval_big_q(&self, n: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a as i64 + n * b as i64, BigRational::from(c.clone()));
        }
        out
    }

    /// Value at (q, Q) = (1, 1): the coefficient sum.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// sigma^k for k >= 0: Q -> q^k Q, i.e. (i, j) -> (i + k*j, j).
    pub fn sigma_pow(&self, k: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + k * b, b), c.clone()))
                .collect(),
        }
    }

    // Nested dense form: outer variable Q, inner variable q.
    pub(crate) fn to_nested(&self) -> UPoly<UPoly<BigInt>> {
        let dq = self.deg_big_q() as usize;
        let mut rows: Vec<UPoly<BigInt>> = vec![UPoly::zero(); dq + 1];
        let mut raw: Vec<Vec<BigInt>> = vec![Vec::new(); dq + 1];
        for (&(a, b), c) in &self.terms {
            let row = &mut raw[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, BigInt::zero());
            }
            row[a as usize] = c.clone();
        }
        for (i, row) in raw.into_iter().enumerate() {
            rows[i] = UPoly::new(row);
        }
        UPoly::new(rows)
    }

    pub(crate) fn from_nested(p: &UPoly<UPoly<BigInt>>) -> BiPoly {
        let mut out = BiPoly::zero();
        for (b, row) in p.coeffs.iter().enumerate() {
            for (a, c) in row.coeffs.iter().enumerate() {
                out.add_term(a as u32, b as u32, c.clone());
            }
        }
        out
    }

    pub fn parse(src: &str) -> Result<Self> {
        let raw: RawPoly = parse::parse_raw(src)?;
        parse::restrict_vars(&raw, &[0, 1], "a polynomial in (q, Q)")?;
        let mut p = BiPoly::zero();
        for (e, c) in &raw.terms {
            if e[0] < 0 || e[1] < 0 {
                return Err(Error::Domain(
                    "negative exponents not allowed in (q, Q) polynomials".into(),
                ));
            }
            p.add_term(e[0] as u32, e[1] as u32, c.clone());
        }
        Ok(p)
    }
}

impl fmt::Display for BiPoly {
    /// Decreasing total degree, ties broken by the fixed monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(&(a1, b1), _), (&(a2, b2), _)| {
            (a2 as u64 + b2 as u64, a2).cmp(&(a1 as u64 + b1 as u64, a1))
        });
        let rendered: Vec<(BigInt, String)> = terms
            .into_iter()
            .map(|(&(a, b), c)| {
                (
                    c.clone(),
                    format_monomial(&[("q", a as i64), ("Q", b as i64)]),
                )
            })
            .collect();
        write!(f, "{}", format_terms(&rendered))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn content_and_primitive_examples() {
        let p = BiPoly::parse("6q^2Q - 4qQ^2").unwrap();
        let (c, prim) = p.content_and_primitive().unwrap();
        assert_eq!(c, BigInt::from(2));
        assert_eq!(prim, BiPoly::parse("3q^2Q - 2qQ^2").unwrap());

        let p = BiPoly::parse("q - Q").unwrap();
        let (c, prim) = p.content_and_primitive().unwrap();
        assert_eq!(c, BigInt::one());
        assert_eq!(prim, p);

        // sign convention: content carries the sign
        let p = BiPoly::parse("-5Q").unwrap();
        let (c, prim) = p.content_and_primitive().unwrap();
        assert_eq!(c, BigInt::from(-5));
        assert_eq!(prim, BiPoly::parse("Q").unwrap());

        assert!(BiPoly::zero().content_and_primitive().is_err());
    }

    #[test]
    fn eval_q_at_1_examples() {
        let p = BiPoly::parse("q^3 - Q^2").unwrap();
        assert_eq!(p.eval_q_at_1(), BiPoly::parse("1 - Q^2").unwrap());
        let p = BiPoly::parse("(q-1)*Q").unwrap();
        assert!(p.eval_q_at_1().is_zero());
        let p = BiPoly::parse("q^2 + qQ + Q").unwrap();
        assert_eq!(p.eval_q_at_1(), BiPoly::parse("1 + 2Q").unwrap());
    }

    #[test]
    fn gcd_and_div() {
        let a = BiPoly::parse("q^2 - Q^2").unwrap();
        let b = BiPoly::parse("q - Q").unwrap();
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.div_exact(&b), Some(BiPoly::parse("q + Q").unwrap()));
        assert_eq!(a.div_exact(&BiPoly::parse("q + 1").unwrap()), None);
        // gcd catches monomial and integer content
        let a = BiPoly::parse("2q^2Q").unwrap();
        let b = BiPoly::parse("4qQ^2").unwrap();
        assert_eq!(a.gcd(&b), BiPoly::parse("2qQ").unwrap());
    }

    #[test]
    fn eval_big_q() {
        let p = BiPoly::parse("q + Q^2").unwrap();
        let l = p.eval_big_q(3);
        assert_eq!(l, LaurentPoly::from_integer_terms(&[(1, 1), (6, 1)]));
    }

    #[test]
    fn sigma_on_bipoly() {
        let p = BiPoly::parse("qQ^2 + Q").unwrap();
        assert_eq!(p.sigma_pow(2), BiPoly::parse("q^5Q^2 + q^2Q").unwrap());
    }

    #[test]
    fn display_order() {
        let p = BiPoly::parse("q - Q + q^2Q").unwrap();
        assert_eq!(p.to_string(), "q^2*Q + q - Q");
    }
}
