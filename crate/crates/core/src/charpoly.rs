//! Polynomials in (L, M) over the integers: q = 1 images of recursion
//! operators and the stored A-polynomials.

use crate::parse::{self, format_monomial, format_terms, RawPoly};
use crate::upoly::UPoly;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in (L, M) over Z, keyed by (L-exponent, M-exponent).
/// Canonical: no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CharPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl CharPoly {
    pub fn zero() -> Self {
        CharPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, le: u32, me: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((le, me)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(le, me));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = CharPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        CharPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn deg_l(&self) -> u32 {
        self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    pub fn min_deg_l(&self) -> u32 {
        self.terms.keys().map(|&(a, _)| a).min().unwrap_or(0)
    }

    pub fn min_deg_m(&self) -> u32 {
        self.terms.keys().map(|&(_, b)| b).min().unwrap_or(0)
    }

    /// Leading coefficient under graded lex taking L before M.
    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .max_by_key(|(&(a, b), _)| (a as u64 + b as u64, a))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Remove integer content and fix a positive leading coefficient.
    pub fn content_free(&self) -> Self {
        if self.is_zero() {
            return CharPoly::zero();
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num::Integer::gcd(&g, c);
        }
        let mut out = CharPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c / &g)).collect(),
        };
        if out.leading_coeff().is_negative() {
            out = out.neg();
        }
        out
    }

    /// Strip common L- and M-powers (divide by L^a M^b).
    pub fn monomial_free(&self) -> Self {
        let a = self.min_deg_l();
        let b = self.min_deg_m();
        CharPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(l, m), c)| ((l - a, m - b), c.clone()))
                .collect(),
        }
    }

    /// View as a polynomial in L: coefficient of L^i is a polynomial in M.
    pub fn by_l_degree(&self) -> Vec<UPoly<BigInt>> {
        let d = self.deg_l() as usize;
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); d + 1];
        for (&(l, m), c) in &self.terms {
            let row = &mut rows[l as usize];
            if row.len() <= m as usize {
                row.resize(m as usize + 1, BigInt::zero());
            }
            row[m as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    /// Substitute M -> 1: the univariate polynomial in L, as coefficients
    /// ascending in L-degree.
    pub fn eval_m_at_1(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.deg_l() as usize + 1];
        for (&(l, _), c) in &self.terms {
            out[l as usize] += c;
        }
        out
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(CharPoly::zero());
        }
        let q = self.to_nested().div_exact(&d.to_nested())?;
        Some(Self::from_nested(&q))
    }

    // Nested dense form: outer variable L, inner variable M.
    fn to_nested(&self) -> UPoly<UPoly<BigInt>> {
        UPoly::new(self.by_l_degree())
    }

    fn from_nested(p: &UPoly<UPoly<BigInt>>) -> CharPoly {
        let mut out = CharPoly::zero();
        for (l, row) in p.coeffs.iter().enumerate() {
            for (m, c) in row.coeffs.iter().enumerate() {
                out.add_term(l as u32, m as u32, c.clone());
            }
        }
        out
    }

    pub fn parse(src: &str) -> Result<Self> {
        let raw: RawPoly = parse::parse_raw(src)?;
        parse::restrict_vars(&raw, &[2, 3], "a polynomial in (L, M)")?;
        let mut p = CharPoly::zero();
        for (e, c) in &raw.terms {
            if e[2] < 0 || e[3] < 0 {
                return Err(Error::Domain(
                    "negative exponents not allowed in (L, M) polynomials".into(),
                ));
            }
            p.add_term(e[2] as u32, e[3] as u32, c.clone());
        }
        Ok(p)
    }
}

impl fmt::Display for CharPoly {
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
                    format_monomial(&[("L", a as i64), ("M", b as i64)]),
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
    fn parse_and_multiply() {
        let p = CharPoly::parse("(L-1)*(L+M^6)").unwrap();
        let q = CharPoly::parse("L-1")
            .unwrap()
            .mul(&CharPoly::parse("L+M^6").unwrap());
        assert_eq!(p, q);
    }

    #[test]
    fn division_of_stored_factors() {
        let full = CharPoly::parse(
            "(L-1)*(-L+L*M^2+M^4+2L*M^4+L^2M^4+L*M^6-L*M^8)",
        )
        .unwrap();
        let f1 = CharPoly::parse("L-1").unwrap();
        let f2 = CharPoly::parse("-L+L*M^2+M^4+2L*M^4+L^2M^4+L*M^6-L*M^8").unwrap();
        assert_eq!(full.div_exact(&f1), Some(f2.clone()));
        assert_eq!(full.div_exact(&f2), Some(f1));
        assert_eq!(full.div_exact(&CharPoly::parse("L+M^2").unwrap()), None);
    }

    #[test]
    fn m_at_one() {
        let p = CharPoly::parse("(L-1)*(L+M^6)").unwrap();
        // (L-1)(L+1) = L^2 - 1
        assert_eq!(
            p.eval_m_at_1(),
            vec![BigInt::from(-1), BigInt::zero(), BigInt::from(1)]
        );
    }
}
