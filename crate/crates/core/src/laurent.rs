//! Laurent polynomials in q over the rationals.
//!
//! Concrete colored Jones values live here. Coefficients are exact
//! `BigRational`s: intermediate telescoping residuals are rational in q,
//! while the final Jones values are asserted to have integer coefficients.

use crate::parse::{self, format_monomial, RawPoly};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in q: finite map exponent -> nonzero rational.
/// Canonical: two values are equal iff their term maps are identical.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigRational::one())
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    /// q^exp with coefficient 1.
    pub fn q_power(exp: i64) -> Self {
        LaurentPoly::monomial(exp, BigRational::one())
    }

    pub fn from_integer_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_term(e, BigRational::from(BigInt::from(c)));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(exp)
            .or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Substitute q -> q^m (m != 0). Used to turn Q-coefficients into
    /// concrete q-power sequences.
    pub fn inflate(&self, m: i64) -> Self {
        assert!(m != 0, "inflate by zero");
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * m, c.clone())).collect(),
        }
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() {
            if self.terms.keys().any(|&e| e < 0) {
                return Err(Error::Domain(
                    "evaluation at q = 0 with negative exponents present".into(),
                ));
            }
            return Ok(self.coeff(0));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * rat_pow(q0, *e);
        }
        Ok(acc)
    }

    /// Sum of coefficients, i.e. the value at q = 1.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// True when invariant under q -> 1/q.
    pub fn is_palindromic(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e).map_or(false, |d| d == c))
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn parse(src: &str) -> Result<Self> {
        let raw = parse_raw_laurent(src)?;
        Ok(raw)
    }
}

fn parse_raw_laurent(src: &str) -> Result<LaurentPoly> {
    let raw: RawPoly = parse::parse_raw(src)?;
    parse::restrict_vars(&raw, &[0], "a Laurent polynomial in q")?;
    let mut p = LaurentPoly::zero();
    for (e, c) in &raw.terms {
        p.add_term(e[0], BigRational::from(c.clone()));
    }
    Ok(p)
}

fn rat_pow(base: &BigRational, exp: i64) -> BigRational {
    base.pow(i32::try_from(exp).expect("exponent fits i32"))
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponent order, matching the CLI's golden output
    /// (`q + q^3 - q^4`). Rational coefficients print as `a/b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = format_monomial(&[("q", *e)]);
            if mono.is_empty() {
                out.push_str(&format_rat(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rat(&abs));
                    out.push('*');
                }
                out.push_str(&mono);
            }
        }
        write!(f, "{out}")
    }
}

fn format_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        // (q + q^-1) at 2 -> 5/2
        let p = LaurentPoly::from_integer_terms(&[(1, 1), (-1, 1)]);
        let v = p.eval(&BigRational::from(BigInt::from(2))).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(5), BigInt::from(2)));
        // value at 1 is the coefficient sum
        let p = LaurentPoly::parse("q + q^3 - q^4").unwrap();
        assert_eq!(p.eval_at_one(), BigRational::one());
        // q = 0 with negative exponents is an error
        let p = LaurentPoly::from_integer_terms(&[(-2, 3)]);
        assert!(p.eval(&BigRational::zero()).is_err());
    }

    #[test]
    fn display_ascending() {
        let p = LaurentPoly::parse("q + q^3 - q^4").unwrap();
        assert_eq!(p.to_string(), "q + q^3 - q^4");
        let p = LaurentPoly::parse("q^-2 - q^-1 + 3").unwrap();
        assert_eq!(p.to_string(), "q^-2 - q^-1 + 3");
    }

    #[test]
    fn palindromic() {
        let p = LaurentPoly::parse("q^2 - q + 1 - q^-1 + q^-2").unwrap();
        assert!(p.is_palindromic());
        assert!(!LaurentPoly::parse("q + 1").unwrap().is_palindromic());
    }

    #[test]
    fn ring_axioms_random() {
        // small deterministic sample; full randomized suite lives in the
        // acceptance tests
        let polys = [
            LaurentPoly::parse("q - 1").unwrap(),
            LaurentPoly::parse("q^-1 + q").unwrap(),
            LaurentPoly::parse("2q^3 - q + 5").unwrap(),
        ];
        for a in &polys {
            for b in &polys {
                for c in &polys {
                    let left = a.mul(&b.add(c));
                    let right = a.mul(b).add(&a.mul(c));
                    assert_eq!(left, right);
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
                assert_eq!(a.sub(b), a.add(&b.neg()));
            }
        }
    }
}
