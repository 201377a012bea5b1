//! Polynomials and rational functions in (q, Q, Kv) over the integers,
//! where Q stands for q^n and Kv for q^k.
//!
//! Shift quotients of q-hypergeometric summands and telescoping
//! certificates live here.

use crate::bipoly::BiPoly;
use crate::laurent::LaurentPoly;
use crate::parse::{self, format_monomial, format_terms, RawPoly};
use crate::ratfun::RatFun;
use crate::upoly::UPoly;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in (q, Q, Kv) over Z, keyed by exponent triple.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TriPoly {
    terms: BTreeMap<(u32, u32, u32), BigInt>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn one() -> Self {
        let mut p = TriPoly::zero();
        p.add_term(0, 0, 0, BigInt::from(1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, qe: u32, biq: u32, kv: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((qe, biq, kv))
            .or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(qe, biq, kv));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b, k), c) in &other.terms {
            out.add_term(a, b, k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TriPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TriPoly::zero();
        for (&(a1, b1, k1), c1) in &self.terms {
            for (&(a2, b2, k2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, k1 + k2, c1 * c2);
            }
        }
        out
    }

    pub fn deg_kv(&self) -> u32 {
        self.terms.keys().map(|&(_, _, k)| k).max().unwrap_or(0)
    }

    /// Leading coefficient under graded lex taking q before Q before Kv.
    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .max_by_key(|(&(a, b, k), _)| (a as u64 + b as u64 + k as u64, a, b))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Gcd over Z[q, Q, Kv], positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.sign_normal();
        }
        if other.is_zero() {
            return self.sign_normal();
        }
        let g = self.to_nested().gcd(&other.to_nested());
        Self::from_nested(&g).sign_normal()
    }

    fn sign_normal(&self) -> Self {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(TriPoly::zero());
        }
        let q = self.to_nested().div_exact(&d.to_nested())?;
        Some(Self::from_nested(&q))
    }

    /// Embed a (q, Q) polynomial.
    pub fn from_bipoly(p: &BiPoly) -> Self {
        let mut out = TriPoly::zero();
        for (&(a, b), c) in p.terms() {
            out.add_term(a, b, 0, c.clone());
        }
        out
    }

    /// Substitute Kv -> 1, collapsing into a (q, Q) polynomial.
    pub fn eval_kv_at_1(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b, _), c) in &self.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    /// Substitute Kv -> q^m Kv (the k -> k+m shift on Kv = q^k), m >= 0.
    pub fn shift_kv(&self, m: u32) -> Self {
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b, k), c)| ((a + m * k, b, k), c.clone()))
                .collect(),
        }
    }

    /// Substitute Q -> q^m Q (the n -> n+m shift on Q = q^n), m >= 0.
    pub fn shift_big_q(&self, m: u32) -> Self {
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b, k), c)| ((a + m * b, b, k), c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at Q = q^n, Kv = q^k: a Laurent polynomial in q.
    pub fn eval_points(&self, n: i64, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(a, b, kv), c) in &self.terms {
            out.add_term(
                a as i64 + n * b as i64 + k * kv as i64,
                BigRational::from(c.clone()),
            );
        }
        out
    }

    /// Collect by Kv-degree: coefficient of Kv^j as an exact element of
    /// Q(q, Q).
    pub fn kv_coefficients(&self) -> Vec<RatFun> {
        let d = self.deg_kv() as usize;
        let mut out: Vec<BiPoly> = vec![BiPoly::zero(); d + 1];
        for (&(a, b, k), c) in &self.terms {
            out[k as usize].add_term(a, b, c.clone());
        }
        out.into_iter().map(RatFun::from_poly).collect()
    }

    // Nested dense form: outer Kv, middle Q, inner q.
    fn to_nested(&self) -> UPoly<UPoly<UPoly<BigInt>>> {
        let dk = self.deg_kv() as usize;
        let mut levels: Vec<BiPoly> = vec![BiPoly::zero(); dk + 1];
        for (&(a, b, k), c) in &self.terms {
            levels[k as usize].add_term(a, b, c.clone());
        }
        UPoly::new(levels.iter().map(|p| p.to_nested()).collect())
    }

    fn from_nested(p: &UPoly<UPoly<UPoly<BigInt>>>) -> TriPoly {
        let mut out = TriPoly::zero();
        for (k, level) in p.coeffs.iter().enumerate() {
            for (b, row) in level.coeffs.iter().enumerate() {
                for (a, c) in row.coeffs.iter().enumerate() {
                    out.add_term(a as u32, b as u32, k as u32, c.clone());
                }
            }
        }
        out
    }

    pub fn parse(src: &str) -> Result<Self> {
        let raw: RawPoly = parse::parse_raw(src)?;
        parse::restrict_vars(&raw, &[0, 1, 4], "a polynomial in (q, Q, Kv)")?;
        let mut p = TriPoly::zero();
        for (e, c) in &raw.terms {
            if e[0] < 0 || e[1] < 0 || e[4] < 0 {
                return Err(Error::Domain(
                    "negative exponents not allowed in (q, Q, Kv) polynomials".into(),
                ));
            }
            p.add_term(e[0] as u32, e[1] as u32, e[4] as u32, c.clone());
        }
        Ok(p)
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(&(a1, b1, k1), _), (&(a2, b2, k2), _)| {
            (a2 as u64 + b2 as u64 + k2 as u64, a2, b2).cmp(&(
                a1 as u64 + b1 as u64 + k1 as u64,
                a1,
                b1,
            ))
        });
        let rendered: Vec<(BigInt, String)> = terms
            .into_iter()
            .map(|(&(a, b, k), c)| {
                (
                    c.clone(),
                    format_monomial(&[("q", a as i64), ("Q", b as i64), ("Kv", k as i64)]),
                )
            })
            .collect();
        write!(f, "{}", format_terms(&rendered))
    }
}

/// Reduced rational function in (q, Q, Kv): shift quotients of proper
/// q-hypergeometric terms and telescoping certificates.
///
/// Canonical: gcd(num, den) = 1 over Z[q, Q, Kv] and the denominator's
/// leading coefficient is positive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun3 {
    num: TriPoly,
    den: TriPoly,
}

impl RatFun3 {
    pub fn new(num: TriPoly, den: TriPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun3 {
                num: TriPoly::zero(),
                den: TriPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFun3 { num, den })
    }

    pub fn from_poly(p: TriPoly) -> Self {
        RatFun3 {
            num: p,
            den: TriPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun3::from_poly(TriPoly::one())
    }

    pub fn zero() -> Self {
        RatFun3 {
            num: TriPoly::zero(),
            den: TriPoly::one(),
        }
    }

    pub fn num(&self) -> &TriPoly {
        &self.num
    }

    pub fn den(&self) -> &TriPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFun3::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun3::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFun3::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&RatFun3 {
            num: other.num.neg(),
            den: other.den.clone(),
        })
    }

    pub fn shift_kv(&self, m: u32) -> Self {
        RatFun3::new(self.num.shift_kv(m), self.den.shift_kv(m)).expect("shift keeps den nonzero")
    }

    pub fn shift_big_q(&self, m: u32) -> Self {
        RatFun3::new(self.num.shift_big_q(m), self.den.shift_big_q(m))
            .expect("shift keeps den nonzero")
    }

    /// Evaluate Kv -> 1. Errors when the denominator vanishes there.
    pub fn eval_kv_at_1(&self) -> Result<RatFun> {
        let den = self.den.eval_kv_at_1();
        if den.is_zero() {
            return Err(Error::CertificatePole);
        }
        Ok(RatFun::new(self.num.eval_kv_at_1(), den))
    }

    /// Exact evaluation at Q = q^n, Kv = q^k as a Laurent fraction
    /// (numerator, denominator); the denominator may vanish at unlucky
    /// points, callers compare cross-multiplied.
    pub fn eval_points(&self, n: i64, k: i64) -> (LaurentPoly, LaurentPoly) {
        (self.num.eval_points(n, k), self.den.eval_points(n, k))
    }
}

impl fmt::Display for RatFun3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_is_one = self.den == TriPoly::one();
        if den_is_one {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivariate_gcd_reduction() {
        // (Kv - Q)(qKv - 1) / (Kv - Q) reduces
        let num = TriPoly::parse("(Kv - Q)*(q*Kv - 1)").unwrap();
        let den = TriPoly::parse("Kv - Q").unwrap();
        let r = RatFun3::new(num, den).unwrap();
        assert_eq!(r.num(), &TriPoly::parse("q*Kv - 1").unwrap());
        assert_eq!(r.den(), &TriPoly::one());
    }

    #[test]
    fn kv_shift() {
        let p = TriPoly::parse("Q*Kv^2 + Kv").unwrap();
        assert_eq!(
            p.shift_kv(1),
            TriPoly::parse("q^2*Q*Kv^2 + q*Kv").unwrap()
        );
    }

    #[test]
    fn eval_kv_at_1_pole() {
        let r = RatFun3::new(
            TriPoly::parse("Q").unwrap(),
            TriPoly::parse("Kv - 1").unwrap(),
        )
        .unwrap();
        assert_eq!(r.eval_kv_at_1(), Err(Error::CertificatePole));
    }
}
