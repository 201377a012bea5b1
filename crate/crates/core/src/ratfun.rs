//! The fraction field K = Q(q, Q): coefficients of Ore operators.
//!
//! Canonical representative: gcd(num, den) = 1 over Z[q, Q] (integer
//! content included), and the denominator's leading coefficient under the
//! fixed monomial order is positive. Two values are equal iff their
//! representatives are identical.

use crate::bipoly::BiPoly;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::Signed;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun {
    num: BiPoly,
    den: BiPoly,
}

impl RatFun {
    /// Construct and reduce to the canonical representative.
    /// Panics if `den` is zero; use [`RatFun::checked_new`] for fallible
    /// construction.
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        Self::checked_new(num, den).expect("zero denominator")
    }

    pub fn checked_new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun {
                num: BiPoly::zero(),
                den: BiPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: BiPoly) -> Self {
        RatFun {
            num: p,
            den: BiPoly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFun::from_poly(BiPoly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(BiPoly::one())
    }

    pub fn constant(c: i64) -> Self {
        RatFun::from_poly(BiPoly::constant(c))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFun::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::new(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Self> {
        RatFun::one().div(self)
    }

    /// Arithmetic dispatch used by the CLI and tests.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
            ArithOp::Div => self.div(other)?,
        })
    }

    /// The automorphism sigma^k: Q -> q^k Q, for any integer k.
    /// Negative powers clear the arising q-denominators into the
    /// representation and re-reduce, so the result is canonical.
    pub fn sigma_pow(&self, k: i64) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        if k >= 0 {
            return RatFun::new(
                self.num.sigma_pow(k as u32),
                self.den.sigma_pow(k as u32),
            );
        }
        // Q -> q^k Q with k < 0: term (i, j) gains q-exponent k*j, possibly
        // negative; shift both num and den by a common q-power.
        let shift_needed = |p: &BiPoly| -> i64 {
            p.terms()
                .map(|(&(a, b), _)| a as i64 + k * b as i64)
                .min()
                .unwrap_or(0)
        };
        let m = shift_needed(&self.num).min(shift_needed(&self.den)).min(0);
        let apply = |p: &BiPoly| -> BiPoly {
            let mut out = BiPoly::zero();
            for (&(a, b), c) in p.terms() {
                let e = a as i64 + k * b as i64 - m;
                out.add_term(e as u32, b, c.clone());
            }
            out
        };
        RatFun::new(apply(&self.num), apply(&self.den))
    }

    /// Evaluate Q -> q^n; exact pair (numerator, denominator) of Laurent
    /// polynomials (not reduced).
    pub fn eval_big_q(&self, n: i64) -> (crate::LaurentPoly, crate::LaurentPoly) {
        (self.num.eval_big_q(n), self.den.eval_big_q(n))
    }

    /// Evaluate q -> 1, returning `None` when the denominator vanishes.
    pub fn eval_q_at_1(&self) -> Option<(BiPoly, BiPoly)> {
        let den = self.den.eval_q_at_1();
        if den.is_zero() {
            return None;
        }
        Some((self.num.eval_q_at_1(), den))
    }

    /// Multiply by the scalar c.
    pub fn scale(&self, c: &BigInt) -> Self {
        RatFun::new(self.num.scale(c), self.den.clone())
    }
}

/// Field operation selector for [`RatFun::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &str, den: &str) -> RatFun {
        RatFun::new(BiPoly::parse(num).unwrap(), BiPoly::parse(den).unwrap())
    }

    #[test]
    fn like_denominator_addition() {
        let a = rf("Q", "q - 1");
        let sum = a.add(&a);
        assert_eq!(sum, rf("2Q", "q - 1"));
    }

    #[test]
    fn reduction_on_construction() {
        // difference of squares
        let a = rf("q^2 - Q^2", "q - Q");
        assert_eq!(a, RatFun::from_poly(BiPoly::parse("q + Q").unwrap()));
    }

    #[test]
    fn self_division() {
        let a = rf("q^2 - Q", "q^3 - Q^2");
        assert!(a.div(&a).unwrap().is_one());
        assert_eq!(a.div(&RatFun::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonicalization_idempotent() {
        let k = BiPoly::parse("3qQ - 3Q").unwrap();
        let base = rf("q^2 - Q", "q^3 - Q^2");
        let scaled = RatFun::new(base.num().mul(&k), base.den().mul(&k));
        assert_eq!(scaled, base);
    }

    #[test]
    fn sigma_examples() {
        let q_var = rf("Q", "1");
        assert_eq!(q_var.sigma_pow(1), rf("qQ", "1"));
        // direct substitution, equal as field elements
        let a = rf("q^2 - Q", "q^3 - Q^2");
        assert_eq!(a.sigma_pow(1), rf("q^2 - qQ", "q^3 - q^2Q^2"));
        // inverse automorphism round-trip
        for f in [rf("q^2 - Q", "q^3 - Q^2"), rf("Q^3 + qQ", "q - 1")] {
            assert_eq!(f.sigma_pow(1).sigma_pow(-1), f);
            assert_eq!(f.sigma_pow(-2).sigma_pow(2), f);
        }
        assert_eq!(q_var.sigma_pow(-1), rf("Q", "q"));
    }

    #[test]
    fn field_axioms_spot() {
        let xs = [rf("q", "Q"), rf("q - Q", "q + Q"), rf("1", "q^2 - 1")];
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
                if !b.is_zero() {
                    assert_eq!(a.div(b).unwrap().mul(b), *a);
                }
            }
        }
    }
}
