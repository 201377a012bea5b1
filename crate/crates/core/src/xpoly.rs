//! Univariate polynomials and rational functions in x over K = Q(q, Q),
//! where x stands for q^k. The working representation of the q-Gosper and
//! q-Zeilberger engines.

use crate::ratfun::RatFun;
use crate::tripoly::{RatFun3, TriPoly};
use crate::{Error, Result};
use std::fmt;

/// Dense polynomial in x over Q(q, Q); coefficients ascending, no trailing
/// zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XPoly {
    pub coeffs: Vec<RatFun>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<RatFun>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly::new(vec![RatFun::one()])
    }

    pub fn x() -> Self {
        XPoly::new(vec![RatFun::zero(), RatFun::one()])
    }

    pub fn constant(c: RatFun) -> Self {
        XPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &RatFun {
        self.coeffs.last().expect("leading of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> RatFun {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        XPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![RatFun::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        XPoly::new(out)
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Substitute x -> q^m x (any integer m): coefficient i gains q^{m i}.
    pub fn shift_x(&self, m: i64) -> Self {
        XPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let e = m * i as i64;
                    if e == 0 || c.is_zero() {
                        return c.clone();
                    }
                    let factor = if e > 0 {
                        RatFun::from_poly(crate::BiPoly::monomial(e as u32, 0, 1.into()))
                    } else {
                        RatFun::new(
                            crate::BiPoly::one(),
                            crate::BiPoly::monomial((-e) as u32, 0, 1.into()),
                        )
                    };
                    c.mul(&factor)
                })
                .collect(),
        )
    }

    /// Euclidean division over the field K.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        if r.is_zero() || r.degree() < d.degree() {
            return (XPoly::zero(), r);
        }
        let mut q = vec![RatFun::zero(); r.degree() - d.degree() + 1];
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let c = r.leading().div(d.leading()).expect("nonzero leading");
            q[shift] = c.clone();
            let mut sub = vec![RatFun::zero(); shift];
            sub.extend(d.coeffs.iter().map(|a| a.mul(&c)));
            r = r.sub(&XPoly::new(sub));
            if !r.is_zero() && r.degree() == shift + d.degree() {
                // leading must cancel by construction
                unreachable!("leading term did not cancel in division");
            }
        }
        (XPoly::new(q), r)
    }

    /// Monic gcd over the field K.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading");
        self.scale(&inv)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return XPoly::zero();
        }
        let g = self.gcd(other);
        let (q, r) = self.mul(other).div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Value at x = 1: the coefficient sum.
    pub fn eval_at_1(&self) -> RatFun {
        self.coeffs
            .iter()
            .fold(RatFun::zero(), |acc, c| acc.add(c))
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if i == 0 {
                    format!("{c}")
                } else if i == 1 {
                    format!("({c})*x")
                } else {
                    format!("({c})*x^{i}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Rational function in x over K, kept as a reduced fraction with monic
/// denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XRatFun {
    num: XPoly,
    den: XPoly,
}

impl XRatFun {
    pub fn new(num: XPoly, den: XPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(XRatFun {
                num: XPoly::zero(),
                den: XPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        // make the denominator monic, folding the unit into the numerator
        let lc = den.leading().clone();
        let inv = lc.inv().expect("nonzero leading");
        Ok(XRatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: XPoly) -> Self {
        XRatFun {
            num: p,
            den: XPoly::one(),
        }
    }

    pub fn zero() -> Self {
        XRatFun::from_poly(XPoly::zero())
    }

    pub fn one() -> Self {
        XRatFun::from_poly(XPoly::one())
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        XRatFun::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        XRatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        XRatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        XRatFun::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn shift_x(&self, m: i64) -> Self {
        XRatFun::new(self.num.shift_x(m), self.den.shift_x(m)).expect("shift keeps den nonzero")
    }

    /// Convert a trivariate rational function into K(x) form,
    /// collecting by Kv-degree.
    pub fn from_ratfun3(r: &RatFun3) -> Self {
        let num = XPoly::new(r.num().kv_coefficients());
        let den = XPoly::new(r.den().kv_coefficients());
        XRatFun::new(num, den).expect("nonzero denominator")
    }

    /// Convert back to a reduced trivariate fraction by clearing all
    /// (q, Q)-denominators.
    pub fn to_ratfun3(&self) -> RatFun3 {
        let clear = |p: &XPoly| -> (TriPoly, crate::BiPoly) {
            // common denominator of the coefficients
            let mut common = crate::BiPoly::one();
            for c in &p.coeffs {
                let g = common.gcd(c.den());
                common = common.mul(&c.den().div_exact(&g).expect("gcd divides"));
            }
            let mut out = TriPoly::zero();
            for (i, c) in p.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let scale = common.div_exact(c.den()).expect("common denominator");
                let coeff = c.num().mul(&scale);
                for (&(a, b), v) in coeff.terms() {
                    out.add_term(a, b, i as u32, v.clone());
                }
            }
            (out, common)
        };
        let (num3, num_den) = clear(&self.num);
        let (den3, den_den) = clear(&self.den);
        // num/num_den / (den/den_den) = num * den_den / (den * num_den)
        let num_full = num3.mul(&TriPoly::from_bipoly(&den_den));
        let den_full = den3.mul(&TriPoly::from_bipoly(&num_den));
        RatFun3::new(num_full, den_full).expect("nonzero denominator")
    }

    /// Exact value at x = 1; errors when the denominator vanishes there.
    pub fn eval_at_1(&self) -> Result<RatFun> {
        let den = self.den.eval_at_1();
        if den.is_zero() {
            return Err(Error::CertificatePole);
        }
        self.num.eval_at_1().div(&den)
    }
}

impl fmt::Display for XRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BiPoly;

    fn c(src: &str) -> RatFun {
        RatFun::from_poly(BiPoly::parse(src).unwrap())
    }

    #[test]
    fn gcd_and_reduction() {
        // (x - Q)(x - q) and (x - Q) x
        let a = XPoly::new(vec![c("qQ"), c("-q-Q"), c("1")]);
        let b = XPoly::new(vec![RatFun::zero(), c("-Q"), c("1")]);
        let g = a.gcd(&b);
        assert_eq!(g, XPoly::new(vec![c("-Q"), c("1")]));
        let r = XRatFun::new(a, b).unwrap();
        assert_eq!(r.num(), &XPoly::new(vec![c("-q"), c("1")]));
        assert_eq!(r.den(), &XPoly::new(vec![RatFun::zero(), c("1")]));
    }

    #[test]
    fn shift_x_consistency() {
        // x^2 + Q x shifted by 1: q^2 x^2 + qQ x
        let p = XPoly::new(vec![RatFun::zero(), c("Q"), c("1")]);
        let s = p.shift_x(1);
        assert_eq!(s, XPoly::new(vec![RatFun::zero(), c("qQ"), c("q^2")]));
        assert_eq!(s.shift_x(-1), p);
    }

    #[test]
    fn tripoly_round_trip() {
        let r = RatFun3::new(
            TriPoly::parse("q*Q*Kv^2 - Kv").unwrap(),
            TriPoly::parse("Q - q*Kv").unwrap(),
        )
        .unwrap();
        let x = XRatFun::from_ratfun3(&r);
        assert_eq!(x.to_ratfun3(), r);
    }
}
