//! Dense univariate polynomials over a coefficient ring with gcd.
//!
//! Internal engine behind the multivariate gcds: Z[q] is `UPoly<BigInt>`,
//! Z[q][Q] is `UPoly<UPoly<BigInt>>`, and so on. Gcd uses the primitive
//! polynomial remainder sequence with content extraction at every step,
//! which keeps intermediate coefficients at the size of the primitive parts.

use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

/// Coefficient ring: enough structure for pseudo-division and primitive PRS.
pub trait Coeff: Clone + Eq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Nonnegative (sign-normalized) gcd; gcd(0, a) = |a|.
    fn gcd(&self, other: &Self) -> Self;
    /// Exact division; `None` when `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    /// Sign of the canonical representative (leading sign, recursively).
    fn is_negative(&self) -> bool;
}

impl Coeff for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (quo, rem) = self.div_rem(other);
        if Zero::is_zero(&rem) {
            Some(quo)
        } else {
            None
        }
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Dense univariate polynomial, coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly<C: Coeff> {
    pub coeffs: Vec<C>,
}

impl<C: Coeff> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &C {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
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
        UPoly::new(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        UPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Content: gcd of all coefficients (nonnegative representative).
    pub fn content(&self) -> C {
        let mut g = C::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide every coefficient exactly by `c`.
    pub fn div_content(&self, c: &C) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.div_exact(c)?);
        }
        Some(UPoly { coeffs: out })
    }

    /// Primitive part with a positive (recursive-leading) sign.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let c = self.content();
        let p = self.div_content(&c).expect("content divides");
        if p.leading().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Pseudo-remainder: lc(d)^(deg n - deg d + 1) * n = q*d + r, deg r < deg d.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "pseudo_rem by zero");
        let mut r = self.clone();
        let dd = d.degree();
        let lc = d.leading().clone();
        if r.is_zero() || r.degree() < dd {
            return r;
        }
        let mut steps = r.degree() - dd + 1;
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let rl = r.leading().clone();
            // r <- lc * r - rl * x^shift * d
            let mut scaled = r.scale(&lc);
            let mut sub = vec![C::zero(); shift];
            sub.extend(d.coeffs.iter().map(|c| c.mul(&rl)));
            scaled = scaled.sub(&UPoly::new(sub));
            r = scaled;
            steps -= 1;
        }
        // Keep the multiplier exactly lc^(deg n - deg d + 1).
        for _ in 0..steps {
            r = r.scale(&lc);
        }
        r
    }

    /// Exact polynomial division; `None` if not divisible.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.clone();
        let mut q = vec![C::zero(); self.degree() - d.degree() + 1];
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let c = r.leading().div_exact(d.leading())?;
            q[shift] = c.clone();
            let mut sub = vec![C::zero(); shift];
            sub.extend(d.coeffs.iter().map(|a| a.mul(&c)));
            r = r.sub(&UPoly::new(sub));
            if !r.is_zero() && r.degree() == shift + d.degree() {
                return None; // leading did not cancel
            }
        }
        if r.is_zero() {
            Some(UPoly::new(q))
        } else {
            None
        }
    }

    /// Gcd over the UFD of coefficients, by primitive PRS.
    /// Result is primitive-times-content-gcd with positive leading sign.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive().scale(&other.content_abs());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content_abs());
        }
        let cont = self.content().gcd(&other.content());
        let mut u = self.primitive();
        let mut v = other.primitive();
        if u.degree() < v.degree() {
            std::mem::swap(&mut u, &mut v);
        }
        loop {
            let r = u.pseudo_rem(&v);
            if r.is_zero() {
                break;
            }
            u = v;
            v = r.primitive();
            if v.degree() == 0 {
                // coprime primitive parts
                v = UPoly::new(vec![C::one()]);
                break;
            }
            if u.degree() < v.degree() {
                std::mem::swap(&mut u, &mut v);
            }
        }
        v.primitive().scale(&cont)
    }

    fn content_abs(&self) -> C {
        self.content()
    }
}

impl<C: Coeff> Coeff for UPoly<C> {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::new(vec![C::one()])
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        UPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        UPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        UPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        UPoly::neg(self)
    }
    fn gcd(&self, other: &Self) -> Self {
        UPoly::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        UPoly::div_exact(self, other)
    }
    fn is_negative(&self) -> bool {
        !self.is_zero() && self.leading().is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> UPoly<BigInt> {
        UPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_univariate() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        // contents combine
        let a2 = a.scale(&BigInt::from(6));
        let b2 = b.scale(&BigInt::from(4));
        assert_eq!(a2.gcd(&b2), p(&[-2, 2]));
    }

    #[test]
    fn div_exact_and_pseudo_rem() {
        let a = p(&[-2, 1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[2, 1])));
        assert_eq!(a.div_exact(&p(&[7, 1])), None);
        let r = a.pseudo_rem(&b);
        assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn bivariate_gcd_through_nesting() {
        // In Z[x][y]: (y - x) * (y + x) vs (y - x) * y
        let y_minus_x = UPoly::new(vec![p(&[0, -1]), p(&[1])]);
        let y_plus_x = UPoly::new(vec![p(&[0, 1]), p(&[1])]);
        let y = UPoly::new(vec![p(&[0]), p(&[1])]);
        let a = y_minus_x.mul(&y_plus_x);
        let b = y_minus_x.mul(&y);
        assert_eq!(a.gcd(&b), y_minus_x);
    }
}
