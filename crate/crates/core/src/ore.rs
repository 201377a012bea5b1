//! The q-Weyl algebra and its Ore localization K[E; sigma] over
//! K = Q(q, Q), with sigma(f)(q, Q) = f(q, qQ).
//!
//! Operators act on discrete functions through Q = q^n and the shift
//! E: n -> n+1, so EQ = qQE and more generally a E^k * b E^l =
//! a sigma^k(b) E^{k+l}. Operators are stored in forward-shift form: the
//! coefficient of E^k multiplies f(n+k). The backward presentation (acting
//! at n-d..n) exists only for display parity; see [`forward_shifts`].
//!
//! Right division makes every left ideal principal, which is what makes
//! the normalized generator (the noncommutative A-polynomial) well defined
//! up to left multiplication by units +/- q^a Q^b. [`normalize`] collapses
//! that unit orbit to a canonical representative, so normalized operators
//! can be compared literally.

use crate::bipoly::BiPoly;
use crate::ratfun::RatFun;
use crate::{Error, Result};
use num::Signed;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Skew polynomial sum a_k E^k with a_k in Q(q, Q).
///
/// Invariant: no trailing zero coefficients (the leading coefficient of a
/// nonzero operator is nonzero).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OreOp {
    coeffs: Vec<RatFun>,
}

/// The automorphism sigma^power: Q -> q^power Q (inverse for negative
/// powers, clearing q-denominators into the representation).
pub fn sigma(f: &RatFun, power: i64) -> RatFun {
    f.sigma_pow(power)
}

impl OreOp {
    pub fn new(mut coeffs: Vec<RatFun>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        OreOp { coeffs }
    }

    pub fn zero() -> Self {
        OreOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        OreOp::new(vec![RatFun::one()])
    }

    /// The shift operator E.
    pub fn e() -> Self {
        OreOp::new(vec![RatFun::zero(), RatFun::one()])
    }

    /// c * E^k.
    pub fn monomial(c: RatFun, k: usize) -> Self {
        let mut coeffs = vec![RatFun::zero(); k];
        coeffs.push(c);
        OreOp::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// E-degree; the zero operator reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> RatFun {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn leading(&self) -> &RatFun {
        self.coeffs.last().expect("leading of zero operator")
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        OreOp::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        OreOp {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Left multiplication by a scalar f in K: coefficients scale by f.
    pub fn scalar_mul(&self, f: &RatFun) -> Self {
        if f.is_zero() {
            return OreOp::zero();
        }
        OreOp::new(self.coeffs.iter().map(|c| c.mul(f)).collect())
    }

    /// Skew product: bilinear extension of a E^k * b E^l = a sigma^k(b)
    /// E^{k+l}. Degrees add for nonzero factors.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return OreOp::zero();
        }
        let mut out = vec![RatFun::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[k + l] = out[k + l].add(&a.mul(&sigma(b, k as i64)));
            }
        }
        OreOp::new(out)
    }

    /// Divide on the left by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading");
        self.scalar_mul(&inv)
    }
}

/// Right division: P = quotient * D + remainder with
/// deg_E(remainder) < deg_E(D).
pub fn right_divide(p: &OreOp, d: &OreOp) -> Result<(OreOp, OreOp)> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut rem = p.clone();
    let mut quo = OreOp::zero();
    let dd = d.degree();
    while !rem.is_zero() && rem.degree() >= dd {
        let k = rem.degree() - dd;
        let c = rem
            .leading()
            .div(&sigma(d.leading(), k as i64))
            .expect("nonzero divisor leading");
        let mono = OreOp::monomial(c, k);
        rem = rem.sub(&mono.mul(d));
        quo = quo.add(&mono);
        debug_assert!(rem.is_zero() || rem.degree() < k + dd);
    }
    Ok((quo, rem))
}

/// Monic greatest common right divisor by the right Euclidean algorithm.
/// Intermediate operators are kept monic to avoid coefficient blowup.
pub fn gcrd(p: &OreOp, r: &OreOp) -> Result<OreOp> {
    if p.is_zero() && r.is_zero() {
        return Err(Error::ZeroInput("gcrd of two zero operators"));
    }
    let mut a = p.clone();
    let mut b = r.clone();
    while !b.is_zero() {
        b = b.monic();
        let (_, rem) = right_divide(&a, &b)?;
        a = b;
        b = rem;
    }
    Ok(a.monic())
}

/// Normalized integral form: coefficients in Z[q, Q], jointly coprime,
/// nonzero bottom and top coefficient, leading sign positive under the
/// fixed monomial order. Unique representative of the unit orbit
/// +/- q^a Q^b of a nonzero operator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizedOp {
    coeffs: Vec<BiPoly>,
}

impl NormalizedOp {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BiPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(BiPoly::zero)
    }

    pub fn to_ore(&self) -> OreOp {
        OreOp::new(self.coeffs.iter().cloned().map(RatFun::from_poly).collect())
    }
}

/// Normalize a nonzero operator: clear the least common denominator,
/// remove the common Z[q, Q] content (integer, polynomial and monomial
/// q^a Q^b all at once via the full gcd), drop any common right factor
/// E^j, and fix the sign so the top coefficient's leading term is
/// positive.
pub fn normalize(p: &OreOp) -> Result<NormalizedOp> {
    if p.is_zero() {
        return Err(Error::ZeroInput("operator to normalize"));
    }
    // least common denominator
    let mut den = BiPoly::one();
    for c in p.coeffs() {
        if c.is_zero() {
            continue;
        }
        let g = den.gcd(c.den());
        den = den.mul(&c.den().div_exact(&g).expect("gcd divides"));
    }
    let mut cleared: Vec<BiPoly> = p
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                BiPoly::zero()
            } else {
                c.num().mul(&den.div_exact(c.den()).expect("lcd divides"))
            }
        })
        .collect();
    // full content gcd (integer, polynomial and monomial factors)
    let mut g = BiPoly::zero();
    for c in &cleared {
        g = g.gcd(c);
    }
    for c in cleared.iter_mut() {
        if !c.is_zero() {
            *c = c.div_exact(&g).expect("content divides");
        }
    }
    debug_assert!(cleared
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.min_deg_q().min(u32::MAX))
        .min()
        .map_or(true, |m| m == 0));
    // strip a common right factor E^j
    let first_nonzero = cleared
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero operator");
    let coeffs: Vec<BiPoly> = cleared.split_off(first_nonzero);
    let mut op = NormalizedOp { coeffs };
    // sign convention: the leading coefficient of the top BiPoly is positive
    if op
        .coeffs
        .last()
        .expect("nonempty")
        .leading_coeff()
        .is_negative()
    {
        op.coeffs = op.coeffs.iter().map(|c| c.neg()).collect();
    }
    Ok(op)
}

/// Homogenize an inhomogeneous relation: given P and rhs with
/// P f = rhs (as functions of n, Q standing for q^n), return
/// H = (E - 1) * (rhs^{-1} * P), which annihilates every such f and has
/// E-degree deg(P) + 1. The caller normalizes.
pub fn make_hom_rec(p: &OreOp, rhs: &RatFun) -> Result<OreOp> {
    if rhs.is_zero() {
        return Err(Error::ZeroInput(
            "inhomogeneous part (relation is already homogeneous)",
        ));
    }
    let scaled = p.scalar_mul(&rhs.inv()?);
    let e_minus_1 = OreOp::new(vec![RatFun::constant(-1), RatFun::one()]);
    Ok(e_minus_1.mul(&scaled))
}

/// Presentation rewriting between the backward form (relation spanning
/// n-d..n, the coefficient of E^k multiplying f(n-d+k)) and the canonical
/// forward form (spanning n..n+d). Both presentations annihilate the same
/// sequences; the rewriting substitutes Q -> q^{+/-d} Q coefficient-wise
/// and keeps the coefficient-to-power assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    /// Interpret the input as backward-presented; produce the forward form
    /// (sigma^d on every coefficient).
    ToForward,
    /// Inverse rewriting (sigma^{-d}).
    ToBackward,
}

pub fn forward_shifts(p: &NormalizedOp, dir: ShiftDirection) -> NormalizedOp {
    let d = p.degree() as i64;
    let power = match dir {
        ShiftDirection::ToForward => d,
        ShiftDirection::ToBackward => -d,
    };
    let shifted = OreOp::new(
        p.coeffs()
            .iter()
            .map(|c| RatFun::from_poly(c.clone()).sigma_pow(power))
            .collect(),
    );
    normalize(&shifted).expect("shift of nonzero operator is nonzero")
}

/// Serialized operator schema:
/// `{"var":"E","coeffs":[{"e":0,"num":"<poly>","den":"<poly>"},...]}`
/// using the textual polynomial grammar. Canonical in-memory forms make
/// the emitted bytes deterministic.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OperatorJson {
    pub var: String,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CoeffJson {
    pub e: usize,
    pub num: String,
    pub den: String,
}

impl OreOp {
    pub fn to_json(&self) -> OperatorJson {
        OperatorJson {
            var: "E".to_string(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| CoeffJson {
                    e: k,
                    num: c.num().to_string(),
                    den: c.den().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &OperatorJson) -> Result<Self> {
        if json.var != "E" {
            return Err(Error::Domain(format!(
                "operator variable must be `E`, got `{}`",
                json.var
            )));
        }
        let deg = json.coeffs.iter().map(|c| c.e).max().unwrap_or(0);
        let mut coeffs = vec![RatFun::zero(); deg + 1];
        for c in &json.coeffs {
            let num = BiPoly::parse(&c.num)?;
            let den = BiPoly::parse(&c.den)?;
            coeffs[c.e] = RatFun::checked_new(num, den)?;
        }
        Ok(OreOp::new(coeffs))
    }
}

impl NormalizedOp {
    pub fn to_json(&self) -> OperatorJson {
        self.to_ore().to_json()
    }
}

impl fmt::Display for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*E"),
                _ => format!("({c})*E^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for NormalizedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ore())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &str, den: &str) -> RatFun {
        RatFun::new(BiPoly::parse(num).unwrap(), BiPoly::parse(den).unwrap())
    }

    fn poly(src: &str) -> RatFun {
        RatFun::from_poly(BiPoly::parse(src).unwrap())
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&poly("Q"), 1), poly("qQ"));
        let f = rf("q^2 - Q", "q^3 - Q^2");
        assert_eq!(sigma(&f, 1), rf("q^2 - qQ", "q^3 - q^2Q^2"));
        assert_eq!(sigma(&sigma(&f, 1), -1), f);
    }

    #[test]
    fn skew_commutation() {
        // E * Q = qQ * E
        let e = OreOp::e();
        let q_op = OreOp::new(vec![poly("Q")]);
        let prod = e.mul(&q_op);
        assert_eq!(prod, OreOp::new(vec![RatFun::zero(), poly("qQ")]));
    }

    #[test]
    fn ore_mul_expansion() {
        // (E - qQ)(E - 1) = E^2 - (1 + qQ) E + qQ
        let a = OreOp::new(vec![poly("-qQ"), poly("1")]);
        let b = OreOp::new(vec![poly("-1"), poly("1")]);
        let prod = a.mul(&b);
        assert_eq!(
            prod,
            OreOp::new(vec![poly("qQ"), poly("-1 - qQ"), poly("1")])
        );
    }

    #[test]
    fn monomial_rule() {
        // (f E)(g E) = f sigma(g) E^2
        let f = rf("q - Q", "Q");
        let g = rf("Q^2", "q + 1");
        let lhs = OreOp::monomial(f.clone(), 1).mul(&OreOp::monomial(g.clone(), 1));
        let rhs = OreOp::monomial(f.mul(&sigma(&g, 1)), 2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_division_reconstruction() {
        // E^2 - (1 + qQ)E + qQ divided by E - 1 gives E - qQ exactly
        let p = OreOp::new(vec![poly("qQ"), poly("-1 - qQ"), poly("1")]);
        let d = OreOp::new(vec![poly("-1"), poly("1")]);
        let (quo, rem) = right_divide(&p, &d).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quo, OreOp::new(vec![poly("-qQ"), poly("1")]));
        // self-division and unit divisor
        let (quo, rem) = right_divide(&d, &d).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quo, OreOp::one());
        let (quo, rem) = right_divide(&p, &OreOp::one()).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quo, p);
        assert_eq!(
            right_divide(&p, &OreOp::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn gcrd_coprime_first_order() {
        // gcrd(E - 1, E - Q) = 1
        let a = OreOp::new(vec![poly("-1"), poly("1")]);
        let b = OreOp::new(vec![poly("-Q"), poly("1")]);
        let g = gcrd(&a, &b).unwrap();
        assert_eq!(g, OreOp::one());
        // base case: gcrd(P, 0) is monic P
        let g = gcrd(&a.scalar_mul(&poly("3Q")), &OreOp::zero()).unwrap();
        assert_eq!(g, a);
        assert!(gcrd(&OreOp::zero(), &OreOp::zero()).is_err());
    }

    #[test]
    fn gcrd_of_common_right_factor() {
        let d = OreOp::new(vec![poly("Q"), poly("q - Q"), poly("1")]);
        let x = OreOp::new(vec![poly("q"), poly("1")]);
        let y = OreOp::new(vec![poly("-Q^2"), poly("1")]);
        let g = gcrd(&x.mul(&d), &y.mul(&d)).unwrap();
        // d right-divides the gcrd, and the gcrd right-divides both products
        let (_, rem) = right_divide(&g, &d.monic()).unwrap();
        assert!(rem.is_zero());
        let (_, rem) = right_divide(&x.mul(&d), &g).unwrap();
        assert!(rem.is_zero());
        let (_, rem) = right_divide(&y.mul(&d), &g).unwrap();
        assert!(rem.is_zero());
    }

    #[test]
    fn normalize_examples() {
        // common factor removal: (q - Q)E - (q - Q)Q -> E - Q
        let p = OreOp::new(vec![poly("-(q-Q)*Q"), poly("q - Q")]);
        let n = normalize(&p).unwrap();
        assert_eq!(n.coeffs(), &[BiPoly::parse("-Q").unwrap(), BiPoly::one()]);
        // scalar invariance
        let f = rf("3q^2 - 3Q", "Q^2");
        let scaled = p.scalar_mul(&f);
        assert_eq!(normalize(&scaled).unwrap(), n);
        // sign: top coefficient leading term positive
        let m = normalize(&p.neg()).unwrap();
        assert_eq!(m, n);
        assert!(normalize(&OreOp::zero()).is_err());
    }

    #[test]
    fn make_hom_rec_constant_sequence() {
        // P = E, rhs = 1: (E - 1) E = E^2 - E annihilates any f with
        // f(n+1) = 1
        let h = make_hom_rec(&OreOp::e(), &RatFun::one()).unwrap();
        assert_eq!(
            h,
            OreOp::new(vec![RatFun::zero(), poly("-1"), poly("1")])
        );
        assert!(make_hom_rec(&OreOp::e(), &RatFun::zero()).is_err());
    }

    #[test]
    fn forward_shift_involution() {
        let p = OreOp::new(vec![poly("Q - 1"), poly("qQ^2"), poly("q^2 - Q")]);
        let n = normalize(&p).unwrap();
        let fwd = forward_shifts(&n, ShiftDirection::ToForward);
        let back = forward_shifts(&fwd, ShiftDirection::ToBackward);
        assert_eq!(back, n);
        // constant-coefficient relations are fixed points
        let p = OreOp::new(vec![poly("-1"), poly("1")]);
        let n = normalize(&p).unwrap();
        assert_eq!(forward_shifts(&n, ShiftDirection::ToForward), n);
    }

    #[test]
    fn json_round_trip() {
        let p = OreOp::new(vec![rf("q^2 - Q", "Q"), poly("1")]);
        let json = p.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let parsed: OperatorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(OreOp::from_json(&parsed).unwrap(), p);
    }

    #[test]
    fn mul_associativity_spot() {
        let ops = [
            OreOp::new(vec![poly("Q"), poly("q - Q")]),
            OreOp::new(vec![rf("1", "Q"), poly("qQ")]),
            OreOp::new(vec![poly("-1"), RatFun::zero(), poly("q^2Q")]),
        ];
        for a in &ops {
            for b in &ops {
                for c in &ops {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }
}
