//! q-Pochhammer symbols, proper q-hypergeometric summands, and exact
//! colored Jones values of the trefoil and figure-eight knots.
//!
//! Both knots have one-variable sum formulas over a summand F(n, k) that
//! vanishes for k >= n, so every value is a finite exact sum:
//!
//! ```text
//! 3_1:  F(n,k) = (-1)^k q^{k(k+3)/2} q^{nk} (q^{-n-1}; q^{-1})_k (q^{-n+1}; q)_k
//! 4_1:  F(n,k) =                     q^{nk} (q^{-n-1}; q^{-1})_k (q^{-n+1}; q)_k
//! ```
//!
//! The shared factor S(n,k) = q^{nk} (q^{-n-1}; q^{-1})_k (q^{-n+1}; q)_k
//! also has the cyclotomic product form
//! prod_{j=1..k} (q^n + q^{-n} - q^j - q^{-j}), used as an independent
//! evaluation route.
//!
//! [`term_ratios`] derives the shift quotients F(n+1,k)/F(n,k) and
//! F(n,k+1)/F(n,k) symbolically from the Pochhammer structure, as reduced
//! rational functions in (q, Q, Kv) with Q = q^n and Kv = q^k.

use crate::laurent::LaurentPoly;
use crate::tripoly::{RatFun3, TriPoly};
use crate::{Error, Result};
use num::rational::BigRational;
use num::One;
use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The two target knots.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Knot {
    /// Left-handed trefoil, `3_1`.
    Trefoil,
    /// Figure-eight, `4_1`.
    FigureEight,
}

impl Knot {
    pub fn name(&self) -> &'static str {
        match self {
            Knot::Trefoil => "3_1",
            Knot::FigureEight => "4_1",
        }
    }
}

impl FromStr for Knot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "3_1" => Ok(Knot::Trefoil),
            "4_1" => Ok(Knot::FigureEight),
            other => Err(Error::UnknownKnot(other.to_string())),
        }
    }
}

impl fmt::Display for Knot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Pochhammer direction: rising (a; q)_k or falling (a; q^{-1})_k.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PochDirection {
    Q,
    QInverse,
}

/// (a; q^{+/-1})_k for a monomial a = c q^e:
/// (a;q)_k = (1-a)(1-aq)...(1-aq^{k-1}), the falling variant steps by
/// q^{-1}; k = 0 yields 1.
pub fn qpochhammer(a: &LaurentPoly, direction: PochDirection, k: u32) -> LaurentPoly {
    let mut terms = a.terms();
    let (exp, coeff) = match (terms.next(), terms.next()) {
        (Some((e, c)), None) => (*e, c.clone()),
        (None, None) => {
            // a = 0: every factor is 1
            return LaurentPoly::one();
        }
        _ => panic!("qpochhammer base must be a monomial"),
    };
    let step = match direction {
        PochDirection::Q => 1,
        PochDirection::QInverse => -1,
    };
    let mut out = LaurentPoly::one();
    for j in 0..k as i64 {
        let mut factor = LaurentPoly::one();
        factor.add_term(exp + step * j, -coeff.clone());
        out = out.mul(&factor);
        if out.is_zero() {
            break;
        }
    }
    out
}

/// The shared summand factor S(n,k) in its Pochhammer form.
fn s_pochhammer(n: i64, k: u32) -> LaurentPoly {
    let falling = qpochhammer(&LaurentPoly::q_power(-n - 1), PochDirection::QInverse, k);
    let rising = qpochhammer(&LaurentPoly::q_power(-n + 1), PochDirection::Q, k);
    LaurentPoly::q_power(n * k as i64).mul(&falling).mul(&rising)
}

/// S(n,k) in the cyclotomic product form
/// prod_{j=1..k} (q^n + q^{-n} - q^j - q^{-j}); the half-integer powers of
/// the curly-bracket form cancel per factor, so the result is in Z[q^±].
/// S(n,0) = 1 and S(n,k) = 0 for k >= n (the factor j = n vanishes).
pub fn cyclotomic_s(n: i64, k: u32) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic_s requires n >= 1");
    let mut out = LaurentPoly::one();
    for j in 1..=k as i64 {
        let mut factor = LaurentPoly::zero();
        let one = BigRational::one();
        factor.add_term(n, one.clone());
        factor.add_term(-n, one.clone());
        factor.add_term(j, -one.clone());
        factor.add_term(-j, -one);
        out = out.mul(&factor);
        if out.is_zero() {
            break;
        }
    }
    out
}

/// Full summand F(n, k) of the given knot, by direct Pochhammer products.
pub fn summand(knot: Knot, n: i64, k: u32) -> LaurentPoly {
    let s = s_pochhammer(n, k);
    match knot {
        Knot::FigureEight => s,
        Knot::Trefoil => {
            let k = k as i64;
            let sign = if k % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            s.mul(&LaurentPoly::monomial(k * (k + 3) / 2, sign))
        }
    }
}

/// Colored Jones value J_K(n), n >= 1, as an exact Laurent polynomial with
/// integer coefficients. The sum has compact support: terms vanish for
/// k >= n.
pub fn jones(knot: Knot, n: i64) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(Error::Domain(format!(
            "colored Jones is defined for n >= 1, got {n}"
        )));
    }
    let mut acc = LaurentPoly::zero();
    for k in 0..n as u32 {
        acc = acc.add(&summand(knot, n, k));
    }
    debug_assert!(acc.has_integer_coeffs());
    Ok(acc)
}

pub fn jones_trefoil(n: i64) -> Result<LaurentPoly> {
    jones(Knot::Trefoil, n)
}

pub fn jones_fig8(n: i64) -> Result<LaurentPoly> {
    jones(Knot::FigureEight, n)
}

/// Value table [J(1), ..., J(n_max)]. Entries are independent, so with the
/// `parallel` feature they are computed on the rayon pool; order and
/// results are identical either way.
pub fn jones_table(knot: Knot, n_max: i64) -> Vec<LaurentPoly> {
    #[cfg(feature = "parallel")]
    {
        (1..=n_max)
            .into_par_iter()
            .map(|n| jones(knot, n).expect("n >= 1"))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jones_table_seq(knot, n_max)
    }
}

/// Sequential value table; reference path for the benchmarks.
pub fn jones_table_seq(knot: Knot, n_max: i64) -> Vec<LaurentPoly> {
    (1..=n_max)
        .map(|n| jones(knot, n).expect("n >= 1"))
        .collect()
}

/// A proper q-hypergeometric term, given by its two reduced shift
/// quotients in (q, Q, Kv), with base value F(0,0) = 1 and, for the target
/// knots, compact support: F(n,k) = 0 for k >= n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QHyperTerm {
    /// F(n+1, k) / F(n, k)
    pub ratio_n: RatFun3,
    /// F(n, k+1) / F(n, k)
    pub ratio_k: RatFun3,
}

impl QHyperTerm {
    /// Build from explicit ratios, checking the mixed-shift compatibility
    /// identity ratio_n(n, k+1) ratio_k(n, k) = ratio_k(n+1, k) ratio_n(n, k).
    pub fn from_ratios(ratio_n: RatFun3, ratio_k: RatFun3) -> Result<Self> {
        let term = QHyperTerm { ratio_n, ratio_k };
        if !term.compatible() {
            return Err(Error::Domain(
                "shift quotients fail the mixed-shift compatibility identity".into(),
            ));
        }
        Ok(term)
    }

    /// Mixed-shift consistency as an exact rational identity.
    pub fn compatible(&self) -> bool {
        let lhs = self.ratio_n.shift_kv(1).mul(&self.ratio_k);
        let rhs = self.ratio_k.shift_big_q(1).mul(&self.ratio_n);
        lhs == rhs
    }
}

/// Building blocks of the target summands, used to derive shift quotients
/// symbolically rather than transcribing them.
enum TermBlock {
    /// q^{nk}
    PowerQnk,
    /// (-1)^k q^{k(k+3)/2}
    TrefoilPrefactor,
    /// (q^{a_n * n + a_c}; q^{dir})_k with a_n in {-1, 0}
    Pochhammer { a_n: i64, a_c: i64, dir: i64 },
}

impl TermBlock {
    /// Contribution of the block to F(n, k+1)/F(n, k).
    fn ratio_k(&self) -> RatFun3 {
        match self {
            // q^{n(k+1)} / q^{nk} = q^n
            TermBlock::PowerQnk => rf3("Q", "1"),
            // (-1) q^{(k+1)(k+4)/2 - k(k+3)/2} = -q^{k+2}
            TermBlock::TrefoilPrefactor => rf3("-q^2*Kv", "1"),
            // new factor (1 - a q^{dir k})
            TermBlock::Pochhammer { a_n, a_c, dir } => one_minus_monomial(*a_n, *a_c, *dir),
        }
    }

    /// Contribution of the block to F(n+1, k)/F(n, k).
    fn ratio_n(&self) -> RatFun3 {
        match self {
            // q^{(n+1)k} / q^{nk} = q^k
            TermBlock::PowerQnk => rf3("Kv", "1"),
            TermBlock::TrefoilPrefactor => RatFun3::one(),
            TermBlock::Pochhammer { a_n, a_c, dir } => match (a_n, dir) {
                (0, _) => RatFun3::one(),
                // telescoping product quotients for a = q^{-n + a_c}
                (-1, -1) => {
                    // (1 - q^{a_c} Q^{-1} Kv^{-1}) / (1 - q^{a_c} Q^{-1})
                    one_minus_monomial(-1, *a_c, -1)
                        .div(&one_minus_monomial(-1, *a_c, 0))
                        .expect("nonzero denominator")
                }
                (-1, 1) => {
                    // (1 - q^{a_c - 1} Q^{-1}) / (1 - q^{a_c - 1} Q^{-1} Kv)
                    one_minus_monomial(-1, *a_c - 1, 0)
                        .div(&one_minus_monomial(-1, *a_c - 1, 1))
                        .expect("nonzero denominator")
                }
                _ => panic!("unsupported Pochhammer n-dependence"),
            },
        }
    }
}

/// (1 - q^{c} Q^{qn} Kv^{kk}) as a reduced RatFun3, clearing the negative
/// exponents into the denominator.
fn one_minus_monomial(qn: i64, c: i64, kk: i64) -> RatFun3 {
    let dc = (-c).max(0) as u32;
    let dq = (-qn).max(0) as u32;
    let dk = (-kk).max(0) as u32;
    let mut den = TriPoly::zero();
    den.add_term(dc, dq, dk, 1.into());
    let mut num = den.clone();
    let mut mono = TriPoly::zero();
    mono.add_term(
        (c + dc as i64) as u32,
        (qn + dq as i64) as u32,
        (kk + dk as i64) as u32,
        1.into(),
    );
    num = num.sub(&mono);
    RatFun3::new(num, den).expect("nonzero denominator")
}

fn rf3(num: &str, den: &str) -> RatFun3 {
    RatFun3::new(TriPoly::parse(num).unwrap(), TriPoly::parse(den).unwrap())
        .expect("nonzero denominator")
}

fn blocks(knot: Knot) -> Vec<TermBlock> {
    let mut out = vec![
        TermBlock::PowerQnk,
        TermBlock::Pochhammer {
            a_n: -1,
            a_c: -1,
            dir: -1,
        },
        TermBlock::Pochhammer {
            a_n: -1,
            a_c: 1,
            dir: 1,
        },
    ];
    if knot == Knot::Trefoil {
        out.push(TermBlock::TrefoilPrefactor);
    }
    out
}

/// Shift quotients of the knot's summand, derived block by block from the
/// Pochhammer structure.
pub fn term_ratios(knot: Knot) -> QHyperTerm {
    let mut ratio_n = RatFun3::one();
    let mut ratio_k = RatFun3::one();
    for block in blocks(knot) {
        ratio_n = ratio_n.mul(&block.ratio_n());
        ratio_k = ratio_k.mul(&block.ratio_k());
    }
    QHyperTerm::from_ratios(ratio_n, ratio_k).expect("target ratios are compatible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_identities() {
        // (a; q)_0 = 1
        let a = LaurentPoly::q_power(5);
        assert_eq!(qpochhammer(&a, PochDirection::Q, 0), LaurentPoly::one());
        // (q^{-1}; q)_3 contains the factor 1 - q^0 = 0
        assert!(qpochhammer(&LaurentPoly::q_power(-1), PochDirection::Q, 3).is_zero());
        // (q^{-3}; q^{-1})_2 = (1 - q^{-3})(1 - q^{-4})
        let p = qpochhammer(&LaurentPoly::q_power(-3), PochDirection::QInverse, 2);
        let expect = LaurentPoly::parse("1 - q^-3")
            .unwrap()
            .mul(&LaurentPoly::parse("1 - q^-4").unwrap());
        assert_eq!(p, expect);
    }

    #[test]
    fn jones_golden_values() {
        assert_eq!(jones_trefoil(1).unwrap(), LaurentPoly::one());
        assert_eq!(
            jones_trefoil(2).unwrap(),
            LaurentPoly::parse("q + q^3 - q^4").unwrap()
        );
        assert_eq!(
            jones_trefoil(3).unwrap(),
            LaurentPoly::parse("q^2 + q^5 - q^7 + q^8 - q^9 - q^10 + q^11").unwrap()
        );
        assert_eq!(jones_fig8(1).unwrap(), LaurentPoly::one());
        assert_eq!(
            jones_fig8(2).unwrap(),
            LaurentPoly::parse("q^2 - q + 1 - q^-1 + q^-2").unwrap()
        );
        assert_eq!(
            jones_fig8(3).unwrap(),
            LaurentPoly::parse(
                "q^6 - q^5 - q^4 + 2q^3 - q^2 - q + 3 - q^-1 - q^-2 + 2q^-3 - q^-4 - q^-5 + q^-6"
            )
            .unwrap()
        );
        assert!(jones_trefoil(0).is_err());
    }

    #[test]
    fn cyclotomic_equals_pochhammer_form() {
        for n in 1..=12i64 {
            for k in 0..=n as u32 {
                assert_eq!(cyclotomic_s(n, k), s_pochhammer(n, k), "S({n},{k})");
            }
        }
        // vanishing at k >= n
        for n in 1..=10i64 {
            assert!(cyclotomic_s(n, n as u32).is_zero());
        }
        // one-factor golden: S(2,1) = q^2 - q - q^-1 + q^-2
        assert_eq!(
            cyclotomic_s(2, 1),
            LaurentPoly::parse("q^2 - q - q^-1 + q^-2").unwrap()
        );
    }

    #[test]
    fn fig8_palindromic_and_unit_at_one() {
        for n in 1..=12 {
            let j = jones_fig8(n).unwrap();
            assert!(j.is_palindromic(), "J_4_1({n}) palindromic");
            assert!(j.eval_at_one().is_one());
            assert!(jones_trefoil(n).unwrap().eval_at_one().is_one());
        }
    }

    #[test]
    fn ratio_k_golden_forms() {
        // fig8: Q (1 - 1/(qQKv)) (1 - qKv/Q) reduced
        let fig8 = term_ratios(Knot::FigureEight);
        let expect = rf3("(q*Q*Kv - 1)*(Q - q*Kv)", "q*Q*Kv");
        assert_eq!(fig8.ratio_k, expect);
        // trefoil ratio_k = fig8 ratio_k * (-q^{k+2})
        let trefoil = term_ratios(Knot::Trefoil);
        assert_eq!(trefoil.ratio_k, expect.mul(&rf3("-q^2*Kv", "1")));
        // both knots share ratio_n
        assert_eq!(trefoil.ratio_n, fig8.ratio_n);
        let expect_n = rf3("(q*Q*Kv - 1)*(Q - 1)", "(q*Q - 1)*(Q - Kv)");
        assert_eq!(fig8.ratio_n, expect_n);
    }

    #[test]
    fn ratios_reproduce_summands() {
        // iterating ratio_k from k = 0 reproduces each summand exactly,
        // checked by cross-multiplication to avoid Laurent division
        for knot in [Knot::Trefoil, Knot::FigureEight] {
            let term = term_ratios(knot);
            for n in 1..=8i64 {
                let mut num = LaurentPoly::one();
                let mut den = LaurentPoly::one();
                for k in 0..n as u32 {
                    // running product equals F(n, k+1) after this step
                    let (rn, rd) = term.ratio_k.eval_points(n, k as i64);
                    num = num.mul(&rn);
                    den = den.mul(&rd);
                    let direct = summand(knot, n, k + 1);
                    assert_eq!(direct.mul(&den), num, "{knot} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn ratio_n_matches_value_quotients() {
        for knot in [Knot::Trefoil, Knot::FigureEight] {
            let term = term_ratios(knot);
            for (n, k) in [(5i64, 2i64), (4, 1), (6, 3)] {
                let (rn, rd) = term.ratio_n.eval_points(n, k);
                let up = summand(knot, n + 1, k as u32);
                let down = summand(knot, n, k as u32);
                assert_eq!(up.mul(&rd), down.mul(&rn));
            }
        }
    }

    #[test]
    fn compatibility_identity() {
        for knot in [Knot::Trefoil, Knot::FigureEight] {
            assert!(term_ratios(knot).compatible());
        }
    }

    #[test]
    fn table_matches_seq() {
        let par = jones_table(Knot::Trefoil, 8);
        let seq = jones_table_seq(Knot::Trefoil, 8);
        assert_eq!(par, seq);
    }
}
