//! q-Gosper decision procedure and q-Zeilberger creative telescoping.
//!
//! Given a proper q-hypergeometric term F(n, k) with shift quotients in
//! (q, Q, Kv), [`qzeilberger`] looks for a_0..a_J in Q(q, Q), not all
//! zero, and a rational certificate R(q, Q, x) (x = q^k) with
//!
//! ```text
//! sum_i a_i F(n+i, k) = G(k+1) - G(k),   G = R * F,
//! ```
//!
//! equivalently, dividing by F(n, k),
//!
//! ```text
//! sum_i a_i rho_i(x) = R(qx) rk(x) - R(x)            (*)
//! ```
//!
//! with rho_i = F(n+i,k)/F(n,k) and rk = F(n,k+1)/F(n,k). Summing over k
//! and using compact support, the operator sum_i a_i E^i applied to the
//! sum J(n) equals the lower-boundary value -R(q, Q, 1).
//!
//! Equation (*) is solved as a first-order q-difference equation for the
//! rational unknown R with parameterized right-hand side: an Abramov-style
//! universal denominator U(x) is derived from the polynomial form of (*),
//! after which R = y(x)/U(x) with y polynomial of bounded degree, and the
//! joint linear system in (y, a) is solved exactly over Q(q, Q). Absorbing
//! the unknown combination into the Gosper c-part instead is incomplete:
//! it loses certificates whose denominator contains k-shifted factors of
//! the kernel (the trefoil's order-1 telescoper is such a case).
//!
//! [`qgosper`] is the unparameterized decision procedure in its classical
//! q-Gosper-Petkovsek normal form, used for plain summability questions.

use crate::linsolve::nullspace;
use crate::ore::{make_hom_rec, normalize, NormalizedOp, OreOp};
use crate::qseries::QHyperTerm;
use crate::ratfun::RatFun;
use crate::tripoly::RatFun3;
use crate::xpoly::{XPoly, XRatFun};
use crate::{Error, Result};

/// Cap for the key-equation polynomial degree; degenerate bound analyses
/// fall back to this ceiling rather than searching unboundedly.
pub const MAX_KEY_DEGREE: usize = 32;

/// Outcome of the q-Gosper decision procedure for a term with shift
/// quotient `ratio`.
#[derive(Clone, Debug)]
pub struct GosperCertificate {
    /// Whether a q-hypergeometric antidifference exists.
    pub exists: bool,
    /// Polynomial solution of the key equation, when it exists.
    pub y: Option<XPoly>,
    /// Gosper-Petkovsek parts: ratio = (a/b) * (c(qx)/c(x)) with
    /// gcd(a(x), b(q^j x)) = 1 for all j >= 0.
    pub a: XPoly,
    pub b: XPoly,
    pub c: XPoly,
}

impl GosperCertificate {
    /// The rational multiplier R with G = R * t: R = b(x/q) y(x) / c(x).
    /// Satisfies R(qx) ratio(x) - R(x) = 1 exactly when `exists`.
    pub fn antidifference_ratio(&self) -> Option<XRatFun> {
        let y = self.y.as_ref()?;
        let num = self.b.shift_x(-1).mul(y);
        Some(XRatFun::new(num, self.c.clone()).expect("c is nonzero"))
    }
}

/// q-Gosper: decide whether a q-hypergeometric term t(k) with
/// t(k+1)/t(k) = ratio(x) has a q-hypergeometric antidifference.
///
/// Procedure: (i) bring the ratio into q-Gosper-Petkovsek form
/// ratio = (a/b)(c(qx)/c(x)) with gcd(a(x), b(q^j x)) = 1 for all j >= 0,
/// detecting q-power shifts between roots by a gcd scan; (ii) bound the
/// degree of the polynomial unknown by leading/trailing-term analysis;
/// (iii) solve the key equation a(x) y(qx) - b(x/q) y(x) = c(x) by
/// undetermined coefficients. Non-existence is a valid negative answer.
pub fn qgosper(ratio: &XRatFun) -> GosperCertificate {
    assert!(!ratio.is_zero(), "qgosper ratio must be nonzero");
    let mut a = ratio.num().clone();
    let mut b = ratio.den().clone();
    let mut c = XPoly::one();
    // dispersion scan, bound: product of the degrees
    let j_max = (a.degree() * b.degree()).max(1);
    for j in 0..=j_max as i64 {
        if a.degree() == 0 || b.degree() == 0 {
            break;
        }
        let g = a.gcd(&b.shift_x(j));
        if g.degree() == 0 {
            continue;
        }
        a = a.div_exact(&g).expect("gcd divides");
        b = b.div_exact(&g.shift_x(-j)).expect("gcd divides shifted");
        for i in 1..=j {
            c = c.mul(&g.shift_x(-i));
        }
    }
    let b_shift = b.shift_x(-1);
    let degree = match key_equation_degree(&a, &b_shift, c.degree() as i64) {
        Some(d) => d,
        None => {
            return GosperCertificate {
                exists: false,
                y: None,
                a,
                b,
                c,
            }
        }
    };
    let y = solve_key_equation(&a, &b_shift, &c, degree);
    GosperCertificate {
        exists: y.is_some(),
        y,
        a,
        b,
        c,
    }
}

/// Degree bound for y in a(x) y(qx) - B(x) y(x) = rhs of degree `deg_rhs`:
/// the non-cancelling candidate deg_rhs - max(deg a, deg B), plus, when
/// deg a = deg B and lc(B)/lc(a) is a q-power q^m with m >= 0, the
/// cancellation candidate m. `None` when no candidate is >= 0.
fn key_equation_degree(a: &XPoly, b_shift: &XPoly, deg_rhs: i64) -> Option<usize> {
    if a.is_zero() || b_shift.is_zero() {
        return None;
    }
    let da = a.degree() as i64;
    let db = b_shift.degree() as i64;
    let mut candidates: Vec<i64> = vec![deg_rhs - da.max(db)];
    if da == db {
        let ratio = b_shift.leading().div(a.leading()).expect("nonzero leading");
        if let Some(m) = as_q_power(&ratio) {
            if m >= 0 {
                candidates.push(m);
            }
        }
    }
    let best = candidates.into_iter().max()?;
    if best < 0 {
        return None;
    }
    Some((best as usize).min(MAX_KEY_DEGREE))
}

/// Is f exactly q^m (coefficient one, Q-free)? Returns m.
fn as_q_power(f: &RatFun) -> Option<i64> {
    let single = |p: &crate::BiPoly| -> Option<i64> {
        let mut it = p.terms();
        match (it.next(), it.next()) {
            (Some((&(a, 0), c)), None) if *c == 1.into() => Some(a as i64),
            _ => None,
        }
    };
    Some(single(f.num())? - single(f.den())?)
}

/// Solve a(x) y(qx) - B(x) y(x) = c(x) for polynomial y of degree <= d.
fn solve_key_equation(a: &XPoly, b_shift: &XPoly, c: &XPoly, d: usize) -> Option<XPoly> {
    // unknowns: y_0..y_d and a scale s on c; kernel vectors with s != 0
    // give solutions of the inhomogeneous equation
    let ncols = d + 2;
    let max_deg = (a.degree() + d).max(b_shift.degree() + d).max(c.degree());
    let mut rows: Vec<Vec<RatFun>> = Vec::with_capacity(max_deg + 1);
    for row_deg in 0..=max_deg {
        let mut row = vec![RatFun::zero(); ncols];
        for j in 0..=d {
            if row_deg >= j {
                let ai = a.coeff(row_deg - j);
                if !ai.is_zero() {
                    row[j] = row[j].add(&ai.mul(&q_power(j)));
                }
                let bi = b_shift.coeff(row_deg - j);
                if !bi.is_zero() {
                    row[j] = row[j].sub(&bi);
                }
            }
        }
        row[d + 1] = c.coeff(row_deg).neg();
        rows.push(row);
    }
    let kernel = nullspace(rows, ncols);
    let v = kernel.iter().find(|v| !v[d + 1].is_zero())?;
    let scale = v[d + 1].inv().expect("nonzero scale");
    Some(XPoly::new(v[..=d].iter().map(|y| y.mul(&scale)).collect()))
}

fn q_power(m: usize) -> RatFun {
    RatFun::from_poly(crate::BiPoly::monomial(m as u32, 0, 1.into()))
}

/// A successful telescoping run.
#[derive(Clone, Debug)]
pub struct TelescopeResult {
    /// The operator sum a_i E^i, coefficients in Q(q, Q), monic in its
    /// leading coefficient.
    pub operator: OreOp,
    /// Certificate multiplier R with G = R * F, reduced in (q, Q, Kv).
    pub certificate: RatFun3,
    /// Right-hand side r(q, Q) of the summed relation
    /// operator . J(n) = r(q, q^n).
    pub inhom: RatFun,
    /// E-degree of the operator.
    pub order: usize,
}

/// Lower-boundary value of the telescoped sum: with compact support the
/// upper boundary vanishes and sum_k (G(k+1) - G(k)) = -G(n, 0)
/// = -certificate(q, Q, 1) (since F(n, 0) = 1). Errors when the
/// certificate has a pole at Kv = 1.
pub fn boundary_inhom(certificate: &RatFun3) -> Result<RatFun> {
    Ok(certificate.eval_kv_at_1()?.neg())
}

/// One telescoping attempt at the given order. Returns `None` when no
/// operator of that order exists; this is a valid negative answer.
pub fn qzeilberger(term: &QHyperTerm, order: usize) -> Option<TelescopeResult> {
    assert!(order >= 1, "telescoping order must be >= 1");
    let rk = XRatFun::from_ratfun3(&term.ratio_k);
    // rho_i = F(n+i, k)/F(n, k), common denominator v
    let mut rhos: Vec<XRatFun> = vec![XRatFun::one()];
    for i in 0..order {
        let step = XRatFun::from_ratfun3(&term.ratio_n.shift_big_q(i as u32));
        rhos.push(rhos[i].mul(&step));
    }
    let mut v = XPoly::one();
    for rho in &rhos {
        v = v.lcm(rho.den());
    }
    let u: Vec<XPoly> = rhos
        .iter()
        .map(|rho| rho.num().mul(&v.div_exact(rho.den()).expect("lcm divides")))
        .collect();
    let s = rk.num();
    let t = rk.den();
    // polynomial form of (*): A R(qx) - B R(x) = t * p, p = sum a_i u_i
    let a_poly = s.mul(&v);
    let b_poly = t.mul(&v);
    let u_den = universal_denominator(&a_poly, &b_poly, t);
    // y-degree bound for A U(x) y(qx) - B U(qx) y(x) = t U(x) U(qx) p(x)
    let alpha = a_poly.mul(&u_den);
    let u_den_up = u_den.shift_x(1);
    let beta = b_poly.mul(&u_den_up);
    let deg_p = u.iter().map(|ui| ui.degree()).max().unwrap_or(0);
    let deg_rhs = (t.degree() + u_den.degree() + u_den_up.degree() + deg_p) as i64;
    let dy = key_equation_degree(&alpha, &beta, deg_rhs).unwrap_or(0);
    // columns: y_0..y_dy, a_0..a_order
    let ncols = dy + 1 + order + 1;
    let rhs_scale = t.mul(&u_den).mul(&u_den_up);
    let max_deg = (alpha.degree() + dy)
        .max(beta.degree() + dy)
        .max(rhs_scale.degree() + deg_p);
    let mut rows: Vec<Vec<RatFun>> = Vec::with_capacity(max_deg + 1);
    for row_deg in 0..=max_deg {
        let mut row = vec![RatFun::zero(); ncols];
        for j in 0..=dy {
            if row_deg >= j {
                let ai = alpha.coeff(row_deg - j);
                if !ai.is_zero() {
                    row[j] = row[j].add(&ai.mul(&q_power(j)));
                }
                let bi = beta.coeff(row_deg - j);
                if !bi.is_zero() {
                    row[j] = row[j].sub(&bi);
                }
            }
        }
        for (i, ui) in u.iter().enumerate() {
            // -(t U U(qx) u_i) a_i
            let mut acc = RatFun::zero();
            for (l, ul) in ui.coeffs.iter().enumerate() {
                if l <= row_deg && !ul.is_zero() {
                    let sc = rhs_scale.coeff(row_deg - l);
                    if !sc.is_zero() {
                        acc = acc.add(&sc.mul(ul));
                    }
                }
            }
            row[dy + 1 + i] = acc.neg();
        }
        rows.push(row);
    }
    let kernel = nullspace(rows, ncols);
    let a_slice = |vec: &[RatFun]| -> Vec<RatFun> { vec[dy + 1..].to_vec() };
    let chosen = kernel
        .iter()
        .find(|v| !v[dy + 1 + order].is_zero())
        .or_else(|| {
            kernel
                .iter()
                .find(|v| a_slice(v).iter().any(|c| !c.is_zero()))
        })?;
    let op_raw = OreOp::new(a_slice(chosen));
    if op_raw.is_zero() {
        return None;
    }
    // monic scaling of operator and certificate together
    let scale = op_raw.leading().inv().expect("nonzero leading");
    let operator = op_raw.scalar_mul(&scale);
    let y = XPoly::new(chosen[..=dy].iter().map(|c| c.mul(&scale)).collect());
    let r = XRatFun::new(y, u_den).expect("universal denominator nonzero");
    // exact certificate identity check: (*) must hold
    let lhs = operator
        .coeffs()
        .iter()
        .zip(&rhos)
        .fold(XRatFun::zero(), |acc, (ai, rho)| {
            acc.add(&XRatFun::from_poly(XPoly::constant(ai.clone())).mul(rho))
        });
    let rhs = r.shift_x(1).mul(&rk).sub(&r);
    assert!(
        lhs.sub(&rhs).is_zero(),
        "telescoping certificate identity failed; solver bug"
    );
    let certificate = r.to_ratfun3();
    let inhom = boundary_inhom(&certificate).expect("target certificates are pole-free at Kv = 1");
    Some(TelescopeResult {
        order: operator.degree(),
        operator,
        certificate,
        inhom,
    })
}

/// Abramov-style universal denominator for
/// A(x) R(qx) - B(x) R(x) = C(x), C ranging over polynomial multiples of
/// t. Divisibility chains force every irreducible factor w of den(R) to
/// satisfy w(x/q^j) | B for some j >= 0 and w(q^i x) | A for some i >= 1,
/// so every factor has the form u(q^j x) with u | gcd(B(x), A(x/q^h)) and
/// 0 <= j < h; poles at x = 0 are bounded by trailing-coefficient
/// analysis.
fn universal_denominator(a_poly: &XPoly, b_poly: &XPoly, t: &XPoly) -> XPoly {
    let mut u = XPoly::one();
    // shifted-root candidates
    let h_max = (a_poly.degree() * b_poly.degree()).max(4);
    for h in 1..=h_max as i64 {
        let g = b_poly.gcd(&a_poly.shift_x(-h));
        if g.degree() == 0 {
            continue;
        }
        for j in 0..h {
            u = u.mul(&g.shift_x(j));
        }
    }
    // pole order at x = 0
    let val = |p: &XPoly| -> usize { p.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0) };
    let va = val(a_poly);
    let vb = val(b_poly);
    let vt = val(t);
    let mut m_x: i64 = va.min(vb) as i64 - vt as i64;
    if va == vb {
        let low_ratio = a_poly.coeffs[va]
            .div(&b_poly.coeffs[vb])
            .expect("nonzero trailing");
        if let Some(p0) = as_q_power(&low_ratio) {
            if p0 >= 1 {
                m_x = m_x.max(p0);
            }
        }
    }
    for _ in 0..m_x.max(0) {
        u = u.mul(&XPoly::x());
    }
    u.monic()
}

/// A recursion for the summed sequence: the raw telescoped relation plus
/// its homogenized, normalized integral form.
#[derive(Clone, Debug)]
pub struct Recursion {
    pub raw: TelescopeResult,
    /// True when the raw relation was inhomogeneous and an (E - 1) factor
    /// was applied.
    pub homogenized: bool,
    /// Canonical coprime integral operator annihilating the sum.
    pub normalized: NormalizedOp,
}

/// Try telescoping at orders 1, 2, ..., max_order; homogenize the first
/// success when its boundary part is nonzero, then normalize.
pub fn find_recursion(term: &QHyperTerm, max_order: usize) -> Result<Recursion> {
    if max_order < 1 {
        return Err(Error::Domain("max_order must be >= 1".into()));
    }
    for order in 1..=max_order {
        if let Some(raw) = qzeilberger(term, order) {
            let (homogenized, op) = if raw.inhom.is_zero() {
                (false, raw.operator.clone())
            } else {
                (true, make_hom_rec(&raw.operator, &raw.inhom)?)
            };
            let normalized = normalize(&op)?;
            return Ok(Recursion {
                raw,
                homogenized,
                normalized,
            });
        }
    }
    Err(Error::OrderBoundExceeded { max_order })
}

/// Exact check of the certificate identity (*) for a finished result.
pub fn verify_certificate(term: &QHyperTerm, result: &TelescopeResult) -> bool {
    let rk = XRatFun::from_ratfun3(&term.ratio_k);
    let mut rho = XRatFun::one();
    let mut lhs = XRatFun::zero();
    for (i, ai) in result.operator.coeffs().iter().enumerate() {
        if i > 0 {
            let step = XRatFun::from_ratfun3(&term.ratio_n.shift_big_q(i as u32 - 1));
            rho = rho.mul(&step);
        }
        if !ai.is_zero() {
            lhs = lhs.add(&XRatFun::from_poly(XPoly::constant(ai.clone())).mul(&rho));
        }
    }
    let r = XRatFun::from_ratfun3(&result.certificate);
    let rhs = r.shift_x(1).mul(&rk).sub(&r);
    lhs.sub(&rhs).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::BiPoly;
    use crate::qseries::{term_ratios, Knot};
    use crate::tripoly::TriPoly;

    fn c(src: &str) -> RatFun {
        RatFun::from_poly(BiPoly::parse(src).unwrap())
    }

    fn xr(num: Vec<RatFun>, den: Vec<RatFun>) -> XRatFun {
        XRatFun::new(XPoly::new(num), XPoly::new(den)).unwrap()
    }

    #[test]
    fn gosper_geometric_series() {
        // t(k) = q^k: ratio q; antidifference q^k/(q - 1)
        let ratio = xr(vec![c("q")], vec![c("1")]);
        let cert = qgosper(&ratio);
        assert!(cert.exists);
        let r = cert.antidifference_ratio().unwrap();
        assert_eq!(
            r,
            XRatFun::new(
                XPoly::constant(c("1").div(&c("q - 1")).unwrap()),
                XPoly::one()
            )
            .unwrap()
        );
        let check = r.shift_x(1).mul(&ratio).sub(&r);
        assert_eq!(check, XRatFun::one());
    }

    #[test]
    fn gosper_non_summable() {
        // t(k) = 1/(q; q)_k: ratio 1/(1 - q x); no antidifference
        let ratio = xr(vec![c("1")], vec![c("1"), c("-q")]);
        let cert = qgosper(&ratio);
        assert!(!cert.exists);
    }

    #[test]
    fn gosper_constructed_summable() {
        // t = G(k+1) - G(k) for G = R * h, h(k+1)/h(k) = (x - q)/(x - q^3),
        // R = x/(q - 1); the ratio of t is rational and qgosper recovers
        // an antidifference that telescopes back exactly.
        let h_ratio = xr(vec![c("-q"), c("1")], vec![c("-q^3"), c("1")]);
        let r = xr(vec![RatFun::zero(), c("1")], vec![c("q - 1")]);
        let w = r.shift_x(1).mul(&h_ratio).sub(&r);
        assert!(!w.is_zero());
        let ratio = w.shift_x(1).div(&w).unwrap().mul(&h_ratio);
        let cert = qgosper(&ratio);
        assert!(cert.exists);
        let rr = cert.antidifference_ratio().unwrap();
        let check = rr.shift_x(1).mul(&ratio).sub(&rr);
        assert_eq!(check, XRatFun::one());
    }

    #[test]
    fn trefoil_order_one_succeeds() {
        let term = term_ratios(Knot::Trefoil);
        let res = qzeilberger(&term, 1).expect("trefoil telescopes at order 1");
        assert_eq!(res.order, 1);
        assert!(verify_certificate(&term, &res));
        // monic relation J(n+1) + a0 J(n) = r with
        // a0 = q^2 Q^3 (1 - Q)/(1 - qQ), r = Q(qQ^2 - 1)/(qQ - 1)
        let a0 = res.operator.coeff(0);
        let expect_a0 = RatFun::new(
            BiPoly::parse("q^2*Q^3*(1 - Q)").unwrap(),
            BiPoly::parse("1 - q*Q").unwrap(),
        );
        assert_eq!(a0, expect_a0);
        let expect_rhs = RatFun::new(
            BiPoly::parse("Q*(q*Q^2 - 1)").unwrap(),
            BiPoly::parse("q*Q - 1").unwrap(),
        );
        assert_eq!(res.inhom, expect_rhs);
    }

    #[test]
    fn fig8_order_one_fails_order_two_succeeds() {
        let term = term_ratios(Knot::FigureEight);
        assert!(qzeilberger(&term, 1).is_none());
        let res = qzeilberger(&term, 2).expect("fig8 telescopes at order 2");
        assert_eq!(res.order, 2);
        assert!(verify_certificate(&term, &res));
        // monic forward relation has
        // rhs = (1 + qQ)(q^3 Q^2 - 1) / (qQ (q^2 Q - 1))
        let expect_rhs = RatFun::new(
            BiPoly::parse("(1 + q*Q)*(q^3*Q^2 - 1)").unwrap(),
            BiPoly::parse("q*Q*(q^2*Q - 1)").unwrap(),
        );
        assert_eq!(res.inhom, expect_rhs);
    }

    #[test]
    fn pure_product_term_gives_first_order() {
        // F(n,k) = q^{n(n-1)/2} (q; q^{-1})_k satisfies f(n+1) = Q f(n)
        let ratio_n = RatFun3::new(TriPoly::parse("Q").unwrap(), TriPoly::one()).unwrap();
        let ratio_k = RatFun3::new(
            TriPoly::parse("Kv - q").unwrap(),
            TriPoly::parse("Kv").unwrap(),
        )
        .unwrap();
        let term = QHyperTerm::from_ratios(ratio_n, ratio_k).unwrap();
        let rec = find_recursion(&term, 4).unwrap();
        assert_eq!(rec.raw.order, 1);
        assert!(!rec.homogenized);
        assert!(rec.raw.inhom.is_zero());
        assert_eq!(
            rec.normalized.coeffs(),
            &[BiPoly::parse("-Q").unwrap(), BiPoly::one()]
        );
    }

    #[test]
    fn order_bound_exceeded_is_an_error() {
        let term = term_ratios(Knot::FigureEight);
        assert_eq!(
            find_recursion(&term, 1).unwrap_err(),
            Error::OrderBoundExceeded { max_order: 1 }
        );
    }
}
