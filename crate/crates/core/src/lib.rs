//! Exact symbolic engine for linear q-recursions of colored Jones functions.
//!
//! The crate computes, by exact arithmetic over arbitrary-precision rationals:
//!
//! - colored Jones values of the trefoil (`3_1`) and figure-eight (`4_1`)
//!   knots from their q-hypergeometric sum formulas ([`qseries`]),
//! - recursion operators for those sums by q-Gosper / q-Zeilberger creative
//!   telescoping ([`telescope`]),
//! - skew polynomial arithmetic in the Ore algebra K[E; sigma] over
//!   K = Q(q,Q) with sigma(Q) = qQ, including right division, GCRD and
//!   normalization to the coprime integral form ([`ore`]),
//! - the q = 1 characteristic polynomial of a recursion operator and its
//!   comparison against the classical A-polynomial of the knot, i.e. the
//!   AJ-conjecture check ([`aj`]).
//!
//! All core arithmetic is exact; no floating point is used anywhere.
//!
//! The exact arithmetic layer is spread over [`laurent`] (Laurent polynomials
//! in q over Q), [`bipoly`] (polynomials in (q,Q) over Z), [`ratfun`] (the
//! fraction field Q(q,Q)), [`charpoly`] (polynomials in (L,M) over Z) and
//! [`tripoly`] (polynomials in (q,Q,Kv) over Z, Kv standing for q^k).
//!
//! With the default `parallel` feature, batch evaluations (value tables,
//! annihilation sweeps) run on rayon; disabling the feature yields a fully
//! sequential build with identical results.

pub mod aj;
pub mod bipoly;
pub mod charpoly;
pub mod laurent;
pub mod ore;
pub mod parse;
pub mod qseries;
pub mod ratfun;
pub mod telescope;
pub mod tripoly;
pub mod xpoly;

mod linsolve;
mod upoly;

pub use aj::{aj_verdict, AjVerdict, Order1Exclusion};
pub use bipoly::BiPoly;
pub use charpoly::CharPoly;
pub use laurent::LaurentPoly;
pub use ore::{NormalizedOp, OreOp};
pub use qseries::{jones, jones_table, Knot, QHyperTerm};
pub use ratfun::RatFun;
pub use telescope::{find_recursion, qzeilberger, Recursion, TelescopeResult};
pub use tripoly::{RatFun3, TriPoly};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("no recursion found up to order {max_order} (order bound exceeded)")]
    OrderBoundExceeded { max_order: usize },
    #[error("value table too small: need at least {needed} scalar equations, got {got}")]
    InsufficientTable { needed: usize, got: usize },
    #[error("certificate has a pole at Kv = 1; boundary evaluation undefined")]
    CertificatePole,
    #[error("unknown knot `{0}` (known: 3_1, 4_1)")]
    UnknownKnot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
