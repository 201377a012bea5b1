//! Exact nullspace computation over a field, by Gauss-Jordan elimination.
//!
//! Used with `RatFun` entries (telescoping systems) and `BigRational`
//! entries (order-exclusion certificates). Pivoting is by fixed column
//! order with the first nonzero row, so results are deterministic.

use crate::ratfun::RatFun;
use num::rational::BigRational;
use num::{One, Zero};

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
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
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFun::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFun::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFun::mul(self, other)
    }
    fn div(&self, other: &Self) -> Self {
        RatFun::div(self, other).expect("division by zero in elimination")
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
}

/// Incremental row reducer: maintains a reduced echelon basis keyed by
/// pivot column. Ranks are exact; rows may arrive in any order.
pub struct RowReducer<F: Field> {
    ncols: usize,
    /// pivot column -> normalized row (pivot entry = 1)
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(ncols: usize) -> Self {
        RowReducer {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the basis; insert if independent.
    /// Returns true when the row was independent.
    pub fn add_row(&mut self, mut row: Vec<F>) -> bool {
        assert_eq!(row.len(), self.ncols);
        for (pivot, basis) in &self.rows {
            if !row[*pivot].is_zero() {
                let factor = row[*pivot].clone();
                for j in *pivot..self.ncols {
                    if !basis[j].is_zero() {
                        row[j] = row[j].sub(&factor.mul(&basis[j]));
                    }
                }
            }
        }
        let pivot = match row.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = row[pivot].clone();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.div(&inv);
            }
        }
        // back-substitute into existing rows to keep the basis reduced
        for (_, basis) in self.rows.iter_mut() {
            if !basis[pivot].is_zero() {
                let factor = basis[pivot].clone();
                for j in 0..self.ncols {
                    if !row[j].is_zero() {
                        basis[j] = basis[j].sub(&factor.mul(&row[j]));
                    }
                }
            }
        }
        self.rows.push((pivot, row));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    /// Basis of the nullspace of the accumulated row span.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![F::zero(); self.ncols];
            v[f] = F::one();
            for (p, row) in &self.rows {
                // row: x_p + sum(row[j] x_j) = 0 over free columns
                v[*p] = row[f].neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// Nullspace basis of the matrix given by `rows` (each of width `ncols`).
pub fn nullspace<F: Field>(rows: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let mut red = RowReducer::new(ncols);
    for row in rows {
        red.add_row(row);
    }
    red.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;

    fn r(v: i64) -> BigRational {
        BigRational::from(BigInt::from(v))
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        // x + y + z = 0; x + 2y + 3z = 0 -> kernel spanned by (1, -2, 1)
        let rows = vec![vec![r(1), r(1), r(1)], vec![r(1), r(2), r(3)]];
        let basis = nullspace(rows, 3);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        // check both equations
        assert!(v[0].clone() + v[1].clone() + v[2].clone() == r(0));
        assert!(v[0].clone() + r(2) * v[1].clone() + r(3) * v[2].clone() == r(0));
    }

    #[test]
    fn full_rank_has_empty_kernel() {
        let rows = vec![vec![r(1), r(0)], vec![r(1), r(1)]];
        let mut red = RowReducer::new(2);
        for row in rows {
            red.add_row(row);
        }
        assert_eq!(red.rank(), 2);
        assert!(red.nullspace().is_empty());
    }
}
