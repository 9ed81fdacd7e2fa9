//! Dense Gaussian elimination over the exact fields Q and Q(z).

use crate::algebra::{RatFunc, Rational};

/// The handful of field operations elimination needs.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
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
    fn inv(&self) -> Self {
        self.recip().expect("nonzero pivot")
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
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
    fn inv(&self) -> Self {
        RatFunc::inv(self).expect("nonzero pivot")
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut().skip(c) {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                let t = f.mul(&rows[r][j]);
                rows[i][j] = rows[i][j].sub(&t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}` for an `m x ncols` matrix given by rows.
///
/// Basis vectors are the standard ones read off the RREF: each has a single
/// free coordinate equal to one.
pub fn nullspace<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let pivots = rref(&mut rows);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                let x = &rows[r][free];
                if !x.is_zero() {
                    v[pc] = F::zero().sub(x);
                }
            }
            v
        })
        .collect()
}

pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    rref(&mut rows).len()
}
