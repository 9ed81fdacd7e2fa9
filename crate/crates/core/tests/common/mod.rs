#![allow(dead_code)]

use proptest::prelude::*;
use sl2_core::{PolyMatrix, Rational, SkewElement, UniPoly};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(UniPoly::new)
}

pub fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(|c| UniPoly::from_ints(&c))
}

pub fn matrix(rows: usize, cols: usize, max_deg: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(int_poly(max_deg, 5), cols), rows)
        .prop_map(|e| PolyMatrix::from_rows(e).unwrap())
}

pub fn any_matrix(max_size: usize, max_deg: usize) -> impl Strategy<Value = PolyMatrix> {
    (1..=max_size, 1..=max_size).prop_flat_map(move |(r, c)| matrix(r, c, max_deg))
}

pub fn square_matrix(max_size: usize, max_deg: usize) -> impl Strategy<Value = PolyMatrix> {
    (1..=max_size).prop_flat_map(move |n| matrix(n, n, max_deg))
}

/// Product of elementary row operations with polynomial multipliers, a
/// permutation, and nonzero constant scalings.
pub fn unimodular(n: usize) -> impl Strategy<Value = PolyMatrix> {
    (
        prop::collection::vec((0..n, 0..n, int_poly(1, 3)), 0..=4),
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)], n),
    )
        .prop_map(move |(ops, perm, scales)| {
            let mut m = PolyMatrix::identity(n);
            for (i, j, c) in ops {
                if i == j {
                    continue;
                }
                let mut e = PolyMatrix::identity(n);
                e.set(i, j, c);
                m = &e * &m;
            }
            let mut p = PolyMatrix::zero(n, n);
            for (i, &j) in perm.iter().enumerate() {
                p.set(i, j, UniPoly::constant(Rational::integer(scales[i])));
            }
            &p * &m
        })
}

pub fn skew(min_deg: i64, max_deg: i64, coeff_deg: usize) -> impl Strategy<Value = SkewElement> {
    prop::collection::btree_map(min_deg..=max_deg, int_poly(coeff_deg, 4), 0..=3).prop_map(|m| {
        m.into_iter().fold(SkewElement::zero(), |acc, (d, c)| {
            &acc + &SkewElement::poly_term(c, d)
        })
    })
}

pub fn mu() -> impl Strategy<Value = Rational> {
    (
        -12i64..=12,
        prop_oneof![Just(1i64), Just(2), Just(3), Just(5)],
    )
        .prop_map(|(n, d)| Rational::new(n, d))
}
