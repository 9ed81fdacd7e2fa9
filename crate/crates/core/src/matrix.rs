//! Dense matrices over Q[z].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Deserializer, Serialize};

use crate::algebra::{RatFunc, Rational, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<UniPoly>>,
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<UniPoly>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let m = PolyMatrix::from_rows(raw.entries).map_err(serde::de::Error::custom)?;
        if (m.rows, m.cols) != (raw.rows, raw.cols) {
            return Err(serde::de::Error::custom(format!(
                "declared shape {}x{} does not match entries {}x{}",
                raw.rows, raw.cols, m.rows, m.cols
            )));
        }
        Ok(m)
    }
}

impl PolyMatrix {
    /// Builds a matrix from its rows; all rows must have equal length.
    pub fn from_rows(entries: Vec<Vec<UniPoly>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Integer-coefficient shorthand: `ints[i][j]` are ascending coefficients.
    pub fn from_ints(ints: &[&[&[i64]]]) -> Self {
        PolyMatrix::from_rows(
            ints.iter()
                .map(|r| r.iter().map(|c| UniPoly::from_ints(c)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![vec![UniPoly::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = UniPoly::one();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[UniPoly]) -> Self {
        let mut m = PolyMatrix::zero(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.entries[i][i] = d.clone();
        }
        m
    }

    pub fn column_vector(v: &[UniPoly]) -> Self {
        PolyMatrix {
            rows: v.len(),
            cols: 1,
            entries: v.iter().map(|p| vec![p.clone()]).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &UniPoly {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: UniPoly) {
        self.entries[i][j] = v;
    }

    pub fn entries(&self) -> &[Vec<UniPoly>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<UniPoly> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn select_columns(&self, cols: std::ops::Range<usize>) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: cols.len(),
            entries: self
                .entries
                .iter()
                .map(|r| r[cols.clone()].to_vec())
                .collect(),
        }
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> Self {
        PolyMatrix {
            rows: rows.len(),
            cols: self.cols,
            entries: self.entries[rows].to_vec(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().chain(b).cloned().collect())
                .collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: (0..self.cols).map(|j| self.column(j)).collect(),
        }
    }

    /// Entrywise `M(z + k)`.
    pub fn shift(&self, k: i64) -> Self {
        self.map(|p| p.shift(k))
    }

    pub fn map(&self, f: impl Fn(&UniPoly) -> UniPoly) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }

    pub fn scale(&self, p: &UniPoly) -> Self {
        self.map(|e| e * p)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(UniPoly::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    pub fn diag(&self) -> Vec<UniPoly> {
        (0..self.rows.min(self.cols))
            .map(|i| self.entries[i][i].clone())
            .collect()
    }

    /// Largest entry degree; `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries
            .iter()
            .flatten()
            .filter_map(UniPoly::degree)
            .max()
    }

    pub fn checked_mul(&self, rhs: &PolyMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.entries[k][j];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out.entries[i][j] = &out.entries[i][j] + &t;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[UniPoly]) -> Vec<UniPoly> {
        assert_eq!(v.len(), self.cols, "vector length");
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(UniPoly::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(UniPoly::one());
        }
        let mut a = self.entries.clone();
        let mut sign_flip = false;
        let mut prev = UniPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(UniPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = t
                        .exact_div(&prev)
                        .ok_or_else(|| Error::Internal("Bareiss division was not exact".into()))?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_flip { -d } else { d })
    }

    fn minor_matrix(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries: self
                .entries
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip_row)
                .map(|(_, r)| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip_col)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect(),
        }
    }

    /// Classical adjugate, so that `M adj(M) = det(M) I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("adjugate of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(PolyMatrix::identity(1));
        }
        let mut out = PolyMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor_matrix(j, i).det()?;
                out.entries[i][j] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        Ok(out)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().is_ok_and(|d| d.is_unit())
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<PolyMatrix> {
        let d = self.det()?;
        if !d.is_unit() {
            return Err(Error::NotUnimodular(d.to_string()));
        }
        let inv = d.leading_coeff().recip()?;
        Ok(self.adjugate()?.map(|e| e.scale(&inv)))
    }

    /// `p(z) * self^-1` when that product has polynomial entries.
    pub fn scaled_inverse(&self, p: &UniPoly) -> Result<Option<PolyMatrix>> {
        let d = self.det()?;
        if d.is_zero() {
            return Ok(None);
        }
        let adj = self.adjugate()?;
        let mut out = PolyMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let num = &adj.entries[i][j] * p;
                match num.exact_div(&d) {
                    Some(q) => out.entries[i][j] = q,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(out))
    }

    /// Entries evaluated at an integer point modulo `p`.
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<Vec<Vec<u64>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval_mod(x, p)).collect())
            .collect()
    }

    /// Entries as rational functions (used for solving over Q(z)).
    pub fn to_ratfunc_rows(&self) -> Vec<Vec<RatFunc>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| RatFunc::from_poly(e.clone())).collect())
            .collect()
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map(|e| e.scale(c))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{self}")
    }
}

impl Mul<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_mul(rhs).expect("conformable matrices")
    }
}

impl Add<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix shapes"
        );
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }
}

impl Sub<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix shapes"
        );
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        let m = PolyMatrix::from_ints(&[&[&[1], &[0, 1]], &[&[], &[1]]]);
        assert_eq!(m.det().unwrap(), UniPoly::one());
        assert!(m.is_unimodular());
        let m = PolyMatrix::from_ints(&[&[&[0, 1], &[]], &[&[], &[1]]]);
        assert_eq!(m.det().unwrap(), UniPoly::z());
        assert!(!m.is_unimodular());
        let companion = PolyMatrix::from_ints(&[&[&[], &[1]], &[&[1], &[0, 1]]]);
        assert_eq!(companion.det().unwrap(), UniPoly::from_ints(&[-1]));
        assert!(companion.is_unimodular());
    }

    #[test]
    fn adjugate_identity() {
        let m = PolyMatrix::from_ints(&[
            &[&[1, 1], &[2], &[0, 0, 1]],
            &[&[], &[0, 1], &[3]],
            &[&[1], &[1], &[1, -1]],
        ]);
        let d = m.det().unwrap();
        let prod = &m * &m.adjugate().unwrap();
        assert_eq!(prod, PolyMatrix::identity(3).scale(&d));
    }

    #[test]
    fn unimodular_inverse() {
        let m = PolyMatrix::from_ints(&[&[&[1], &[0, 1]], &[&[0, 0, 1], &[1, 0, 0, 1]]]);
        assert!(m.is_unimodular());
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(&m * &inv, PolyMatrix::identity(2));
    }

    #[test]
    fn json_shape_is_validated() {
        let m = PolyMatrix::identity(2);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"rows":2,"cols":2,"entries":[[["1"],[]],[[],["1"]]]}"#
        );
        assert_eq!(serde_json::from_str::<PolyMatrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<PolyMatrix>(
            r#"{"rows":3,"cols":2,"entries":[[["1"],[]],[[],["1"]]]}"#
        )
        .is_err());
    }
}
