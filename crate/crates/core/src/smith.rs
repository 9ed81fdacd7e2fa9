//! Smith normal form over Q[z] with tracked unimodular transforms, plus an
//! independent gcd-of-minors oracle.

use serde::Serialize;

use crate::algebra::{pi_mu, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;

/// `M = U S V` with `U`, `V` unimodular and `S` diagonal, monic, and
/// satisfying the divisibility chain. Inverses of `U` and `V` are kept so
/// callers never need to invert them again.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    #[serde(rename = "U")]
    pub u: PolyMatrix,
    #[serde(rename = "S")]
    pub s: PolyMatrix,
    #[serde(rename = "V")]
    pub v: PolyMatrix,
    #[serde(skip)]
    pub u_inv: PolyMatrix,
    #[serde(skip)]
    pub v_inv: PolyMatrix,
}

impl SmithForm {
    /// The invariant factors `s_1 | s_2 | ...` (zeros at the end for
    /// rank-deficient input).
    pub fn invariant_factors(&self) -> Vec<UniPoly> {
        self.s.diag()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.s.diag().iter().filter(|p| !p.is_zero()).count()
    }
}

/// Working state: `M = u * w * v` and `w = u_inv * M * v_inv` at all times.
struct Reducer {
    w: Vec<Vec<UniPoly>>,
    u: Vec<Vec<UniPoly>>,
    u_inv: Vec<Vec<UniPoly>>,
    v: Vec<Vec<UniPoly>>,
    v_inv: Vec<Vec<UniPoly>>,
}

fn identity(n: usize) -> Vec<Vec<UniPoly>> {
    PolyMatrix::identity(n).entries().to_vec()
}

fn axpy(dst: &mut UniPoly, c: &UniPoly, x: &UniPoly) {
    if !x.is_zero() {
        *dst = &*dst + &(c * x);
    }
}

impl Reducer {
    fn new(m: &PolyMatrix) -> Self {
        Reducer {
            w: m.entries().to_vec(),
            u: identity(m.rows()),
            u_inv: identity(m.rows()),
            v: identity(m.cols()),
            v_inv: identity(m.cols()),
        }
    }

    /// row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: &UniPoly) {
        for col in 0..self.w[0].len() {
            let x = self.w[j][col].clone();
            axpy(&mut self.w[i][col], c, &x);
        }
        let neg = -c;
        for row in self.u.iter_mut() {
            let x = row[i].clone();
            axpy(&mut row[j], &neg, &x);
        }
        for col in 0..self.u_inv[0].len() {
            let x = self.u_inv[j][col].clone();
            axpy(&mut self.u_inv[i][col], c, &x);
        }
    }

    /// col_j += c * col_i
    fn col_add(&mut self, i: usize, j: usize, c: &UniPoly) {
        for row in self.w.iter_mut() {
            let x = row[i].clone();
            axpy(&mut row[j], c, &x);
        }
        let neg = -c;
        for col in 0..self.v[0].len() {
            let x = self.v[j][col].clone();
            axpy(&mut self.v[i][col], &neg, &x);
        }
        for row in self.v_inv.iter_mut() {
            let x = row[i].clone();
            axpy(&mut row[j], c, &x);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.w.swap(i, j);
        for row in self.u.iter_mut() {
            row.swap(i, j);
        }
        self.u_inv.swap(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.w.iter_mut() {
            row.swap(i, j);
        }
        self.v.swap(i, j);
        for row in self.v_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i *= c for a nonzero constant `c`.
    fn row_scale(&mut self, i: usize, c: &Rational) {
        let inv = c.recip().expect("nonzero scale");
        for x in self.w[i].iter_mut() {
            *x = x.scale(c);
        }
        for row in self.u.iter_mut() {
            row[i] = row[i].scale(&inv);
        }
        for x in self.u_inv[i].iter_mut() {
            *x = x.scale(c);
        }
    }

    /// Clears rational content from each row at or below `from`.
    fn extract_row_content(&mut self, from: usize) {
        for i in from..self.w.len() {
            // Content of all coefficients in the row at once.
            let all: Vec<Rational> = self.w[i].iter().flat_map(|p| p.coeffs().to_vec()).collect();
            let c = UniPoly::new(all).content();
            if !c.is_one() {
                self.row_scale(i, &c.recip().expect("nonzero content"));
            }
        }
    }

    fn reduce(mut self) -> SmithForm {
        let rows = self.w.len();
        let cols = self.w.first().map_or(0, Vec::len);
        for k in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = self.min_degree_entry(k) else {
                    return self.finish(rows, cols);
                };
                self.row_swap(k, pi);
                self.col_swap(k, pj);
                let lc = self.w[k][k].leading_coeff();
                if !lc.is_one() {
                    self.row_scale(k, &lc.recip().expect("nonzero pivot"));
                }
                let mut clean = true;
                for i in k + 1..rows {
                    if self.w[i][k].is_zero() {
                        continue;
                    }
                    let (q, r) = self.w[i][k].div_rem(&self.w[k][k]).expect("nonzero pivot");
                    self.row_add(i, k, &-q);
                    clean &= r.is_zero();
                }
                for j in k + 1..cols {
                    if self.w[k][j].is_zero() {
                        continue;
                    }
                    let (q, r) = self.w[k][j].div_rem(&self.w[k][k]).expect("nonzero pivot");
                    self.col_add(k, j, &-q);
                    clean &= r.is_zero();
                }
                if !clean {
                    continue;
                }
                let pivot = self.w[k][k].clone();
                let offender =
                    (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !pivot.divides(&self.w[i][j])));
                match offender {
                    Some(i) => self.row_add(k, i, &UniPoly::one()),
                    None => break,
                }
            }
            self.extract_row_content(k + 1);
        }
        self.finish(rows, cols)
    }

    fn min_degree_entry(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in self.w.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if let Some(d) = e.degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn finish(self, rows: usize, cols: usize) -> SmithForm {
        let build = |e: Vec<Vec<UniPoly>>| PolyMatrix::from_rows(e).expect("rectangular");
        let s = if rows == 0 || cols == 0 {
            PolyMatrix::zero(rows, cols)
        } else {
            build(self.w)
        };
        SmithForm {
            u: build(self.u),
            s,
            v: build(self.v),
            u_inv: build(self.u_inv),
            v_inv: build(self.v_inv),
        }
    }
}

/// Smith normal form of a (possibly rectangular) matrix over Q[z].
pub fn smith_normal_form(m: &PolyMatrix) -> SmithForm {
    if m.rows() == 0 || m.cols() == 0 {
        return SmithForm {
            u: PolyMatrix::identity(m.rows()),
            s: m.clone(),
            v: PolyMatrix::identity(m.cols()),
            u_inv: PolyMatrix::identity(m.rows()),
            v_inv: PolyMatrix::identity(m.cols()),
        };
    }
    Reducer::new(m).reduce()
}

/// Determinant by cofactor expansion along the first row. Deliberately
/// unrelated to the elimination used elsewhere so it can serve as a check.
fn laplace_det(m: &[Vec<UniPoly>]) -> UniPoly {
    match m.len() {
        0 => UniPoly::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = UniPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<UniPoly>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][j] * &laplace_det(&minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the monic gcd of
/// all `k x k` minors and `s_k = d_k / d_{k-1}`.
pub fn invariant_factors_oracle(m: &PolyMatrix) -> Vec<UniPoly> {
    let r = m.rows().min(m.cols());
    let mut out = Vec::with_capacity(r);
    let mut prev = UniPoly::one();
    for k in 1..=r {
        let mut d = UniPoly::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<UniPoly>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect())
                    .collect();
                d = d.gcd_or_zero(&laplace_det(&sub));
            }
        }
        if d.is_zero() {
            out.resize(r, UniPoly::zero());
            return out;
        }
        out.push(
            d.exact_div(&prev)
                .expect("determinantal divisors form a chain"),
        );
        prev = d;
    }
    out
}

pub fn is_unimodular(m: &PolyMatrix) -> bool {
    m.is_unimodular()
}

/// Given diagonal `S` whose entries divide `pi_mu(z+1)`, the diagonal `T`
/// with `S(z) T(z+1) = pi_mu(z+1) I`, that is `t_i(z) = pi_mu(z) / s_i(z-1)`.
pub fn diagonal_complement(s: &PolyMatrix, mu: &Rational) -> Result<PolyMatrix> {
    if !s.is_square() || !s.is_diagonal() {
        return Err(Error::Dimension(
            "complement needs a square diagonal matrix".into(),
        ));
    }
    let pi = pi_mu(mu);
    let pi1 = pi.shift(1);
    let mut t = Vec::with_capacity(s.rows());
    for d in s.diag() {
        let q = pi1.exact_div(&d).ok_or_else(|| Error::NotCasimir {
            mu: mu.to_string(),
            factor: d.to_string(),
            target: pi1.to_string(),
        })?;
        t.push(q.shift(-1));
    }
    let t = PolyMatrix::diagonal(s.rows(), s.cols(), &t);
    debug_assert_eq!(s * &t.shift(1), PolyMatrix::identity(s.rows()).scale(&pi1));
    Ok(t)
}
