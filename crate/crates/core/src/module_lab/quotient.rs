//! Quotient modules `A / A alpha` with constant ends and their companion
//! realization.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{RatFunc, Rational, UniPoly};
use crate::casimir::{rep_from_phi, smith_type, verify_rep, CasimirRep, SmithType};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::skew::{y_power_factor, SkewElement};

/// `A / A alpha` realized on the basis `1, X, ..., X^(n-1)`, where
/// `rho(L_1)` acts through the companion matrix of `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientModule {
    alpha: SkewElement,
    rep: CasimirRep,
}

impl Serialize for QuotientModule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            alpha: &'a SkewElement,
            mu: &'a Rational,
            rank: usize,
            #[serde(rename = "A1")]
            a1: &'a PolyMatrix,
        }
        Out {
            alpha: &self.alpha,
            mu: self.rep.mu(),
            rank: self.rank(),
            a1: self.rep.a1(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuotientModule {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct In {
            alpha: SkewElement,
            mu: Rational,
            rank: Option<usize>,
            #[serde(rename = "A1")]
            a1: Option<PolyMatrix>,
        }
        let raw = In::deserialize(deserializer)?;
        let q =
            QuotientModule::from_alpha(&raw.alpha, &raw.mu).map_err(serde::de::Error::custom)?;
        if raw.rank.is_some_and(|n| n != q.rank()) {
            return Err(serde::de::Error::custom("rank does not match alpha"));
        }
        if raw.a1.as_ref().is_some_and(|a| a != q.rep.a1()) {
            return Err(serde::de::Error::custom(
                "A1 is not the companion matrix of alpha",
            ));
        }
        Ok(q)
    }
}

/// Coefficients `a_0..a_n` of an element of `A+` with nonzero constant ends.
fn constant_end_coefficients(alpha: &SkewElement) -> Result<Vec<UniPoly>> {
    if !alpha.is_in_a_plus() || alpha.is_zero() {
        return Err(Error::NotInAPlus(alpha.to_string()));
    }
    let n = alpha.max_degree().expect("nonzero");
    let coeffs: Vec<UniPoly> = (0..=n)
        .map(|d| alpha.coeff(d).as_polynomial().cloned().expect("polynomial"))
        .collect();
    let ok = |p: &UniPoly| p.is_constant() && !p.is_zero();
    if !ok(&coeffs[0]) || !ok(&coeffs[n as usize]) {
        return Err(Error::Hypothesis(format!(
            "alpha = {alpha} needs nonzero constant a_0 and a_n"
        )));
    }
    if n == 0 {
        return Err(Error::Hypothesis("alpha must have positive length".into()));
    }
    Ok(coeffs)
}

/// Companion matrix: `X v_i = v_(i+1)` for `i < n-1` and
/// `X v_(n-1) = -(a_0 v_0 + ... + a_(n-1) v_(n-1)) / a_n`.
pub fn companion_matrix(coeffs: &[UniPoly]) -> PolyMatrix {
    let n = coeffs.len() - 1;
    let inv = coeffs[n].coeff(0).recip().expect("nonzero a_n");
    let mut m = PolyMatrix::zero(n, n);
    for i in 0..n - 1 {
        m.set(i + 1, i, UniPoly::one());
    }
    for (i, a) in coeffs[..n].iter().enumerate() {
        m.set(i, n - 1, a.scale(&-&inv));
    }
    m
}

impl QuotientModule {
    pub fn from_alpha(alpha: &SkewElement, mu: &Rational) -> Result<Self> {
        let coeffs = constant_end_coefficients(alpha)?;
        let rep = rep_from_phi(mu, &companion_matrix(&coeffs))?;
        Ok(QuotientModule {
            alpha: alpha.clone(),
            rep,
        })
    }

    pub fn alpha(&self) -> &SkewElement {
        &self.alpha
    }

    pub fn mu(&self) -> &Rational {
        self.rep.mu()
    }

    pub fn rank(&self) -> usize {
        self.rep.rank()
    }

    pub fn rep(&self) -> &CasimirRep {
        &self.rep
    }

    fn end(&self, d: i64) -> Rational {
        self.alpha.coeff(d).num().coeff(0)
    }
}

/// The module for `alpha = X^n - p(z) X^(n-1) - a_0`, requiring `n >= 2`,
/// `deg p >= 1` and `a_0 != 0`. Its companion matrix has last column
/// `(a_0, 0, ..., 0, p(z))`.
pub fn build_family(n: usize, p: &UniPoly, a0: &Rational, mu: &Rational) -> Result<QuotientModule> {
    if n < 2 {
        return Err(Error::Hypothesis(format!(
            "n = {n}: the family X^n - p(z) X^(n-1) - a_0 needs n >= 2"
        )));
    }
    if p.degree().is_none_or(|d| d < 1) {
        return Err(Error::Hypothesis(format!("deg p >= 1 fails for p = {p}")));
    }
    if a0.is_zero() {
        return Err(Error::Hypothesis("a_0 must be nonzero".into()));
    }
    let mut coeffs = vec![UniPoly::zero(); n + 1];
    coeffs[0] = UniPoly::constant(-a0);
    coeffs[n - 1] = -p;
    coeffs[n] = UniPoly::one();
    let q = QuotientModule::from_alpha(&SkewElement::from_polys(&coeffs), mu)?;
    let report = verify_rep(&q.rep);
    if !report.all_ok() {
        return Err(Error::Internal(format!(
            "family member fails {:?}",
            report.failures
        )));
    }
    let t = smith_type(&q.rep)?;
    if t != (SmithType::Zero { l: n, m: 0 }) {
        return Err(Error::Internal(format!("family member has Smith type {t}")));
    }
    Ok(q)
}

/// Result of the finite-generation test together with the degree bounds
/// describing the finite-dimensional complement `F_alpha`: its `Y`-part has
/// coefficients of degree below `deg a_0` and its `X`-part below `deg a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FiniteGeneration {
    pub finitely_generated: bool,
    /// `deg a_0`, or `None` when `a_0 = 0`.
    pub y_degree_bound: Option<usize>,
    /// `deg a_n`.
    pub x_degree_bound: usize,
    pub f_alpha_is_zero: bool,
}

pub fn is_finitely_generated(alpha: &SkewElement) -> Result<FiniteGeneration> {
    if !alpha.is_in_a_plus() || alpha.is_zero() {
        return Err(Error::NotInAPlus(alpha.to_string()));
    }
    let n = alpha.max_degree().expect("nonzero");
    let deg = |d: i64| alpha.coeff(d).as_polynomial().and_then(UniPoly::degree);
    let y = deg(0);
    let x = deg(n).expect("leading coefficient is nonzero");
    Ok(FiniteGeneration {
        finitely_generated: y == Some(0) && x == 0,
        y_degree_bound: y,
        x_degree_bound: x,
        f_alpha_is_zero: y == Some(0) && x == 0,
    })
}

/// Coordinates `(q_0, ..., q_(n-1))` with `a = sum q_i X^i` modulo `A alpha`.
///
/// Terms of degree `d >= n` are removed with `X^(d-n) alpha`; terms of
/// negative degree `-i` (coefficient `p(z) pi(z)...pi(z-i+1)` for `a` in
/// `A`) with `Y^i alpha`. Both multipliers lie in `A`, so the reduction
/// stays inside `A`.
pub fn reduce_mod_alpha(a: &SkewElement, q: &QuotientModule) -> Result<Vec<UniPoly>> {
    let mu = q.mu();
    if !a.is_in_a(mu) {
        return Err(Error::NotInA {
            degree: a.min_degree().unwrap_or(0),
        });
    }
    let n = q.rank() as i64;
    let an = q.end(n);
    let a0 = q.end(0);
    let mut r = a.clone();
    while let Some(d) = r.max_degree().filter(|&d| d >= n) {
        let c = r.coeff(d).scale(&an.recip()?);
        r = &r - &(&SkewElement::term(c, d - n) * &q.alpha);
    }
    while let Some(d) = r.min_degree().filter(|&d| d < 0) {
        let i = (-d) as u32;
        let p = r
            .coeff(d)
            .div(&RatFunc::from_poly(y_power_factor(mu, i)))?
            .as_polynomial()
            .cloned()
            .ok_or(Error::Internal(format!(
                "degree {d} term left A during reduction"
            )))?;
        let step = SkewElement::poly_term(p.scale(&a0.recip()?), 0);
        r = &r - &(&(&step * &SkewElement::y_pow(mu, i)) * &q.alpha);
    }
    (0..n)
        .map(|i| {
            r.coeff(i)
                .as_polynomial()
                .cloned()
                .ok_or(Error::Internal(format!("coordinate {i} is not polynomial")))
        })
        .collect()
}
