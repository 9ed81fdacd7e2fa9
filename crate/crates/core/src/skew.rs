//! The skew Laurent algebra `B = Q(z)[X, X^-1; shift]` with
//! `X^i * f(z) = f(z + i) * X^i`, and its subalgebra `A` generated by
//! `Q[z]`, `X = L_1` and `Y = pi_mu(z) X^-1 = L_-1`.
//!
//! Elements of `A` are stored as ordinary [`SkewElement`]s; membership in
//! `A` is a predicate ([`SkewElement::to_a_presentation`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize};

use crate::algebra::{pi_mu, RatFunc, Rational, UniPoly};
use crate::error::{Error, Result};

/// `sum_i xi_i(z) X^i` with finitely many nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct SkewElement {
    terms: BTreeMap<i64, RatFunc>,
}

impl<'de> Deserialize<'de> for SkewElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = BTreeMap::<i64, RatFunc>::deserialize(deserializer)?;
        Ok(SkewElement::from_terms(terms))
    }
}

impl SkewElement {
    pub fn zero() -> Self {
        SkewElement::default()
    }

    pub fn one() -> Self {
        SkewElement::term(RatFunc::one(), 0)
    }

    /// `X`.
    pub fn x() -> Self {
        SkewElement::term(RatFunc::one(), 1)
    }

    /// `X^-1`.
    pub fn x_inv() -> Self {
        SkewElement::term(RatFunc::one(), -1)
    }

    /// `Y = pi_mu(z) X^-1`, the image of `L_-1`.
    pub fn y(mu: &Rational) -> Self {
        SkewElement::term(RatFunc::from_poly(pi_mu(mu)), -1)
    }

    /// `Y^i = pi(z) pi(z-1) ... pi(z-i+1) X^-i`.
    pub fn y_pow(mu: &Rational, i: u32) -> Self {
        SkewElement::term(RatFunc::from_poly(y_power_factor(mu, i)), -(i as i64))
    }

    /// `c(z) X^deg`.
    pub fn term(c: RatFunc, deg: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(deg, c);
        }
        SkewElement { terms }
    }

    pub fn poly_term(c: UniPoly, deg: i64) -> Self {
        SkewElement::term(RatFunc::from_poly(c), deg)
    }

    /// `sum_j coeffs[j] X^j`.
    pub fn from_polys(coeffs: &[UniPoly]) -> Self {
        SkewElement::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (j as i64, RatFunc::from_poly(c.clone())))
                .collect(),
        )
    }

    pub fn from_terms(mut terms: BTreeMap<i64, RatFunc>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        SkewElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<i64, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, deg: i64) -> RatFunc {
        self.terms.get(&deg).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max degree - min degree`, or `None` (minus infinity) for zero.
    pub fn length(&self) -> Option<i64> {
        Some(self.max_degree()? - self.min_degree()?)
    }

    /// Left multiplication by a scalar of Q(z) (no shift involved).
    pub fn left_scale(&self, c: &RatFunc) -> Self {
        SkewElement::from_terms(self.terms.iter().map(|(&d, x)| (d, c * x)).collect())
    }

    fn leading(&self) -> Option<(i64, &RatFunc)> {
        self.terms.iter().next_back().map(|(&d, c)| (d, c))
    }

    /// True when every coefficient is a polynomial and all degrees are
    /// non-negative, i.e. the element lies in `Q[z][X]`.
    pub fn is_polynomial_in_x(&self) -> bool {
        self.min_degree().map_or(true, |m| m >= 0)
            && self.terms.values().all(RatFunc::is_polynomial)
    }

    /// Euclidean right division for the length function: `self = q * b + r`
    /// with `r = 0` or `length(r) < length(b)`.
    ///
    /// Since every `X^k` is a unit of `B`, `self` lies in the left ideal
    /// `B b` exactly when `r = 0`.
    pub fn right_divide(&self, b: &SkewElement) -> Result<(SkewElement, SkewElement)> {
        self.divide_in_window(b, true)
    }

    /// Mirror of [`Self::right_divide`]: `self = b * q + r`.
    pub fn left_divide(&self, b: &SkewElement) -> Result<(SkewElement, SkewElement)> {
        self.divide_in_window(b, false)
    }

    /// Euclidean division by `b` spanning degrees `lo..=hi`: terms of degree
    /// `>= hi` are cleared from the top and terms below `lo` from the bottom,
    /// so the remainder lives in degrees `lo..hi` and has length below `b`'s.
    fn divide_in_window(&self, b: &SkewElement, right: bool) -> Result<(SkewElement, SkewElement)> {
        let (hi, btop) = b.leading().ok_or(Error::DivisionByZero)?;
        let lo = b.min_degree().expect("nonzero");
        let blow = b.coeff(lo);
        // Coefficient c with (c X^d) b (right) or b (c X^d) (left) having
        // leading coefficient `target` at the matching degree.
        let step = |target: &RatFunc, bc: &RatFunc, bdeg: i64, d: i64| -> Result<SkewElement> {
            let c = if right {
                target.div(&bc.shift(d))?
            } else {
                target.div(bc)?.shift(-bdeg)
            };
            Ok(SkewElement::term(c, d))
        };
        let mut q = SkewElement::zero();
        let mut r = self.clone();
        loop {
            let Some((rn, rtop)) = r.leading() else { break };
            if rn < hi {
                break;
            }
            let s = step(rtop, btop, hi, rn - hi)?;
            r = if right {
                &r - &(&s * b)
            } else {
                &r - &(b * &s)
            };
            q = &q + &s;
        }
        loop {
            let Some(rl) = r.min_degree() else { break };
            if rl >= lo {
                break;
            }
            let s = step(&r.coeff(rl), &blow, lo, rl - lo)?;
            r = if right {
                &r - &(&s * b)
            } else {
                &r - &(b * &s)
            };
            q = &q + &s;
        }
        Ok((q, r))
    }

    /// Right division inside the skew polynomial ring `Q(z)[X; shift]`
    /// (no negative powers of `X` in the quotient): the remainder has
    /// smaller top degree than `b` or is returned unreduced when no
    /// non-negative quotient step applies.
    pub fn right_divide_polynomial(&self, b: &SkewElement) -> Result<(SkewElement, SkewElement)> {
        let (bn, btop) = b.leading().ok_or(Error::DivisionByZero)?;
        let mut q = SkewElement::zero();
        let mut r = self.clone();
        while let Some((rn, rtop)) = r.leading() {
            if rn < bn {
                break;
            }
            let d = rn - bn;
            let c = rtop.div(&btop.shift(d))?;
            let step = SkewElement::term(c, d);
            r = &r - &(&step * b);
            q = &q + &step;
        }
        Ok((q, r))
    }

    /// The graded presentation `sum p_i Y^i + sum q_j X^j` in `A`.
    pub fn to_a_presentation(&self, mu: &Rational) -> Result<APresentation> {
        let mut y_part = Vec::new();
        let mut x_part = Vec::new();
        for (&d, c) in &self.terms {
            if d >= 0 {
                let p = c.as_polynomial().ok_or(Error::NotInA { degree: d })?;
                let j = d as usize;
                if x_part.len() <= j {
                    x_part.resize(j + 1, UniPoly::zero());
                }
                x_part[j] = p.clone();
            } else {
                let i = (-d) as u32;
                let f = y_power_factor(mu, i);
                let p = c
                    .div(&RatFunc::from_poly(f))?
                    .as_polynomial()
                    .cloned()
                    .ok_or(Error::NotInA { degree: d })?;
                let idx = (i - 1) as usize;
                if y_part.len() <= idx {
                    y_part.resize(idx + 1, UniPoly::zero());
                }
                y_part[idx] = p;
            }
        }
        Ok(APresentation {
            y_part,
            x_part,
            mu: mu.clone(),
        })
    }

    pub fn is_in_a(&self, mu: &Rational) -> bool {
        self.to_a_presentation(mu).is_ok()
    }

    /// Membership in `A+ = Q[z][X]`.
    pub fn is_in_a_plus(&self) -> bool {
        self.is_polynomial_in_x()
    }
}

/// `pi(z) pi(z-1) ... pi(z-i+1)`, the coefficient of `X^-i` in `Y^i`.
pub fn y_power_factor(mu: &Rational, i: u32) -> UniPoly {
    let pi = pi_mu(mu);
    (0..i as i64).fold(UniPoly::one(), |acc, j| &acc * &pi.shift(-j))
}

/// Product in `B`.
pub fn skew_mul(a: &SkewElement, b: &SkewElement) -> SkewElement {
    a * b
}

/// `length` as `Option`: `None` stands for minus infinity.
pub fn length(a: &SkewElement) -> Option<i64> {
    a.length()
}

pub fn right_divide(a: &SkewElement, b: &SkewElement) -> Result<(SkewElement, SkewElement)> {
    a.right_divide(b)
}

pub fn to_a_presentation(a: &SkewElement, mu: &Rational) -> Result<APresentation> {
    a.to_a_presentation(mu)
}

/// An element of `A` written as `sum_{i>=1} p_i(z) Y^i + sum_{j>=0} q_j(z) X^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct APresentation {
    /// `y_part[i-1]` is the coefficient of `Y^i`.
    #[serde(rename = "yPart")]
    pub y_part: Vec<UniPoly>,
    /// `x_part[j]` is the coefficient of `X^j`.
    #[serde(rename = "xPart")]
    pub x_part: Vec<UniPoly>,
    pub mu: Rational,
}

impl APresentation {
    pub fn to_skew(&self) -> SkewElement {
        let mut out = SkewElement::from_polys(&self.x_part);
        for (idx, p) in self.y_part.iter().enumerate() {
            let yi = SkewElement::y_pow(&self.mu, idx as u32 + 1);
            out = &out + &(&SkewElement::poly_term(p.clone(), 0) * &yi);
        }
        out
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(d, c)| match d {
                0 => format!("({c})"),
                1 => format!("({c})*X"),
                _ => format!("({c})*X^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewElement({self})")
    }
}

impl Add<&SkewElement> for &SkewElement {
    type Output = SkewElement;
    fn add(self, rhs: &SkewElement) -> SkewElement {
        let mut terms = self.terms.clone();
        for (&d, c) in &rhs.terms {
            let e = terms.entry(d).or_insert_with(RatFunc::zero);
            *e = &*e + c;
        }
        SkewElement::from_terms(terms)
    }
}

impl Neg for &SkewElement {
    type Output = SkewElement;
    fn neg(self) -> SkewElement {
        SkewElement {
            terms: self.terms.iter().map(|(&d, c)| (d, -c)).collect(),
        }
    }
}

impl Sub<&SkewElement> for &SkewElement {
    type Output = SkewElement;
    fn sub(self, rhs: &SkewElement) -> SkewElement {
        self + &(-rhs)
    }
}

impl Mul<&SkewElement> for &SkewElement {
    type Output = SkewElement;
    fn mul(self, rhs: &SkewElement) -> SkewElement {
        let mut terms: BTreeMap<i64, RatFunc> = BTreeMap::new();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                let t = a * &b.shift(i);
                let e = terms.entry(i + j).or_insert_with(RatFunc::zero);
                *e = &*e + &t;
            }
        }
        SkewElement::from_terms(terms)
    }
}
