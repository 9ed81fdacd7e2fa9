//! Dense univariate polynomials over Q in the variable `z`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A polynomial in `z` stored as ascending coefficients without trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(UniPoly::new(Vec::<Rational>::deserialize(deserializer)?))
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::integer(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        UniPoly::from_ints(&[0, 1])
    }

    /// `z + c`.
    pub fn linear(c: Rational) -> Self {
        UniPoly::new(vec![c, Rational::one()])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Rational::is_one)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => UniPoly::zero(),
            Some(lc) => self.scale(&lc.recip().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Value at an integer point modulo `p`; `None` if a coefficient
    /// denominator vanishes mod `p`.
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = crate::modp::add(crate::modp::mul(acc, x, p), c.mod_prime(p)?, p);
        }
        Some(acc)
    }

    /// `p(z + k)`: the k-th power of the shift automorphism.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.is_constant() {
            return self.clone();
        }
        let lin = UniPoly::linear(Rational::integer(k));
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.leading_coeff().recip()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &lc_inv;
            let shift = i - dd;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                r[shift + j] -= &t;
            }
            q[shift] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other
            .div_rem(self)
            .map(|(_, r)| r.is_zero())
            .unwrap_or(false)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// gcd that treats `gcd(0, 0)` as `0`.
    pub fn gcd_or_zero(&self, other: &UniPoly) -> UniPoly {
        self.gcd(other).unwrap_or_else(|_| UniPoly::zero())
    }

    /// Monic least common multiple of nonzero polynomials.
    pub fn lcm(&self, other: &UniPoly) -> Result<UniPoly> {
        let g = self.gcd(other)?;
        let prod = self * other;
        Ok(prod.exact_div(&g).expect("gcd divides product").monic())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of the root `r`.
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = UniPoly::linear(-r);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            m += 1;
        }
        m
    }

    /// Maximum absolute value of numerators and denominators, a crude
    /// height used in diagnostics.
    pub fn height_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// Positive rational `c` with `self / c` having coprime integer
    /// coefficients; one for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::from_bigints(num, den).expect("positive denominator")
    }
}

/// Parses comma-separated ascending coefficients: `"0,1"` is `z`, `""` is
/// zero.
impl std::str::FromStr for UniPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(UniPoly::zero());
        }
        s.split(',')
            .map(|c| c.trim().parse::<Rational>())
            .collect::<Result<Vec<_>>>()
            .map(UniPoly::new)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            let coeff = if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match (i, show_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{coeff}*z")?,
                (1, false) => write!(f, "z")?,
                (_, true) => write!(f, "{coeff}*z^{i}")?,
                (_, false) => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o += s;
        }
        UniPoly::new(out)
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(n, Rational::zero());
        for (o, s) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= s;
        }
        UniPoly::new(out)
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j] += &t;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                $tr::$m(&self, &rhs)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                $tr::$m(&self, rhs)
            }
        }
        impl $tr<UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                $tr::$m(self, &rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// `p(z + k)`.
pub fn poly_shift(p: &UniPoly, k: i64) -> UniPoly {
    p.shift(k)
}

/// Monic gcd; both-zero input is a domain error.
pub fn poly_gcd(p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    p.gcd(q)
}

/// `alpha_mu(z) = z + mu`.
pub fn alpha_mu(mu: &Rational) -> UniPoly {
    UniPoly::linear(mu.clone())
}

/// `beta_mu(z) = z - mu - 1`.
pub fn beta_mu(mu: &Rational) -> UniPoly {
    UniPoly::linear(-mu - Rational::one())
}

/// `pi_mu(z) = (z + mu)(z - mu - 1)`, the value of `L_{-1} L_1`.
pub fn pi_mu(mu: &Rational) -> UniPoly {
    &alpha_mu(mu) * &beta_mu(mu)
}
