//! Dual representations and the dual of a skew polynomial.

use serde::Serialize;

use crate::algebra::{pi_mu, RatFunc, Rational, UniPoly};
use crate::casimir::{rep_from_phi, CasimirRep};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::skew::SkewElement;

/// A representation together with its dual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPair {
    pub primal: CasimirRep,
    pub dual: CasimirRep,
}

/// The dual representation on `V*`: in the dual basis `rho(L_1)` has matrix
/// `A_-1(z+1)^T` and `rho(L_-1)` has matrix `A_1(z-1)^T`.
pub fn dual_rep(rep: &CasimirRep) -> Result<CasimirRep> {
    let dual = rep_from_phi(rep.mu(), &rep.a_minus1().shift(1).transpose())?;
    debug_assert_eq!(dual.a_minus1(), &rep.a1().shift(-1).transpose());
    Ok(dual)
}

pub fn dual_pair(rep: &CasimirRep) -> Result<DualPair> {
    Ok(DualPair {
        primal: rep.clone(),
        dual: dual_rep(rep)?,
    })
}

/// `(pi_mu(z+1) shift)^k f`. For `k < 0` this is
/// `f(z+k) / (pi_mu(z) pi_mu(z-1) ... pi_mu(z+k+1))`.
pub fn pi_shift_pow(f: &RatFunc, k: i64, mu: &Rational) -> RatFunc {
    let pi = pi_mu(mu);
    let shifted = f.shift(k);
    if k >= 0 {
        (1..=k).fold(shifted, |acc, j| acc.mul_poly(&pi.shift(j)))
    } else {
        let den = (0..-k).fold(UniPoly::one(), |acc, j| &acc * &pi.shift(-j));
        shifted
            .div(&RatFunc::from_poly(den))
            .expect("pi_mu is nonzero")
    }
}

/// Coefficients `a_0..a_n` of an element supported in degrees `0..=n` with
/// both end coefficients nonzero.
fn end_coefficients(a: &SkewElement) -> Result<Vec<RatFunc>> {
    let (Some(lo), Some(hi)) = (a.min_degree(), a.max_degree()) else {
        return Err(Error::Hypothesis("alpha is zero".into()));
    };
    if lo != 0 {
        return Err(Error::Hypothesis(format!(
            "alpha must have a nonzero constant term (lowest degree is {lo})"
        )));
    }
    Ok((0..=hi).map(|d| a.coeff(d)).collect())
}

/// `sum_i (pi_mu(z+1) shift)^(2i-n) a_(n-i) X^i` with rational-function
/// coefficients. Applying it twice returns the input exactly.
pub fn dual_alpha_raw(alpha: &SkewElement, mu: &Rational) -> Result<SkewElement> {
    let a = end_coefficients(alpha)?;
    let n = (a.len() - 1) as i64;
    Ok(SkewElement::from_terms(
        (0..=n)
            .map(|i| (i, pi_shift_pow(&a[(n - i) as usize], 2 * i - n, mu)))
            .collect(),
    ))
}

/// The dual element together with the left unit used to clear
/// denominators: `normalized = normalizer * raw`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualAlpha {
    #[serde(rename = "alphaStar")]
    pub normalized: SkewElement,
    pub raw: SkewElement,
    pub normalizer: UniPoly,
}

/// Dual of `alpha = sum_{i=0}^n a_i(z) X^i` with `a_0 a_n != 0`. The raw
/// coefficients are rational functions; the normalized form multiplies on
/// the left by the monic lcm of their denominators and then makes the top
/// coefficient's leading coefficient 1.
pub fn dual_alpha(alpha: &SkewElement, mu: &Rational) -> Result<DualAlpha> {
    if !alpha.is_in_a_plus() {
        return Err(Error::NotInAPlus(alpha.to_string()));
    }
    let raw = dual_alpha_raw(alpha, mu)?;
    let mut lcm = UniPoly::one();
    for c in raw.terms().values() {
        lcm = lcm.lcm(c.den())?;
    }
    let cleared = raw.left_scale(&RatFunc::from_poly(lcm.clone()));
    let top = cleared
        .terms()
        .values()
        .next_back()
        .expect("nonzero")
        .num()
        .leading_coeff();
    let scale = top.recip()?;
    let normalizer = lcm.scale(&scale);
    Ok(DualAlpha {
        normalized: raw.left_scale(&RatFunc::from_poly(normalizer.clone())),
        raw,
        normalizer,
    })
}

/// Independent check that `alpha_star` is dual to `alpha`.
///
/// The pairing matrix `a_ij = {X^i, X^j}` obeys
/// `pi_mu(z+1) a_(i,j-1)(z+1) = a_(i+1,j)(z)`, so `a_ij = O^i(c_(i-j))` with
/// `O = pi_mu(z+1) shift`. Writing `u_j = O^-j a_j`, the condition
/// `{-, alpha} = 0` is the Toeplitz system `sum_j c_(i-j) u_j = 0`. We solve
/// it for `c`, compute the left kernel of the resulting Toeplitz matrix
/// directly, and require `w_i = O^-i alpha*_i` to agree with that kernel up
/// to a left unit `g(z)` of `B`, which shows up as `g(z-i)` in slot `i`.
pub fn duality_pairing_check(alpha: &SkewElement, alpha_star: &SkewElement, mu: &Rational) -> bool {
    let (Ok(a), Ok(s)) = (end_coefficients(alpha), end_coefficients(alpha_star)) else {
        return false;
    };
    if a.len() != s.len()
        || a.last().is_none_or(RatFunc::is_zero)
        || s.last().is_none_or(RatFunc::is_zero)
    {
        return false;
    }
    let n = a.len() - 1;
    let u: Vec<RatFunc> = (0..=n)
        .map(|j| pi_shift_pow(&a[j], -(j as i64), mu))
        .collect();
    let w: Vec<RatFunc> = (0..=n)
        .map(|i| pi_shift_pow(&s[i], -(i as i64), mu))
        .collect();

    // Unknown c_d for d in -n..=n lives at index d + n.
    let width = 2 * n + 1;
    let system: Vec<Vec<RatFunc>> = (0..=n)
        .map(|i| {
            let mut row = vec![RatFunc::zero(); width];
            for (j, uj) in u.iter().enumerate() {
                row[i + n - j] = uj.clone();
            }
            row
        })
        .collect();
    let basis = nullspace(system, width);
    if basis.is_empty() {
        return false;
    }
    for attempt in 0..3 {
        let c: Vec<RatFunc> = (0..width)
            .map(|d| {
                basis
                    .iter()
                    .enumerate()
                    .fold(RatFunc::zero(), |acc, (k, v)| {
                        let weight = Rational::integer(((k + 1) * (attempt + 1) + k * k) as i64);
                        &acc + &v[d].scale(&weight)
                    })
            })
            .collect();
        if !pairing_matrix_recursion_holds(&c, n, mu) {
            return false;
        }
        // Left kernel: sum_i x_i c_(i-j) = 0 for every j.
        let transposed: Vec<Vec<RatFunc>> = (0..=n)
            .map(|j| (0..=n).map(|i| c[i + n - j].clone()).collect())
            .collect();
        let kernel = nullspace(transposed, n + 1);
        if kernel.len() != 1 {
            continue;
        }
        let k = &kernel[0];
        if k[n].is_zero() || k[0].is_zero() {
            return false;
        }
        let norm = a[0].div(&k[n]).expect("nonzero");
        let k: Vec<RatFunc> = k.iter().map(|x| x * &norm).collect();
        let g = w[0].div(&k[0]).expect("nonzero");
        return (0..=n).all(|i| w[i] == &g.shift(-(i as i64)) * &k[i]);
    }
    false
}

/// Builds `a_ij = O^i(c_(i-j))` on `0..=n` and checks the defining recursion
/// of the pairing matrix.
fn pairing_matrix_recursion_holds(c: &[RatFunc], n: usize, mu: &Rational) -> bool {
    let pi1 = pi_mu(mu).shift(1);
    let a = |i: usize, j: usize| pi_shift_pow(&c[i + n - j], i as i64, mu);
    (0..n).all(|i| (1..=n).all(|j| a(i, j - 1).shift(1).mul_poly(&pi1) == a(i + 1, j)))
}

/// Whether dualizing twice (through the raw form) returns an element
/// generating the same left ideal of `B`, checked by division both ways.
pub fn double_dual_up_to_unit(alpha: &SkewElement, mu: &Rational) -> Result<bool> {
    let first = dual_alpha(alpha, mu)?;
    let twice = dual_alpha_raw(&first.raw, mu)?;
    let (_, r1) = twice.right_divide(alpha)?;
    let (_, r2) = alpha.right_divide(&twice)?;
    Ok(r1.is_zero() && r2.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::{rank1_catalog, smith_type, verify_rep, Rank1Type, SmithType};
    use crate::matrix::PolyMatrix;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn rank1_duals() {
        let mu = Rational::zero();
        let iv = rank1_catalog(&mu, &Rational::one(), Rank1Type::IV).unwrap();
        let d = dual_rep(&iv).unwrap();
        assert_eq!(d.a1().get(0, 0), &p(&[0, 1, 1]));
        assert!(verify_rep(&d).all_ok());
        let ii = rank1_catalog(&Rational::new(1, 3), &Rational::integer(2), Rank1Type::II).unwrap();
        let d = dual_rep(&ii).unwrap();
        assert_eq!(
            smith_type(&d).unwrap(),
            SmithType::Minus { i: 0, j: 1, k: 0 }
        );
    }

    #[test]
    fn double_dual_is_identity() {
        let mu = Rational::zero();
        let c = rep_from_phi(
            &mu,
            &PolyMatrix::from_ints(&[&[&[], &[1]], &[&[1], &[0, 1]]]),
        )
        .unwrap();
        let dd = dual_rep(&dual_rep(&c).unwrap()).unwrap();
        assert_eq!(dd, c);
    }

    #[test]
    fn dual_of_x_minus_one() {
        let mu = Rational::zero();
        let alpha = SkewElement::from_polys(&[p(&[-1]), p(&[1])]);
        let d = dual_alpha(&alpha, &mu).unwrap();
        // pi_0(z) pi_0(z+1) X - 1
        let pp = &p(&[0, -1, 1]) * &p(&[0, 1, 1]);
        assert_eq!(d.normalized, SkewElement::from_polys(&[p(&[-1]), pp]));
        assert_eq!(d.normalizer, p(&[0, 1, -1]));
        assert!(duality_pairing_check(&alpha, &d.normalized, &mu));
        assert!(duality_pairing_check(&alpha, &d.raw, &mu));
        assert!(!duality_pairing_check(&alpha, &alpha, &mu));
        assert!(!duality_pairing_check(&alpha, &SkewElement::zero(), &mu));
        assert_eq!(dual_alpha_raw(&d.raw, &mu).unwrap(), alpha);
        assert!(double_dual_up_to_unit(&alpha, &mu).unwrap());
    }

    #[test]
    fn dual_of_family_member() {
        let mu = Rational::zero();
        let alpha = SkewElement::from_polys(&[p(&[-1]), p(&[0, -1]), p(&[1])]);
        let d = dual_alpha(&alpha, &mu).unwrap();
        assert_eq!(d.normalized.length(), Some(2));
        assert_eq!(d.normalized.min_degree(), Some(0));
        assert!(d.normalized.is_in_a_plus());
        assert!(duality_pairing_check(&alpha, &d.normalized, &mu));
        assert!(!duality_pairing_check(&alpha, &alpha, &mu));
        assert!(double_dual_up_to_unit(&alpha, &mu).unwrap());
    }

    #[test]
    fn rejects_degenerate_ends() {
        let mu = Rational::zero();
        let alpha = SkewElement::from_polys(&[UniPoly::zero(), p(&[1])]);
        assert!(dual_alpha(&alpha, &mu).is_err());
    }
}
