//! Exact scalars, polynomials in `z`, rational functions, and the shift
//! automorphism `z -> z + 1`.

mod poly;
mod ratfunc;
mod rational;

pub use poly::{alpha_mu, beta_mu, pi_mu, poly_gcd, poly_shift, UniPoly};
pub use ratfunc::RatFunc;
pub use rational::Rational;

/// True when `mu` lies below the usual normalization `mu >= -1/2`. All
/// identities still hold; callers may want to surface a warning.
pub fn mu_below_normalization(mu: &Rational) -> bool {
    mu < &Rational::new(-1, 2)
}
