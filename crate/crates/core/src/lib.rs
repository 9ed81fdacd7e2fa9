//! Exact computations with difference-operator representations of the
//! Casimir quotient of U(sl2).
//!
//! Everything is over Q: scalars are [`Rational`], polynomials in `z` are
//! [`UniPoly`], and a representation of semi-level `mu` on `Q[z]^n` is given
//! by the matrix `A_1(z)` of `rho(L_1) = A_1(z) o shift` ([`CasimirRep`]).

pub mod algebra;
pub mod casimir;
pub mod duality;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod modp;
pub mod module_lab;
pub mod skew;
pub mod smith;

pub use algebra::{alpha_mu, beta_mu, pi_mu, poly_gcd, poly_shift, RatFunc, Rational, UniPoly};
pub use casimir::{
    endomorphism_basis, enumerate_smith_types, find_equivalence, rank1_catalog,
    rank1_invariant_ideals, realize_smith_type, rep_from_phi, rep_transform, smith_type,
    verify_pair, verify_rep, CasimirRep, InvariantIdealSearch, Rank1Type, SmithType,
    VerificationReport,
};
pub use duality::{dual_alpha, dual_rep, duality_pairing_check, DualAlpha, DualPair};
pub use error::{Error, Result};
pub use matrix::PolyMatrix;
pub use module_lab::{
    build_family, is_finitely_generated, orbit_submodule, reduce_mod_alpha, simplicity_falsifier,
    submodule_quotient, FalsifierOptions, FalsifierVerdict, Outcome, QuotientModule, Witness,
};
pub use skew::{APresentation, SkewElement};
pub use smith::{invariant_factors_oracle, is_unimodular, smith_normal_form, SmithForm};
