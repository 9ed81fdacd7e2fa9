//! Quotient modules `A / A alpha`, normal forms, and probes for proper
//! submodules.

mod falsifier;
mod quotient;

pub use falsifier::{
    orbit_submodule, simplicity_falsifier, submodule_quotient, Bounds, FalsifierOptions,
    FalsifierVerdict, OrbitSubmodule, Outcome, SubQuotient, Witness, DEFAULT_SEED,
};
pub use quotient::{
    build_family, companion_matrix, is_finitely_generated, reduce_mod_alpha, FiniteGeneration,
    QuotientModule,
};
