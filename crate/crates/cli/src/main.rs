//! `sl2`: JSON front end for polynomial Casimir representations of sl(2).

mod commands;
mod error;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sl2_core::module_lab::DEFAULT_SEED;
use sl2_core::{Rank1Type, Rational, SmithType, UniPoly};

use error::CliError;
use input::Source;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(
    name = "sl2",
    version,
    about = "Exact computations with polynomial Casimir representations of sl(2)"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

/// Parameters of the companion family `X^n - p(z) X^(n-1) - a0`.
#[derive(clap::Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated ascending coefficients, e.g. "0,1" for z.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<UniPoly>,
    #[arg(long, allow_hyphen_values = true)]
    a0: Option<Rational>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Smith normal form U S V of a polynomial matrix.
    Smith {
        #[command(flatten)]
        source: Source,
    },
    /// Build a representation from a Smith type, a rank-one type, or a
    /// document {mu, A1}.
    RepBuild {
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<Rational>,
        /// Smith type such as "S+(1,1,0)", "S0(2,0)" or "S-(0,1,1)".
        #[arg(long = "type", conflicts_with = "rank1")]
        smith_type: Option<SmithType>,
        /// Rank-one catalog type I, II, III or IV.
        #[arg(long)]
        rank1: Option<Rank1Type>,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        gamma: Rational,
        #[command(flatten)]
        source: Source,
    },
    /// Check the Casimir identities; exits 1 naming each failed identity.
    RepVerify {
        #[command(flatten)]
        source: Source,
    },
    /// Smith type and invariant factors of a representation.
    RepClassify {
        #[command(flatten)]
        source: Source,
    },
    /// The dual representation.
    RepDualize {
        #[command(flatten)]
        source: Source,
    },
    /// The dual of an element of A+ with nonzero constant ends.
    AlphaDualize {
        /// Compact form, e.g. "-1;1" for X - 1.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<Rational>,
        #[command(flatten)]
        source: Source,
    },
    /// A rank-one catalog representation and its invariant ideals.
    Rank1 {
        #[arg(long = "type")]
        ty: Rank1Type,
        #[arg(long, allow_hyphen_values = true)]
        mu: Rational,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        gamma: Rational,
    },
    /// All Smith types of rank n.
    Strata {
        #[arg(long)]
        n: usize,
        /// When given, lists the invariant factors of each type.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<Rational>,
    },
    /// The companion module A / A alpha for alpha = X^n - p(z) X^(n-1) - a0.
    FamilyBuild {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: Rational,
    },
    /// Search for a proper submodule of a family module or of a given rep.
    FamilyFalsify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<Rational>,
        /// Run on the dual representation instead.
        #[arg(long)]
        dual: bool,
        #[arg(long, default_value_t = 3)]
        deg_bound: usize,
        #[arg(long, default_value_t = 6)]
        word_len: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, env = "SL2_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads; 0 picks automatically. Output does not depend on it.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        source: Source,
    },
    /// Coordinates of an element of A modulo A alpha in the basis 1, X, ..., X^(n-1).
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// Basis of the polynomial endomorphisms up to a degree bound.
    Endo {
        /// Defaults to the maximal entry degree of A1 plus 2.
        #[arg(long)]
        deg_bound: Option<usize>,
        #[command(flatten)]
        source: Source,
    },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Smith { .. } => "smith",
            Verb::RepBuild { .. } => "rep-build",
            Verb::RepVerify { .. } => "rep-verify",
            Verb::RepClassify { .. } => "rep-classify",
            Verb::RepDualize { .. } => "rep-dualize",
            Verb::AlphaDualize { .. } => "alpha-dualize",
            Verb::Rank1 { .. } => "rank1",
            Verb::Strata { .. } => "strata",
            Verb::FamilyBuild { .. } => "family-build",
            Verb::FamilyFalsify { .. } => "family-falsify",
            Verb::Reduce { .. } => "reduce",
            Verb::Endo { .. } => "endo",
        }
    }
}

/// Envelope shared by every report.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: &'static str,
    #[serde(skip_serializing_if = "str::is_empty")]
    command: &'a str,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    warnings: &'a [String],
    #[serde(flatten)]
    body: T,
}

/// What a command hands back to be printed.
pub struct Report {
    pub body: serde_json::Value,
    pub warnings: Vec<String>,
    /// False when a verify-style check failed; the process then exits 1.
    pub ok: bool,
}

fn print<T: Serialize>(command: &str, warnings: &[String], body: T) {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        warnings,
        body,
    };
    let text = serde_json::to_string_pretty(&env).expect("reports serialize");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = CliError::schema(e.render().to_string().trim().to_string());
            print("", &[], ErrorEnvelope { error: err.body() });
            return ExitCode::from(err.exit_code());
        }
    };
    let name = cli.verb.name();
    match commands::run(cli.verb) {
        Ok(report) => {
            print(name, &report.warnings, &report.body);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            print(name, &[], ErrorEnvelope { error: err.body() });
            ExitCode::from(err.exit_code())
        }
    }
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    error: error::ErrorBody<'a>,
}
