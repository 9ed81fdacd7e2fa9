//! Reading JSON documents and compact command-line values.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use sl2_core::{rep_from_phi, CasimirRep, PolyMatrix, RatFunc, Rational, SkewElement, UniPoly};

use crate::error::CliError;

/// A JSON document given as a file or inline.
#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// JSON file to read.
    #[arg(long, value_name = "PATH", conflicts_with = "json")]
    pub input: Option<PathBuf>,
    /// Inline JSON document.
    #[arg(long, value_name = "JSON")]
    pub json: Option<String>,
}

impl Source {
    pub fn is_given(&self) -> bool {
        self.input.is_some() || self.json.is_some()
    }

    pub fn read<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        let text = match (&self.input, &self.json) {
            (Some(p), _) => std::fs::read_to_string(p)
                .map_err(|e| CliError::schema(format!("cannot read {}: {e}", p.display())))?,
            (None, Some(j)) => j.clone(),
            (None, None) => return Err(CliError::schema("expected --input PATH or --json TEXT")),
        };
        serde_json::from_str(&text).map_err(|e| CliError::schema(format!("invalid input: {e}")))
    }
}

/// A representation as read from JSON. `A_minus1` is optional; when present
/// it is taken as given rather than recomputed.
#[derive(Deserialize, Debug)]
pub struct RepDoc {
    pub mu: Rational,
    #[serde(alias = "rank")]
    pub n: Option<usize>,
    #[serde(rename = "A1")]
    pub a1: PolyMatrix,
    #[serde(rename = "A_minus1", default)]
    pub a_minus1: Option<PolyMatrix>,
}

impl RepDoc {
    pub fn check_shape(&self) -> Result<(), CliError> {
        let n = self.a1.rows();
        if !self.a1.is_square() {
            return Err(CliError::schema(format!(
                "A1 must be square, got {} x {}",
                n,
                self.a1.cols()
            )));
        }
        if self.n.is_some_and(|m| m != n) {
            return Err(CliError::schema(format!(
                "n does not match the {n} x {n} A1"
            )));
        }
        if let Some(b) = &self.a_minus1 {
            if b.rows() != n || b.cols() != n {
                return Err(CliError::schema(format!("A_minus1 must be {n} x {n}")));
            }
        }
        Ok(())
    }

    /// Builds the representation from `A1`, and insists that a supplied
    /// `A_minus1` agrees with the one forced by the Casimir equations.
    pub fn to_rep(&self) -> Result<CasimirRep, CliError> {
        self.check_shape()?;
        let rep = rep_from_phi(&self.mu, &self.a1)?;
        if self.a_minus1.as_ref().is_some_and(|b| b != rep.a_minus1()) {
            return Err(CliError::math(
                "A_minus1 = pi_mu(z) A1(z-1)^-1",
                "the supplied A_minus1 differs from the one determined by A1",
            ));
        }
        Ok(rep)
    }
}

/// Skew element in compact form: `;`-separated terms, each either `k:poly`
/// for a coefficient of `X^k` or a bare `poly` taking the next degree from
/// zero. Polynomials are comma-separated ascending coefficients, so
/// `-1;1` is `X - 1` and `-1:0,-1,1` is `(z^2 - z) X^-1`.
pub fn parse_skew(s: &str) -> Result<SkewElement, CliError> {
    let mut terms = BTreeMap::new();
    let mut next = 0i64;
    for item in s.split(';') {
        let (deg, poly) = match item.split_once(':') {
            Some((d, p)) => (
                d.trim()
                    .parse::<i64>()
                    .map_err(|_| CliError::schema(format!("bad degree in term {item:?}")))?,
                p,
            ),
            None => (next, item),
        };
        let p: UniPoly = poly.parse().map_err(CliError::from)?;
        if terms.insert(deg, RatFunc::from_poly(p)).is_some() {
            return Err(CliError::schema(format!("degree {deg} given twice")));
        }
        next = deg + 1;
    }
    Ok(SkewElement::from_terms(terms))
}
