//! One function per verb, each a thin composition of library calls.

use serde::{Deserialize, Serialize};
use sl2_core::casimir::is_degenerate_mu;
use sl2_core::duality::double_dual_up_to_unit;
use sl2_core::{
    build_family, dual_alpha, dual_rep, duality_pairing_check, endomorphism_basis,
    enumerate_smith_types, invariant_factors_oracle, is_finitely_generated, rank1_catalog,
    rank1_invariant_ideals, realize_smith_type, reduce_mod_alpha, rep_from_phi,
    simplicity_falsifier, smith_normal_form, smith_type, verify_pair, verify_rep, CasimirRep,
    FalsifierOptions, InvariantIdealSearch, PolyMatrix, QuotientModule, Rank1Type, Rational,
    SkewElement, SmithType, UniPoly,
};

use crate::error::CliError;
use crate::input::{parse_skew, RepDoc, Source};
use crate::{FamilyArgs, Report, Verb};

/// Matrices beyond this size skip the exponential gcd-of-minors cross-check.
const ORACLE_MAX_SIZE: usize = 6;

pub fn run(verb: Verb) -> Result<Report, CliError> {
    match verb {
        Verb::Smith { source } => smith(&source),
        Verb::RepBuild {
            mu,
            smith_type,
            rank1,
            gamma,
            source,
        } => rep_build(mu, smith_type, rank1, &gamma, &source),
        Verb::RepVerify { source } => rep_verify(&source),
        Verb::RepClassify { source } => rep_classify(&source),
        Verb::RepDualize { source } => rep_dualize(&source),
        Verb::AlphaDualize { alpha, mu, source } => alpha_dualize(alpha, mu, &source),
        Verb::Rank1 { ty, mu, gamma } => rank1(ty, &mu, &gamma),
        Verb::Strata { n, mu } => strata(n, mu.as_ref()),
        Verb::FamilyBuild { family, mu } => family_build(&family, &mu),
        Verb::FamilyFalsify {
            family,
            mu,
            dual,
            deg_bound,
            word_len,
            samples,
            seed,
            jobs,
            source,
        } => {
            let opts = FalsifierOptions {
                deg_bound,
                word_len,
                samples,
                seed,
                jobs,
            };
            family_falsify(&family, mu, dual, &opts, &source)
        }
        Verb::Reduce {
            alpha,
            mu,
            element,
            source,
        } => reduce(alpha, mu, element, &source),
        Verb::Endo { deg_bound, source } => endo(deg_bound, &source),
    }
}

fn report<T: Serialize>(body: T, mu: Option<&Rational>) -> Result<Report, CliError> {
    Ok(Report {
        body: serde_json::to_value(body).expect("reports serialize"),
        warnings: mu.map(mu_warnings).unwrap_or_default(),
        ok: true,
    })
}

/// Every identity is algebraic, so any rational `mu` is accepted; below
/// `-1/2` the report points at the equivalent normalized parameter.
fn mu_warnings(mu: &Rational) -> Vec<String> {
    if *mu < Rational::new(-1, 2) {
        let other = -mu - Rational::one();
        vec![format!(
            "mu = {mu} is below -1/2; mu = {other} gives the same pi_mu and Casimir scalar"
        )]
    } else {
        Vec::new()
    }
}

/// A representation together with its `A_-1` and Smith type, in a shape
/// that `rep-verify`, `rep-classify` and `rep-dualize` read back unchanged.
#[derive(Serialize)]
struct RepOut<'a> {
    #[serde(flatten)]
    rep: &'a CasimirRep,
    #[serde(rename = "A_minus1")]
    a_minus1: &'a PolyMatrix,
    #[serde(rename = "smithType")]
    smith_type: SmithType,
    degenerate: bool,
}

impl<'a> RepOut<'a> {
    fn new(rep: &'a CasimirRep) -> Result<Self, CliError> {
        Ok(RepOut {
            rep,
            a_minus1: rep.a_minus1(),
            smith_type: smith_type(rep)?,
            degenerate: is_degenerate_mu(rep.mu()),
        })
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SmithDoc {
    Wrapped {
        #[serde(rename = "M", alias = "matrix")]
        m: PolyMatrix,
    },
    Bare(PolyMatrix),
}

fn smith(source: &Source) -> Result<Report, CliError> {
    let m = match source.read::<SmithDoc>()? {
        SmithDoc::Wrapped { m } | SmithDoc::Bare(m) => m,
    };
    let f = smith_normal_form(&m);
    let factors = f.invariant_factors();
    let oracle = (m.rows().min(m.cols()) <= ORACLE_MAX_SIZE)
        .then(|| invariant_factors_oracle(&m) == factors);
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        #[serde(rename = "M")]
        m: &'a PolyMatrix,
        #[serde(flatten)]
        form: &'a sl2_core::SmithForm,
        invariant_factors: Vec<UniPoly>,
        rank: usize,
        oracle_agrees: Option<bool>,
    }
    let ok = oracle != Some(false);
    let mut r = report(
        Out {
            m: &m,
            form: &f,
            invariant_factors: factors,
            rank: f.rank(),
            oracle_agrees: oracle,
        },
        None,
    )?;
    r.ok = ok;
    Ok(r)
}

fn rep_build(
    mu: Option<Rational>,
    ty: Option<SmithType>,
    rank1: Option<Rank1Type>,
    gamma: &Rational,
    source: &Source,
) -> Result<Report, CliError> {
    let rep = match (ty, rank1, source.is_given()) {
        (Some(t), None, false) => realize_smith_type(&t, &need_mu(mu)?)?,
        (None, Some(t), false) => rank1_catalog(&need_mu(mu)?, gamma, t)?,
        (None, None, true) => {
            let mut doc: RepDoc = source.read()?;
            if let Some(m) = mu {
                doc.mu = m;
            }
            doc.to_rep()?
        }
        _ => {
            return Err(CliError::schema(
                "give exactly one of --type, --rank1, or an {mu, A1} document",
            ))
        }
    };
    report(RepOut::new(&rep)?, Some(rep.mu()))
}

fn need_mu(mu: Option<Rational>) -> Result<Rational, CliError> {
    mu.ok_or_else(|| CliError::schema("--mu is required"))
}

fn rep_verify(source: &Source) -> Result<Report, CliError> {
    let doc: RepDoc = source.read()?;
    doc.check_shape()?;
    let report_ = match &doc.a_minus1 {
        Some(b) => verify_pair(&doc.mu, &doc.a1, b),
        None => verify_rep(&rep_from_phi(&doc.mu, &doc.a1)?),
    };
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        ok: bool,
        mu: &'a Rational,
        n: usize,
        #[serde(flatten)]
        checks: &'a sl2_core::VerificationReport,
    }
    let ok = report_.all_ok();
    let mut r = report(
        Out {
            ok,
            mu: &doc.mu,
            n: doc.a1.rows(),
            checks: &report_,
        },
        Some(&doc.mu),
    )?;
    r.ok = ok;
    Ok(r)
}

fn rep_classify(source: &Source) -> Result<Report, CliError> {
    let rep = source.read::<RepDoc>()?.to_rep()?;
    let t = smith_type(&rep)?;
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        mu: &'a Rational,
        n: usize,
        smith_type: SmithType,
        label: String,
        invariant_factors: Vec<UniPoly>,
        degenerate: bool,
        dual_smith_type: SmithType,
    }
    report(
        Out {
            mu: rep.mu(),
            n: rep.rank(),
            smith_type: t,
            label: t.to_string(),
            invariant_factors: smith_normal_form(rep.a1()).invariant_factors(),
            degenerate: is_degenerate_mu(rep.mu()),
            dual_smith_type: t.dual(),
        },
        Some(rep.mu()),
    )
}

fn rep_dualize(source: &Source) -> Result<Report, CliError> {
    let rep = source.read::<RepDoc>()?.to_rep()?;
    let dual = dual_rep(&rep)?;
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        #[serde(flatten)]
        dual: RepOut<'a>,
        primal_smith_type: SmithType,
    }
    report(
        Out {
            dual: RepOut::new(&dual)?,
            primal_smith_type: smith_type(&rep)?,
        },
        Some(rep.mu()),
    )
}

#[derive(Deserialize)]
struct AlphaDoc {
    alpha: SkewElement,
    mu: Rational,
}

fn alpha_doc(
    alpha: Option<String>,
    mu: Option<Rational>,
    source: &Source,
) -> Result<AlphaDoc, CliError> {
    match (alpha, source.is_given()) {
        (Some(a), false) => Ok(AlphaDoc {
            alpha: parse_skew(&a)?,
            mu: need_mu(mu)?,
        }),
        (None, true) => {
            let mut doc: AlphaDoc = source.read()?;
            if let Some(m) = mu {
                doc.mu = m;
            }
            Ok(doc)
        }
        _ => Err(CliError::schema(
            "give exactly one of --alpha or an {alpha, mu} document",
        )),
    }
}

fn alpha_dualize(
    alpha: Option<String>,
    mu: Option<Rational>,
    source: &Source,
) -> Result<Report, CliError> {
    let AlphaDoc { alpha, mu } = alpha_doc(alpha, mu, source)?;
    let d = dual_alpha(&alpha, &mu)?;
    let pairing = duality_pairing_check(&alpha, &d.normalized, &mu);
    let double = double_dual_up_to_unit(&alpha, &mu)?;
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        mu: &'a Rational,
        alpha: &'a SkewElement,
        #[serde(flatten)]
        dual: &'a sl2_core::DualAlpha,
        pairing_check: bool,
        double_dual_up_to_unit: bool,
    }
    let mut r = report(
        Out {
            mu: &mu,
            alpha: &alpha,
            dual: &d,
            pairing_check: pairing,
            double_dual_up_to_unit: double,
        },
        Some(&mu),
    )?;
    r.ok = pairing && double;
    Ok(r)
}

fn rank1(ty: Rank1Type, mu: &Rational, gamma: &Rational) -> Result<Report, CliError> {
    let rep = rank1_catalog(mu, gamma, ty)?;
    let search = rank1_invariant_ideals(&rep)?;
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        #[serde(rename = "type")]
        ty: Rank1Type,
        gamma: &'a Rational,
        #[serde(flatten)]
        rep: RepOut<'a>,
        invariant_ideals: &'a InvariantIdealSearch,
        /// `None` when some factor has no rational root and the search is
        /// therefore incomplete.
        irreducible: Option<bool>,
    }
    let irreducible = if !search.ideals.is_empty() {
        Some(false)
    } else {
        search.undecided.is_empty().then_some(true)
    };
    report(
        Out {
            ty,
            gamma,
            rep: RepOut::new(&rep)?,
            invariant_ideals: &search,
            irreducible,
        },
        Some(mu),
    )
}

fn strata(n: usize, mu: Option<&Rational>) -> Result<Report, CliError> {
    if n == 0 {
        return Err(CliError::schema("--n must be positive"));
    }
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Entry {
        #[serde(flatten)]
        ty: SmithType,
        label: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        invariant_factors: Option<Vec<UniPoly>>,
    }
    #[derive(Serialize)]
    struct Counts {
        minus: usize,
        zero: usize,
        plus: usize,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        n: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        mu: Option<&'a Rational>,
        count: usize,
        counts: Counts,
        types: Vec<Entry>,
    }
    let types = enumerate_smith_types(n);
    let count = |f: fn(&SmithType) -> bool| types.iter().filter(|t| f(t)).count();
    let counts = Counts {
        minus: count(|t| matches!(t, SmithType::Minus { .. })),
        zero: count(|t| matches!(t, SmithType::Zero { .. })),
        plus: count(|t| matches!(t, SmithType::Plus { .. })),
    };
    let entries = types
        .iter()
        .map(|t| Entry {
            ty: *t,
            label: t.to_string(),
            invariant_factors: mu.map(|m| t.invariant_factors(m)),
        })
        .collect();
    report(
        Out {
            n,
            mu,
            count: types.len(),
            counts,
            types: entries,
        },
        mu,
    )
}

fn family(args: &FamilyArgs, mu: &Rational) -> Result<Option<QuotientModule>, CliError> {
    match (args.n, &args.p, &args.a0) {
        (None, None, None) => Ok(None),
        (Some(n), Some(p), Some(a0)) => Ok(Some(build_family(n, p, a0, mu)?)),
        _ => Err(CliError::schema("--n, --p and --a0 go together")),
    }
}

fn family_build(args: &FamilyArgs, mu: &Rational) -> Result<Report, CliError> {
    let q = family(args, mu)?.ok_or_else(|| CliError::schema("--n, --p and --a0 are required"))?;
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        #[serde(flatten)]
        module: &'a QuotientModule,
        #[serde(rename = "A_minus1")]
        a_minus1: &'a PolyMatrix,
        smith_type: SmithType,
        finite_generation: sl2_core::module_lab::FiniteGeneration,
    }
    report(
        Out {
            module: &q,
            a_minus1: q.rep().a_minus1(),
            smith_type: smith_type(q.rep())?,
            finite_generation: is_finitely_generated(q.alpha())?,
        },
        Some(mu),
    )
}

fn family_falsify(
    args: &FamilyArgs,
    mu: Option<Rational>,
    dual: bool,
    opts: &FalsifierOptions,
    source: &Source,
) -> Result<Report, CliError> {
    let (target, rep) = if source.is_given() {
        if args.n.is_some() || args.p.is_some() || args.a0.is_some() {
            return Err(CliError::schema(
                "give either family parameters or a rep document",
            ));
        }
        let mut doc: RepDoc = source.read()?;
        if let Some(m) = mu {
            doc.mu = m;
        }
        ("rep", doc.to_rep()?)
    } else {
        let mu = need_mu(mu)?;
        let q =
            family(args, &mu)?.ok_or_else(|| CliError::schema("--n, --p and --a0 are required"))?;
        ("family", q.rep().clone())
    };
    let rep = if dual { dual_rep(&rep)? } else { rep };
    let verdict = simplicity_falsifier(&rep, opts)?;
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        target: &'a str,
        dual: bool,
        mu: &'a Rational,
        n: usize,
        #[serde(flatten)]
        verdict: &'a sl2_core::FalsifierVerdict,
    }
    report(
        Out {
            target,
            dual,
            mu: rep.mu(),
            n: rep.rank(),
            verdict: &verdict,
        },
        Some(rep.mu()),
    )
}

fn reduce(
    alpha: Option<String>,
    mu: Option<Rational>,
    element: Option<String>,
    source: &Source,
) -> Result<Report, CliError> {
    #[derive(Deserialize)]
    struct Doc {
        alpha: SkewElement,
        mu: Rational,
        element: SkewElement,
    }
    let doc = match (alpha, element, source.is_given()) {
        (Some(a), Some(e), false) => Doc {
            alpha: parse_skew(&a)?,
            mu: need_mu(mu)?,
            element: parse_skew(&e)?,
        },
        (None, None, true) => {
            let mut doc: Doc = source.read()?;
            if let Some(m) = mu {
                doc.mu = m;
            }
            doc
        }
        _ => {
            return Err(CliError::schema(
                "give --alpha and --element, or an {alpha, mu, element} document",
            ))
        }
    };
    let q = QuotientModule::from_alpha(&doc.alpha, &doc.mu)?;
    let coordinates = reduce_mod_alpha(&doc.element, &q)?;
    #[derive(Serialize)]
    struct Out<'a> {
        mu: &'a Rational,
        alpha: &'a SkewElement,
        element: &'a SkewElement,
        coordinates: Vec<UniPoly>,
    }
    report(
        Out {
            mu: &doc.mu,
            alpha: &doc.alpha,
            element: &doc.element,
            coordinates,
        },
        Some(&doc.mu),
    )
}

fn endo(deg_bound: Option<usize>, source: &Source) -> Result<Report, CliError> {
    let rep = source.read::<RepDoc>()?.to_rep()?;
    let d = deg_bound.unwrap_or(rep.a1().max_degree().unwrap_or(0) + 2);
    let basis = endomorphism_basis(&rep, d);
    let scalar_only = basis == [PolyMatrix::identity(rep.rank())];
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        mu: &'a Rational,
        n: usize,
        deg_bound: usize,
        dimension: usize,
        scalar_only: bool,
        basis: Vec<PolyMatrix>,
    }
    report(
        Out {
            mu: rep.mu(),
            n: rep.rank(),
            deg_bound: d,
            dimension: basis.len(),
            scalar_only,
            basis,
        },
        Some(rep.mu()),
    )
}
