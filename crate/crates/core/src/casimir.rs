//! Polynomial Casimir representations `rho(L_1) = A_1(z) o shift`,
//! `rho(L_-1) = A_-1(z) o shift^-1` on free Q[z]-modules.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{alpha_mu, beta_mu, pi_mu, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::matrix::PolyMatrix;
use crate::smith::{diagonal_complement, smith_normal_form};

/// A representation of semi-level `mu` given by the matrix of `rho(L_1)`.
/// `A_-1(z) = pi_mu(z) A_1(z-1)^-1` is derived on construction.
#[derive(Clone, PartialEq, Eq)]
pub struct CasimirRep {
    mu: Rational,
    a1: PolyMatrix,
    a_minus1: PolyMatrix,
}

impl Serialize for CasimirRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            mu: &'a Rational,
            n: usize,
            #[serde(rename = "A1")]
            a1: &'a PolyMatrix,
        }
        Out {
            mu: &self.mu,
            n: self.rank(),
            a1: &self.a1,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CasimirRep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct In {
            mu: Rational,
            n: Option<usize>,
            #[serde(rename = "A1")]
            a1: PolyMatrix,
        }
        let raw = In::deserialize(deserializer)?;
        if raw.n.is_some_and(|n| n != raw.a1.rows()) {
            return Err(serde::de::Error::custom("n does not match the size of A1"));
        }
        rep_from_phi(&raw.mu, &raw.a1).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for CasimirRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CasimirRep(mu={}, A1={})", self.mu, self.a1)
    }
}

impl CasimirRep {
    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn rank(&self) -> usize {
        self.a1.rows()
    }

    pub fn a1(&self) -> &PolyMatrix {
        &self.a1
    }

    pub fn a_minus1(&self) -> &PolyMatrix {
        &self.a_minus1
    }

    /// `rho(L_1) v = A_1(z) v(z+1)`.
    pub fn apply_l1(&self, v: &[UniPoly]) -> Vec<UniPoly> {
        let shifted: Vec<UniPoly> = v.iter().map(|p| p.shift(1)).collect();
        self.a1.apply(&shifted)
    }

    /// `rho(L_-1) v = A_-1(z) v(z-1)`.
    pub fn apply_l_minus1(&self, v: &[UniPoly]) -> Vec<UniPoly> {
        let shifted: Vec<UniPoly> = v.iter().map(|p| p.shift(-1)).collect();
        self.a_minus1.apply(&shifted)
    }
}

/// Builds the representation whose `rho(L_1)` has matrix `a1`, provided the
/// last invariant factor of `a1` divides `pi_mu(z+1)`.
pub fn rep_from_phi(mu: &Rational, a1: &PolyMatrix) -> Result<CasimirRep> {
    if !a1.is_square() || a1.rows() == 0 {
        return Err(Error::Dimension(format!(
            "A1 must be a nonempty square matrix, got {}x{}",
            a1.rows(),
            a1.cols()
        )));
    }
    let target = pi_mu(mu).shift(1);
    let last = smith_normal_form(a1)
        .invariant_factors()
        .pop()
        .expect("nonempty");
    if !last.divides(&target) || last.is_zero() {
        return Err(Error::NotCasimir {
            mu: mu.to_string(),
            factor: last.to_string(),
            target: target.to_string(),
        });
    }
    let a_minus1 = a1
        .shift(-1)
        .scaled_inverse(&pi_mu(mu))?
        .ok_or_else(|| Error::Internal("pi_mu(z) A1(z-1)^-1 is not polynomial".into()))?;
    Ok(CasimirRep {
        mu: mu.clone(),
        a1: a1.clone(),
        a_minus1,
    })
}

/// One of the `(n+1)^2` Smith types of a rank-`n` representation:
/// `diag(1^i, alpha_mu(z+1)^j, pi_mu(z+1)^k)` for `Plus`,
/// `diag(1^l, pi_mu(z+1)^m)` for `Zero`, and `beta_mu(z+1)` in place of
/// `alpha_mu(z+1)` for `Minus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SmithType {
    Minus { i: usize, j: usize, k: usize },
    Zero { l: usize, m: usize },
    Plus { i: usize, j: usize, k: usize },
}

#[derive(Serialize, Deserialize)]
struct SmithTypeJson {
    variant: String,
    indices: Vec<usize>,
}

impl Serialize for SmithType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (variant, indices) = match *self {
            SmithType::Plus { i, j, k } => ("plus", vec![i, j, k]),
            SmithType::Zero { l, m } => ("zero", vec![l, m]),
            SmithType::Minus { i, j, k } => ("minus", vec![i, j, k]),
        };
        SmithTypeJson {
            variant: variant.into(),
            indices,
        }
        .serialize(serializer)
    }
}

impl SmithType {
    fn checked(variant: &str, indices: &[usize]) -> Result<Self> {
        let t = match (variant, indices) {
            ("plus", &[i, j, k]) => SmithType::Plus { i, j, k },
            ("zero", &[l, m]) => SmithType::Zero { l, m },
            ("minus", &[i, j, k]) => SmithType::Minus { i, j, k },
            _ => {
                return Err(Error::Parse(format!(
                    "bad smith type {variant} {indices:?}"
                )))
            }
        };
        if matches!(
            t,
            SmithType::Plus { j: 0, .. } | SmithType::Minus { j: 0, .. }
        ) {
            return Err(Error::Parse("plus/minus types need j > 0".into()));
        }
        Ok(t)
    }
}

impl<'de> Deserialize<'de> for SmithType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SmithTypeJson::deserialize(deserializer)?;
        SmithType::checked(&raw.variant, &raw.indices).map_err(serde::de::Error::custom)
    }
}

/// Parses the display form, e.g. `S+(1,2,0)` or `S0(2,1)`.
impl std::str::FromStr for SmithType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected S+(i,j,k), S0(l,m) or S-(i,j,k), got {s}"));
        let s = s.trim();
        let variant = match s.get(..2) {
            Some("S+") => "plus",
            Some("S0") => "zero",
            Some("S-") => "minus",
            _ => return Err(bad()),
        };
        let inner = s[2..]
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let indices = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        SmithType::checked(variant, &indices)
    }
}

impl fmt::Display for SmithType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmithType::Plus { i, j, k } => write!(f, "S+({i},{j},{k})"),
            SmithType::Zero { l, m } => write!(f, "S0({l},{m})"),
            SmithType::Minus { i, j, k } => write!(f, "S-({i},{j},{k})"),
        }
    }
}

impl SmithType {
    pub fn rank(&self) -> usize {
        match *self {
            SmithType::Plus { i, j, k } | SmithType::Minus { i, j, k } => i + j + k,
            SmithType::Zero { l, m } => l + m,
        }
    }

    /// The invariant factors this type prescribes at semi-level `mu`.
    pub fn invariant_factors(&self, mu: &Rational) -> Vec<UniPoly> {
        let pi1 = pi_mu(mu).shift(1);
        let rep = |p: UniPoly, c: usize| std::iter::repeat_n(p, c);
        match *self {
            SmithType::Plus { i, j, k } => rep(UniPoly::one(), i)
                .chain(rep(alpha_mu(mu).shift(1), j))
                .chain(rep(pi1, k))
                .collect(),
            SmithType::Minus { i, j, k } => rep(UniPoly::one(), i)
                .chain(rep(beta_mu(mu).shift(1), j))
                .chain(rep(pi1, k))
                .collect(),
            SmithType::Zero { l, m } => rep(UniPoly::one(), l).chain(rep(pi1, m)).collect(),
        }
    }

    /// The type of the dual representation.
    pub fn dual(&self) -> SmithType {
        match *self {
            SmithType::Plus { i, j, k } => SmithType::Minus { i: k, j, k: i },
            SmithType::Minus { i, j, k } => SmithType::Plus { i: k, j, k: i },
            SmithType::Zero { l, m } => SmithType::Zero { l: m, m: l },
        }
    }
}

/// At `mu = -1/2` the factors `alpha_mu(z+1)` and `beta_mu(z+1)` coincide and
/// `Plus`/`Minus` types cannot be told apart.
pub fn is_degenerate_mu(mu: &Rational) -> bool {
    alpha_mu(mu) == beta_mu(mu)
}

/// Matches a list of invariant factors against the admissible patterns.
/// At the degenerate level the `Plus` reading is returned.
pub fn classify_invariant_factors(factors: &[UniPoly], mu: &Rational) -> Result<SmithType> {
    let one = UniPoly::one();
    let a1 = alpha_mu(mu).shift(1);
    let b1 = beta_mu(mu).shift(1);
    let pi1 = pi_mu(mu).shift(1);
    let (mut ones, mut alphas, mut betas, mut pis) = (0, 0, 0, 0);
    for s in factors {
        if *s == one {
            ones += 1;
        } else if *s == a1 {
            alphas += 1;
        } else if *s == b1 {
            betas += 1;
        } else if *s == pi1 {
            pis += 1;
        } else {
            return Err(Error::Internal(format!(
                "invariant factor {s} fits no Smith type at mu = {mu}"
            )));
        }
    }
    let t = match (alphas, betas) {
        (0, 0) => SmithType::Zero { l: ones, m: pis },
        (j, 0) => SmithType::Plus { i: ones, j, k: pis },
        (0, j) => SmithType::Minus { i: ones, j, k: pis },
        _ => {
            return Err(Error::Internal(
                "both alpha and beta factors present".into(),
            ))
        }
    };
    if t.invariant_factors(mu) != factors {
        return Err(Error::Internal(format!(
            "invariant factors out of order for {t}"
        )));
    }
    Ok(t)
}

pub fn smith_type(rep: &CasimirRep) -> Result<SmithType> {
    classify_invariant_factors(&smith_normal_form(&rep.a1).invariant_factors(), &rep.mu)
}

/// All Smith types of rank `n`: the `Minus` family, then `Zero`, then
/// `Plus`. The list does not depend on `mu`.
pub fn enumerate_smith_types(n: usize) -> Vec<SmithType> {
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for i in 0..=n {
        for j in 1..=n - i {
            let k = n - i - j;
            minus.push(SmithType::Minus { i, j, k });
            plus.push(SmithType::Plus { i, j, k });
        }
    }
    let zero = (0..=n).map(|l| SmithType::Zero { l, m: n - l });
    minus.into_iter().chain(zero).chain(plus).collect()
}

/// The diagonal representation `rho(L_1) = S(z) o shift` of a given type.
pub fn realize_smith_type(t: &SmithType, mu: &Rational) -> Result<CasimirRep> {
    let n = t.rank();
    rep_from_phi(mu, &PolyMatrix::diagonal(n, n, &t.invariant_factors(mu)))
}

/// Results of checking the defining identities of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    /// `A_-1(z) A_1(z-1) = pi_mu(z) I`
    pub casimir_left: bool,
    /// `A_1(z) A_-1(z+1) = pi_mu(z+1) I`
    pub casimir_right: bool,
    /// `A_-1(z) A_1(z-1) - A_1(z) A_-1(z+1) = -2z I`
    pub commutator: bool,
    /// The constant by which the Casimir element acts, if it is one.
    pub casimir_scalar: Option<Rational>,
    pub expected_scalar: Rational,
    /// The level `2 mu`.
    pub level: Rational,
    pub smith_type: Option<SmithType>,
    pub degenerate: bool,
    /// Diagonal `T` with `S(z) T(z+1) = pi_mu(z+1) I`.
    pub t_matrix: Option<PolyMatrix>,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_rep(rep: &CasimirRep) -> VerificationReport {
    verify_pair(&rep.mu, &rep.a1, &rep.a_minus1)
}

/// Checks an explicitly given pair `(A_1, A_-1)`, e.g. one read from a file
/// where `A_-1` may have been tampered with.
pub fn verify_pair(mu: &Rational, a1: &PolyMatrix, a_minus1: &PolyMatrix) -> VerificationReport {
    let n = a1.rows();
    let pi = pi_mu(mu);
    let id = PolyMatrix::identity(n);
    let shapes_ok = a1.is_square() && a_minus1.rows() == n && a_minus1.cols() == n;
    let mut failures = Vec::new();
    let (left, right, comm, scalar) = if shapes_ok {
        let lhs = a_minus1 * &a1.shift(-1);
        let rhs = a1 * &a_minus1.shift(1);
        let left = lhs == id.scale(&pi);
        let right = rhs == id.scale(&pi.shift(1));
        let comm = &lhs - &rhs == id.scale(&UniPoly::from_ints(&[0, -2]));
        // 4 ((z - 1/2)^2 I - A_-1(z) A_1(z-1))
        let half = UniPoly::linear(Rational::new(-1, 2));
        let c = (&id.scale(&(&half * &half)) - &lhs).scale_rational(&Rational::integer(4));
        let scalar = (c.is_diagonal()
            && c.diag()
                .iter()
                .all(|d| d.is_constant() && *d == c.diag()[0]))
        .then(|| c.get(0, 0).coeff(0));
        (left, right, comm, scalar)
    } else {
        failures.push("shape".to_string());
        (false, false, false, None)
    };
    let expected = {
        let t = Rational::integer(2) * mu + Rational::one();
        &t * &t
    };
    if !left {
        failures.push("casimirLeft".into());
    }
    if !right {
        failures.push("casimirRight".into());
    }
    if !comm {
        failures.push("commutator".into());
    }
    if scalar.as_ref() != Some(&expected) {
        failures.push("casimirScalar".into());
    }
    let (smith_type, t_matrix) = if a1.is_square() && n > 0 {
        let s = smith_normal_form(a1).s;
        let ty = classify_invariant_factors(&s.diag(), mu).ok();
        (ty, diagonal_complement(&s, mu).ok())
    } else {
        (None, None)
    };
    if smith_type.is_none() {
        failures.push("smithType".into());
    }
    VerificationReport {
        casimir_left: left,
        casimir_right: right,
        commutator: comm,
        casimir_scalar: scalar,
        expected_scalar: expected,
        level: Rational::integer(2) * mu,
        smith_type,
        degenerate: is_degenerate_mu(mu),
        t_matrix,
        failures,
    }
}

/// The four families of rank-one representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rank1Type {
    I,
    II,
    III,
    IV,
}

impl Rank1Type {
    pub const ALL: [Rank1Type; 4] = [Rank1Type::I, Rank1Type::II, Rank1Type::III, Rank1Type::IV];
}

impl std::str::FromStr for Rank1Type {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(Rank1Type::I),
            "II" => Ok(Rank1Type::II),
            "III" => Ok(Rank1Type::III),
            "IV" => Ok(Rank1Type::IV),
            _ => Err(Error::Parse(format!("unknown rank-1 type {s}"))),
        }
    }
}

/// `A_1 = gamma * pi_mu(z+1)`, `gamma * alpha_mu(z+1)`, `gamma * beta_mu(z+1)`
/// or `gamma` for types I to IV.
pub fn rank1_catalog(mu: &Rational, gamma: &Rational, ty: Rank1Type) -> Result<CasimirRep> {
    if gamma.is_zero() {
        return Err(Error::Hypothesis("gamma must be nonzero".into()));
    }
    let base = match ty {
        Rank1Type::I => pi_mu(mu).shift(1),
        Rank1Type::II => alpha_mu(mu).shift(1),
        Rank1Type::III => beta_mu(mu).shift(1),
        Rank1Type::IV => UniPoly::one(),
    };
    rep_from_phi(mu, &PolyMatrix::diagonal(1, 1, &[base.scale(gamma)]))
}

/// Q-basis of the solutions `X` (`rows x cols`, entry degree at most
/// `deg_bound`) of a Q-linear equation `f(X) = 0` with polynomial values.
pub fn solve_linear_matrix_equation(
    rows: usize,
    cols: usize,
    deg_bound: usize,
    f: impl Fn(&PolyMatrix) -> PolyMatrix,
) -> Vec<PolyMatrix> {
    let unknowns: Vec<(usize, usize, usize)> = (0..rows)
        .flat_map(|i| (0..cols).flat_map(move |j| (0..=deg_bound).map(move |d| (i, j, d))))
        .collect();
    let mut eq_index: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut images = Vec::with_capacity(unknowns.len());
    for &(i, j, d) in &unknowns {
        let mut x = PolyMatrix::zero(rows, cols);
        x.set(i, j, UniPoly::monomial(Rational::one(), d));
        let img = f(&x);
        let mut col = Vec::new();
        for (r, row) in img.entries().iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                for (k, coef) in e.coeffs().iter().enumerate() {
                    if !coef.is_zero() {
                        let next = eq_index.len();
                        let idx = *eq_index.entry((r, c, k)).or_insert(next);
                        col.push((idx, coef.clone()));
                    }
                }
            }
        }
        images.push(col);
    }
    let mut system = vec![vec![Rational::zero(); unknowns.len()]; eq_index.len()];
    for (u, col) in images.into_iter().enumerate() {
        for (idx, coef) in col {
            system[idx][u] = coef;
        }
    }
    nullspace(system, unknowns.len())
        .into_iter()
        .map(|v| {
            let mut x = PolyMatrix::zero(rows, cols);
            for (val, &(i, j, d)) in v.iter().zip(&unknowns) {
                if !val.is_zero() {
                    let e = x.get(i, j) + &UniPoly::monomial(val.clone(), d);
                    x.set(i, j, e);
                }
            }
            x
        })
        .collect()
}

/// Basis of the `phi` with entry degree at most `deg_bound` commuting with the
/// action: `phi(z) A_1(z) = A_1(z) phi(z+1)`.
pub fn endomorphism_basis(rep: &CasimirRep, deg_bound: usize) -> Vec<PolyMatrix> {
    let n = rep.rank();
    solve_linear_matrix_equation(n, n, deg_bound, |phi| {
        &(phi * &rep.a1) - &(&rep.a1 * &phi.shift(1))
    })
}

/// Intertwiners `g` from `from` to `to`: `g(z) A_1(z) = A'_1(z) g(z+1)`.
pub fn intertwiner_basis(from: &CasimirRep, to: &CasimirRep, deg_bound: usize) -> Vec<PolyMatrix> {
    solve_linear_matrix_equation(to.rank(), from.rank(), deg_bound, |g| {
        &(g * &from.a1) - &(&to.a1 * &g.shift(1))
    })
}

/// Searches the intertwiners of bounded degree for a unimodular one, which
/// then exhibits an isomorphism `from -> to`. Tries basis elements, their
/// sum, and a fixed pseudorandom sequence of small integer combinations.
pub fn find_equivalence(
    from: &CasimirRep,
    to: &CasimirRep,
    deg_bound: usize,
) -> Option<PolyMatrix> {
    if from.rank() != to.rank() || from.mu != to.mu {
        return None;
    }
    let basis = intertwiner_basis(from, to, deg_bound);
    if basis.is_empty() {
        return None;
    }
    if let Some(g) = basis.iter().find(|g| g.is_unimodular()) {
        return Some(g.clone());
    }
    let combo = |coeffs: &[i64]| {
        basis
            .iter()
            .zip(coeffs)
            .fold(PolyMatrix::zero(to.rank(), from.rank()), |acc, (b, &c)| {
                &acc + &b.scale_rational(&Rational::integer(c))
            })
    };
    let sum = combo(&vec![1; basis.len()]);
    if sum.is_unimodular() {
        return Some(sum);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    (0..256).find_map(|_| {
        let c: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-3..=3)).collect();
        let g = combo(&c);
        g.is_unimodular().then_some(g)
    })
}

/// The action of `(g, h)`: `rho'(L_1) = g o rho(L_1) o h^-1`, i.e.
/// `A'_1(z) = g(z) A_1(z) h(z+1)^-1`.
pub fn rep_transform(rep: &CasimirRep, g: &PolyMatrix, h: &PolyMatrix) -> Result<CasimirRep> {
    for (name, m) in [("g", g), ("h", h)] {
        if m.rows() != rep.rank() || !m.is_unimodular() {
            return Err(Error::NotUnimodular(format!("{name} = {m}")));
        }
    }
    let h_inv = h.shift(1).inverse_unimodular()?;
    rep_from_phi(&rep.mu, &(&(g * &rep.a1) * &h_inv))
}

/// Outcome of the exact search for invariant ideals of a rank-one
/// representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantIdealSearch {
    /// Every monic nonconstant `f` with `(f)` invariant.
    pub ideals: Vec<UniPoly>,
    /// Factors of `A_1` or `A_-1` without rational roots. When nonempty the
    /// search is incomplete.
    pub undecided: Vec<UniPoly>,
}

/// Rational roots among `candidates` with multiplicities, and the cofactor
/// left over.
fn split_over(p: &UniPoly, candidates: &[Rational]) -> (Vec<(Rational, usize)>, UniPoly) {
    let mut rest = p.clone();
    let mut out = Vec::new();
    for r in candidates {
        let m = rest.root_multiplicity(r);
        if m > 0 {
            let lin = UniPoly::linear(-r).pow(m as u32);
            rest = rest.exact_div(&lin).expect("root divides");
            out.push((r.clone(), m));
        }
    }
    (out, rest)
}

/// All nonconstant monic `f` such that the ideal `(f)` of `Q[z]` is stable
/// under the action, i.e. `f | A_1(z) f(z+1)` and `f | A_-1(z) f(z-1)`.
///
/// If `r` is a root of `f` then either `A_1(r) = 0` or `r+1` is a root of
/// `f`, and either `A_-1(r) = 0` or `r-1` is a root. Hence every root chain
/// of `f` runs from a root of `A_-1` up to a root of `A_1` inside one coset
/// of `Z`, and multiplicities obey `m_r <= m_r(A_1) + m_{r+1}` and
/// `m_r <= m_r(A_-1) + m_{r-1}`. The search enumerates exactly these.
pub fn rank1_invariant_ideals(rep: &CasimirRep) -> Result<InvariantIdealSearch> {
    if rep.rank() != 1 {
        return Err(Error::Dimension(format!(
            "invariant ideal search needs rank 1, got {}",
            rep.rank()
        )));
    }
    let a = rep.a1.get(0, 0);
    let b = rep.a_minus1.get(0, 0);
    let mu = &rep.mu;
    // a(z) b(z+1) = pi_mu(z+1), so all roots lie in this set.
    let mut candidates = vec![-mu - Rational::one(), mu.clone(), -mu, mu + Rational::one()];
    candidates.sort();
    candidates.dedup();
    let (ra, rest_a) = split_over(a, &candidates);
    let (rb, rest_b) = split_over(b, &candidates);
    let undecided: Vec<UniPoly> = [rest_a, rest_b]
        .into_iter()
        .filter(|p| !p.is_constant())
        .collect();

    // Group root positions into cosets of Z.
    let mut cosets: Vec<Rational> = Vec::new();
    for (r, _) in ra.iter().chain(&rb) {
        if !cosets.iter().any(|c| (c - r).is_integer()) {
            cosets.push(r.clone());
        }
    }
    let mult = |roots: &[(Rational, usize)], x: &Rational| {
        roots.iter().find(|(r, _)| r == x).map_or(0, |(_, m)| *m)
    };

    // Per coset: the admissible multiplicity profiles as polynomials.
    let mut per_coset: Vec<Vec<UniPoly>> = Vec::new();
    for c in &cosets {
        let in_coset = |rs: &[(Rational, usize)]| -> Vec<Rational> {
            rs.iter()
                .filter(|(r, _)| (r - c).is_integer())
                .map(|(r, _)| r.clone())
                .collect()
        };
        let top = in_coset(&ra).into_iter().max();
        let bottom = in_coset(&rb).into_iter().min();
        let (Some(top), Some(bottom)) = (top, bottom) else {
            per_coset.push(vec![UniPoly::one()]);
            continue;
        };
        if top < bottom {
            per_coset.push(vec![UniPoly::one()]);
            continue;
        }
        let len = (&top - &bottom).numer().try_into().unwrap_or(0usize) + 1;
        let pos: Vec<Rational> = (0..len)
            .map(|k| &bottom + &Rational::integer(k as i64))
            .collect();
        let ma: Vec<usize> = pos.iter().map(|x| mult(&ra, x)).collect();
        let mb: Vec<usize> = pos.iter().map(|x| mult(&rb, x)).collect();
        let mut profiles = Vec::new();
        let mut m = vec![0usize; len];
        enumerate_profiles(len, &ma, &mb, &mut m, &mut profiles);
        per_coset.push(
            profiles
                .into_iter()
                .map(|prof| {
                    prof.iter().zip(&pos).fold(UniPoly::one(), |acc, (&k, x)| {
                        &acc * &UniPoly::linear(-x).pow(k as u32)
                    })
                })
                .collect(),
        );
    }

    let mut products = vec![UniPoly::one()];
    for options in &per_coset {
        products = products
            .iter()
            .flat_map(|p| options.iter().map(move |q| p * q))
            .collect();
    }
    let mut ideals: Vec<UniPoly> = products
        .into_iter()
        .filter(|f| !f.is_constant())
        .filter(|f| f.divides(&(a * &f.shift(1))) && f.divides(&(b * &f.shift(-1))))
        .collect();
    ideals.sort_by_key(|f| (f.degree(), f.to_string()));
    ideals.dedup();
    Ok(InvariantIdealSearch { ideals, undecided })
}

/// Fills `m[idx]` for `idx < k` going downward from the top position.
fn enumerate_profiles(
    k: usize,
    ma: &[usize],
    mb: &[usize],
    m: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let len = m.len();
    let above = |m: &Vec<usize>, idx: usize| if idx + 1 < len { m[idx + 1] } else { 0 };
    if k == 0 {
        // Lowest position: nothing below it.
        if m[0] <= mb[0] {
            out.push(m.clone());
        }
        return;
    }
    let idx = k - 1;
    let upper = ma[idx] + above(m, idx);
    // The position above needs m[idx+1] <= mb[idx+1] + m[idx].
    let lower = if idx + 1 < len {
        m[idx + 1].saturating_sub(mb[idx + 1])
    } else {
        0
    };
    for v in lower..=upper {
        m[idx] = v;
        enumerate_profiles(idx, ma, mb, m, out);
    }
    m[idx] = 0;
}

#[cfg(test)]
mod tests {
    #[test]
    fn smith_types_parse_their_display_form() {
        for n in 1..=3 {
            for t in enumerate_smith_types(n) {
                assert_eq!(t.to_string().parse::<SmithType>().unwrap(), t);
            }
        }
        assert!("S+(1,0,1)".parse::<SmithType>().is_err());
        assert!("S0(1)".parse::<SmithType>().is_err());
        assert!("T(1,1)".parse::<SmithType>().is_err());
    }

    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn companion() -> PolyMatrix {
        PolyMatrix::from_ints(&[&[&[], &[1]], &[&[1], &[0, 1]]])
    }

    #[test]
    fn rep_from_phi_examples() {
        let mu = Rational::zero();
        let r = rep_from_phi(&mu, &PolyMatrix::identity(1)).unwrap();
        assert_eq!(r.a_minus1().get(0, 0), &p(&[0, -1, 1]));

        let r = rep_from_phi(&mu, &companion()).unwrap();
        let expected =
            PolyMatrix::from_ints(&[&[&[0, -1, 2, -1], &[0, -1, 1]], &[&[0, -1, 1], &[]]]);
        assert_eq!(r.a_minus1(), &expected);
        assert!(verify_rep(&r).all_ok());

        let bad = PolyMatrix::diagonal(1, 1, &[p(&[0, 0, 1])]);
        assert!(matches!(
            rep_from_phi(&mu, &bad),
            Err(Error::NotCasimir { .. })
        ));
    }

    #[test]
    fn verification_reports() {
        let mu = Rational::zero();
        let r = rank1_catalog(&mu, &Rational::one(), Rank1Type::I).unwrap();
        assert_eq!(r.a1().get(0, 0), &p(&[0, 1, 1]));
        let rep = verify_rep(&r);
        assert!(rep.all_ok());
        assert_eq!(rep.casimir_scalar, Some(Rational::one()));

        let c = rep_from_phi(&mu, &companion()).unwrap();
        let rep = verify_rep(&c);
        assert!(rep.all_ok());
        assert_eq!(rep.smith_type, Some(SmithType::Zero { l: 2, m: 0 }));

        let mut bad = c.a_minus1().clone();
        bad.set(0, 1, bad.get(0, 1) + &UniPoly::one());
        let rep = verify_pair(&mu, c.a1(), &bad);
        assert!(!rep.casimir_left);
        assert!(!rep.all_ok());
    }

    #[test]
    fn rank1_types() {
        let mu = Rational::zero();
        let cases = [
            (Rank1Type::I, SmithType::Zero { l: 0, m: 1 }),
            (Rank1Type::II, SmithType::Plus { i: 0, j: 1, k: 0 }),
            (Rank1Type::III, SmithType::Minus { i: 0, j: 1, k: 0 }),
            (Rank1Type::IV, SmithType::Zero { l: 1, m: 0 }),
        ];
        for (ty, st) in cases {
            let r = rank1_catalog(&mu, &q(3, 2), ty).unwrap();
            assert!(verify_rep(&r).all_ok());
            assert_eq!(smith_type(&r).unwrap(), st);
        }
        let r = rank1_catalog(&mu, &Rational::integer(2), Rank1Type::II).unwrap();
        assert_eq!(r.a1().get(0, 0), &p(&[2, 2]));
        assert_eq!(
            r.a_minus1().get(0, 0),
            &UniPoly::new(vec![q(-1, 2), q(1, 2)])
        );
        let r = rank1_catalog(&q(1, 2), &Rational::one(), Rank1Type::III).unwrap();
        assert_eq!(r.a1().get(0, 0), &UniPoly::linear(q(-1, 2)));
        assert_eq!(r.a_minus1().get(0, 0), &UniPoly::linear(q(1, 2)));
        assert!(rank1_catalog(&mu, &Rational::zero(), Rank1Type::I).is_err());
    }

    #[test]
    fn stratification_counts() {
        for n in 1..=6 {
            let all = enumerate_smith_types(n);
            assert_eq!(all.len(), (n + 1) * (n + 1));
            let zeros = all
                .iter()
                .filter(|t| matches!(t, SmithType::Zero { .. }))
                .count();
            assert_eq!(zeros, n + 1);
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
        for t in enumerate_smith_types(3) {
            let r = realize_smith_type(&t, &q(2, 3)).unwrap();
            assert!(verify_rep(&r).all_ok());
            assert_eq!(smith_type(&r).unwrap(), t);
        }
    }

    #[test]
    fn degenerate_level_reads_plus() {
        let mu = q(-1, 2);
        assert!(is_degenerate_mu(&mu));
        let r = rank1_catalog(&mu, &Rational::one(), Rank1Type::III).unwrap();
        assert_eq!(
            smith_type(&r).unwrap(),
            SmithType::Plus { i: 0, j: 1, k: 0 }
        );
        assert!(verify_rep(&r).degenerate);
    }

    #[test]
    fn endomorphisms() {
        let mu = Rational::zero();
        for ty in Rank1Type::ALL {
            let r = rank1_catalog(&mu, &Rational::one(), ty).unwrap();
            assert_eq!(endomorphism_basis(&r, 5), vec![PolyMatrix::identity(1)]);
        }
        let c = rep_from_phi(&mu, &companion()).unwrap();
        assert_eq!(endomorphism_basis(&c, 3), vec![PolyMatrix::identity(2)]);
        let sum = rep_from_phi(&mu, &PolyMatrix::identity(2)).unwrap();
        assert_eq!(endomorphism_basis(&sum, 0).len(), 4);
    }

    #[test]
    fn invariant_ideals() {
        let mu = Rational::zero();
        for ty in [Rank1Type::I, Rank1Type::IV, Rank1Type::II] {
            let r = rank1_catalog(&mu, &Rational::one(), ty).unwrap();
            let s = rank1_invariant_ideals(&r).unwrap();
            assert!(s.ideals.is_empty(), "{ty:?}: {:?}", s.ideals);
            assert!(s.undecided.is_empty());
        }
        // Type III at mu = 0 has A_1 = A_-1 = z, so (z) is stable.
        let r = rank1_catalog(&mu, &Rational::one(), Rank1Type::III).unwrap();
        assert_eq!(rank1_invariant_ideals(&r).unwrap().ideals, vec![p(&[0, 1])]);
        // Below the normalization the root chains of type II close up.
        let r = rank1_catalog(&q(-3, 2), &Rational::one(), Rank1Type::II).unwrap();
        let s = rank1_invariant_ideals(&r).unwrap();
        assert_eq!(
            s.ideals,
            vec![UniPoly::new(vec![q(-1, 4), q(0, 1), q(1, 1)])]
        );
    }

    #[test]
    fn transforms() {
        let mu = Rational::zero();
        let c = rep_from_phi(&mu, &companion()).unwrap();
        let id = PolyMatrix::identity(2);
        assert_eq!(rep_transform(&c, &id, &id).unwrap(), c);
        let g = PolyMatrix::from_ints(&[&[&[1], &[0, 1]], &[&[], &[1]]]);
        let t = rep_transform(&c, &g, &id).unwrap();
        assert_eq!(
            t.a1(),
            &PolyMatrix::from_ints(&[&[&[0, 1], &[1, 0, 1]], &[&[1], &[0, 1]]])
        );
        assert_eq!(smith_type(&t).unwrap(), SmithType::Zero { l: 2, m: 0 });
        let two = PolyMatrix::diagonal(1, 1, &[p(&[2])]);
        let iv = rank1_catalog(&mu, &Rational::one(), Rank1Type::IV).unwrap();
        assert_eq!(rep_transform(&iv, &two, &two).unwrap(), iv);
        let z = PolyMatrix::diagonal(2, 2, &[p(&[0, 1]), p(&[1])]);
        assert!(rep_transform(&c, &z, &id).is_err());
        // Conjugation gives an equivalent representation.
        let conj = rep_transform(&c, &g, &g).unwrap();
        let e = find_equivalence(&c, &conj, 2).expect("equivalence");
        assert!(e.is_unimodular());
    }

    #[test]
    fn json_round_trip() {
        let c = rep_from_phi(&Rational::zero(), &companion()).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"mu":"0","n":2,"A1":"#));
        assert_eq!(serde_json::from_str::<CasimirRep>(&s).unwrap(), c);
        let t = SmithType::Plus { i: 1, j: 2, k: 0 };
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"variant":"plus","indices":[1,2,0]}"#);
        assert_eq!(serde_json::from_str::<SmithType>(&s).unwrap(), t);
    }
}
