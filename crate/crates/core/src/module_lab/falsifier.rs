//! Orbit closures of vectors, sub/quotient representations, and a bounded
//! search for proper submodules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Rational, UniPoly};
use crate::casimir::{rep_from_phi, smith_type, CasimirRep, SmithType};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::modp::{self, P61};
use crate::smith::smith_normal_form;

pub const DEFAULT_SEED: u64 = 1;

/// The saturated Q[z]-submodule generated by the orbit of a vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitSubmodule {
    pub rank: usize,
    /// Columns form a basis of the saturated module.
    pub basis: PolyMatrix,
    /// Rank after each round of applying `L_1` and `L_-1`.
    pub level_ranks: Vec<usize>,
    /// True when the module stopped growing within the word-length bound,
    /// so it is invariant.
    pub stable: bool,
}

/// Saturation of the span of `cols`: if `M = U S V` then the first `r`
/// columns of `U` are a basis, `r` being the rank.
fn saturate(n: usize, cols: &[Vec<UniPoly>]) -> (usize, PolyMatrix) {
    let m = PolyMatrix::from_rows(
        (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect(),
    )
    .expect("rectangular");
    let f = smith_normal_form(&m);
    let r = f.rank();
    let mut basis = f.u.select_columns(0..r);
    for j in 0..r {
        let c = basis
            .column(j)
            .iter()
            .flat_map(|p| p.coeffs().to_vec())
            .collect::<Vec<_>>();
        let content = UniPoly::new(c).content();
        for i in 0..n {
            let e = basis.get(i, j).scale(&content.recip().expect("nonzero"));
            basis.set(i, j, e);
        }
    }
    (r, basis)
}

/// Applies words of length at most `word_len` in `L_1`, `L_-1` to `v`,
/// level by level, saturating after each level. Stops early once the rank
/// stops growing (the saturated module is then invariant) or reaches `n`.
pub fn orbit_submodule(rep: &CasimirRep, v: &[UniPoly], word_len: usize) -> Result<OrbitSubmodule> {
    let n = rep.rank();
    if v.len() != n {
        return Err(Error::Dimension(format!(
            "vector of length {} for rank {n}",
            v.len()
        )));
    }
    if v.iter().all(UniPoly::is_zero) {
        return Err(Error::Hypothesis(
            "the generating vector must be nonzero".into(),
        ));
    }
    let (mut rank, mut basis) = saturate(n, &[v.to_vec()]);
    let mut level_ranks = vec![rank];
    let mut stable = rank == n;
    for _ in 0..word_len {
        if stable {
            break;
        }
        let mut gens = Vec::with_capacity(3 * rank);
        for j in 0..rank {
            let col = basis.column(j);
            gens.push(rep.apply_l1(&col));
            gens.push(rep.apply_l_minus1(&col));
            gens.push(col);
        }
        let (r, b) = saturate(n, &gens);
        level_ranks.push(r);
        stable = r == rank || r == n;
        rank = r;
        basis = b;
    }
    Ok(OrbitSubmodule {
        rank,
        basis,
        level_ranks,
        stable,
    })
}

/// A submodule given by an injective `B` together with the induced
/// representations on it and on the quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubQuotient {
    pub sub: CasimirRep,
    pub quotient: Option<CasimirRep>,
    /// `C` with `C B = 0` mapping onto the quotient coordinates.
    pub complement: PolyMatrix,
    pub sub_smith_type: SmithType,
    pub quotient_smith_type: Option<SmithType>,
}

/// Splits `rep` along the columns of `b` (`n x k`): solves
/// `A_1(z) B(z+1) = B(z) A'_1(z)` for `A'_1`, and builds the quotient on the
/// complement basis read off the Smith form of `B`.
pub fn submodule_quotient(rep: &CasimirRep, b: &PolyMatrix) -> Result<SubQuotient> {
    let n = rep.rank();
    let k = b.cols();
    if b.rows() != n || k == 0 || k > n {
        return Err(Error::Dimension(format!(
            "B must be {n} x k with 1 <= k <= {n}, got {} x {k}",
            b.rows()
        )));
    }
    let f = smith_normal_form(b);
    if f.rank() != k {
        return Err(Error::Dimension("B is not injective".into()));
    }
    let r = rep.a1() * &b.shift(1);
    let w = &f.u_inv * &r;
    let outside = w.select_rows(k..n);
    if !outside.is_zero() {
        return Err(Error::NotIntertwining(format!(
            "A1(z)B(z+1) leaves the span of B; residual {outside}"
        )));
    }
    let s = f.invariant_factors();
    let mut top = w.select_rows(0..k);
    for (i, si) in s.iter().enumerate() {
        for j in 0..k {
            let q = top.get(i, j).exact_div(si).ok_or_else(|| {
                Error::NotIntertwining(format!(
                    "A1(z)B(z+1) = B(z)A'(z) has no polynomial solution A'; residual row {i}: {}",
                    top.get(i, j)
                ))
            })?;
            top.set(i, j, q);
        }
    }
    let a_sub = &f.v_inv * &top;
    if b * &a_sub != r {
        return Err(Error::Internal("sub-representation solve failed".into()));
    }
    if s.iter().any(|x| !x.is_one()) {
        return Err(Error::Hypothesis(format!(
            "the image of B is not saturated (invariant factors {}); the quotient has torsion",
            s.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    let sub = rep_from_phi(rep.mu(), &a_sub)?;
    if rep.a_minus1() * &b.shift(-1) != b * sub.a_minus1() {
        return Err(Error::Internal(
            "L_-1 does not preserve the submodule".into(),
        ));
    }
    let complement = f.u_inv.select_rows(k..n);
    let quotient = if k < n {
        let lift = f.u.select_columns(k..n);
        let a_quot = &(&complement * rep.a1()) * &lift.shift(1);
        if &complement * rep.a1() != &a_quot * &complement.shift(1) {
            return Err(Error::Internal("quotient action is not induced".into()));
        }
        Some(rep_from_phi(rep.mu(), &a_quot)?)
    } else {
        None
    };
    let sub_smith_type = smith_type(&sub)?;
    let quotient_smith_type = quotient.as_ref().map(smith_type).transpose()?;
    if smith_type(rep)? == (SmithType::Zero { l: n, m: 0 }) {
        let sub_ok = sub_smith_type == SmithType::Zero { l: k, m: 0 };
        let quot_ok = quotient_smith_type.is_none_or(|t| t == SmithType::Zero { l: n - k, m: 0 });
        if !sub_ok || !quot_ok {
            return Err(Error::Internal(format!(
                "submodule of an S0(n,0) representation has types {sub_smith_type} / {quotient_smith_type:?}"
            )));
        }
    }
    Ok(SubQuotient {
        sub,
        quotient,
        complement,
        sub_smith_type,
        quotient_smith_type,
    })
}

/// A verified proper submodule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub generator: Vec<UniPoly>,
    pub basis: PolyMatrix,
    pub rank: usize,
    pub level_ranks: Vec<usize>,
    #[serde(rename = "subA1")]
    pub sub_a1: PolyMatrix,
    pub sub_smith_type: SmithType,
    pub quotient_smith_type: Option<SmithType>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    NoCounterexample,
    ProperSubmodule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Bounds {
    pub deg_bound: usize,
    pub word_len: usize,
    pub samples: usize,
    /// Total number of candidate vectors examined when no witness exists.
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FalsifierVerdict {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub bounds: Bounds,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FalsifierOptions {
    pub deg_bound: usize,
    pub word_len: usize,
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; zero uses the global pool.
    pub jobs: usize,
}

impl Default for FalsifierOptions {
    fn default() -> Self {
        FalsifierOptions {
            deg_bound: 3,
            word_len: 6,
            samples: 50,
            seed: DEFAULT_SEED,
            jobs: 0,
        }
    }
}

/// Values of `A_1` and `A_-1` modulo `P61` on the integer window
/// `t - h ..= t + h`.
struct ModpWindow {
    n: usize,
    half: usize,
    points: Vec<u64>,
    a1: Vec<Vec<Vec<u64>>>,
    am1: Vec<Vec<Vec<u64>>>,
}

/// Evaluation point for the modular certificate; far from the small roots
/// of the matrices involved.
const CENTER: u64 = 1_000_000_007;

impl ModpWindow {
    fn new(rep: &CasimirRep, half: usize) -> Option<Self> {
        let points: Vec<u64> = (0..=2 * half)
            .map(|k| CENTER - half as u64 + k as u64)
            .collect();
        let a1 = points
            .iter()
            .map(|&s| rep.a1().eval_mod(s, P61))
            .collect::<Option<_>>()?;
        let am1 = points
            .iter()
            .map(|&s| rep.a_minus1().eval_mod(s, P61))
            .collect::<Option<_>>()?;
        Some(ModpWindow {
            n: rep.rank(),
            half,
            points,
            a1,
            am1,
        })
    }

    fn mat_vec(&self, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| modp::add(acc, modp::mul(a, b, P61), P61))
            })
            .collect()
    }

    /// True when the orbit of `v` provably spans a full-rank module: the
    /// orbit vectors evaluated at the center already have rank `n` mod p.
    /// False means "not certified", never "reducible".
    fn certifies_full_rank(&self, v: &[UniPoly], word_len: usize) -> bool {
        let Some(values) = self
            .points
            .iter()
            .map(|&s| {
                v.iter()
                    .map(|p| p.eval_mod(s, P61))
                    .collect::<Option<Vec<u64>>>()
            })
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let c = self.half;
        let mut kept: Vec<Vec<u64>> = Vec::new();
        let mut rank = 0;
        let try_keep = |val: &Vec<u64>, kept: &mut Vec<Vec<u64>>, rank: &mut usize| {
            kept.push(val.clone());
            let r = modp::rank(kept.clone(), P61);
            if r > *rank {
                *rank = r;
                true
            } else {
                kept.pop();
                false
            }
        };
        try_keep(&values[c], &mut kept, &mut rank);
        if rank == self.n {
            return true;
        }
        // Each vector is valid on index range lo..=hi of the window.
        let mut frontier = vec![(0usize, 2 * self.half, values)];
        for _ in 0..word_len.min(self.half) {
            let mut next = Vec::new();
            for (lo, hi, w) in &frontier {
                let up: Vec<Vec<u64>> = (*lo..*hi)
                    .map(|k| self.mat_vec(&self.a1[k], &w[k + 1]))
                    .collect();
                let mut up_full = vec![Vec::new(); w.len()];
                for (k, x) in (*lo..*hi).zip(up) {
                    up_full[k] = x;
                }
                if try_keep(&up_full[c], &mut kept, &mut rank) {
                    next.push((*lo, hi - 1, up_full));
                }
                let mut down_full = vec![Vec::new(); w.len()];
                for k in lo + 1..=*hi {
                    down_full[k] = self.mat_vec(&self.am1[k], &w[k - 1]);
                }
                if try_keep(&down_full[c], &mut kept, &mut rank) {
                    next.push((lo + 1, *hi, down_full));
                }
                if rank == self.n {
                    return true;
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        false
    }
}

/// Deterministic candidate list: standard basis vectors, then all vectors
/// with entries of degree at most `deg_bound` and coefficients in
/// {-1, 0, 1} (up to sign), then `samples` seeded random vectors.
struct Candidates {
    n: usize,
    deg_bound: usize,
    ternary: usize,
    samples: Vec<Vec<UniPoly>>,
}

impl Candidates {
    fn new(n: usize, opts: &FalsifierOptions) -> Result<Self> {
        let digits = u32::try_from(n * (opts.deg_bound + 1))
            .map_err(|_| Error::Hypothesis("search space too large".into()))?;
        let ternary = 3usize
            .checked_pow(digits)
            .ok_or_else(|| Error::Hypothesis("search space too large".into()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let samples = (0..opts.samples)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        UniPoly::new(
                            (0..=opts.deg_bound)
                                .map(|_| Rational::integer(rng.gen_range(-9..=9)))
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        Ok(Candidates {
            n,
            deg_bound: opts.deg_bound,
            ternary,
            samples,
        })
    }

    fn len(&self) -> usize {
        self.n + self.ternary + self.samples.len()
    }

    fn get(&self, idx: usize) -> Option<Vec<UniPoly>> {
        if idx < self.n {
            let mut v = vec![UniPoly::zero(); self.n];
            v[idx] = UniPoly::one();
            return Some(v);
        }
        let idx = idx - self.n;
        if idx < self.ternary {
            let mut code = idx;
            let mut first_nonzero = None;
            let mut v = Vec::with_capacity(self.n);
            for _ in 0..self.n {
                let mut coeffs = Vec::with_capacity(self.deg_bound + 1);
                for _ in 0..=self.deg_bound {
                    let c = match code % 3 {
                        0 => 0,
                        1 => 1,
                        _ => -1,
                    };
                    code /= 3;
                    if c != 0 && first_nonzero.is_none() {
                        first_nonzero = Some(c);
                    }
                    coeffs.push(Rational::integer(c));
                }
                v.push(UniPoly::new(coeffs));
            }
            // Skip the zero vector and one of each +/- pair.
            return (first_nonzero == Some(1)).then_some(v);
        }
        Some(self.samples[idx - self.ternary].clone())
    }
}

fn examine(
    rep: &CasimirRep,
    window: Option<&ModpWindow>,
    v: Vec<UniPoly>,
    word_len: usize,
) -> Option<Result<Witness>> {
    if v.iter().all(UniPoly::is_zero) {
        return None;
    }
    if window.is_some_and(|w| w.certifies_full_rank(&v, word_len)) {
        return None;
    }
    let orbit = match orbit_submodule(rep, &v, word_len) {
        Ok(o) => o,
        Err(e) => return Some(Err(e)),
    };
    if !orbit.stable || orbit.rank == rep.rank() {
        return None;
    }
    Some(submodule_quotient(rep, &orbit.basis).map(|sq| Witness {
        generator: v,
        basis: orbit.basis,
        rank: orbit.rank,
        level_ranks: orbit.level_ranks,
        sub_a1: sq.sub.a1().clone(),
        sub_smith_type: sq.sub_smith_type,
        quotient_smith_type: sq.quotient_smith_type,
    }))
}

/// Searches the candidate vectors in order for one whose orbit closure is a
/// proper invariant saturated submodule. The reported witness is the first
/// in candidate order regardless of how many threads run the search.
pub fn simplicity_falsifier(rep: &CasimirRep, opts: &FalsifierOptions) -> Result<FalsifierVerdict> {
    if opts.word_len == 0 {
        return Err(Error::Hypothesis("word length must be positive".into()));
    }
    let candidates = Candidates::new(rep.rank(), opts)?;
    let window = ModpWindow::new(rep, opts.word_len);
    let search = || {
        (0..candidates.len())
            .into_par_iter()
            .find_map_first(|i| {
                candidates
                    .get(i)
                    .and_then(|v| examine(rep, window.as_ref(), v, opts.word_len))
            })
            .transpose()
    };
    let found = if opts.jobs == 0 {
        search()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(search)?
    };
    Ok(FalsifierVerdict {
        outcome: if found.is_some() {
            Outcome::ProperSubmodule
        } else {
            Outcome::NoCounterexample
        },
        witness: found,
        bounds: Bounds {
            deg_bound: opts.deg_bound,
            word_len: opts.word_len,
            samples: opts.samples,
            candidates: candidates.len(),
        },
        seed: opts.seed,
    })
}
