//! Weisner and Goldberg coefficients of pairs (τ, η) of ordered set
//! partitions, with closed forms and brute-force definitions side by side.

mod eulerian;
mod stats;

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::incidence::{mu_tilde_unchecked, zeta_tilde_unchecked};
use crate::par::{self, Execution};
use crate::partitions::{collect, principal_ideal, OrderedSetPartition as Osp, PartitionClass};
use crate::rational::{self, Rational};

pub use eulerian::{beta_integral, eulerian_poly, integrate_unit, stirling2, UniPoly};
pub use stats::{relative_word, runs, stats, RelativeWord, RunDecomposition, RunKind, Stats};

use stats::{relative_word_unchecked, stats_of};

/// Largest n accepted by the brute-force oracles unless overridden.
pub const DEFAULT_ORACLE_BOUND: usize = 6;

fn same_n(a: &Osp, b: &Osp) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(())
}

fn below(tau: &Osp, eta: &Osp) -> bool {
    tau.underlying().leq(&eta.underlying()).unwrap_or(false)
}

/// w(τ,η) = (−1)^{|τ|−asc−1} / (|τ|·binom(|τ|−1, asc)), and 0 if τ̄ ≰ η̄.
pub fn weisner(tau: &Osp, eta: &Osp) -> Result<Rational> {
    same_n(tau, eta)?;
    if !below(tau, eta) {
        return Ok(Rational::zero());
    }
    Ok(weisner_from_word(&relative_word_unchecked(tau, eta)))
}

fn weisner_from_word(m: &[usize]) -> Rational {
    let s = m.len();
    let asc = stats_of(m).asc;
    rational::sign(s - asc - 1) / rational::big(&(rational::binomial(s - 1, asc) * s))
}

/// The integral form ∫_{−1}^0 x^{|τ|−asc−1}(1+x)^{asc} dx of w(τ,η).
pub fn weisner_integral(tau: &Osp, eta: &Osp) -> Result<Rational> {
    same_n(tau, eta)?;
    if !below(tau, eta) {
        return Ok(Rational::zero());
    }
    let m = relative_word_unchecked(tau, eta);
    let asc = stats_of(&m).asc;
    Ok(integrate_unit(&UniPoly::beta_monomial(m.len() - asc - 1, asc)))
}

/// g(τ,η) = (1/Πq_j!) ∫_{−1}^0 x^{des}(1+x)^{asc} Π P_{q_j}(x) dx over the
/// level runs q_j of the relative word; 0 if τ̄ ≰ η̄.
pub fn goldberg(tau: &Osp, eta: &Osp) -> Result<Rational> {
    same_n(tau, eta)?;
    if !below(tau, eta) {
        return Ok(Rational::zero());
    }
    Ok(goldberg_from_word(&relative_word_unchecked(tau, eta)))
}

pub(crate) fn goldberg_from_word(m: &[usize]) -> Rational {
    let st = stats_of(m);
    let levels = runs(m, RunKind::Level).expect("relative word is nonempty").lengths();
    let mut integrand = UniPoly::beta_monomial(st.des, st.asc);
    let mut denom = Rational::one();
    for q in levels {
        integrand = &integrand * &eulerian_poly(q);
        denom *= rational::big(&rational::factorial(q));
    }
    integrate_unit(&integrand) / denom
}

fn per_block(
    f: fn(&[usize]) -> Rational,
    tau: &Osp,
    eta: &Osp,
    pi: &Osp,
) -> Result<Rational> {
    same_n(tau, eta)?;
    same_n(tau, pi)?;
    if !below(tau, eta) || !tau.leq_unchecked(pi) {
        return Ok(Rational::zero());
    }
    let mut acc = Rational::one();
    for p in pi.blocks() {
        let t = tau.restrict_std(p);
        let e = eta.restrict_std(p);
        acc *= f(&relative_word_unchecked(&t, &e));
    }
    Ok(acc)
}

/// Π_{P∈π} w(τ⌋P, η⌋P); 0 unless τ̄ ≤ η̄ and τ ≤ π.
pub fn weisner3(tau: &Osp, eta: &Osp, pi: &Osp) -> Result<Rational> {
    per_block(weisner_from_word, tau, eta, pi)
}

/// Π_{P∈π} g(τ⌋P, η⌋P); 0 unless τ̄ ≤ η̄ and τ ≤ π.
pub fn goldberg3(tau: &Osp, eta: &Osp, pi: &Osp) -> Result<Rational> {
    per_block(goldberg_from_word, tau, eta, pi)
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::Bound { what: "oracle n", value: n, limit: bound });
    }
    Ok(())
}

/// Σ_{σ∈OP_n, σ⋏η=τ} μ̃(σ,1̂_n), by scanning OP_n.
pub fn weisner_oracle(tau: &Osp, eta: &Osp) -> Result<Rational> {
    same_n(tau, eta)?;
    check_bound(tau.n(), DEFAULT_ORACLE_BOUND)?;
    let one = Osp::one(tau.n())?;
    let mut acc = Rational::zero();
    for sigma in collect(tau.n(), PartitionClass::All)? {
        if &sigma.quasi_meet_unchecked(eta) == tau {
            acc += mu_tilde_unchecked(&sigma, &one);
        }
    }
    Ok(acc)
}

/// Σ_{σ≥τ} ζ̃(τ,σ) w(σ,η) with w itself from the oracle.
pub fn goldberg_oracle(tau: &Osp, eta: &Osp) -> Result<Rational> {
    same_n(tau, eta)?;
    check_bound(tau.n(), DEFAULT_ORACLE_BOUND)?;
    OracleTable::new(eta, DEFAULT_ORACLE_BOUND, Execution::Sequential)?.goldberg(tau)
}

/// Σ_{σ≤π, σ⋏η=τ} μ̃(σ,π), scanning the principal ideal of π.
pub fn weisner3_oracle(tau: &Osp, eta: &Osp, pi: &Osp) -> Result<Rational> {
    same_n(tau, eta)?;
    same_n(tau, pi)?;
    check_bound(tau.n(), DEFAULT_ORACLE_BOUND)?;
    let mut acc = Rational::zero();
    for sigma in principal_ideal(pi) {
        if &sigma.quasi_meet_unchecked(eta) == tau {
            acc += mu_tilde_unchecked(&sigma, pi);
        }
    }
    Ok(acc)
}

/// Σ_{σ∈[τ,π]} ζ̃(τ,σ) w3(σ,η,π) with w3 from its oracle.
pub fn goldberg3_oracle(tau: &Osp, eta: &Osp, pi: &Osp) -> Result<Rational> {
    same_n(tau, eta)?;
    same_n(tau, pi)?;
    if !tau.leq_unchecked(pi) {
        return Ok(Rational::zero());
    }
    let mut acc = Rational::zero();
    for sigma in tau.interval_unchecked(pi) {
        acc += zeta_tilde_unchecked(tau, &sigma) * weisner3_oracle(&sigma, eta, pi)?;
    }
    Ok(acc)
}

/// All oracle Weisner values w(·,η) for one η, from a single pass over
/// OP_n; Goldberg values are then ζ̃-sums over up-sets.
pub struct OracleTable {
    all: Vec<Osp>,
    weisner: HashMap<Osp, Rational>,
    exec: Execution,
}

impl OracleTable {
    pub fn new(eta: &Osp, bound: usize, exec: Execution) -> Result<Self> {
        check_bound(eta.n(), bound)?;
        let all = collect(eta.n(), PartitionClass::All)?;
        let one = Osp::one(eta.n())?;
        let mut weisner: HashMap<Osp, Rational> = HashMap::new();
        for sigma in &all {
            *weisner.entry(sigma.quasi_meet_unchecked(eta)).or_insert_with(Rational::zero) +=
                mu_tilde_unchecked(sigma, &one);
        }
        Ok(OracleTable { all, weisner, exec })
    }

    pub fn weisner(&self, tau: &Osp) -> Rational {
        self.weisner.get(tau).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn goldberg(&self, tau: &Osp) -> Result<Rational> {
        let mut acc = Rational::zero();
        for sigma in &self.all {
            if tau.leq_unchecked(sigma) {
                if let Some(w) = self.weisner.get(sigma) {
                    acc += zeta_tilde_unchecked(tau, sigma) * w;
                }
            }
        }
        Ok(acc)
    }

    /// (τ, w_oracle, g_oracle) for every τ in OP_n.
    pub fn rows(&self) -> Vec<(Osp, Rational, Rational)> {
        par::map(self.exec, &self.all, |tau| {
            (tau.clone(), self.weisner(tau), self.goldberg(tau).expect("same n"))
        })
    }
}

/// The coarsest σ with σ⋏η = τ: merge τ-blocks along ascending runs.
pub fn sigma_max_asc(tau: &Osp, eta: &Osp) -> Result<Osp> {
    merge_runs(tau, eta, RunKind::Ascending)
}

/// The coarsest σ ≥ τ with σ̄ ≤ η̄: merge τ-blocks along level runs.
pub fn sigma_max_pla(tau: &Osp, eta: &Osp) -> Result<Osp> {
    merge_runs(tau, eta, RunKind::Level)
}

fn merge_runs(tau: &Osp, eta: &Osp, kind: RunKind) -> Result<Osp> {
    same_n(tau, eta)?;
    let rw = relative_word(tau, eta)?;
    let blocks = runs(&rw.word, kind)?
        .runs
        .into_iter()
        .map(|r| {
            let mut b: Vec<usize> = tau.blocks()[r].iter().flatten().copied().collect();
            b.sort_unstable();
            b
        })
        .collect();
    Osp::from_blocks(tau.n(), blocks)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub goldberg: Rational,
    pub size: usize,
    pub des: usize,
    pub asc: usize,
    /// des = asc and |τ| even, which forces g = 0
    pub criterion_zero_applies: bool,
    /// |τ| prime, which forces g ≠ 0
    pub criterion_nonzero_applies: bool,
}

impl VanishingReport {
    /// Both criteria agree with the computed coefficient.
    pub fn consistent(&self) -> bool {
        (!self.criterion_zero_applies || self.goldberg.is_zero())
            && (!self.criterion_nonzero_applies || !self.goldberg.is_zero())
    }
}

fn is_prime(k: usize) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

pub fn vanishing_checks(tau: &Osp, eta: &Osp) -> Result<VanishingReport> {
    let rw = relative_word(tau, eta)?;
    let st = rw.stats();
    let size = rw.len();
    Ok(VanishingReport {
        goldberg: goldberg(tau, eta)?,
        size,
        des: st.des,
        asc: st.asc,
        criterion_zero_applies: st.des == st.asc && size % 2 == 0,
        criterion_nonzero_applies: is_prime(size),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientKind {
    Weisner,
    Goldberg,
}

/// Σ_{h∈S_{|τ|}} f(h(τ),η,π) over all reorderings of the blocks of τ.
pub fn permutation_sum(kind: CoefficientKind, tau: &Osp, eta: &Osp, pi: &Osp) -> Result<Rational> {
    let mut h: Vec<usize> = (1..=tau.len()).collect();
    let mut acc = Rational::zero();
    loop {
        let t = tau.permute_blocks(&h)?;
        acc += match kind {
            CoefficientKind::Weisner => weisner3(&t, eta, pi)?,
            CoefficientKind::Goldberg => goldberg3(&t, eta, pi)?,
        };
        let Some(i) = (1..h.len()).rev().find(|&i| h[i - 1] < h[i]) else {
            return Ok(acc);
        };
        let j = (i..h.len()).rev().find(|&j| h[j] > h[i - 1]).expect("successor exists");
        h.swap(i - 1, j);
        h[i..].reverse();
    }
}

/// The hypothesis of the permutation-sum identities: η⌋P ≠ 1̂_P for some P ∈ π.
pub fn permutation_sum_applies(eta: &Osp, pi: &Osp) -> bool {
    pi.blocks().iter().any(|p| eta.restricted_len(p) > 1)
}
