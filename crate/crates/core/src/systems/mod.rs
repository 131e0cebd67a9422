//! Spreadability-system engines and the transforms built on them.
//!
//! An engine turns a partitioned moment φ_π(X_1,…,X_n) into a polynomial in
//! moment symbols `m[w]` (free: cumulant symbols `c[w]`; c-monotone: also
//! `ψm[w]`). Variables are identified by integer labels, so `m[13]` is
//! φ(X_1X_3) when the labels are 1..=n.

mod dilation;
mod engines;
mod mixed;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::incidence::{mu_tilde_unchecked, zeta_tilde_unchecked};
use crate::par::{self, Execution};
use crate::partitions::{collect, principal_ideal, MultisetWord, OrderedSetPartition as Osp, PartitionClass};
use crate::poly::{SymPolynomial, Symbol};
use crate::rational::Rational;

pub use dilation::{
    dilate, dilate_brute_force, dilate_multi, diffeq_residual, partial_cumulant, phi_t, specialized_residual,
    DiffForm, Dilated, Dilation, SpecialForm,
};
pub use mixed::{
    check_independence, clt_moment, clt_moment_poly, mixed_cumulant_cumulant, mixed_cumulant_direct,
    mixed_cumulant_formal, mixed_cumulant_moment, monotone_mc_residual, IndependenceReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    Tensor,
    Free,
    Boolean,
    Monotone,
    CMonotone,
}

impl Engine {
    pub const ALL: [Engine; 5] = [Engine::Tensor, Engine::Free, Engine::Boolean, Engine::Monotone, Engine::CMonotone];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Tensor => "tensor",
            Engine::Free => "free",
            Engine::Boolean => "boolean",
            Engine::Monotone => "monotone",
            Engine::CMonotone => "cmonotone",
        }
    }

    /// Invariant under arbitrary permutations of the copies, not only
    /// order-preserving ones.
    pub fn is_exchangeable(self) -> bool {
        matches!(self, Engine::Tensor | Engine::Free | Engine::Boolean)
    }

    /// φ̃(X_1^{(k_1)} ⋯ X_n^{(k_n)}) where `keys[i]` is the copy of the
    /// i-th factor and `vars[i]` its label.
    pub fn evaluate<K: Ord + Clone>(self, keys: &[K], vars: &[usize]) -> Result<SymPolynomial> {
        if keys.len() != vars.len() {
            return Err(Error::SizeMismatch(keys.len(), vars.len()));
        }
        Ok(self.evaluate_unchecked(keys, vars))
    }

    pub(crate) fn evaluate_unchecked<K: Ord + Clone>(self, keys: &[K], vars: &[usize]) -> SymPolynomial {
        match self {
            Engine::Tensor => engines::tensor(keys, vars),
            Engine::Free => engines::free(keys, vars),
            Engine::Boolean => engines::boolean(keys, vars),
            Engine::Monotone => engines::monotone(keys, vars, engines::moment),
            Engine::CMonotone => engines::c_monotone(keys, vars),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tensor" => Ok(Engine::Tensor),
            "free" => Ok(Engine::Free),
            "boolean" => Ok(Engine::Boolean),
            "monotone" => Ok(Engine::Monotone),
            "cmonotone" | "c-monotone" => Ok(Engine::CMonotone),
            _ => Err(Error::Parse(format!("unknown system '{s}'"))),
        }
    }
}

/// A family of partitioned moments φ_π.
pub trait Moments: Sync {
    /// φ_π(X_{vars[0]}, …); callers guarantee `vars.len() == pi.n()`.
    fn phi(&self, pi: &Osp, vars: &[usize]) -> SymPolynomial;
}

impl Moments for Engine {
    fn phi(&self, pi: &Osp, vars: &[usize]) -> SymPolynomial {
        self.evaluate_unchecked(pi.word(), vars)
    }
}

/// Unevaluated moments: φ_π becomes the symbol `phi_π`, labels ignored.
#[derive(Clone, Copy, Debug, Default)]
pub struct Formal;

impl Moments for Formal {
    fn phi(&self, pi: &Osp, _vars: &[usize]) -> SymPolynomial {
        SymPolynomial::symbol(Symbol::PartMoment(pi.clone()))
    }
}

/// The monotone system of the second state ψ, in `ψm[w]` symbols.
#[derive(Clone, Copy, Debug, Default)]
pub struct PsiMonotone;

impl Moments for PsiMonotone {
    fn phi(&self, pi: &Osp, vars: &[usize]) -> SymPolynomial {
        engines::monotone(pi.word(), vars, engines::psi_moment)
    }
}

impl<M: Moments + ?Sized> Moments for &M {
    fn phi(&self, pi: &Osp, vars: &[usize]) -> SymPolynomial {
        (**self).phi(pi, vars)
    }
}

pub(crate) fn check_vars(pi: &Osp, vars: &[usize]) -> Result<()> {
    if vars.len() != pi.n() {
        return Err(Error::SizeMismatch(vars.len(), pi.n()));
    }
    Ok(())
}

/// Labels 1..=n.
pub fn default_vars(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

pub fn phi_pi(engine: Engine, pi: &Osp, vars: &[usize]) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    Ok(engine.phi(pi, vars))
}

/// φ_{π⋏κ(indices)}(vars).
pub fn phi_pi_indexed<M: Moments + ?Sized>(
    m: &M,
    pi: &Osp,
    vars: &[usize],
    indices: &MultisetWord,
) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    if indices.len() != pi.n() {
        return Err(Error::SizeMismatch(indices.len(), pi.n()));
    }
    Ok(m.phi(&pi.quasi_meet_unchecked(&Osp::kernel(indices)), vars))
}

/// K_π = Σ_{σ≤π} φ_σ μ̃(σ,π).
pub fn cumulant<M: Moments + ?Sized>(m: &M, pi: &Osp, vars: &[usize]) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    Ok(cumulant_unchecked(m, pi, vars))
}

pub(crate) fn cumulant_unchecked<M: Moments + ?Sized>(m: &M, pi: &Osp, vars: &[usize]) -> SymPolynomial {
    let mut acc = SymPolynomial::zero();
    for sigma in principal_ideal(pi) {
        acc += &m.phi(&sigma, vars).scale(&mu_tilde_unchecked(&sigma, pi));
    }
    acc
}

/// Σ_{σ≤π, keep(σ)} ζ̃(σ,π) K_σ in unevaluated cumulant symbols.
pub fn formal_moment_expansion(pi: &Osp, keep: impl Fn(&Osp) -> bool) -> SymPolynomial {
    let mut acc = SymPolynomial::zero();
    for sigma in principal_ideal(pi) {
        if keep(&sigma) {
            let k = SymPolynomial::symbol(Symbol::PartCumulant(sigma.clone()));
            acc += &k.scale(&zeta_tilde_unchecked(&sigma, pi));
        }
    }
    acc
}

/// K_P(X_P) for every block, multiplied: the multiplicative extension
/// K_{(π)} of the cumulants of `m`.
pub fn multiplicative_cumulant<M: Moments + ?Sized>(m: &M, pi: &Osp, vars: &[usize]) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    let mut acc = SymPolynomial::one();
    for b in pi.blocks() {
        acc = &acc * &block_cumulant(m, b, vars);
    }
    Ok(acc)
}

fn block_cumulant<M: Moments + ?Sized>(m: &M, block: &[usize], vars: &[usize]) -> SymPolynomial {
    let sub: Vec<usize> = block.iter().map(|&e| vars[e - 1]).collect();
    cumulant_unchecked(m, &Osp::one(sub.len()).expect("block nonempty"), &sub)
}

/// Blocks nested inside another block's span (meaningful for noncrossing π).
pub fn is_inner_block(pi: &Osp, index: usize) -> bool {
    let b = &pi.blocks()[index];
    pi.blocks()
        .iter()
        .enumerate()
        .any(|(j, c)| j != index && c[0] < b[0] && b[b.len() - 1] < c[c.len() - 1])
}

/// The cumulant predicted by the factorization rules of each product:
/// multiplicative on the engine's partition class and zero off it, with
/// inner blocks of the c-monotone system carrying monotone ψ-cumulants.
pub fn predicted_cumulant(engine: Engine, pi: &Osp, vars: &[usize]) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    let class = match engine {
        Engine::Tensor => PartitionClass::All,
        Engine::Free => PartitionClass::Onc,
        Engine::Boolean => PartitionClass::Oi,
        Engine::Monotone | Engine::CMonotone => PartitionClass::Monotone,
    };
    if !class.contains(pi) {
        return Ok(SymPolynomial::zero());
    }
    if engine != Engine::CMonotone {
        return multiplicative_cumulant(&engine, pi, vars);
    }
    let mut acc = SymPolynomial::one();
    for (i, b) in pi.blocks().iter().enumerate() {
        let k = if is_inner_block(pi, i) {
            block_cumulant(&PsiMonotone, b, vars)
        } else {
            block_cumulant(&engine, b, vars)
        };
        acc = &acc * &k;
    }
    Ok(acc)
}

/// K_π for every π ∈ OP_n.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulantTable {
    n: usize,
    entries: BTreeMap<Osp, SymPolynomial>,
}

impl CumulantTable {
    pub fn build<M: Moments + ?Sized>(m: &M, vars: &[usize], exec: Execution) -> Result<Self> {
        let n = vars.len();
        let all = collect(n, PartitionClass::All)?;
        let values = par::map(exec, &all, |pi| cumulant_unchecked(m, pi, vars));
        Ok(CumulantTable { n, entries: all.into_iter().zip(values).collect() })
    }

    pub fn from_entries(n: usize, entries: BTreeMap<Osp, SymPolynomial>) -> Self {
        CumulantTable { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, pi: &Osp) -> Option<&SymPolynomial> {
        self.entries.get(pi)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Osp, &SymPolynomial)> {
        self.entries.iter()
    }
}

/// φ_π = Σ_{σ≤π} K_σ ζ̃(σ,π) using the table's entries.
pub fn moments_from_cumulants(table: &CumulantTable, pi: &Osp) -> Result<SymPolynomial> {
    let mut acc = SymPolynomial::zero();
    for sigma in principal_ideal(pi) {
        let k = table.get(&sigma).ok_or_else(|| Error::Missing(format!("K_{}", sigma.short_string())))?;
        acc += &k.scale(&zeta_tilde_unchecked(&sigma, pi));
    }
    Ok(acc)
}

/// Rewrites free cumulant symbols c[w] through the noncrossing
/// moment-cumulant relation, leaving a polynomial in m[·].
pub fn free_to_moments(p: &SymPolynomial) -> SymPolynomial {
    let mut memo = HashMap::new();
    let mut table = HashMap::new();
    for s in p.symbols() {
        if let Symbol::Cumulant(w) = &s {
            table.insert(w.clone(), free_cumulant(w, &mut memo));
        }
    }
    p.substitute_with(&|s| match s {
        Symbol::Cumulant(w) => table.get(w).cloned(),
        _ => None,
    })
}

/// c[w] = m[w] − Σ_{ρ∈NC, ρ<1̂} Π_{B∈ρ} c[w_B], expanded into moments.
fn free_cumulant(w: &[usize], memo: &mut HashMap<Vec<usize>, SymPolynomial>) -> SymPolynomial {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let mut acc = engines::moment(w);
    for rho in engines::noncrossing(w.len()).iter() {
        if rho.len() == 1 {
            continue;
        }
        let mut term = SymPolynomial::one();
        for b in rho {
            let sub: Vec<usize> = b.iter().map(|&e| w[e - 1]).collect();
            term = &term * &free_cumulant(&sub, memo);
        }
        acc = &acc - &term;
    }
    memo.insert(w.to_vec(), acc.clone());
    acc
}

/// Pairs (π, π') with the same underlying partition but different
/// cumulants, π' the canonical block order of π̄.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExchangeabilityReport {
    pub n: usize,
    pub witnesses: Vec<(Osp, Osp)>,
}

impl ExchangeabilityReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

pub fn exchangeability_check(engine: Engine, n: usize, exec: Execution) -> Result<ExchangeabilityReport> {
    let vars = default_vars(n);
    let table = CumulantTable::build(&engine, &vars, exec)?;
    let mut witnesses = Vec::new();
    for (pi, k) in table.iter() {
        let canon = pi.underlying().canonical_order();
        if table.get(&canon) != Some(k) {
            witnesses.push((pi.clone(), canon));
        }
    }
    Ok(ExchangeabilityReport { n, witnesses })
}

/// For every singleton {k} of π: substituting φ(X_k) = 0 (and ψ(X_k) = 0
/// for the c-monotone system) makes φ_π vanish. Vacuous without singletons.
pub fn singleton_condition(engine: Engine, pi: &Osp) -> bool {
    let vars = default_vars(pi.n());
    let phi = engine.phi(pi, &vars);
    pi.blocks().iter().filter(|b| b.len() == 1).all(|b| {
        let k = vars[b[0] - 1];
        phi.substitute_with(&|s| match s {
            Symbol::Moment(w) | Symbol::Cumulant(w) | Symbol::PsiMoment(w) if w == &[k] => {
                Some(SymPolynomial::zero())
            }
            _ => None,
        })
        .is_zero()
    })
}

/// Coefficient of φ_π in the formal expansion of K_π.
pub fn leading_coefficient(pi: &Osp) -> Rational {
    let k = cumulant_unchecked(&Formal, pi, &vec![0; pi.n()]);
    k.coefficient_of(&Symbol::PartMoment(pi.clone()), 1).as_constant().unwrap_or_else(Rational::zero)
}
