//! The dot operation N.X, time-dependent moments φ^t̲_π, partial cumulants
//! and the evolution equations they satisfy.

use std::collections::BTreeMap;

use crate::error::{domain, Error, Result};
use crate::incidence::beta_vec_unchecked;
use crate::partitions::{outintmax, intmax, principal_ideal, OrderedSetPartition as Osp};
use crate::poly::{Param, SymPolynomial, Symbol};

use super::{check_vars, cumulant_unchecked, Engine, Moments};

/// Dilation parameters: one value for every position, or a single value.
#[derive(Clone, Debug, PartialEq)]
pub enum Dilation {
    Uniform(SymPolynomial),
    /// `params[k]` dilates the k-th argument; must be constant on the
    /// blocks of every σ evaluated.
    PerPosition(Vec<SymPolynomial>),
}

impl Dilation {
    /// Parameters indexed by the blocks of π.
    pub fn per_block(pi: &Osp, ts: &[SymPolynomial]) -> Result<Self> {
        if ts.len() != pi.len() {
            return Err(Error::SizeMismatch(ts.len(), pi.len()));
        }
        Ok(Dilation::PerPosition((1..=pi.n()).map(|k| ts[pi.block_of(k) - 1].clone()).collect()))
    }

    fn block_params(&self, sigma: &Osp) -> Vec<SymPolynomial> {
        match self {
            Dilation::Uniform(t) => vec![t.clone(); sigma.len()],
            Dilation::PerPosition(p) => sigma.blocks().iter().map(|b| p[b[0] - 1].clone()).collect(),
        }
    }
}

/// φ_σ(N.X_1, …, N.X_n) = Σ_{ρ≤σ} φ_ρ β_N(ρ,σ) for the wrapped moments.
pub struct Dilated<'a, M: ?Sized> {
    inner: &'a M,
    dilation: Dilation,
}

impl<'a, M: Moments + ?Sized> Dilated<'a, M> {
    pub fn new(inner: &'a M, dilation: Dilation) -> Self {
        Dilated { inner, dilation }
    }
}

impl<M: Moments + ?Sized> Moments for Dilated<'_, M> {
    fn phi(&self, sigma: &Osp, vars: &[usize]) -> SymPolynomial {
        let ts = self.dilation.block_params(sigma);
        let mut acc = SymPolynomial::zero();
        for rho in principal_ideal(sigma) {
            let b = beta_vec_unchecked(&ts, &rho, sigma);
            if !b.is_zero() {
                acc += &(&self.inner.phi(&rho, vars) * &b);
            }
        }
        acc
    }
}

pub fn dilate<M: Moments + ?Sized>(m: &M, pi: &Osp, vars: &[usize], n: &SymPolynomial) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    Ok(Dilated::new(m, Dilation::Uniform(n.clone())).phi(pi, vars))
}

/// φ_π(N_1.X_1, …) with `ns[i]` dilating the arguments in the i-th block.
pub fn dilate_multi<M: Moments + ?Sized>(
    m: &M,
    pi: &Osp,
    vars: &[usize],
    ns: &[SymPolynomial],
) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    Ok(Dilated::new(m, Dilation::per_block(pi, ns)?).phi(pi, vars))
}

/// φ_π(N.X_1, …) for integer N by expanding every N.X_k into its N copies
/// and evaluating the engine on the refined copy keys (π(k), i_k).
pub fn dilate_brute_force(engine: Engine, pi: &Osp, vars: &[usize], n: usize) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    let len = pi.n();
    let mut acc = SymPolynomial::zero();
    if n == 0 {
        return Ok(acc);
    }
    let mut idx = vec![1usize; len];
    loop {
        let keys: Vec<(usize, usize)> = (0..len).map(|k| (pi.block_of(k + 1), idx[k])).collect();
        acc += &engine.evaluate_unchecked(&keys, vars);
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(acc);
            }
            pos -= 1;
            if idx[pos] < n {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 1;
        }
    }
}

fn t_params(p: usize) -> Vec<SymPolynomial> {
    (1..=p).map(|j| SymPolynomial::param(Param::T(j))).collect()
}

/// φ^t̲_π with symbolic t_j on the j-th block.
pub fn phi_t<M: Moments + ?Sized>(m: &M, pi: &Osp, vars: &[usize]) -> Result<SymPolynomial> {
    dilate_multi(m, pi, vars, &t_params(pi.len()))
}

/// ∂/∂t_slot at t_slot = 0 of φ^{ts}_σ; `slot` is 1-based.
pub fn partial_cumulant<M: Moments + ?Sized>(
    m: &M,
    sigma: &Osp,
    vars: &[usize],
    ts: &[SymPolynomial],
    slot: usize,
) -> Result<SymPolynomial> {
    check_vars(sigma, vars)?;
    if slot == 0 || slot > sigma.len() {
        return Err(domain(format!("block {slot} out of range 1..={}", sigma.len())));
    }
    let mut ts = ts.to_vec();
    if ts.len() != sigma.len() {
        return Err(Error::SizeMismatch(ts.len(), sigma.len()));
    }
    ts[slot - 1] = SymPolynomial::param(Param::S);
    let phi = Dilated::new(m, Dilation::per_block(sigma, &ts)?).phi(sigma, vars);
    Ok(phi.coefficient_of(&Symbol::Param(Param::S), 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiffForm {
    /// A placed before the rest of P_j
    First,
    /// A placed after the rest of P_j
    Second,
}

/// ∂φ^t̲_π/∂t_j minus the sum of partial cumulants over ∅ ≠ A ⊆ P_j.
pub fn diffeq_residual<M: Moments + ?Sized>(
    m: &M,
    pi: &Osp,
    vars: &[usize],
    j: usize,
    form: DiffForm,
) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    if j == 0 || j > pi.len() {
        return Err(domain(format!("block {j} out of range 1..={}", pi.len())));
    }
    let ts = t_params(pi.len());
    let lhs = phi_t(m, pi, vars)?.derivative(&Symbol::Param(Param::T(j)));
    let pj = &pi.blocks()[j - 1];
    let mut rhs = SymPolynomial::zero();
    for mask in 1u64..(1u64 << pj.len()) {
        let a: Vec<usize> = pj.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let rest: Vec<usize> = pj.iter().filter(|e| !a.contains(e)).copied().collect();
        let mut blocks: Vec<Vec<usize>> = pi.blocks()[..j - 1].to_vec();
        let mut params: Vec<SymPolynomial> = ts[..j - 1].to_vec();
        let tj = ts[j - 1].clone();
        let pieces = match form {
            DiffForm::First => [(a.clone(), true), (rest, false)],
            DiffForm::Second => [(rest, false), (a.clone(), true)],
        };
        let mut slot = 0;
        for (block, is_a) in pieces {
            if block.is_empty() {
                continue;
            }
            blocks.push(block);
            params.push(tj.clone());
            if is_a {
                slot = blocks.len();
            }
        }
        blocks.extend_from_slice(&pi.blocks()[j..]);
        params.extend_from_slice(&ts[j..]);
        let sigma = Osp::from_blocks(pi.n(), blocks)?;
        rhs += &partial_cumulant(m, &sigma, vars, &params, slot)?;
    }
    Ok(&lhs - &rhs)
}

/// The closed forms of the evolution equation for π = 1̂_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecialForm {
    /// Σ_{A≠∅} K_{|A|}(X_A) φ^t(X_{A^c})
    Tensor,
    /// Σ_{A interval} K_{|A|}(X_A) Π_{Q∈outintmax(A^c)} φ^t(X_Q)
    Boolean,
    /// Σ_{A≠∅} K_{|A|}(X_A) Π_{B∈outintmax(A^c)} φ^t(X_B)
    MonotoneFirst,
    /// Σ_{B interval} K_{|B|}(X_B) φ^t(X_{B^c})
    MonotoneSecond,
    /// Σ_{A≠∅} K_{|A|}(X_A) Π_{P∈intmax(A^c)} φ^t(X_P)
    Free,
}

impl SpecialForm {
    pub const ALL: [SpecialForm; 5] = [
        SpecialForm::Tensor,
        SpecialForm::Boolean,
        SpecialForm::MonotoneFirst,
        SpecialForm::MonotoneSecond,
        SpecialForm::Free,
    ];

    pub fn engine(self) -> Engine {
        match self {
            SpecialForm::Tensor => Engine::Tensor,
            SpecialForm::Boolean => Engine::Boolean,
            SpecialForm::MonotoneFirst | SpecialForm::MonotoneSecond => Engine::Monotone,
            SpecialForm::Free => Engine::Free,
        }
    }
}

fn is_interval(a: &[usize]) -> bool {
    a.windows(2).all(|w| w[1] == w[0] + 1)
}

/// d/dt φ^t(X_1⋯X_n) minus the closed-form right-hand side, t = t_1.
pub fn specialized_residual(vars: &[usize], form: SpecialForm) -> Result<SymPolynomial> {
    let n = vars.len();
    let engine = form.engine();
    let t = SymPolynomial::param(Param::T(1));
    let mut phi_cache: BTreeMap<Vec<usize>, SymPolynomial> = BTreeMap::new();
    let mut phi_sub = |p: &[usize]| -> Result<SymPolynomial> {
        if p.is_empty() {
            return Ok(SymPolynomial::one());
        }
        if let Some(v) = phi_cache.get(p) {
            return Ok(v.clone());
        }
        let sub: Vec<usize> = p.iter().map(|&e| vars[e - 1]).collect();
        let v = dilate(&engine, &Osp::one(sub.len())?, &sub, &t)?;
        phi_cache.insert(p.to_vec(), v.clone());
        Ok(v)
    };
    let kappa = |p: &[usize]| -> Result<SymPolynomial> {
        let sub: Vec<usize> = p.iter().map(|&e| vars[e - 1]).collect();
        Ok(cumulant_unchecked(&engine, &Osp::one(sub.len())?, &sub))
    };
    let lhs = phi_sub(&(1..=n).collect::<Vec<_>>())?.derivative(&Symbol::Param(Param::T(1)));
    let mut rhs = SymPolynomial::zero();
    for mask in 1u64..(1u64 << n) {
        let a: Vec<usize> = (1..=n).filter(|e| mask >> (e - 1) & 1 == 1).collect();
        let c: Vec<usize> = (1..=n).filter(|e| mask >> (e - 1) & 1 == 0).collect();
        let (head, tail): (Vec<usize>, Vec<Vec<usize>>) = match form {
            SpecialForm::Tensor => (a, vec![c]),
            SpecialForm::Boolean if !is_interval(&a) => continue,
            SpecialForm::Boolean | SpecialForm::MonotoneFirst => {
                (a, if c.is_empty() { Vec::new() } else { outintmax(&c, n)? })
            }
            SpecialForm::MonotoneSecond if !is_interval(&a) => continue,
            SpecialForm::MonotoneSecond => (a, vec![c]),
            SpecialForm::Free => {
                let runs = if c.is_empty() { Vec::new() } else { intmax(&c, n)? };
                let sorted = runs
                    .into_iter()
                    .map(|mut r| {
                        r.sort_unstable();
                        r
                    })
                    .collect();
                (a, sorted)
            }
        };
        let mut term = kappa(&head)?;
        for q in &tail {
            term = &term * &phi_sub(q)?;
        }
        rhs += &term;
    }
    Ok(&lhs - &rhs)
}
