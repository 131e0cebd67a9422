//! Mixed cumulants of S-independent tuples, independence checks, central
//! limit moments and the monotone moment-cumulant formula.

use num_traits::Zero;

use crate::coefficients::{goldberg3, weisner3, CoefficientKind};
use crate::error::{domain, Error, Result};
use crate::incidence::mu_tilde_unchecked;
use crate::par::{self, Execution};
use crate::partitions::{collect, principal_ideal, MultisetWord, OrderedSetPartition as Osp, PartitionClass};
use crate::poly::{SymPolynomial, Symbol};
use crate::rational::{self, Rational};

use super::{check_vars, cumulant_unchecked, default_vars, multiplicative_cumulant, Engine, Moments};

fn check_eta(pi: &Osp, eta: &Osp) -> Result<()> {
    if pi.n() != eta.n() {
        return Err(Error::SizeMismatch(pi.n(), eta.n()));
    }
    Ok(())
}

/// K_π(X_1^{(i_1)}, …) for indices with kernel η, as Σ_{σ≤π} φ_{σ⋏η} μ̃(σ,π).
pub fn mixed_cumulant_direct<M: Moments + ?Sized>(m: &M, pi: &Osp, eta: &Osp, vars: &[usize]) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    check_eta(pi, eta)?;
    let mut acc = SymPolynomial::zero();
    for sigma in principal_ideal(pi) {
        acc += &m.phi(&sigma.quasi_meet_unchecked(eta), vars).scale(&mu_tilde_unchecked(&sigma, pi));
    }
    Ok(acc)
}

/// Σ_τ φ_τ w(τ,η,π).
pub fn mixed_cumulant_moment<M: Moments + ?Sized>(m: &M, pi: &Osp, eta: &Osp, vars: &[usize]) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    check_eta(pi, eta)?;
    let mut acc = SymPolynomial::zero();
    for tau in collect(pi.n(), PartitionClass::All)? {
        let w = weisner3(&tau, eta, pi)?;
        if !w.is_zero() {
            acc += &m.phi(&tau, vars).scale(&w);
        }
    }
    Ok(acc)
}

/// Σ_τ K_τ g(τ,η,π).
pub fn mixed_cumulant_cumulant<M: Moments + ?Sized>(
    m: &M,
    pi: &Osp,
    eta: &Osp,
    vars: &[usize],
) -> Result<SymPolynomial> {
    check_vars(pi, vars)?;
    check_eta(pi, eta)?;
    let mut acc = SymPolynomial::zero();
    for tau in collect(pi.n(), PartitionClass::All)? {
        let g = goldberg3(&tau, eta, pi)?;
        if !g.is_zero() {
            acc += &cumulant_unchecked(m, &tau, vars).scale(&g);
        }
    }
    Ok(acc)
}

/// The same expansions in unevaluated symbols: φ_τ for Weisner, K_τ for
/// Goldberg.
pub fn mixed_cumulant_formal(kind: CoefficientKind, pi: &Osp, eta: &Osp) -> Result<SymPolynomial> {
    check_eta(pi, eta)?;
    let mut acc = SymPolynomial::zero();
    for tau in collect(pi.n(), PartitionClass::All)? {
        let (c, sym) = match kind {
            CoefficientKind::Weisner => (weisner3(&tau, eta, pi)?, Symbol::PartMoment(tau)),
            CoefficientKind::Goldberg => (goldberg3(&tau, eta, pi)?, Symbol::PartCumulant(tau)),
        };
        if !c.is_zero() {
            acc += &SymPolynomial::symbol(sym).scale(&c);
        }
    }
    Ok(acc)
}

/// Outcome of checking one engine against S-independence for a fixed
/// assignment of variables to subalgebras.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IndependenceReport {
    pub n: usize,
    /// π with φ_π(X^{(i)}) ≠ φ_{π⋏κ(i)}(X)
    pub moment_failures: Vec<Osp>,
    /// π with K_π(X^{(i)}) ≠ Σ_τ K_τ g(τ,κ(i),π)
    pub cumulant_failures: Vec<Osp>,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.moment_failures.is_empty() && self.cumulant_failures.is_empty()
    }
}

/// Variables X_k are taken from subalgebra `assignment[k]`, realized as
/// distinct copies inside the engine, so the copy of X_k in φ_π is keyed by
/// (π(k), i_k).
pub fn check_independence(engine: Engine, assignment: &MultisetWord, exec: Execution) -> Result<IndependenceReport> {
    let n = assignment.len();
    if n == 0 {
        return Err(domain("empty assignment"));
    }
    let vars = default_vars(n);
    let eta = Osp::kernel(assignment);
    let idx = assignment.letters();
    let keyed = |sigma: &Osp| -> SymPolynomial {
        let keys: Vec<(usize, usize)> = (0..n).map(|k| (sigma.block_of(k + 1), idx[k])).collect();
        engine.evaluate_unchecked(&keys, &vars)
    };
    let all = collect(n, PartitionClass::All)?;
    let results = par::map(exec, &all, |pi| {
        let moment_ok = keyed(pi) == engine.phi(&pi.quasi_meet_unchecked(&eta), &vars);
        let mut k = SymPolynomial::zero();
        for sigma in principal_ideal(pi) {
            k += &keyed(&sigma).scale(&mu_tilde_unchecked(&sigma, pi));
        }
        let cumulant_ok = mixed_cumulant_cumulant(&engine, pi, &eta, &vars).map(|g| g == k).unwrap_or(false);
        (moment_ok, cumulant_ok)
    });
    let mut report = IndependenceReport { n, ..Default::default() };
    for (pi, (m_ok, c_ok)) in all.into_iter().zip(results) {
        if !m_ok {
            report.moment_failures.push(pi.clone());
        }
        if !c_ok {
            report.cumulant_failures.push(pi);
        }
    }
    Ok(report)
}

/// Σ_{π pair} φ_π(X, …, X)/|π|! before centering and normalization.
pub fn clt_moment_poly(engine: Engine, n: usize) -> Result<SymPolynomial> {
    let vars = vec![1; n];
    let mut acc = SymPolynomial::zero();
    if n % 2 == 1 {
        return Ok(acc);
    }
    if n == 0 {
        return Ok(SymPolynomial::one());
    }
    for pi in collect(n, PartitionClass::Pair)? {
        let w = Rational::from(rational::factorial(pi.len())).recip();
        acc += &engine.phi(&pi, &vars).scale(&w);
    }
    Ok(acc)
}

/// Limit moment of order n with φ(X) = 0 and φ(X²) = 1.
pub fn clt_moment(engine: Engine, n: usize) -> Result<Rational> {
    let p = clt_moment_poly(engine, n)?.substitute_with(&|s| match s {
        Symbol::Moment(w) | Symbol::Cumulant(w) | Symbol::PsiMoment(w) => match w.len() {
            1 => Some(SymPolynomial::zero()),
            2 => Some(SymPolynomial::one()),
            _ => None,
        },
        _ => None,
    });
    p.as_constant().ok_or_else(|| domain(format!("limit moment depends on higher moments: {p}")))
}

/// φ(X_1⋯X_n) − Σ_{π∈MP_n} K_{(π)}/|π|! for the monotone engine.
pub fn monotone_mc_residual(n: usize) -> Result<SymPolynomial> {
    let vars = default_vars(n);
    let engine = Engine::Monotone;
    let mut acc = engine.phi(&Osp::one(n)?, &vars);
    for pi in collect(n, PartitionClass::Monotone)? {
        let w = Rational::from(rational::factorial(pi.len())).recip();
        acc = &acc - &multiplicative_cumulant(&engine, &pi, &vars)?.scale(&w);
    }
    Ok(acc)
}
