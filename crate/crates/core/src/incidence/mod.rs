//! Incidence functions on OP_n and their convolutions.

mod series;

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::partitions::{OrderedSetPartition as Osp, SetPartition};
use crate::poly::Ring;
use crate::rational::{self, Rational};

pub use series::TruncatedSeries;

fn comparable(sigma: &Osp, pi: &Osp) -> Result<()> {
    if sigma.leq(pi)? {
        Ok(())
    } else {
        Err(Error::NotComparable(sigma.to_string(), pi.to_string()))
    }
}

fn block_counts(sigma: &Osp, pi: &Osp) -> Result<Vec<usize>> {
    if !sigma.underlying().leq(&pi.underlying())? {
        return Err(Error::NotComparable(sigma.to_string(), pi.to_string()));
    }
    Ok(pi.blocks().iter().map(|b| sigma.restricted_len(b)).collect())
}

/// [σ:π] = Π_P #(σ⌋P); requires σ̄ ≤ π̄.
pub fn bracket(sigma: &Osp, pi: &Osp) -> Result<BigInt> {
    Ok(block_counts(sigma, pi)?.into_iter().map(BigInt::from).product())
}

/// [σ:π]! = Π_P #(σ⌋P)!; requires σ̄ ≤ π̄.
pub fn bracket_factorial(sigma: &Osp, pi: &Osp) -> Result<BigInt> {
    Ok(block_counts(sigma, pi)?.into_iter().map(rational::factorial).product())
}

pub fn zeta_tilde(sigma: &Osp, pi: &Osp) -> Result<Rational> {
    comparable(sigma, pi)?;
    Ok(zeta_tilde_unchecked(sigma, pi))
}

pub fn mu_tilde(sigma: &Osp, pi: &Osp) -> Result<Rational> {
    comparable(sigma, pi)?;
    Ok(mu_tilde_unchecked(sigma, pi))
}

pub(crate) fn zeta_tilde_unchecked(sigma: &Osp, pi: &Osp) -> Rational {
    let f: BigInt = sigma.interval_type_unchecked(pi).into_iter().map(rational::factorial).product();
    Rational::new(BigInt::one(), f)
}

pub(crate) fn mu_tilde_unchecked(sigma: &Osp, pi: &Osp) -> Rational {
    let b: BigInt = sigma.interval_type_unchecked(pi).into_iter().map(BigInt::from).product();
    rational::sign(sigma.len() - pi.len()) / rational::big(&b)
}

/// Möbius function of SP_n under refinement: Π (−1)^{k−1}(k−1)!.
pub fn mu_set_partitions(sigma: &SetPartition, pi: &SetPartition) -> Result<Rational> {
    if !sigma.leq(pi)? {
        return Err(Error::NotComparable(sigma.to_string(), pi.to_string()));
    }
    let mut acc = Rational::one();
    for b in pi.blocks() {
        let k = sigma.blocks().iter().filter(|s| b.contains(&s[0])).count();
        acc *= rational::sign(k - 1) * rational::big(&rational::factorial(k - 1));
    }
    Ok(acc)
}

/// β_t(σ,π) = Π_i binom(t, #(σ⌋P_i)).
pub fn beta<R: Ring>(t: &R, sigma: &Osp, pi: &Osp) -> Result<R> {
    let ts = vec![t.clone(); pi.len()];
    beta_vec(&ts, sigma, pi)
}

/// β_t̲(σ,π) = Π_i binom(t_i, #(σ⌋P_i)), one t_i per block of π.
pub fn beta_vec<R: Ring>(ts: &[R], sigma: &Osp, pi: &Osp) -> Result<R> {
    comparable(sigma, pi)?;
    arity(ts.len(), pi.len())?;
    Ok(beta_vec_unchecked(ts, sigma, pi))
}

pub(crate) fn beta_vec_unchecked<R: Ring>(ts: &[R], sigma: &Osp, pi: &Osp) -> R {
    let k = sigma.interval_type_unchecked(pi);
    let mut acc = R::one_elem();
    for (t, k) in ts.iter().zip(k) {
        acc = acc.times(&t.binomial(k));
        if acc.vanishes() {
            break;
        }
    }
    acc
}

/// γ_t̲(σ,ρ,π) = Π_i Π_{G∈γ_i} binom(t_i, |G|), where (γ_i) = Ψ(ρ).
pub fn gamma_vec<R: Ring>(ts: &[R], sigma: &Osp, rho: &Osp, pi: &Osp) -> Result<R> {
    comparable(sigma, rho)?;
    comparable(rho, pi)?;
    arity(ts.len(), pi.len())?;
    Ok(quasi_array_value(&|i, k| ts[i - 1].binomial(k), sigma, rho, pi))
}

fn arity(got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Domain(format!("expected {want} parameters, got {got}")));
    }
    Ok(())
}

fn quasi_array_value<R: Ring>(f: &dyn Fn(usize, usize) -> R, sigma: &Osp, rho: &Osp, pi: &Osp) -> R {
    let per_rho = sigma.interval_type_unchecked(rho);
    let mut acc = R::one_elem();
    for (g, k) in rho.blocks().iter().zip(per_rho) {
        acc = acc.times(&f(pi.block_of(g[0]), k));
    }
    acc
}

/// A function on comparable pairs σ ≤ π.
pub trait PairFunction<R>: Sync {
    fn value(&self, lower: &Osp, upper: &Osp) -> R;
}

impl<R, F: Fn(&Osp, &Osp) -> R + Sync> PairFunction<R> for F {
    fn value(&self, lower: &Osp, upper: &Osp) -> R {
        self(lower, upper)
    }
}

/// A function of triples σ ≤ ρ ≤ π.
pub trait TriFunction<R>: Sync {
    fn value(&self, lower: &Osp, middle: &Osp, upper: &Osp) -> R;
}

/// Adapted function: the value depends only on the interval type, so it
/// is memoized by type.
pub struct AdaptedFunction<R> {
    family: Box<dyn Fn(&[usize]) -> R + Send + Sync>,
    memo: Mutex<HashMap<Vec<usize>, R>>,
}

impl<R: Ring> AdaptedFunction<R> {
    pub fn new(family: impl Fn(&[usize]) -> R + Send + Sync + 'static) -> Self {
        AdaptedFunction { family: Box::new(family), memo: Mutex::new(HashMap::new()) }
    }

    pub fn at_type(&self, k: &[usize]) -> R {
        if let Some(v) = self.memo.lock().expect("memo poisoned").get(k) {
            return v.clone();
        }
        let v = (self.family)(k);
        self.memo.lock().expect("memo poisoned").insert(k.to_vec(), v.clone());
        v
    }

    pub fn eval(&self, sigma: &Osp, pi: &Osp) -> Result<R> {
        comparable(sigma, pi)?;
        Ok(self.at_type(&sigma.interval_type_unchecked(pi)))
    }
}

impl<R: Ring> PairFunction<R> for AdaptedFunction<R> {
    fn value(&self, lower: &Osp, upper: &Osp) -> R {
        self.at_type(&lower.interval_type_unchecked(upper))
    }
}

/// Multiplicative function given by its defining sequence f_1, f_2, ….
pub struct MultiplicativeFunction<R> {
    seq: Box<dyn Fn(usize) -> R + Send + Sync>,
}

impl<R: Ring + 'static> MultiplicativeFunction<R> {
    pub fn new(seq: impl Fn(usize) -> R + Send + Sync + 'static) -> Self {
        MultiplicativeFunction { seq: Box::new(seq) }
    }

    pub fn term(&self, k: usize) -> R {
        (self.seq)(k)
    }

    pub fn beta(t: R) -> Self {
        Self::new(move |k| t.binomial(k))
    }

    pub fn eval(&self, sigma: &Osp, pi: &Osp) -> Result<R> {
        comparable(sigma, pi)?;
        Ok(self.value(sigma, pi))
    }

    /// The same function as an adapted family.
    pub fn into_adapted(self) -> AdaptedFunction<R> {
        AdaptedFunction::new(move |k| k.iter().fold(R::one_elem(), |acc, &k| acc.times(&(self.seq)(k))))
    }
}

impl MultiplicativeFunction<Rational> {
    pub fn zeta_tilde() -> Self {
        Self::new(|k| Rational::one() / rational::big(&rational::factorial(k)))
    }

    pub fn mu_tilde() -> Self {
        Self::new(|k| rational::sign(k - 1) / rational::int(k as i64))
    }
}

impl<R: Ring> PairFunction<R> for MultiplicativeFunction<R> {
    fn value(&self, lower: &Osp, upper: &Osp) -> R {
        let mut acc = R::one_elem();
        for k in lower.interval_type_unchecked(upper) {
            acc = acc.times(&(self.seq)(k));
        }
        acc
    }
}

/// Quasi-multiplicative function given by its defining array f_{jk}
/// (row j = block index of π, order k).
pub struct QuasiMultiplicativeFunction<R> {
    array: Box<dyn Fn(usize, usize) -> R + Send + Sync>,
}

impl<R: Ring + 'static> QuasiMultiplicativeFunction<R> {
    pub fn new(array: impl Fn(usize, usize) -> R + Send + Sync + 'static) -> Self {
        QuasiMultiplicativeFunction { array: Box::new(array) }
    }

    /// γ_t̲ with the given row parameters.
    pub fn gamma(ts: Vec<R>) -> Self {
        Self::new(move |j, k| ts[j - 1].binomial(k))
    }

    pub fn eval(&self, sigma: &Osp, rho: &Osp, pi: &Osp) -> Result<R> {
        comparable(sigma, rho)?;
        comparable(rho, pi)?;
        Ok(self.value(sigma, rho, pi))
    }
}

impl<R: Ring> TriFunction<R> for QuasiMultiplicativeFunction<R> {
    fn value(&self, lower: &Osp, middle: &Osp, upper: &Osp) -> R {
        quasi_array_value(&*self.array, lower, middle, upper)
    }
}

/// f(σ,ρ,π) := g(σ,ρ) for a pair function g.
pub struct Lifted<F>(pub F);

impl<R, F: PairFunction<R>> TriFunction<R> for Lifted<F> {
    fn value(&self, lower: &Osp, middle: &Osp, _upper: &Osp) -> R {
        self.0.value(lower, middle)
    }
}

/// δ(σ,π) = [σ = π].
pub fn delta(sigma: &Osp, pi: &Osp) -> Rational {
    if sigma == pi {
        Rational::one()
    } else {
        Rational::from_integer(0.into())
    }
}

/// (f∗g)(σ,π) = Σ_{σ≤ρ≤π} f(σ,ρ) g(ρ,π).
pub fn convolve<R: Ring>(f: &impl PairFunction<R>, g: &impl PairFunction<R>, sigma: &Osp, pi: &Osp) -> Result<R> {
    comparable(sigma, pi)?;
    let mut acc = R::zero_elem();
    for rho in sigma.interval_unchecked(pi) {
        acc = acc.plus(&f.value(sigma, &rho).times(&g.value(&rho, pi)));
    }
    Ok(acc)
}

/// (f⊛g)(σ,π) = Σ_{σ≤ρ≤π} f(σ,ρ,π) g(ρ,π).
pub fn convolve_tri<R: Ring>(
    f: &impl TriFunction<R>,
    g: &impl PairFunction<R>,
    sigma: &Osp,
    pi: &Osp,
) -> Result<R> {
    comparable(sigma, pi)?;
    let mut acc = R::zero_elem();
    for rho in sigma.interval_unchecked(pi) {
        acc = acc.plus(&f.value(sigma, &rho, pi).times(&g.value(&rho, pi)));
    }
    Ok(acc)
}

/// Z_f truncated at order D.
pub fn gen_series(f: &MultiplicativeFunction<Rational>, d: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::new((1..=d).map(|k| f.term(k)).collect())
}

pub use series::compose;

#[cfg(test)]
mod tests;
