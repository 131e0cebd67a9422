//! Cumulants of the noncommutative tensor system over any associative
//! algebra with rational scalars.

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::partitions::{collect, OrderedSetPartition as Osp, PartitionClass};
use crate::rational::{self, Rational};

use super::NCPoly;

pub trait NcAlgebra: Clone + Send + Sync {
    /// Additive identity of the same shape as `self`.
    fn zero_like(&self) -> Self;
    /// Multiplicative identity of the same shape as `self`.
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;
}

impl NcAlgebra for NCPoly {
    fn zero_like(&self) -> Self {
        NCPoly::zero()
    }
    fn one_like(&self) -> Self {
        NCPoly::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

pub const MAX_MATRIX_DIM: usize = 4;

/// Dense square rational matrix, at most 4×4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(dim: usize, entries: Vec<Rational>) -> Result<Self> {
        if dim == 0 {
            return Err(domain("matrix dimension 0"));
        }
        if dim > MAX_MATRIX_DIM {
            return Err(Error::Bound { what: "matrix dimension", value: dim, limit: MAX_MATRIX_DIM });
        }
        if entries.len() != dim * dim {
            return Err(Error::SizeMismatch(entries.len(), dim * dim));
        }
        Ok(RatMatrix { dim, entries })
    }

    pub fn from_ints(dim: usize, entries: &[i64]) -> Result<Self> {
        RatMatrix::new(dim, entries.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn diagonal(values: &[Rational]) -> Result<Self> {
        let dim = values.len();
        let mut entries = vec![Rational::zero(); dim * dim];
        for (i, v) in values.iter().enumerate() {
            entries[i * dim + i] = v.clone();
        }
        RatMatrix::new(dim, entries)
    }

    /// diag(a, b) as a block matrix.
    pub fn block_diagonal(a: &RatMatrix, b: &RatMatrix) -> Result<Self> {
        let dim = a.dim + b.dim;
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                entries[i * dim + j] = a.get(i, j).clone();
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                entries[(a.dim + i) * dim + a.dim + j] = b.get(i, j).clone();
            }
        }
        RatMatrix::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl NcAlgebra for RatMatrix {
    fn zero_like(&self) -> Self {
        RatMatrix { dim: self.dim, entries: vec![Rational::zero(); self.dim * self.dim] }
    }
    fn one_like(&self) -> Self {
        let mut m = self.zero_like();
        for i in 0..self.dim {
            m.entries[i * self.dim + i] = Rational::one();
        }
        m
    }
    fn plus(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        RatMatrix { dim: self.dim, entries }
    }
    fn times(&self, other: &Self) -> Self {
        let d = self.dim;
        let mut entries = vec![Rational::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.get(k, j);
                }
            }
        }
        RatMatrix { dim: d, entries }
    }
    fn scaled(&self, r: &Rational) -> Self {
        RatMatrix { dim: self.dim, entries: self.entries.iter().map(|x| x * r).collect() }
    }
}

/// Ordered products X_S for every subset S of positions, indexed by bitmask.
fn subset_products<A: NcAlgebra>(xs: &[A]) -> Vec<A> {
    let n = xs.len();
    let mut out = Vec::with_capacity(1 << n);
    out.push(xs[0].one_like());
    for mask in 1usize..(1 << n) {
        // drop the highest element: X_S = X_{S∖max} X_max
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        out.push(out[rest].times(&xs[top]));
    }
    out
}

fn mask_of(block: &[usize]) -> usize {
    block.iter().fold(0, |m, &e| m | 1 << (e - 1))
}

/// φ_π(X_1, …, X_n) = X_{P_1} X_{P_2} ⋯ X_{P_k}.
pub fn nct_phi<A: NcAlgebra>(pi: &Osp, xs: &[A]) -> Result<A> {
    if xs.len() != pi.n() {
        return Err(Error::SizeMismatch(xs.len(), pi.n()));
    }
    let mut acc = xs[0].one_like();
    for b in pi.blocks() {
        let mut p = xs[0].one_like();
        for &e in b {
            p = p.times(&xs[e - 1]);
        }
        acc = acc.times(&p);
    }
    Ok(acc)
}

/// K_n = Σ_{π∈OP_n} (−1)^{|π|−1}/|π| · X_{P_1} ⋯ X_{P_{|π|}}.
pub fn nct_cumulant<A: NcAlgebra>(xs: &[A]) -> Result<A> {
    let n = xs.len();
    if n == 0 {
        return Err(domain("cumulant of an empty sequence"));
    }
    let products = subset_products(xs);
    let weights: Vec<Rational> = (0..=n).map(|k| if k == 0 { Rational::zero() } else { rational::sign(k - 1) * rational::ratio(1, k as i64) }).collect();
    let mut acc = xs[0].zero_like();
    for pi in collect(n, PartitionClass::All)? {
        let mut term = products[mask_of(&pi.blocks()[0])].clone();
        for b in &pi.blocks()[1..] {
            term = term.times(&products[mask_of(b)]);
        }
        acc = acc.plus(&term.scaled(&weights[pi.len()]));
    }
    Ok(acc)
}

fn sample(seed: usize) -> RatMatrix {
    // fixed noncommuting 2×2 entries
    let e = |k: usize| ((seed * 7 + k * 5 + 3) % 9) as i64 - 4;
    RatMatrix::from_ints(2, &[e(0), e(1) + 1, e(2), e(3)]).expect("2×2")
}

/// K_n(X_1, …, X_n) for 4×4 matrices where X_i = A_i ⊕ c_i·1 on `split`
/// and X_i = d_i·1 ⊕ B_i off it, so the two families commute with each
/// other but not internally. Returns whether K_n vanishes.
pub fn nct_commuting_split_check(n: usize, split: &[usize]) -> Result<bool> {
    if n < 2 {
        return Err(domain("need n ≥ 2"));
    }
    if split.is_empty() || split.len() >= n || split.iter().any(|&i| i == 0 || i > n) {
        return Err(domain("split must be a nonempty proper subset of [n]"));
    }
    let scalar = |k: usize| {
        RatMatrix::diagonal(&[rational::int(k as i64 + 2), rational::int(k as i64 + 2)]).expect("2×2")
    };
    let xs: Vec<RatMatrix> = (1..=n)
        .map(|i| {
            if split.contains(&i) {
                RatMatrix::block_diagonal(&sample(i), &scalar(i))
            } else {
                RatMatrix::block_diagonal(&scalar(i), &sample(i + n))
            }
        })
        .collect::<Result<_>>()?;
    Ok(nct_cumulant(&xs)?.is_zero())
}
