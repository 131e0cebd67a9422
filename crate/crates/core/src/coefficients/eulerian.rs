use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{self, Rational};

/// Dense univariate polynomial in x; `coeffs[a]` multiplies x^a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    /// x^a (1+x)^b
    pub fn beta_monomial(a: usize, b: usize) -> Self {
        let mut c = vec![Rational::zero(); a + b + 1];
        for k in 0..=b {
            c[a + k] = rational::big(&rational::binomial(b, k));
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return UniPoly::new(Vec::new());
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        UniPoly::new((0..len).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (a, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            parts.push(match a {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{a}"),
            });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Stirling numbers of the second kind.
pub fn stirling2(q: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for n in 1..=q {
        for j in (1..=k.min(n)).rev() {
            row[j] = &row[j] * BigInt::from(j) + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

/// P_q(x) = Σ_k k!·S(q,k)·x^{k−1}.
pub fn eulerian_poly(q: usize) -> UniPoly {
    UniPoly::new((1..=q).map(|k| rational::big(&(rational::factorial(k) * stirling2(q, k)))).collect())
}

/// ∫_{−1}^0 p(x) dx, termwise: ∫ x^a = (−1)^a/(a+1).
pub fn integrate_unit(p: &UniPoly) -> Rational {
    p.coeffs
        .iter()
        .enumerate()
        .map(|(a, c)| c * rational::sign(a) / rational::int(a as i64 + 1))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// ∫_{−1}^0 x^a (1+x)^b dx = (−1)^a a! b! / (a+b+1)!.
pub fn beta_integral(a: usize, b: usize) -> Rational {
    rational::sign(a) * rational::big(&(rational::factorial(a) * rational::factorial(b)))
        / rational::big(&rational::factorial(a + b + 1))
}
