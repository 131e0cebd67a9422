//! log(e^{a_1} ⋯ e^{a_n}) by formal series, by NCT cumulants of padded
//! letter sequences, and by the Goldberg integral for each monomial.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::coefficients::{eulerian_poly, integrate_unit, UniPoly};
use crate::error::{domain, Error, Result};
use crate::par::{self, Execution};
use crate::rational::{self, Rational};

use super::{exp_trunc, log_trunc, nct_cumulant, Letter, NCPoly, Word};

/// Degree accepted without an explicit override.
pub const DEFAULT_DEGREE_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CbhRoute {
    Direct,
    Cumulant,
    Goldberg,
}

impl CbhRoute {
    pub const ALL: [CbhRoute; 3] = [CbhRoute::Direct, CbhRoute::Cumulant, CbhRoute::Goldberg];

    pub fn name(self) -> &'static str {
        match self {
            CbhRoute::Direct => "direct",
            CbhRoute::Cumulant => "cumulant",
            CbhRoute::Goldberg => "goldberg",
        }
    }

    pub fn expand(self, letters: &[Letter], degree: usize, exec: Execution) -> Result<NCPoly> {
        match self {
            CbhRoute::Direct => cbh_direct(letters, degree),
            CbhRoute::Cumulant => cbh_cumulant(letters, degree, exec),
            CbhRoute::Goldberg => cbh_goldberg(letters, degree),
        }
    }
}

impl fmt::Display for CbhRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CbhRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CbhRoute::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown route '{s}'")))
    }
}

fn check_letters(letters: &[Letter], degree: usize) -> Result<()> {
    if letters.is_empty() {
        return Err(domain("no letters"));
    }
    if degree == 0 {
        return Err(domain("degree 0"));
    }
    let mut seen = letters.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != letters.len() {
        return Err(domain("letters must be distinct"));
    }
    Word::new(letters.to_vec()).map(|_| ())
}

/// Multiplies the truncated exponentials and takes the truncated log.
pub fn cbh_direct(letters: &[Letter], degree: usize) -> Result<NCPoly> {
    check_letters(letters, degree)?;
    let mut prod = NCPoly::one();
    for &l in letters {
        prod = prod.mul_truncated(&exp_trunc(&NCPoly::letter(l), degree)?, degree);
    }
    log_trunc(&prod, degree)
}

/// All (p_1, …, p_n) ≠ 0 with Σp_i ≤ d.
fn multi_indices(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            let used: usize = p.iter().sum();
            for k in 0..=d - used {
                let mut q = p.clone();
                q.push(k);
                next.push(q);
            }
        }
        out = next;
    }
    out.retain(|p| p.iter().any(|&k| k > 0));
    out
}

/// Σ_{p≠0} K_{|p|}(a_1^{×p_1}, …, a_n^{×p_n}) / (p_1! ⋯ p_n!).
pub fn cbh_cumulant(letters: &[Letter], degree: usize, exec: Execution) -> Result<NCPoly> {
    check_letters(letters, degree)?;
    let indices = multi_indices(letters.len(), degree);
    let terms = par::map(exec, &indices, |p| -> Result<NCPoly> {
        let mut xs = Vec::new();
        let mut denom = Rational::from_integer(1.into());
        for (&l, &k) in letters.iter().zip(p) {
            xs.extend(std::iter::repeat_with(|| NCPoly::letter(l)).take(k));
            denom *= Rational::from(rational::factorial(k));
        }
        Ok(nct_cumulant(&xs)?.scale(&denom.recip()))
    });
    let mut acc = NCPoly::zero();
    for t in terms {
        acc = &acc + &t?;
    }
    Ok(acc)
}

/// Coefficient of a_{i_1}^{q_1} ⋯ a_{i_m}^{q_m}:
/// (1/Πq_j!) ∫_{−1}^0 x^{des(i)} (1+x)^{asc(i)} Π P_{q_j}(x) dx.
pub fn goldberg_word_coefficient(monomial: &[(usize, usize)]) -> Result<Rational> {
    if monomial.is_empty() {
        return Err(domain("empty monomial"));
    }
    if monomial.iter().any(|&(_, q)| q == 0) {
        return Err(domain("exponents must be positive"));
    }
    if monomial.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(domain("adjacent indices must differ"));
    }
    let des = monomial.windows(2).filter(|w| w[0].0 > w[1].0).count();
    let asc = monomial.windows(2).filter(|w| w[0].0 < w[1].0).count();
    let mut integrand = UniPoly::beta_monomial(des, asc);
    let mut denom = Rational::from_integer(1.into());
    for &(_, q) in monomial {
        integrand = &integrand * &eulerian_poly(q);
        denom *= Rational::from(rational::factorial(q));
    }
    Ok(integrate_unit(&integrand) / denom)
}

/// Maximal runs of equal letters as (index, length).
fn runs(indices: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &i in indices {
        match out.last_mut() {
            Some((j, q)) if *j == i => *q += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// Every monomial up to the degree, each with its Goldberg coefficient.
pub fn cbh_goldberg(letters: &[Letter], degree: usize) -> Result<NCPoly> {
    check_letters(letters, degree)?;
    let mut acc = NCPoly::zero();
    for d in 1..=degree {
        for w in Word::all(letters.len(), d) {
            let indices: Vec<usize> = w.letters().iter().map(|&l| l as usize + 1).collect();
            let c = goldberg_word_coefficient(&runs(&indices))?;
            if !c.is_zero() {
                let word = Word::new(indices.iter().map(|&i| letters[i - 1]).collect())?;
                acc.add_term(word, c);
            }
        }
    }
    Ok(acc)
}
