//! Words over a finite alphabet, noncommutative polynomials and truncated
//! series, the Eulerian projector Π and three expansions of
//! log(e^{a_1} ⋯ e^{a_n}).

mod algebra;
mod cbh;
mod lie;

use std::collections::BTreeMap;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::rational::{self, Rational};

pub use algebra::{nct_commuting_split_check, nct_cumulant, nct_phi, NcAlgebra, RatMatrix, MAX_MATRIX_DIM};
pub use cbh::{
    cbh_cumulant, cbh_direct, cbh_goldberg, goldberg_word_coefficient, CbhRoute, DEFAULT_DEGREE_CAP,
};
pub use lie::{
    coproduct_k, dynkin, fl_dilation, pi_apply, pi_by_convolution, pi_k, pi_k_by_convolution, pi_projector,
};

/// Letters are small codes; 0 prints as `a`.
pub type Letter = u8;

pub const ALPHABET_LIMIT: usize = 26;

/// A word; ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| l as usize >= ALPHABET_LIMIT) {
            return Err(domain(format!("letter code {l} outside the alphabet")));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Letters at the given 1-based positions, in the order listed.
    pub fn select(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&p| self.0[p - 1]).collect())
    }

    /// All words of length `len` over letters 0..k, in lexicographic order.
    pub fn all(k: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..k as Letter).map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &l in &self.0 {
            write!(f, "{}", (b'a' + l) as char)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        let letters: Option<Vec<Letter>> =
            s.chars().map(|c| c.is_ascii_lowercase().then(|| c as u8 - b'a')).collect();
        letters.map(Word).ok_or_else(|| Error::Parse(format!("bad word {s:?}")))
    }
}

/// Finitely supported map Word → Rational without zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        NCPoly::term(w, Rational::one())
    }

    pub fn letter(l: Letter) -> Self {
        NCPoly::word(Word(vec![l]))
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Word::empty())
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Words of length ≤ d.
    pub fn truncate(&self, d: usize) -> Self {
        NCPoly { terms: self.terms.iter().filter(|(w, _)| w.len() <= d).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// The homogeneous part of degree d.
    pub fn component(&self, d: usize) -> Self {
        NCPoly { terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// Product with words longer than d dropped.
    pub fn mul_truncated(&self, other: &NCPoly, d: usize) -> Self {
        let mut out = NCPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() <= d {
                    out.add_term(u.concat(v), a * b);
                }
            }
        }
        out
    }

    pub fn bracket(&self, other: &NCPoly) -> Self {
        &(self * other) - &(other * self)
    }

    /// Linear extension of a map on words.
    pub fn map_words(&self, f: impl Fn(&Word) -> NCPoly) -> Self {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            for (v, d) in f(w).terms {
                out.add_term(v, c * d);
            }
        }
        out
    }

    /// Renames letters; `f` must be defined on every letter used.
    pub fn relabel(&self, f: impl Fn(Letter) -> Letter) -> Self {
        self.map_words(|w| NCPoly::word(Word(w.0.iter().map(|&l| f(l)).collect())))
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = rational::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_empty() {
                write!(f, "{}", rational::format(&abs))?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{} {w}", rational::format(&abs))?;
            }
        }
        Ok(())
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;

    fn add(self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;

    fn sub(self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;

    fn neg(self) -> NCPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;

    fn mul(self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

/// A noncommutative series known up to total degree `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    poly: NCPoly,
    bound: usize,
}

impl Series {
    pub fn new(poly: NCPoly, bound: usize) -> Self {
        Series { poly: poly.truncate(bound), bound }
    }

    pub fn poly(&self) -> &NCPoly {
        &self.poly
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn add(&self, other: &Series) -> Series {
        let bound = self.bound.min(other.bound);
        Series::new(&self.poly + &other.poly, bound)
    }

    pub fn mul(&self, other: &Series) -> Series {
        let bound = self.bound.min(other.bound);
        Series { poly: self.poly.mul_truncated(&other.poly, bound), bound }
    }

    pub fn exp(&self) -> Result<Series> {
        exp_trunc(&self.poly, self.bound).map(|p| Series::new(p, self.bound))
    }

    pub fn log(&self) -> Result<Series> {
        log_trunc(&self.poly, self.bound).map(|p| Series::new(p, self.bound))
    }
}

/// Σ_{k≤d} x^k/k!; x must have zero constant term.
pub fn exp_trunc(x: &NCPoly, d: usize) -> Result<NCPoly> {
    if !x.constant_term().is_zero() {
        return Err(domain("exp needs a series without constant term"));
    }
    let x = x.truncate(d);
    let mut acc = NCPoly::one();
    let mut power = NCPoly::one();
    for k in 1..=d {
        power = power.mul_truncated(&x, d).scale(&rational::ratio(1, k as i64));
        if power.is_zero() {
            break;
        }
        acc = &acc + &power;
    }
    Ok(acc)
}

/// Σ_{k≤d} (−1)^{k−1}(u−1)^k/k; u must have constant term 1.
pub fn log_trunc(u: &NCPoly, d: usize) -> Result<NCPoly> {
    if !u.constant_term().is_one() {
        return Err(domain("log needs a series with constant term 1"));
    }
    let y = &u.truncate(d) - &NCPoly::one();
    let mut acc = NCPoly::zero();
    let mut power = NCPoly::one();
    for k in 1..=d {
        power = power.mul_truncated(&y, d);
        if power.is_zero() {
            break;
        }
        acc = &acc + &power.scale(&(rational::sign(k - 1) * rational::ratio(1, k as i64)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
