//! Sparse commutative polynomials over exact rationals in indexed symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{parse_partition, OrderedSetPartition};
use crate::rational::{self, Rational};

/// Scalar indeterminates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    N,
    M,
    /// t_j, 1-based
    T(usize),
    /// scratch variable for derivatives at 0
    S,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Param(Param),
    /// m[w]: moment of the product of the labelled variables
    Moment(Vec<usize>),
    /// c[w]: free cumulant
    Cumulant(Vec<usize>),
    /// ψm[w]: second-state moment (c-monotone)
    PsiMoment(Vec<usize>),
    /// φ_π as an unevaluated partitioned moment
    PartMoment(OrderedSetPartition),
    /// K_π as an unevaluated cumulant
    PartCumulant(OrderedSetPartition),
}

pub(crate) fn label_string(labels: &[usize]) -> String {
    let compact = labels.iter().all(|&l| l < 10);
    let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    parts.join(if compact { "" } else { "," })
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Param(Param::N) => f.write_str("N"),
            Symbol::Param(Param::M) => f.write_str("M"),
            Symbol::Param(Param::T(j)) => write!(f, "t{j}"),
            Symbol::Param(Param::S) => f.write_str("s"),
            Symbol::Moment(w) => write!(f, "m[{}]", label_string(w)),
            Symbol::Cumulant(w) => write!(f, "c[{}]", label_string(w)),
            Symbol::PsiMoment(w) => write!(f, "ψm[{}]", label_string(w)),
            Symbol::PartMoment(pi) => write!(f, "phi_{}", pi.short_string()),
            Symbol::PartCumulant(pi) => write!(f, "K_{}", pi.short_string()),
        }
    }
}

/// Sorted (symbol, exponent) pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0.iter().find(|(x, _)| x == s).map_or(0, |(_, e)| *e)
    }

    fn without(&self, s: &Symbol) -> Monomial {
        Monomial(self.0.iter().filter(|(x, _)| x != s).cloned().collect())
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (s, e) in &self.0 {
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial(vec![(s, 1)]), Rational::one());
        p
    }

    pub fn param(p: Param) -> Self {
        Self::symbol(Symbol::Param(p))
    }

    pub fn moment(labels: &[usize]) -> Self {
        Self::symbol(Symbol::Moment(labels.to_vec()))
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms ordered by total degree, then monomial order.
    pub fn display_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(b.0)));
        t
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymPolynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// Coefficient of s^k, as a polynomial in the remaining symbols.
    pub fn coefficient_of(&self, s: &Symbol, k: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.exponent(s) == k {
                out.add_term(m.without(s), c.clone());
            }
        }
        out
    }

    pub fn derivative(&self, s: &Symbol) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e == 0 {
                continue;
            }
            let mut rest = m.without(s);
            if e > 1 {
                rest = rest.times(&Monomial(vec![(s.clone(), e - 1)]));
            }
            out.add_term(rest, c * rational::int(e as i64));
        }
        out
    }

    /// Replaces every symbol for which `f` returns Some.
    pub fn substitute_with(&self, f: &dyn Fn(&Symbol) -> Option<SymPolynomial>) -> Self {
        let mut cache: BTreeMap<Symbol, Option<SymPolynomial>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor = Self::constant(c.clone());
            for (s, e) in &m.0 {
                let image = cache.entry(s.clone()).or_insert_with(|| f(s));
                match image {
                    Some(p) => factor = &factor * &p.pow(*e),
                    None => kept = kept.times(&Monomial(vec![(s.clone(), *e)])),
                }
                if factor.is_zero() {
                    break;
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.times(&kept), fc);
            }
        }
        out
    }

    pub fn substitute(&self, s: &Symbol, value: &SymPolynomial) -> Self {
        self.substitute_with(&|x| (x == s).then(|| value.clone()))
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.terms.keys().flat_map(|m| m.0.iter().map(|(s, _)| s.clone())).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Some(c) if the polynomial is the constant c.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for SymPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_terms().into_iter().enumerate() {
            let neg = rational::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &SymPolynomial {
    type Output = SymPolynomial;

    fn add(self, rhs: &SymPolynomial) -> SymPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&SymPolynomial> for SymPolynomial {
    fn add_assign(&mut self, rhs: &SymPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub for &SymPolynomial {
    type Output = SymPolynomial;

    fn sub(self, rhs: &SymPolynomial) -> SymPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SymPolynomial {
    type Output = SymPolynomial;

    fn neg(self) -> SymPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &SymPolynomial {
    type Output = SymPolynomial;

    fn mul(self, rhs: &SymPolynomial) -> SymPolynomial {
        let mut out = SymPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

/// Minimal commutative-ring interface shared by rationals and polynomials,
/// so incidence functions can be evaluated at numeric or symbolic times.
pub trait Ring: Clone + Send + Sync {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn vanishes(&self) -> bool;

    fn scaled(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }

    /// t(t-1)…(t-k+1)/k!
    fn binomial(&self, k: usize) -> Self {
        let mut acc = Self::one_elem();
        for i in 0..k {
            acc = acc.times(&self.plus(&Self::from_rational(&rational::int(-(i as i64)))));
        }
        acc.scaled(&(Rational::one() / rational::big(&rational::factorial(k))))
    }
}

impl Ring for Rational {
    fn zero_elem() -> Self {
        Rational::zero()
    }
    fn one_elem() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for SymPolynomial {
    fn zero_elem() -> Self {
        SymPolynomial::zero()
    }
    fn one_elem() -> Self {
        SymPolynomial::one()
    }
    fn from_rational(r: &Rational) -> Self {
        SymPolynomial::constant(r.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

struct Cursor<'a> {
    rest: &'a str,
    whole: &'a str,
}

impl<'a> Cursor<'a> {
    fn fail(&self) -> Error {
        Error::Parse(format!("bad polynomial {:?} near {:?}", self.whole, self.rest))
    }

    fn eat(&mut self, prefix: &str) -> bool {
        match self.rest.strip_prefix(prefix) {
            Some(r) => {
                self.rest = r;
                true
            }
            None => false,
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let end = self.rest.find(|c: char| !f(c)).unwrap_or(self.rest.len());
        let (head, tail) = self.rest.split_at(end);
        self.rest = tail;
        head
    }

    fn number(&mut self) -> Result<usize> {
        self.take_while(|c| c.is_ascii_digit()).parse().map_err(|_| self.fail())
    }

    fn labels(&mut self) -> Result<Vec<usize>> {
        let inner = self.take_while(|c| c != ']');
        if !self.eat("]") || inner.is_empty() {
            return Err(self.fail());
        }
        let parts: Vec<&str> =
            if inner.contains(',') { inner.split(',').collect() } else { inner.split("").filter(|p| !p.is_empty()).collect() };
        parts.iter().map(|p| p.parse().map_err(|_| self.fail())).collect()
    }

    fn partition(&mut self) -> Result<OrderedSetPartition> {
        let text = self.take_while(|c| c.is_ascii_digit() || c == ',' || c == '|');
        parse_partition(text)
    }

    fn symbol(&mut self) -> Result<Symbol> {
        let s = if self.eat("ψm[") {
            Symbol::PsiMoment(self.labels()?)
        } else if self.eat("m[") {
            Symbol::Moment(self.labels()?)
        } else if self.eat("c[") {
            Symbol::Cumulant(self.labels()?)
        } else if self.eat("phi_") {
            Symbol::PartMoment(self.partition()?)
        } else if self.eat("K_") {
            Symbol::PartCumulant(self.partition()?)
        } else if self.eat("t") {
            Symbol::Param(Param::T(self.number()?))
        } else if self.eat("N") {
            Symbol::Param(Param::N)
        } else if self.eat("M") {
            Symbol::Param(Param::M)
        } else if self.eat("s") {
            Symbol::Param(Param::S)
        } else {
            return Err(self.fail());
        };
        Ok(s)
    }

    fn monomial(&mut self) -> Result<SymPolynomial> {
        let mut acc = SymPolynomial::one();
        while !self.rest.is_empty() {
            let s = self.symbol()?;
            let e = if self.eat("^") { self.number()? as u32 } else { 1 };
            acc = &acc * &SymPolynomial::symbol(s).pow(e);
        }
        Ok(acc)
    }
}

fn parse_term(text: &str, whole: &str) -> Result<SymPolynomial> {
    let mut cur = Cursor { rest: text, whole };
    if cur.rest.starts_with(|c: char| c.is_ascii_digit()) {
        let coeff = rational::parse(cur.take_while(|c| c != ' '))?;
        if cur.rest.is_empty() {
            return Ok(SymPolynomial::constant(coeff));
        }
        if !cur.eat(" ") {
            return Err(cur.fail());
        }
        return Ok(cur.monomial()?.scale(&coeff));
    }
    cur.monomial()
}

/// Reads the `Display` form back, e.g. "m[12] - 1/2 m[1]m[2]".
impl FromStr for SymPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let whole = s.trim();
        if whole == "0" {
            return Ok(SymPolynomial::zero());
        }
        let (mut negative, mut rest) = match whole.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, whole),
        };
        let mut acc = SymPolynomial::zero();
        loop {
            let plus = rest.find(" + ");
            let minus = rest.find(" - ");
            let cut = match (plus, minus) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            let (head, next) = match cut {
                Some(i) => (&rest[..i], Some((rest[i..].starts_with(" - "), &rest[i + 3..]))),
                None => (rest, None),
            };
            if head.is_empty() {
                return Err(Error::Parse(format!("bad polynomial {whole:?}")));
            }
            let term = parse_term(head, whole)?;
            acc = if negative { &acc - &term } else { &acc + &term };
            match next {
                Some((neg, r)) => {
                    negative = neg;
                    rest = r;
                }
                None => return Ok(acc),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn n() -> SymPolynomial {
        SymPolynomial::param(Param::N)
    }

    #[test]
    fn arithmetic_and_display() {
        let x = SymPolynomial::moment(&[1, 2]);
        let y = &SymPolynomial::moment(&[1]) * &SymPolynomial::moment(&[2]);
        let k = &x - &y.scale(&ratio(1, 2));
        assert_eq!(k.to_string(), "m[12] - 1/2 m[1]m[2]");
        assert!((&k - &k).is_zero());
        assert_eq!((&x * &x).to_string(), "m[12]^2");
        assert_eq!(SymPolynomial::constant(ratio(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn display_parses_back() {
        let pi: OrderedSetPartition = "1,3|2".parse().unwrap();
        let k = SymPolynomial::symbol(Symbol::PartCumulant(pi.clone()));
        let p = &(&SymPolynomial::moment(&[1, 12]).pow(2) - &SymPolynomial::symbol(Symbol::PsiMoment(vec![2])))
            + &(&k.scale(&ratio(-5, 3)) * &SymPolynomial::param(Param::T(11)));
        let p = &(&p + &SymPolynomial::symbol(Symbol::PartMoment(pi)).scale(&int(2))) + &SymPolynomial::constant(ratio(7, 2));
        let back: SymPolynomial = p.to_string().parse().unwrap();
        assert_eq!(back, p);
        assert_eq!("0".parse::<SymPolynomial>().unwrap(), SymPolynomial::zero());
        assert!("m[1] +".parse::<SymPolynomial>().is_err());
        assert!("q[1]".parse::<SymPolynomial>().is_err());
    }

    #[test]
    fn binomial_in_n() {
        let b = n().binomial(2);
        assert_eq!(b.coefficient_of(&Symbol::Param(Param::N), 2).as_constant(), Some(ratio(1, 2)));
        assert_eq!(b.coefficient_of(&Symbol::Param(Param::N), 1).as_constant(), Some(ratio(-1, 2)));
        assert_eq!(b.substitute(&Symbol::Param(Param::N), &SymPolynomial::constant(int(4))).as_constant(), Some(int(6)));
    }

    #[test]
    fn derivative_and_substitution() {
        let p = &n().pow(3) + &n().scale(&int(2));
        let d = p.derivative(&Symbol::Param(Param::N));
        assert_eq!(d, &n().pow(2).scale(&int(3)) + &SymPolynomial::constant(int(2)));
        let zero = p.substitute(&Symbol::Param(Param::N), &SymPolynomial::zero());
        assert!(zero.is_zero());
    }
}
