use std::fmt;

use num_traits::Zero;

use crate::error::{domain, Result};
use crate::rational::{self, Rational};

/// c_1 z + c_2 z^2 + … + c_D z^D; no constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// `coeffs[k-1]` is the coefficient of z^k.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(domain("truncation order must be at least 1"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Accepts a full coefficient list starting at z^0, which must vanish.
    pub fn from_with_constant(coeffs: Vec<Rational>) -> Result<Self> {
        match coeffs.split_first() {
            Some((c0, rest)) if c0.is_zero() => Self::new(rest.to_vec()),
            Some(_) => Err(domain("series has a constant term")),
            None => Err(domain("empty series")),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of z^k, zero beyond the truncation order.
    pub fn coefficient(&self, k: usize) -> Rational {
        if k == 0 || k > self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[k - 1].clone()
        }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }
}

/// outer(inner(z)), i.e. "apply `inner` first, then `outer`", truncated at
/// the smaller order. With this convention Z_{f∗g} = compose(Z_f, Z_g).
pub fn compose(inner: &TruncatedSeries, outer: &TruncatedSeries) -> TruncatedSeries {
    let d = inner.order().min(outer.order());
    let mut out = vec![Rational::zero(); d + 1];
    // power[k] = inner^j truncated, starting at j = 1
    let mut power = vec![Rational::zero(); d + 1];
    for k in 1..=d {
        power[k] = inner.coefficient(k);
    }
    for j in 1..=d {
        let c = outer.coefficient(j);
        if !c.is_zero() {
            for k in 0..=d {
                out[k] += &c * &power[k];
            }
        }
        let mut next = vec![Rational::zero(); d + 1];
        for a in 1..=d {
            if power[a].is_zero() {
                continue;
            }
            for b in 1..=d - a {
                next[a + b] += &power[a] * inner.coefficient(b);
            }
        }
        power = next;
    }
    TruncatedSeries { coeffs: out.split_off(1) }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = rational::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if i == 0 {
                write!(f, "{abs}*z")?;
            } else {
                write!(f, "{abs}*z^{}", i + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
