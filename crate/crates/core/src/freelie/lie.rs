//! The Eulerian projector Π, its convolution powers and the Dynkin map.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{domain, Result};
use crate::partitions::{collect, MultisetWord, OrderedSetPartition as Osp, PartitionClass};
use crate::rational::{self, Rational};

use super::{NCPoly, Word};

fn weight(k: usize) -> Rational {
    rational::sign(k - 1) * rational::ratio(1, k as i64)
}

fn inv_factorial(k: usize) -> Rational {
    Rational::from(rational::factorial(k)).recip()
}

fn block_word(w: &Word, pi: &Osp) -> Word {
    let mut out = Word::empty();
    for b in pi.blocks() {
        out = out.concat(&w.select(b));
    }
    out
}

/// Π(a_1⋯a_n) = Σ_{π∈OP_n} (−1)^{|π|−1}/|π| · a_{P_1} ⋯ a_{P_{|π|}}.
pub fn pi_projector(w: &Word) -> Result<NCPoly> {
    if w.is_empty() {
        return Err(domain("Π is not defined on the empty word"));
    }
    let mut acc = NCPoly::zero();
    for pi in collect(w.len(), PartitionClass::All)? {
        acc.add_term(block_word(w, &pi), weight(pi.len()));
    }
    Ok(acc)
}

/// Linear extension of Π; rejects a nonzero constant term.
pub fn pi_apply(p: &NCPoly) -> Result<NCPoly> {
    if !p.constant_term().is_zero() {
        return Err(domain("Π is not defined on the empty word"));
    }
    let mut memo: HashMap<Word, NCPoly> = HashMap::new();
    for (w, _) in p.terms() {
        if !memo.contains_key(w) {
            memo.insert(w.clone(), pi_projector(w)?);
        }
    }
    Ok(p.map_words(|w| memo[w].clone()))
}

/// Π_k(a_1⋯a_n) = (1/k!) Σ_{π∈OP_n, |π|=k} Π(a_{P_1}) ⋯ Π(a_{P_k}).
pub fn pi_k(w: &Word, k: usize) -> Result<NCPoly> {
    if k == 0 || k > w.len() {
        return Err(domain(format!("k = {k} outside 1..={}", w.len())));
    }
    let mut memo: HashMap<Vec<usize>, NCPoly> = HashMap::new();
    let mut acc = NCPoly::zero();
    for pi in collect(w.len(), PartitionClass::All)? {
        if pi.len() != k {
            continue;
        }
        let mut term = NCPoly::one();
        for b in pi.blocks() {
            if !memo.contains_key(b) {
                memo.insert(b.clone(), pi_projector(&w.select(b))?);
            }
            term = &term * &memo[b];
        }
        acc = &acc + &term;
    }
    Ok(acc.scale(&inv_factorial(k)))
}

/// δ_k(a_1⋯a_n) as its k^n tensor terms: every letter picks a slot.
pub fn coproduct_k(w: &Word, k: usize) -> Result<Vec<Vec<Word>>> {
    if k == 0 {
        return Err(domain("k = 0"));
    }
    let mut terms: Vec<Vec<Vec<u8>>> = vec![vec![Vec::new(); k]];
    for &l in w.letters() {
        let mut next = Vec::with_capacity(terms.len() * k);
        for t in &terms {
            for slot in 0..k {
                let mut t = t.clone();
                t[slot].push(l);
                next.push(t);
            }
        }
        terms = next;
    }
    terms
        .into_iter()
        .map(|t| t.into_iter().map(Word::new).collect::<Result<Vec<_>>>())
        .collect()
}

/// Σ_k (−1)^{k−1}/k (Id−ε)^{∗k}(w) evaluated through δ_k.
pub fn pi_by_convolution(w: &Word) -> Result<NCPoly> {
    if w.is_empty() {
        return Err(domain("Π is not defined on the empty word"));
    }
    let mut acc = NCPoly::zero();
    for k in 1..=w.len() {
        for t in coproduct_k(w, k)? {
            if t.iter().any(Word::is_empty) {
                continue;
            }
            let word = t.iter().fold(Word::empty(), |a, x| a.concat(x));
            acc.add_term(word, weight(k));
        }
    }
    Ok(acc)
}

/// (1/k!) Π^{∗k}(w) = (1/k!) conc ∘ Π^{⊗k} ∘ δ_k(w), with Π from the
/// convolution route and Π(1) = 0.
pub fn pi_k_by_convolution(w: &Word, k: usize) -> Result<NCPoly> {
    if k == 0 {
        return Err(domain("k = 0"));
    }
    let mut memo: HashMap<Word, NCPoly> = HashMap::new();
    let mut acc = NCPoly::zero();
    for t in coproduct_k(w, k)? {
        if t.iter().any(Word::is_empty) {
            continue;
        }
        let mut term = NCPoly::one();
        for x in &t {
            if !memo.contains_key(x) {
                memo.insert(x.clone(), pi_by_convolution(x)?);
            }
            term = &term * &memo[x];
        }
        acc = &acc + &term;
    }
    Ok(acc.scale(&inv_factorial(k)))
}

fn right_nested(w: &[u8]) -> NCPoly {
    let last = NCPoly::letter(w[w.len() - 1]);
    w[..w.len() - 1].iter().rev().fold(last, |acc, &l| NCPoly::letter(l).bracket(&acc))
}

/// a_1⋯a_n ↦ [a_1,[a_2,[…,[a_{n−1},a_n]…]]]/n, extended linearly; the
/// empty word maps to 0.
pub fn dynkin(p: &NCPoly) -> NCPoly {
    p.map_words(|w| {
        if w.is_empty() {
            NCPoly::zero()
        } else {
            right_nested(w.letters()).scale(&rational::ratio(1, w.len() as i64))
        }
    })
}

/// φ̃((N.a_1) ⋯ (N.a_n)) = Σ_{i∈[N]^n} φ_{κ(i)}(a_1, …, a_n) by direct
/// expansion.
pub fn fl_dilation(w: &Word, big_n: usize) -> Result<NCPoly> {
    let n = w.len();
    let mut acc = NCPoly::zero();
    if n == 0 {
        return Ok(NCPoly::one());
    }
    if big_n == 0 {
        return Ok(acc);
    }
    let mut idx = vec![1usize; n];
    loop {
        let kappa = Osp::kernel(&MultisetWord::new(idx.clone())?);
        acc.add_term(block_word(w, &kappa), Rational::from_integer(1.into()));
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(acc);
            }
            pos -= 1;
            if idx[pos] < big_n {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 1;
        }
    }
}
