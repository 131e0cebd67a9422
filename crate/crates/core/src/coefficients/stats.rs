use crate::error::{domain, Error, Result};
use crate::partitions::{MultisetWord, OrderedSetPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Stats {
    pub des: usize,
    pub plat: usize,
    pub asc: usize,
}

pub fn stats(w: &MultisetWord) -> Stats {
    stats_of(w.letters())
}

pub(crate) fn stats_of(w: &[usize]) -> Stats {
    let mut s = Stats { des: 0, plat: 0, asc: 0 };
    for p in w.windows(2) {
        match p[0].cmp(&p[1]) {
            std::cmp::Ordering::Greater => s.des += 1,
            std::cmp::Ordering::Equal => s.plat += 1,
            std::cmp::Ordering::Less => s.asc += 1,
        }
    }
    s
}

/// For each block of τ (in τ's order), the index of the η-block holding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeWord {
    pub word: Vec<usize>,
    pub tau: OrderedSetPartition,
    pub eta: OrderedSetPartition,
}

impl RelativeWord {
    pub fn stats(&self) -> Stats {
        stats_of(&self.word)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

pub fn relative_word(tau: &OrderedSetPartition, eta: &OrderedSetPartition) -> Result<RelativeWord> {
    if !tau.underlying().leq(&eta.underlying())? {
        return Err(Error::NotComparable(tau.to_string(), eta.to_string()));
    }
    Ok(RelativeWord { word: relative_word_unchecked(tau, eta), tau: tau.clone(), eta: eta.clone() })
}

pub(crate) fn relative_word_unchecked(tau: &OrderedSetPartition, eta: &OrderedSetPartition) -> Vec<usize> {
    tau.blocks().iter().map(|b| eta.block_of(b[0])).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RunKind {
    Ascending,
    Descending,
    Level,
}

/// Maximal runs of one kind; `runs[i]` is a half-open index range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecomposition {
    pub kind: RunKind,
    pub runs: Vec<std::ops::Range<usize>>,
}

impl RunDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.runs.iter().map(|r| r.len()).collect()
    }

    pub fn values(&self, w: &[usize]) -> Vec<Vec<usize>> {
        self.runs.iter().map(|r| w[r.clone()].to_vec()).collect()
    }
}

pub fn runs(w: &[usize], kind: RunKind) -> Result<RunDecomposition> {
    if w.is_empty() {
        return Err(domain("empty word"));
    }
    let continues = |a: usize, b: usize| match kind {
        RunKind::Ascending => a < b,
        RunKind::Descending => a > b,
        RunKind::Level => a == b,
    };
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..w.len() {
        if !continues(w[i - 1], w[i]) {
            out.push(start..i);
            start = i;
        }
    }
    out.push(start..w.len());
    Ok(RunDecomposition { kind, runs: out })
}
