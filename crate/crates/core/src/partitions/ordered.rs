use std::fmt;

use crate::error::{domain, Error, Result};

/// Sequence of positive letters; `to_word` always produces a packed word
/// whose value set is exactly {1,…,p}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetWord(Vec<usize>);

impl MultisetWord {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.is_empty() {
            return Err(domain("empty word"));
        }
        if letters.contains(&0) {
            return Err(domain("word letters must be positive"));
        }
        Ok(MultisetWord(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MultisetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|&v| v < 10);
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(if compact { "" } else { "," }))
    }
}

/// Set partition of [n], blocks sorted by minimum, elements ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let ordered = OrderedSetPartition::from_blocks(n, blocks)?;
        Ok(ordered.underlying())
    }

    pub(crate) fn from_rgs(rgs: &[usize]) -> Self {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { n: rgs.len(), blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    fn labels(&self) -> Vec<usize> {
        let mut lab = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                lab[e - 1] = b;
            }
        }
        lab
    }

    /// Refinement order.
    pub fn leq(&self, other: &SetPartition) -> Result<bool> {
        check_n(self.n, other.n)?;
        let lab = other.labels();
        Ok(self.blocks.iter().all(|b| b.iter().all(|&e| lab[e - 1] == lab[b[0] - 1])))
    }

    pub fn meet(&self, other: &SetPartition) -> Result<SetPartition> {
        check_n(self.n, other.n)?;
        let (a, b) = (self.labels(), other.labels());
        let keys: Vec<(usize, usize)> = a.into_iter().zip(b).collect();
        Ok(OrderedSetPartition::kernel_by(&keys).underlying())
    }

    pub fn is_noncrossing(&self) -> bool {
        noncrossing(&self.blocks)
    }

    pub fn is_interval(&self) -> bool {
        self.blocks.iter().all(|b| b[b.len() - 1] - b[0] + 1 == b.len())
    }

    /// The same blocks in canonical (minimum-sorted) order.
    pub fn canonical_order(&self) -> OrderedSetPartition {
        OrderedSetPartition::from_blocks_unchecked(self.n, self.blocks.clone())
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, &self.blocks)
    }
}

/// Ordered sequence of disjoint, possibly empty blocks covering [n].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPseudoPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl OrderedPseudoPartition {
    pub fn from_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(domain("n = 0"));
        }
        let mut seen = vec![false; n];
        for b in &mut blocks {
            b.sort_unstable();
            for &e in b.iter() {
                if e == 0 || e > n || seen[e - 1] {
                    return Err(domain(format!("element {e} out of range or repeated")));
                }
                seen[e - 1] = true;
            }
        }
        if seen.contains(&false) {
            return Err(domain("blocks do not cover [n]"));
        }
        Ok(OrderedPseudoPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// All pseudopartitions of [n] into exactly k (possibly empty) slots,
    /// in base-k counting order of the slot assignment.
    pub fn all_with_len(n: usize, k: usize) -> Result<Vec<OrderedPseudoPartition>> {
        if n == 0 || k == 0 {
            return Err(domain("n and k must be positive"));
        }
        let mut out = Vec::new();
        let mut slot = vec![0usize; n];
        loop {
            let mut blocks = vec![Vec::new(); k];
            for (i, &s) in slot.iter().enumerate() {
                blocks[s].push(i + 1);
            }
            out.push(OrderedPseudoPartition { n, blocks });
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                slot[i] += 1;
                if slot[i] < k {
                    break;
                }
                slot[i] = 0;
            }
        }
    }
}

/// Ordered set partition of [n]; stored as its packed word plus blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    word: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

/// σ⌋P standardized to [|P|], together with the elements of P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub elements: Vec<usize>,
    pub partition: OrderedSetPartition,
}

impl Restriction {
    /// Blocks expressed in the original elements of P.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.partition
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&e| self.elements[e - 1]).collect())
            .collect()
    }
}

fn check_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::SizeMismatch(a, b));
    }
    Ok(())
}

fn write_blocks(f: &mut fmt::Formatter<'_>, blocks: &[Vec<usize>]) -> fmt::Result {
    let parts: Vec<String> = blocks
        .iter()
        .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    f.write_str(&parts.join("|"))
}

fn noncrossing(blocks: &[Vec<usize>]) -> bool {
    for (x, a) in blocks.iter().enumerate() {
        for b in &blocks[x + 1..] {
            // a crossing is a1 < b1 < a2 < b2 or the mirror image
            for w in a.windows(2) {
                let inside = b.iter().filter(|&&e| w[0] < e && e < w[1]).count();
                if inside > 0 && inside < b.len() {
                    return false;
                }
            }
        }
    }
    true
}

impl OrderedSetPartition {
    pub fn from_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(domain("n = 0"));
        }
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(domain("empty block"));
            }
            b.sort_unstable();
            for &e in b.iter() {
                if e == 0 || e > n || seen[e - 1] {
                    return Err(domain(format!("element {e} out of range or repeated")));
                }
                seen[e - 1] = true;
            }
        }
        if seen.contains(&false) {
            return Err(domain("blocks do not cover [n]"));
        }
        Ok(Self::from_blocks_unchecked(n, blocks))
    }

    pub(crate) fn from_blocks_unchecked(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        let mut word = vec![0; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                word[e - 1] = b + 1;
            }
        }
        OrderedSetPartition { word, blocks }
    }

    /// Built from a packed word (values exactly 1..=p).
    pub(crate) fn from_packed(word: Vec<usize>) -> Self {
        let p = word.iter().copied().max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); p];
        for (i, &v) in word.iter().enumerate() {
            blocks[v - 1].push(i + 1);
        }
        OrderedSetPartition { word, blocks }
    }

    /// Kernel of an arbitrary sequence of ordered keys: block k holds the
    /// positions of the k-th smallest key.
    pub fn kernel_by<K: Ord>(keys: &[K]) -> Self {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut word = vec![0; keys.len()];
        let mut rank = 0;
        for (j, &i) in idx.iter().enumerate() {
            if j == 0 || keys[idx[j - 1]] != keys[i] {
                rank += 1;
            }
            word[i] = rank;
        }
        Self::from_packed(word)
    }

    pub fn kernel(w: &MultisetWord) -> Self {
        Self::kernel_by(w.letters())
    }

    pub fn one(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("n = 0"));
        }
        Ok(Self::from_packed(vec![1; n]))
    }

    /// Singletons in canonical order ({1},{2},…,{n}).
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("n = 0"));
        }
        Ok(Self::from_packed((1..=n).collect()))
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// Number of blocks |π|.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// π(i): 1-based index of the block containing i.
    pub fn block_of(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn to_word(&self) -> MultisetWord {
        MultisetWord(self.word.clone())
    }

    pub(crate) fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn underlying(&self) -> SetPartition {
        let mut blocks = self.blocks.clone();
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n: self.n(), blocks }
    }

    pub fn leq(&self, pi: &OrderedSetPartition) -> Result<bool> {
        check_n(self.n(), pi.n())?;
        Ok(self.leq_unchecked(pi))
    }

    pub(crate) fn leq_unchecked(&self, pi: &OrderedSetPartition) -> bool {
        let mut last = 0;
        for b in &self.blocks {
            let c = pi.word[b[0] - 1];
            if c < last || b.iter().any(|&e| pi.word[e - 1] != c) {
                return false;
            }
            last = c;
        }
        true
    }

    /// π⋏σ: the restrictions of σ to the blocks of π, concatenated.
    pub fn quasi_meet(&self, sigma: &OrderedSetPartition) -> Result<OrderedSetPartition> {
        check_n(self.n(), sigma.n())?;
        Ok(self.quasi_meet_unchecked(sigma))
    }

    pub(crate) fn quasi_meet_unchecked(&self, sigma: &OrderedSetPartition) -> OrderedSetPartition {
        let keys: Vec<(usize, usize)> =
            self.word.iter().copied().zip(sigma.word.iter().copied()).collect();
        Self::kernel_by(&keys)
    }

    pub fn restrict(&self, p: &[usize]) -> Result<Restriction> {
        if p.is_empty() {
            return Err(domain("restriction to the empty set"));
        }
        let mut elements = p.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.len() != p.len() || elements[elements.len() - 1] > self.n() || elements[0] == 0 {
            return Err(domain("restriction set is not a subset of [n]"));
        }
        let keys: Vec<usize> = elements.iter().map(|&e| self.word[e - 1]).collect();
        Ok(Restriction { partition: Self::kernel_by(&keys), elements })
    }

    /// σ⌋P standardized; P must be sorted, nonempty and inside [n].
    pub(crate) fn restrict_std(&self, p: &[usize]) -> OrderedSetPartition {
        let keys: Vec<usize> = p.iter().map(|&e| self.word[e - 1]).collect();
        Self::kernel_by(&keys)
    }

    /// Number of blocks of σ⌋P.
    pub(crate) fn restricted_len(&self, p: &[usize]) -> usize {
        let mut seen: Vec<usize> = p.iter().map(|&e| self.word[e - 1]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// (k_1,…,k_p): number of σ-blocks inside each block of π.
    pub fn interval_type(&self, pi: &OrderedSetPartition) -> Result<Vec<usize>> {
        if !self.leq(pi)? {
            return Err(Error::NotComparable(self.to_string(), pi.to_string()));
        }
        Ok(self.interval_type_unchecked(pi))
    }

    pub(crate) fn interval_type_unchecked(&self, pi: &OrderedSetPartition) -> Vec<usize> {
        let mut k = vec![0; pi.len()];
        for b in &self.blocks {
            k[pi.word[b[0] - 1] - 1] += 1;
        }
        k
    }

    /// Enumerates [σ,π] starting with σ and ending with π.
    pub fn interval_elements(&self, pi: &OrderedSetPartition) -> Result<IntervalIter> {
        if !self.leq(pi)? {
            return Err(Error::NotComparable(self.to_string(), pi.to_string()));
        }
        Ok(IntervalIter::new(self, pi))
    }

    pub(crate) fn interval_unchecked(&self, pi: &OrderedSetPartition) -> IntervalIter {
        IntervalIter::new(self, pi)
    }

    /// (P_{h(1)},…,P_{h(p)}) for a 1-based permutation h of [|π|].
    pub fn permute_blocks(&self, h: &[usize]) -> Result<OrderedSetPartition> {
        let p = self.len();
        let mut seen = vec![false; p];
        if h.len() != p {
            return Err(domain("permutation has the wrong length"));
        }
        for &x in h {
            if x == 0 || x > p || seen[x - 1] {
                return Err(domain("not a permutation"));
            }
            seen[x - 1] = true;
        }
        let blocks = h.iter().map(|&x| self.blocks[x - 1].clone()).collect();
        Ok(Self::from_blocks_unchecked(self.n(), blocks))
    }

    pub fn is_noncrossing(&self) -> bool {
        noncrossing(&self.blocks)
    }

    pub fn is_interval(&self) -> bool {
        self.blocks.iter().all(|b| b[b.len() - 1] - b[0] + 1 == b.len())
    }

    /// Noncrossing, and in every nesting the outer block comes first.
    pub fn is_monotone(&self) -> bool {
        if !self.is_noncrossing() {
            return false;
        }
        for (i, a) in self.blocks.iter().enumerate() {
            for (j, b) in self.blocks.iter().enumerate() {
                let nested = a[0] < b[0] && b[b.len() - 1] < a[a.len() - 1];
                if nested && i > j {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_pair(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    /// Compact word form "31212"; None when some block index exceeds 9.
    pub fn word_string(&self) -> Option<String> {
        if self.len() > 9 {
            return None;
        }
        Some(self.word.iter().map(|v| char::from(b'0' + *v as u8)).collect())
    }

    /// Word form when available, block form otherwise.
    pub fn short_string(&self) -> String {
        self.word_string().unwrap_or_else(|| self.to_string())
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, &self.blocks)
    }
}

/// Lazy enumeration of an interval [σ,π] via merges of consecutive σ-blocks.
#[derive(Clone, Debug)]
pub struct IntervalIter {
    sigma_blocks: Vec<Vec<usize>>,
    n: usize,
    free_gaps: Vec<usize>,
    next: u64,
    end: u64,
}

impl IntervalIter {
    fn new(sigma: &OrderedSetPartition, pi: &OrderedSetPartition) -> Self {
        let owner: Vec<usize> = sigma.blocks.iter().map(|b| pi.word[b[0] - 1]).collect();
        let free_gaps: Vec<usize> = (1..owner.len()).filter(|&g| owner[g - 1] == owner[g]).collect();
        IntervalIter {
            sigma_blocks: sigma.blocks.clone(),
            n: sigma.n(),
            end: 1u64 << free_gaps.len(),
            free_gaps,
            next: 0,
        }
    }

    pub fn cardinality(&self) -> u64 {
        self.end
    }
}

impl Iterator for IntervalIter {
    type Item = OrderedSetPartition;

    fn next(&mut self) -> Option<OrderedSetPartition> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut merged = vec![false; self.sigma_blocks.len()];
        for (bit, &g) in self.free_gaps.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                merged[g] = true;
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, b) in self.sigma_blocks.iter().enumerate() {
            if merged[i] {
                blocks.last_mut().expect("gap 0 is never free").extend_from_slice(b);
            } else {
                blocks.push(b.clone());
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        Some(OrderedSetPartition::from_blocks_unchecked(self.n, blocks))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

/// Maximal runs of consecutive integers in A.
pub fn outintmax(a: &[usize], n: usize) -> Result<Vec<Vec<usize>>> {
    let a = subset(a, n)?;
    let mut out: Vec<Vec<usize>> = Vec::new();
    for e in a {
        match out.last_mut() {
            Some(run) if run[run.len() - 1] + 1 == e => run.push(e),
            _ => out.push(vec![e]),
        }
    }
    Ok(out)
}

/// Maximal runs of A on the n-cycle; a run through n and 1 is listed as
/// (…, n, 1, …) in cyclic order.
pub fn intmax(a: &[usize], n: usize) -> Result<Vec<Vec<usize>>> {
    let mut runs = outintmax(a, n)?;
    if runs.len() > 1 && runs[0][0] == 1 && runs[runs.len() - 1].last() == Some(&n) {
        let first = runs.remove(0);
        runs.last_mut().expect("at least one run remains").extend(first);
    }
    Ok(runs)
}

fn subset(a: &[usize], n: usize) -> Result<Vec<usize>> {
    if a.is_empty() {
        return Err(domain("empty subset"));
    }
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    if a[0] == 0 || a[a.len() - 1] > n {
        return Err(domain("subset not inside [n]"));
    }
    Ok(a)
}
