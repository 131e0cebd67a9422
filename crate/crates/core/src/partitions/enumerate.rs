use std::fmt;
use std::str::FromStr;

use super::ordered::{OrderedSetPartition, SetPartition};
use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionClass {
    /// OP_n
    All,
    /// SP_n, one canonical representative per set partition
    Sp,
    Nc,
    Ip,
    Onc,
    Oi,
    Monotone,
    Pair,
    PairNc,
    PairIp,
    PairMonotone,
}

impl PartitionClass {
    pub const ALL: [PartitionClass; 11] = [
        PartitionClass::All,
        PartitionClass::Sp,
        PartitionClass::Nc,
        PartitionClass::Ip,
        PartitionClass::Onc,
        PartitionClass::Oi,
        PartitionClass::Monotone,
        PartitionClass::Pair,
        PartitionClass::PairNc,
        PartitionClass::PairIp,
        PartitionClass::PairMonotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PartitionClass::All => "all",
            PartitionClass::Sp => "sp",
            PartitionClass::Nc => "nc",
            PartitionClass::Ip => "ip",
            PartitionClass::Onc => "onc",
            PartitionClass::Oi => "oi",
            PartitionClass::Monotone => "monotone",
            PartitionClass::Pair => "pair",
            PartitionClass::PairNc => "pair-nc",
            PartitionClass::PairIp => "pair-ip",
            PartitionClass::PairMonotone => "monotone-pair",
        }
    }

    fn ordered(self) -> bool {
        !matches!(self, PartitionClass::Sp | PartitionClass::Nc | PartitionClass::Ip)
    }

    fn pairs(self) -> bool {
        matches!(
            self,
            PartitionClass::Pair | PartitionClass::PairNc | PartitionClass::PairIp | PartitionClass::PairMonotone
        )
    }

    fn underlying_ok(self, sp: &SetPartition) -> bool {
        match self {
            PartitionClass::Nc
            | PartitionClass::Onc
            | PartitionClass::Monotone
            | PartitionClass::PairNc
            | PartitionClass::PairMonotone => sp.is_noncrossing(),
            PartitionClass::Ip | PartitionClass::Oi | PartitionClass::PairIp => sp.is_interval(),
            _ => true,
        }
    }

    fn ordered_ok(self, pi: &OrderedSetPartition) -> bool {
        match self {
            PartitionClass::Monotone | PartitionClass::PairMonotone => pi.is_monotone(),
            _ => true,
        }
    }

    /// Membership test for a single ordered partition. For the unordered
    /// classes only the underlying set partition matters.
    pub fn contains(self, pi: &OrderedSetPartition) -> bool {
        if self.pairs() && !pi.is_pair() {
            return false;
        }
        self.underlying_ok(&pi.underlying()) && self.ordered_ok(pi)
    }
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PartitionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let class = match key.as_str() {
            "all" | "op" => PartitionClass::All,
            "sp" => PartitionClass::Sp,
            "nc" => PartitionClass::Nc,
            "ip" => PartitionClass::Ip,
            "onc" => PartitionClass::Onc,
            "oi" => PartitionClass::Oi,
            "monotone" | "mp" => PartitionClass::Monotone,
            "pair" => PartitionClass::Pair,
            "pair-nc" => PartitionClass::PairNc,
            "pair-ip" => PartitionClass::PairIp,
            "pair-monotone" | "monotone-pair" => PartitionClass::PairMonotone,
            _ => return Err(Error::Parse(format!("unknown partition class {s:?}"))),
        };
        Ok(class)
    }
}

/// Restricted growth strings of length n in lexicographic order.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("n = 0"));
        }
        Ok(SetPartitions { rgs: vec![0; n], started: false, done: false })
    }

    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.rgs[i - 1]);
        }
        for i in (1..n).rev() {
            if self.rgs[i] <= prefix_max[i] {
                self.rgs[i] += 1;
                for r in &mut self.rgs[i + 1..] {
                    *r = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.rgs.clone())
    }
}

/// Perfect matchings of [n] as restricted growth strings, lexicographic.
fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(rgs: &mut Vec<Option<usize>>, next_block: usize, out: &mut Vec<Vec<usize>>) {
        let Some(first) = rgs.iter().position(|x| x.is_none()) else {
            out.push(rgs.iter().map(|x| x.expect("filled")).collect());
            return;
        };
        rgs[first] = Some(next_block);
        for j in first + 1..rgs.len() {
            if rgs[j].is_none() {
                rgs[j] = Some(next_block);
                rec(rgs, next_block + 1, out);
                rgs[j] = None;
            }
        }
        rgs[first] = None;
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&mut vec![None; n], 0, &mut out);
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Clone, Debug)]
enum Base {
    Rgs(SetPartitions),
    Matchings(std::vec::IntoIter<Vec<usize>>),
}

impl Base {
    fn next(&mut self) -> Option<Vec<usize>> {
        match self {
            Base::Rgs(it) => it.next(),
            Base::Matchings(it) => it.next(),
        }
    }
}

/// Lazy, cloneable stream over one partition class. Unordered classes yield
/// each set partition once with its blocks in canonical order; ordered
/// classes yield every admissible block ordering, canonical order first.
#[derive(Clone, Debug)]
pub struct PartitionStream {
    class: PartitionClass,
    base: Base,
    current: Option<(Vec<usize>, Vec<usize>)>,
}

impl PartitionStream {
    pub fn class(&self) -> PartitionClass {
        self.class
    }

    fn next_base(&mut self) -> Option<Vec<usize>> {
        loop {
            let rgs = self.base.next()?;
            if self.class.underlying_ok(&SetPartition::from_rgs(&rgs)) {
                return Some(rgs);
            }
        }
    }
}

impl Iterator for PartitionStream {
    type Item = OrderedSetPartition;

    fn next(&mut self) -> Option<OrderedSetPartition> {
        loop {
            let advanced = match &mut self.current {
                Some((_, perm)) if self.class.ordered() => next_permutation(perm),
                _ => false,
            };
            if !advanced {
                let rgs = self.next_base()?;
                let k = rgs.iter().max().map_or(0, |m| m + 1);
                self.current = Some((rgs, (0..k).collect()));
            }
            let (rgs, perm) = self.current.as_ref().expect("set above");
            let word: Vec<usize> = rgs.iter().map(|&b| perm[b] + 1).collect();
            let pi = OrderedSetPartition::from_packed(word);
            if self.class.ordered_ok(&pi) {
                return Some(pi);
            }
        }
    }
}

pub fn enumerate(n: usize, class: PartitionClass) -> Result<PartitionStream> {
    if n == 0 {
        return Err(domain("n = 0"));
    }
    let base = if class.pairs() {
        Base::Matchings(matchings(n).into_iter())
    } else {
        Base::Rgs(SetPartitions::new(n)?)
    };
    Ok(PartitionStream { class, base, current: None })
}

/// Convenience: the whole class as a vector.
pub fn collect(n: usize, class: PartitionClass) -> Result<Vec<OrderedSetPartition>> {
    Ok(enumerate(n, class)?.collect())
}

/// The elements below π: concatenations of ordered partitions of each block.
pub fn principal_ideal(pi: &OrderedSetPartition) -> Vec<OrderedSetPartition> {
    let per_block: Vec<Vec<OrderedSetPartition>> = pi
        .blocks()
        .iter()
        .map(|b| enumerate(b.len(), PartitionClass::All).expect("block nonempty").collect())
        .collect();
    let mut out = vec![Vec::<Vec<usize>>::new()];
    for (block, choices) in pi.blocks().iter().zip(&per_block) {
        let mut grown = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in choices {
                let mut blocks = prefix.clone();
                blocks.extend(c.blocks().iter().map(|b| b.iter().map(|&e| block[e - 1]).collect()));
                grown.push(blocks);
            }
        }
        out = grown;
    }
    out.into_iter()
        .map(|blocks| OrderedSetPartition::from_blocks_unchecked(pi.n(), blocks))
        .collect()
}
