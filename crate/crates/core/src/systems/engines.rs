//! Evaluation of φ̃(X_1^{(k_1)} ⋯ X_n^{(k_n)}) for the five product
//! constructions. Copy keys may be any ordered type; only comparisons
//! between keys are used.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::partitions::{SetPartition, SetPartitions};
use crate::poly::{SymPolynomial, Symbol};

/// Maximal runs of equal adjacent keys, each with the labels it carries.
type Segments<K> = Vec<(K, Vec<usize>)>;

fn segments<K: Ord + Clone>(keys: &[K], vars: &[usize]) -> Segments<K> {
    merge(keys.iter().cloned().zip(vars.iter().map(|&v| vec![v])).collect())
}

fn merge<K: Ord>(segs: Segments<K>) -> Segments<K> {
    let mut out: Segments<K> = Vec::with_capacity(segs.len());
    for (k, labels) in segs {
        match out.last_mut() {
            Some((last, acc)) if *last == k => acc.extend(labels),
            _ => out.push((k, labels)),
        }
    }
    out
}

pub(crate) fn moment(labels: &[usize]) -> SymPolynomial {
    SymPolynomial::symbol(Symbol::Moment(labels.to_vec()))
}

pub(crate) fn psi_moment(labels: &[usize]) -> SymPolynomial {
    SymPolynomial::symbol(Symbol::PsiMoment(labels.to_vec()))
}

pub(crate) fn tensor<K: Ord + Clone>(keys: &[K], vars: &[usize]) -> SymPolynomial {
    let mut groups: BTreeMap<&K, Vec<usize>> = BTreeMap::new();
    for (k, &v) in keys.iter().zip(vars) {
        groups.entry(k).or_default().push(v);
    }
    groups.values().fold(SymPolynomial::one(), |acc, w| &acc * &moment(w))
}

pub(crate) fn boolean<K: Ord + Clone>(keys: &[K], vars: &[usize]) -> SymPolynomial {
    segments(keys, vars).iter().fold(SymPolynomial::one(), |acc, (_, w)| &acc * &moment(w))
}

/// Peels all runs carrying the largest key, then repeats on what is left.
pub(crate) fn monotone<K: Ord + Clone>(
    keys: &[K],
    vars: &[usize],
    family: fn(&[usize]) -> SymPolynomial,
) -> SymPolynomial {
    let mut segs = segments(keys, vars);
    let mut acc = SymPolynomial::one();
    while let Some(top) = segs.iter().map(|(k, _)| k).max().cloned() {
        let (peeled, rest): (Segments<K>, Segments<K>) = segs.into_iter().partition(|(k, _)| *k == top);
        for (_, w) in &peeled {
            acc = &acc * &family(w);
        }
        segs = merge(rest);
    }
    acc
}

pub(crate) fn c_monotone<K: Ord + Clone>(keys: &[K], vars: &[usize]) -> SymPolynomial {
    cm(segments(keys, vars))
}

fn cm<K: Ord + Clone>(segs: Segments<K>) -> SymPolynomial {
    let s = segs.len();
    if s == 0 {
        return SymPolynomial::one();
    }
    if s == 1 {
        return moment(&segs[0].1);
    }
    if segs[0].0 > segs[1].0 {
        let head = moment(&segs[0].1);
        return &head * &cm(segs[1..].to_vec());
    }
    if segs[s - 1].0 > segs[s - 2].0 {
        let tail = moment(&segs[s - 1].1);
        return &cm(segs[..s - 1].to_vec()) * &tail;
    }
    // both ends ascend inwards, so the first maximal key is a strict
    // interior local maximum
    let top = segs.iter().map(|(k, _)| k).max().expect("nonempty");
    let j = segs.iter().position(|(k, _)| k == top).expect("max is present");
    let w = &segs[j].1;
    let split = &(&cm(segs[..j].to_vec()) * &(&moment(w) - &psi_moment(w))) * &cm(segs[j + 1..].to_vec());
    let mut rest = segs[..j].to_vec();
    rest.extend_from_slice(&segs[j + 1..]);
    &split + &(&psi_moment(w) * &cm(merge(rest)))
}

/// Σ over noncrossing ρ refining the kernel of the keys of Π_{B∈ρ} c[X_B].
pub(crate) fn free<K: Ord + Clone>(keys: &[K], vars: &[usize]) -> SymPolynomial {
    let mut acc = SymPolynomial::zero();
    for rho in noncrossing(keys.len()).iter() {
        if rho.iter().all(|b| b.iter().all(|&e| keys[e - 1] == keys[b[0] - 1])) {
            let term = rho.iter().fold(SymPolynomial::one(), |acc, b| {
                let w: Vec<usize> = b.iter().map(|&e| vars[e - 1]).collect();
                &acc * &SymPolynomial::symbol(Symbol::Cumulant(w))
            });
            acc += &term;
        }
    }
    acc
}

type Blocks = Vec<Vec<usize>>;

/// NC_n as block lists, cached per n.
pub(crate) fn noncrossing(n: usize) -> Arc<Vec<Blocks>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Blocks>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache poisoned").get(&n) {
        return v.clone();
    }
    let list: Vec<Blocks> = if n == 0 {
        vec![Vec::new()]
    } else {
        SetPartitions::new(n)
            .expect("n > 0")
            .map(|rgs| SetPartition::from_rgs(&rgs))
            .filter(|p| p.is_noncrossing())
            .map(|p| p.blocks().to_vec())
            .collect()
    };
    let list = Arc::new(list);
    cache.lock().expect("cache poisoned").insert(n, list.clone());
    list
}
