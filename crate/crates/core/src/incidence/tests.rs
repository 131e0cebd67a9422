use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::partitions::{collect, parse_partition, PartitionClass};
use crate::poly::{Param, SymPolynomial};
use crate::rational::{int, ratio};

fn p(s: &str) -> Osp {
    parse_partition(s).unwrap()
}

fn comparable_pairs(n: usize) -> Vec<(Osp, Osp)> {
    let all = collect(n, PartitionClass::All).unwrap();
    let mut out = Vec::new();
    for s in &all {
        for q in &all {
            if s.leq(q).unwrap() {
                out.push((s.clone(), q.clone()));
            }
        }
    }
    out
}

#[test]
fn bracket_examples() {
    let zero3 = Osp::zero(3).unwrap();
    let one3 = Osp::one(3).unwrap();
    assert_eq!(bracket(&zero3, &one3).unwrap(), 3.into());
    assert_eq!(bracket_factorial(&zero3, &one3).unwrap(), 6.into());
    assert_eq!(bracket(&one3, &one3).unwrap(), 1.into());
    let zero4 = Osp::zero(4).unwrap();
    assert_eq!(bracket(&zero4, &p("1,2|3,4")).unwrap(), 4.into());
    assert_eq!(bracket_factorial(&zero4, &p("1,2|3,4")).unwrap(), 4.into());
    // only σ̄ ≤ π̄ is needed for the bracket
    assert_eq!(bracket(&p("2|1"), &p("1,2")).unwrap(), 2.into());
    assert!(bracket(&p("1,2"), &p("1|2")).is_err());
}

#[test]
fn zeta_and_mu_examples() {
    let zero3 = Osp::zero(3).unwrap();
    let one3 = Osp::one(3).unwrap();
    assert_eq!(zeta_tilde(&zero3, &one3).unwrap(), ratio(1, 6));
    assert_eq!(mu_tilde(&zero3, &one3).unwrap(), ratio(1, 3));
    assert_eq!(mu_tilde(&one3, &one3).unwrap(), int(1));
    assert!(mu_tilde(&p("1|3|2"), &p("1,2|3")).is_err());
}

#[test]
fn beta_examples() {
    let (z, o) = (Osp::zero(3).unwrap(), Osp::one(3).unwrap());
    let t = SymPolynomial::param(Param::T(1));
    assert_eq!(beta(&t, &z, &o).unwrap(), t.binomial(3));
    assert_eq!(beta(&int(2), &z, &o).unwrap(), int(0));
    assert_eq!(beta(&int(1), &Osp::zero(2).unwrap(), &Osp::one(2).unwrap()).unwrap(), int(0));
    assert_eq!(beta(&int(1), &o, &o).unwrap(), int(1));
    // symbolic β has no constant term
    assert!(beta(&t, &p("1|2|3"), &p("1,2|3")).unwrap().constant_term().is_zero());
}

#[test]
fn mobius_inversion_both_ways() {
    let z = MultiplicativeFunction::zeta_tilde();
    let m = MultiplicativeFunction::mu_tilde();
    for n in 1..=5 {
        for (s, q) in comparable_pairs(n) {
            assert_eq!(convolve(&m, &z, &s, &q).unwrap(), delta(&s, &q));
            assert_eq!(convolve(&z, &m, &s, &q).unwrap(), delta(&s, &q));
        }
    }
}

#[test]
fn delta_is_the_unit() {
    let z = MultiplicativeFunction::zeta_tilde();
    for (s, q) in comparable_pairs(4) {
        assert_eq!(convolve(&delta, &z, &s, &q).unwrap(), z.value(&s, &q));
    }
}

#[test]
fn beta_semigroup_numeric_and_symbolic() {
    for n in 1..=5 {
        let (z, o) = (Osp::zero(n).unwrap(), Osp::one(n).unwrap());
        let v = convolve(&MultiplicativeFunction::beta(int(2)), &MultiplicativeFunction::beta(int(3)), &z, &o).unwrap();
        assert_eq!(v, crate::rational::big(&crate::rational::binomial(6, n)));
    }
    let s = SymPolynomial::param(Param::S);
    let t = SymPolynomial::param(Param::N);
    let st = &s * &t;
    let (bs, bt, bst) =
        (MultiplicativeFunction::beta(s), MultiplicativeFunction::beta(t), MultiplicativeFunction::beta(st));
    for n in 1..=3 {
        for (a, b) in comparable_pairs(n) {
            assert_eq!(convolve(&bs, &bt, &a, &b).unwrap(), bst.value(&a, &b));
        }
    }
}

#[test]
fn gamma_then_beta_is_beta_of_products() {
    for n in 1..=3 {
        for (s, q) in comparable_pairs(n) {
            let p = q.len();
            for seed in 0..4u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let ss: Vec<Rational> = (0..p).map(|_| int(rng.gen_range(1..=3))).collect();
                let ts: Vec<Rational> = (0..p).map(|_| int(rng.gen_range(1..=3))).collect();
                let prod: Vec<Rational> = ss.iter().zip(&ts).map(|(a, b)| a * b).collect();
                let g = QuasiMultiplicativeFunction::gamma(ss.clone());
                let bt = {
                    let ts = ts.clone();
                    move |a: &Osp, b: &Osp| beta_vec(&ts, a, b).unwrap()
                };
                assert_eq!(convolve_tri(&g, &bt, &s, &q).unwrap(), beta_vec(&prod, &s, &q).unwrap());
            }
        }
    }
}

#[test]
fn lifted_tri_convolution_equals_pair_convolution() {
    let z = MultiplicativeFunction::zeta_tilde();
    let lifted = Lifted(MultiplicativeFunction::mu_tilde());
    let m = &lifted.0;
    for (s, q) in comparable_pairs(4) {
        assert_eq!(convolve_tri(&lifted, &z, &s, &q).unwrap(), convolve(m, &z, &s, &q).unwrap());
        assert_eq!(convolve_tri(&lifted, &z, &q, &q).unwrap(), m.value(&q, &q) * z.value(&q, &q));
    }
}

#[test]
fn generating_series() {
    let zs = gen_series(&MultiplicativeFunction::zeta_tilde(), 4).unwrap();
    assert_eq!(zs.to_string(), "1*z + 1/2*z^2 + 1/6*z^3 + 1/24*z^4");
    let ms = gen_series(&MultiplicativeFunction::mu_tilde(), 4).unwrap();
    assert_eq!(ms.to_string(), "1*z - 1/2*z^2 + 1/3*z^3 - 1/4*z^4");
    let z6 = gen_series(&MultiplicativeFunction::zeta_tilde(), 6).unwrap();
    let m6 = gen_series(&MultiplicativeFunction::mu_tilde(), 6).unwrap();
    assert_eq!(compose(&z6, &m6).to_string(), "1*z");
    assert_eq!(compose(&m6, &z6).to_string(), "1*z");
    assert!(TruncatedSeries::from_with_constant(vec![int(1), int(1)]).is_err());
}

#[test]
fn faa_di_bruno_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let fs: Vec<Rational> = (0..6).map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect();
        let gs: Vec<Rational> = (0..6).map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect();
        let (fc, gc) = (fs.clone(), gs.clone());
        let f = MultiplicativeFunction::new(move |k| fc[k - 1].clone());
        let g = MultiplicativeFunction::new(move |k| gc[k - 1].clone());
        let composed = compose(&TruncatedSeries::new(fs).unwrap(), &TruncatedSeries::new(gs).unwrap());
        for n in 1..=6 {
            let v = convolve(&f, &g, &Osp::zero(n).unwrap(), &Osp::one(n).unwrap()).unwrap();
            assert_eq!(v, composed.coefficient(n), "order {n}");
        }
    }
}

#[test]
fn convolutions_are_adapted() {
    // random pairs sharing an interval type must get the same value
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pairs = comparable_pairs(5);
    let m = MultiplicativeFunction::mu_tilde();
    let b2 = MultiplicativeFunction::beta(int(2));
    let g = QuasiMultiplicativeFunction::gamma(vec![int(2); 5]);
    let mut by_type: std::collections::HashMap<Vec<usize>, (Rational, Rational)> = Default::default();
    for _ in 0..400 {
        let (s, q) = &pairs[rng.gen_range(0..pairs.len())];
        let ty = s.interval_type(q).unwrap();
        let v = (convolve(&m, &b2, s, q).unwrap(), convolve_tri(&g, &b2, s, q).unwrap());
        if let Some(prev) = by_type.get(&ty) {
            assert_eq!(prev, &v, "type {ty:?}");
        } else {
            by_type.insert(ty, v);
        }
    }
}

#[test]
fn set_partition_mobius() {
    let z = Osp::zero(3).unwrap().underlying();
    let o = Osp::one(3).unwrap().underlying();
    assert_eq!(mu_set_partitions(&z, &o).unwrap(), int(2));
    assert!(mu_set_partitions(&o, &o).unwrap().is_one());
}
