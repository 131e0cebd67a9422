use proptest::prelude::*;

use super::*;
use crate::partitions::{collect, OrderedSetPartition as Osp, PartitionClass};
use crate::par::Execution;
use crate::rational::{int, ratio};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn poly(terms: &[(i64, i64, &str)]) -> NCPoly {
    let mut p = NCPoly::zero();
    for &(a, b, s) in terms {
        p.add_term(w(s), ratio(a, b));
    }
    p
}

fn letters(s: &str) -> Vec<NCPoly> {
    w(s).letters().iter().map(|&l| NCPoly::letter(l)).collect()
}

fn words_upto(k: usize, len: usize) -> Vec<Word> {
    (1..=len).flat_map(|d| Word::all(k, d)).collect()
}

#[test]
fn word_order_and_text() {
    assert!(w("b") < w("aa"));
    assert!(w("ab") < w("ba"));
    assert_eq!(w("abc").to_string(), "abc");
    assert_eq!(Word::empty().to_string(), "1");
    assert!("aB".parse::<Word>().is_err());
    assert!(Word::new(vec![30]).is_err());
    assert_eq!(Word::all(2, 2), vec![w("aa"), w("ab"), w("ba"), w("bb")]);
}

#[test]
fn poly_arithmetic_and_display() {
    let a = NCPoly::letter(0);
    let b = NCPoly::letter(1);
    assert_eq!(a.bracket(&b), poly(&[(1, 1, "ab"), (-1, 1, "ba")]));
    assert_eq!((&a - &a), NCPoly::zero());
    assert_eq!(poly(&[(1, 2, "ab"), (-1, 2, "ba")]).to_string(), "1/2 ab - 1/2 ba");
    assert_eq!((&NCPoly::one() + &a).to_string(), "1 + a");
    assert_eq!(NCPoly::zero().to_string(), "0");
    let p = &(&a + &b) * &(&a + &b);
    assert_eq!(p.degree(), Some(2));
    assert_eq!(p.component(2).len(), 4);
    assert!(p.truncate(1).is_zero());
}

#[test]
fn projector_examples() {
    assert_eq!(pi_projector(&w("a")).unwrap(), NCPoly::letter(0));
    assert_eq!(pi_projector(&w("ab")).unwrap(), poly(&[(1, 2, "ab"), (-1, 2, "ba")]));
    let want = poly(&[
        (1, 3, "abc"),
        (1, 3, "cba"),
        (-1, 6, "acb"),
        (-1, 6, "bac"),
        (-1, 6, "bca"),
        (-1, 6, "cab"),
    ]);
    assert_eq!(pi_projector(&w("abc")).unwrap(), want);
    assert!(pi_projector(&Word::empty()).is_err());
    assert!(pi_apply(&NCPoly::one()).is_err());
    // repeated letters
    assert!(pi_projector(&w("aa")).unwrap().is_zero());
}

#[test]
fn nct_cumulants() {
    let x = RatMatrix::from_ints(2, &[1, 2, 0, 1]).unwrap();
    let y = RatMatrix::from_ints(2, &[0, 1, 1, 3]).unwrap();
    let k2 = nct_cumulant(&[x.clone(), y.clone()]).unwrap();
    let comm = x.times(&y).plus(&y.times(&x).scaled(&int(-1))).scaled(&ratio(1, 2));
    assert_eq!(k2, comm);
    assert!(!k2.is_zero());
    let d1 = RatMatrix::diagonal(&[int(1), int(2)]).unwrap();
    let d2 = RatMatrix::diagonal(&[int(5), int(-3)]).unwrap();
    assert!(nct_cumulant(&[d1, d2]).unwrap().is_zero());
    assert_eq!(nct_cumulant(&letters("abc")).unwrap(), pi_projector(&w("abc")).unwrap());
    assert_eq!(nct_cumulant(&letters("a")).unwrap(), NCPoly::letter(0));
    assert!(nct_cumulant::<NCPoly>(&[]).is_err());
    assert!(RatMatrix::from_ints(5, &[0; 25]).is_err());
}

#[test]
fn nct_cumulant_equals_projector_on_words() {
    for word in words_upto(3, 4) {
        let xs: Vec<NCPoly> = word.letters().iter().map(|&l| NCPoly::letter(l)).collect();
        assert_eq!(nct_cumulant(&xs).unwrap(), pi_projector(&word).unwrap());
    }
}

#[test]
fn nct_phi_shuffles_by_blocks() {
    // φ̃(X_1^{(5)} X_2^{(2)} X_3^{(3)} X_4^{(2)} X_5^{(3)}) = X_2 X_4 X_3 X_5 X_1
    let kernel = Osp::kernel(&crate::partitions::MultisetWord::new(vec![5, 2, 3, 2, 3]).unwrap());
    let got = nct_phi(&kernel, &letters("abcde")).unwrap();
    assert_eq!(got, NCPoly::word(w("bdcea")));
}

#[test]
fn interval_quasi_meet_is_invisible() {
    let xs = letters("abcd");
    for n in 1..=4 {
        let xs = &xs[..n];
        for eta in collect(n, PartitionClass::Ip).unwrap() {
            if eta.blocks().windows(2).any(|b| b[0][0] > b[1][0]) {
                continue;
            }
            for pi in collect(n, PartitionClass::All).unwrap() {
                let meet = pi.quasi_meet(&eta).unwrap();
                assert_eq!(nct_phi(&meet, xs).unwrap(), nct_phi(&pi, xs).unwrap(), "{pi} {eta}");
            }
        }
    }
}

#[test]
fn coproduct_examples() {
    let t = coproduct_k(&w("a"), 2).unwrap();
    assert_eq!(t, vec![vec![w("a"), Word::empty()], vec![Word::empty(), w("a")]]);
    let mut t = coproduct_k(&w("ab"), 2).unwrap();
    t.sort();
    let mut want = vec![
        vec![w("ab"), Word::empty()],
        vec![w("a"), w("b")],
        vec![w("b"), w("a")],
        vec![Word::empty(), w("ab")],
    ];
    want.sort();
    assert_eq!(t, want);
    for k in 1..=3 {
        for n in 0..=4 {
            let word = Word::new(vec![0; n]).unwrap();
            assert_eq!(coproduct_k(&word, k).unwrap().len(), k.pow(n as u32));
        }
    }
    assert!(coproduct_k(&w("a"), 0).is_err());
}

#[test]
fn projector_by_convolution() {
    for word in words_upto(3, 4) {
        assert_eq!(pi_by_convolution(&word).unwrap(), pi_projector(&word).unwrap(), "{word}");
        for k in 1..=word.len() {
            assert_eq!(pi_k(&word, k).unwrap(), pi_k_by_convolution(&word, k).unwrap(), "{word} k={k}");
        }
    }
}

#[test]
fn projector_powers() {
    for word in words_upto(3, 4) {
        assert_eq!(pi_k(&word, 1).unwrap(), pi_projector(&word).unwrap());
        let mut sum = NCPoly::zero();
        for k in 1..=word.len() {
            sum = &sum + &pi_k(&word, k).unwrap();
        }
        assert_eq!(sum, NCPoly::word(word.clone()));
    }
    // top power symmetrizes
    let top = pi_k(&w("abc"), 3).unwrap();
    let want = poly(&[
        (1, 6, "abc"),
        (1, 6, "acb"),
        (1, 6, "bac"),
        (1, 6, "bca"),
        (1, 6, "cab"),
        (1, 6, "cba"),
    ]);
    assert_eq!(top, want);
    assert!(pi_k(&w("ab"), 3).is_err());
    assert!(pi_k(&w("ab"), 0).is_err());
}

#[test]
fn dilation_identity() {
    let mut sample = words_upto(2, 4);
    sample.extend([w("abcab"), w("aabcb"), w("cbaac")]);
    for word in sample {
        let n = word.len();
        let parts: Vec<NCPoly> = (1..=n).map(|k| pi_k(&word, k).unwrap()).collect();
        for big_n in 0..=n + 1 {
            let mut rhs = NCPoly::zero();
            for (k, part) in parts.iter().enumerate() {
                rhs = &rhs + &part.scale(&int((big_n as i64).pow(k as u32 + 1)));
            }
            assert_eq!(fl_dilation(&word, big_n).unwrap(), rhs, "{word} N={big_n}");
        }
    }
}

#[test]
fn projector_is_idempotent_and_dynkin_fixed() {
    for word in words_upto(3, 5) {
        let p = pi_projector(&word).unwrap();
        assert_eq!(pi_apply(&p).unwrap(), p, "{word}");
        assert_eq!(dynkin(&p), p, "{word}");
    }
}

#[test]
fn dynkin_examples() {
    assert_eq!(dynkin(&NCPoly::letter(0)), NCPoly::letter(0));
    let half = poly(&[(1, 2, "ab"), (-1, 2, "ba")]);
    assert_eq!(dynkin(&half), half);
    assert_eq!(dynkin(&NCPoly::word(w("ab"))), half);
    assert!(dynkin(&NCPoly::one()).is_zero());
    // a non-Lie element moves
    assert_ne!(dynkin(&NCPoly::word(w("aab"))), NCPoly::word(w("aab")));
}

#[test]
fn exp_and_log() {
    let a = NCPoly::letter(0);
    let b = NCPoly::letter(1);
    for d in 1..=6 {
        assert_eq!(log_trunc(&exp_trunc(&a, d).unwrap(), d).unwrap(), a);
    }
    let e = exp_trunc(&a, 6).unwrap();
    let inv = exp_trunc(&(-&a), 6).unwrap();
    assert_eq!(e.mul_truncated(&inv, 6), NCPoly::one());
    let z = log_trunc(&exp_trunc(&a, 3).unwrap().mul_truncated(&exp_trunc(&b, 3).unwrap(), 3), 3).unwrap();
    assert_eq!(z.component(2), poly(&[(1, 2, "ab"), (-1, 2, "ba")]));
    assert!(exp_trunc(&NCPoly::one(), 3).is_err());
    assert!(log_trunc(&a, 3).is_err());
    let s = Series::new(&a + &b, 4);
    assert_eq!(s.exp().unwrap().log().unwrap(), s);
    assert_eq!(s.mul(&Series::new(NCPoly::one(), 3)).bound(), 3);
}

#[test]
fn goldberg_coefficients() {
    assert_eq!(goldberg_word_coefficient(&[(1, 1), (2, 1)]).unwrap(), ratio(1, 2));
    assert_eq!(goldberg_word_coefficient(&[(2, 1), (1, 1)]).unwrap(), ratio(-1, 2));
    assert_eq!(goldberg_word_coefficient(&[(1, 2), (2, 1)]).unwrap(), ratio(1, 12));
    assert_eq!(goldberg_word_coefficient(&[(1, 1), (2, 1), (1, 1)]).unwrap(), ratio(-1, 6));
    assert_eq!(goldberg_word_coefficient(&[(1, 1)]).unwrap(), int(1));
    assert_eq!(goldberg_word_coefficient(&[(1, 2)]).unwrap(), int(0));
    assert!(goldberg_word_coefficient(&[(1, 1), (1, 1)]).is_err());
    assert!(goldberg_word_coefficient(&[]).is_err());
    assert!(goldberg_word_coefficient(&[(1, 0)]).is_err());
}

#[test]
fn cbh_routes_agree() {
    for (ls, d) in [(vec![0u8, 1], 6usize), (vec![0, 1, 2], 4)] {
        let direct = cbh_direct(&ls, d).unwrap();
        assert_eq!(cbh_cumulant(&ls, d, Execution::default()).unwrap(), direct);
        assert_eq!(cbh_goldberg(&ls, d).unwrap(), direct);
    }
    let z = cbh_direct(&[0, 1], 3).unwrap();
    assert_eq!(z.coefficient(&w("ab")), ratio(1, 2));
    assert_eq!(z.coefficient(&w("ba")), ratio(-1, 2));
    assert_eq!(z.coefficient(&w("aab")), ratio(1, 12));
    assert_eq!(z.coefficient(&w("aba")), ratio(-1, 6));
    assert_eq!(cbh_direct(&[0, 1, 2], 1).unwrap(), poly(&[(1, 1, "a"), (1, 1, "b"), (1, 1, "c")]));
    assert!(cbh_direct(&[0, 0], 2).is_err());
    assert!(cbh_goldberg(&[], 2).is_err());
    assert!(cbh_cumulant(&[0], 0, Execution::Sequential).is_err());
}

#[test]
fn cbh_sequential_matches_parallel() {
    let a = cbh_cumulant(&[0, 1], 6, Execution::Sequential).unwrap();
    let b = cbh_cumulant(&[0, 1], 6, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn cbh_swap_antisymmetry() {
    // log(e^a e^b) = −log(e^{−b} e^{−a})
    let d = 6;
    let z = cbh_direct(&[0, 1], d).unwrap();
    let swapped = z.relabel(|l| 1 - l);
    for k in 1..=d {
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        assert_eq!(z.component(k), swapped.component(k).scale(&sign), "degree {k}");
    }
    let a = NCPoly::letter(0);
    let b = NCPoly::letter(1);
    let inv = exp_trunc(&(-&b), d).unwrap().mul_truncated(&exp_trunc(&(-&a), d).unwrap(), d);
    assert_eq!(log_trunc(&inv, d).unwrap(), -&z);
}

#[test]
fn commuting_split() {
    for n in 2..=4usize {
        for mask in 1u32..(1 << n) - 1 {
            let split: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            assert!(nct_commuting_split_check(n, &split).unwrap(), "n={n} {split:?}");
        }
    }
    assert!(nct_commuting_split_check(3, &[]).is_err());
    assert!(nct_commuting_split_check(3, &[1, 2, 3]).is_err());
    assert!(nct_commuting_split_check(1, &[1]).is_err());
}

#[test]
fn noncommuting_witness() {
    let x = RatMatrix::from_ints(2, &[1, 1, 0, 1]).unwrap();
    let y = RatMatrix::from_ints(2, &[1, 0, 1, 1]).unwrap();
    let z = RatMatrix::from_ints(2, &[2, 0, 0, 1]).unwrap();
    assert!(!nct_cumulant(&[x, y, z]).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_projector_idempotent(letters in prop::collection::vec(0u8..4, 1..=5)) {
        let word = Word::new(letters).unwrap();
        let p = pi_projector(&word).unwrap();
        prop_assert_eq!(pi_apply(&p).unwrap(), p.clone());
        prop_assert_eq!(dynkin(&p), p);
    }

    #[test]
    fn prop_powers_sum_to_identity(letters in prop::collection::vec(0u8..3, 1..=5)) {
        let word = Word::new(letters).unwrap();
        let mut sum = NCPoly::zero();
        for k in 1..=word.len() {
            sum = &sum + &pi_k(&word, k).unwrap();
        }
        prop_assert_eq!(sum, NCPoly::word(word));
    }
}
