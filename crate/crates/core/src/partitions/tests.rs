use super::*;

fn p(s: &str) -> OrderedSetPartition {
    parse_partition(s).unwrap()
}

fn w(v: &[usize]) -> MultisetWord {
    MultisetWord::new(v.to_vec()).unwrap()
}

fn stirling2(n: usize, k: usize) -> u64 {
    match (n, k) {
        (0, 0) => 1,
        (_, 0) | (0, _) => 0,
        _ => k as u64 * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
    }
}

fn fubini(n: usize) -> u64 {
    (1..=n).map(|k| (1..=k as u64).product::<u64>() * stirling2(n, k)).sum()
}

#[test]
fn enumerate_counts_match_fubini() {
    for n in 1..=6 {
        let all = collect(n, PartitionClass::All).unwrap();
        assert_eq!(all.len() as u64, fubini(n), "n = {n}");
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }
    assert_eq!(fubini(6), 4683);
}

#[test]
fn enumerate_small_cases() {
    let two: Vec<String> = collect(2, PartitionClass::All).unwrap().iter().map(|x| x.to_string()).collect();
    assert_eq!(two, ["1,2", "1|2", "2|1"]);
    assert_eq!(collect(1, PartitionClass::All).unwrap(), vec![OrderedSetPartition::one(1).unwrap()]);
    assert!(enumerate(0, PartitionClass::All).is_err());
}

#[test]
fn classes_agree_with_brute_force_filter() {
    for n in 1..=6 {
        let all = collect(n, PartitionClass::All).unwrap();
        for class in PartitionClass::ALL {
            let got = collect(n, class).unwrap();
            let expected: Vec<_> = if matches!(class, PartitionClass::Sp | PartitionClass::Nc | PartitionClass::Ip) {
                let mut seen: Vec<SetPartition> =
                    all.iter().filter(|x| class.contains(x)).map(|x| x.underlying()).collect();
                seen.sort();
                seen.dedup();
                seen.iter().map(|s| s.canonical_order()).collect()
            } else {
                all.iter().filter(|x| class.contains(x)).cloned().collect()
            };
            let (mut a, mut b) = (got.clone(), expected);
            a.sort();
            b.sort();
            assert_eq!(a, b, "n = {n}, class {class}");
        }
    }
}

#[test]
fn monotone_pairs_of_four() {
    let got: Vec<String> = collect(4, PartitionClass::PairMonotone).unwrap().iter().map(|x| x.to_string()).collect();
    assert_eq!(got.len(), 3);
    for s in ["1,2|3,4", "3,4|1,2", "1,4|2,3"] {
        assert!(got.contains(&s.to_string()), "{s}");
    }
}

#[test]
fn known_class_sizes() {
    // MP_3 by hand: 6 + 2 + 2 + 1 + 1 orderings over the five NC_3 partitions
    let mp: Vec<usize> = (1..=3).map(|n| collect(n, PartitionClass::Monotone).unwrap().len()).collect();
    assert_eq!(mp, [1, 3, 12]);
    let nc: Vec<usize> = (1..=6).map(|n| collect(n, PartitionClass::Nc).unwrap().len()).collect();
    assert_eq!(nc, [1, 2, 5, 14, 42, 132]);
}

#[test]
fn underlying_examples() {
    assert_eq!(p("2|1").underlying().to_string(), "1|2");
    assert_eq!(p("2,4|3,5|1").underlying().to_string(), "1|2,4|3,5");
}

#[test]
fn leq_examples() {
    assert!(p("1|2|3").leq(&p("1,2|3")).unwrap());
    assert!(p("2|1|3").leq(&p("1,2|3")).unwrap());
    assert!(!p("1|3|2").leq(&p("1,2|3")).unwrap());
    assert!(p("1|2").leq(&p("1,2,3")).is_err());
}

#[test]
fn quasi_meet_examples() {
    assert_eq!(p("1,2|3").quasi_meet(&p("3|1,2")).unwrap(), p("1,2|3"));
    assert_eq!(p("1,3|2").quasi_meet(&p("2,3|1")).unwrap(), p("3|1|2"));
}

#[test]
fn quasi_meet_laws_exhaustive() {
    for n in 1..=4 {
        let all = collect(n, PartitionClass::All).unwrap();
        for a in &all {
            assert_eq!(&a.quasi_meet(a).unwrap(), a);
            for b in &all {
                let ab = a.quasi_meet(b).unwrap();
                assert!(ab.leq(a).unwrap());
                assert_eq!(ab.underlying(), a.underlying().meet(&b.underlying()).unwrap());
                assert_eq!(ab == *a, a.underlying().leq(&b.underlying()).unwrap());
                assert_eq!(ab == *b, b.leq(a).unwrap());
                if n <= 3 {
                    for c in &all {
                        assert_eq!(ab.quasi_meet(c).unwrap(), a.quasi_meet(&b.quasi_meet(c).unwrap()).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_and_word() {
    assert_eq!(OrderedSetPartition::kernel(&w(&[5, 2, 3, 2, 3])), p("2,4|3,5|1"));
    assert_eq!(OrderedSetPartition::kernel(&w(&[1, 1, 1])), OrderedSetPartition::one(3).unwrap());
    assert_eq!(OrderedSetPartition::kernel(&w(&[3, 2, 1])), p("3|2|1"));
    assert_eq!(p("1,3|2").to_word(), w(&[1, 2, 1]));
    assert_eq!(p("2,4|3,5|1").to_word(), w(&[3, 1, 2, 1, 2]));
    assert_eq!(p("2,4|3,5|1").word_string().unwrap(), "31212");
    for n in 1..=5 {
        for pi in enumerate(n, PartitionClass::All).unwrap() {
            assert_eq!(OrderedSetPartition::kernel(&pi.to_word()), pi);
            assert_eq!(p(&pi.to_string()), pi);
            assert_eq!(p(&pi.word_string().unwrap()), pi);
        }
    }
}

#[test]
fn restrict_examples() {
    let s = p("3|1,2");
    assert_eq!(s.restrict(&[1, 2]).unwrap().blocks(), vec![vec![1, 2]]);
    assert_eq!(s.restrict(&[1, 3]).unwrap().blocks(), vec![vec![3], vec![1]]);
    assert_eq!(s.restrict(&[1, 2, 3]).unwrap().partition, s);
    assert!(s.restrict(&[]).is_err());
}

#[test]
fn interval_type_examples() {
    assert_eq!(p("1|2|3").interval_type(&p("1,2|3")).unwrap(), [2, 1]);
    let pi = p("2|3,1");
    assert_eq!(pi.interval_type(&pi).unwrap(), [1, 1]);
    assert_eq!(p("1|2|4|3,5").interval_type(&p("1,2,4|3,5")).unwrap(), [3, 1]);
    assert!(p("1|3|2").interval_type(&p("1,2|3")).is_err());
}

#[test]
fn interval_elements_match_filter() {
    assert_eq!(
        p("1|2").interval_elements(&p("1,2")).unwrap().collect::<Vec<_>>(),
        vec![p("1|2"), p("1,2")]
    );
    for n in 1..=5 {
        let all = collect(n, PartitionClass::All).unwrap();
        for s in &all {
            for q in &all {
                if !s.leq(q).unwrap() {
                    continue;
                }
                let ty = s.interval_type(q).unwrap();
                let mut got: Vec<_> = s.interval_elements(q).unwrap().collect();
                let expected_len: usize = ty.iter().map(|k| 1usize << (k - 1)).product();
                assert_eq!(got.len(), expected_len);
                if n <= 4 {
                    let mut brute: Vec<_> =
                        all.iter().filter(|r| s.leq(r).unwrap() && r.leq(q).unwrap()).cloned().collect();
                    got.sort();
                    brute.sort();
                    assert_eq!(got, brute);
                }
            }
        }
    }
}

#[test]
fn principal_ideal_matches_filter() {
    for n in 1..=4 {
        let all = collect(n, PartitionClass::All).unwrap();
        for pi in &all {
            let mut got = principal_ideal(pi);
            let mut brute: Vec<_> = all.iter().filter(|s| s.leq(pi).unwrap()).cloned().collect();
            got.sort();
            brute.sort();
            assert_eq!(got, brute);
        }
    }
}

#[test]
fn class_predicates() {
    assert!(p("1,4|2,3").is_monotone());
    assert!(!p("2,3|1,4").is_monotone());
    assert!(!p("1,3|2,4").is_noncrossing());
    assert!(p("1,2|3").is_interval());
}

#[test]
fn interval_maxima() {
    assert_eq!(outintmax(&[1, 2, 4], 5).unwrap(), vec![vec![1, 2], vec![4]]);
    assert_eq!(intmax(&[1, 5], 5).unwrap(), vec![vec![5, 1]]);
    assert_eq!(outintmax(&[1, 5], 5).unwrap(), vec![vec![1], vec![5]]);
    assert_eq!(intmax(&[1, 2, 3], 3).unwrap(), vec![vec![1, 2, 3]]);
    assert_eq!(outintmax(&[1, 2, 3], 3).unwrap(), vec![vec![1, 2, 3]]);
    assert!(outintmax(&[], 3).is_err());
}

#[test]
fn permute_blocks_examples() {
    let pi = p("1|2");
    assert_eq!(pi.permute_blocks(&[1, 2]).unwrap(), pi);
    assert_eq!(pi.permute_blocks(&[2, 1]).unwrap(), p("2|1"));
    let q = p("2,4|3,5|1");
    assert_eq!(q.permute_blocks(&[3, 2, 1]).unwrap().permute_blocks(&[3, 2, 1]).unwrap(), q);
    assert!(q.permute_blocks(&[1, 1, 2]).is_err());
}

#[test]
fn quasi_meet_shift_on_a_block() {
    // shifting the indices on one block of π by m leaves π⋏κ(i) unchanged
    let all = collect(4, PartitionClass::All).unwrap();
    let mut words = vec![vec![]];
    for _ in 0..4 {
        words = words
            .into_iter()
            .flat_map(|v: Vec<usize>| (1..=4).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    for pi in &all {
        for i in &words {
            let base = pi.quasi_meet(&OrderedSetPartition::kernel(&w(i))).unwrap();
            for block in pi.blocks() {
                for m in 1..=3 {
                    let shifted: Vec<usize> =
                        i.iter().enumerate().map(|(k, &x)| if block.contains(&(k + 1)) { x + m } else { x }).collect();
                    assert_eq!(pi.quasi_meet(&OrderedSetPartition::kernel(&w(&shifted))).unwrap(), base);
                }
            }
        }
    }
}

#[test]
fn pseudopartitions_count() {
    assert_eq!(OrderedPseudoPartition::all_with_len(3, 2).unwrap().len(), 8);
    assert_eq!(OrderedPseudoPartition::all_with_len(2, 2).unwrap()[0].blocks(), &[vec![1, 2], vec![]]);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_partition(max_n: usize) -> impl Strategy<Value = OrderedSetPartition> {
        (1..=max_n).prop_flat_map(|n| prop::collection::vec(1..=n, n)).prop_map(|v| OrderedSetPartition::kernel(&w(&v)))
    }

    proptest! {
        #[test]
        fn kernel_round_trip(pi in arb_partition(7)) {
            prop_assert_eq!(OrderedSetPartition::kernel(&pi.to_word()), pi.clone());
            prop_assert_eq!(parse_partition(&pi.to_string()).unwrap(), pi);
        }

        #[test]
        fn meet_is_below_both_projections(a in arb_partition(6), seed in prop::collection::vec(1usize..=6, 6)) {
            let b = OrderedSetPartition::kernel(&w(&seed[..a.n()]));
            let ab = a.quasi_meet(&b).unwrap();
            prop_assert!(ab.leq(&a).unwrap());
            prop_assert!(ab.underlying().leq(&b.underlying()).unwrap());
        }
    }
}
