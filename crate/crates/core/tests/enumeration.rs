//! Enumeration against exhaustive basis-family search and known class counts.

mod common;

use std::collections::BTreeSet;

use common::*;
use matroid_cc::{canonical_key, enumerate_matroids, EnumerateOptions, Error, Matroid};

fn opts(loopless_only: bool, simple_only: bool) -> EnumerateOptions {
    EnumerateOptions {
        loopless_only,
        simple_only,
        max_rank: None,
    }
}

#[test]
fn classes_equal_brute_force() {
    for n in 0..=5 {
        let brute: BTreeSet<_> = all_matroids_brute(n).iter().map(canonical_key).collect();
        let got: BTreeSet<_> = enumerate_matroids(n, opts(false, false))
            .unwrap()
            .map(|m| canonical_key(&m))
            .collect();
        assert_eq!(got, brute, "n = {n}");
        let brute_loopless: BTreeSet<_> = all_matroids_brute(n)
            .iter()
            .filter(|m| !m.has_loops())
            .map(canonical_key)
            .collect();
        let got_loopless: BTreeSet<_> = enumerate_matroids(n, opts(true, false))
            .unwrap()
            .map(|m| canonical_key(&m))
            .collect();
        assert_eq!(got_loopless, brute_loopless, "n = {n}");
    }
}

#[test]
fn known_counts() {
    let all = [1, 2, 4, 8, 17, 38, 98, 306];
    let loopless = [1, 1, 2, 4, 9, 21, 60, 208];
    let simple = [1, 1, 1, 2, 4, 9, 26, 101];
    for n in 0..=7 {
        assert_eq!(
            enumerate_matroids(n, opts(false, false)).unwrap().count(),
            all[n],
            "all, n = {n}"
        );
        assert_eq!(
            enumerate_matroids(n, opts(true, false)).unwrap().count(),
            loopless[n],
            "loopless, n = {n}"
        );
        assert_eq!(
            enumerate_matroids(n, opts(true, true)).unwrap().count(),
            simple[n],
            "simple, n = {n}"
        );
    }
}

#[test]
fn representatives_are_canonical_and_valid() {
    for n in 0..=6 {
        let ms: Vec<Matroid> = enumerate_matroids(n, opts(false, false)).unwrap().collect();
        let keys: Vec<_> = ms.iter().map(canonical_key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted, "sorted and duplicate free");
        for (m, key) in ms.iter().zip(&keys) {
            assert_eq!(&key.to_matroid(), m);
            assert_eq!(
                Matroid::from_bases(m.n(), m.bases().iter().copied()).unwrap(),
                *m
            );
        }
    }
}

#[test]
fn rank_filter_and_determinism() {
    let a: Vec<_> = enumerate_matroids(
        6,
        EnumerateOptions {
            max_rank: Some(2),
            ..Default::default()
        },
    )
    .unwrap()
    .collect();
    assert!(a.iter().all(|m| m.rank() <= 2));
    let b: Vec<_> = enumerate_matroids(
        6,
        EnumerateOptions {
            max_rank: Some(2),
            ..Default::default()
        },
    )
    .unwrap()
    .collect();
    assert_eq!(a, b);
    assert_eq!(
        enumerate_matroids(9, EnumerateOptions::default()).err(),
        Some(Error::TooLarge { n: 9, max: 8 })
    );
}
