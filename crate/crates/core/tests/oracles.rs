//! Library results against brute-force oracles from the rank function.

mod common;

use common::*;
use matroid_cc::{
    builtin, c_closed, canonical_key, char_poly, eu_closed, Engine, FlatLattice, Matroid, Subset,
};

fn sample() -> Vec<Matroid> {
    let mut ms = loopless_up_to(5);
    for name in [
        "fano",
        "nonfano",
        "graphic(K4)",
        "uniform(3,6)",
        "graphic(prism)",
    ] {
        ms.push(builtin(name).unwrap().matroid);
    }
    ms
}

#[test]
fn rank_and_flats_match_brute_force() {
    for m in sample() {
        for s in 0u32..1 << m.n() {
            assert_eq!(m.rank_of(Subset(s)), rank(&m, s), "{m:?} {s:b}");
        }
        let mut brute = flats(&m);
        brute.sort_by_key(|&f| (rank(&m, f), f));
        let lattice = FlatLattice::build(&m).unwrap();
        let got: Vec<u32> = lattice.flats().iter().map(|f| f.bits()).collect();
        assert_eq!(got, brute, "{m:?}");
        for &f in &brute {
            assert!(m.is_flat(Subset(f)));
        }
    }
}

#[test]
fn characteristic_polynomials() {
    for m in sample() {
        let want = chi(&m, 0, m.ground_set().bits());
        assert_eq!(poly_i128(&char_poly(&m).unwrap()), want, "{m:?}");
        let lattice = FlatLattice::build(&m).unwrap();
        for i in 0..lattice.len() {
            let f = lattice.flat(i).bits();
            assert_eq!(poly_i128(&lattice.interval_char_poly(0, i)), chi(&m, 0, f));
            assert_eq!(
                poly_i128(&lattice.interval_char_poly(i, lattice.top())),
                chi(&m, f, m.ground_set().bits())
            );
        }
    }
}

#[test]
fn kl_polynomials() {
    let engine = Engine::new();
    for m in sample() {
        let want = KlOracle::new(&m).full();
        assert_eq!(poly_i128(&engine.kl_poly(&m).unwrap()), want, "{m:?}");
    }
}

#[test]
fn scalar_invariants() {
    let engine = Engine::new();
    for m in sample() {
        assert_eq!(to_i128(&eu_closed(&m).unwrap()), eu(&m), "{m:?}");
        assert_eq!(to_i128(&c_closed(&m).unwrap()), c(&m), "{m:?}");
        assert_eq!(to_i128(&engine.m_closed(&m).unwrap()), m_value(&m), "{m:?}");
    }
}

#[test]
fn canonical_keys_match_exhaustive_search() {
    for n in 0..=6 {
        for m in matroid_cc::enumerate_matroids(
            n,
            matroid_cc::EnumerateOptions {
                loopless_only: false,
                ..Default::default()
            },
        )
        .unwrap()
        {
            let key = canonical_key(&m);
            let (bn, br, code) = brute_key(&m);
            assert_eq!(
                (key.n(), key.rank(), key.indicator().to_vec()),
                (bn, br, code),
                "{m:?}"
            );
        }
    }
    for name in ["fano", "nonfano"] {
        let m = builtin(name).unwrap().matroid;
        assert_eq!(
            canonical_key(&m).indicator(),
            brute_key(&m).2.as_slice(),
            "{name}"
        );
    }
}
