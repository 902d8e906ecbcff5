//! Property tests over enumerated, relabeled and randomly realized matroids.

mod common;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};

use matroid_cc::microlocal::is_boolean;
use matroid_cc::{
    beta, c_closed, c_flag_sum, canonical_key, char_poly, csm_weights, descending_flags, eu_closed,
    matroid_from_graph, matroid_from_matrix, uniform, Engine, FlatLattice, IntPoly, Matroid,
    Subset,
};

fn catalog() -> &'static [Matroid] {
    static CATALOG: OnceLock<Vec<Matroid>> = OnceLock::new();
    CATALOG.get_or_init(|| common::loopless_up_to(6))
}

fn small_catalog() -> Vec<Matroid> {
    catalog().iter().filter(|m| m.n() <= 5).cloned().collect()
}

fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::new)
}

/// A catalog matroid under a random relabeling.
fn relabeled() -> impl Strategy<Value = Matroid> {
    (prop::sample::select(catalog().to_vec()), any::<u64>()).prop_map(|(m, seed)| shuffle(&m, seed))
}

fn shuffle(m: &Matroid, seed: u64) -> Matroid {
    let mut perm: Vec<usize> = (0..m.n()).collect();
    perm.shuffle(&mut StdRng::seed_from_u64(seed));
    m.relabel(&perm)
}

/// Column matroid of a random small integer matrix with no zero columns.
fn realized() -> impl Strategy<Value = Matroid> {
    (1usize..=3, 1usize..=6)
        .prop_flat_map(|(rows, cols)| {
            prop::collection::vec(prop::collection::vec(-2i64..=2, cols), rows)
        })
        .prop_filter("zero column gives a loop", |rows| {
            (0..rows[0].len()).all(|j| rows.iter().any(|r| r[j] != 0))
        })
        .prop_map(|rows| {
            let rows: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect();
            matroid_from_matrix(&rows).unwrap()
        })
}

fn whitney_sign_ok(p: &IntPoly, d: usize) -> bool {
    (0..=d).all(|k| {
        let c = p.coeff(d - k);
        c.is_zero() || (c.is_negative() == (k % 2 == 1))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_axioms(m in relabeled(), a in any::<u32>(), b in any::<u32>()) {
        let full = m.ground_set().bits();
        let s = Subset(a & full);
        let t = Subset(b & full);
        let u = s.union(t);
        prop_assert!(m.rank_of(s) <= m.rank_of(u));
        prop_assert!(m.rank_of(u) <= m.rank_of(s) + u.difference(s).len());
        prop_assert!(m.rank_of(u) + m.rank_of(s.intersection(t)) <= m.rank_of(s) + m.rank_of(t));
    }

    #[test]
    fn closure_operator(m in relabeled(), a in any::<u32>(), b in any::<u32>()) {
        let full = m.ground_set().bits();
        let s = Subset(a & full);
        let t = s.union(Subset(b & full));
        let cs = m.closure(s);
        prop_assert!(s.is_subset(cs));
        prop_assert!(cs.is_subset(m.closure(t)));
        prop_assert_eq!(m.closure(cs), cs);
        prop_assert!(m.is_flat(cs));
    }

    #[test]
    fn contractions_of_flats_are_loopless(m in relabeled()) {
        let lattice = FlatLattice::build(&m).unwrap();
        for &f in lattice.flats() {
            prop_assert!(!m.contraction(f).unwrap().has_loops());
            prop_assert!(!m.localization(f).unwrap().has_loops());
        }
    }

    #[test]
    fn components_recover_summands(x in relabeled(), y in relabeled()) {
        prop_assume!(x.n() + y.n() <= 12);
        let sum = x.direct_sum(&y).unwrap();
        let mut want: Vec<_> = x.connected_components().unwrap().iter()
            .chain(y.connected_components().unwrap().iter())
            .map(canonical_key)
            .collect();
        let mut got: Vec<_> = sum.connected_components().unwrap().iter().map(canonical_key).collect();
        want.sort();
        got.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn whitney_signs_and_simplification(m in relabeled()) {
        let p = char_poly(&m).unwrap();
        prop_assert!(whitney_sign_ok(&p, m.rank()));
        prop_assert_eq!(&p, &char_poly(&m.simplify()).unwrap());
        prop_assert_eq!(p.eval(&BigInt::from(1)), BigInt::zero());
    }

    #[test]
    fn interval_property(m in relabeled()) {
        let lattice = FlatLattice::build(&m).unwrap();
        for i in 0..lattice.len() {
            let local = char_poly(&m.localization(lattice.flat(i)).unwrap()).unwrap();
            prop_assert_eq!(local, lattice.interval_char_poly(0, i));
            let quotient = char_poly(&m.contraction(lattice.flat(i)).unwrap()).unwrap();
            prop_assert_eq!(quotient, lattice.interval_char_poly(i, lattice.top()));
        }
    }

    #[test]
    fn beta_detects_connectivity(m in relabeled()) {
        prop_assume!(m.n() >= 2);
        let b = beta(&m).unwrap();
        prop_assert!(!b.is_negative());
        prop_assert_eq!(b.is_zero(), !m.is_connected());
    }

    #[test]
    fn invariants_multiply(x in prop::sample::select(small_catalog()), y in prop::sample::select(small_catalog())) {
        let e = engine();
        let sum = x.direct_sum(&y).unwrap();
        prop_assert_eq!(c_closed(&sum).unwrap(), -(c_closed(&x).unwrap() * c_closed(&y).unwrap()));
        prop_assert_eq!(eu_closed(&sum).unwrap(), eu_closed(&x).unwrap() * eu_closed(&y).unwrap());
        prop_assert_eq!(e.m_closed(&sum).unwrap(), e.m_closed(&x).unwrap() * e.m_closed(&y).unwrap());
        let product = &e.kl_poly(&x).unwrap() * &e.kl_poly(&y).unwrap();
        prop_assert_eq!(e.kl_poly(&sum).unwrap(), product);
    }

    #[test]
    fn simplification_invariance(m in relabeled()) {
        let e = engine();
        let s = m.simplify();
        prop_assert_eq!(c_closed(&m).unwrap(), c_closed(&s).unwrap());
        prop_assert_eq!(eu_closed(&m).unwrap(), eu_closed(&s).unwrap());
        prop_assert_eq!(e.m_closed(&m).unwrap(), e.m_closed(&s).unwrap());
        prop_assert_eq!(e.kl_poly(&m).unwrap(), e.kl_poly(&s).unwrap());
    }

    #[test]
    fn linear_system_residuals_vanish(m in relabeled()) {
        let e = engine();
        let mf = e.m_linear_system(&m).unwrap();
        prop_assert!(e.m_system_residuals(&m, &mf).unwrap().iter().all(Zero::is_zero));
        prop_assert_eq!(mf.get(Subset::EMPTY).unwrap(), &e.m_closed(&m).unwrap());
        prop_assert_eq!(mf.get(m.ground_set()).unwrap(), &BigInt::from(1));
    }

    #[test]
    fn csm_weights_restrict_to_flag_sum(m in relabeled()) {
        let d = m.rank();
        let descending = descending_flags(&m).unwrap();
        let mut total = BigInt::zero();
        for k in 0..d {
            let table = csm_weights(&m, k).unwrap();
            for flag in descending.iter().filter(|f| f.len() == k) {
                let (_, w) = table.weights.iter().find(|(g, _)| g == flag).expect("descending flags are flags");
                // undo the (-1)^{d-1-k} sign to recover the beta product
                total += if (d - 1 - k) % 2 == 0 { w.clone() } else { -w.clone() };
            }
        }
        let signed = if (d - 1) % 2 == 0 { total } else { -total };
        prop_assert_eq!(signed, c_flag_sum(&m).unwrap());
    }

    #[test]
    fn realized_matroids_satisfy_identities(m in realized()) {
        let e = engine();
        prop_assert!(matroid_cc::check_identity_a(&m).unwrap());
        prop_assert!(matroid_cc::check_identity_b(&m).unwrap());
        prop_assert!(e.m_closed(&m).unwrap() >= BigInt::zero());
        prop_assert_eq!(c_closed(&m).unwrap(), e.c_recursive(&m).unwrap());
    }

    #[test]
    fn kl_shape(m in relabeled()) {
        let p = engine().kl_poly(&m).unwrap();
        prop_assert!(p.all_nonnegative());
        prop_assert_eq!(p.coeff(0), BigInt::from(1));
        prop_assert!(2 * p.degree().unwrap() < m.rank().max(1));
    }

    #[test]
    fn record_round_trip(m in relabeled()) {
        use matroid_cc::record::{InvariantRecord, InvariantSet};
        let r = InvariantRecord::compute(engine(), &m, &InvariantSet::all()).unwrap();
        let line = r.to_json_line();
        let back: InvariantRecord = serde_json::from_str(&line).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_json_line(), line);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn canonical_key_survives_relabeling(m in prop::sample::select(catalog().to_vec()), seed in any::<u64>()) {
        let key = canonical_key(&m);
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..m.n()).collect();
            perm.shuffle(&mut rng);
            prop_assert_eq!(&canonical_key(&m.relabel(&perm)), &key);
        }
    }

    #[test]
    fn flag_sum_ignores_labels(m in prop::sample::select(catalog().to_vec()), seed in any::<u64>()) {
        let c = c_flag_sum(&m).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..50 {
            let mut perm: Vec<usize> = (0..m.n()).collect();
            perm.shuffle(&mut rng);
            prop_assert_eq!(&c_flag_sum(&m.relabel(&perm)).unwrap(), &c);
        }
    }

    #[test]
    fn graphic_and_uniform_m_nonnegative(
        edges in prop::collection::vec((0usize..5, 0usize..5), 1..8),
        r in 1usize..=5,
        extra in 0usize..=3,
    ) {
        let e = engine();
        prop_assume!(edges.iter().all(|(u, v)| u != v));
        let g = matroid_from_graph(5, &edges).unwrap();
        prop_assert!(e.m_closed(&g).unwrap() >= BigInt::zero());
        let u = uniform(r, r + extra).unwrap();
        prop_assert!(e.m_closed(&u).unwrap() >= BigInt::zero());
    }
}

#[test]
fn flat_counts() {
    for d in 0..=6 {
        let m = Matroid::boolean(d).unwrap();
        assert_eq!(FlatLattice::build(&m).unwrap().len(), 1 << d);
    }
    for n in 1..=7 {
        for r in 1..=n {
            let want: usize = (0..r)
                .map(|k| matroid_cc::matroid::binomial(n, k))
                .sum::<usize>()
                + 1;
            assert_eq!(
                FlatLattice::build(&uniform(r, n).unwrap()).unwrap().len(),
                want,
                "U_{{{r},{n}}}"
            );
        }
    }
}

#[test]
fn irreducibility_matches_boolean_simplification() {
    let e = engine();
    for m in catalog() {
        assert_eq!(
            e.cc_irreducible(m).unwrap(),
            is_boolean(&m.simplify()).unwrap(),
            "{m:?}"
        );
    }
}
