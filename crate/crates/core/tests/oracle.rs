//! Tuple-built isomorphism sets checked against the exhaustive search.

use std::collections::BTreeSet;

use morita::finalg::{ring_isos_bruteforce, SearchOptions};
use morita::fixtures;
use morita::isoclasses::{compose, enumerate_iso0, membership_test, realize, Membership, RingMap, SixTuple};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn realized_tuples_are_oracle_isomorphisms() {
    for f in fixtures::standard() {
        let t = &f.ring;
        let oracle: BTreeSet<Vec<usize>> = ring_isos_bruteforce(t.ring(), t.ring(), opts())
            .unwrap()
            .iter()
            .map(|i| i.table().to_vec())
            .collect();
        let (c0, c1) = enumerate_iso0(t, t, opts()).unwrap();
        let mut seen = BTreeSet::new();
        for tuple in c0.iter().chain(&c1) {
            let phi = realize(tuple).unwrap();
            assert!(phi.is_isomorphism(), "{}", f.name);
            assert!(oracle.contains(phi.table()), "{}", f.name);
            // distinct tuples give distinct maps
            assert!(seen.insert(phi.table().to_vec()), "{}", f.name);
        }
        for tuple in &c0 {
            assert!(realize(tuple).unwrap().grades().semigraded);
        }
        for tuple in &c1 {
            assert!(realize(tuple).unwrap().grades().antisemigraded);
        }
    }
}

#[test]
fn membership_agrees_with_enumeration() {
    for f in fixtures::standard().into_iter().filter(|f| f.ring.order() <= 81) {
        let t = &f.ring;
        let (c0, c1) = enumerate_iso0(t, t, opts()).unwrap();
        let class0: BTreeSet<_> = c0.iter().map(|x| realize(x).unwrap().table().to_vec()).collect();
        let class1: BTreeSet<_> = c1.iter().map(|x| realize(x).unwrap().table().to_vec()).collect();
        for iso in ring_isos_bruteforce(t.ring(), t.ring(), opts()).unwrap() {
            let phi = RingMap::from_iso(t.clone(), t.clone(), &iso).unwrap();
            let m = membership_test(&phi).unwrap();
            assert_eq!(matches!(m, Membership::Class0(_)), class0.contains(phi.table()), "{}", f.name);
            assert_eq!(matches!(m, Membership::Class1(_)), class1.contains(phi.table()), "{}", f.name);
        }
    }
}

#[test]
fn class1_is_class0_of_transpose_after_swap() {
    for name in ["u2-f2", "zero-f2", "m2-f2", "z4-quotient", "u2-f3"] {
        let t = fixtures::by_name(name).unwrap().ring;
        let tt = t.transpose().unwrap();
        let alpha = t.swap_onto(&tt).unwrap();
        let alpha_tuple = match membership_test(&alpha).unwrap() {
            Membership::Class1(a) => a,
            other => panic!("{name}: swap is {}", other.label()),
        };
        let (_, c1) = enumerate_iso0(&t, &t, opts()).unwrap();
        let (from_t, _) = enumerate_iso0(&tt, &t, opts()).unwrap();
        let direct: BTreeSet<_> = c1.iter().map(|x| realize(x).unwrap().table().to_vec()).collect();
        let via: BTreeSet<_> = from_t
            .iter()
            .map(|x| realize(&compose(&alpha_tuple, x).unwrap()).unwrap().table().to_vec())
            .collect();
        assert_eq!(direct, via, "{name}");
    }
}

#[test]
fn swap_inverse_is_swap_of_transpose() {
    let t = fixtures::by_name("u2-f2").unwrap().ring;
    let tt = t.transpose().unwrap();
    let alpha = t.swap_onto(&tt).unwrap();
    let beta = tt.swap_onto(&t).unwrap();
    assert_eq!(alpha.inverse().unwrap(), beta);
}

#[test]
fn identity_composes_neutrally() {
    let t = fixtures::by_name("zero-f3").unwrap().ring;
    let (c0, c1) = enumerate_iso0(&t, &t, opts()).unwrap();
    let id = SixTuple::identity(t.clone());
    for x in c0.iter().chain(&c1) {
        assert_eq!(&compose(&id, x).unwrap(), x);
        assert_eq!(&compose(x, &id).unwrap(), x);
    }
}
