mod common;

use std::collections::BTreeSet;

use multitri::dyck::*;
use multitri::flipgraph::{count_hankel, enumerate};
use multitri::{Edge, KTriangulation, Limits};
use num_bigint::BigInt;
use proptest::prelude::*;

fn tri(n: usize, k: usize, edges: &[(usize, usize)]) -> KTriangulation {
    KTriangulation::new(n, k, edges.iter().map(|&(u, v)| Edge::new(u, v)).collect()).unwrap()
}

#[test]
fn path_counts() {
    assert_eq!(dyck_paths(4).len(), 14);
    assert_eq!(enumerate_dyck_kpaths(4, 2, &Limits::unlimited()).unwrap().len(), 84);
    assert_eq!(enumerate_dyck_kpaths(0, 3, &Limits::unlimited()).unwrap().len(), 1);
    // nested families counted against the determinant formula
    for k in 1..=3 {
        for l in 0..=5 {
            let got = enumerate_dyck_kpaths(l, k, &Limits::unlimited()).unwrap();
            assert_eq!(BigInt::from(got.len()), count_hankel(l + 2 * k, k).unwrap(), "l={l} k={k}");
            assert!(got.iter().all(|p| p.is_valid()));
        }
    }
}

#[test]
fn parsing() {
    let p = DyckPath::parse("NNENEE").unwrap();
    assert_eq!(p.semilength(), 3);
    assert_eq!(p.north_runs(), vec![2, 1, 0]);
    assert_eq!(p.to_string(), "NNENEE");
    assert!(DyckPath::parse("ENNE").is_err());
    assert!(DyckPath::parse("NNE").is_err());
    assert!(DyckPath::parse("NXE").is_err());
    assert_eq!(serde_json::to_string(&p).unwrap(), "\"NNENEE\"");
}

#[test]
fn octagon_example() {
    let t = common::octagon();
    assert_eq!(indegree_sequence(&t), vec![1, 4, 2, 0, 1]);
    let d = map_d(&t).unwrap();
    let words: Vec<String> = d.0.iter().map(|p| p.to_string()).collect();
    assert_eq!(words, ["NENNNEEE", "NENNEENE"]);
    assert!(d.is_valid());
    assert_eq!(d.signature(), vec![1, 4, 2, 0, 1]);
}

#[test]
fn direct_bijection_for_triangulations() {
    for n in 3..=10 {
        let all = enumerate(n, 1, &Limits::unlimited()).unwrap();
        let mut seen = BTreeSet::new();
        for t in &all {
            let p = k1_bijection(t).unwrap();
            assert!(p.is_valid());
            assert_eq!(p.semilength(), n - 2);
            assert_eq!(&k1_inverse(&p).unwrap(), t);
            // for k = 1 the star map and the direct bijection agree
            assert_eq!(map_d(t).unwrap().0, vec![p.clone()]);
            seen.insert(p);
        }
        assert_eq!(seen.len(), dyck_paths(n - 2).len());
    }
    assert!(k1_bijection(&common::octagon()).is_err());
}

#[test]
fn star_map_is_valid_and_preserves_signatures() {
    for (n, k) in [(5, 2), (6, 2), (7, 2), (8, 2), (9, 2), (7, 3), (8, 3), (9, 3), (10, 3)] {
        for t in enumerate(n, k, &Limits::unlimited()).unwrap() {
            let d = map_d(&t).unwrap();
            assert!(d.is_valid(), "{t:?}");
            assert_eq!(d.0.len(), k);
            assert_eq!(d.0[0].semilength(), n - 2 * k);
            assert_eq!(d.signature(), indegree_sequence(&t));
        }
    }
}

#[test]
fn injectivity() {
    for n in 5..=7 {
        assert!(injectivity_report(n, 2, &Limits::unlimited()).unwrap().is_empty());
    }
    let c = injectivity_report(8, 2, &Limits::unlimited()).unwrap();
    assert_eq!(c.len(), 1);
    let mut pair = c[0].triangulations.clone();
    pair.sort();
    let mut want = vec![
        tri(8, 2, &[(0, 4), (0, 5), (1, 4), (1, 5), (2, 5), (4, 7)]),
        tri(8, 2, &[(0, 3), (0, 4), (1, 5), (1, 6), (2, 5), (4, 7)]),
    ];
    want.sort();
    assert_eq!(pair, want);
    let words: Vec<String> = c[0].path.0.iter().map(|p| p.to_string()).collect();
    assert_eq!(words, ["NNNENEEE", "NNENEENE"]);
}

#[test]
fn distributions_agree() {
    for k in 1..=2 {
        for n in 2 * k + 1..=9 {
            assert!(distribution_compare(n, k, &Limits::unlimited()).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn monotone_on_increasing_flips() {
    for (n, k) in [(7, 2), (8, 2), (9, 3)] {
        let r = check_monotone(n, k, &Limits::unlimited()).unwrap();
        assert!(r.is_ok(), "{r:?}");
    }
}

fn arb_dyck(max: usize) -> impl Strategy<Value = DyckPath> {
    (0..=max, any::<u64>()).prop_map(|(l, seed)| {
        let all = dyck_paths(l);
        all[(seed % all.len() as u64) as usize].clone()
    })
}

proptest! {
    #[test]
    fn runs_round_trip(p in arb_dyck(7)) {
        prop_assert_eq!(DyckPath::from_runs(&p.north_runs()), p.clone());
        prop_assert_eq!(DyckPath::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn above_is_a_partial_order(a in arb_dyck(5), b in arb_dyck(5), c in arb_dyck(5)) {
        prop_assert!(a.is_above(&a));
        if a.is_above(&b) && b.is_above(&a) {
            prop_assert_eq!(&a, &b);
        }
        if a.is_above(&b) && b.is_above(&c) {
            prop_assert!(a.is_above(&c));
        }
    }

    #[test]
    fn direct_inverse_round_trip(p in arb_dyck(9)) {
        prop_assume!(p.semilength() > 0);
        let t = k1_inverse(&p).unwrap();
        prop_assert_eq!(k1_bijection(&t).unwrap(), p);
    }
}
