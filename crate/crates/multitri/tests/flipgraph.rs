use std::collections::{BTreeSet, VecDeque};

use multitri::flipgraph::*;
use multitri::ktri::relevant_count;
use multitri::{Limits, Error};
use num_bigint::BigInt;

/// Catalan numbers by the ballot recursion.
fn catalan_oracle(i: usize) -> BigInt {
    let mut c = vec![BigInt::from(1)];
    for m in 1..=i {
        let next: BigInt = (0..m).map(|j| &c[j] * &c[m - 1 - j]).sum();
        c.push(next);
    }
    c[i].clone()
}

/// Adjacency rebuilt from scratch: two k-triangulations are flip neighbors
/// iff their relevant edge sets differ in exactly one edge each.
fn naive_adjacency(g: &FlipGraph) -> Vec<Vec<usize>> {
    let sets: Vec<BTreeSet<_>> = g.nodes.iter().map(|t| t.relevant().iter().copied().collect()).collect();
    (0..sets.len())
        .map(|i| (0..sets.len()).filter(|&j| i != j && sets[i].difference(&sets[j]).count() == 1).collect())
        .collect()
}

fn naive_diameter(adj: &[Vec<usize>]) -> usize {
    let mut best = 0;
    for s in 0..adj.len() {
        let mut d = vec![usize::MAX; adj.len()];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if d[v] == usize::MAX {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
            }
        }
        best = best.max(*d.iter().max().unwrap());
    }
    best
}

#[test]
fn count_examples() {
    let c = |n, k| count_hankel(n, k).unwrap();
    assert_eq!(c(7, 2), 14.into());
    assert_eq!(c(8, 2), 84.into());
    assert_eq!(c(6, 1), 14.into());
    assert_eq!(count_product(8, 3).unwrap(), 4.into());
    assert_eq!(count_product(10, 2).unwrap(), 4719.into());
    for k in 1..=6 {
        assert_eq!(count_product(2 * k + 1, k).unwrap(), 1.into());
        assert_eq!(c(2 * k + 2, k), (k + 1).into());
    }
}

#[test]
fn hankel_equals_product_and_catalan() {
    for n in 3..=30 {
        assert_eq!(count_hankel(n, 1).unwrap(), catalan_oracle(n - 2));
        assert_eq!(catalan(n - 2), catalan_oracle(n - 2));
    }
    for k in 1..=6 {
        for n in 2 * k + 1..=40 {
            assert_eq!(count_hankel(n, k).unwrap(), count_product(n, k).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn enumeration_matches_counts() {
    for (k, top) in [(1, 10), (2, 9), (3, 9)] {
        for n in 2 * k + 1..=top {
            let all = enumerate(n, k, &Limits::unlimited()).unwrap();
            assert_eq!(BigInt::from(all.len()), count_hankel(n, k).unwrap());
            assert!(all.iter().all(|t| t.validate().is_valid()));
            let distinct: BTreeSet<_> = all.iter().map(key_of).collect();
            assert_eq!(distinct.len(), all.len());
        }
    }
}

#[test]
fn graph_structure_against_rebuilt_adjacency() {
    for (n, k) in [(6, 1), (7, 1), (8, 1), (7, 2), (8, 2), (9, 2), (9, 3), (10, 3)] {
        let g = build_flip_graph(n, k, &Limits::unlimited()).unwrap();
        assert!(g.is_regular() && g.is_connected() && g.is_symmetric());
        let naive = naive_adjacency(&g);
        for (i, a) in g.adjacency.iter().enumerate() {
            let mut a: Vec<usize> = a.iter().map(|&j| j as usize).collect();
            a.sort();
            assert_eq!(a, naive[i]);
            assert_eq!(a.len(), relevant_count(n, k));
        }
        let d = diameter(&g);
        assert_eq!(d, naive_diameter(&naive), "n={n} k={k}");
        assert_eq!(d, diameter_all_sources(&g));
    }
}

#[test]
fn small_diameters() {
    let d = |n, k| diameter(&build_flip_graph(n, k, &Limits::unlimited()).unwrap());
    assert_eq!(d(8, 2), 6);
    assert_eq!(d(9, 3), 3);
    assert_eq!(d(2 * 2 + 2, 2), 1);
    assert_eq!(d(5, 2), 0);
}

#[test]
fn diameter_growth_bound() {
    for k in 1..=2 {
        let ds: Vec<usize> = (2 * k + 1..=2 * k + 6).map(|n| diameter(&build_flip_graph(n, k, &Limits::unlimited()).unwrap())).collect();
        for w in ds.windows(2) {
            assert!(w[1] <= w[0] + 4 * k - 1);
        }
    }
    assert_eq!(diameter_upper_bound(13, 1), Some(16));
    assert_eq!(diameter_upper_bound(12, 1), None);
}

#[test]
fn dot_output() {
    let g = build_flip_graph(5, 1, &Limits::unlimited()).unwrap();
    let dot = g.to_dot();
    assert!(dot.starts_with("graph flips_5_1 {"));
    assert_eq!(dot.matches(" -- ").count(), 5);
}

#[test]
fn limits_are_enforced() {
    let r = enumerate(12, 2, &Limits::new(Some(100), None));
    assert!(matches!(r, Err(Error::Limit(_))));
    assert!(matches!(enumerate(40, 2, &Limits::unlimited()), Err(Error::Param(_))));
    assert!(count_hankel(3, 2).is_err());
}

#[test]
fn parallel_build_is_deterministic() {
    let a = build_flip_graph(10, 2, &Limits::unlimited()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let b = pool.install(|| build_flip_graph(10, 2, &Limits::unlimited()).unwrap());
    assert_eq!(a.nodes, b.nodes);
    assert_eq!(a.adjacency, b.adjacency);
}
