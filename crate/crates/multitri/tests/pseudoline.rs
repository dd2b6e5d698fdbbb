mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use multitri::convex::{classify_edge, EdgeClass};
use multitri::flipgraph::enumerate as all_triangulations;
use multitri::ktri::{common_bisector, t_min};
use multitri::pseudoline::*;
use multitri::{Edge, KTriangulation, Limits};
use proptest::prelude::*;

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn arrangement(n: usize, rows: &[usize], contacts: &[usize]) -> ContactArrangement {
    ContactArrangement { support: SupportNetwork::new(n, rows.to_vec()).unwrap(), contacts: set(contacts) }
}

fn all_on(s: &SupportNetwork, forced: &BTreeSet<usize>) -> Vec<ContactArrangement> {
    enumerate_collect(s, forced, &Limits::unlimited()).unwrap()
}

#[test]
fn simulate_small_cases() {
    assert!(arrangement(2, &[1, 1], &[0]).simulate().valid);
    let bad = arrangement(2, &[1, 1], &[0, 1]).simulate();
    assert!(!bad.valid);
    assert_eq!(bad.offending, Some((1, 2)));
    let rev = arrangement(3, &[1, 2, 1], &[]);
    let sim = rev.simulate();
    assert!(sim.valid);
    assert_eq!(rev.crossings().len(), 3);
    assert_eq!(sim.pairs, vec![(1, 2), (1, 3), (2, 3)]);
    assert!(ContactArrangement::new(SupportNetwork::new(2, vec![1, 1]).unwrap(), set(&[0, 1])).is_err());
}

#[test]
fn bad_rows_rejected() {
    assert!(SupportNetwork::new(3, vec![0]).is_err());
    assert!(SupportNetwork::new(3, vec![3]).is_err());
}

#[test]
fn two_wires_give_a_complete_graph() {
    for p in 1..=5 {
        let s = SupportNetwork::new(2, vec![1; p + 1]).unwrap();
        let all = all_on(&s, &BTreeSet::new());
        assert_eq!(all.len(), p + 1);
        for a in &all {
            let mut reached = BTreeSet::new();
            for &v in &a.contacts {
                let (b, _, _) = a.flip(v).unwrap();
                reached.insert(b.contacts.clone());
            }
            reached.insert(a.contacts.clone());
            assert_eq!(reached.len(), p + 1);
        }
        let g = greedy(&s, &BTreeSet::new()).unwrap();
        assert!(!g.contacts.contains(&0), "greedy crosses at the first event");
    }
}

#[test]
fn flip_is_an_involution() {
    for seed in 0..40 {
        let s = common::some_support(4, 3, seed);
        for a in all_on(&s, &BTreeSet::new()) {
            for &v in &a.contacts {
                let (b, w, dir) = a.flip(v).unwrap();
                assert!(b.simulate().valid);
                let (c, back, dir2) = b.flip(w).unwrap();
                assert_eq!(back, v);
                assert_eq!(c, a);
                assert_ne!(dir, dir2);
            }
        }
    }
    assert!(arrangement(3, &[1, 2, 1], &[]).flip(0).is_err());
}

#[test]
fn greedy_is_the_unique_source() {
    for seed in 0..60 {
        let s = common::some_support(3 + (seed as usize % 2), 1 + seed as usize % 4, seed);
        let all = all_on(&s, &BTreeSet::new());
        let g = greedy(&s, &BTreeSet::new()).unwrap();
        let sources: Vec<_> = all
            .iter()
            .filter(|a| is_increasing_source(a, &BTreeSet::new()).unwrap())
            .collect();
        assert_eq!(sources, vec![&g]);
        // acyclic: repeatedly strip sources of the increasing-flip digraph
        let index: HashMap<_, _> = all.iter().enumerate().map(|(i, a)| (a.contacts.clone(), i)).collect();
        let mut indeg = vec![0usize; all.len()];
        let mut out = vec![Vec::new(); all.len()];
        for (i, a) in all.iter().enumerate() {
            for &v in &a.contacts {
                let (b, _, dir) = a.flip(v).unwrap();
                if dir == PseudoFlipDirection::Increasing {
                    let j = index[&b.contacts];
                    out[i].push(j);
                    indeg[j] += 1;
                }
            }
        }
        let mut stack: Vec<usize> = (0..all.len()).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = stack.pop() {
            seen += 1;
            for &j in &out[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        assert_eq!(seen, all.len());
    }
}

#[test]
fn greedy_ignores_the_linear_extension() {
    for seed in 0..50 {
        let s = common::some_support(5, 3, seed);
        let g = greedy(&s, &BTreeSet::new()).unwrap();
        let (t, ids) = random_commutations(&s, 200, &mut common::rng(seed));
        let h = greedy(&t, &BTreeSet::new()).unwrap();
        let mapped: BTreeSet<usize> = h.contacts.iter().map(|&i| ids[i]).collect();
        assert_eq!(mapped, g.contacts);
        let (nf1, _) = s.normal_form();
        let (nf2, _) = t.normal_form();
        assert_eq!(nf1, nf2);
    }
}

#[test]
fn constrained_greedy_reports_empty_families() {
    // forcing both events of a two-wire support as contacts leaves no crossing
    let s = SupportNetwork::new(2, vec![1, 1]).unwrap();
    assert!(greedy(&s, &set(&[0, 1])).is_err());
    assert_eq!(enumerate_collect(&s, &set(&[0, 1]), &Limits::unlimited()).unwrap().len(), 0);
    assert_eq!(greedy(&s, &set(&[0])).unwrap().contacts, set(&[0]));
}

#[test]
fn enumeration_of_convex_kernels() {
    let cs = convex_kernel(8, 2).unwrap();
    assert_eq!(all_on(&cs.support, &BTreeSet::new()).len(), 84);
    for (n, k) in [(6, 2), (7, 2), (8, 2), (7, 3), (8, 1), (9, 2)] {
        let cs = convex_kernel(n, k).unwrap();
        let via_dual: BTreeSet<KTriangulation> =
            all_on(&cs.support, &BTreeSet::new()).iter().map(|a| primalize(&cs, a).unwrap()).collect();
        let direct: BTreeSet<KTriangulation> =
            all_triangulations(n, k, &Limits::unlimited()).unwrap().into_iter().collect();
        assert_eq!(via_dual, direct, "n={n} k={k}");
    }
}

#[test]
fn enumeration_respects_limits() {
    let cs = convex_kernel(9, 2).unwrap();
    let r = enumerate(&cs.support, &BTreeSet::new(), &Limits::new(Some(10), None), &mut |_| {});
    assert!(matches!(r, Err(multitri::Error::Limit(_))));
}

#[test]
fn dual_of_the_octagon_example() {
    let t = common::octagon();
    let (cs, a) = dualize(&t).unwrap();
    assert_eq!(a.support.n, 4);
    assert_eq!(a.contacts.len(), 6);
    assert_eq!(a.crossings().len(), 6);
    assert_eq!(primalize(&cs, &a).unwrap(), t);
    let one = convex_kernel(7, 3).unwrap();
    assert_eq!(one.support.n, 1);
    assert_eq!(one.support.m(), 0);
}

#[test]
fn wires_are_stars_and_crossings_are_bisectors() {
    for (n, k) in [(7, 2), (8, 2), (9, 2), (9, 3)] {
        for t in all_triangulations(n, k, &Limits::unlimited()).unwrap().iter().take(40) {
            let (cs, a) = dualize(t).unwrap();
            let sim = a.simulate();
            let stars = t.star_decomposition().unwrap();
            let mut touched: BTreeMap<usize, BTreeSet<Edge>> = BTreeMap::new();
            for &c in &a.contacts {
                let (x, y) = sim.pairs[c];
                touched.entry(x).or_default().insert(cs.edges[c]);
                touched.entry(y).or_default().insert(cs.edges[c]);
            }
            let mut star_of = BTreeMap::new();
            for (&w, edges) in &touched {
                let hits: Vec<usize> = (0..stars.len())
                    .filter(|&i| {
                        let rel: BTreeSet<Edge> = stars[i]
                            .edges()
                            .into_iter()
                            .filter(|&e| classify_edge(e, n, k) == EdgeClass::Relevant)
                            .collect();
                        &rel == edges
                    })
                    .collect();
                assert_eq!(hits.len(), 1);
                star_of.insert(w, hits[0]);
            }
            for x in a.crossings() {
                let (p, q) = sim.pairs[x];
                let b = common_bisector(&stars[star_of[&p]], &stars[star_of[&q]], n).unwrap();
                assert_eq!(b, cs.edges[x]);
            }
        }
    }
}

#[test]
fn engine_flip_commutes_with_primal_flip() {
    for t in all_triangulations(8, 2, &Limits::unlimited()).unwrap() {
        let (cs, a) = dualize(&t).unwrap();
        for &f in t.relevant() {
            let (t2, rec) = t.flip(f).unwrap();
            let (b, w, _) = a.flip(cs.event_of(f).unwrap()).unwrap();
            assert_eq!(cs.edges[w], rec.inserted);
            assert_eq!(primalize(&cs, &b).unwrap(), t2);
        }
    }
}

#[test]
fn convex_greedy_is_the_minimal_triangulation() {
    for n in 4..=13 {
        for k in 1..=(n - 1) / 2 {
            let cs = convex_kernel(n, k).unwrap();
            let g = greedy(&cs.support, &BTreeSet::new()).unwrap();
            assert_eq!(primalize(&cs, &g).unwrap(), t_min(n, k).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn parallel_chords_commute() {
    let cs = convex_support(9).unwrap();
    let s = &cs.support;
    for i in 0..s.m() - 1 {
        if cs.edges[i].slope() % 9 == cs.edges[i + 1].slope() % 9 {
            assert!(s.commutes(i));
        }
    }
    assert_eq!(s.m(), 36);
    assert!(s.is_valid());
}

#[test]
fn cut_at_makes_a_unique_minimum() {
    let cs = convex_support(8).unwrap();
    let s = &cs.support;
    let z = cs.event_of(Edge::new(0, 1)).unwrap();
    let reach = s.reachability();
    let minimal: Vec<usize> =
        (0..s.m()).filter(|&v| (0..s.m()).all(|w| w == v || !(reach[v][w / 64] >> (w % 64) & 1 == 1))).collect();
    assert_eq!(minimal, vec![z]);
}

#[test]
fn kernels_of_the_convex_arrangement() {
    let cs = convex_support(8).unwrap();
    let a = cs.arrangement();
    let k2 = kernel(&a, 2).unwrap();
    assert_eq!(k2.support.m(), 12);
    let edges: BTreeSet<Edge> = k2.origin.iter().map(|&t| cs.edges[t]).collect();
    let relevant: BTreeSet<Edge> = multitri::convex::edges_of_class(8, 2, EdgeClass::Relevant).into_iter().collect();
    assert_eq!(edges, relevant);
    let k0 = kernel(&a, 0).unwrap();
    assert_eq!(k0.support, a.support);
    let k1 = kernel(&a, 1).unwrap();
    let k11 = kernel(&ContactArrangement { support: k1.support.clone(), contacts: BTreeSet::new() }, 1).unwrap();
    let composed: Vec<usize> = k11.origin.iter().map(|&t| k1.origin[t]).collect();
    assert_eq!(composed, k2.origin);
    assert_eq!(k11.support, k2.support);
    assert!(kernel(&a, 4).is_err());
}

#[test]
fn convex_horizon_sets() {
    for n in [6, 8, 9] {
        let a = convex_support(n).unwrap().arrangement();
        for k in 1..=2 {
            let h = horizon_sets(&a, k).unwrap();
            let pairs = |s: &BTreeSet<usize>| s.iter().map(|&t| h.pairs[t]).collect::<BTreeSet<_>>();
            let up: BTreeSet<_> = (1..=n).flat_map(|x| (x + 1..=(x + k).min(n)).map(move |y| (x, y))).collect();
            let low: BTreeSet<_> = (1..=k).flat_map(|x| (x + 1..=n).map(move |y| (x, y))).collect();
            assert_eq!(pairs(&h.upper), up);
            assert_eq!(pairs(&h.lower), low);
            assert_eq!(h.g, h.upper.union(&h.lower).copied().collect());
            assert!(greedy_equals_g(&a, k).unwrap());
        }
    }
    // k=1 on six points: greedy contacts are the kernel part of G
    let cs = convex_support(6).unwrap();
    let a = cs.arrangement();
    let h = horizon_sets(&a, 1).unwrap();
    let (ker, g) = kernel_greedy(&a, 1).unwrap();
    let contacts: BTreeSet<usize> = g.contacts.iter().map(|&t| ker.origin[t]).collect();
    let in_kernel: BTreeSet<usize> = ker.origin.iter().copied().collect();
    assert_eq!(contacts, h.g.intersection(&in_kernel).copied().collect());
    assert!(horizon_sets(&a, 3).is_err());
    assert!(horizon_sets(&arrangement(2, &[1, 1], &[0]), 0).is_err());
}

#[test]
fn iterated_greedy_on_convex_points() {
    let a = convex_support(8).unwrap().arrangement();
    assert!(iterated_greedy(&a, 1, 1).unwrap());
    assert!(iterated_greedy(&a, 0, 2).unwrap());
    assert!(iterated_greedy(&a, 2, 1).unwrap());
    assert!(iterated_greedy(&a, 1, 2).is_ok());
}

#[test]
fn universality_examples() {
    let r = universality_check(&SupportNetwork::new(2, vec![1, 1]).unwrap(), &Limits::unlimited()).unwrap();
    assert_eq!((r.big_n, r.big_k, r.arrangements, r.triangulations), (4, 1, 2, 2));
    assert!(r.bijective);
    let r = universality_check(&SupportNetwork::new(3, vec![1, 2, 1]).unwrap(), &Limits::unlimited()).unwrap();
    assert_eq!((r.big_n, r.big_k), (7, 2));
    assert!(r.bijective);
    let e = universality_embed(&SupportNetwork::new(3, vec![1, 2, 1]).unwrap()).unwrap();
    assert_eq!(e.w, vec![Edge::new(0, 3), Edge::new(1, 5), Edge::new(2, 5)]);
}

#[test]
fn support_text_round_trip() {
    let s = SupportNetwork::new(3, vec![1, 2, 1, 1]).unwrap();
    let text = format_support(&s, &set(&[1]), Some(&set(&[1])));
    let (s2, forced, contacts) = parse_support(&text).unwrap();
    assert_eq!(s2, s);
    assert_eq!(forced, set(&[1]));
    assert_eq!(contacts, Some(set(&[1])));
    assert!(parse_support("3 2\n1 2 1\n\n").is_err());
    assert!(parse_support("3 1\n1\n5\n").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_brute_force(n in 2usize..=4, extra in 0usize..=3, seed in any::<u64>()) {
        if let Some(s) = common::random_support(n, extra, seed) {
            prop_assume!(s.m() <= 9);
            let streamed: Vec<BTreeSet<usize>> = all_on(&s, &BTreeSet::new()).into_iter().map(|a| a.contacts).collect();
            let unique: BTreeSet<_> = streamed.iter().cloned().collect();
            prop_assert_eq!(unique.len(), streamed.len());
            let brute: BTreeSet<_> = brute_force(&s, &BTreeSet::new()).into_iter().collect();
            prop_assert_eq!(unique, brute);
        }
    }

    #[test]
    fn constrained_enumeration_matches_brute_force(extra in 1usize..=4, seed in any::<u64>(), pick in any::<u64>()) {
        if let Some(s) = common::random_support(3, extra, seed) {
            let forced: BTreeSet<usize> = (0..s.m()).filter(|i| pick >> i & 1 == 1).take(2).collect();
            let streamed: BTreeSet<_> = all_on(&s, &forced).into_iter().map(|a| a.contacts).collect();
            let brute: BTreeSet<_> = brute_force(&s, &forced).into_iter().collect();
            prop_assert_eq!(streamed, brute);
        }
    }

    #[test]
    fn horizon_matches_greedy_on_random_networks(n in 4usize..=7, seed in any::<u64>()) {
        let s = random_reversal_network(n, &mut common::rng(seed));
        let a = ContactArrangement { support: s, contacts: BTreeSet::new() };
        for k in 1..=(n - 1) / 2 {
            let h = horizon_sets(&a, k).unwrap();
            prop_assert!(h.upper.is_subset(&h.g) && h.lower.is_subset(&h.g));
            prop_assert!(greedy_equals_g(&a, k).unwrap());
        }
    }

    #[test]
    fn iterated_greedy_on_random_networks(seed in any::<u64>()) {
        let s = random_reversal_network(7, &mut common::rng(seed));
        let a = ContactArrangement { support: s, contacts: BTreeSet::new() };
        prop_assert!(iterated_greedy(&a, 1, 1).unwrap());
        prop_assert!(iterated_greedy(&a, 1, 2).unwrap());
    }

    #[test]
    fn universality_on_random_supports(n in 2usize..=3, extra in 0usize..=2, seed in any::<u64>()) {
        if let Some(s) = common::random_support(n, extra, seed) {
            prop_assume!(s.m() >= 2);
            let r = universality_check(&s, &Limits::unlimited()).unwrap();
            prop_assert!(r.bijective);
            prop_assert_eq!(r.arrangements, r.triangulations);
        }
    }
}
