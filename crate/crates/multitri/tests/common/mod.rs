#![allow(dead_code)]

use multitri::pseudoline::{random_reversal_network, SupportNetwork};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A reversal network on `n` wires with `extra` events inserted at random,
/// kept only if some arrangement lives on it.
pub fn random_support(n: usize, extra: usize, seed: u64) -> Option<SupportNetwork> {
    let mut r = rng(seed);
    let mut rows = random_reversal_network(n, &mut r).rows;
    for _ in 0..extra {
        let pos = r.gen_range(0..=rows.len());
        rows.insert(pos, r.gen_range(1..n));
    }
    let s = SupportNetwork::new(n, rows).ok()?;
    s.is_valid().then_some(s)
}

/// Retries seeds until a valid support comes out.
pub fn some_support(n: usize, extra: usize, seed: u64) -> SupportNetwork {
    (0..).find_map(|i| random_support(n, extra, seed.wrapping_mul(1000).wrapping_add(i))).unwrap()
}

/// The 2-triangulation of the octagon used as a running example: the only
/// one containing [1,4] and [2,7] with indegree sequence (1,4,2,0,1).
pub fn octagon() -> multitri::KTriangulation {
    use multitri::Edge;
    let e = |u, v| Edge::new(u, v);
    multitri::KTriangulation::new(8, 2, vec![e(1, 4), e(1, 5), e(1, 6), e(2, 5), e(2, 7), e(4, 7)]).unwrap()
}
