//! Kernels, greedy multipseudotriangulations and horizon sets.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{greedy, ContactArrangement, SupportNetwork};
use crate::error::{param, Result};

/// The support minus its first `k` levels, with the inherited forced contacts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub support: SupportNetwork,
    /// Contacts of the input lying in the kernel, as kernel event indices.
    pub forced: BTreeSet<usize>,
    /// Original event index of each kernel event.
    pub origin: Vec<usize>,
}

/// An event at row `p` lies on level `min(p, n-p)`; the first `k` levels are dropped.
pub fn kernel(a: &ContactArrangement, k: usize) -> Result<Kernel> {
    let n = a.support.n;
    if n <= 2 * k {
        return param(format!("kernel of order {k} is empty for {n} wires"));
    }
    let mut rows = Vec::new();
    let mut origin = Vec::new();
    let mut forced = BTreeSet::new();
    for (t, &p) in a.support.rows.iter().enumerate() {
        if p.min(n - p) > k {
            if a.contacts.contains(&t) {
                forced.insert(rows.len());
            }
            rows.push(p - k);
            origin.push(t);
        }
    }
    Ok(Kernel { support: SupportNetwork { n: n - 2 * k, rows }, forced, origin })
}

/// The greedy `k`-pseudotriangulation, on the kernel support.
pub fn kernel_greedy(a: &ContactArrangement, k: usize) -> Result<(Kernel, ContactArrangement)> {
    let ker = kernel(a, k)?;
    let g = greedy(&ker.support, &ker.forced)?;
    Ok((ker, g))
}

/// Events of `a` that are not crossings of its greedy `k`-pseudotriangulation.
pub fn non_crossings_of_greedy(a: &ContactArrangement, k: usize) -> Result<BTreeSet<usize>> {
    let (ker, g) = kernel_greedy(a, k)?;
    let crossings: BTreeSet<usize> = g.crossings().into_iter().map(|t| ker.origin[t]).collect();
    Ok((0..a.support.m()).filter(|t| !crossings.contains(t)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HorizonSets {
    pub upper: BTreeSet<usize>,
    pub lower: BTreeSet<usize>,
    pub g: BTreeSet<usize>,
    /// Wire pair `(α, β)` of every event, wires labelled 1..n by starting row.
    pub pairs: Vec<(usize, usize)>,
}

/// Horizon sets of an arrangement without contacts.
///
/// Along one wire the events form a chain, and later list positions are
/// smaller for the cut order, so "before t" means "after t in the list".
pub fn horizon_sets(a: &ContactArrangement, k: usize) -> Result<HorizonSets> {
    if !a.contacts.is_empty() {
        return param("horizon sets need an arrangement without contacts");
    }
    let n = a.support.n;
    if n <= 2 * k {
        return param(format!("k={k} too large for {n} wires"));
    }
    let sim = a.simulate();
    if !sim.valid {
        return param("not a pseudoline arrangement");
    }
    let pairs = sim.pairs;
    let m = pairs.len();
    // at[a][b]: list position of the crossing of wires a and b
    let mut at = vec![vec![usize::MAX; n + 1]; n + 1];
    for (t, &(x, y)) in pairs.iter().enumerate() {
        at[x][y] = t;
        at[y][x] = t;
    }
    let mut upper = BTreeSet::new();
    let mut lower = BTreeSet::new();
    let mut g = BTreeSet::new();
    for t in 0..m {
        let (alpha, beta) = pairs[t];
        let gammas: Vec<usize> = (alpha + 1..=n).filter(|&c| c != beta && at[alpha][c] > t).collect();
        let deltas: Vec<usize> = (1..beta).filter(|&d| d != alpha && at[beta][d] > t).collect();
        if gammas.len() < k {
            upper.insert(t);
        }
        if deltas.len() < k {
            lower.insert(t);
        }
        // k deltas all below k gammas: take the k smallest deltas
        let blocked = k == 0
            || (deltas.len() >= k && gammas.iter().filter(|&&c| c > deltas[k - 1]).count() >= k);
        if !blocked {
            g.insert(t);
        }
    }
    Ok(HorizonSets { upper, lower, g, pairs })
}

pub fn greedy_equals_g(a: &ContactArrangement, k: usize) -> Result<bool> {
    let h = horizon_sets(a, k)?;
    Ok(non_crossings_of_greedy(a, k)? == h.g)
}

/// Checks that the greedy `(a+b)`-pseudotriangulation equals the greedy
/// `b`-pseudotriangulation of the greedy `a`-pseudotriangulation.
pub fn iterated_greedy(l: &ContactArrangement, a: usize, b: usize) -> Result<bool> {
    let (ker_ab, g_ab) = kernel_greedy(l, a + b)?;
    let (ker_a, g_a) = kernel_greedy(l, a)?;
    let (ker_b, g_b) = kernel_greedy(&g_a, b)?;
    let direct: BTreeSet<usize> = g_ab.contacts.iter().map(|&t| ker_ab.origin[t]).collect();
    let iterated: BTreeSet<usize> = g_b.contacts.iter().map(|&t| ker_a.origin[ker_b.origin[t]]).collect();
    Ok(direct == iterated)
}
