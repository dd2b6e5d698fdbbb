//! Embedding the arrangements of any support as a face of a multiassociahedron.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{enumerate, SupportNetwork};
use crate::convex::{edges_of_class, Edge, EdgeClass};
use crate::error::{invalid, param, Limits, Result};
use crate::ktri::{validate, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalityEmbedding {
    pub big_n: usize,
    pub big_k: usize,
    /// Edge standing for each event of the support.
    pub w: Vec<Edge>,
    /// Relevant edges outside `w`, present in every matching triangulation.
    pub forced: Vec<Edge>,
}

/// Event `i` (1-based) at row `i□` becomes the edge `[i-1, i+i□+m-2]` of the
/// `(n+2m-2)`-gon, for `(m-1)`-triangulations.
pub fn universality_embed(s: &SupportNetwork) -> Result<UniversalityEmbedding> {
    let m = s.m();
    if m == 0 {
        return param("support has no events");
    }
    let big_n = s.n + 2 * m - 2;
    let big_k = m - 1;
    if big_n > MAX_N {
        return param(format!("embedding needs a {big_n}-gon, above the supported maximum"));
    }
    if big_k == 0 || big_n < 2 * big_k + 1 {
        return param("support too small to embed");
    }
    let w: Vec<Edge> = (1..=m).map(|i| Edge::new(i - 1, i + s.rows[i - 1] + m - 2)).collect();
    let relevant = edges_of_class(big_n, big_k, EdgeClass::Relevant);
    let wset: BTreeSet<Edge> = w.iter().copied().collect();
    if wset.len() != m || !wset.iter().all(|e| relevant.contains(e)) {
        return invalid("embedded edges are not distinct relevant edges");
    }
    let forced = relevant.into_iter().filter(|e| !wset.contains(e)).collect();
    Ok(UniversalityEmbedding { big_n, big_k, w, forced })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalityReport {
    pub big_n: usize,
    pub big_k: usize,
    pub arrangements: usize,
    pub triangulations: usize,
    /// Contact sets and triangulations correspond through `w`.
    pub bijective: bool,
}

/// Double enumeration: arrangements on `s` by the greedy tree, and
/// triangulations containing the forced edges by testing every subset of `w`
/// of the right size in the primal.
pub fn universality_check(s: &SupportNetwork, limits: &Limits) -> Result<UniversalityReport> {
    let emb = universality_embed(s)?;
    let mut left: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    enumerate(s, &BTreeSet::new(), limits, &mut |a| {
        left.insert(a.contacts.clone());
    })?;

    let m = s.m();
    let c = s.contact_count().unwrap_or(0);
    let mut right: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut pick = Vec::new();
    let mut checked = 0usize;
    subsets(m, c, 0, &mut pick, &mut |sub| {
        checked += 1;
        limits.check(checked)?;
        let mut edges = emb.forced.clone();
        edges.extend(sub.iter().map(|&i| emb.w[i]));
        if validate(emb.big_n, emb.big_k, &edges).is_valid() {
            right.insert(sub.iter().copied().collect());
        }
        Ok(())
    })?;
    Ok(UniversalityReport {
        big_n: emb.big_n,
        big_k: emb.big_k,
        arrangements: left.len(),
        triangulations: right.len(),
        bijective: left == right,
    })
}

fn subsets(
    m: usize,
    left: usize,
    start: usize,
    pick: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if left == 0 {
        return f(pick);
    }
    for t in start..=m.saturating_sub(left) {
        pick.push(t);
        subsets(m, left - 1, t + 1, pick, f)?;
        pick.pop();
    }
    Ok(())
}
