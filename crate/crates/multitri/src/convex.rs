//! Vertices, chords, crossings, angles and bisectors of the convex n-gon.
//!
//! Vertices are the residues `0..n` placed counterclockwise on a circle.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{invalid, Result};

/// A chord of the n-gon, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonical edge on the unordered pair `{a, b}`. Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "an edge needs two distinct vertices");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    /// Same as [`Edge::new`] with labels taken mod `n`.
    pub fn modn(a: i64, b: i64, n: usize) -> Edge {
        let n = n as i64;
        Edge::new(a.rem_euclid(n) as usize, b.rem_euclid(n) as usize)
    }

    pub fn checked(a: usize, b: usize, n: usize) -> Result<Edge> {
        if a >= n || b >= n {
            return invalid(format!("vertex out of range in [{a},{b}] for n={n}"));
        }
        if a == b {
            return invalid(format!("degenerate edge [{a},{a}]"));
        }
        Ok(Edge::new(a, b))
    }

    pub fn length(&self, n: usize) -> usize {
        cyclic_len(self.u, self.v, n)
    }

    pub fn has(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint different from `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// `u + v`, the slope parameter used to orient flips.
    pub fn slope(&self) -> usize {
        self.u + self.v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.u, self.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Edge, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        if a == b {
            return Err(serde::de::Error::custom("degenerate edge"));
        }
        Ok(Edge::new(a, b))
    }
}

/// Cyclic distance between two vertices.
pub fn cyclic_len(a: usize, b: usize, n: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(n - d)
}

/// Number of counterclockwise steps from `a` to `b`.
pub fn ccw_steps(a: usize, b: usize, n: usize) -> usize {
    (b + n - a) % n
}

/// Whether `t` lies in the open cyclic interval from `a` to `b` (counterclockwise).
pub fn in_open(t: usize, a: usize, b: usize, n: usize) -> bool {
    let s = ccw_steps(a, t, n);
    s > 0 && s < ccw_steps(a, b, n)
}

/// Strict interleaving of endpoints. Shared vertices never cross.
pub fn crosses(e: Edge, f: Edge) -> bool {
    (e.u < f.u && f.u < e.v && e.v < f.v) || (f.u < e.u && e.u < f.v && f.v < e.v)
}

/// [`crosses`] with a range check against `n`.
pub fn crosses_checked(e: Edge, f: Edge, n: usize) -> Result<bool> {
    if e.v >= n || f.v >= n {
        return invalid(format!("edge outside Z_{n}"));
    }
    Ok(crosses(e, f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    Relevant,
    Boundary,
    Irrelevant,
}

pub fn classify_edge(e: Edge, n: usize, k: usize) -> EdgeClass {
    let l = e.length(n);
    match l.cmp(&k) {
        std::cmp::Ordering::Greater => EdgeClass::Relevant,
        std::cmp::Ordering::Equal => EdgeClass::Boundary,
        std::cmp::Ordering::Less => EdgeClass::Irrelevant,
    }
}

/// All chords of the n-gon in lexicographic order.
pub fn all_edges(n: usize) -> Vec<Edge> {
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push(Edge { u, v });
        }
    }
    out
}

/// Edges of a given class, lexicographically sorted.
pub fn edges_of_class(n: usize, k: usize, class: EdgeClass) -> Vec<Edge> {
    all_edges(n)
        .into_iter()
        .filter(|e| classify_edge(*e, n, k) == class)
        .collect()
}

/// Position of `e` in [`all_edges`].
pub fn edge_index(e: Edge, n: usize) -> usize {
    e.u * n - e.u * (e.u + 1) / 2 + (e.v - e.u - 1)
}

// Small fixed-width bitsets for the crossing graph.
type Bits = Vec<u64>;

fn bits_new(len: usize) -> Bits {
    vec![0; len.div_ceil(64).max(1)]
}

fn bits_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_count(a: &Bits) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

fn bits_iter(a: &Bits) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + t)
        })
    })
}

fn crossing_graph(edges: &[Edge]) -> Vec<Bits> {
    let m = edges.len();
    let mut adj = vec![bits_new(m); m];
    for i in 0..m {
        for j in i + 1..m {
            if crosses(edges[i], edges[j]) {
                bits_set(&mut adj[i], j);
                bits_set(&mut adj[j], i);
            }
        }
    }
    adj
}

/// Size of the largest set of pairwise crossing edges.
///
/// Bron-Kerbosch with Tomita pivoting on the crossing graph.
pub fn max_mutual_crossing(edges: &[Edge]) -> usize {
    if edges.is_empty() {
        return 0;
    }
    let adj = crossing_graph(edges);
    let mut p = bits_new(edges.len());
    for i in 0..edges.len() {
        bits_set(&mut p, i);
    }
    let x = bits_new(edges.len());
    let mut best = 0;
    bron_kerbosch(&adj, 0, p, x, &mut best);
    best
}

fn bron_kerbosch(adj: &[Bits], size: usize, p: Bits, x: Bits, best: &mut usize) {
    let pc = bits_count(&p);
    if pc == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + pc <= *best {
        return;
    }
    let pivot = bits_iter(&p)
        .chain(bits_iter(&x))
        .max_by_key(|&u| bits_count(&bits_and(&p, &adj[u])))
        .unwrap();
    let candidates: Vec<usize> = bits_iter(&p)
        .filter(|&v| adj[pivot][v / 64] & (1 << (v % 64)) == 0)
        .collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        bron_kerbosch(adj, size + 1, bits_and(&p, &adj[v]), bits_and(&x, &adj[v]), best);
        p[v / 64] &= !(1 << (v % 64));
        bits_set(&mut x, v);
    }
}

/// Some set of `size` pairwise crossing edges, if one exists.
pub fn find_crossing(edges: &[Edge], size: usize) -> Option<Vec<Edge>> {
    if size == 0 {
        return Some(Vec::new());
    }
    let adj = crossing_graph(edges);
    let mut all = bits_new(edges.len());
    for i in 0..edges.len() {
        bits_set(&mut all, i);
    }
    let mut chosen = Vec::new();
    if extend_crossing(&adj, all, size, &mut chosen) {
        Some(chosen.into_iter().map(|i| edges[i]).collect())
    } else {
        None
    }
}

fn extend_crossing(adj: &[Bits], cand: Bits, size: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == size {
        return true;
    }
    if chosen.len() + bits_count(&cand) < size {
        return false;
    }
    let list: Vec<usize> = bits_iter(&cand).collect();
    for (pos, &v) in list.iter().enumerate() {
        // only extend with larger indices to avoid permutations
        let mut next = bits_and(&cand, &adj[v]);
        for &w in &list[..=pos] {
            next[w / 64] &= !(1 << (w % 64));
        }
        chosen.push(v);
        if extend_crossing(adj, next, size, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// An angle at `v` between the edges `[u,v]` and `[v,w]`, with `u ≺ v ≺ w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Angle {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl Angle {
    /// Whether `t` lies inside the angle, i.e. strictly between `w` and `u`.
    pub fn contains(&self, t: usize, n: usize) -> bool {
        in_open(t, self.w, self.u, n)
    }

    pub fn is_relevant(&self, n: usize, k: usize) -> bool {
        Edge::new(self.u, self.v).length(n) >= k && Edge::new(self.v, self.w).length(n) >= k
    }
}

/// Neighbor masks of an edge set (requires `n <= 64`).
pub(crate) fn neighbor_masks(edges: &[Edge], n: usize) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    for e in edges {
        adj[e.u] |= 1 << e.v;
        adj[e.v] |= 1 << e.u;
    }
    adj
}

/// All angles of an edge set: pairs of consecutive neighbors of each vertex,
/// in the counterclockwise order seen from that vertex.
pub fn angles_of(edges: &[Edge], n: usize) -> Vec<Angle> {
    let adj = neighbor_masks(edges, n);
    let mut out = Vec::new();
    for v in 0..n {
        let nbrs: Vec<usize> = (1..n)
            .map(|s| (v + s) % n)
            .filter(|&t| adj[v] >> t & 1 == 1)
            .collect();
        for pair in nbrs.windows(2) {
            out.push(Angle { u: pair[1], v, w: pair[0] });
        }
    }
    out.sort();
    out
}

/// A k-star: 2k+1 vertices in circle order with edges `[s_j, s_{j+k}]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KStar {
    /// Vertices sorted by label; this is the circle order starting at the smallest one.
    pub vertices: Vec<usize>,
}

impl KStar {
    pub fn new(mut vertices: Vec<usize>, n: usize) -> Result<KStar> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() % 2 == 0 || vertices.is_empty() {
            return invalid("a star needs an odd number of distinct vertices");
        }
        if vertices.iter().any(|&x| x >= n) {
            return invalid("star vertex out of range");
        }
        Ok(KStar { vertices })
    }

    pub fn k(&self) -> usize {
        (self.vertices.len() - 1) / 2
    }

    /// `s_j` with the index taken mod 2k+1 (0-indexed).
    pub fn s(&self, j: usize) -> usize {
        self.vertices[j % self.vertices.len()]
    }

    pub fn edges(&self) -> Vec<Edge> {
        let k = self.k();
        let mut out: Vec<Edge> = (0..self.vertices.len())
            .map(|j| Edge::new(self.s(j), self.s(j + k)))
            .collect();
        out.sort();
        out
    }

    /// Vertices in star order `r_i = s_{ik}`.
    pub fn star_order(&self) -> Vec<usize> {
        let k = self.k();
        (0..self.vertices.len()).map(|i| self.s(i * k)).collect()
    }

    /// The angles of the star, one per vertex.
    pub fn angles(&self) -> Vec<Angle> {
        let k = self.k();
        (0..self.vertices.len())
            .map(|j| Angle { u: self.s(j + k + 1), v: self.s(j), w: self.s(j + k) })
            .collect()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        let k = self.k();
        let len = self.vertices.len();
        match (self.position(e.u), self.position(e.v)) {
            (Some(a), Some(b)) => {
                let d = (b + len - a) % len;
                d == k || d == k + 1
            }
            _ => false,
        }
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.vertices.binary_search(&x).ok()
    }
}

/// Every edge through a star vertex that leaves k star vertices on each side.
pub fn bisectors_of_star(s: &KStar, n: usize) -> Vec<Edge> {
    let k = s.k();
    let len = s.vertices.len();
    let mut out = Vec::new();
    for j in 0..len {
        let a = s.s(j + k);
        let b = s.s(j + k + 1);
        let mut t = (a + 1) % n;
        while t != b {
            out.push(Edge::new(s.s(j), t));
            t = (t + 1) % n;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_index_matches_enumeration() {
        for n in 2..12 {
            for (i, e) in all_edges(n).into_iter().enumerate() {
                assert_eq!(edge_index(e, n), i);
            }
        }
    }

    #[test]
    fn star_angles_contain_complement() {
        let s = KStar::new(vec![0, 1, 2, 4, 6], 8).unwrap();
        for t in [3, 5, 7] {
            let c = s.angles().iter().filter(|a| a.contains(t, 8)).count();
            assert_eq!(c, 1);
        }
    }
}
