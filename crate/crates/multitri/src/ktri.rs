//! k-triangulations of the convex n-gon: stars, bisectors, flips,
//! flattening and inflating, ears, accordions and a few named constructions.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::convex::{
    bisectors_of_star, ccw_steps, classify_edge, crosses, edges_of_class, find_crossing, in_open,
    Edge, EdgeClass, KStar,
};
use crate::error::{invalid, param, Error, Result};

/// Largest polygon size supported (vertex masks are `u64`).
pub const MAX_N: usize = 64;

pub fn check_params(n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return param("k must be at least 1");
    }
    if n < 2 * k + 1 {
        return param(format!("need n >= 2k+1, got n={n}, k={k}"));
    }
    if n > MAX_N {
        return param(format!("n={n} exceeds the supported maximum {MAX_N}"));
    }
    Ok(())
}

/// Number of relevant edges in any k-triangulation of the n-gon.
pub fn relevant_count(n: usize, k: usize) -> usize {
    k * (n - 2 * k - 1)
}

/// A k-triangulation, stored through its relevant edges.
///
/// Boundary and irrelevant edges are implicit. The full neighbor masks are
/// cached because star walks need them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTriangulation {
    n: usize,
    k: usize,
    relevant: Vec<Edge>,
    adj: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    BadParameters(String),
    NotRelevant(Edge),
    Crossing(Vec<Edge>),
    WrongCount { expected: usize, found: usize },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }
}

/// Checks that `relevant` is the relevant part of a k-triangulation.
///
/// A (k+1)-crossing can only use relevant edges, and a (k+1)-crossing-free set
/// with k(n-2k-1) relevant edges is automatically maximal.
pub fn validate(n: usize, k: usize, relevant: &[Edge]) -> Validation {
    if let Err(e) = check_params(n, k) {
        return Validation::BadParameters(e.to_string());
    }
    let set: BTreeSet<Edge> = relevant.iter().copied().collect();
    for &e in &set {
        if e.v >= n || classify_edge(e, n, k) != EdgeClass::Relevant {
            return Validation::NotRelevant(e);
        }
    }
    let list: Vec<Edge> = set.into_iter().collect();
    if let Some(x) = find_crossing(&list, k + 1) {
        return Validation::Crossing(x);
    }
    let expected = relevant_count(n, k);
    if list.len() != expected {
        return Validation::WrongCount { expected, found: list.len() };
    }
    Validation::Valid
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlipDirection {
    SlopeIncreasing,
    SlopeDecreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipRecord {
    pub removed: Edge,
    pub inserted: Edge,
    pub direction: FlipDirection,
}

/// Direction of the flip removing `f` and inserting `e` (which must cross).
pub fn flip_direction(f: Edge, e: Edge) -> FlipDirection {
    if e.slope() < f.slope() {
        FlipDirection::SlopeDecreasing
    } else {
        FlipDirection::SlopeIncreasing
    }
}

#[derive(Serialize, Deserialize)]
struct KTriangulationJson {
    n: usize,
    k: usize,
    relevant: Vec<Edge>,
}

impl Serialize for KTriangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KTriangulationJson { n: self.n, k: self.k, relevant: self.relevant.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KTriangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = KTriangulationJson::deserialize(d)?;
        KTriangulation::new(j.n, j.k, j.relevant).map_err(serde::de::Error::custom)
    }
}

impl KTriangulation {
    /// Validated constructor.
    pub fn new(n: usize, k: usize, relevant: Vec<Edge>) -> Result<Self> {
        match validate(n, k, &relevant) {
            Validation::Valid => Ok(Self::new_unchecked(n, k, relevant)),
            Validation::BadParameters(m) => param(m),
            Validation::NotRelevant(e) => invalid(format!("{e} is not a relevant edge")),
            Validation::Crossing(x) => invalid(format!("{}-crossing {:?}", x.len(), x)),
            Validation::WrongCount { expected, found } => {
                invalid(format!("expected {expected} relevant edges, found {found}"))
            }
        }
    }

    /// Builds without validation. Edges are deduplicated and sorted.
    pub fn new_unchecked(n: usize, k: usize, mut relevant: Vec<Edge>) -> Self {
        assert!(n <= MAX_N);
        relevant.sort_unstable();
        relevant.dedup();
        let mut adj = vec![0u64; n];
        for u in 0..n {
            for d in 1..=k.min(n - 1) {
                let v = (u + d) % n;
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        for e in &relevant {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
        }
        KTriangulation { n, k, relevant, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Relevant edges, lexicographically sorted.
    pub fn relevant(&self) -> &[Edge] {
        &self.relevant
    }

    pub fn validate(&self) -> Validation {
        validate(self.n, self.k, &self.relevant)
    }

    pub fn contains(&self, e: Edge) -> bool {
        e.v < self.n && self.adj[e.u] >> e.v & 1 == 1
    }

    /// Every edge, including the implicit boundary and irrelevant ones.
    pub fn all_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// First neighbor of `b` met when turning clockwise from `a`.
    fn next_cw(&self, a: usize, b: usize) -> usize {
        let n = self.n;
        let mut t = a;
        loop {
            t = (t + n - 1) % n;
            if t != b && self.adj[b] >> t & 1 == 1 {
                return t;
            }
        }
    }

    /// Follows angles from the directed edge `a -> b`; returns the star if the
    /// walk closes after 2k+1 steps into a star polygon.
    pub fn walk_star(&self, a: usize, b: usize) -> Option<KStar> {
        let len = 2 * self.k + 1;
        let mut seq = vec![a, b];
        while seq.len() < len {
            let c = self.next_cw(seq[seq.len() - 2], seq[seq.len() - 1]);
            seq.push(c);
        }
        if self.next_cw(seq[len - 2], seq[len - 1]) != a || self.next_cw(seq[len - 1], a) != b {
            return None;
        }
        let star = KStar::new(seq.clone(), self.n).ok()?;
        if star.vertices.len() != len {
            return None;
        }
        let mut walked: Vec<Edge> = (0..len).map(|i| Edge::new(seq[i], seq[(i + 1) % len])).collect();
        walked.sort();
        if walked != star.edges() {
            return None;
        }
        Some(star)
    }

    /// The two stars containing a relevant edge, as (clockwise walk from u->v, from v->u).
    pub fn stars_of_edge(&self, f: Edge) -> Result<(KStar, KStar)> {
        if !self.contains(f) || classify_edge(f, self.n, self.k) != EdgeClass::Relevant {
            return param(format!("{f} is not a relevant edge of T"));
        }
        let r = self.walk_star(f.u, f.v);
        let s = self.walk_star(f.v, f.u);
        match (r, s) {
            (Some(r), Some(s)) => Ok((r, s)),
            _ => invalid(format!("star propagation failed at {f}")),
        }
    }

    /// The n-2k stars, indexed so that `stars[i]` has middle vertex `k + i`
    /// (its (k+1)-th vertex in label order).
    pub fn star_decomposition(&self) -> Result<Vec<KStar>> {
        let mut found: BTreeSet<KStar> = BTreeSet::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] >> v & 1 == 0 || (Edge { u, v }).length(self.n) < self.k {
                    continue;
                }
                for (a, b) in [(u, v), (v, u)] {
                    if let Some(s) = self.walk_star(a, b) {
                        found.insert(s);
                    }
                }
            }
        }
        let count = self.n - 2 * self.k;
        let mut by_mid: BTreeMap<usize, KStar> = BTreeMap::new();
        for s in found {
            by_mid.insert(s.s(self.k), s);
        }
        let mids: Vec<usize> = by_mid.keys().copied().collect();
        let expected: Vec<usize> = (self.k..self.k + count).collect();
        if mids != expected {
            return invalid(format!("star middle vertices {mids:?}, expected {expected:?}"));
        }
        Ok(by_mid.into_values().collect())
    }

    /// Flips the relevant edge `f`.
    pub fn flip(&self, f: Edge) -> Result<(KTriangulation, FlipRecord)> {
        let (r, s) = self.stars_of_edge(f)?;
        let e = common_bisector(&r, &s, self.n)?;
        let mut rel: Vec<Edge> = self.relevant.iter().copied().filter(|&x| x != f).collect();
        rel.push(e);
        let t = KTriangulation::new_unchecked(self.n, self.k, rel);
        Ok((t, FlipRecord { removed: f, inserted: e, direction: flip_direction(f, e) }))
    }

    /// Edges `[s_0, s_k]` of length exactly k, i.e. the boundary edges.
    pub fn boundary_edges(&self) -> Vec<Edge> {
        edges_of_class(self.n, self.k, EdgeClass::Boundary)
    }

    /// Ears (edges of length k+1) and indices of internal stars.
    pub fn ears_and_internal_stars(&self) -> Result<(Vec<Edge>, Vec<usize>)> {
        let ears: Vec<Edge> = self
            .relevant
            .iter()
            .copied()
            .filter(|e| e.length(self.n) == self.k + 1)
            .collect();
        let stars = self.star_decomposition()?;
        let internal = stars
            .iter()
            .enumerate()
            .filter(|(_, s)| s.edges().iter().all(|e| e.length(self.n) > self.k))
            .map(|(i, _)| i)
            .collect();
        Ok((ears, internal))
    }

    /// Splits the relevant edges into k accordions when T has exactly 2k ears.
    ///
    /// Walks from an ear through the "pairs" of edges in successive stars.
    pub fn accordion_decomposition(&self) -> Result<Option<Vec<Vec<Edge>>>> {
        let (n, k) = (self.n, self.k);
        if k < 2 {
            return param("accordion decomposition needs k > 1");
        }
        let (ears, _) = self.ears_and_internal_stars()?;
        if ears.len() != 2 * k {
            return Ok(None);
        }
        let stars = self.star_decomposition()?;
        // pair[(star, edge)] = partner edge inside that star
        let mut pair: BTreeMap<(usize, Edge), Edge> = BTreeMap::new();
        let mut owners: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (si, s) in stars.iter().enumerate() {
            let order = s.star_order();
            let len = order.len();
            let cyc: Vec<Edge> = (0..len).map(|i| Edge::new(order[i], order[(i + 1) % len])).collect();
            for &e in &cyc {
                owners.entry(e).or_default().push(si);
            }
            let special: Vec<bool> = cyc
                .iter()
                .map(|&e| e.length(n) == k || is_positive_ear(s, e, n, k))
                .collect();
            if !special.iter().any(|&b| b) {
                return Ok(None);
            }
            // start right after the last special edge of the contiguous block
            let start = (0..len)
                .find(|&i| special[i] && !special[(i + 1) % len])
                .map(|i| (i + 1) % len)
                .unwrap_or(0);
            let path: Vec<Edge> = (0..len)
                .map(|d| (start + d) % len)
                .take_while(|&i| !special[i])
                .map(|i| cyc[i])
                .collect();
            if path.len() % 2 == 1 {
                return invalid("odd pairing path in an external star");
            }
            for c in path.chunks(2) {
                pair.insert((si, c[0]), c[1]);
                pair.insert((si, c[1]), c[0]);
            }
        }
        let mut used: BTreeSet<Edge> = BTreeSet::new();
        let mut out = Vec::new();
        for &ear in &ears {
            if used.contains(&ear) {
                continue;
            }
            let owner = &owners[&ear];
            let outer = owner.iter().copied().find(|&si| is_positive_ear(&stars[si], ear, n, k));
            let Some(mut prev) = outer else {
                return invalid(format!("ear {ear} has no outer star"));
            };
            let mut cur = ear;
            let mut acc = vec![cur];
            loop {
                let next_star = owners[&cur].iter().copied().find(|&si| si != prev);
                let Some(si) = next_star else {
                    return invalid("accordion walk left the triangulation");
                };
                let Some(&e) = pair.get(&(si, cur)) else {
                    return Ok(None);
                };
                acc.push(e);
                if e.length(n) == k + 1 {
                    break;
                }
                prev = si;
                cur = e;
                if acc.len() > n {
                    return invalid("accordion walk does not terminate");
                }
            }
            for &e in &acc {
                used.insert(e);
            }
            out.push(acc);
        }
        Ok(Some(out))
    }

    /// Relevant edges `[s_i, t]` of `T` with the k-crossing on the first k vertices
    /// `0..k`: counts increasing choices `k <= t_0 < ... < t_{k-1} <= n-1` with every
    /// `[i, t_i]` an edge of T.
    pub fn first_block_crossings(&self) -> u64 {
        let (n, k) = (self.n, self.k);
        // ways[t] = number of partial chains ending with vertex t for the current i
        let mut ways: Vec<u64> = (0..n).map(|t| (t >= k && self.adj[0] >> t & 1 == 1) as u64).collect();
        for i in 1..k {
            let mut next = vec![0u64; n];
            let mut acc = 0u64;
            for t in 0..n {
                if self.adj[i] >> t & 1 == 1 && t >= k {
                    next[t] = acc;
                }
                acc += ways[t];
            }
            ways = next;
        }
        ways.iter().sum()
    }
}

/// Whether `e` (an ear of length k+1) is a positive ear of `s`, i.e. `s`
/// lies on its short side.
pub fn is_positive_ear(s: &KStar, e: Edge, n: usize, k: usize) -> bool {
    if e.length(n) != k + 1 || !s.contains_edge(e) {
        return false;
    }
    // in the (2k+2)-gon both orientations have k+1 steps
    [(e.u, e.v), (e.v, e.u)]
        .into_iter()
        .any(|(a, b)| ccw_steps(a, b, n) == k + 1 && (1..=k).all(|d| s.position((a + d) % n).is_some()))
}

/// The unique edge bisecting an angle of both stars.
pub fn common_bisector(r: &KStar, s: &KStar, n: usize) -> Result<Edge> {
    let a: BTreeSet<Edge> = bisectors_of_star(r, n).into_iter().collect();
    let common: Vec<Edge> = bisectors_of_star(s, n).into_iter().filter(|e| a.contains(e)).collect();
    match common.as_slice() {
        [e] => Ok(*e),
        _ => invalid(format!("stars share {} bisectors instead of one", common.len())),
    }
}

/// Relevant edges `[i, j]` with `i` in the block `first..first+k` and
/// `j` in the cyclic interval from `i+k+1` to `i-k-1`.
fn fans(n: usize, k: usize, first: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for d in 0..k {
        let i = (first + d) % n;
        for step in k + 1..=n - k - 1 {
            let j = (i + step) % n;
            out.push(Edge::new(i, j));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn t_min(n: usize, k: usize) -> Result<KTriangulation> {
    check_params(n, k)?;
    Ok(KTriangulation::new_unchecked(n, k, fans(n, k, 0)))
}

pub fn t_max(n: usize, k: usize) -> Result<KTriangulation> {
    check_params(n, k)?;
    Ok(KTriangulation::new_unchecked(n, k, fans(n, k, n - k)))
}

/// Slope-decreasing flips from `t` to the minimal k-triangulation.
///
/// At each step the lexicographically first edge whose flip inserts an edge
/// of T_min is flipped.
pub fn greedy_path_to_min(t: &KTriangulation) -> Result<Vec<FlipRecord>> {
    let target = t_min(t.n, t.k)?;
    let mut cur = t.clone();
    let mut path = Vec::new();
    while cur.relevant != target.relevant {
        let mut chosen = None;
        for &f in cur.relevant.iter().filter(|f| !target.contains(**f)) {
            let (next, rec) = cur.flip(f)?;
            if target.contains(rec.inserted) {
                chosen = Some((next, rec));
                break;
            }
        }
        let Some((next, rec)) = chosen else {
            return invalid("no flip towards the minimal triangulation");
        };
        path.push(rec);
        cur = next;
    }
    Ok(path)
}

/// Flattening of the boundary edge `b`.
///
/// Returns the k-triangulation of the (n-1)-gon, the label of the removed
/// vertex (so that [`inflate`] at that label undoes the flattening), and the
/// external k-crossing formed by the glued edges.
pub fn flatten(t: &KTriangulation, b: Edge) -> Result<(KTriangulation, usize, Vec<Edge>)> {
    let (n, k) = (t.n, t.k);
    if b.v >= n || b.length(n) != k {
        return param(format!("{b} is not a boundary edge"));
    }
    if n < 2 * k + 2 {
        return param("cannot flatten the (2k+1)-gon");
    }
    let s0 = if ccw_steps(b.u, b.v, n) == k { b.u } else { b.v };
    let sk = (s0 + k) % n;
    let star = [t.walk_star(s0, sk), t.walk_star(sk, s0)]
        .into_iter()
        .flatten()
        .find(|s| s.contains_edge(b))
        .ok_or_else(|| Error::Invalid(format!("no star contains {b}")))?;
    // circle order starting at s0
    let p0 = star.position(s0).unwrap();
    let s: Vec<usize> = (0..2 * k + 1).map(|j| star.s(p0 + j)).collect();
    for (i, &si) in s.iter().enumerate().take(k + 1) {
        if si != (s0 + i) % n {
            return invalid("star of a boundary edge is not consecutive");
        }
    }
    let block = |x: usize| ccw_steps(s0, x, n) <= k;
    let idx = |x: usize| ccw_steps(s0, x, n);
    let sc = |j: usize| s[j % (2 * k + 1)];
    let mut out: BTreeSet<Edge> = BTreeSet::new();
    for e in t.all_edges() {
        let (x, y) = (e.u, e.v);
        match (block(x), block(y)) {
            (false, false) => {
                out.insert(e);
            }
            (true, true) => {
                if x != s0 && y != s0 {
                    out.insert(e);
                }
            }
            _ => {
                let (a, tt) = if block(x) { (x, y) } else { (y, x) };
                let i = idx(a);
                if i >= 1 && in_open(tt, sc(k), sc(k + i), n) || tt == sc(k + i) && i >= 1 {
                    out.insert(Edge::new(a, tt));
                } else if tt == sc(k + i + 1) || in_open(tt, sc(k + i + 1), s0, n) {
                    out.insert(Edge::new(sc(i + 1), tt));
                } else {
                    return invalid(format!("edge {e} falls in a star angle"));
                }
            }
        }
    }
    let relabel = |x: usize| if x > s0 { x - 1 } else { x };
    let m = n - 1;
    let rel: Vec<Edge> = out
        .iter()
        .map(|e| Edge::new(relabel(e.u), relabel(e.v)))
        .filter(|e| e.length(m) > k)
        .collect();
    let flat = KTriangulation::new(m, k, rel)?;
    let x: Vec<Edge> = (1..=k).map(|i| Edge::new(relabel(sc(i)), relabel(sc(k + i)))).collect();
    Ok((flat, s0, x))
}

/// Inflating of the external k-crossing `x`, whose endpoints in the
/// block of k vertices starting at `s1 mod n` are its left endpoints.
///
/// The new vertex is inserted just before that block and receives label
/// `s1`. Both `0` and `n` are allowed for a block starting at vertex 0; they
/// differ only in where the new vertex lands in the linear labeling.
pub fn inflate(t: &KTriangulation, s1: usize, x: &[Edge]) -> Result<KTriangulation> {
    let (n, k) = (t.n, t.k);
    if s1 > n || x.len() != k {
        return param("inflate needs k edges and a vertex in range");
    }
    if n + 1 > MAX_N {
        return param("polygon too large");
    }
    let b0 = s1 % n;
    let s: Vec<usize> = (0..k).map(|i| (b0 + i) % n).collect();
    let mut right = Vec::with_capacity(k);
    for &si in &s {
        let e = x.iter().find(|e| e.has(si)).ok_or_else(|| {
            Error::Param(format!("no edge of the crossing starts at {si}"))
        })?;
        if !t.contains(*e) {
            return param(format!("{e} is not an edge of T"));
        }
        right.push(e.other(si));
    }
    for i in 0..k {
        for j in i + 1..k {
            if !crosses(Edge::new(s[i], right[i]), Edge::new(s[j], right[j])) {
                return param("the given edges do not form a k-crossing");
            }
        }
    }
    if right.iter().any(|r| ccw_steps(b0, *r, n) < k) {
        return param("crossing is not external at the given block");
    }
    // new labels: the new vertex takes s1, old labels >= s1 shift up
    let m = n + 1;
    let lab = |v: usize| if v >= s1 { v + 1 } else { v };
    let new_vertex = s1;
    let in_block = |v: usize| ccw_steps(b0, v, n) < k;
    // right endpoint s_{k+i} for i in 1..=k  (1-indexed)
    let sk = s[k - 1];
    let rk = |i: usize| right[i - 1];
    let mut out: BTreeSet<Edge> = BTreeSet::new();
    for e in t.all_edges() {
        let (a, b) = (e.u, e.v);
        match (in_block(a), in_block(b)) {
            (false, false) | (true, true) => {
                out.insert(Edge::new(lab(a), lab(b)));
            }
            _ => {
                let (sv, tt) = if in_block(a) { (a, b) } else { (b, a) };
                let i = ccw_steps(b0, sv, n) + 1;
                let mut placed = false;
                if in_open(tt, sk, rk(i), n) || tt == rk(i) {
                    out.insert(Edge::new(lab(sv), lab(tt)));
                    placed = true;
                }
                if tt == rk(i) || in_open(tt, rk(i), b0, n) {
                    let prev = if i == 1 { new_vertex } else { lab(s[i - 2]) };
                    out.insert(Edge::new(prev, lab(tt)));
                    placed = true;
                }
                if !placed {
                    return invalid(format!("edge {e} falls in a star angle"));
                }
            }
        }
    }
    for &si in &s {
        out.insert(Edge::new(new_vertex, lab(si)));
    }
    let rel: Vec<Edge> = out.into_iter().filter(|e| e.length(m) > k).collect();
    KTriangulation::new(m, k, rel)
}

/// The zigzag `{[q-1,-q-k]} ∪ {[q,-q-k]}` rotated by `rotation`.
pub fn zigzag(n: usize, k: usize, rotation: i64) -> Result<Vec<Edge>> {
    check_params(n, k)?;
    let (ni, ki) = (n as i64, k as i64);
    let mut out = Vec::new();
    for q in 1..=(ni - 2 * ki) / 2 {
        out.push(Edge::modn(q - 1 + rotation, -q - ki + rotation, n));
    }
    for q in 1..=(ni - 2 * ki - 1) / 2 {
        out.push(Edge::modn(q + rotation, -q - ki + rotation, n));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The 2-triangulation of the 15-gon made of five zigzags, which contains no
/// triangulation.
pub fn irreducible_15gon() -> KTriangulation {
    let mut rel = Vec::new();
    for a in 0..5i64 {
        let z = 3 * a;
        for (x, y) in [(z, z + 6), (z + 6, z + 1), (z + 1, z + 5), (z + 5, z + 2)] {
            rel.push(Edge::modn(x, y, 15));
        }
    }
    KTriangulation::new(15, 2, rel).expect("five zigzags form a 2-triangulation")
}

/// Whether the edge set of `t` contains a k'-triangulation of the same polygon.
pub fn contains_subtriangulation(t: &KTriangulation, kp: usize) -> Result<bool> {
    check_params(t.n, kp)?;
    if kp > t.k {
        return Ok(false);
    }
    if kp == 1 {
        return Ok(contains_triangulation_dp(t));
    }
    Ok(contains_subtriangulation_search(t, kp))
}

/// Interval dynamic program: a sub-polygon `i..j` is triangulable using edges of T.
fn contains_triangulation_dp(t: &KTriangulation) -> bool {
    let n = t.n;
    let mut ok = vec![vec![false; n]; n];
    for i in 0..n - 1 {
        ok[i][i + 1] = true;
    }
    for len in 2..n {
        for i in 0..n - len {
            let j = i + len;
            if !t.contains(Edge::new(i, j)) {
                continue;
            }
            ok[i][j] = (i + 1..j).any(|m| ok[i][m] && ok[m][j]);
        }
    }
    ok[0][n - 1]
}

/// Backtracking over the k'-relevant edges of T for a (k'+1)-crossing-free
/// subset of size k'(n-2k'-1).
pub fn contains_subtriangulation_search(t: &KTriangulation, kp: usize) -> bool {
    let n = t.n;
    let cand: Vec<Edge> = t.all_edges().into_iter().filter(|e| e.length(n) > kp).collect();
    let need = relevant_count(n, kp);
    let mut chosen: Vec<Edge> = Vec::new();
    search_sub(&cand, 0, need, kp, &mut chosen)
}

fn search_sub(cand: &[Edge], pos: usize, need: usize, kp: usize, chosen: &mut Vec<Edge>) -> bool {
    if chosen.len() == need {
        return true;
    }
    if chosen.len() + (cand.len() - pos) < need {
        return false;
    }
    let e = cand[pos];
    let crossing: Vec<Edge> = chosen.iter().copied().filter(|&f| crosses(e, f)).collect();
    if find_crossing(&crossing, kp).is_none() {
        chosen.push(e);
        if search_sub(cand, pos + 1, need, kp, chosen) {
            return true;
        }
        chosen.pop();
    }
    search_sub(cand, pos + 1, need, kp, chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_min_8_2() {
        let t = t_min(8, 2).unwrap();
        let want: Vec<Edge> =
            [(0, 3), (0, 4), (0, 5), (1, 4), (1, 5), (1, 6)].iter().map(|&(a, b)| Edge::new(a, b)).collect();
        assert_eq!(t.relevant(), want.as_slice());
        assert!(t.validate().is_valid());
    }

    #[test]
    fn first_block_on_k5() {
        let t = t_min(5, 2).unwrap();
        assert_eq!(t.first_block_crossings(), 3);
    }
}
