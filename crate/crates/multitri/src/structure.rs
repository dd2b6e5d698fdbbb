//! Sparsity, tree decompositions of dual graphs, generic rigidity, and the
//! surfaces carried by multitriangulations.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::convex::{Edge, EdgeClass, classify_edge};
use crate::error::{invalid, param, Result};
use crate::ktri::{check_params, zigzag, KTriangulation};
use crate::linalg::rank_bareiss;

/// Largest vertex count for the subset enumeration in [`is_tight`].
pub const BRUTE_FORCE_MAX: usize = 16;

/// An undirected multigraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n || u == v) {
            return param(format!("bad edge ({u},{v}) on {n} vertices"));
        }
        Ok(Graph { n, edges })
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { n, edges }
    }

    /// Two copies of K_5 minus an edge, glued at the endpoints of the
    /// missing edges: 8 vertices and 18 edges.
    pub fn double_banana() -> Graph {
        let mut edges = Vec::new();
        for apex in [[2, 3, 4], [5, 6, 7]] {
            // the triangle in the middle of each banana
            for i in 0..3 {
                for j in i + 1..3 {
                    edges.push((apex[i], apex[j]));
                }
            }
            for &x in &apex {
                edges.push((0, x));
                edges.push((1, x));
            }
        }
        Graph { n: 8, edges }
    }

    /// All edges of a k-triangulation, boundary and irrelevant ones included.
    pub fn of_triangulation(t: &KTriangulation) -> Graph {
        Graph { n: t.n(), edges: t.all_edges().into_iter().map(|e| (e.u, e.v)).collect() }
    }

    /// Stars as vertices (by middle vertex), one edge per relevant edge.
    pub fn dual_of(t: &KTriangulation) -> Result<Graph> {
        let k = t.k();
        let mut edges = Vec::with_capacity(t.relevant().len());
        for &e in t.relevant() {
            let (r, s) = t.stars_of_edge(e)?;
            edges.push((r.vertices[k] - k, s.vertices[k] - k));
        }
        Ok(Graph { n: t.n() - 2 * t.k(), edges })
    }

    fn spanned(&self, mask: u64) -> usize {
        self.edges.iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count()
    }
}

/// Smallest subgraph size to which the `(p,q)` count applies. For `q < 2p`
/// this is 2. For rigidity-type counts such as `(d, C(d+1,2))` small complete
/// graphs sit below the bound, so the count starts where `pv - q >= C(v,2)`.
fn min_subset(p: usize, q: usize) -> Option<usize> {
    (2..=2 * p + 2).find(|&v| (p * v) as i64 - q as i64 >= (v * (v - 1) / 2) as i64)
}

/// `|E| = p|V| - q` and every subgraph on `v` vertices spans at most `pv - q`
/// edges. Subsets are enumerated up to [`BRUTE_FORCE_MAX`] vertices; beyond
/// that the pebble game is used, which needs `q < 2p`.
pub fn is_tight(g: &Graph, p: usize, q: usize) -> Result<bool> {
    if p == 0 {
        return param("p must be positive");
    }
    let Some(v0) = min_subset(p, q) else {
        return param(format!("({p},{q}) admits no nonempty sparse graph"));
    };
    if (g.edges.len() as i64) != (p * g.n) as i64 - q as i64 {
        return Ok(false);
    }
    if g.n <= BRUTE_FORCE_MAX {
        return Ok(is_sparse_brute(g, p, q, v0));
    }
    if q >= 2 * p {
        return param(format!("pebble game needs q < 2p; brute force stops at {BRUTE_FORCE_MAX} vertices"));
    }
    Ok(pebble_game(g, p, q).0)
}

pub fn is_sparse_brute(g: &Graph, p: usize, q: usize, v0: usize) -> bool {
    assert!(g.n <= 63);
    (1u64..1 << g.n).all(|mask| {
        let v = mask.count_ones() as usize;
        v < v0 || g.spanned(mask) as i64 <= (p * v) as i64 - q as i64
    })
}

/// The `(p,q)`-pebble game. Returns whether the graph is sparse and the
/// number of pebbles left.
pub fn pebble_game(g: &Graph, p: usize, q: usize) -> (bool, usize) {
    let n = g.n;
    let mut pebbles = vec![p; n];
    // out[v]: heads of accepted edges covered by a pebble of v
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];

    // move one pebble to `target` along a reversed path avoiding `keep`
    fn fetch(target: usize, keep: usize, pebbles: &mut [usize], out: &mut [Vec<usize>]) -> bool {
        let n = pebbles.len();
        let mut prev = vec![usize::MAX; n];
        prev[target] = target;
        prev[keep] = keep;
        let mut queue = VecDeque::from([target]);
        while let Some(x) = queue.pop_front() {
            for &y in &out[x] {
                if prev[y] != usize::MAX {
                    continue;
                }
                prev[y] = x;
                if pebbles[y] > 0 {
                    pebbles[y] -= 1;
                    // reverse the path target -> .. -> y
                    let mut cur = y;
                    while cur != target {
                        let par = prev[cur];
                        let pos = out[par].iter().position(|&z| z == cur).unwrap();
                        out[par].swap_remove(pos);
                        out[cur].push(par);
                        cur = par;
                    }
                    pebbles[target] += 1;
                    return true;
                }
                queue.push_back(y);
            }
        }
        false
    }

    let mut sparse = true;
    for &(u, v) in &g.edges {
        while pebbles[u] + pebbles[v] < q + 1 {
            if !fetch(u, v, &mut pebbles, &mut out) && !fetch(v, u, &mut pebbles, &mut out) {
                break;
            }
        }
        if pebbles[u] + pebbles[v] < q + 1 {
            sparse = false;
            continue;
        }
        let from = if pebbles[u] > 0 { u } else { v };
        pebbles[from] -= 1;
        out[from].push(if from == u { v } else { u });
    }
    (sparse, pebbles.iter().sum())
}

/// Partition of the edges into `k` edge-disjoint spanning trees, by matroid
/// partitioning with shortest augmenting paths. Returns edge indices per tree.
pub fn spanning_tree_decomposition(g: &Graph, k: usize) -> Option<Vec<Vec<usize>>> {
    if k == 0 || g.n == 0 || g.edges.len() != k * (g.n - 1) {
        return None;
    }
    let m = g.edges.len();
    // forest[e]: forest holding edge e
    let mut forest: Vec<Option<usize>> = vec![None; m];

    // edges on the path between a and b in forest i, if connected
    let path = |forest: &[Option<usize>], i: usize, a: usize, b: usize| -> Option<Vec<usize>> {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.n];
        let mut seen = vec![false; g.n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                let mut out = Vec::new();
                let mut cur = b;
                while let Some((p, e)) = prev[cur] {
                    out.push(e);
                    cur = p;
                }
                return Some(out);
            }
            for (e, &(u, v)) in g.edges.iter().enumerate() {
                if forest[e] != Some(i) {
                    continue;
                }
                let y = if u == x { v } else if v == x { u } else { continue };
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        None
    };

    for e in 0..m {
        // parent[x] = (edge whose cycle in `forest` contained x, that forest)
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; m];
        let mut seen = vec![false; m];
        seen[e] = true;
        let mut queue = VecDeque::from([e]);
        let mut done = false;
        'bfs: while let Some(x) = queue.pop_front() {
            let (a, b) = g.edges[x];
            for i in 0..k {
                if forest[x] == Some(i) {
                    continue;
                }
                match path(&forest, i, a, b) {
                    None => {
                        // augment along the labels
                        let mut cur = x;
                        let mut into = i;
                        loop {
                            let from = forest[cur];
                            forest[cur] = Some(into);
                            match parent[cur] {
                                Some((p, j)) => {
                                    debug_assert_eq!(from, Some(j));
                                    cur = p;
                                    into = j;
                                }
                                None => break,
                            }
                        }
                        done = true;
                        break 'bfs;
                    }
                    Some(cycle) => {
                        for y in cycle {
                            if !seen[y] {
                                seen[y] = true;
                                parent[y] = Some((x, i));
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        if !done {
            return None;
        }
    }
    let mut trees = vec![Vec::new(); k];
    for (e, f) in forest.iter().enumerate() {
        trees[f.unwrap()].push(e);
    }
    Some(trees)
}

/// Whether the edges with the given indices form a spanning tree of `g`.
pub fn is_spanning_tree(g: &Graph, edges: &[usize]) -> bool {
    if g.n == 0 || edges.len() != g.n - 1 {
        return false;
    }
    let mut comp: Vec<usize> = (0..g.n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            c[x] = find(c, c[x]);
        }
        c[x]
    }
    edges.iter().all(|&e| {
        let (u, v) = g.edges[e];
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        comp[a] = b;
        a != b
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopColoring {
    /// Color (1-based) of each relevant edge, in the order of `T.relevant()`.
    pub colors: Vec<usize>,
    /// Per color: whether its dual edges form a spanning tree.
    pub trees: Vec<bool>,
}

impl TopColoring {
    pub fn decomposes(&self) -> bool {
        self.trees.iter().all(|&b| b)
    }
}

/// Colors each relevant edge by its rank among the top edges
/// `[s_j, s_{j+k+1}]` of the star where it is a top edge.
pub fn top_edge_coloring_check(t: &KTriangulation) -> Result<TopColoring> {
    let k = t.k();
    let dual = Graph::dual_of(t)?;
    let stars = t.star_decomposition()?;
    let mut colors = Vec::with_capacity(t.relevant().len());
    for &e in t.relevant() {
        let mut found = Vec::new();
        for s in &stars {
            for j in 0..k {
                if Edge::new(s.vertices[j], s.vertices[j + k + 1]) == e {
                    found.push(j + 1);
                }
            }
        }
        match found[..] {
            [c] => colors.push(c),
            _ => return invalid(format!("{e} is a top edge of {} stars", found.len())),
        }
    }
    let trees = (1..=k)
        .map(|c| {
            let idx: Vec<usize> = (0..colors.len()).filter(|&i| colors[i] == c).collect();
            is_spanning_tree(&dual, &idx)
        })
        .collect();
    Ok(TopColoring { colors, trees })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RigidityVerdict {
    MinimallyRigid,
    /// Full rank with redundant edges.
    Rigid,
    Flexible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub d: usize,
    pub seed: u64,
    pub trials: usize,
    pub ranks: Vec<usize>,
    /// Rank of a generically rigid framework on this many vertices.
    pub expected: usize,
    pub edges: usize,
    pub verdict: RigidityVerdict,
}

/// Rank of the rigidity matrix at random integer coordinates, exact over Q.
pub fn generic_rigidity_rank(g: &Graph, d: usize, trials: usize, seed: u64) -> Result<RigidityReport> {
    if d == 0 || trials == 0 {
        return param("need a positive dimension and at least one trial");
    }
    let n = g.n;
    let expected = if n > d { d * n - d * (d + 1) / 2 } else { n * n.saturating_sub(1) / 2 };
    let range = ((n as u64).pow(3)).max(1000) * 8;
    let mut ranks = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
        let coords: Vec<Vec<i64>> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(0..range as i64)).collect()).collect();
        let rows = g
            .edges
            .iter()
            .map(|&(u, v)| {
                let mut row = vec![BigInt::from(0); d * n];
                for c in 0..d {
                    let diff = coords[u][c] - coords[v][c];
                    row[d * u + c] = BigInt::from(diff);
                    row[d * v + c] = BigInt::from(-diff);
                }
                row
            })
            .collect();
        ranks.push(rank_bareiss(rows));
    }
    let best = ranks.iter().copied().max().unwrap_or(0);
    let verdict = if best < expected {
        RigidityVerdict::Flexible
    } else if g.edges.len() == expected {
        RigidityVerdict::MinimallyRigid
    } else {
        RigidityVerdict::Rigid
    };
    Ok(RigidityReport { d, seed, trials, ranks, expected, edges: g.edges.len(), verdict })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub genus: usize,
    pub boundary_components: usize,
    pub v: usize,
    pub e: usize,
    pub f: usize,
}

impl SurfaceInvariants {
    pub fn euler_holds(&self) -> bool {
        2 - 2 * self.genus as i64 - self.boundary_components as i64 == self.v as i64 - self.e as i64 + self.f as i64
    }
}

/// The surface obtained by gluing the stars of any k-triangulation of the n-gon.
pub fn surface_invariants(n: usize, k: usize) -> Result<SurfaceInvariants> {
    check_params(n, k)?;
    let (ni, ki) = (n as i64, k as i64);
    let b = n.gcd(&k);
    let twice = 2 - ni + ki + ki * ni - 2 * ki * ki - b as i64;
    if twice < 0 || twice % 2 != 0 {
        return invalid(format!("genus formula gives {twice}/2"));
    }
    Ok(SurfaceInvariants {
        genus: (twice / 2) as usize,
        boundary_components: b,
        v: n,
        e: n + k * (n - 2 * k - 1),
        f: n - 2 * k,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivelarReport {
    pub l: usize,
    pub m: usize,
    pub t: KTriangulation,
    /// Vertices, edges and polygons of the closed surface.
    pub counts: (usize, usize, usize),
    pub genus: usize,
    pub degree: Option<usize>,
    pub stars_share_at_most_one_edge: bool,
    pub one_boundary_edge_per_component: bool,
}

impl EquivelarReport {
    pub fn expected_counts(&self) -> (usize, usize, usize) {
        let (l, m) = (self.l, self.m);
        (l * (2 * l * m + 1), l * (l * m - m + 1) * (2 * l * m + 1), 2 * l * (l * m - m + 1))
    }

    pub fn expected_genus(&self) -> usize {
        // (l-1)(l²m² - lm/2 - 1), kept in integers
        let (l, m) = (self.l, self.m);
        (l - 1) * (2 * l * l * m * m - l * m - 2) / 2
    }

    pub fn passes(&self) -> bool {
        self.degree == Some(2 * self.m * (2 * self.l - 1))
            && self.stars_share_at_most_one_edge
            && self.one_boundary_edge_per_component
            && self.counts == self.expected_counts()
            && self.genus == self.expected_genus()
    }
}

/// The zigzags `θ^i γ(Z)` for `i < m` and `γ` in the dihedral group generated
/// by `ρ: t -> t+2k+1` and `σ: t -> -t`, modulo the stabilizer of `Z`.
pub fn equivelar_zigzags(l: usize, m: usize) -> Result<Vec<Vec<Edge>>> {
    if l < 2 || m < 1 {
        return param("need l >= 2 and m >= 1");
    }
    let k = l * m;
    let n = l * (2 * l * m + 1);
    let z = zigzag(n, k, 0)?;
    let map = |zz: &[Edge], f: &dyn Fn(i64) -> i64| -> Vec<Edge> {
        let mut out: Vec<Edge> = zz.iter().map(|e| Edge::modn(f(e.u as i64), f(e.v as i64), n)).collect();
        out.sort();
        out
    };
    let rho = |a: i64| move |t: i64| t + a * (2 * k as i64 + 1);
    let sigma = |t: i64| -t;
    let mut quotient: Vec<Vec<Edge>> = Vec::new();
    if l % 2 == 1 {
        // the stabilizer is generated by a reflection rho^a sigma
        if !(0..l as i64).any(|a| map(&map(&z, &sigma), &rho(a)) == z) {
            return invalid("no reflection of the group fixes the zigzag");
        }
        for a in 0..l as i64 {
            quotient.push(map(&z, &rho(a)));
        }
    } else {
        if map(&z, &rho(l as i64 / 2)) != z {
            return invalid("zigzag is not fixed by the half turn");
        }
        let zs = map(&z, &sigma);
        for a in 0..l as i64 / 2 {
            quotient.push(map(&z, &rho(a)));
            quotient.push(map(&zs, &rho(a)));
        }
    }
    let mut out = Vec::new();
    for i in 0..m as i64 {
        for g in &quotient {
            out.push(map(g, &move |t| t + 2 * i));
        }
    }
    Ok(out)
}

pub fn equivelar_t(l: usize, m: usize) -> Result<EquivelarReport> {
    let zz = equivelar_zigzags(l, m)?;
    let k = l * m;
    let n = l * (2 * l * m + 1);
    let edges: Vec<Edge> = zz.into_iter().flatten().collect();
    let mut distinct = edges.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != edges.len() {
        return invalid("zigzags are not disjoint");
    }
    let t = KTriangulation::new(n, k, edges)?;
    let degrees: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let degree = degrees.iter().all(|&d| d == degrees[0]).then_some(degrees[0]);
    let stars = t.star_decomposition()?;
    let star_edges: Vec<Vec<Edge>> = stars.iter().map(|s| s.edges()).collect();
    let mut share_one = true;
    for a in 0..stars.len() {
        for b in a + 1..stars.len() {
            if star_edges[a].iter().filter(|e| star_edges[b].contains(e)).count() > 1 {
                share_one = false;
            }
        }
    }
    // the k-boundary edge [i, i+k] lies on component i mod gcd(n,k)
    let b = n.gcd(&k);
    let one_per = star_edges.iter().all(|es| {
        let mut seen = vec![0; b];
        for e in es.iter().filter(|e| classify_edge(**e, n, k) == EdgeClass::Boundary) {
            let start = if (e.u + k) % n == e.v { e.u } else { e.v };
            seen[start % b] += 1;
        }
        seen.iter().all(|&c| c <= 1)
    });
    let surf = surface_invariants(n, k)?;
    // closing each boundary component with one polygon
    let counts = (surf.v, surf.e, surf.f + surf.boundary_components);
    Ok(EquivelarReport {
        l,
        m,
        t,
        counts,
        genus: surf.genus,
        degree,
        stars_share_at_most_one_edge: share_one,
        one_boundary_edge_per_component: one_per,
    })
}
