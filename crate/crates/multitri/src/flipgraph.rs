//! Counting, enumeration and the flip graph of k-triangulations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::convex::{edge_index, Edge};
use crate::error::{invalid, param, Limits, Result};
use crate::ktri::{check_params, relevant_count, t_min, KTriangulation};
use crate::linalg::det_bareiss;

/// Largest n for which triangulations are keyed by a `u128` edge mask.
pub const MAX_ENUM_N: usize = 16;

pub fn catalan(i: usize) -> BigInt {
    let mut c = BigInt::one();
    for j in 0..i {
        c = c * BigInt::from(2 * (2 * j + 1)) / BigInt::from(j + 2);
    }
    c
}

/// `det(C_{n-i-j})` for `1 <= i, j <= k`.
pub fn count_hankel(n: usize, k: usize) -> Result<BigInt> {
    if k == 0 || n < 2 * k {
        return param(format!("need k >= 1 and n >= 2k, got n={n}, k={k}"));
    }
    let m: Vec<Vec<BigInt>> =
        (1..=k).map(|i| (1..=k).map(|j| catalan(n - i - j)).collect()).collect();
    Ok(det_bareiss(m))
}

/// `∏_{1 <= i <= j <= n-2k-1} (i+j+2k)/(i+j)`, computed as an exact rational.
pub fn count_product(n: usize, k: usize) -> Result<BigInt> {
    check_params_loose(n, k)?;
    let m = n - 2 * k - 1;
    let mut acc = BigRational::one();
    for i in 1..=m {
        for j in i..=m {
            acc *= BigRational::new(BigInt::from(i + j + 2 * k), BigInt::from(i + j));
        }
    }
    if !acc.is_integer() {
        return invalid("product formula is not integral");
    }
    Ok(acc.to_integer())
}

fn check_params_loose(n: usize, k: usize) -> Result<()> {
    if k == 0 || n < 2 * k + 1 {
        return param(format!("need k >= 1 and n >= 2k+1, got n={n}, k={k}"));
    }
    Ok(())
}

/// Bitmask key of a k-triangulation over the edge indices of `E_n`.
pub fn key_of(t: &KTriangulation) -> u128 {
    let n = t.n();
    t.relevant().iter().fold(0u128, |acc, &e| acc | 1u128 << edge_index(e, n))
}

fn key_of_edges(edges: impl Iterator<Item = Edge>, n: usize) -> u128 {
    edges.fold(0u128, |acc, e| acc | 1u128 << edge_index(e, n))
}

/// The flip graph. Node 0 is the minimal triangulation; nodes are listed in
/// breadth-first order from it.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    pub n: usize,
    pub k: usize,
    pub nodes: Vec<KTriangulation>,
    pub adjacency: Vec<Vec<u32>>,
}

impl FlipGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, t: &KTriangulation) -> Option<usize> {
        self.nodes.iter().position(|x| x == t)
    }

    pub fn is_regular(&self) -> bool {
        let d = relevant_count(self.n, self.k);
        self.adjacency.iter().all(|a| a.len() == d)
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || bfs_levels(&self.adjacency, 0).iter().all(|&d| d != u32::MAX)
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency
            .iter()
            .enumerate()
            .all(|(i, a)| a.iter().all(|&j| self.adjacency[j as usize].contains(&(i as u32))))
    }

    /// Graphviz rendering; node labels are the sorted relevant edge lists.
    pub fn to_dot(&self) -> String {
        let mut s = format!("graph flips_{}_{} {{\n", self.n, self.k);
        for (i, t) in self.nodes.iter().enumerate() {
            let label: Vec<String> = t.relevant().iter().map(|e| e.to_string()).collect();
            let _ = writeln!(s, "  {i} [label=\"{}\"];", label.join(" "));
        }
        for (i, a) in self.adjacency.iter().enumerate() {
            for &j in a {
                if (i as u32) < j {
                    let _ = writeln!(s, "  {i} -- {j};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first search over flips from the minimal triangulation.
///
/// Each layer is expanded in parallel; insertion happens in frontier order,
/// so the output does not depend on the thread count.
pub fn build_flip_graph(n: usize, k: usize, limits: &Limits) -> Result<FlipGraph> {
    check_params(n, k)?;
    if n > MAX_ENUM_N {
        return param(format!("enumeration supports n <= {MAX_ENUM_N}"));
    }
    let start = t_min(n, k)?;
    let mut ids: HashMap<u128, u32> = HashMap::new();
    let mut nodes = vec![start.clone()];
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new()];
    ids.insert(key_of(&start), 0);
    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        limits.check(nodes.len())?;
        let expanded: Vec<Result<Vec<(u128, KTriangulation)>>> = frontier
            .par_iter()
            .map(|&id| {
                let t = &nodes[id as usize];
                t.relevant()
                    .iter()
                    .map(|&f| {
                        let (next, _) = t.flip(f)?;
                        Ok((key_of(&next), next))
                    })
                    .collect()
            })
            .collect();
        let mut next_frontier = Vec::new();
        for (&id, res) in frontier.iter().zip(expanded) {
            for (key, t) in res? {
                let nid = match ids.get(&key) {
                    Some(&x) => x,
                    None => {
                        let x = nodes.len() as u32;
                        ids.insert(key, x);
                        nodes.push(t);
                        adjacency.push(Vec::new());
                        next_frontier.push(x);
                        x
                    }
                };
                adjacency[id as usize].push(nid);
            }
        }
        frontier = next_frontier;
    }
    limits.check(nodes.len())?;
    Ok(FlipGraph { n, k, nodes, adjacency })
}

/// All k-triangulations of the n-gon, each once.
pub fn enumerate(n: usize, k: usize, limits: &Limits) -> Result<Vec<KTriangulation>> {
    Ok(build_flip_graph(n, k, limits)?.nodes)
}

fn bfs_levels(adj: &[Vec<u32>], s: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut q = VecDeque::new();
    dist[s] = 0;
    q.push_back(s as u32);
    while let Some(u) = q.pop_front() {
        let du = dist[u as usize];
        for &v in &adj[u as usize] {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                q.push_back(v);
            }
        }
    }
    dist
}

fn eccentricity(adj: &[Vec<u32>], s: usize) -> u32 {
    bfs_levels(adj, s).into_iter().max().unwrap_or(0)
}

/// Diameter by all-sources BFS. Quadratic; used as an oracle on small graphs.
pub fn diameter_all_sources(g: &FlipGraph) -> usize {
    (0..g.len()).into_par_iter().map(|s| eccentricity(&g.adjacency, s)).max().unwrap_or(0) as usize
}

/// Dihedral images of a triangulation, as keys.
fn dihedral_keys(t: &KTriangulation) -> impl Iterator<Item = u128> + '_ {
    let n = t.n();
    (0..n).flat_map(move |r| {
        [false, true].into_iter().map(move |mirror| {
            let map = |x: usize| if mirror { (2 * n - x + r) % n } else { (x + r) % n };
            key_of_edges(t.relevant().iter().map(|e| Edge::new(map(e.u), map(e.v))), n)
        })
    })
}

/// Exact diameter by iterative fringe upper bounds.
///
/// Starts from the middle of a double sweep, then walks the BFS levels from
/// the deepest one, computing eccentricities of fringe nodes until the lower
/// bound exceeds what shallower levels can reach. Eccentricities are cached
/// per dihedral orbit, since rotations and reflections are graph automorphisms.
pub fn diameter(g: &FlipGraph) -> usize {
    let adj = &g.adjacency;
    if g.len() <= 1 {
        return 0;
    }
    let orbit: Vec<u128> = g
        .nodes
        .par_iter()
        .map(|t| dihedral_keys(t).min().unwrap())
        .collect();
    let mut cache: HashMap<u128, u32> = HashMap::new();

    let d0 = bfs_levels(adj, 0);
    let a = argmax(&d0);
    let da = bfs_levels(adj, a);
    let b = argmax(&da);
    let mut lb = da[b];
    // middle of a shortest a-b path
    let db = bfs_levels(adj, b);
    let half = da[b] / 2;
    let u = (0..g.len()).find(|&x| da[x] == half && db[x] == da[b] - half).unwrap_or(a);
    let du = bfs_levels(adj, u);
    let eu = *du.iter().max().unwrap();
    lb = lb.max(eu);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); eu as usize + 1];
    for (x, &d) in du.iter().enumerate() {
        levels[d as usize].push(x);
    }
    let mut i = eu;
    let mut ub = 2 * eu;
    while ub > lb && i > 0 {
        let todo: Vec<u128> = {
            let mut v: Vec<u128> = levels[i as usize]
                .iter()
                .map(|&x| orbit[x])
                .filter(|o| !cache.contains_key(o))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let reps: Vec<(u128, usize)> = todo
            .iter()
            .map(|o| (*o, levels[i as usize].iter().copied().find(|&x| orbit[x] == *o).unwrap()))
            .collect();
        let eccs: Vec<(u128, u32)> =
            reps.par_iter().map(|&(o, x)| (o, eccentricity(adj, x))).collect();
        cache.extend(eccs);
        let bi = levels[i as usize].iter().map(|&x| cache[&orbit[x]]).max().unwrap_or(0);
        lb = lb.max(bi);
        if lb > 2 * (i - 1) {
            return lb as usize;
        }
        ub = 2 * (i - 1);
        i -= 1;
    }
    lb as usize
}

fn argmax(d: &[u32]) -> usize {
    let mut best = 0;
    for (i, &x) in d.iter().enumerate() {
        if x > d[best] {
            best = i;
        }
    }
    best
}

/// Mean number of k-crossings on the vertices `0..k` over all k-triangulations.
pub fn avg_first_block_crossings(n: usize, k: usize, limits: &Limits) -> Result<BigRational> {
    let all = enumerate(n, k, limits)?;
    let total: u64 = all.iter().map(|t| t.first_block_crossings()).sum();
    Ok(BigRational::new(BigInt::from(total), BigInt::from(all.len())))
}

/// Upper bound `2k(n-4k-1)` on the diameter, stated for `n > 4k^2(2k+1)`.
pub fn diameter_upper_bound(n: usize, k: usize) -> Option<usize> {
    if n > 4 * k * k * (2 * k + 1) {
        Some(2 * k * (n - 4 * k - 1))
    } else {
        None
    }
}

/// Converts a count to `u64` when it fits.
pub fn small(x: &BigInt) -> Option<u64> {
    if x < &BigInt::zero() {
        None
    } else {
        x.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_start() {
        let c: Vec<u64> = (0..8).map(|i| small(&catalan(i)).unwrap()).collect();
        assert_eq!(c, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }
}
