//! Beam arrangements on the integer grid and the beam polytope.
//!
//! Every edge `[u,v]` of a k-triangulation is a two-sided mirror at the grid
//! point `(u,v)`. Beam `i` (1-based) enters horizontally on row `k-1+i` and
//! bounces off mirrors: east-going rays turn north, north-going rays turn east.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::convex::{Edge, EdgeClass};
use crate::error::{invalid, param, Limits, Result};
use crate::flipgraph::enumerate;
use crate::ktri::KTriangulation;
use crate::linalg::rank_bareiss;

/// A beam: its reflection points in order. Even-indexed points turn an
/// east-going ray north, odd-indexed ones turn a north-going ray east.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Beam {
    pub row: usize,
    pub reflections: Vec<(usize, usize)>,
}

impl Beam {
    /// Area below the beam inside the box `[0,row] x [row,n-1]`, in unit cells.
    pub fn area(&self) -> u64 {
        let c = self.row as u64;
        self.reflections
            .windows(2)
            .enumerate()
            .filter(|(i, _)| i % 2 == 1)
            .map(|(_, w)| (w[1].0 - w[0].0) as u64 * (w[0].1 as u64 - c))
            .sum()
    }

    /// The x-coordinate where the beam meets the anti-diagonal `x+y = s`.
    fn x_on(&self, s: i64) -> i64 {
        let r = self.row as i64;
        let mut prev = (i64::MIN / 4, r);
        for (i, &(u, v)) in self.reflections.iter().enumerate() {
            let (u, v) = (u as i64, v as i64);
            if s <= u + v {
                // on the segment from prev to (u,v): horizontal if i is even
                return if i % 2 == 0 { s - prev.1 } else { u };
            }
            prev = (u, v);
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BeamArrangement {
    pub n: usize,
    pub k: usize,
    pub mirrors: Vec<Edge>,
    pub beams: Vec<Beam>,
}

impl BeamArrangement {
    /// Whether every pair of beams crosses exactly once. Beams are compared
    /// along anti-diagonals, which each monotone beam meets exactly once;
    /// touching at a shared mirror is not a crossing.
    pub fn is_pseudoline_arrangement(&self) -> bool {
        let m = self.beams.len();
        let range = -1..=2 * self.n as i64;
        for a in 0..m {
            for b in a + 1..m {
                let mut changes = 0;
                let mut prev = 0i64;
                for s in range.clone() {
                    let d = (self.beams[a].x_on(s) - self.beams[b].x_on(s)).signum();
                    if d != 0 {
                        if prev != 0 && d != prev {
                            changes += 1;
                        }
                        prev = d;
                    }
                }
                if changes != 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Traces the `n-2k` beams of `t` through its mirrors.
pub fn beam_arrangement(t: &KTriangulation) -> Result<BeamArrangement> {
    let (n, k) = (t.n(), t.k());
    let mirrors = t.all_edges();
    let mut at = vec![vec![false; n]; n];
    for e in &mirrors {
        at[e.u][e.v] = true;
    }
    let mut beams = Vec::with_capacity(n - 2 * k);
    for i in 1..=n - 2 * k {
        let row = k - 1 + i;
        let (mut x, mut y) = (None::<usize>, row);
        let mut reflections = Vec::new();
        loop {
            // east along row y
            let from = x.map_or(0, |x| x + 1);
            let Some(u) = (from..y).find(|&u| at[u][y]) else {
                return invalid(format!("beam {i} escapes east on row {y}"));
            };
            reflections.push((u, y));
            // north along column u
            match (y + 1..n).find(|&v| at[u][v]) {
                Some(v) => {
                    reflections.push((u, v));
                    x = Some(u);
                    y = v;
                }
                None => {
                    x = Some(u);
                    break;
                }
            }
        }
        if reflections.len() != 2 * k + 1 || x != Some(row) {
            return invalid(format!("beam {i} reflects {} times and exits at {x:?}", reflections.len()));
        }
        beams.push(Beam { row, reflections });
    }
    Ok(BeamArrangement { n, k, mirrors, beams })
}

/// Beam vector from the grid areas.
pub fn beam_vector(t: &KTriangulation) -> Result<Vec<u64>> {
    Ok(beam_arrangement(t)?.beams.iter().map(Beam::area).collect())
}

/// Beam vector from the stars: `Σ_j (s_{j+1}-s_j)(s_{k+1+j}-s_{k+1})`.
pub fn beam_vector_from_stars(t: &KTriangulation) -> Result<Vec<u64>> {
    let k = t.k();
    let stars = t.star_decomposition()?;
    Ok(stars
        .iter()
        .map(|s| {
            let v = &s.vertices;
            (0..k).map(|j| ((v[j + 1] - v[j]) * (v[k + 1 + j] - v[k])) as u64).sum()
        })
        .collect())
}

/// `k(n-2k)(n-k)/2`.
pub fn beam_sum(n: usize, k: usize) -> u64 {
    (k * (n - 2 * k) * (n - k) / 2) as u64
}

/// Stars sharing the relevant edge `f`, by 0-based beam index.
fn beams_of_edge(t: &KTriangulation, f: Edge) -> Result<(usize, usize)> {
    let (r, s) = t.stars_of_edge(f)?;
    let k = t.k();
    Ok((r.vertices[k] - k, s.vertices[k] - k))
}

/// `ψ(T) - ψ(T')` for the flip of `f`, with the two beam indices involved.
pub fn flip_difference(t: &KTriangulation, f: Edge) -> Result<(Vec<i64>, (usize, usize))> {
    let (t2, _) = t.flip(f)?;
    let a = beam_vector(t)?;
    let b = beam_vector(&t2)?;
    let d = a.iter().zip(&b).map(|(x, y)| *x as i64 - *y as i64).collect();
    Ok((d, beams_of_edge(t, f)?))
}

/// One arc per relevant edge, from the beam above to the beam below at its mirror.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualMultigraph {
    pub nodes: usize,
    /// `(from, to, edge)` with 0-based beam indices.
    pub arcs: Vec<(usize, usize, Edge)>,
}

impl DualMultigraph {
    pub fn max_multiplicity(&self) -> usize {
        let mut m: HashMap<(usize, usize), usize> = HashMap::new();
        for &(a, b, _) in &self.arcs {
            *m.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        m.into_values().max().unwrap_or(0)
    }

    /// Reachability bitsets, or `None` on a directed cycle.
    pub fn order(&self) -> Option<Vec<u64>> {
        let m = self.nodes;
        let mut out_adj = vec![0u64; m];
        let mut indeg = vec![0usize; m];
        for &(a, b, _) in &self.arcs {
            if out_adj[a] >> b & 1 == 0 {
                out_adj[a] |= 1 << b;
                indeg[b] += 1;
            }
        }
        let mut topo = Vec::with_capacity(m);
        let mut stack: Vec<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            topo.push(v);
            for w in 0..m {
                if out_adj[v] >> w & 1 == 1 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        stack.push(w);
                    }
                }
            }
        }
        if topo.len() < m {
            return None;
        }
        let mut reach = out_adj.clone();
        for &v in topo.iter().rev() {
            for w in 0..m {
                if out_adj[v] >> w & 1 == 1 {
                    reach[v] |= reach[w];
                }
            }
        }
        Some(reach)
    }

    pub fn is_acyclic(&self) -> bool {
        self.order().is_some()
    }

    /// Cover relations of the induced order, when acyclic.
    pub fn hasse(&self) -> Option<Vec<(usize, usize)>> {
        let reach = self.order()?;
        let m = self.nodes;
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if reach[a] >> b & 1 == 1 && !(0..m).any(|c| reach[a] >> c & 1 == 1 && reach[c] >> b & 1 == 1) {
                    out.push((a, b));
                }
            }
        }
        Some(out)
    }

    /// Acyclic with a Hasse diagram that is a tree.
    pub fn hasse_is_tree(&self) -> bool {
        let Some(h) = self.hasse() else { return false };
        if h.len() + 1 != self.nodes {
            return false;
        }
        let mut comp: Vec<usize> = (0..self.nodes).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            if c[x] != x {
                c[x] = find(c, c[x]);
            }
            c[x]
        }
        for (a, b) in h {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            if ra == rb {
                return false;
            }
            comp[ra] = rb;
        }
        true
    }
}

pub fn dual_multigraph(t: &KTriangulation) -> Result<DualMultigraph> {
    let ba = beam_arrangement(t)?;
    // at each mirror: the beam turning east->north lies north-west, i.e. above
    let mut above: HashMap<(usize, usize), usize> = HashMap::new();
    let mut below: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, b) in ba.beams.iter().enumerate() {
        for (j, &p) in b.reflections.iter().enumerate() {
            let slot = if j % 2 == 0 { &mut above } else { &mut below };
            if slot.insert(p, i).is_some() {
                return invalid(format!("two beams turn the same way at {p:?}"));
            }
        }
    }
    let mut arcs = Vec::new();
    for &e in t.relevant() {
        match (above.get(&(e.u, e.v)), below.get(&(e.u, e.v))) {
            (Some(&a), Some(&b)) if a != b => arcs.push((a, b, e)),
            _ => return invalid(format!("mirror {e} does not separate two beams")),
        }
    }
    Ok(DualMultigraph { nodes: ba.beams.len(), arcs })
}

pub fn is_polytope_vertex(t: &KTriangulation) -> Result<bool> {
    Ok(dual_multigraph(t)?.is_acyclic())
}

pub fn is_simple_vertex(t: &KTriangulation) -> Result<bool> {
    Ok(dual_multigraph(t)?.hasse_is_tree())
}

/// Not constant and no factor `1 0^r 1` with `r >= p`.
pub fn is_valid_sequence(sigma: &[bool], p: usize) -> bool {
    if sigma.iter().all(|&b| b) || sigma.iter().all(|&b| !b) {
        return false;
    }
    let first = sigma.iter().position(|&b| b).unwrap();
    let last = sigma.iter().rposition(|&b| b).unwrap();
    let mut run = 0;
    for &b in &sigma[first..=last] {
        if b {
            run = 0;
        } else {
            run += 1;
            if run >= p {
                return false;
            }
        }
    }
    true
}

/// All p-valid sequences of length q, in lexicographic order (0 < 1).
pub fn valid_sequences(p: usize, q: usize) -> Result<Vec<Vec<bool>>> {
    if q == 0 || q > 30 {
        return param("sequence length must be in 1..=30");
    }
    if p == 0 {
        return param("p must be at least 1");
    }
    Ok((0u64..1 << q)
        .map(|m| (0..q).map(|i| m >> (q - 1 - i) & 1 == 1).collect::<Vec<bool>>())
        .filter(|s| is_valid_sequence(s, p))
        .collect())
}

pub fn vs_count(p: usize, q: usize) -> Result<usize> {
    Ok(valid_sequences(p, q)?.len())
}

pub fn format_sequence(sigma: &[bool]) -> String {
    sigma.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_sequence(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => param(format!("unexpected character {c:?} in 0/1 sequence")),
        })
        .collect()
}

/// `{[ζ_i, ζ_{i+k}]}` where `ζ` lists the zeros of `0^k σ 0^k`.
pub fn d_sigma(sigma: &[bool], n: usize, k: usize) -> Result<Vec<Edge>> {
    if sigma.len() + 2 * k != n {
        return param(format!("sequence length {} does not match n-2k = {}", sigma.len(), n as i64 - 2 * k as i64));
    }
    if !is_valid_sequence(sigma, k) {
        return invalid(format!("{} is not {k}-valid", format_sequence(sigma)));
    }
    let padded: Vec<bool> = std::iter::repeat(false).take(k).chain(sigma.iter().copied()).chain(std::iter::repeat(false).take(k)).collect();
    let zeta: Vec<usize> = padded.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i).collect();
    Ok((0..zeta.len() - k).map(|i| Edge::new(zeta[i], zeta[i + k])).collect())
}

fn dot(sigma: &[bool], psi: &[u64]) -> u64 {
    sigma.iter().zip(psi).filter(|(&b, _)| b).map(|(_, &x)| x).sum()
}

/// Indices into `family` minimizing `<σ, ψ(T)>`.
pub fn facet_members(sigma: &[bool], family: &[KTriangulation]) -> Result<Vec<usize>> {
    let vals = family.iter().map(|t| Ok(dot(sigma, &beam_vector(t)?))).collect::<Result<Vec<u64>>>()?;
    let Some(&min) = vals.iter().min() else { return Ok(Vec::new()) };
    Ok((0..family.len()).filter(|&i| vals[i] == min).collect())
}

/// Indices into `family` containing every relevant edge of `D(σ)`.
pub fn members_containing(sigma: &[bool], family: &[KTriangulation]) -> Result<Vec<usize>> {
    let Some(t0) = family.first() else { return Ok(Vec::new()) };
    let (n, k) = (t0.n(), t0.k());
    let d: Vec<Edge> = d_sigma(sigma, n, k)?
        .into_iter()
        .filter(|e| crate::convex::classify_edge(*e, n, k) == EdgeClass::Relevant)
        .collect();
    Ok((0..family.len()).filter(|&i| d.iter().all(|&e| family[i].contains(e))).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVectorReport {
    pub n: usize,
    pub k: usize,
    /// f_0 .. f_{d-1}.
    pub f: Vec<usize>,
    /// Number of triangulations with an acyclic dual multigraph.
    pub acyclic: usize,
    /// Number of beam vectors that are singleton faces of the facet lattice.
    pub lattice_vertices: usize,
    pub non_simple: usize,
    /// Affine rank of all beam vectors.
    pub affine_dim: usize,
    /// Facet normals that select no proper face, or repeat another facet.
    pub degenerate_facets: Vec<String>,
}

type Bits = Vec<u64>;

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_count(a: &Bits) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

fn bits_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

pub fn affine_rank(points: &[Vec<u64>]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let rows = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| BigInt::from(*a as i64 - *b as i64)).collect())
        .collect();
    rank_bareiss(rows)
}

/// Combinatorial f-vector of the beam polytope.
///
/// The ground set is the distinct beam vectors. Facets are the argmin sets of
/// the valid sequences; faces are all their intersections, graded by the
/// length of the longest chain below. The vertices found this way are
/// compared against the acyclicity criterion by the caller.
pub fn f_vector(n: usize, k: usize, limits: &Limits) -> Result<FVectorReport> {
    let family = enumerate(n, k, limits)?;
    if n - 2 * k < 2 {
        return param("the beam polytope is a point for n-2k < 2");
    }
    let mut acyclic = 0;
    let mut points: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for t in &family {
        if is_polytope_vertex(t)? {
            acyclic += 1;
        }
        let len = points.len();
        points.entry(beam_vector(t)?).or_insert(len);
    }
    let mut pts: Vec<Vec<u64>> = vec![Vec::new(); points.len()];
    for (p, i) in points {
        pts[i] = p;
    }
    let np = pts.len();
    let words = np.div_ceil(64);
    let affine_dim = affine_rank(&pts);

    let mut facets: Vec<Bits> = Vec::new();
    let mut degenerate = Vec::new();
    for sigma in valid_sequences(k, n - 2 * k)? {
        let vals: Vec<u64> = pts.iter().map(|p| dot(&sigma, p)).collect();
        let min = *vals.iter().min().unwrap();
        let mut b = vec![0u64; words];
        for i in (0..np).filter(|&i| vals[i] == min) {
            b[i / 64] |= 1 << (i % 64);
        }
        if bits_count(&b) == np || facets.contains(&b) {
            degenerate.push(format_sequence(&sigma));
        } else {
            facets.push(b);
        }
    }

    // intersection closure
    let mut faces: HashSet<Bits> = facets.iter().cloned().collect();
    let mut queue: Vec<Bits> = facets.clone();
    while let Some(f) = queue.pop() {
        limits.check(faces.len())?;
        for g in &facets {
            let h = bits_and(&f, g);
            if bits_count(&h) > 0 && !faces.contains(&h) {
                faces.insert(h.clone());
                queue.push(h);
            }
        }
    }
    let mut faces: Vec<Bits> = faces.into_iter().collect();
    faces.sort_by_key(|f| (bits_count(f), f.clone()));
    let mut dim = vec![0usize; faces.len()];
    for i in 0..faces.len() {
        dim[i] = (0..i)
            .filter(|&j| bits_count(&faces[j]) < bits_count(&faces[i]) && bits_subset(&faces[j], &faces[i]))
            .map(|j| dim[j] + 1)
            .max()
            .unwrap_or(0);
    }
    let top = dim.iter().copied().max().unwrap_or(0);
    let mut f = vec![0usize; top + 1];
    for &d in &dim {
        f[d] += 1;
    }
    let vertex_faces: Vec<usize> = faces
        .iter()
        .zip(&dim)
        .filter(|(_, &d)| d == 0)
        .map(|(b, _)| b.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize).unwrap())
        .collect();
    let non_simple = vertex_faces
        .iter()
        .filter(|&&v| facets.iter().filter(|b| b[v / 64] >> (v % 64) & 1 == 1).count() > top + 1)
        .count();
    Ok(FVectorReport {
        n,
        k,
        f,
        acyclic,
        lattice_vertices: vertex_faces.len(),
        non_simple,
        affine_dim,
        degenerate_facets: degenerate,
    })
}

/// The facet of a valid sequence: its edge set and the triangulations on it.
#[derive(Debug, Clone, Serialize)]
pub struct FacetReport {
    pub sigma: String,
    pub d_edges: Vec<Edge>,
    pub members: Vec<KTriangulation>,
}

pub fn facet_report(n: usize, k: usize, limits: &Limits) -> Result<Vec<FacetReport>> {
    let family = enumerate(n, k, limits)?;
    let mut out = Vec::new();
    for sigma in valid_sequences(k, n - 2 * k)? {
        let members = facet_members(&sigma, &family)?;
        out.push(FacetReport {
            sigma: format_sequence(&sigma),
            d_edges: d_sigma(&sigma, n, k)?,
            members: members.into_iter().map(|i| family[i].clone()).collect(),
        });
    }
    Ok(out)
}

/// Distinct beam vectors among the given triangulations.
pub fn distinct_vectors(family: &[KTriangulation]) -> Result<BTreeSet<Vec<u64>>> {
    family.iter().map(beam_vector).collect()
}
