//! Dyck paths and multipaths, indegree sequences and signatures, and the
//! star-coloring map from k-triangulations to Dyck k-paths.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::convex::Edge;
use crate::error::{invalid, param, Limits, Result};
use crate::flipgraph::enumerate;
use crate::ktri::{FlipDirection, KTriangulation};

/// A lattice path of north (`true`) and east (`false`) steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath(pub Vec<bool>);

impl DyckPath {
    pub fn parse(s: &str) -> Result<DyckPath> {
        let steps = s
            .chars()
            .map(|c| match c {
                'N' => Ok(true),
                'E' => Ok(false),
                _ => param(format!("unexpected step {c:?}")),
            })
            .collect::<Result<Vec<bool>>>()?;
        let p = DyckPath(steps);
        if !p.is_valid() {
            return invalid(format!("{s} is not a Dyck path"));
        }
        Ok(p)
    }

    pub fn semilength(&self) -> usize {
        self.0.len() / 2
    }

    /// Balanced and never below the diagonal.
    pub fn is_valid(&self) -> bool {
        let mut h: i64 = 0;
        for &s in &self.0 {
            h += if s { 1 } else { -1 };
            if h < 0 {
                return false;
            }
        }
        h == 0
    }

    /// Numbers of north steps before each east step: `N^{ν_0} E N^{ν_1} E ...`.
    pub fn north_runs(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut run = 0;
        for &s in &self.0 {
            if s {
                run += 1;
            } else {
                out.push(run);
                run = 0;
            }
        }
        out
    }

    pub fn from_runs(runs: &[usize]) -> DyckPath {
        let mut steps = Vec::new();
        for &r in runs {
            steps.extend(std::iter::repeat(true).take(r));
            steps.push(false);
        }
        DyckPath(steps)
    }

    /// North steps among the first `t` steps, for every `t`.
    fn heights(&self) -> Vec<usize> {
        let mut out = vec![0];
        for &s in &self.0 {
            out.push(out.last().unwrap() + s as usize);
        }
        out
    }

    /// Weakly above `other` at every step.
    pub fn is_above(&self, other: &DyckPath) -> bool {
        self.0.len() == other.0.len() && self.heights().iter().zip(other.heights()).all(|(a, b)| *a >= b)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s { "N" } else { "E" })?;
        }
        Ok(())
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `k` Dyck paths of equal semilength, each weakly below the previous one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DyckKPath(pub Vec<DyckPath>);

impl DyckKPath {
    pub fn is_valid(&self) -> bool {
        let Some(first) = self.0.first() else { return false };
        self.0.iter().all(|p| p.is_valid() && p.0.len() == first.0.len())
            && self.0.windows(2).all(|w| w[0].is_above(&w[1]))
    }

    /// `(Σ_i ν^i_{j-i})` for `j = 1..ℓ+k-1`.
    pub fn signature(&self) -> Vec<usize> {
        let k = self.0.len();
        let runs: Vec<Vec<usize>> = self.0.iter().map(|p| p.north_runs()).collect();
        let l = runs.first().map_or(0, |r| r.len());
        (1..l + k)
            .map(|j| {
                (1..=k)
                    .filter_map(|i| j.checked_sub(i).and_then(|p| runs[i - 1].get(p)))
                    .sum()
            })
            .collect()
    }

    /// Lexicographic order on the "above" relation: `self < other` when at the
    /// first differing path, `self`'s path is above `other`'s.
    pub fn precedes(&self, other: &DyckKPath) -> bool {
        match self.0.iter().zip(&other.0).find(|(a, b)| a != b) {
            Some((a, b)) => a.is_above(b),
            None => false,
        }
    }
}

/// All Dyck paths of semilength `l`.
pub fn dyck_paths(l: usize) -> Vec<DyckPath> {
    fn rec(up: usize, down: usize, cur: &mut Vec<bool>, out: &mut Vec<DyckPath>) {
        if up == 0 && down == 0 {
            out.push(DyckPath(cur.clone()));
            return;
        }
        if up > 0 {
            cur.push(true);
            rec(up - 1, down, cur, out);
            cur.pop();
        }
        if down > up {
            cur.push(false);
            rec(up, down - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(l, l, &mut Vec::new(), &mut out);
    out
}

/// All Dyck k-paths of semilength `l`.
pub fn enumerate_dyck_kpaths(l: usize, k: usize, limits: &Limits) -> Result<Vec<DyckKPath>> {
    if k == 0 {
        return param("k must be at least 1");
    }
    let paths = dyck_paths(l);
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(
        paths: &[DyckPath],
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<DyckKPath>,
        limits: &Limits,
    ) -> Result<()> {
        if cur.len() == k {
            out.push(DyckKPath(cur.iter().map(|&i| paths[i].clone()).collect()));
            return limits.check(out.len());
        }
        for i in 0..paths.len() {
            if cur.last().map_or(true, |&j| paths[j].is_above(&paths[i])) {
                cur.push(i);
                rec(paths, k, cur, out, limits)?;
                cur.pop();
            }
        }
        Ok(())
    }
    rec(&paths, k, &mut cur, &mut out, limits)?;
    Ok(out)
}

/// Indegrees of the first `n-k-1` vertices when the relevant edges and the
/// top boundary edges `[i, n-k+i]` are oriented towards their smaller end.
pub fn indegree_sequence(t: &KTriangulation) -> Vec<usize> {
    let (n, k) = (t.n(), t.k());
    let mut deg = vec![0; n];
    for e in t.relevant() {
        deg[e.u] += 1;
    }
    for i in 0..k {
        deg[i] += 1;
    }
    deg.truncate(n - k - 1);
    deg
}

/// The triangulation-to-Dyck-path bijection for `k = 1`.
pub fn k1_bijection(t: &KTriangulation) -> Result<DyckPath> {
    if t.k() != 1 {
        return param("the direct bijection needs k = 1");
    }
    Ok(DyckPath::from_runs(&indegree_sequence(t)))
}

/// Inverse of [`k1_bijection`]: vertices are attached from `n-2` down to 0,
/// each one to a prefix of the chain left visible by the previous ones.
pub fn k1_inverse(p: &DyckPath) -> Result<KTriangulation> {
    if !p.is_valid() || p.semilength() == 0 {
        return invalid("not a nonempty Dyck path");
    }
    let runs = p.north_runs();
    let n = runs.len() + 2;
    let mut chain = vec![n - 1];
    let mut edges = Vec::new();
    for i in (0..n - 1).rev() {
        let d = runs.get(i).copied().unwrap_or(0);
        if d + 1 > chain.len() {
            return invalid("path does not describe a triangulation");
        }
        // chain top is i+1; connect i to the next d chain vertices
        for j in 1..=d {
            let c = chain[chain.len() - 1 - j];
            edges.push(Edge::new(i, c));
        }
        chain.truncate(chain.len() - d);
        chain.push(i);
    }
    if chain != vec![n - 1, 0] {
        return invalid("path does not close on the top edge");
    }
    edges.retain(|e| *e != Edge::new(0, n - 1));
    KTriangulation::new(n, 1, edges)
}

/// `D_j(T) = N^{δ^j_{j-1}} E … N^{δ^j_{j+n-2k-2}} E`, where `δ^j_i` counts the
/// stars whose j-th smallest vertex is `i`.
pub fn map_d(t: &KTriangulation) -> Result<DyckKPath> {
    let (n, k) = (t.n(), t.k());
    let stars = t.star_decomposition()?;
    let mut delta = vec![vec![0usize; n]; k + 1];
    for s in &stars {
        for j in 1..=k {
            delta[j][s.vertices[j - 1]] += 1;
        }
    }
    let paths = (1..=k)
        .map(|j| DyckPath::from_runs(&(j - 1..=j + n - 2 * k - 2).map(|i| delta[j][i]).collect::<Vec<_>>()))
        .collect();
    Ok(DyckKPath(paths))
}

#[derive(Debug, Clone, Serialize)]
pub struct Collision {
    pub path: DyckKPath,
    pub triangulations: Vec<KTriangulation>,
}

/// Fibers of [`map_d`] with more than one triangulation.
pub fn injectivity_report(n: usize, k: usize, limits: &Limits) -> Result<Vec<Collision>> {
    let mut fibers: BTreeMap<DyckKPath, Vec<KTriangulation>> = BTreeMap::new();
    for t in enumerate(n, k, limits)? {
        fibers.entry(map_d(&t)?).or_default().push(t);
    }
    Ok(fibers
        .into_iter()
        .filter(|(_, v)| v.len() > 1)
        .map(|(path, triangulations)| Collision { path, triangulations })
        .collect())
}

/// Whether indegree sequences over k-triangulations and signatures over Dyck
/// k-paths have the same distribution.
pub fn distribution_compare(n: usize, k: usize, limits: &Limits) -> Result<bool> {
    let mut a: HashMap<Vec<usize>, i64> = HashMap::new();
    for t in enumerate(n, k, limits)? {
        *a.entry(indegree_sequence(&t)).or_default() += 1;
    }
    for p in enumerate_dyck_kpaths(n - 2 * k, k, limits)? {
        *a.entry(p.signature()).or_default() -= 1;
    }
    Ok(a.values().all(|&c| c == 0))
}

/// Checks `T < T' => D(T) < D(T')` on every slope-increasing flip; returns
/// the number of flips checked, or the first violation.
pub fn check_monotone(n: usize, k: usize, limits: &Limits) -> Result<std::result::Result<usize, (KTriangulation, Edge)>> {
    let mut checked = 0;
    for t in enumerate(n, k, limits)? {
        let d = map_d(&t)?;
        for &f in t.relevant() {
            let (t2, rec) = t.flip(f)?;
            if rec.direction == FlipDirection::SlopeIncreasing {
                checked += 1;
                if !d.precedes(&map_d(&t2)?) {
                    return Ok(Err((t, f)));
                }
            }
        }
    }
    Ok(Ok(checked))
}
