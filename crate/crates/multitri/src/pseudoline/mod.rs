//! Pseudoline arrangements with contact points on a fixed support, encoded
//! as primitive sorting networks.
//!
//! A support is a list of events; event `t` sits between rows `rows[t]` and
//! `rows[t] + 1` (rows are 1-based, top to bottom). The list is read from the
//! cut: index 0 is the largest event for the cut order and is the first
//! comparator applied when sorting the inverted permutation.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{invalid, param, Error, Result};

mod duality;
mod enumerate;
mod horizon;
mod universality;

pub use duality::{convex_kernel, convex_support, dualize, primalize, ConvexSupport};
pub use enumerate::{brute_force, enumerate, enumerate_collect};
pub use horizon::{
    greedy_equals_g, horizon_sets, iterated_greedy, kernel, kernel_greedy, non_crossings_of_greedy,
    HorizonSets, Kernel,
};
pub use universality::{universality_check, universality_embed, UniversalityEmbedding, UniversalityReport};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportNetwork {
    pub n: usize,
    pub rows: Vec<usize>,
}

impl SupportNetwork {
    pub fn new(n: usize, rows: Vec<usize>) -> Result<Self> {
        if n < 1 {
            return param("a support needs at least one wire");
        }
        if let Some(&p) = rows.iter().find(|&&p| p == 0 || p >= n) {
            return param(format!("row {p} outside 1..{}", n.saturating_sub(1)));
        }
        Ok(SupportNetwork { n, rows })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Number of contact points in any arrangement on this support.
    pub fn contact_count(&self) -> Option<usize> {
        self.m().checked_sub(self.n * (self.n - 1) / 2)
    }

    /// Whether some arrangement lives on this support: bubble-sorting the
    /// inverted permutation through every comparator must end sorted.
    pub fn is_valid(&self) -> bool {
        let mut perm: Vec<usize> = (0..self.n).rev().collect();
        for &p in &self.rows {
            if perm[p - 1] > perm[p] {
                perm.swap(p - 1, p);
            }
        }
        perm.windows(2).all(|w| w[0] < w[1])
    }

    /// Events reachable from each event along the support, going forward
    /// in the list. `reach[w]` contains `v` iff `v ≼ w`.
    pub fn reachability(&self) -> Vec<Vec<u64>> {
        reachability(&self.rows)
    }

    /// The cut whose window is the up-set of event `z`, so that `z` is the
    /// unique minimal event. Events outside the up-set are swept as a block
    /// (each one moves to the top with its row mirrored) until none remain.
    /// Returns the network and the original index of each event.
    pub fn cut_at(&self, z: usize) -> Result<(SupportNetwork, Vec<usize>)> {
        if z >= self.m() {
            return param(format!("event {z} out of range"));
        }
        let mut rows = self.rows.clone();
        let mut ids: Vec<usize> = (0..self.m()).collect();
        for _ in 0..=self.m() {
            let zpos = ids.iter().position(|&x| x == z).unwrap();
            let reach = reachability(&rows);
            let (below, above): (Vec<usize>, Vec<usize>) =
                (0..rows.len()).partition(|&i| !bits_has(&reach[i], zpos));
            if below.is_empty() {
                return Ok((SupportNetwork { n: self.n, rows }, ids));
            }
            let order: Vec<usize> = below.iter().chain(&above).copied().collect();
            let mirrored: Vec<bool> = order.iter().map(|i| below.contains(i)).collect();
            rows = order.iter().zip(&mirrored).map(|(&i, &mi)| if mi { self.n - rows[i] } else { rows[i] }).collect();
            ids = order.iter().map(|&i| ids[i]).collect();
        }
        invalid("sweep did not settle; support is not a pseudoline support")
    }

    /// Whether events `i` and `i+1` commute (their rows are not adjacent).
    pub fn commutes(&self, i: usize) -> bool {
        i + 1 < self.m() && self.rows[i].abs_diff(self.rows[i + 1]) >= 2
    }

    /// Canonical representative of the commutation class: commuting
    /// neighbors are bubble-sorted by row. Returns the network and, for each
    /// new position, the original event index.
    pub fn normal_form(&self) -> (SupportNetwork, Vec<usize>) {
        let mut ids: Vec<usize> = (0..self.m()).collect();
        let mut rows = self.rows.clone();
        loop {
            let mut changed = false;
            for i in 0..rows.len().saturating_sub(1) {
                if rows[i].abs_diff(rows[i + 1]) >= 2 && rows[i] > rows[i + 1] {
                    rows.swap(i, i + 1);
                    ids.swap(i, i + 1);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (SupportNetwork { n: self.n, rows }, ids)
    }
}

pub(crate) fn bits_has(b: &[u64], i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

pub(crate) fn reachability(rows: &[usize]) -> Vec<Vec<u64>> {
    let m = rows.len();
    let words = m.div_ceil(64).max(1);
    let mut reach = vec![vec![0u64; words]; m];
    for i in (0..m).rev() {
        let p = rows[i];
        let top = (i + 1..m).find(|&j| rows[j] == p || rows[j] + 1 == p);
        let bottom = (i + 1..m).find(|&j| rows[j] == p || rows[j] == p + 1);
        let mut r = vec![0u64; words];
        r[i / 64] |= 1 << (i % 64);
        for j in [top, bottom].into_iter().flatten() {
            for (a, b) in r.iter_mut().zip(&reach[j]) {
                *a |= b;
            }
        }
        reach[i] = r;
    }
    reach
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PseudoFlipDirection {
    Increasing,
    Decreasing,
}

/// An arrangement: a support plus the set of events that are contacts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContactArrangement {
    pub support: SupportNetwork,
    pub contacts: BTreeSet<usize>,
}

/// Result of running the wires through the network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    pub valid: bool,
    /// Wires (labelled by starting row, 1-based) meeting at each event, smaller first.
    pub pairs: Vec<(usize, usize)>,
    /// A wire pair that does not cross exactly once, if any.
    pub offending: Option<(usize, usize)>,
}

pub fn simulate_rows(n: usize, rows: &[usize], is_contact: impl Fn(usize) -> bool) -> Simulation {
    let mut pos: Vec<usize> = (0..=n).collect();
    let mut swaps = vec![vec![0u32; n + 1]; n + 1];
    let mut pairs = Vec::with_capacity(rows.len());
    for (t, &p) in rows.iter().enumerate() {
        let (a, b) = (pos[p], pos[p + 1]);
        let pair = (a.min(b), a.max(b));
        pairs.push(pair);
        if !is_contact(t) {
            pos.swap(p, p + 1);
            swaps[pair.0][pair.1] += 1;
        }
    }
    let mut offending = None;
    'outer: for a in 1..=n {
        for b in a + 1..=n {
            if swaps[a][b] != 1 {
                offending = Some((a, b));
                break 'outer;
            }
        }
    }
    Simulation { valid: offending.is_none(), pairs, offending }
}

impl ContactArrangement {
    pub fn new(support: SupportNetwork, contacts: BTreeSet<usize>) -> Result<Self> {
        if let Some(&c) = contacts.iter().find(|&&c| c >= support.m()) {
            return param(format!("contact {c} is not an event"));
        }
        let a = ContactArrangement { support, contacts };
        let sim = a.simulate();
        if !sim.valid {
            let (x, y) = sim.offending.unwrap();
            return invalid(format!("wires {x} and {y} do not cross exactly once"));
        }
        Ok(a)
    }

    pub fn simulate(&self) -> Simulation {
        simulate_rows(self.support.n, &self.support.rows, |t| self.contacts.contains(&t))
    }

    pub fn crossings(&self) -> Vec<usize> {
        (0..self.support.m()).filter(|t| !self.contacts.contains(t)).collect()
    }

    /// The crossing event of the two wires touching at contact `v`.
    pub fn partner(&self, v: usize) -> Result<usize> {
        if !self.contacts.contains(&v) {
            return param(format!("event {v} is not a contact"));
        }
        let sim = self.simulate();
        let pair = sim.pairs[v];
        (0..self.support.m())
            .find(|&t| !self.contacts.contains(&t) && sim.pairs[t] == pair)
            .ok_or_else(|| Error::Invalid("contact wires never cross".into()))
    }

    /// Exchanges the contact `v` with the crossing of its two wires.
    pub fn flip(&self, v: usize) -> Result<(ContactArrangement, usize, PseudoFlipDirection)> {
        let w = self.partner(v)?;
        let mut contacts = self.contacts.clone();
        contacts.remove(&v);
        contacts.insert(w);
        let reach = self.support.reachability();
        // v ≺ w iff v is reachable from w
        let dir = if bits_has(&reach[w], v) {
            PseudoFlipDirection::Increasing
        } else {
            PseudoFlipDirection::Decreasing
        };
        Ok((ContactArrangement { support: self.support.clone(), contacts }, w, dir))
    }
}

/// The greedy arrangement with forced contacts `forced`: sort the inverted
/// permutation at every event except the forced ones.
pub fn greedy(s: &SupportNetwork, forced: &BTreeSet<usize>) -> Result<ContactArrangement> {
    let contacts = greedy_rows(s.n, &s.rows, |t| forced.contains(&t));
    let a = ContactArrangement { support: s.clone(), contacts: contacts.into_iter().collect() };
    if !a.simulate().valid {
        return invalid("no arrangement on this support contains the forced contacts");
    }
    Ok(a)
}

pub(crate) fn greedy_rows(n: usize, rows: &[usize], forced: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).rev().collect();
    let mut contacts = Vec::new();
    for (t, &p) in rows.iter().enumerate() {
        if forced(t) || perm[p - 1] < perm[p] {
            contacts.push(t);
        } else {
            perm.swap(p - 1, p);
        }
    }
    contacts
}

/// Whether `a` has no decreasing flip among its non-forced contacts.
pub fn is_increasing_source(a: &ContactArrangement, forced: &BTreeSet<usize>) -> Result<bool> {
    for &v in a.contacts.iter().filter(|v| !forced.contains(v)) {
        let (_, _, dir) = a.flip(v)?;
        if dir == PseudoFlipDirection::Decreasing {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random reduced word of the reversal on `n` wires.
pub fn random_reversal_network<R: rand::Rng>(n: usize, rng: &mut R) -> SupportNetwork {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rows = Vec::new();
    loop {
        let open: Vec<usize> = (0..n.saturating_sub(1)).filter(|&i| perm[i] < perm[i + 1]).collect();
        if open.is_empty() {
            break;
        }
        let i = open[rng.gen_range(0..open.len())];
        perm.swap(i, i + 1);
        rows.push(i + 1);
    }
    SupportNetwork { n, rows }
}

/// Applies random swaps of commuting neighbors. Returns the new network and
/// the original index of each event.
pub fn random_commutations<R: rand::Rng>(
    s: &SupportNetwork,
    steps: usize,
    rng: &mut R,
) -> (SupportNetwork, Vec<usize>) {
    let mut rows = s.rows.clone();
    let mut ids: Vec<usize> = (0..s.m()).collect();
    if rows.len() < 2 {
        return (s.clone(), ids);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..rows.len() - 1);
        if rows[i].abs_diff(rows[i + 1]) >= 2 {
            rows.swap(i, i + 1);
            ids.swap(i, i + 1);
        }
    }
    (SupportNetwork { n: s.n, rows }, ids)
}

/// Parses the text format: "n m", the m rows, the forced contacts, and an
/// optional fourth line of contacts.
pub fn parse_support(text: &str) -> Result<(SupportNetwork, BTreeSet<usize>, Option<BTreeSet<usize>>)> {
    let mut lines = text.lines();
    let nums = |l: Option<&str>| -> Result<Vec<usize>> {
        l.unwrap_or("")
            .split_whitespace()
            .map(|x| x.parse::<usize>().map_err(|e| Error::Param(format!("bad integer {x:?}: {e}"))))
            .collect()
    };
    let head = nums(lines.next())?;
    if head.len() != 2 {
        return param("first line must be \"n m\"");
    }
    let rows = nums(lines.next())?;
    if rows.len() != head[1] {
        return param(format!("expected {} rows, found {}", head[1], rows.len()));
    }
    let support = SupportNetwork::new(head[0], rows)?;
    let forced: BTreeSet<usize> = nums(lines.next())?.into_iter().collect();
    let contacts = match lines.next() {
        Some(l) if !l.trim().is_empty() => Some(nums(Some(l))?.into_iter().collect()),
        _ => None,
    };
    for &c in forced.iter().chain(contacts.iter().flatten()) {
        if c >= support.m() {
            return param(format!("event index {c} out of range"));
        }
    }
    Ok((support, forced, contacts))
}

pub fn format_support(s: &SupportNetwork, forced: &BTreeSet<usize>, contacts: Option<&BTreeSet<usize>>) -> String {
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!("{} {}\n{}\n{}\n", s.n, s.m(), join(&mut s.rows.iter().copied()), join(&mut forced.iter().copied()));
    if let Some(c) = contacts {
        out.push_str(&join(&mut c.iter().copied()));
        out.push('\n');
    }
    out
}
