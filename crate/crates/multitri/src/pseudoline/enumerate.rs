//! Polynomial-space enumeration of the arrangements on a support.
//!
//! Each tree node is the greedy arrangement for its own cut and red set.
//! Only the current root-to-leaf path is held in memory.

use std::collections::BTreeSet;

use super::{greedy, simulate_rows, ContactArrangement, SupportNetwork};
use crate::error::{Limits, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Color {
    Blue,
    Red,
}

#[derive(Clone)]
struct Node {
    /// Event ids in current sweep order; index 0 is the largest for the cut.
    order: Vec<usize>,
    /// Current row of each event id (rows flip to n-p each time it is swept).
    rows: Vec<usize>,
    contacts: Vec<Option<Color>>,
    swept: Vec<bool>,
}

impl Node {
    fn current_rows(&self) -> Vec<usize> {
        self.order.iter().map(|&id| self.rows[id]).collect()
    }

    /// Ids of the events below `pos` (itself included), in sweep order.
    fn down_set(&self, pos: usize, n: usize) -> Vec<usize> {
        let p = self.rows[self.order[pos]];
        let mut active = vec![false; n + 1];
        active[p] = true;
        active[p + 1] = true;
        let mut d = vec![self.order[pos]];
        for &id in &self.order[pos + 1..] {
            let q = self.rows[id];
            if active[q] || active[q + 1] {
                active[q] = true;
                active[q + 1] = true;
                d.push(id);
            }
        }
        d
    }

    /// Sweeps the down-set `d`, bottom-most event first. Each swept event
    /// lands on top, so the block keeps its relative order.
    fn sweep(&mut self, d: &[usize], n: usize) {
        let inside: BTreeSet<usize> = d.iter().copied().collect();
        let rest: Vec<usize> = self.order.iter().copied().filter(|x| !inside.contains(x)).collect();
        let mut order: Vec<usize> = d.to_vec();
        order.extend(rest);
        for &id in d {
            self.rows[id] = n - self.rows[id];
            self.swept[id] = true;
        }
        self.order = order;
    }

    /// Partner crossing of the contact `id` in the current arrangement.
    fn partner(&self, id: usize, n: usize) -> usize {
        let rows = self.current_rows();
        let sim = simulate_rows(n, &rows, |t| self.contacts[self.order[t]].is_some());
        let at = self.order.iter().position(|&x| x == id).unwrap();
        let pair = sim.pairs[at];
        let t = (0..rows.len())
            .find(|&t| self.contacts[self.order[t]].is_none() && sim.pairs[t] == pair)
            .expect("contact wires cross exactly once");
        self.order[t]
    }
}

/// Streams every arrangement on `s` whose contacts contain `forced`.
/// Returns the number emitted. An empty family yields zero.
pub fn enumerate(
    s: &SupportNetwork,
    forced: &BTreeSet<usize>,
    limits: &Limits,
    emit: &mut dyn FnMut(&ContactArrangement),
) -> Result<usize> {
    let root = match greedy(s, forced) {
        Ok(a) => a,
        Err(crate::Error::Invalid(_)) => return Ok(0),
        Err(e) => return Err(e),
    };
    let mut contacts = vec![None; s.m()];
    for &c in &root.contacts {
        contacts[c] = Some(if forced.contains(&c) { Color::Red } else { Color::Blue });
    }
    let node = Node { order: (0..s.m()).collect(), rows: s.rows.clone(), contacts, swept: vec![false; s.m()] };
    let mut count = 0;
    let mut visited = 0;
    descend(s, node, limits, &mut visited, &mut count, emit)?;
    Ok(count)
}

fn descend(
    s: &SupportNetwork,
    mut node: Node,
    limits: &Limits,
    visited: &mut usize,
    count: &mut usize,
    emit: &mut dyn FnMut(&ContactArrangement),
) -> Result<()> {
    *visited += 1;
    limits.check(*visited)?;
    // minimal blue point: the last blue contact in sweep order
    let Some(pos) = (0..node.order.len()).rev().find(|&i| node.contacts[node.order[i]] == Some(Color::Blue))
    else {
        let contacts = (0..s.m()).filter(|&t| node.contacts[t].is_some()).collect();
        *count += 1;
        emit(&ContactArrangement { support: s.clone(), contacts });
        return Ok(());
    };
    let v = node.order[pos];
    let w = node.partner(v, s.n);
    // Everything below v is a crossing or a red contact; sweeping those keeps
    // the greedy arrangement, then sweeping v branches.
    let d = node.down_set(pos, s.n);
    node.sweep(&d, s.n);

    // A flip landing in the swept region can never be recolored: prune.
    if !node.swept[w] {
        let mut right = node.clone();
        right.contacts[v] = None;
        right.contacts[w] = Some(Color::Blue);
        descend(s, right, limits, visited, count, emit)?;
    }
    node.contacts[v] = Some(Color::Red);
    descend(s, node, limits, visited, count, emit)
}

pub fn enumerate_collect(s: &SupportNetwork, forced: &BTreeSet<usize>, limits: &Limits) -> Result<Vec<ContactArrangement>> {
    let mut out = Vec::new();
    enumerate(s, forced, limits, &mut |a| out.push(a.clone()))?;
    Ok(out)
}

/// Every valid contact set of the right size containing `forced`, by
/// exhaustive search over subsets. Exponential; an oracle for small supports.
pub fn brute_force(s: &SupportNetwork, forced: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let Some(c) = s.contact_count() else { return Vec::new() };
    let m = s.m();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(
        s: &SupportNetwork,
        start: usize,
        left: usize,
        pick: &mut Vec<usize>,
        forced: &BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if left == 0 {
            let set: BTreeSet<usize> = pick.iter().copied().collect();
            if forced.is_subset(&set) && simulate_rows(s.n, &s.rows, |t| set.contains(&t)).valid {
                out.push(set);
            }
            return;
        }
        for t in start..s.m() {
            if s.m() - t < left {
                break;
            }
            pick.push(t);
            rec(s, t + 1, left - 1, pick, forced, out);
            pick.pop();
        }
    }
    if c <= m {
        rec(s, 0, c, &mut pick, forced, &mut out);
    }
    out
}
