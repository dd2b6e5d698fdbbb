//! The dual arrangement of the convex n-gon and its kernels.

use std::collections::BTreeSet;

use super::{ContactArrangement, SupportNetwork};
use crate::convex::Edge;
use crate::error::{invalid, param, Result};
use crate::ktri::{check_params, KTriangulation};

/// A convex support with the primal edge of every event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSupport {
    pub n: usize,
    pub k: usize,
    pub support: SupportNetwork,
    pub edges: Vec<Edge>,
}

impl ConvexSupport {
    pub fn event_of(&self, e: Edge) -> Option<usize> {
        self.edges.iter().position(|&x| x == e)
    }

    /// Rebuilds the arrangement with no contacts.
    pub fn arrangement(&self) -> ContactArrangement {
        ContactArrangement { support: self.support.clone(), contacts: BTreeSet::new() }
    }
}

/// The arrangement dual to the vertices of the convex n-gon.
///
/// Point `i` sits at angle `-2πi/n`, so labels run clockwise in the dual
/// picture. Sweeping the direction angle from just below `π/n` through `π`,
/// the chord with endpoints at positions `a, b` is crossed when the direction
/// reaches `π(a+b)/n`; parallel chords occupy disjoint row pairs and are
/// listed top to bottom. The cut is then moved so that the hull vertex dual
/// to `[0,1]` is the unique minimal event. With this cut the greedy
/// k-pseudotriangulation is the dual of the minimal k-triangulation.
pub fn convex_support(n: usize) -> Result<ConvexSupport> {
    if n < 2 {
        return param("need at least two points");
    }
    let label = |i: usize| n - 1 - i;
    let mut rows = Vec::new();
    let mut edges = Vec::new();
    for s in 1..=n {
        // distance of position i to the direction (2s-1)π/(2n), in units of π/(2n)
        let c4 = (2 * s - 1) as i64;
        let four_n = 4 * n as i64;
        let dist = |i: usize| {
            let x = (4 * i as i64 - c4).rem_euclid(four_n);
            x.min(four_n - x)
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| dist(i));
        let mut pos = vec![0; n];
        for (r, &i) in order.iter().enumerate() {
            pos[i] = r;
        }
        let mut class: Vec<(usize, Edge)> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if (a + b) % n == s % n {
                    if pos[a].abs_diff(pos[b]) != 1 {
                        return invalid("parallel chord endpoints are not adjacent in the sweep");
                    }
                    class.push((pos[a].min(pos[b]) + 1, Edge::new(label(a), label(b))));
                }
            }
        }
        class.sort();
        for (r, e) in class {
            rows.push(r);
            edges.push(e);
        }
    }
    let raw = SupportNetwork { n, rows };
    let z = edges.iter().position(|&e| e == Edge::new(0, 1)).expect("hull edge is an event");
    let (support, ids) = raw.cut_at(z)?;
    let edges = ids.iter().map(|&i| edges[i]).collect();
    Ok(ConvexSupport { n, k: 0, support, edges })
}

/// The convex support minus its first `k` levels: one event per k-relevant edge.
pub fn convex_kernel(n: usize, k: usize) -> Result<ConvexSupport> {
    check_params(n, k)?;
    let full = convex_support(n)?;
    let mut rows = Vec::new();
    let mut edges = Vec::new();
    for (&p, &e) in full.support.rows.iter().zip(&full.edges) {
        if p.min(n - p) > k {
            rows.push(p - k);
            edges.push(e);
        }
    }
    Ok(ConvexSupport { n, k, support: SupportNetwork { n: n - 2 * k, rows }, edges })
}

/// The dual arrangement of a k-triangulation: contacts are its relevant edges.
pub fn dualize(t: &KTriangulation) -> Result<(ConvexSupport, ContactArrangement)> {
    let cs = convex_kernel(t.n(), t.k())?;
    let contacts = t.relevant().iter().map(|&e| cs.event_of(e).expect("relevant edge is an event")).collect();
    let a = ContactArrangement::new(cs.support.clone(), contacts)?;
    Ok((cs, a))
}

pub fn primalize(cs: &ConvexSupport, a: &ContactArrangement) -> Result<KTriangulation> {
    if a.support != cs.support {
        return param("arrangement is not on this convex kernel");
    }
    let edges = a.contacts.iter().map(|&t| cs.edges[t]).collect();
    KTriangulation::new(cs.n, cs.k, edges)
}
