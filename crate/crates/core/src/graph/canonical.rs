//! Canonical forms by pruned permutation search.
//!
//! The form is the lexicographically smallest upper-triangle bit string, taken in
//! column-major pair order, over all relabelings that list vertices by
//! non-increasing degree. Restricting to degree-sorted relabelings keeps the
//! minimum an isomorphism invariant while cutting the search space; a
//! branch-and-bound on string prefixes does the rest.

use serde::{Deserialize, Serialize};

use super::{pair_count, Graph};
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANONICAL_ORDER: usize = 10;

/// Isomorphism-class key. `bits` holds `n(n-1)/2` pair bits, first pair in the
/// most significant position, so integer order is lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u64,
}

impl CanonicalForm {
    /// The canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        let total = pair_count(self.n);
        let mut g = Graph::empty(self.n).expect("canonical form has a valid order");
        let mut pos = 0;
        for j in 1..self.n {
            for i in 0..j {
                if (self.bits >> (total - 1 - pos)) & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                pos += 1;
            }
        }
        g
    }

    pub fn to_graph6(&self) -> String {
        self.to_graph().to_graph6()
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(form, _)| form)
}

/// Returns the canonical form and a relabeling `perm` (vertex `v` goes to
/// `perm[v]`) with `g.permuted(&perm) == form.to_graph()`.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.n();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::SizeLimit {
            what: "canonical form order",
            got: n,
            max: MAX_CANONICAL_ORDER,
        });
    }
    let degrees = g.degrees();
    let mut slot_degree = degrees.clone();
    slot_degree.sort_unstable_by(|a, b| b.cmp(a));

    let mut search = Search {
        g,
        degrees: &degrees,
        slot_degree: &slot_degree,
        total: pair_count(n),
        order: Vec::with_capacity(n),
        best: None,
    };
    search.extend(0, 0);
    let (bits, order) = search.best.expect("degree-sorted relabeling always exists");

    let mut perm = vec![0; n];
    for (slot, &v) in order.iter().enumerate() {
        perm[v] = slot;
    }
    Ok((CanonicalForm { n, bits }, perm))
}

struct Search<'a> {
    g: &'a Graph,
    degrees: &'a [usize],
    slot_degree: &'a [usize],
    total: usize,
    /// `order[slot]` is the vertex placed at `slot`.
    order: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn extend(&mut self, code: u64, used: u64) {
        let k = self.order.len();
        let n = self.g.n();
        if k == n {
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, self.order.clone()));
            }
            return;
        }
        let bits_after = k * (k + 1) / 2;
        for v in 0..n {
            if (used >> v) & 1 == 1 || self.degrees[v] != self.slot_degree[k] {
                continue;
            }
            let row = self.g.row(v);
            let mut column = 0u64;
            for &w in &self.order {
                column = (column << 1) | ((row >> w) & 1);
            }
            let next = (code << k) | column;
            if let Some((best, _)) = &self.best {
                if next > best >> (self.total - bits_after) {
                    continue;
                }
            }
            self.order.push(v);
            self.extend(next, used | (1 << v));
            self.order.pop();
        }
    }
}
