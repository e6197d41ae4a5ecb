//! Simple undirected graphs on at most 64 vertices, stored as one adjacency
//! word per vertex.

mod canonical;
mod format;

pub use canonical::{canonical_form, canonical_labeling, CanonicalForm, MAX_CANONICAL_ORDER};
pub use format::{parse_graph, GraphJson};

use crate::error::{invalid, Error, Result};

/// Largest supported vertex count; one row must fit a `u64`.
pub const MAX_ORDER: usize = 64;

/// A simple graph with vertices `0..n`.
///
/// Rows are symmetric, the diagonal is clear and no bit at position `>= n` is
/// ever set. Every constructor and operation preserves this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

/// Standard graph families accepted by [`named_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    /// `K_{a, n-a}` with the first `a` vertices on one side.
    CompleteBipartite(usize),
    Empty,
}

/// Number of vertex pairs, `n(n-1)/2`.
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{i, j}` in column-major upper-triangle order:
/// `(0,1), (0,2), (1,2), (0,3), ...`. This is also the graph6 bit order.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

#[inline]
fn full_row(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("graph must have at least one vertex");
        }
        if n > MAX_ORDER {
            return Err(Error::SizeLimit {
                what: "vertex count",
                got: n,
                max: MAX_ORDER,
            });
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) out of range for n = {n}"));
            }
            if u == v {
                return invalid(format!("loop at vertex {u}"));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from a pair mask in [`pair_index`] order. Bits beyond
    /// `pair_count(n)` are ignored.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if bit < 64 && (mask >> bit) & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_edge_mask`]; requires `pair_count(n) <= 64`.
    pub fn edge_mask(&self) -> Option<u64> {
        if pair_count(self.n) > 64 {
            return None;
        }
        let mut mask = 0u64;
        for (u, v) in self.edges() {
            mask |= 1 << pair_index(u, v);
        }
        Some(mask)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.rows[u] >> v) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v);
        if present {
            self.rows[u] |= 1 << v;
            self.rows[v] |= 1 << u;
        } else {
            self.rows[u] &= !(1 << v);
            self.rows[v] &= !(1 << u);
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.rows[v];
        (0..self.n).filter(move |&w| (row >> w) & 1 == 1)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let row = self.rows[u];
            (u + 1..self.n)
                .filter(move |&v| (row >> v) & 1 == 1)
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let full = full_row(self.n);
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, &r)| !r & full & !(1u64 << v))
            .collect();
        Graph { n: self.n, rows }
    }

    /// Adds the edge `uv` if absent, removes it if present.
    pub fn toggle_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u == v {
            return invalid(format!("cannot toggle loop at vertex {u}"));
        }
        if u >= self.n || v >= self.n {
            return invalid(format!("vertex out of range for n = {}", self.n));
        }
        let mut g = self.clone();
        g.rows[u] ^= 1 << v;
        g.rows[v] ^= 1 << u;
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        let full = full_row(self.n);
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return invalid("permutation length differs from vertex count");
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || (seen >> p) & 1 == 1 {
                return invalid("not a permutation");
            }
            seen |= 1 << p;
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, {})", self.n, self.to_graph6())
    }
}

/// `CS_{n,ω}`: a clique on vertices `0..ω` joined to an independent set on
/// `ω..n`.
pub fn complete_split(n: usize, omega: usize) -> Result<Graph> {
    if omega == 0 || omega > n {
        return invalid(format!("complete split needs 1 <= omega <= n, got n = {n}, omega = {omega}"));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..omega {
        for v in u + 1..n {
            g.set_edge(u, v, true);
        }
    }
    Ok(g)
}

/// `K_{n-1}` on vertices `0..n-1` plus a pendant vertex `n-1` attached to `0`.
pub fn pendant_clique(n: usize) -> Result<Graph> {
    if n < 3 {
        return invalid(format!("pendant clique needs n >= 3, got {n}"));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n - 1 {
        for v in u + 1..n - 1 {
            g.set_edge(u, v, true);
        }
    }
    g.set_edge(0, n - 1, true);
    Ok(g)
}

pub fn named_graph(kind: Family, n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    match kind {
        Family::Empty => {}
        Family::Complete => {
            g = g.complement();
        }
        Family::Path => {
            for v in 1..n {
                g.set_edge(v - 1, v, true);
            }
        }
        Family::Cycle => {
            if n < 3 {
                return invalid(format!("cycle needs n >= 3, got {n}"));
            }
            for v in 1..n {
                g.set_edge(v - 1, v, true);
            }
            g.set_edge(n - 1, 0, true);
        }
        Family::Star => {
            for v in 1..n {
                g.set_edge(0, v, true);
            }
        }
        Family::CompleteBipartite(a) => {
            if a == 0 || a >= n {
                return invalid(format!("complete bipartite part size must be in [1, {}], got {a}", n - 1));
            }
            for u in 0..a {
                for v in a..n {
                    g.set_edge(u, v, true);
                }
            }
        }
    }
    Ok(g)
}
