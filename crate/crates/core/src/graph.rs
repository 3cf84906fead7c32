//! Dense simple graphs on the vertex set `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex so that neighbourhood
//! intersections (codegrees, triangles through an edge) reduce to word-wise
//! `AND` plus `popcount`. Degrees and the edge count are cached and kept
//! consistent by every mutation.

use rand::Rng;

use crate::error::{Error, Result};

/// Number of unordered pairs of `n` vertices.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A canonical unordered vertex pair `u < v` together with its linear index.
///
/// Pairs are numbered lexicographically: `(0,1), (0,2), …, (0,n-1), (1,2), …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    u: usize,
    v: usize,
    index: usize,
}

impl EdgeId {
    /// Canonical edge for the unordered pair `{u, v}`; the endpoints may be given in either order.
    pub fn new(u: usize, v: usize, n: usize) -> Result<Self> {
        if u == v || u >= n || v >= n {
            return Err(Error::InvalidEdge { u, v, n });
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        Ok(EdgeId { u, v, index: Self::index_unchecked(u, v, n) })
    }

    /// Inverse of [`EdgeId::index`].
    pub fn from_index(index: usize, n: usize) -> Result<Self> {
        if index >= pair_count(n) {
            return Err(Error::InvalidEdgeIndex { index, n });
        }
        Ok(Self::from_index_unchecked(index, n))
    }

    #[inline]
    fn index_unchecked(u: usize, v: usize, n: usize) -> usize {
        // Pairs with first endpoint < u come first: sum_{i<u} (n-1-i).
        u * (2 * n - u - 1) / 2 + (v - u - 1)
    }

    /// `u < v < n` is the caller's responsibility.
    #[inline]
    pub(crate) fn from_pair_unchecked(u: usize, v: usize, n: usize) -> Self {
        EdgeId { u, v, index: Self::index_unchecked(u, v, n) }
    }

    #[inline]
    pub(crate) fn from_index_unchecked(index: usize, n: usize) -> Self {
        // Invert the row offset with a float estimate, then correct by at most a step or two.
        let nf = n as f64;
        let disc = (2.0 * nf - 1.0) * (2.0 * nf - 1.0) - 8.0 * index as f64;
        let mut u = ((2.0 * nf - 1.0 - disc.max(0.0).sqrt()) / 2.0).floor() as usize;
        u = u.min(n - 2);
        while u > 0 && Self::index_unchecked(u, u + 1, n) > index {
            u -= 1;
        }
        while u + 2 < n && Self::index_unchecked(u + 1, u + 2, n) <= index {
            u += 1;
        }
        let v = index - Self::index_unchecked(u, u + 1, n) + u + 1;
        EdgeId { u, v, index }
    }

    #[inline]
    pub fn u(&self) -> usize {
        self.u
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    #[inline]
    pub fn index(&self) -> usize {
        self.index
    }

    /// True when the two edges have an endpoint in common.
    pub fn shares_vertex(&self, other: &EdgeId) -> bool {
        self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v
    }
}

/// All edges of the complete graph on `n` vertices, in index order.
pub fn all_edges(n: usize) -> impl Iterator<Item = EdgeId> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| EdgeId { u, v, index: EdgeId::index_unchecked(u, v, n) }))
}

/// Mutable simple graph with cached degrees and edge count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphState {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    degrees: Vec<u32>,
    edge_count: usize,
}

impl GraphState {
    /// Empty graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a graph needs at least one vertex".into()));
        }
        let words = n.div_ceil(64);
        Ok(GraphState { n, words, rows: vec![0; n * words], degrees: vec![0; n], edge_count: 0 })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for e in all_edges(n) {
            g.set(e, true);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            let e = EdgeId::new(u, v, n)?;
            g.set(e, true);
        }
        Ok(g)
    }

    /// Graph whose edge `k` is present iff bit `k` of `code` is set (edges in index order).
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        let m = pair_count(n);
        if m > 64 || (m < 64 && code >> m != 0) {
            return Err(Error::Domain(format!("state code {code:#x} does not fit {m} edges")));
        }
        let mut g = Self::empty(n)?;
        for e in all_edges(n) {
            if code >> e.index() & 1 == 1 {
                g.set(e, true);
            }
        }
        Ok(g)
    }

    /// Inverse of [`GraphState::from_code`]; `None` when the graph has more than 64 potential edges.
    pub fn code(&self) -> Option<u64> {
        if pair_count(self.n) > 64 {
            return None;
        }
        Some(self.edges().fold(0u64, |acc, e| acc | 1 << e.index()))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v] as usize
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Canonical edge for `{u, v}` in this graph's vertex range.
    pub fn edge(&self, u: usize, v: usize) -> Result<EdgeId> {
        EdgeId::new(u, v, self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.has_edge(e.u, e.v)
    }

    /// Bitset row of `v`'s neighbours.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    /// Sets edge `e` to `value`; returns whether the graph changed.
    ///
    /// `e` must have been built for a graph of this size.
    #[inline]
    pub fn set(&mut self, e: EdgeId, value: bool) -> bool {
        debug_assert!(e.v < self.n);
        if self.contains(e) == value {
            return false;
        }
        let (u, v) = e.endpoints();
        let w = self.words;
        self.rows[u * w + v / 64] ^= 1 << (v % 64);
        self.rows[v * w + u / 64] ^= 1 << (u % 64);
        if value {
            self.degrees[u] += 1;
            self.degrees[v] += 1;
            self.edge_count += 1;
        } else {
            self.degrees[u] -= 1;
            self.degrees[v] -= 1;
            self.edge_count -= 1;
        }
        true
    }

    /// Checked variant of [`GraphState::set`] that validates the edge against this graph.
    pub fn mutate_edge(&mut self, e: EdgeId, value: bool) -> Result<bool> {
        if e.v >= self.n || EdgeId::index_unchecked(e.u, e.v, self.n) != e.index {
            return Err(Error::InvalidEdge { u: e.u, v: e.v, n: self.n });
        }
        Ok(self.set(e, value))
    }

    /// Copy of the graph with `e` forced to `value`.
    pub fn with_edge(&self, e: EdgeId, value: bool) -> Self {
        let mut g = self.clone();
        g.set(e, value);
        g
    }

    /// Number of vertices adjacent to both `u` and `v` (never counts `u` or `v` themselves).
    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Number of edges among the common neighbours of `u` and `v`.
    #[inline]
    pub fn edges_among_common(&self, u: usize, v: usize) -> usize {
        let (ru, rv) = (self.row(u), self.row(v));
        let mut twice = 0;
        for (i, (a, b)) in ru.iter().zip(rv).enumerate() {
            let mut word = a & b;
            while word != 0 {
                let w = i * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                twice += self.row(w).iter().zip(ru).zip(rv).map(|((r, a), b)| (r & a & b).count_ones() as usize).sum::<usize>();
            }
        }
        twice / 2
    }

    /// Number of edges whose endpoints both lie in the bitset `set`.
    pub fn edges_within(&self, set: &[u64]) -> usize {
        let twice: usize = bits(set)
            .map(|w| self.row(w).iter().zip(set).map(|(a, b)| (a & b).count_ones() as usize).sum::<usize>())
            .sum();
        twice / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.n).flat_map(move |u| {
            bits(self.row(u)).filter(move |&v| v > u).map(move |v| EdgeId { u, v, index: EdgeId::index_unchecked(u, v, self.n) })
        })
    }

    /// Number of vertex pairs on which the two graphs disagree.
    pub fn hamming_distance(&self, other: &GraphState) -> Result<usize> {
        self.check_same_size(other)?;
        let twice: usize = self.rows.iter().zip(&other.rows).map(|(a, b)| (a ^ b).count_ones() as usize).sum();
        Ok(twice / 2)
    }

    /// Edgewise order `self ⪯ other`.
    pub fn is_subgraph_of(&self, other: &GraphState) -> Result<bool> {
        self.check_same_size(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0))
    }

    pub(crate) fn check_same_size(&self, other: &GraphState) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Recomputes degrees and the edge count from the adjacency rows and compares with the caches.
    pub fn caches_consistent(&self) -> bool {
        let mut total = 0usize;
        for v in 0..self.n {
            if self.has_edge(v, v) {
                return false;
            }
            let d: usize = self.row(v).iter().map(|w| w.count_ones() as usize).sum();
            if d != self.degrees[v] as usize {
                return false;
            }
            if self.neighbors(v).any(|u| !self.has_edge(u, v)) {
                return false;
            }
            total += d;
        }
        total == 2 * self.edge_count
    }
}

/// Erdős–Rényi graph: every pair is an edge independently with probability `p`.
pub fn sample_er<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<GraphState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability { what: "edge probability", value: p });
    }
    let mut g = GraphState::empty(n)?;
    for e in all_edges(n) {
        if rng.random::<f64>() < p {
            g.set(e, true);
        }
    }
    Ok(g)
}

/// Indices of the set bits of a bitset.
pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}
