//! Dense undirected simple graphs stored as a symmetric bit matrix.

use std::fmt;

use crate::error::GraphError;
use crate::vertex_set::{intersection_count, words_for, VertexSet};

/// An undirected simple graph on vertices `0..order`.
///
/// Row `v` of the matrix is the neighbor bitset of `v`, so set-restricted
/// degrees and common neighborhoods reduce to word-wise AND + popcount.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph of the given order.
    pub fn empty(order: usize) -> Self {
        let stride = words_for(order);
        Self {
            order,
            stride,
            bits: vec![0; stride * order],
        }
    }

    pub fn complete(order: usize) -> Self {
        Self::empty(order).complement()
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(order);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !g.add_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    /// The cycle `0 - 1 - ... - (order-1) - 0`. Requires `order >= 3`.
    pub fn cycle(order: usize) -> Self {
        assert!(order >= 3, "a cycle needs at least 3 vertices");
        let mut g = Self::empty(order);
        for v in 0..order {
            g.add_edge(v, (v + 1) % order);
        }
        g
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.order {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Adds `uv`; returns `false` if it was already present. Panics on a loop.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at {u}");
        let had = self.has_edge(u, v);
        self.set(u, v, true);
        self.set(v, u, true);
        !had
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.has_edge(u, v);
        self.set(u, v, false);
        self.set(v, u, false);
        had
    }

    /// Flips the pair `uv` (`u != v`).
    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            self.remove_edge(u, v);
        } else {
            self.add_edge(u, v);
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize, on: bool) {
        let word = &mut self.bits[u * self.stride + v / 64];
        if on {
            *word |= 1 << (v % 64);
        } else {
            *word &= !(1 << (v % 64));
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.order, self.row(v).to_vec())
    }

    /// `d_X(v)`: the number of neighbors of `v` inside `x`.
    pub fn degree_in(&self, v: usize, x: &VertexSet) -> usize {
        debug_assert_eq!(x.capacity(), self.order);
        intersection_count(self.row(v), x.words())
    }

    /// `N_X(v)`: the neighbors of `v` inside `x`.
    pub fn neighbors_in(&self, v: usize, x: &VertexSet) -> VertexSet {
        debug_assert_eq!(x.capacity(), self.order);
        let words = self
            .row(v)
            .iter()
            .zip(x.words())
            .map(|(a, b)| a & b)
            .collect();
        VertexSet::from_words(self.order, words)
    }

    /// Number of common neighbors of `u` and `v` inside `x`.
    pub fn common_degree_in(&self, u: usize, v: usize, x: &VertexSet) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .zip(x.words())
            .map(|((a, b), c)| (a & b & c).count_ones() as usize)
            .sum()
    }

    /// Lowest neighbor of `v` inside `x`.
    pub fn first_neighbor_in(&self, v: usize, x: &VertexSet) -> Option<usize> {
        self.row(v)
            .iter()
            .zip(x.words())
            .enumerate()
            .find(|(_, (a, b))| *a & *b != 0)
            .map(|(i, (a, b))| i * 64 + (a & b).trailing_zeros() as usize)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edge_count_within(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.degree_in(v, s)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
                .collect::<Vec<_>>()
        })
    }

    /// `δ(G)`; `None` for the order-0 graph.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.order).map(|v| self.degree(v)).min()
    }

    /// `Δ(G)`; `None` for the order-0 graph.
    pub fn max_degree(&self) -> Option<usize> {
        (0..self.order).map(|v| self.degree(v)).max()
    }

    /// Minimum degree of the induced subgraph `G[s]`.
    pub fn min_degree_within(&self, s: &VertexSet) -> Option<usize> {
        s.iter().map(|v| self.degree_in(v, s)).min()
    }

    /// Maximum degree of the induced subgraph `G[s]`.
    pub fn max_degree_within(&self, s: &VertexSet) -> Option<usize> {
        s.iter().map(|v| self.degree_in(v, s)).max()
    }

    /// The complement graph, materialized.
    pub fn complement(&self) -> Graph {
        let mut out = Graph {
            order: self.order,
            stride: self.stride,
            bits: self.bits.iter().map(|w| !w).collect(),
        };
        let rem = self.order % 64;
        for v in 0..self.order {
            let row = &mut out.bits[v * self.stride..(v + 1) * self.stride];
            if rem != 0 {
                row[self.stride - 1] &= (1u64 << rem) - 1;
            }
            row[v / 64] &= !(1 << (v % 64));
        }
        out
    }

    /// `G[s]` reindexed to `0..|s|`, together with the back-map from new
    /// indices to the original vertices (ascending).
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if s.capacity() > self.order {
            if let Some(v) = s.iter().find(|&v| v >= self.order) {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    order: self.order,
                });
            }
        }
        let back: Vec<usize> = s.iter().collect();
        let mut g = Graph::empty(back.len());
        for (i, &u) in back.iter().enumerate() {
            for (j, &v) in back.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, back))
    }

    /// Induced subgraph on `0..k` (`k` clamped to the order).
    pub fn prefix(&self, k: usize) -> Graph {
        let k = k.min(self.order);
        let (g, _) = self
            .induced_subgraph(&VertexSet::full(k).resized(self.order))
            .expect("prefix is in range");
        g
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.order);
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u).difference(&seen).iter() {
                    seen.insert(w);
                    comp.push(w);
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Two-colouring if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.order];
        for s in 0..self.order {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u).iter() {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }
}

impl VertexSet {
    /// Same members, new capacity. Members must fit.
    pub(crate) fn resized(&self, capacity: usize) -> VertexSet {
        let mut s = VertexSet::new(capacity);
        for v in self.iter() {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(order={}, edges=", self.order)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
