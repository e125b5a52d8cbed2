//! Trees, sub-forests and Prüfer decoding.

use std::collections::BTreeSet;

use crate::error::GraphError;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A tree on vertices `0..n`, `n >= 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    graph: Graph,
    adj: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tree")
            .field("order", &self.order())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Tree {
    /// Validates that `graph` is connected with `order - 1` edges.
    pub fn from_graph(graph: Graph) -> Result<Self, GraphError> {
        let n = graph.order();
        if n == 0 {
            return Err(GraphError::NotATree("order 0".into()));
        }
        let m = graph.edge_count();
        if m != n - 1 {
            return Err(GraphError::NotATree(format!("{m} edges on {n} vertices")));
        }
        if graph.components().len() != 1 {
            return Err(GraphError::NotATree("disconnected".into()));
        }
        let adj = (0..n).map(|v| graph.neighbors(v).to_vec()).collect();
        Ok(Self { graph, adj })
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_graph(Graph::from_edges(order, edges)?)
    }

    /// `P_n` laid out as `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is a tree")
    }

    /// `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (0, v))).expect("star is a tree")
    }

    /// A spine `0 - 1 - ... - (s-1)` with `s = ceil(n/2)` and the remaining
    /// vertices hung as leaves on the spine, round-robin.
    pub fn caterpillar(n: usize) -> Self {
        let spine = n.div_ceil(2);
        let edges = (1..spine)
            .map(|v| (v - 1, v))
            .chain((spine..n).map(|v| ((v - spine) % spine, v)));
        Self::from_edges(n, edges).expect("caterpillar is a tree")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Proper 2-colouring `(A, B)` by parity of the distance from vertex 0,
    /// swapped so that `|A| >= |B|`.
    pub fn bipartition(&self) -> (VertexSet, VertexSet) {
        let n = self.order();
        let mut a = VertexSet::new(n);
        let mut b = VertexSet::new(n);
        for (v, parity) in self.bfs_depths(0).into_iter().enumerate() {
            if parity % 2 == 0 {
                a.insert(v);
            } else {
                b.insert(v);
            }
        }
        if a.len() < b.len() {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// Depth of every vertex in a BFS from `root`.
    pub fn bfs_depths(&self, root: usize) -> Vec<usize> {
        let mut depth = vec![usize::MAX; self.order()];
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        depth
    }

    /// The sub-forest induced on `members`, keeping original indices.
    pub fn subforest(&self, members: &VertexSet) -> Forest {
        let adj = (0..self.order())
            .map(|v| {
                if members.contains(v) {
                    self.adj[v]
                        .iter()
                        .copied()
                        .filter(|&w| members.contains(w))
                        .collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Forest {
            adj,
            members: members.clone(),
        }
    }

    /// The whole tree viewed as a one-component forest.
    pub fn as_forest(&self) -> Forest {
        Forest {
            adj: self.adj.clone(),
            members: self.vertices(),
        }
    }
}

/// Decodes a Prüfer sequence of length `n - 2` into the unique labelled
/// tree on `0..n`.
pub fn tree_from_prufer(seq: &[usize], n: usize) -> Result<Tree, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidPrufer(format!("order {n} < 2")));
    }
    if seq.len() != n - 2 {
        return Err(GraphError::InvalidPrufer(format!(
            "length {} != {}",
            seq.len(),
            n - 2
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(GraphError::InvalidPrufer(format!("entry {bad} >= {n}")));
    }
    let mut remaining = vec![0usize; n];
    for &x in seq {
        remaining[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| remaining[v] == 0).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, x));
        remaining[x] -= 1;
        if remaining[x] == 0 {
            leaves.insert(x);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let v = leaves.pop_first().expect("two leaves remain");
    edges.push((u, v));
    Tree::from_edges(n, edges)
}

/// A forest over a universe `0..capacity`; only `members` are vertices.
///
/// Sub-forests of a tree keep the tree's vertex indices so embeddings of the
/// pieces can be merged without reindexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    adj: Vec<Vec<usize>>,
    members: VertexSet,
}

impl Forest {
    /// A forest on all of `0..order`; rejects cycles.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let g = Graph::from_edges(order, edges)?;
        let comps = g.components().len();
        if g.edge_count() + comps != order {
            return Err(GraphError::NotAForest("contains a cycle".into()));
        }
        let adj = (0..order).map(|v| g.neighbors(v).to_vec()).collect();
        Ok(Self {
            adj,
            members: VertexSet::full(order),
        })
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Size of the index universe.
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.members
            .iter()
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    /// Components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.capacity());
        let mut out = Vec::new();
        for s in self.members.iter() {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if seen.insert(w) {
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}
