//! Exhaustive ground truth: backtracking subgraph search, arrowing checks by
//! enumerating every graph on `N` vertices, and the extremal lower-bound
//! construction.

use std::sync::atomic::{AtomicU64, Ordering};

use serde_json::json;
use thiserror::Error;

use crate::embedding::Embedding;
use crate::format::to_graph6;
use crate::graph::Graph;
use crate::tree::Tree;
use crate::vertex_set::VertexSet;

/// Default bound on `C(N, 2)`, i.e. `N <= 8`.
pub const DEFAULT_ENUM_CAP: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumerating order {order} needs 2^{pairs} masks, above the cap of 2^{cap}; raise the cap to proceed")]
    CapExceeded {
        order: usize,
        pairs: usize,
        cap: usize,
    },
    #[error("no order up to {n_max} arrows")]
    NotFound { n_max: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// An `m`-cycle of `g`, listed from its smallest vertex, if one exists.
pub fn contains_cycle_of_length(g: &Graph, m: usize) -> Option<Vec<usize>> {
    let order = g.order();
    if m < 3 || m > order || (m % 2 == 1 && g.is_bipartite()) {
        return None;
    }
    for start in 0..order {
        if order - start < m {
            break;
        }
        let allowed = VertexSet::from_vertices(order, start..order).expect("range is in bounds");
        let dist = distances_within(g, start, &allowed);
        let mut path = vec![start];
        let mut used = VertexSet::new(order);
        used.insert(start);
        if extend_cycle(g, m, &allowed, &dist, &mut path, &mut used) {
            return Some(path);
        }
    }
    None
}

fn distances_within(g: &Graph, source: usize, allowed: &VertexSet) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    dist[source] = 0;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors_in(x, allowed).iter() {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

fn extend_cycle(
    g: &Graph,
    m: usize,
    allowed: &VertexSet,
    dist: &[usize],
    path: &mut Vec<usize>,
    used: &mut VertexSet,
) -> bool {
    let last = *path.last().expect("path starts nonempty");
    if path.len() == m {
        return g.has_edge(last, path[0]);
    }
    // After adding the next vertex, `m - path.len()` edges remain to close.
    let budget = m - path.len();
    let candidates = g.neighbors_in(last, allowed).difference(used);
    for y in candidates.iter() {
        if dist[y] > budget {
            continue;
        }
        // Fix the orientation: the second vertex is smaller than the last.
        if path.len() == m - 1 && y < path[1] {
            continue;
        }
        path.push(y);
        used.insert(y);
        if extend_cycle(g, m, allowed, dist, path, used) {
            return true;
        }
        path.pop();
        used.remove(y);
    }
    false
}

/// An embedding of `t` into `g` (tree edges onto edges of `g`), if one exists.
pub fn contains_tree(g: &Graph, t: &Tree) -> Option<Embedding> {
    let n = t.order();
    if n > g.order() || !g.components().iter().any(|c| c.len() >= n) {
        return None;
    }
    // Degree-sequence obstruction: the k-th largest degrees must dominate.
    let mut host_deg: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut tree_deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    host_deg.sort_unstable_by(|a, b| b.cmp(a));
    tree_deg.sort_unstable_by(|a, b| b.cmp(a));
    if tree_deg.iter().zip(&host_deg).any(|(a, b)| a > b) {
        return None;
    }

    let root = (0..n)
        .max_by_key(|&v| (t.degree(v), std::cmp::Reverse(v)))
        .expect("tree is nonempty");
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in t.neighbors(x).iter().rev() {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }

    let mut emb = Embedding::new(n);
    let mut used = VertexSet::new(g.order());
    let mut search = TreeSearch {
        g,
        t,
        order: &order,
        parent: &parent,
    };
    if search.place(0, &mut emb, &mut used) {
        Some(emb)
    } else {
        None
    }
}

struct TreeSearch<'a> {
    g: &'a Graph,
    t: &'a Tree,
    order: &'a [usize],
    parent: &'a [usize],
}

impl TreeSearch<'_> {
    fn place(&mut self, i: usize, emb: &mut Embedding, used: &mut VertexSet) -> bool {
        if i == self.order.len() {
            return true;
        }
        let x = self.order[i];
        let candidates = match self.parent[x] {
            usize::MAX => self.g.vertices(),
            p => self
                .g
                .neighbors(emb.get(p).expect("parent placed first"))
                .difference(used),
        };
        let need = self.t.degree(x);
        for h in candidates.iter() {
            if self.g.degree(h) < need {
                continue;
            }
            emb.set(x, h);
            used.insert(h);
            if self.place(i + 1, emb, used) {
                return true;
            }
            used.remove(h);
        }
        emb.unset(x);
        false
    }
}

/// Outcome of checking every graph on `order` vertices.
#[derive(Clone, Debug)]
pub struct ArrowingReport {
    pub order: usize,
    pub tree: Tree,
    pub cycle_length: usize,
    pub arrows: bool,
    /// The first graph (by adjacency mask) with no `C_m` whose complement
    /// has no copy of the tree.
    pub counterexample: Option<Graph>,
}

impl ArrowingReport {
    pub fn to_json(&self) -> String {
        let edges: Vec<[usize; 2]> = self.tree.edges().into_iter().map(|(a, b)| [a, b]).collect();
        json!({
            "order": self.order,
            "tree_order": self.tree.order(),
            "tree_edges": edges,
            "cycle_length": self.cycle_length,
            "arrows": self.arrows,
            "counterexample": self.counterexample.as_ref().map(to_graph6),
        })
        .to_string()
    }
}

/// Graph on `order` vertices whose edges are the set bits of `mask`, pairs
/// ordered `(0,1), (0,2), ..., (1,2), ...`.
pub fn graph_from_mask(order: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(order);
    let mut bit = 0;
    for u in 0..order {
        for v in u + 1..order {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

fn is_counterexample(g: &Graph, t: &Tree, m: usize) -> bool {
    contains_cycle_of_length(g, m).is_none() && contains_tree(&g.complement(), t).is_none()
}

fn pair_count(order: usize, cap: usize) -> Result<usize, OracleError> {
    let pairs = order * order.saturating_sub(1) / 2;
    if pairs > cap || pairs >= 64 {
        return Err(OracleError::CapExceeded { order, pairs, cap });
    }
    Ok(pairs)
}

/// Whether every graph on `order` vertices contains `C_m` or has `t` in its
/// complement.
pub fn arrows(order: usize, t: &Tree, m: usize, cap: usize) -> Result<ArrowingReport, OracleError> {
    arrows_parallel(order, t, m, cap, 1)
}

/// [`arrows`] over `jobs` contiguous mask ranges. The reported counterexample
/// is the one with the smallest mask regardless of which range finishes first.
pub fn arrows_parallel(
    order: usize,
    t: &Tree,
    m: usize,
    cap: usize,
    jobs: usize,
) -> Result<ArrowingReport, OracleError> {
    if m < 3 {
        return Err(OracleError::InvalidInput(format!("cycle length {m} < 3")));
    }
    let pairs = pair_count(order, cap)?;
    let total = 1u64 << pairs;
    let jobs = (jobs.max(1) as u64).min(total);
    let best = AtomicU64::new(u64::MAX);
    let scan = |lo: u64, hi: u64| {
        for mask in lo..hi {
            if mask >= best.load(Ordering::Relaxed) {
                return;
            }
            if is_counterexample(&graph_from_mask(order, mask), t, m) {
                best.fetch_min(mask, Ordering::Relaxed);
                return;
            }
        }
    };
    let chunk = total.div_ceil(jobs);
    if jobs == 1 {
        scan(0, total);
    } else {
        std::thread::scope(|s| {
            for j in 0..jobs {
                let (lo, hi) = (j * chunk, ((j + 1) * chunk).min(total));
                let scan = &scan;
                s.spawn(move || scan(lo, hi));
            }
        });
    }
    let found = best.into_inner();
    let counterexample = (found != u64::MAX).then(|| graph_from_mask(order, found));
    Ok(ArrowingReport {
        order,
        tree: t.clone(),
        cycle_length: m,
        arrows: counterexample.is_none(),
        counterexample,
    })
}

/// The least `N <= n_max` such that every graph on `N` vertices contains
/// `C_m` or has `t` in its complement.
pub fn ramsey_number_brute(
    t: &Tree,
    m: usize,
    n_max: usize,
    cap: usize,
) -> Result<usize, OracleError> {
    for order in 1..=n_max {
        if arrows(order, t, m, cap)?.arrows {
            return Ok(order);
        }
    }
    Err(OracleError::NotFound { n_max })
}

/// `K_{n-1,n-1}` with sides `0..n-1` and `n-1..2n-2`.
pub fn extremal_bipartite(n: usize) -> Result<Graph, OracleError> {
    if n < 2 {
        return Err(OracleError::InvalidInput(format!(
            "extremal graph needs n >= 2, got {n}"
        )));
    }
    Ok(Graph::complete_bipartite(n - 1, n - 1))
}

/// True iff `g` has no `C_m` and its complement has no copy of `t`.
pub fn check_lower_bound_witness(g: &Graph, t: &Tree, m: usize) -> bool {
    is_counterexample(g, t, m)
}
