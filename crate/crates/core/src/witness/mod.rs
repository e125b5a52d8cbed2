//! The witness engine: for a graph `G` on `2n - 1` vertices, an `n`-vertex
//! tree `T` and odd `m`, produce an `m`-cycle in `G` or a copy of `T` in the
//! complement of `G`.
//!
//! The pipeline follows a fixed sequence of steps. Each step either emits a
//! witness or narrows a [`SearchContext`] until the graph is forced into a
//! near-`K_{n-1,n-1}` shape, where the tree embeds along its bipartition. All
//! thresholds are decided exactly (see [`threshold`]).

mod claims;
pub mod threshold;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::Embedding;
use crate::embeddings::embed_rooted_forest;
use crate::graph::Graph;
use crate::tree::Tree;
use crate::vertex_set::VertexSet;

pub use claims::{
    attachment_check_or_cycle, bipartite_check_or_cycle, cross_tree_embedding,
    cycle_from_dense_neighborhood, final_bipartite_embedding, find_witness_triangle,
    high_degree_vertex_or_tree, sparse_subset_or_cycle, Attachment, HighDegree, Side,
    SparseOutcome,
};
pub use threshold::{Relation, ThresholdCheck, ThresholdLog};

/// An `m`-cycle of `G` or an embedding of `T` into the complement of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessResult {
    /// Vertices in cycle order; consecutive (and last-first) pairs are edges.
    Cycle(Vec<usize>),
    /// Total injective map from tree vertices to vertices of `G`, with every
    /// tree edge landing on a non-edge of `G`.
    Tree(Embedding),
}

impl WitnessResult {
    pub fn is_cycle(&self) -> bool {
        matches!(self, WitnessResult::Cycle(_))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&WitnessDoc::from(self)).expect("witness serializes")
    }

    /// Parses the witness document; `tree_order` sizes the embedding.
    pub fn from_json(text: &str, tree_order: usize) -> Result<Self, String> {
        let doc: WitnessDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
        match doc {
            WitnessDoc::Cycle { vertices } => Ok(WitnessResult::Cycle(vertices)),
            WitnessDoc::TreeEmbedding { map } => {
                let mut emb = Embedding::new(tree_order);
                for (s, h) in map {
                    if s >= tree_order {
                        return Err(format!(
                            "tree vertex {s} out of range for order {tree_order}"
                        ));
                    }
                    if emb.is_mapped(s) {
                        return Err(format!("tree vertex {s} mapped twice"));
                    }
                    emb.set(s, h);
                }
                Ok(WitnessResult::Tree(emb))
            }
        }
    }
}

/// Wire form: `{"type":"cycle","vertices":[...]}` or
/// `{"type":"tree_embedding","map":[[tree_vertex,host_vertex],...]}`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum WitnessDoc {
    Cycle { vertices: Vec<usize> },
    TreeEmbedding { map: Vec<(usize, usize)> },
}

impl From<&WitnessResult> for WitnessDoc {
    fn from(w: &WitnessResult) -> Self {
        match w {
            WitnessResult::Cycle(v) => WitnessDoc::Cycle {
                vertices: v.clone(),
            },
            WitnessResult::Tree(e) => WitnessDoc::TreeEmbedding {
                map: e.pairs().collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A threshold the construction relies on failed. Only possible below
    /// `n >= 50m`.
    #[error("bounds not met at {step}: {detail}")]
    BoundsNotMet { step: &'static str, detail: String },
    #[error("internal defect: {0}")]
    Defect(String),
}

impl WitnessError {
    pub(crate) fn bounds(step: &'static str, detail: impl Into<String>) -> Self {
        WitnessError::BoundsNotMet {
            step,
            detail: detail.into(),
        }
    }
}

/// Whether to insist on `n >= 50m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    Strict,
    #[default]
    Lenient,
}

/// A graph together with its materialized complement.
#[derive(Clone, Debug)]
pub struct GraphPair {
    pub g: Graph,
    pub gc: Graph,
}

impl GraphPair {
    pub fn new(g: Graph) -> Self {
        let gc = g.complement();
        Self { g, gc }
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }
}

/// A sparse subset of a neighborhood: `set ⊆ N_X(center)` with every vertex
/// of `set` having fewer than `√dsq` neighbors inside `set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSide {
    pub center: usize,
    /// `d_X(center)`, the size of the neighborhood the set was cut from.
    pub source_degree: usize,
    pub set: VertexSet,
    /// `δ(Ḡ[set])`.
    pub co_degree: usize,
    /// The squared peeling threshold `D²`.
    pub dsq: u64,
}

/// Pipeline state once both sparse sides are known.
#[derive(Clone, Debug)]
pub struct SearchContext {
    pub n: usize,
    pub m: usize,
    /// `(m - 1) / 2`
    pub ell: usize,
    pub side1: SparseSide,
    /// `V(G) \ S_1`
    pub outside1: VertexSet,
    pub side2: SparseSide,
    /// `V(G) \ (S_1 ∪ S_2)`
    pub rest: VertexSet,
}

impl SearchContext {
    pub fn s1(&self) -> &VertexSet {
        &self.side1.set
    }

    pub fn s2(&self) -> &VertexSet {
        &self.side2.set
    }

    /// `d = d_{O_1}(u)`
    pub fn d(&self) -> usize {
        self.side2.source_degree
    }

    /// Structural invariants: disjoint sides, `U` is the remainder.
    pub fn check_structure(&self, g: &Graph) -> Result<(), String> {
        if !self.s1().is_subset(&g.neighbors(self.side1.center)) {
            return Err("S_1 is not inside N(v)".into());
        }
        let n_o1 = g.neighbors_in(self.side2.center, &self.outside1);
        if !self.s2().is_subset(&n_o1) {
            return Err("S_2 is not inside N_{O_1}(u)".into());
        }
        if !self.s1().is_disjoint(self.s2()) {
            return Err("S_1 and S_2 intersect".into());
        }
        if self.rest != self.s1().union(self.s2()).complement() {
            return Err("U is not the complement of S_1 ∪ S_2".into());
        }
        Ok(())
    }
}

/// Checks a witness against `g`, `t` and `m`. The error names the first
/// violated condition.
pub fn verify_witness(g: &Graph, t: &Tree, m: usize, w: &WitnessResult) -> Result<(), String> {
    match w {
        WitnessResult::Cycle(vs) => {
            if vs.len() != m {
                return Err(format!("cycle has {} vertices, expected {m}", vs.len()));
            }
            let mut seen = VertexSet::new(g.order());
            for &v in vs {
                if v >= g.order() {
                    return Err(format!(
                        "cycle vertex {v} out of range for order {}",
                        g.order()
                    ));
                }
                if !seen.insert(v) {
                    return Err(format!("cycle vertex {v} repeated"));
                }
            }
            for i in 0..vs.len() {
                let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
                if !g.has_edge(a, b) {
                    return Err(format!("cycle pair {a}-{b} is not an edge"));
                }
            }
            Ok(())
        }
        WitnessResult::Tree(e) => {
            if e.source_order() != t.order() {
                return Err(format!(
                    "embedding sized for {} tree vertices, tree has {}",
                    e.source_order(),
                    t.order()
                ));
            }
            if let Some(s) = (0..t.order()).find(|&s| !e.is_mapped(s)) {
                return Err(format!("tree vertex {s} is not mapped"));
            }
            let mut owner = vec![usize::MAX; g.order()];
            for (s, h) in e.pairs() {
                if h >= g.order() {
                    return Err(format!(
                        "tree vertex {s} mapped to {h}, out of range for order {}",
                        g.order()
                    ));
                }
                if owner[h] != usize::MAX {
                    return Err(format!(
                        "tree vertices {} and {s} both mapped to {h}",
                        owner[h]
                    ));
                }
                owner[h] = s;
            }
            for (a, b) in t.edges() {
                let (x, y) = (e.get(a).unwrap(), e.get(b).unwrap());
                if g.has_edge(x, y) {
                    return Err(format!("tree edge {a}-{b} mapped to edge {x}-{y} of G"));
                }
            }
            Ok(())
        }
    }
}

/// Runs the pipeline and discards the threshold log.
pub fn find_witness(
    g: &Graph,
    t: &Tree,
    m: usize,
    mode: Mode,
) -> Result<WitnessResult, WitnessError> {
    find_witness_logged(g, t, m, mode).0
}

/// Runs the pipeline, returning the result and every threshold decision.
pub fn find_witness_logged(
    g: &Graph,
    t: &Tree,
    m: usize,
    mode: Mode,
) -> (Result<WitnessResult, WitnessError>, ThresholdLog) {
    let mut log = ThresholdLog::new();
    let result = run(g, t, m, mode, &mut log).and_then(|w| {
        verify_witness(g, t, m, &w)
            .map(|()| w)
            .map_err(|e| WitnessError::Defect(format!("produced an invalid witness: {e}")))
    });
    (result, log)
}

pub(crate) fn check_inputs(g: &Graph, t: &Tree, m: usize) -> Result<usize, WitnessError> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(WitnessError::InvalidInput(format!(
            "cycle length must be odd and >= 3, got {m}"
        )));
    }
    let n = t.order();
    if g.order() < 2 * n - 1 {
        return Err(WitnessError::InvalidInput(format!(
            "graph order {} < 2n - 1 = {} for a tree on {n} vertices",
            g.order(),
            2 * n - 1
        )));
    }
    Ok(n)
}

fn run(
    g: &Graph,
    t: &Tree,
    m: usize,
    mode: Mode,
    log: &mut ThresholdLog,
) -> Result<WitnessResult, WitnessError> {
    let n = check_inputs(g, t, m)?;
    if mode == Mode::Strict && n < 50 * m {
        return Err(WitnessError::InvalidInput(format!(
            "strict mode needs n >= 50m, got n = {n}, m = {m}"
        )));
    }
    // Indices 0..2n-1 are kept, so witnesses stay valid in `g` itself.
    let gp = GraphPair::new(g.prefix(2 * n - 1));
    if m == 3 {
        return find_witness_triangle(&gp.g, t);
    }

    // Complement dense enough for the greedy embedding.
    let co_min = gp.gc.min_degree().unwrap_or(0);
    if co_min + 1 >= n {
        let emb = embed_rooted_forest(&t.as_forest(), &[0], &gp.gc, &[0]).map_err(|e| {
            WitnessError::Defect(format!("greedy embedding into the complement: {e}"))
        })?;
        return Ok(WitnessResult::Tree(emb));
    }
    let v = (0..gp.order())
        .max_by_key(|&v| (gp.g.degree(v), std::cmp::Reverse(v)))
        .expect("order >= 1");
    if gp.g.degree(v) < n {
        return Err(WitnessError::Defect(format!(
            "maximum degree {} < n = {n}",
            gp.g.degree(v)
        )));
    }

    let dsq1 = ((m - 2) * n) as u64;
    let side1 = match sparse_subset_or_cycle(&gp, v, &gp.g.vertices(), dsq1, m, log)? {
        SparseOutcome::Cycle(c) => return Ok(WitnessResult::Cycle(c)),
        SparseOutcome::Subset(side) => side,
    };
    check_side_bounds(&side1, n, "first sparse side", log)?;

    let (u, d) = match high_degree_vertex_or_tree(&gp, t, &side1, log)? {
        HighDegree::Tree(e) => return Ok(WitnessResult::Tree(e)),
        HighDegree::Vertex { u, d } => (u, d),
    };
    let outside1 = side1.set.complement();
    let dsq2 = ((m - 2) * d) as u64;
    let side2 = match sparse_subset_or_cycle(&gp, u, &outside1, dsq2, m, log)? {
        SparseOutcome::Cycle(c) => return Ok(WitnessResult::Cycle(c)),
        SparseOutcome::Subset(side) => side,
    };
    check_side_bounds(&side2, d, "second sparse side", log)?;

    let rest = side1.set.union(&side2.set).complement();
    let ctx = SearchContext {
        n,
        m,
        ell: (m - 1) / 2,
        side1,
        outside1,
        side2,
        rest,
    };
    ctx.check_structure(&gp.g).map_err(WitnessError::Defect)?;

    // Cross-degree scan: S_2 ascending, then S_1 ascending.
    for (side, home, away, home_co) in [
        (Side::Two, ctx.s2(), ctx.s1(), ctx.side2.co_degree),
        (Side::One, ctx.s1(), ctx.s2(), ctx.side1.co_degree),
    ] {
        for w in home.iter() {
            let co = gp.gc.degree_in(w, away);
            if co + home_co + 1 >= n {
                let emb = cross_tree_embedding(&gp, t, &ctx, w, side, log)?;
                return Ok(WitnessResult::Tree(emb));
            }
        }
    }

    if let Some(c) = bipartite_check_or_cycle(&gp, &ctx, m, log)? {
        return Ok(WitnessResult::Cycle(c));
    }
    let (rest1, rest2) = match attachment_check_or_cycle(&gp, &ctx, m, log)? {
        Attachment::Cycle(c) => return Ok(WitnessResult::Cycle(c)),
        Attachment::Partition { rest1, rest2 } => (rest1, rest2),
    };
    let (s, extra) = if ctx.s1().len() + rest1.len() >= n {
        (ctx.s1(), &rest1)
    } else {
        (ctx.s2(), &rest2)
    };
    final_bipartite_embedding(&gp, t, s, extra, log).map(WitnessResult::Tree)
}

/// Size and co-degree bounds of a sparse side cut from a neighborhood of
/// size at least `base`: `|S| > base - D` and `δ(Ḡ[S]) > base - 1 - 2D`.
fn check_side_bounds(
    side: &SparseSide,
    base: usize,
    step: &'static str,
    log: &mut ThresholdLog,
) -> Result<(), WitnessError> {
    let size = side.set.len() as i128;
    let base = base as i128;
    let r = side.dsq as u128;
    if !log.record(ThresholdCheck::with_sqrt(
        "sparse side size",
        size,
        Relation::Gt,
        base,
        -1,
        r,
    )) {
        return Err(WitnessError::bounds(
            step,
            format!("|S| = {size} <= {base} - sqrt({r})"),
        ));
    }
    let co = side.co_degree as i128;
    if !log.record(ThresholdCheck::with_sqrt(
        "sparse side co-degree",
        co,
        Relation::Gt,
        base - 1,
        -2,
        r,
    )) {
        return Err(WitnessError::bounds(
            step,
            format!("co-degree {co} <= {base} - 1 - 2 sqrt({r})"),
        ));
    }
    Ok(())
}
