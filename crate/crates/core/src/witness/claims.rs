//! Individual pipeline steps. Each one either returns a witness or the data
//! the next step consumes; every inequality it relies on is recorded in the
//! threshold log.

use crate::embedding::Embedding;
use crate::embeddings::{
    balanced_split, components_without, embed_rooted_forest, embed_rooted_forest_within,
    greedy_extend, peel_within, prune_to_size, ExtendOutcome,
};
use crate::error::EmbedError;
use crate::graph::Graph;
use crate::tree::{Forest, Tree};
use crate::vertex_set::VertexSet;

use super::threshold::{Relation, ThresholdCheck, ThresholdLog};
use super::{check_inputs, GraphPair, SearchContext, SparseSide, WitnessError, WitnessResult};

fn defect(context: &str) -> impl FnOnce(EmbedError) -> WitnessError + '_ {
    move |e| WitnessError::Defect(format!("{context}: {e}"))
}

/// Lemma-style triangle case: a high-degree vertex either closes a triangle
/// or has an independent neighborhood of size `n`; otherwise the complement
/// has minimum degree `>= n - 1` and the tree embeds greedily.
pub fn find_witness_triangle(g: &Graph, t: &Tree) -> Result<WitnessResult, WitnessError> {
    let n = check_inputs(g, t, 3)?;
    let g = g.prefix(2 * n - 1);
    let v = (0..g.order())
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .expect("order >= 1");
    let nbhd = g.neighbors(v);
    if nbhd.len() >= n {
        for x in nbhd.iter() {
            if let Some(y) = g.first_neighbor_in(x, &nbhd) {
                return Ok(WitnessResult::Cycle(vec![v, x.min(y), x.max(y)]));
            }
        }
        let mut emb = Embedding::new(n);
        for (s, h) in (0..n).zip(nbhd.iter()) {
            emb.set(s, h);
        }
        return Ok(WitnessResult::Tree(emb));
    }
    let gc = g.complement();
    embed_rooted_forest(&t.as_forest(), &[0], &gc, &[0])
        .map(WitnessResult::Tree)
        .map_err(defect("complement has minimum degree >= n - 1"))
}

/// Peels the `(m-2)`-core out of `G[N_X(v)]`, embeds a path on `m - 1`
/// vertices in it, and closes the path through `v`.
///
/// Requires `|E(G[N_X(v)])| >= (m - 2)·d_X(v)` with `d_X(v) >= 1`.
pub fn cycle_from_dense_neighborhood(
    g: &Graph,
    v: usize,
    x: &VertexSet,
    m: usize,
) -> Result<Vec<usize>, WitnessError> {
    if m < 3 {
        return Err(WitnessError::InvalidInput(format!("cycle length {m} < 3")));
    }
    let nbhd = g.neighbors_in(v, x);
    let d = nbhd.len();
    let edges = g.edge_count_within(&nbhd);
    if d == 0 || edges < (m - 2) * d {
        return Err(WitnessError::InvalidInput(format!(
            "neighborhood of {v} has {edges} edges on {d} vertices, need at least {}",
            (m - 2) * d
        )));
    }
    let core = peel_within(g, &nbhd, m - 2).core;
    let start = core
        .first()
        .ok_or_else(|| WitnessError::Defect("dense neighborhood peeled to nothing".into()))?;
    let path = Forest::from_edges(m - 1, (1..m - 1).map(|i| (i - 1, i))).expect("path is a forest");
    let emb = embed_rooted_forest_within(&path, &[0], g, &core, &[start])
        .map_err(defect("path in the core"))?;
    let mut cycle = Vec::with_capacity(m);
    cycle.push(v);
    cycle.extend((0..m - 1).map(|i| emb.get(i).expect("path is fully embedded")));
    Ok(cycle)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SparseOutcome {
    Subset(SparseSide),
    Cycle(Vec<usize>),
}

/// Starting from `R = N_X(v)`, removes the lowest-index vertex whose degree in
/// `G[R]` is at least `D = √dsq` until none is left. If the number of
/// removals `t` satisfies `t·D >= (m-2)·d_X(v)`, the neighborhood carried at
/// least that many edges and the dense-neighborhood cycle is returned.
/// Otherwise `R` is the sparse side.
pub fn sparse_subset_or_cycle(
    gp: &GraphPair,
    v: usize,
    x: &VertexSet,
    dsq: u64,
    m: usize,
    log: &mut ThresholdLog,
) -> Result<SparseOutcome, WitnessError> {
    let g = &gp.g;
    let nbhd = g.neighbors_in(v, x);
    let d = nbhd.len();
    let r = dsq as u128;
    let mut rest = nbhd.clone();
    let mut degree = vec![0usize; g.order()];
    for u in rest.iter() {
        degree[u] = g.degree_in(u, &rest);
    }
    let threshold = super::threshold::ceil_sqrt(r) as usize;
    let mut steps = 0usize;
    while let Some(u) = rest.iter().find(|&u| degree[u] >= threshold) {
        log.record(ThresholdCheck::with_sqrt(
            "peel degree >= D",
            degree[u] as i128,
            Relation::Ge,
            0,
            1,
            r,
        ));
        rest.remove(u);
        for w in g.neighbors_in(u, &rest).iter() {
            degree[w] -= 1;
        }
        steps += 1;
    }

    let demand = ((m - 2) * d) as i128;
    if d > 0
        && log.record(ThresholdCheck::with_sqrt(
            "removals certify dense neighborhood",
            demand,
            Relation::Le,
            0,
            steps as i128,
            r,
        ))
    {
        return cycle_from_dense_neighborhood(g, v, x, m).map(SparseOutcome::Cycle);
    }

    let max_inside = rest.iter().map(|u| degree[u]).max().unwrap_or(0);
    if !log.record(ThresholdCheck::with_sqrt(
        "sparse max degree < D",
        max_inside as i128,
        Relation::Lt,
        0,
        1,
        r,
    )) {
        return Err(WitnessError::Defect(format!(
            "peeling stopped with degree {max_inside} >= sqrt({r})"
        )));
    }
    // |S| > (1 - (m-2)/D)·d, i.e. |S|·D² > d·D² - (m-2)·d·D.
    if d > 0
        && !log.record(ThresholdCheck::new(
            "sparse size > (1 - (m-2)/D) d",
            rest.len() as i128,
            Relation::Gt,
            (d as i128) * (r as i128),
            -demand,
            r,
            r.max(1),
        ))
    {
        return Err(WitnessError::Defect(
            "sparse subset smaller than the removal bound allows".into(),
        ));
    }
    let co_degree = gp.gc.min_degree_within(&rest).unwrap_or(0);
    Ok(SparseOutcome::Subset(SparseSide {
        center: v,
        source_degree: d,
        set: rest,
        co_degree,
        dsq,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HighDegree {
    Tree(Embedding),
    /// `u` has `d = d_{O_1}(u)` neighbors outside `S_1`.
    Vertex {
        u: usize,
        d: usize,
    },
}

/// Embeds a large subtree of `t` into `Ḡ[S_1]` and extends it greedily
/// through the whole complement. Success is a tree witness; a blocked
/// extension exposes a vertex with many neighbors outside `S_1`.
pub fn high_degree_vertex_or_tree(
    gp: &GraphPair,
    t: &Tree,
    side1: &SparseSide,
    log: &mut ThresholdLog,
) -> Result<HighDegree, WitnessError> {
    const STEP: &str = "high-degree vertex";
    let n = t.order();
    let s1 = &side1.set;
    let start = s1
        .first()
        .ok_or_else(|| WitnessError::bounds(STEP, "S_1 is empty"))?;
    let co = side1.co_degree;
    if co + 1 >= n {
        let emb = embed_rooted_forest_within(&t.as_forest(), &[0], &gp.gc, s1, &[start])
            .map_err(defect("tree into the complement of S_1"))?;
        return Ok(HighDegree::Tree(emb));
    }
    let sub = prune_to_size(t, co + 1).map_err(defect("subtree pruning"))?;
    let root = sub.members().first().expect("subtree is nonempty");
    let partial = embed_rooted_forest_within(&sub, &[root], &gp.gc, s1, &[start])
        .map_err(defect("subtree into the complement of S_1"))?;
    let partial = {
        let mut e = Embedding::new(n);
        e.absorb(&partial);
        e
    };
    match greedy_extend(t, &partial, &gp.gc).map_err(defect("greedy extension"))? {
        ExtendOutcome::Complete(e) => Ok(HighDegree::Tree(e)),
        ExtendOutcome::Stuck { blocking: u, .. } => {
            let d = gp.g.degree_in(u, &s1.complement());
            let ok = log.record(ThresholdCheck::with_sqrt(
                "outside degree > n - sqrt((m-2)n)",
                d as i128,
                Relation::Gt,
                n as i128,
                -1,
                side1.dsq as u128,
            ));
            if !ok {
                return Err(WitnessError::bounds(
                    STEP,
                    format!("d_O1({u}) = {d} <= n - sqrt({})", side1.dsq),
                ));
            }
            Ok(HighDegree::Vertex { u, d })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    One,
    Two,
}

/// Tree witness from a vertex `w` with many complement neighbors on the
/// opposite side.
///
/// The tree is split at a pivot `x` into parts `K` (larger) and `H`. The part
/// that stays with `x` goes into the complement of `w`'s own side with
/// `x -> w`; the other part goes into the complement of the opposite side with
/// the neighbors of `x` on distinct complement neighbors of `w`. Components
/// are moved across (smallest first) so that `x` has exactly as many
/// neighbors in the far part as `w` has complement neighbors available.
pub fn cross_tree_embedding(
    gp: &GraphPair,
    t: &Tree,
    ctx: &SearchContext,
    w: usize,
    side: Side,
    log: &mut ThresholdLog,
) -> Result<Embedding, WitnessError> {
    const STEP: &str = "cross-degree embedding";
    let n = ctx.n;
    let (home, home_co, away, away_co) = match side {
        Side::One => (ctx.s1(), ctx.side1.co_degree, ctx.s2(), ctx.side2.co_degree),
        Side::Two => (ctx.s2(), ctx.side2.co_degree, ctx.s1(), ctx.side1.co_degree),
    };
    if !home.contains(w) {
        return Err(WitnessError::InvalidInput(format!(
            "vertex {w} is not on side {side:?}"
        )));
    }
    let available = gp.gc.neighbors_in(w, away);
    let dbar = available.len();
    if dbar + home_co + 1 < n {
        return Err(WitnessError::InvalidInput(format!(
            "complement degree {dbar} of {w} is below n - δ - 1 = {}",
            n as i128 - home_co as i128 - 1
        )));
    }
    let nm1 = (n - 1) as i128;
    if !log.record(ThresholdCheck::new(
        "S_2 co-degree >= (n-1)/2",
        ctx.side2.co_degree as i128,
        Relation::Ge,
        nm1,
        0,
        0,
        2,
    )) {
        return Err(WitnessError::bounds(
            STEP,
            format!("δ(Ḡ[S_2]) = {} < (n-1)/2", ctx.side2.co_degree),
        ));
    }
    if !log.record(ThresholdCheck::new(
        "S_1 co-degree >= 2(n-1)/3",
        ctx.side1.co_degree as i128,
        Relation::Ge,
        2 * nm1,
        0,
        0,
        3,
    )) {
        return Err(WitnessError::bounds(
            STEP,
            format!("δ(Ḡ[S_1]) = {} < 2(n-1)/3", ctx.side1.co_degree),
        ));
    }
    if n < 3 {
        return Err(WitnessError::bounds(STEP, "tree too small to split"));
    }

    let split = balanced_split(t).map_err(defect("balanced split"))?;
    let x = split.pivot;
    let (big, small) = if split.part_k.len() >= split.part_h.len() {
        (split.part_k, split.part_h)
    } else {
        (split.part_h, split.part_k)
    };
    let (mut near, mut far) = match side {
        Side::Two => (small, big),
        Side::One => (big, small),
    };

    let mut far_comps: Vec<Vec<usize>> = components_without(t, x)
        .into_iter()
        .map(|(_, c)| c)
        .filter(|c| far.contains(c[0]))
        .collect();
    if far_comps.len() > dbar {
        far_comps.sort_by_key(|c| (c.len(), c[0]));
        for c in far_comps.drain(..far_comps.len() - dbar) {
            for v in c {
                far.remove(v);
                near.insert(v);
            }
        }
    }
    near.insert(x);
    if near.len() > home_co + 1 {
        return Err(WitnessError::bounds(
            STEP,
            format!(
                "pivot part has {} vertices, co-degree {home_co}",
                near.len()
            ),
        ));
    }
    if far.len() > away_co + 1 {
        return Err(WitnessError::bounds(
            STEP,
            format!("far part has {} vertices, co-degree {away_co}", far.len()),
        ));
    }

    let near_tree = t.subforest(&near);
    let mut emb = embed_rooted_forest_within(&near_tree, &[x], &gp.gc, home, &[w])
        .map_err(defect("pivot part"))?;
    let far_forest = t.subforest(&far);
    let roots: Vec<usize> = t
        .neighbors(x)
        .iter()
        .copied()
        .filter(|&y| far.contains(y))
        .collect();
    let targets: Vec<usize> = available.iter().take(roots.len()).collect();
    let far_emb = embed_rooted_forest_within(&far_forest, &roots, &gp.gc, away, &targets)
        .map_err(defect("far part"))?;
    emb.absorb(&far_emb);
    Ok(emb)
}

/// Requires common neighborhoods across the sides to exceed `ell` and
/// records the bounds that guarantee it.
fn check_common_neighbors(
    ctx: &SearchContext,
    within: Side,
    step: &'static str,
    log: &mut ThresholdLog,
) -> Result<(), WitnessError> {
    let n = ctx.n as i128;
    let (pool, co) = match within {
        // Pairs inside S_1 share neighbors in S_2.
        Side::One => (ctx.s2().len() as i128, ctx.side1.co_degree as i128),
        Side::Two => (ctx.s1().len() as i128, ctx.side2.co_degree as i128),
    };
    let lhs = pool - 2 * (n - co - 1);
    let label = match within {
        Side::One => "|S_2| - 2(n - co_1 - 1) > ell",
        Side::Two => "|S_1| - 2(n - co_2 - 1) > ell",
    };
    if !log.record(ThresholdCheck::integer(
        label,
        lhs,
        Relation::Gt,
        ctx.ell as i128,
    )) {
        return Err(WitnessError::bounds(
            step,
            format!("{label} fails: {lhs} <= {}", ctx.ell),
        ));
    }
    Ok(())
}

/// Picks distinct `w_i ∈ pool`, avoiding `avoid`, adjacent to both `zs[i]`
/// and `zs[i+1]`, lowest index first.
fn zigzag_links(
    g: &Graph,
    zs: &[usize],
    pool: &VertexSet,
    avoid: Option<usize>,
) -> Option<Vec<usize>> {
    let mut free = pool.clone();
    if let Some(a) = avoid {
        free.remove(a);
    }
    let mut links = Vec::with_capacity(zs.len().saturating_sub(1));
    for pair in zs.windows(2) {
        let common = g
            .neighbors_in(pair[0], &free)
            .intersection(&g.neighbors(pair[1]));
        let w = common.first()?;
        free.remove(w);
        links.push(w);
    }
    Some(links)
}

fn interleave(zs: &[usize], ws: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(zs.len() + ws.len());
    for (i, &z) in zs.iter().enumerate() {
        out.push(z);
        if let Some(&w) = ws.get(i) {
            out.push(w);
        }
    }
    out
}

/// Looks for an edge inside `S_1`, then inside `S_2`. An edge `z_1 z_{ell+1}`
/// plus `ell - 1` further same-side vertices and `ell` distinct cross-side
/// common neighbors closes an alternating cycle of length `2·ell + 1 = m`.
pub fn bipartite_check_or_cycle(
    gp: &GraphPair,
    ctx: &SearchContext,
    m: usize,
    log: &mut ThresholdLog,
) -> Result<Option<Vec<usize>>, WitnessError> {
    const STEP: &str = "independent sides";
    let g = &gp.g;
    let ell = ctx.ell;
    if m != 2 * ell + 1 {
        return Err(WitnessError::InvalidInput(format!(
            "context built for m = {}, asked for {m}",
            2 * ell + 1
        )));
    }
    for (within, set, pool) in [
        (Side::One, ctx.s1(), ctx.s2()),
        (Side::Two, ctx.s2(), ctx.s1()),
    ] {
        let Some((a, b)) = set
            .iter()
            .find_map(|a| g.first_neighbor_in(a, set).map(|b| (a, b)))
        else {
            continue;
        };
        check_common_neighbors(ctx, within, STEP, log)?;
        let mut others = set.clone();
        others.remove(a);
        others.remove(b);
        if others.len() + 1 < ell {
            return Err(WitnessError::bounds(
                STEP,
                format!("side has {} vertices, need {}", set.len(), ell + 1),
            ));
        }
        let mut zs = vec![a];
        zs.extend(others.iter().take(ell - 1));
        zs.push(b);
        let ws = zigzag_links(g, &zs, pool, None)
            .ok_or_else(|| WitnessError::bounds(STEP, "ran out of common neighbors"))?;
        return Ok(Some(interleave(&zs, &ws)));
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Attachment {
    Cycle(Vec<usize>),
    /// `rest1` has no neighbors in `S_1`, `rest2` none in `S_2`.
    Partition {
        rest1: VertexSet,
        rest2: VertexSet,
    },
}

/// A vertex of `U` adjacent to both sides closes an `m`-cycle
/// `w, y, z_1, w_1, ..., w_{ell-1}, z_ell` with `z_ell = x`. Otherwise `U`
/// splits by which side each vertex avoids; vertices touching neither side
/// go to the currently smaller side (ties to side 1).
pub fn attachment_check_or_cycle(
    gp: &GraphPair,
    ctx: &SearchContext,
    m: usize,
    log: &mut ThresholdLog,
) -> Result<Attachment, WitnessError> {
    const STEP: &str = "attachment";
    let g = &gp.g;
    let (s1, s2) = (ctx.s1(), ctx.s2());
    let ell = ctx.ell;
    if m != 2 * ell + 1 {
        return Err(WitnessError::InvalidInput(format!(
            "context built for m = {}, asked for {m}",
            2 * ell + 1
        )));
    }
    let mut rest1 = VertexSet::new(g.order());
    let mut rest2 = VertexSet::new(g.order());
    let mut size1 = s1.len();
    let mut size2 = s2.len();
    for w in ctx.rest.iter() {
        let to1 = g.neighbors_in(w, s1);
        let to2 = g.neighbors_in(w, s2);
        match (to1.first(), to2.first()) {
            (Some(x), Some(y)) => {
                check_common_neighbors(ctx, Side::One, STEP, log)?;
                let slack = s1.len() as i128 - (ctx.n as i128 - ctx.side2.co_degree as i128 - 1);
                if !log.record(ThresholdCheck::integer(
                    "|S_1| - (n - co_2 - 1) >= 2",
                    slack,
                    Relation::Ge,
                    2,
                )) {
                    return Err(WitnessError::bounds(
                        STEP,
                        format!("|S_1| - (n - co_2 - 1) = {slack} < 2"),
                    ));
                }
                let mut y_side = g.neighbors_in(y, s1);
                y_side.remove(x);
                let z = y_side.first().ok_or_else(|| {
                    WitnessError::bounds(STEP, format!("{y} has no second neighbor in S_1"))
                })?;
                let mut middle = s1.clone();
                middle.remove(z);
                middle.remove(x);
                let mut zs = vec![z];
                zs.extend(middle.iter().take(ell - 2));
                zs.push(x);
                if zs.len() != ell {
                    return Err(WitnessError::bounds(STEP, "S_1 too small for the cycle"));
                }
                let ws = zigzag_links(g, &zs, s2, Some(y))
                    .ok_or_else(|| WitnessError::bounds(STEP, "ran out of common neighbors"))?;
                let mut cycle = vec![w, y];
                cycle.extend(interleave(&zs, &ws));
                return Ok(Attachment::Cycle(cycle));
            }
            (Some(_), None) => {
                rest2.insert(w);
                size2 += 1;
            }
            (None, Some(_)) => {
                rest1.insert(w);
                size1 += 1;
            }
            (None, None) => {
                if size1 <= size2 {
                    rest1.insert(w);
                    size1 += 1;
                } else {
                    rest2.insert(w);
                    size2 += 1;
                }
            }
        }
    }
    if size1 + size2 < 2 * ctx.n - 1 {
        return Err(WitnessError::Defect(format!(
            "partition covers {} < 2n - 1 vertices",
            size1 + size2
        )));
    }
    Ok(Attachment::Partition { rest1, rest2 })
}

/// Embeds `t` into `Ḡ[S ∪ extra]`: `n - |S|` vertices of the larger colour
/// class go to `extra`, everything else to `S`. Since `S` is independent in
/// `G` and has no `G`-neighbors in `extra`, every tree edge (which has at
/// least one endpoint in `S`) lands on a non-edge.
pub fn final_bipartite_embedding(
    gp: &GraphPair,
    t: &Tree,
    s: &VertexSet,
    extra: &VertexSet,
    log: &mut ThresholdLog,
) -> Result<Embedding, WitnessError> {
    const STEP: &str = "bipartite embedding";
    let g = &gp.g;
    let n = t.order();
    if !s.is_disjoint(extra) || s.len() + extra.len() < n {
        return Err(WitnessError::bounds(
            STEP,
            format!("|S ∪ U| = {} < n = {n}", s.union(extra).len()),
        ));
    }
    if g.edge_count_within(s) != 0 {
        return Err(WitnessError::bounds(STEP, "S is not independent"));
    }
    if let Some(u) = extra.iter().find(|&u| g.degree_in(u, s) != 0) {
        return Err(WitnessError::bounds(
            STEP,
            format!("{u} has a neighbor in S"),
        ));
    }
    let (a, _) = t.bipartition();
    let mut emb = Embedding::new(n);
    if s.len() >= n {
        for (tv, h) in (0..n).zip(s.iter()) {
            emb.set(tv, h);
        }
        return Ok(emb);
    }
    let k = n - s.len();
    if !log.record(ThresholdCheck::integer(
        "n - |S| <= |A|",
        k as i128,
        Relation::Le,
        a.len() as i128,
    )) {
        return Err(WitnessError::bounds(
            STEP,
            format!("n - |S| = {k} > |A| = {}", a.len()),
        ));
    }
    let moved: Vec<usize> = a.iter().take(k).collect();
    for (&tv, h) in moved.iter().zip(extra.iter()) {
        emb.set(tv, h);
    }
    let remaining = (0..n).filter(|v| !emb.is_mapped(*v)).collect::<Vec<_>>();
    for (tv, h) in remaining.into_iter().zip(s.iter()) {
        emb.set(tv, h);
    }
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_tree;
    use crate::witness::verify_witness;

    const N: usize = 12;

    fn side(center: usize, range: std::ops::Range<usize>, gp: &GraphPair) -> SparseSide {
        let set = VertexSet::from_vertices(2 * N - 1, range).unwrap();
        let co_degree = gp.gc.min_degree_within(&set).unwrap();
        SparseSide {
            center,
            source_degree: set.len(),
            set,
            co_degree,
            dsq: (3 * N) as u64,
        }
    }

    /// `S_1 = 0..11`, `S_2 = 11..22`, `U = {22}`, with `G ⊇ K_{S_1,S_2}` as
    /// modified by `edit`.
    fn context(edit: impl FnOnce(&mut Graph)) -> (GraphPair, SearchContext) {
        let mut g = Graph::empty(2 * N - 1);
        for a in 0..11 {
            for b in 11..22 {
                g.add_edge(a, b);
            }
        }
        edit(&mut g);
        let gp = GraphPair::new(g);
        let side1 = side(11, 0..11, &gp);
        let side2 = side(0, 11..22, &gp);
        let outside1 = side1.set.complement();
        let rest = side1.set.union(&side2.set).complement();
        let ctx = SearchContext {
            n: N,
            m: 5,
            ell: 2,
            side1,
            outside1,
            side2,
            rest,
        };
        (gp, ctx)
    }

    fn cycle_ok(g: &Graph, c: &[usize], m: usize) {
        assert!(
            verify_witness(g, &Tree::path(1), m, &WitnessResult::Cycle(c.to_vec())).is_ok(),
            "{c:?}"
        );
    }

    #[test]
    fn dense_neighborhood() {
        let k8 = Graph::complete(8);
        let all = k8.vertices();
        let c = cycle_from_dense_neighborhood(&k8, 0, &all, 5).unwrap();
        assert_eq!(c[0], 0);
        cycle_ok(&k8, &c, 5);
        let k7 = Graph::complete(7);
        assert!(matches!(
            cycle_from_dense_neighborhood(&k7, 0, &k7.vertices(), 5),
            Err(WitnessError::InvalidInput(_))
        ));
    }

    #[test]
    fn sparse_star_neighborhood() {
        let g = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
        let gp = GraphPair::new(g);
        let mut log = ThresholdLog::new();
        let out = sparse_subset_or_cycle(&gp, 0, &gp.g.vertices(), 9, 5, &mut log).unwrap();
        let SparseOutcome::Subset(s) = out else {
            panic!("expected a subset")
        };
        assert_eq!(s.set.to_vec(), vec![1, 2, 3, 4, 5]);
        assert_eq!(s.co_degree, 4);
        assert!(log
            .checks()
            .iter()
            .filter(|c| c.label.starts_with("sparse"))
            .all(|c| c.outcome));
    }

    #[test]
    fn sparse_dense_neighborhood_gives_cycle() {
        let g = Graph::complete(40);
        let gp = GraphPair::new(g);
        let mut log = ThresholdLog::new();
        let out = sparse_subset_or_cycle(&gp, 0, &gp.g.vertices(), 3 * 20, 5, &mut log).unwrap();
        let SparseOutcome::Cycle(c) = out else {
            panic!("expected a cycle")
        };
        cycle_ok(&gp.g, &c, 5);
    }

    #[test]
    fn edge_inside_side_closes_cycle() {
        let (gp, ctx) = context(|g| {
            g.add_edge(0, 1);
        });
        let c = bipartite_check_or_cycle(&gp, &ctx, 5, &mut ThresholdLog::new())
            .unwrap()
            .unwrap();
        cycle_ok(&gp.g, &c, 5);
        let (gp, ctx) = context(|g| {
            g.add_edge(14, 20);
        });
        let c = bipartite_check_or_cycle(&gp, &ctx, 5, &mut ThresholdLog::new())
            .unwrap()
            .unwrap();
        cycle_ok(&gp.g, &c, 5);
        let (gp, ctx) = context(|_| {});
        assert_eq!(
            bipartite_check_or_cycle(&gp, &ctx, 5, &mut ThresholdLog::new()).unwrap(),
            None
        );
    }

    #[test]
    fn attachment_to_both_sides_closes_cycle() {
        let (gp, ctx) = context(|g| {
            g.add_edge(22, 3);
            g.add_edge(22, 15);
        });
        let Attachment::Cycle(c) =
            attachment_check_or_cycle(&gp, &ctx, 5, &mut ThresholdLog::new()).unwrap()
        else {
            panic!("expected a cycle")
        };
        assert_eq!(c, vec![22, 15, 0, 11, 3]);
        cycle_ok(&gp.g, &c, 5);
    }

    #[test]
    fn one_sided_attachment_partitions() {
        let (gp, ctx) = context(|g| {
            g.add_edge(22, 3);
        });
        let Attachment::Partition { rest1, rest2 } =
            attachment_check_or_cycle(&gp, &ctx, 5, &mut ThresholdLog::new()).unwrap()
        else {
            panic!("expected a partition")
        };
        assert!(rest1.is_empty());
        assert_eq!(rest2.to_vec(), vec![22]);
        let (gp, ctx) = context(|_| {});
        let Attachment::Partition { rest1, rest2 } =
            attachment_check_or_cycle(&gp, &ctx, 5, &mut ThresholdLog::new()).unwrap()
        else {
            panic!("expected a partition")
        };
        assert_eq!(rest1.to_vec(), vec![22]);
        assert!(rest2.is_empty());
    }

    #[test]
    fn bipartite_embedding_uses_extra_vertices() {
        let (gp, ctx) = context(|g| {
            for b in 11..22 {
                g.add_edge(22, b);
            }
        });
        let extra = VertexSet::from_vertices(2 * N - 1, [22]).unwrap();
        for t in [Tree::path(N), Tree::star(N), random_tree(N, 3)] {
            let e = final_bipartite_embedding(&gp, &t, ctx.s1(), &extra, &mut ThresholdLog::new())
                .unwrap();
            assert!(verify_witness(&gp.g, &t, 5, &WitnessResult::Tree(e)).is_ok());
        }
        let bad = VertexSet::from_vertices(2 * N - 1, [11]).unwrap();
        assert!(final_bipartite_embedding(
            &gp,
            &Tree::path(N),
            ctx.s1(),
            &bad,
            &mut ThresholdLog::new()
        )
        .is_err());
    }

    #[test]
    fn cross_embedding_both_sides() {
        let (gp, ctx) = context(|g| {
            for a in 0..4 {
                g.remove_edge(a, 11);
            }
            for b in 11..15 {
                g.remove_edge(5, b);
            }
        });
        for seed in 0..20 {
            let t = random_tree(N, seed);
            for (w, side) in [(11, Side::Two), (5, Side::One)] {
                let e =
                    cross_tree_embedding(&gp, &t, &ctx, w, side, &mut ThresholdLog::new()).unwrap();
                assert!(verify_witness(&gp.g, &t, 5, &WitnessResult::Tree(e)).is_ok());
            }
        }
        for t in [Tree::path(N), Tree::star(N), Tree::caterpillar(N)] {
            let e = cross_tree_embedding(&gp, &t, &ctx, 11, Side::Two, &mut ThresholdLog::new())
                .unwrap();
            assert!(verify_witness(&gp.g, &t, 5, &WitnessResult::Tree(e)).is_ok());
        }
        assert!(cross_tree_embedding(
            &gp,
            &Tree::path(N),
            &ctx,
            20,
            Side::Two,
            &mut ThresholdLog::new()
        )
        .is_err());
    }

    #[test]
    fn triangle_case() {
        let g = Graph::complete(5);
        let t = Tree::path(3);
        let w = find_witness_triangle(&g, &t).unwrap();
        assert!(verify_witness(&g, &t, 3, &w).is_ok());
        let g = Graph::complete_bipartite(2, 3);
        let w = find_witness_triangle(&g, &t).unwrap();
        assert!(!w.is_cycle());
        assert!(verify_witness(&g, &t, 3, &w).is_ok());
    }
}
