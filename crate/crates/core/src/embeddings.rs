//! Structural lemmas used by the witness pipeline, as standalone algorithms:
//! min-degree peeling, rooted greedy forest embedding, balanced tree
//! splitting, leaf pruning and greedy tree extension.

use std::collections::{BTreeSet, VecDeque};

use crate::embedding::Embedding;
use crate::error::EmbedError;
use crate::graph::Graph;
use crate::tree::{Forest, Tree};
use crate::vertex_set::VertexSet;

/// Result of peeling a vertex set down to its `k`-core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peeling {
    pub core: VertexSet,
    /// Removed vertices in removal order.
    pub removed: Vec<usize>,
}

/// Repeatedly deletes the lowest-index vertex of `within` whose degree inside
/// the surviving set is at most `k - 1`.
pub fn peel_within(h: &Graph, within: &VertexSet, k: usize) -> Peeling {
    let mut core = within.clone();
    let mut degree = vec![0usize; h.order()];
    let mut violators = BTreeSet::new();
    for v in within.iter() {
        degree[v] = h.degree_in(v, within);
        if degree[v] < k {
            violators.insert(v);
        }
    }
    let mut removed = Vec::new();
    while let Some(u) = violators.pop_first() {
        core.remove(u);
        removed.push(u);
        for w in h.neighbors_in(u, &core).iter() {
            degree[w] -= 1;
            if degree[w] + 1 == k {
                violators.insert(w);
            }
        }
    }
    Peeling { core, removed }
}

/// The `k`-core of `h` as a reindexed induced subgraph plus back-map.
/// Possibly of order 0.
pub fn peel_to_min_degree(h: &Graph, k: usize) -> (Graph, Vec<usize>) {
    let p = peel_within(h, &h.vertices(), k);
    h.induced_subgraph(&p.core).expect("core lies inside h")
}

/// Embeds the forest `f` into `host` with `roots[i] -> targets[i]`.
///
/// `roots` must hold exactly one vertex per component of `f`, `targets` must be
/// distinct, and `δ(host) >= |V(f)| - 1`. Under those conditions the greedy
/// breadth-first extension cannot get stuck.
pub fn embed_rooted_forest(
    f: &Forest,
    roots: &[usize],
    host: &Graph,
    targets: &[usize],
) -> Result<Embedding, EmbedError> {
    embed_rooted_forest_within(f, roots, host, &host.vertices(), targets)
}

/// As [`embed_rooted_forest`], with the host restricted to `host[allowed]`.
pub fn embed_rooted_forest_within(
    f: &Forest,
    roots: &[usize],
    host: &Graph,
    allowed: &VertexSet,
    targets: &[usize],
) -> Result<Embedding, EmbedError> {
    check_forest_roots(f, roots, targets, allowed)?;
    if !f.is_empty() {
        let need = f.len() - 1;
        if let Some(delta) = host.min_degree_within(allowed) {
            if delta < need {
                return Err(EmbedError::Precondition(format!(
                    "host minimum degree {delta} < forest order - 1 = {need}"
                )));
            }
        }
    }

    let mut emb = Embedding::new(f.capacity());
    let mut free = allowed.clone();
    let mut queue = VecDeque::new();
    for (&r, &t) in roots.iter().zip(targets) {
        emb.set(r, t);
        free.remove(t);
        queue.push_back(r);
    }
    while let Some(y) = queue.pop_front() {
        let z = emb.get(y).expect("queued vertices are mapped");
        for &x in f.neighbors(y) {
            if emb.is_mapped(x) {
                continue;
            }
            let Some(img) = host.first_neighbor_in(z, &free) else {
                return Err(EmbedError::Defect(format!(
                    "no free neighbor of host vertex {z} for forest vertex {x}"
                )));
            };
            emb.set(x, img);
            free.remove(img);
            queue.push_back(x);
        }
    }
    Ok(emb)
}

fn check_forest_roots(
    f: &Forest,
    roots: &[usize],
    targets: &[usize],
    allowed: &VertexSet,
) -> Result<(), EmbedError> {
    if roots.len() != targets.len() {
        return Err(EmbedError::Precondition(format!(
            "{} roots but {} targets",
            roots.len(),
            targets.len()
        )));
    }
    let comps = f.components();
    if roots.len() != comps.len() {
        return Err(EmbedError::Precondition(format!(
            "{} roots for {} components",
            roots.len(),
            comps.len()
        )));
    }
    let mut comp_of = vec![usize::MAX; f.capacity()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut hit = vec![false; comps.len()];
    for &r in roots {
        let c = comp_of.get(r).copied().unwrap_or(usize::MAX);
        if c == usize::MAX {
            return Err(EmbedError::Precondition(format!(
                "root {r} is not a forest vertex"
            )));
        }
        if std::mem::replace(&mut hit[c], true) {
            return Err(EmbedError::Precondition(format!(
                "two roots in the component of {r}"
            )));
        }
    }
    let mut seen = BTreeSet::new();
    for &t in targets {
        if !allowed.contains(t) {
            return Err(EmbedError::Precondition(format!("target {t} not in host")));
        }
        if !seen.insert(t) {
            return Err(EmbedError::Precondition(format!("target {t} repeated")));
        }
    }
    Ok(())
}

/// A connected subtree of `t` on exactly `s` vertices, obtained by
/// repeatedly deleting the lowest-index current leaf. Original indices are
/// kept.
pub fn prune_to_size(t: &Tree, s: usize) -> Result<Forest, EmbedError> {
    let n = t.order();
    if s == 0 || s > n {
        return Err(EmbedError::Precondition(format!(
            "subtree size {s} outside 1..={n}"
        )));
    }
    let mut kept = t.vertices();
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut size = n;
    while size > s {
        let leaf = leaves
            .pop_first()
            .expect("a tree with >= 2 vertices has a leaf");
        kept.remove(leaf);
        size -= 1;
        for &w in t.neighbors(leaf) {
            if kept.contains(w) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    leaves.insert(w);
                }
            }
        }
    }
    Ok(t.subforest(&kept))
}

/// A pivot vertex and a grouping of the components of `T - pivot` into two
/// edge-separated parts, each holding between a third and two thirds of the
/// remaining `n - 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub pivot: usize,
    pub part_k: VertexSet,
    pub part_h: VertexSet,
}

/// Components of `T - v` as `(neighbor of v, members)`, by neighbor index.
pub fn components_without(t: &Tree, v: usize) -> Vec<(usize, Vec<usize>)> {
    let n = t.order();
    let mut seen = VertexSet::new(n);
    seen.insert(v);
    t.neighbors(v)
        .iter()
        .map(|&root| {
            seen.insert(root);
            let mut comp = vec![root];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in t.neighbors(u) {
                    if seen.insert(w) {
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            (root, comp)
        })
        .collect()
}

/// Centroid walk from the lowest-index leaf, then the three-way grouping of
/// the pivot's components.
pub fn balanced_split(t: &Tree) -> Result<SplitResult, EmbedError> {
    let n = t.order();
    if n < 3 {
        return Err(EmbedError::Precondition(format!(
            "balanced split needs n >= 3, got {n}"
        )));
    }
    let set_of = |members: &mut dyn Iterator<Item = usize>| {
        let mut s = VertexSet::new(n);
        members.for_each(|v| {
            s.insert(v);
        });
        s
    };

    let mut v = (0..n)
        .find(|&v| t.degree(v) == 1)
        .expect("trees with n >= 2 have leaves");
    let mut prev = usize::MAX;
    let comps = loop {
        let comps = components_without(t, v);
        if let Some((_, half)) = comps.iter().find(|(_, c)| 2 * c.len() == n) {
            let part_k = set_of(&mut half.iter().copied());
            let mut part_h = t.vertices().difference(&part_k);
            part_h.remove(v);
            return Ok(SplitResult {
                pivot: v,
                part_k,
                part_h,
            });
        }
        match comps.iter().find(|(_, c)| 2 * c.len() > n) {
            Some(&(next, _)) => {
                // The walk never steps back: the component containing the
                // previous pivot has fewer than n/2 vertices.
                assert_ne!(next, prev, "centroid walk revisited vertex {next}");
                prev = v;
                v = next;
            }
            None => break comps,
        }
    };

    let mut comps: Vec<Vec<usize>> = comps.into_iter().map(|(_, c)| c).collect();
    if comps.len() == 2 {
        let part_k = set_of(&mut comps[0].iter().copied());
        let part_h = set_of(&mut comps[1].iter().copied());
        return Ok(SplitResult {
            pivot: v,
            part_k,
            part_h,
        });
    }
    debug_assert!(comps.len() >= 3);
    comps.sort_by_key(|c| (c.len(), c[0]));
    let rest = n - 1;
    let mut prefix = 0;
    let mut t_count = 0;
    for c in &comps {
        if 3 * (prefix + c.len()) <= rest {
            prefix += c.len();
            t_count += 1;
        } else {
            break;
        }
    }
    debug_assert!(t_count >= 1 && t_count + 2 <= comps.len());
    let next = comps[t_count].len();
    let (k_idx, h_idx): (Vec<usize>, Vec<usize>) = if 3 * (prefix + next) <= 2 * rest {
        (
            (0..=t_count).collect(),
            (t_count + 1..comps.len()).collect(),
        )
    } else {
        (
            vec![t_count],
            (0..comps.len()).filter(|&i| i != t_count).collect(),
        )
    };
    let part_k = set_of(&mut k_idx.iter().flat_map(|&i| comps[i].iter().copied()));
    let part_h = set_of(&mut h_idx.iter().flat_map(|&i| comps[i].iter().copied()));
    Ok(SplitResult {
        pivot: v,
        part_k,
        part_h,
    })
}

/// Outcome of greedily extending a partial tree embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendOutcome {
    Complete(Embedding),
    /// `blocking` is an image vertex with no unused host neighbor.
    Stuck {
        blocking: usize,
        partial: Embedding,
    },
}

/// Extends `partial` (an embedding of a connected subtree of `t`) one tree
/// vertex at a time: breadth-first from the embedded part, lowest index
/// first, each new vertex sent to the lowest unused host neighbor of its
/// parent's image.
pub fn greedy_extend(
    t: &Tree,
    partial: &Embedding,
    host: &Graph,
) -> Result<ExtendOutcome, EmbedError> {
    let n = t.order();
    if partial.source_order() != n {
        return Err(EmbedError::Precondition(
            "partial embedding has the wrong source order".into(),
        ));
    }
    if partial.is_empty() {
        return Err(EmbedError::Precondition(
            "partial embedding is empty".into(),
        ));
    }
    partial
        .validate(t.edges(), host)
        .map_err(EmbedError::Precondition)?;
    let mapped = VertexSet::from_vertices(n, partial.pairs().map(|(s, _)| s))?;
    if t.subforest(&mapped).components().len() != 1 {
        return Err(EmbedError::Precondition(
            "partial embedding is not a connected subtree".into(),
        ));
    }

    let mut emb = partial.clone();
    let mut free = host.vertices();
    for (_, h) in emb.pairs() {
        free.remove(h);
    }
    let mut queue: VecDeque<usize> = mapped.iter().collect();
    while let Some(y) = queue.pop_front() {
        let z = emb.get(y).expect("queued vertices are mapped");
        for &x in t.neighbors(y) {
            if emb.is_mapped(x) {
                continue;
            }
            match host.first_neighbor_in(z, &free) {
                Some(img) => {
                    emb.set(x, img);
                    free.remove(img);
                    queue.push_back(x);
                }
                None => {
                    return Ok(ExtendOutcome::Stuck {
                        blocking: z,
                        partial: emb,
                    })
                }
            }
        }
    }
    Ok(ExtendOutcome::Complete(emb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peel_examples() {
        let (core, back) = peel_to_min_degree(&Graph::complete(5), 3);
        assert_eq!(core, Graph::complete(5));
        assert_eq!(back, vec![0, 1, 2, 3, 4]);
        assert_eq!(
            peel_to_min_degree(&Tree::path(4).graph().clone(), 2)
                .0
                .order(),
            0
        );

        // C_5 plus a pendant vertex 5 on vertex 0.
        let mut g = Graph::empty(6);
        for v in 0..5 {
            g.add_edge(v, (v + 1) % 5);
        }
        g.add_edge(0, 5);
        let p = peel_within(&g, &g.vertices(), 2);
        assert_eq!(p.core.to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(p.removed, vec![5]);
    }

    #[test]
    fn single_vertex_and_p3_embeddings() {
        let f = Forest::from_edges(1, []).unwrap();
        let e = embed_rooted_forest(&f, &[0], &Graph::complete(5), &[3]).unwrap();
        assert_eq!(e.get(0), Some(3));

        let p3 = Tree::path(3).as_forest();
        let host = Graph::complete(5);
        let e = embed_rooted_forest(&p3, &[1], &host, &[2]).unwrap();
        assert_eq!(e.get(1), Some(2));
        e.validate(p3.edges(), &host).unwrap();
        assert!(e.is_total());
    }

    #[test]
    fn forest_precondition_errors() {
        let f = Forest::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let host = Graph::complete(6);
        assert!(embed_rooted_forest(&f, &[0], &host, &[0]).is_err());
        assert!(embed_rooted_forest(&f, &[0, 1], &host, &[0, 1]).is_err());
        assert!(embed_rooted_forest(&f, &[0, 2], &host, &[1, 1]).is_err());
        assert!(embed_rooted_forest(&f, &[0, 2], &Graph::cycle(6), &[0, 3]).is_err());
        assert!(embed_rooted_forest(&f, &[0, 2], &host, &[0, 3]).is_ok());
    }

    #[test]
    fn prune_examples() {
        let p = prune_to_size(&Tree::path(5), 3).unwrap();
        assert_eq!(p.members().to_vec(), vec![2, 3, 4]);
        assert_eq!(p.components().len(), 1);
        let s = prune_to_size(&Tree::star(5), 3).unwrap();
        assert!(s.members().contains(0));
        assert_eq!(s.len(), 3);
        let t = Tree::caterpillar(9);
        assert_eq!(prune_to_size(&t, 9).unwrap(), t.as_forest());
        assert_eq!(prune_to_size(&t, 1).unwrap().len(), 1);
        assert!(prune_to_size(&t, 0).is_err());
        assert!(prune_to_size(&t, 10).is_err());
    }

    #[test]
    fn split_examples() {
        let s = balanced_split(&Tree::path(4)).unwrap();
        assert!(s.pivot == 1 || s.pivot == 2);
        let mut sizes = [s.part_k.len(), s.part_h.len()];
        sizes.sort();
        assert_eq!(sizes, [1, 2]);

        let s = balanced_split(&Tree::star(4)).unwrap();
        assert_eq!(s.pivot, 0);
        assert_eq!((s.part_k.len(), s.part_h.len()), (2, 1));

        assert!(balanced_split(&Tree::path(2)).is_err());
    }

    #[test]
    fn greedy_extend_examples() {
        let t = Tree::path(3);
        let mut partial = Embedding::new(3);
        partial.set(1, 0);
        match greedy_extend(&t, &partial, &Graph::complete(5)).unwrap() {
            ExtendOutcome::Complete(e) => e.validate(t.edges(), &Graph::complete(5)).unwrap(),
            other => panic!("expected completion, got {other:?}"),
        }

        // Host is a single edge {0, 1}: one leaf lands on 1, then 0 is full.
        let host = Graph::complete(2);
        match greedy_extend(&t, &partial, &host).unwrap() {
            ExtendOutcome::Stuck { blocking, partial } => {
                assert_eq!(blocking, 0);
                assert_eq!(partial.len(), 2);
                let image = VertexSet::from_vertices(2, partial.pairs().map(|(_, h)| h)).unwrap();
                assert!(host.neighbors(blocking).difference(&image).is_empty());
            }
            other => panic!("expected stuck, got {other:?}"),
        }

        let big = crate::generate::random_tree(20, 3);
        let mut one = Embedding::new(20);
        one.set(7, 11);
        assert!(matches!(
            greedy_extend(&big, &one, &Graph::complete(20)).unwrap(),
            ExtendOutcome::Complete(_)
        ));

        assert!(greedy_extend(&t, &Embedding::new(3), &host).is_err());
        let mut disconnected = Embedding::new(3);
        disconnected.set(0, 0);
        disconnected.set(2, 1);
        assert!(greedy_extend(&t, &disconnected, &Graph::complete(4)).is_err());
    }
}
