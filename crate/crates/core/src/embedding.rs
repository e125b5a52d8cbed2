//! Partial injective maps from a source forest into a host graph.

use crate::graph::Graph;

/// A partial injective map `source vertex -> host vertex`.
///
/// Indexed by source vertex; the source is a tree or a forest sharing the
/// tree's vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    map: Vec<Option<usize>>,
}

impl Embedding {
    pub fn new(source_order: usize) -> Self {
        Self {
            map: vec![None; source_order],
        }
    }

    pub fn source_order(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn get(&self, s: usize) -> Option<usize> {
        self.map.get(s).copied().flatten()
    }

    pub fn set(&mut self, s: usize, h: usize) {
        self.map[s] = Some(h);
    }

    pub fn unset(&mut self, s: usize) {
        self.map[s] = None;
    }

    pub fn is_mapped(&self, s: usize) -> bool {
        self.get(s).is_some()
    }

    /// Number of mapped source vertices.
    pub fn len(&self) -> usize {
        self.map.iter().filter(|x| x.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    /// Mapped pairs `(source, host)` by ascending source vertex.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(s, h)| h.map(|h| (s, h)))
    }

    /// Merges `other` into `self`; entries of `other` win on overlap.
    pub fn absorb(&mut self, other: &Embedding) {
        for (s, h) in other.pairs() {
            self.map[s] = Some(h);
        }
    }

    /// Re-targets every image through `back` (e.g. an induced-subgraph
    /// back-map).
    pub fn translate(&self, back: &[usize]) -> Embedding {
        Embedding {
            map: self.map.iter().map(|h| h.map(|h| back[h])).collect(),
        }
    }

    /// Checks injectivity, host range, and that every source edge with both
    /// endpoints mapped lands on a host edge. Names the first violation.
    pub fn validate<I>(&self, source_edges: I, host: &Graph) -> Result<(), String>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut owner = vec![usize::MAX; host.order()];
        for (s, h) in self.pairs() {
            if h >= host.order() {
                return Err(format!(
                    "vertex {s} mapped to {h}, outside host of order {}",
                    host.order()
                ));
            }
            if owner[h] != usize::MAX {
                return Err(format!("vertices {} and {s} both mapped to {h}", owner[h]));
            }
            owner[h] = s;
        }
        for (a, b) in source_edges {
            if let (Some(x), Some(y)) = (self.get(a), self.get(b)) {
                if !host.has_edge(x, y) {
                    return Err(format!("edge {a}-{b} mapped to non-edge {x}-{y}"));
                }
            }
        }
        Ok(())
    }
}
