//! Seeded generators for fuzzing inputs. Every generator takes an explicit
//! seed; nothing reads ambient entropy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::Graph;
use crate::tree::{tree_from_prufer, Tree};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<(), GraphError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GraphError::InvalidProbability(p))
    }
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    check_probability(p)?;
    let mut rng = rng(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// `K_{h,h}` with `h = order / 2` (sides `0..h`, `h..2h`; a final vertex is
/// left isolated when `order` is odd), then every pair flipped independently
/// with probability `flip`.
///
/// At `order = 2n - 1` this plants the extremal `K_{n-1,n-1}` plus an
/// isolated vertex.
pub fn random_bipartite_noise(order: usize, flip: f64, seed: u64) -> Result<Graph, GraphError> {
    check_probability(flip)?;
    let h = order / 2;
    let mut g = Graph::complete_bipartite(h, h);
    if order % 2 == 1 {
        let mut padded = Graph::empty(order);
        for (u, v) in g.edges() {
            padded.add_edge(u, v);
        }
        g = padded;
    }
    let mut rng = rng(seed);
    for u in 0..order {
        for v in u + 1..order {
            if rng.gen::<f64>() < flip {
                g.toggle_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Uniformly random labelled tree via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Tree {
    match n {
        0 => panic!("trees need at least one vertex"),
        1 => Tree::path(1),
        _ => {
            let mut rng = rng(seed);
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            tree_from_prufer(&seq, n).expect("random sequence is valid")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeShape {
    Random,
    Path,
    Star,
    Caterpillar,
}

impl std::str::FromStr for TreeShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(Self::Random),
            "path" => Ok(Self::Path),
            "star" => Ok(Self::Star),
            "caterpillar" => Ok(Self::Caterpillar),
            other => Err(format!("unknown tree shape {other:?}")),
        }
    }
}

pub fn tree_of_shape(shape: TreeShape, n: usize, seed: u64) -> Tree {
    match shape {
        TreeShape::Random => random_tree(n, seed),
        TreeShape::Path => Tree::path(n),
        TreeShape::Star => Tree::star(n),
        TreeShape::Caterpillar => Tree::caterpillar(n),
    }
}
