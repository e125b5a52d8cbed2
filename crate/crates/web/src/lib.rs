//! WebAssembly bindings for the browser demo in `www/`. Every export returns
//! a JSON string so the page needs no generated type glue.

use serde_json::{json, Value};
use treecycle::format::parse_tree;
use treecycle::generate::{
    random_bipartite_noise, random_graph, random_tree, tree_of_shape, TreeShape,
};
use treecycle::oracle::{self, DEFAULT_ENUM_CAP};
use treecycle::witness::{find_witness_logged, Mode, WitnessError, WitnessResult};
use treecycle::{Graph, Tree};
use wasm_bindgen::prelude::wasm_bindgen;

/// Orders up to this are small enough to fall back on exhaustive search.
const FALLBACK_MAX_ORDER: usize = 40;

fn error(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn edges(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().map(|(a, b)| [a, b]).collect()
}

fn tree_edges(t: &Tree) -> Vec<[usize; 2]> {
    t.edges().into_iter().map(|(a, b)| [a, b]).collect()
}

fn demo_graph(kind: &str, order: usize, param: f64, seed: u64) -> Result<Graph, String> {
    match kind {
        "random" => random_graph(order, param, seed).map_err(|e| e.to_string()),
        "planted" => random_bipartite_noise(order, param, seed).map_err(|e| e.to_string()),
        "complete" => Ok(Graph::complete(order)),
        "empty" => Ok(Graph::empty(order)),
        other => Err(format!("unknown graph kind {other:?}")),
    }
}

fn witness_json(w: &WitnessResult, t: &Tree) -> Value {
    match w {
        WitnessResult::Cycle(c) => {
            let cycle_edges: Vec<[usize; 2]> =
                (0..c.len()).map(|i| [c[i], c[(i + 1) % c.len()]]).collect();
            json!({ "type": "cycle", "vertices": c, "edges": cycle_edges })
        }
        WitnessResult::Tree(e) => {
            let image: Vec<[usize; 2]> = t
                .edges()
                .into_iter()
                .map(|(a, b)| [e.get(a).unwrap(), e.get(b).unwrap()])
                .collect();
            let vertices: Vec<usize> = e.pairs().map(|(_, h)| h).collect();
            json!({ "type": "tree_embedding", "map": e.pairs().collect::<Vec<_>>(), "vertices": vertices, "edges": image })
        }
    }
}

/// Generates a graph on `2n - 1` vertices and an `n`-vertex tree, runs the
/// witness engine, and returns the graph with the witness to highlight.
///
/// `kind` is `random` (edge probability `param`), `planted` (near
/// `K_{n-1,n-1}` with flip probability `param`), `complete` or `empty`.
#[wasm_bindgen]
pub fn witness_demo(n: usize, m: usize, kind: &str, param: f64, shape: &str, seed: u64) -> String {
    if n == 0 {
        return error("n must be at least 1");
    }
    let shape: TreeShape = match shape.parse() {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let order = 2 * n - 1;
    let g = match demo_graph(kind, order, param, seed) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let t = tree_of_shape(shape, n, seed);
    let (result, log) = find_witness_logged(&g, &t, m, Mode::Lenient);
    let (witness, source) = match result {
        Ok(w) => (w, "engine"),
        Err(WitnessError::BoundsNotMet { .. }) if order <= FALLBACK_MAX_ORDER => {
            match oracle::contains_cycle_of_length(&g, m) {
                Some(c) => (WitnessResult::Cycle(c), "exhaustive search"),
                None => match oracle::contains_tree(&g.complement(), &t) {
                    Some(e) => (WitnessResult::Tree(e), "exhaustive search"),
                    None => return error("no witness exists for this graph"),
                },
            }
        }
        Err(e) => return error(e),
    };
    json!({
        "order": order,
        "edges": edges(&g),
        "tree_edges": tree_edges(&t),
        "witness": witness_json(&witness, &t),
        "source": source,
        "threshold_checks": log.len(),
    })
    .to_string()
}

/// Exhaustive `R(T, C_m)` for a tree given as an edge list.
#[wasm_bindgen]
pub fn ramsey_brute(tree: &str, m: usize, max_n: usize) -> String {
    let t = match parse_tree(tree) {
        Ok(t) => t,
        Err(e) => return error(e),
    };
    if m < 3 || m.is_multiple_of(2) {
        return error(format!("cycle length must be odd and at least 3, got {m}"));
    }
    match oracle::ramsey_number_brute(&t, m, max_n, DEFAULT_ENUM_CAP) {
        Ok(r) => json!({ "tree_order": t.order(), "cycle_length": m, "ramsey_number": r, "formula": 2 * t.order() - 1 })
            .to_string(),
        Err(e) => error(e),
    }
}

/// Checks that `K_{n-1,n-1}` has no `C_m` and that its complement misses a
/// random `n`-vertex tree.
#[wasm_bindgen]
pub fn extremal_check(n: usize, m: usize, seed: u64) -> String {
    if m < 3 || m.is_multiple_of(2) {
        return error(format!("cycle length must be odd and at least 3, got {m}"));
    }
    let g = match oracle::extremal_bipartite(n) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let t = random_tree(n, seed);
    json!({
        "order": g.order(),
        "edges": edges(&g),
        "tree_edges": tree_edges(&t),
        "lower_bound_holds": oracle::check_lower_bound_witness(&g, &t, m),
    })
    .to_string()
}
