//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treecycle::embeddings::{
    balanced_split, components_without, embed_rooted_forest, peel_to_min_degree,
};
use treecycle::generate::{
    random_bipartite_noise, random_graph, random_tree, tree_of_shape, TreeShape,
};
use treecycle::oracle::{
    check_lower_bound_witness, contains_cycle_of_length, contains_tree, extremal_bipartite,
    ramsey_number_brute, DEFAULT_ENUM_CAP,
};
use treecycle::witness::{
    find_witness_logged, verify_witness, Mode, Relation, ThresholdCheck, WitnessError,
    WitnessResult,
};
use treecycle::{Forest, Graph, Tree, VertexSet};

type Outcome = Result<String, String>;

/// Replay of logged threshold decisions against arbitrary-precision
/// evaluation of the real inequality.
#[derive(Default)]
struct Replay {
    checks: usize,
    discrepancies: Vec<String>,
}

impl Replay {
    fn absorb(&mut self, checks: &[ThresholdCheck]) {
        for c in checks {
            self.checks += 1;
            let truth = c.relation_holds_exactly();
            if truth != c.outcome {
                self.discrepancies.push(format!("{c:?}"));
            }
        }
    }
}

trait ExactReplay {
    fn relation_holds_exactly(&self) -> bool;
}

impl ExactReplay for ThresholdCheck {
    fn relation_holds_exactly(&self) -> bool {
        // lhs ⋈ (offset + coef·√r)/denom  ⟺  denom·lhs − offset ⋈ coef·√r.
        let x = BigInt::from(self.denom) * BigInt::from(self.lhs) - BigInt::from(self.offset);
        let ord =
            compare_with_sqrt_multiple(&x, &BigInt::from(self.coef), &BigUint::from(self.radicand));
        match self.relation {
            Relation::Lt => ord == Ordering::Less,
            Relation::Le => ord != Ordering::Greater,
            Relation::Gt => ord == Ordering::Greater,
            Relation::Ge => ord != Ordering::Less,
        }
    }
}

/// Compares `x` with `c·√r` by bracketing `√r` between decimal
/// approximations of increasing precision.
fn compare_with_sqrt_multiple(x: &BigInt, c: &BigInt, r: &BigUint) -> Ordering {
    let root = r.sqrt();
    if &root * &root == *r {
        return x.cmp(&(c * BigInt::from(root)));
    }
    let mut digits = 20u32;
    loop {
        let scale = BigUint::from(10u32).pow(digits);
        let s = (r * &scale * &scale).sqrt();
        // s/10^d < √r < (s+1)/10^d since r is not a perfect square.
        let lo = c * BigInt::from(s.clone());
        let hi = c * BigInt::from(s + 1u32);
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let scaled = x * BigInt::from(scale);
        if scaled <= lo {
            return Ordering::Less;
        }
        if scaled >= hi {
            return Ordering::Greater;
        }
        digits *= 2;
    }
}

fn criterion_1() -> Outcome {
    let cases = [
        ("R(P_3, C_3)", Tree::path(3), 3, 5),
        ("R(P_4, C_3)", Tree::path(4), 3, 7),
        ("R(K_{1,3}, C_3)", Tree::star(4), 3, 7),
        ("R(P_3, C_5)", Tree::path(3), 5, 5),
    ];
    let mut found = Vec::new();
    for (name, t, m, expected) in cases {
        let r =
            ramsey_number_brute(&t, m, 8, DEFAULT_ENUM_CAP).map_err(|e| format!("{name}: {e}"))?;
        if r != expected {
            return Err(format!("{name} = {r}, expected {expected}"));
        }
        found.push(format!("{name} = {r}"));
    }
    Ok(found.join(", "))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for n in [5usize, 50, 251] {
        let g = extremal_bipartite(n).map_err(|e| e.to_string())?;
        for i in 0..20u64 {
            let t = random_tree(n, 1000 * n as u64 + i);
            for m in [3usize, 5, 7, 9, 11] {
                if !check_lower_bound_witness(&g, &t, m) {
                    return Err(format!(
                        "K_{{n-1,n-1}} fails for n = {n}, m = {m}, tree seed {i}"
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, m, tree) combinations"))
}

/// Graph `i` of the totality mix on `order` vertices.
fn totality_graph(i: usize, order: usize, seed: u64) -> (String, Graph) {
    match i {
        0 => ("complete".into(), Graph::complete(order)),
        1 => ("empty".into(), Graph::empty(order)),
        _ => match (i - 2) % 7 {
            k @ 0..=3 => {
                let p = [0.02, 0.1, 0.5, 0.9][k];
                (format!("G(p={p})"), random_graph(order, p, seed).unwrap())
            }
            k => {
                let flip = [0.0, 0.01, 0.05][k - 4];
                (
                    format!("planted(flip={flip})"),
                    random_bipartite_noise(order, flip, seed).unwrap(),
                )
            }
        },
    }
}

fn totality_tree(j: usize, n: usize, seed: u64) -> Tree {
    let shape = match j {
        0 => TreeShape::Path,
        1 => TreeShape::Star,
        2 => TreeShape::Caterpillar,
        _ => TreeShape::Random,
    };
    tree_of_shape(shape, n, seed)
}

fn criterion_3(replay: &mut Replay) -> Outcome {
    let mut summary = Vec::new();
    for m in [5usize, 7] {
        let n = 50 * m;
        let order = 2 * n - 1;
        let start = Instant::now();
        let (mut cycles, mut trees) = (0, 0);
        for i in 0..1000 {
            let (kind, g) = totality_graph(i, order, 7919 * m as u64 + i as u64);
            for j in 0..10 {
                let t = totality_tree(j, n, 104_729 * i as u64 + j as u64);
                let (result, log) = find_witness_logged(&g, &t, m, Mode::Strict);
                replay.absorb(log.checks());
                let w =
                    result.map_err(|e| format!("m = {m}, graph {i} ({kind}), tree {j}: {e}"))?;
                verify_witness(&g, &t, m, &w)
                    .map_err(|e| format!("m = {m}, graph {i}, tree {j}: {e}"))?;
                if w.is_cycle() {
                    cycles += 1;
                } else {
                    trees += 1;
                }
            }
        }
        summary.push(format!(
            "m = {m}: {cycles} cycles + {trees} trees in {:.1?}",
            start.elapsed()
        ));
    }
    Ok(summary.join("; "))
}

fn random_forest(rng: &mut ChaCha8Rng, k: usize) -> Forest {
    let t = random_tree(k, rng.gen());
    let cut = rng.gen_range(0.0..0.6);
    Forest::from_edges(k, t.edges().into_iter().filter(|_| !rng.gen_bool(cut))).unwrap()
}

fn host_with_min_degree(rng: &mut ChaCha8Rng, order: usize, delta: usize) -> Graph {
    let mut g = random_graph(order, rng.gen_range(0.0..1.0), rng.gen()).unwrap();
    for v in 0..order {
        while g.degree(v) < delta {
            let w = rng.gen_range(0..order);
            if w != v {
                g.add_edge(v, w);
            }
        }
    }
    g
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);

    let mut peeled = 0;
    while peeled < 10_000 {
        let order = rng.gen_range(3..60);
        let g = random_graph(order, rng.gen_range(0.1..1.0), rng.gen()).unwrap();
        let kmax = g.edge_count() / order;
        if kmax == 0 {
            continue;
        }
        let k = rng.gen_range(1..=kmax);
        let (core, back) = peel_to_min_degree(&g, k);
        if core.order() < 2 * k + 1 {
            return Err(format!(
                "peeling with k = {k} left {} vertices of {order}",
                core.order()
            ));
        }
        if core.min_degree().unwrap_or(0) < k {
            return Err(format!("core has minimum degree below {k}"));
        }
        for (a, b) in core.edges() {
            if !g.has_edge(back[a], back[b]) {
                return Err("core is not a subgraph".into());
            }
        }
        peeled += 1;
    }

    for i in 0..10_000 {
        let k = rng.gen_range(1..15);
        let f = random_forest(&mut rng, k);
        let order = k + rng.gen_range(0..20);
        let host = host_with_min_degree(&mut rng, order, k - 1);
        let comps = f.components();
        let roots: Vec<usize> = comps.iter().map(|c| c[rng.gen_range(0..c.len())]).collect();
        let mut pool: Vec<usize> = (0..order).collect();
        let mut targets = Vec::new();
        for _ in 0..roots.len() {
            targets.push(pool.swap_remove(rng.gen_range(0..pool.len())));
        }
        let e = embed_rooted_forest(&f, &roots, &host, &targets)
            .map_err(|e| format!("forest instance {i}: {e}"))?;
        e.validate(f.edges(), &host)
            .map_err(|e| format!("forest instance {i}: {e}"))?;
        if roots
            .iter()
            .zip(&targets)
            .any(|(&r, &t)| e.get(r) != Some(t))
        {
            return Err(format!("forest instance {i}: root not on its target"));
        }
    }

    for i in 0..1000 {
        let n = rng.gen_range(3..=300);
        let t = random_tree(n, rng.gen());
        let s = balanced_split(&t).map_err(|e| format!("split {i}: {e}"))?;
        check_split(&t, s.pivot, &s.part_k, &s.part_h)
            .map_err(|e| format!("split {i} (n = {n}): {e}"))?;
    }
    Ok("10000 peelings, 10000 forest embeddings, 1000 splits".into())
}

fn check_split(t: &Tree, pivot: usize, k: &VertexSet, h: &VertexSet) -> Result<(), String> {
    let n = t.order();
    if k.contains(pivot) || h.contains(pivot) || !k.is_disjoint(h) || k.len() + h.len() != n - 1 {
        return Err("parts do not partition the non-pivot vertices".into());
    }
    for (a, b) in t.edges() {
        if a != pivot && b != pivot && k.contains(a) != k.contains(b) {
            return Err(format!("edge {a}-{b} crosses the parts"));
        }
    }
    for (_, comp) in components_without(t, pivot) {
        if comp.iter().any(|&v| k.contains(v) != k.contains(comp[0])) {
            return Err(format!(
                "component of {} is split between the parts",
                comp[0]
            ));
        }
    }
    for (name, part) in [("K", k), ("H", h)] {
        if 3 * part.len() < n - 1 || 3 * part.len() > 2 * (n - 1) {
            return Err(format!(
                "|{name}| = {} outside [(n-1)/3, 2(n-1)/3] for n = {n}",
                part.len()
            ));
        }
    }
    Ok(())
}

fn criterion_5(replay: &mut Replay) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut agreed, mut bounds, mut cycles) = (0, 0, 0);
    while agreed < 500 {
        let n = rng.gen_range(2..=20);
        let m = 2 * rng.gen_range(1..=4) + 1;
        let order = 2 * n - 1;
        let g = if rng.gen_bool(0.3) {
            random_bipartite_noise(order, rng.gen_range(0.0..0.1), rng.gen()).unwrap()
        } else {
            random_graph(order, rng.gen_range(0.0..1.0), rng.gen()).unwrap()
        };
        let t = random_tree(n, rng.gen());
        let (result, log) = find_witness_logged(&g, &t, m, Mode::Lenient);
        replay.absorb(log.checks());
        match result {
            Ok(WitnessResult::Cycle(_)) => {
                if contains_cycle_of_length(&g, m).is_none() {
                    return Err(format!(
                        "engine found a {m}-cycle the oracle cannot (n = {n})"
                    ));
                }
                cycles += 1;
            }
            Ok(WitnessResult::Tree(_)) => {
                if contains_tree(&g.complement(), &t).is_none() {
                    return Err(format!(
                        "engine embedded a tree the oracle cannot (n = {n}, m = {m})"
                    ));
                }
            }
            Err(WitnessError::BoundsNotMet { .. }) => {
                bounds += 1;
                continue;
            }
            Err(e) => return Err(format!("n = {n}, m = {m}: {e}")),
        }
        agreed += 1;
    }
    Ok(format!(
        "{agreed} agreements ({cycles} cycles), {bounds} runs skipped with unmet bounds"
    ))
}

fn criterion_6(replay: &mut Replay) -> Outcome {
    // Extra coverage at small n, where thresholds sit close to their limits.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..2000 {
        let n = rng.gen_range(5..=40);
        let order = 2 * n - 1;
        let g = if rng.gen_bool(0.5) {
            random_bipartite_noise(order, rng.gen_range(0.0..0.2), rng.gen()).unwrap()
        } else {
            random_graph(order, rng.gen_range(0.0..1.0), rng.gen()).unwrap()
        };
        let (_, log) = find_witness_logged(&g, &random_tree(n, rng.gen()), 5, Mode::Lenient);
        replay.absorb(log.checks());
    }
    let floats = float_tokens_in_engine();
    if !floats.is_empty() {
        return Err(format!(
            "floating point in the decision path: {}",
            floats.join(", ")
        ));
    }
    if replay.checks == 0 {
        return Err("no threshold decisions were logged".into());
    }
    match replay.discrepancies.first() {
        None => Ok(format!(
            "{} decisions replayed, 0 discrepancies",
            replay.checks
        )),
        Some(d) => Err(format!(
            "{} discrepancies, first: {d}",
            replay.discrepancies.len()
        )),
    }
}

/// Non-test source lines of the engine mentioning `f32`/`f64`.
fn float_tokens_in_engine() -> Vec<String> {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/src");
    let files = [
        "witness/mod.rs",
        "witness/claims.rs",
        "witness/threshold.rs",
        "embeddings.rs",
    ];
    let mut hits = Vec::new();
    for f in files {
        let text =
            std::fs::read_to_string(format!("{root}/{f}")).expect("engine source is readable");
        let body = text.split("#[cfg(test)]").next().unwrap();
        for (i, line) in body.lines().enumerate() {
            let code = line.split("//").next().unwrap();
            if code.contains("f64") || code.contains("f32") {
                hits.push(format!("{f}:{}", i + 1));
            }
        }
    }
    hits
}

fn main() {
    let mut replay = Replay::default();
    let mut failed = false;
    let mut report = |id: usize, name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS criterion {id} ({name}): {detail}"),
        Err(detail) => {
            failed = true;
            println!("FAIL criterion {id} ({name}): {detail}");
        }
    };
    report(1, "exact small Ramsey numbers", criterion_1());
    report(2, "extremal lower bound", criterion_2());
    report(3, "constructive totality", criterion_3(&mut replay));
    report(4, "lemma suites", criterion_4());
    report(5, "oracle agreement", criterion_5(&mut replay));
    report(6, "exact threshold replay", criterion_6(&mut replay));
    if failed {
        std::process::exit(1);
    }
}
