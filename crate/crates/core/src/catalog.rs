//! Small named instances over the binary schema `{R/2}`.

use crate::structures::{Instance, Schema};

fn binary<'a>(facts: impl IntoIterator<Item = (&'a str, &'a str)>) -> Instance {
    Instance::from_facts(
        &Schema::binary(),
        facts
            .into_iter()
            .map(|(a, b)| ("R", vec![a.to_owned(), b.to_owned()])),
    )
    .expect("well-formed binary facts")
}

fn v(i: usize) -> String {
    format!("v{i}")
}

/// `{R(a,b)}`
pub fn edge() -> Instance {
    binary([("a", "b")])
}

/// `{R(a,a)}`, the single reflexive node.
pub fn loop_() -> Instance {
    binary([("a", "a")])
}

/// Directed path with `n` edges `v0 → v1 → … → vn`.
pub fn path(n: usize) -> Instance {
    let names: Vec<String> = (0..=n).map(v).collect();
    binary((0..n).map(|i| (names[i].as_str(), names[i + 1].as_str())))
}

/// Directed cycle of length `n ≥ 1`.
pub fn directed_cycle(n: usize) -> Instance {
    assert!(n >= 1, "cycle length must be positive");
    let names: Vec<String> = (0..n).map(v).collect();
    binary((0..n).map(|i| (names[i].as_str(), names[(i + 1) % n].as_str())))
}

/// Symmetric cycle (both orientations of every edge), `n ≥ 3`.
pub fn symmetric_cycle(n: usize) -> Instance {
    assert!(n >= 3, "symmetric cycles need at least three vertices");
    let names: Vec<String> = (0..n).map(v).collect();
    binary((0..n).flat_map(|i| {
        let (a, b) = (names[i].as_str(), names[(i + 1) % n].as_str());
        [(a, b), (b, a)]
    }))
}

/// Symmetric irreflexive clique on `k ≥ 2` vertices.
pub fn symmetric_clique(k: usize) -> Instance {
    assert!(k >= 2, "cliques need at least two vertices");
    let names: Vec<String> = (0..k).map(v).collect();
    binary(
        (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| (names[i].as_str(), names[j].as_str()))
            .collect::<Vec<_>>(),
    )
}

/// `n` elements and no facts.
pub fn factless(n: usize) -> Instance {
    Instance::empty(&Schema::binary()).with_elements((0..n).map(v))
}
