#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use homquery::homomorphisms::find_homomorphism;
use homquery::structures::{Instance, Schema};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random instance on `1..=max_elements` elements named `v0, v1, …`; each
/// possible fact is present with probability `density`.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    schema: &Schema,
    max_elements: usize,
    density: f64,
) -> Instance {
    let n = rng.gen_range(1..=max_elements);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut facts = Vec::new();
    for (relation, arity) in schema.relations() {
        let mut idx = vec![0usize; arity];
        loop {
            if rng.gen_bool(density) {
                facts.push((
                    relation.to_owned(),
                    idx.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                ));
            }
            let mut k = arity;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    Instance::new(schema, names, facts).unwrap()
}

pub fn random_connected(
    rng: &mut ChaCha8Rng,
    schema: &Schema,
    max_elements: usize,
    density: f64,
) -> Instance {
    loop {
        let x = random_instance(rng, schema, max_elements, density);
        if x.is_connected() {
            return x;
        }
    }
}

/// Random instance in which every element occurs in some fact.
pub fn random_without_isolated(
    rng: &mut ChaCha8Rng,
    schema: &Schema,
    max_elements: usize,
    density: f64,
) -> Instance {
    loop {
        let x = random_instance(rng, schema, max_elements, density);
        if x.isolated_elements().is_empty() {
            return x;
        }
    }
}

fn indexed(x: &Instance) -> (Vec<String>, Vec<(String, Vec<usize>)>) {
    let names: Vec<String> = x.elements().iter().cloned().collect();
    let index: BTreeMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_str(), i))
        .collect();
    let facts = x
        .facts()
        .map(|(r, t)| (r.to_owned(), t.iter().map(|e| index[e.as_str()]).collect()))
        .collect();
    (names, facts)
}

/// Counts homomorphisms by assigning source elements one at a time in
/// sorted order and rejecting as soon as a fully assigned fact has no image.
pub fn naive_count(source: &Instance, target: &Instance) -> u64 {
    let (names, facts) = indexed(source);
    let n = names.len();
    let targets: Vec<String> = target.elements().iter().cloned().collect();
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (f, (_, t)) in facts.iter().enumerate() {
        if let Some(&last) = t.iter().max() {
            ready[last].push(f);
        }
    }
    let mut assignment = vec![0usize; n];

    fn go(
        depth: usize,
        assignment: &mut Vec<usize>,
        ready: &[Vec<usize>],
        facts: &[(String, Vec<usize>)],
        targets: &[String],
        target: &Instance,
    ) -> u64 {
        if depth == assignment.len() {
            return 1;
        }
        let mut total = 0;
        for choice in 0..targets.len() {
            assignment[depth] = choice;
            let ok = ready[depth].iter().all(|&f| {
                let (r, t) = &facts[f];
                let image: Vec<String> =
                    t.iter().map(|&e| targets[assignment[e]].clone()).collect();
                target.has_fact(r, &image)
            });
            if ok {
                total += go(depth + 1, assignment, ready, facts, targets, target);
            }
        }
        total
    }
    go(0, &mut assignment, &ready, &facts, &targets, target)
}

/// The instance renamed by element rank, so that copies made by tagging
/// share a key.
fn rank_key(x: &Instance) -> String {
    let rank: BTreeMap<&str, usize> = x
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_str(), i))
        .collect();
    x.rename(|e| rank[e].to_string()).to_json()
}

/// `hom(source, target)` for connected `source`, summed over the connected
/// components of `target`, each counted with [`naive_count`].
pub struct ComponentCounter {
    memo: HashMap<(String, String), u64>,
}

impl ComponentCounter {
    pub fn new() -> Self {
        ComponentCounter {
            memo: HashMap::new(),
        }
    }

    pub fn count(&mut self, source: &Instance, target: &Instance) -> u64 {
        assert!(
            source.is_connected(),
            "component counting needs a connected source"
        );
        let key_s = source.to_json();
        target
            .connected_components()
            .iter()
            .map(|part| {
                let key = (key_s.clone(), rank_key(part));
                *self
                    .memo
                    .entry(key)
                    .or_insert_with(|| naive_count(source, part))
            })
            .sum()
    }
}

/// Whether `map` sends every fact of `source` to a fact of `target`.
pub fn is_homomorphism(
    map: &BTreeMap<String, String>,
    source: &Instance,
    target: &Instance,
) -> bool {
    source
        .elements()
        .iter()
        .all(|e| map.get(e).is_some_and(|v| target.contains_element(v)))
        && source.facts().all(|(r, t)| {
            let image: Vec<String> = t.iter().map(|e| map[e].clone()).collect();
            target.has_fact(r, &image)
        })
}

/// A homomorphism found by the library, checked fact by fact.
pub fn certified_hom(source: &Instance, target: &Instance) -> bool {
    match find_homomorphism(source, target).unwrap() {
        Some(h) => is_homomorphism(&h.map, source, target),
        None => false,
    }
}
