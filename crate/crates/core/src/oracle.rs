//! Brute-force reference implementations and exhaustive enumeration of small
//! instances. Everything here favours obviousness over speed.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra::odometer;
use crate::error::{Error, Result};
use crate::homomorphisms::{hom_equivalent, hom_exists, Semiring};
use crate::limits::{saturating_pow, Limits};
use crate::query_algorithms::{left_profile, CqFormula, LeftAlgorithm, RightAlgorithm};
use crate::structures::{Girth, Instance, Schema, Tuple};

/// Number of homomorphisms `a → b`, found by trying every map from the
/// elements of `a` to the elements of `b`.
pub fn hom_count_bruteforce(a: &Instance, b: &Instance, limits: &Limits) -> Result<u64> {
    count_maps(a, b, limits, false)
}

/// Number of homomorphisms `a → b` that are onto the elements of `b`, by
/// the same exhaustive enumeration.
pub fn surjective_count_bruteforce(a: &Instance, b: &Instance, limits: &Limits) -> Result<u64> {
    count_maps(a, b, limits, true)
}

fn count_maps(a: &Instance, b: &Instance, limits: &Limits, onto: bool) -> Result<u64> {
    if a.schema() != b.schema() {
        return Err(Error::SchemaMismatch);
    }
    let sources: Vec<&String> = a.elements().iter().collect();
    let targets: Vec<&String> = b.elements().iter().collect();
    limits.check_functions(
        "candidate maps",
        saturating_pow(targets.len() as u128, sources.len()),
    )?;
    let mut count = 0u64;
    for choice in odometer(&vec![targets.len(); sources.len()]) {
        let image: BTreeMap<&str, &String> = sources
            .iter()
            .zip(&choice)
            .map(|(s, &t)| (s.as_str(), targets[t]))
            .collect();
        let preserved = a.facts().all(|(relation, tuple)| {
            let mapped: Vec<String> = tuple.iter().map(|e| image[e.as_str()].clone()).collect();
            b.has_fact(relation, &mapped)
        });
        if !preserved {
            continue;
        }
        if onto && choice.iter().collect::<BTreeSet<_>>().len() != targets.len() {
            continue;
        }
        count += 1;
    }
    Ok(count)
}

/// Girth by exhaustive search for simple cycles in the incidence multigraph.
/// Nodes are elements and facts; a cycle of `2n` incidence edges has length
/// `n`.
pub fn girth_bruteforce(instance: &Instance) -> Girth {
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Node<'a> {
        Element(&'a str),
        Fact(&'a str, &'a Tuple),
    }
    let mut edges: Vec<(Node, Node)> = Vec::new();
    for (relation, tuple) in instance.facts() {
        for element in tuple {
            edges.push((Node::Element(element), Node::Fact(relation, tuple)));
        }
    }

    fn walk<'a>(
        edges: &[(Node<'a>, Node<'a>)],
        start: Node<'a>,
        at: Node<'a>,
        last_edge: usize,
        visited: &mut Vec<Node<'a>>,
        best: &mut Option<usize>,
    ) {
        for (id, &(x, y)) in edges.iter().enumerate() {
            if id == last_edge {
                continue;
            }
            let next = if x == at {
                y
            } else if y == at {
                x
            } else {
                continue;
            };
            let length = visited.len();
            if next == start {
                *best = Some(best.map_or(length, |b| b.min(length)));
            } else if !visited.contains(&next) && best.is_none_or(|b| length + 1 < b) {
                visited.push(next);
                walk(edges, start, next, id, visited, best);
                visited.pop();
            }
        }
    }

    let mut best = None;
    for element in instance.elements() {
        let start = Node::Element(element);
        walk(
            &edges,
            start,
            start,
            usize::MAX,
            &mut vec![start],
            &mut best,
        );
    }
    match best {
        Some(len) => Girth::Finite(len / 2),
        None => Girth::Infinite,
    }
}

/// Largest element count for which canonical forms try every permutation.
const MAX_CANONICAL_ELEMENTS: usize = 8;

/// An isomorphism invariant that also separates non-isomorphic instances:
/// the element count and the lexicographically least relabelled fact list
/// over all orderings of the elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    elements: usize,
    facts: Vec<(String, Vec<usize>)>,
}

pub fn canonical_form(instance: &Instance) -> Result<CanonicalForm> {
    let names: Vec<&String> = instance.elements().iter().collect();
    let n = names.len();
    if n > MAX_CANONICAL_ELEMENTS {
        return Err(Error::SizeCap {
            what: "canonical form elements",
            requested: n as u128,
            limit: MAX_CANONICAL_ELEMENTS as u128,
        });
    }
    let index: BTreeMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_str(), i))
        .collect();
    let facts: Vec<(&str, Vec<usize>)> = instance
        .facts()
        .map(|(r, t)| (r, t.iter().map(|e| index[e.as_str()]).collect()))
        .collect();

    let mut best: Option<Vec<(String, Vec<usize>)>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut relabelled: Vec<(String, Vec<usize>)> = facts
            .iter()
            .map(|(r, t)| (r.to_string(), t.iter().map(|&e| perm[e]).collect()))
            .collect();
        relabelled.sort();
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(CanonicalForm {
        elements: n,
        facts: best.unwrap_or_default(),
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every instance over `schema` with `1..=max_elements` elements named
/// `v0, v1, …`, one per subset of possible facts. Instances are ordered by
/// element count, then by the bitmask of present facts, where bit `i`
/// stands for the `i`-th possible fact in (relation, tuple) order. With
/// `dedup`, only the first member of each isomorphism class is kept.
pub fn enumerate_instances(
    schema: &Schema,
    max_elements: usize,
    dedup: bool,
    limits: &Limits,
) -> Result<Vec<Instance>> {
    let mut total = 0u128;
    for n in 1..=max_elements {
        let possible: u128 = schema
            .relations()
            .map(|(_, arity)| saturating_pow(n as u128, arity))
            .fold(0, u128::saturating_add);
        total = total.saturating_add(saturating_pow(2, possible.min(127) as usize));
    }
    limits.check_functions("enumerated instances", total)?;

    let mut out = Vec::new();
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    for n in 1..=max_elements {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut possible: Vec<(&str, Vec<String>)> = Vec::new();
        for (relation, arity) in schema.relations() {
            for idx in odometer(&vec![n; arity]) {
                possible.push((relation, idx.iter().map(|&i| names[i].clone()).collect()));
            }
        }
        for mask in 0u64..1 << possible.len() {
            let facts = possible
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, (r, t))| (*r, t.clone()));
            let instance = Instance::new(schema, names.iter().cloned(), facts)?;
            if dedup && !seen.insert(canonical_form(&instance)?) {
                continue;
            }
            out.push(instance);
        }
    }
    Ok(out)
}

/// The zero-element instance followed by [`enumerate_instances`] with
/// deduplication.
pub fn universe(schema: &Schema, max_elements: usize, limits: &Limits) -> Result<Vec<Instance>> {
    let mut all = vec![Instance::empty(schema)];
    all.extend(enumerate_instances(schema, max_elements, true, limits)?);
    Ok(all)
}

/// A serializable description of a class of instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClassPredicate {
    /// Instances with a homomorphism to the template.
    Csp {
        template: Instance,
    },
    /// Instances homomorphically equivalent to the given one.
    Homtype {
        instance: Instance,
    },
    Left {
        algorithm: LeftAlgorithm,
    },
    Right {
        algorithm: RightAlgorithm,
    },
    Formula {
        formula: CqFormula,
    },
    /// Instances isomorphic to one of the listed ones.
    Members {
        instances: Vec<Instance>,
    },
}

impl ClassPredicate {
    pub fn contains(&self, d: &Instance) -> Result<bool> {
        match self {
            ClassPredicate::Csp { template } => hom_exists(d, template),
            ClassPredicate::Homtype { instance } => hom_equivalent(d, instance),
            ClassPredicate::Left { algorithm } => algorithm.eval(d),
            ClassPredicate::Right { algorithm } => algorithm.eval(d),
            ClassPredicate::Formula { formula } => formula.holds_in(d),
            ClassPredicate::Members { instances } => {
                for m in instances {
                    if m.is_isomorphic(d)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// The first pair `(P, Q)` of [`universe`] members, ordered by the index of
/// `P` and then of `Q`, with `P` in the class, `Q` outside it and equal left
/// profiles over `queries`.
pub fn find_collision_bruteforce(
    queries: &[Instance],
    class: &ClassPredicate,
    bound: usize,
    semiring: Semiring,
    limits: &Limits,
) -> Result<Option<(Instance, Instance)>> {
    let schema = queries
        .first()
        .ok_or(Error::EmptyList("query list"))?
        .schema();
    let all = universe(schema, bound, limits)?;
    let mut inside = Vec::new();
    let mut outside: Vec<(Vec<u64>, usize)> = Vec::new();
    for (i, d) in all.iter().enumerate() {
        let profile = left_profile(queries, d, semiring)?.values;
        if class.contains(d)? {
            inside.push((profile, i));
        } else {
            outside.push((profile, i));
        }
    }
    for (profile, p) in &inside {
        if let Some((_, q)) = outside.iter().find(|(other, _)| other == profile) {
            return Ok(Some((all[*p].clone(), all[*q].clone())));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn bruteforce_counts() {
        assert_eq!(
            hom_count_bruteforce(&edge(), &edge(), &limits()).unwrap(),
            1
        );
        let empty = Instance::empty(&Schema::binary());
        assert_eq!(hom_count_bruteforce(&empty, &edge(), &limits()).unwrap(), 1);
        let k3 = symmetric_clique(3);
        assert_eq!(hom_count_bruteforce(&k3, &k3, &limits()).unwrap(), 6);
        assert_eq!(
            surjective_count_bruteforce(&path(2), &edge(), &limits()).unwrap(),
            0
        );
        assert_eq!(
            surjective_count_bruteforce(&factless(2), &factless(2), &limits()).unwrap(),
            2
        );
        let tight = Limits {
            max_functions: 10,
            ..Limits::default()
        };
        assert!(matches!(
            hom_count_bruteforce(&factless(3), &factless(3), &tight),
            Err(Error::SizeCap { requested: 27, .. })
        ));
    }

    #[test]
    fn bruteforce_girth() {
        assert_eq!(girth_bruteforce(&loop_()), Girth::Finite(1));
        assert_eq!(girth_bruteforce(&directed_cycle(3)), Girth::Finite(3));
        assert_eq!(girth_bruteforce(&edge()), Girth::Infinite);
        assert_eq!(girth_bruteforce(&symmetric_cycle(4)), Girth::Finite(2));
    }

    #[test]
    fn enumeration_counts() {
        let unary = Schema::new([("R", 1)]).unwrap();
        assert_eq!(
            enumerate_instances(&unary, 1, false, &limits())
                .unwrap()
                .len(),
            2
        );
        let binary = Schema::binary();
        assert_eq!(
            enumerate_instances(&binary, 1, false, &limits())
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            enumerate_instances(&binary, 2, false, &limits())
                .unwrap()
                .len(),
            18
        );
        assert_eq!(
            enumerate_instances(&binary, 2, true, &limits())
                .unwrap()
                .len(),
            12
        );
    }

    #[test]
    fn canonical_forms_identify_isomorphic_instances() {
        let renamed = edge().rename(|e| format!("x{e}"));
        assert_eq!(
            canonical_form(&edge()).unwrap(),
            canonical_form(&renamed).unwrap()
        );
        assert_ne!(
            canonical_form(&edge()).unwrap(),
            canonical_form(&loop_()).unwrap()
        );
        assert_ne!(
            canonical_form(&factless(1)).unwrap(),
            canonical_form(&factless(2)).unwrap()
        );
    }

    #[test]
    fn collision_search_examples() {
        let members = ClassPredicate::Members {
            instances: vec![loop_()],
        };
        let (p, q) = find_collision_bruteforce(&[loop_()], &members, 2, Semiring::Nat, &limits())
            .unwrap()
            .unwrap();
        assert!(p.is_isomorphic(&loop_()).unwrap());
        assert_eq!(q.to_string(), "{R(v0,v0); v1}");

        let has_fact = ClassPredicate::Formula {
            formula: CqFormula::Cq(edge().canonical_query().unwrap()),
        };
        assert_eq!(
            find_collision_bruteforce(&[edge()], &has_fact, 2, Semiring::Bool, &limits()).unwrap(),
            None
        );
        assert_eq!(
            find_collision_bruteforce(&[edge()], &has_fact, 0, Semiring::Bool, &limits()).unwrap(),
            None
        );
    }

    #[test]
    fn predicate_json() {
        let p: ClassPredicate = serde_json::from_str(
            r#"{"kind":"csp","template":{"schema":{"R":2},"facts":[["R","a","a"]]}}"#,
        )
        .unwrap();
        assert!(p.contains(&symmetric_clique(3)).unwrap());
    }
}
