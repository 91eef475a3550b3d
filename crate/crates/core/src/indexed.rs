//! Integer-indexed views of instances used by the search routines.

use std::collections::HashSet;

use crate::structures::Instance;

/// Source side: elements are `0..n` in sorted order, facts carry the schema
/// index of their relation.
pub(crate) struct Indexed {
    pub n: usize,
    pub facts: Vec<(usize, Vec<u32>)>,
    /// Fact indices touching each element.
    pub incident: Vec<Vec<usize>>,
}

impl Indexed {
    pub fn new(instance: &Instance) -> Self {
        let rank: std::collections::HashMap<&str, u32> = instance
            .elements()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i as u32))
            .collect();
        let n = instance.element_count();
        let facts: Vec<(usize, Vec<u32>)> = instance
            .facts()
            .map(|(relation, tuple)| {
                let r = instance
                    .schema()
                    .index_of(relation)
                    .expect("declared relation");
                (r, tuple.iter().map(|e| rank[e.as_str()]).collect())
            })
            .collect();
        let mut incident = vec![Vec::new(); n];
        for (f, (_, tuple)) in facts.iter().enumerate() {
            let mut seen: Vec<u32> = Vec::with_capacity(tuple.len());
            for &e in tuple {
                if !seen.contains(&e) {
                    seen.push(e);
                    incident[e as usize].push(f);
                }
            }
        }
        Indexed { n, facts, incident }
    }

    /// Greedy order: highest fact-degree first, then repeatedly the element
    /// sharing the most facts with those already placed (degree breaks ties).
    pub fn search_order(&self) -> Vec<usize> {
        let degree: Vec<usize> = self.incident.iter().map(Vec::len).collect();
        let mut placed = vec![false; self.n];
        let mut links = vec![0usize; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let next = (0..self.n)
                .filter(|&v| !placed[v])
                .max_by(|&a, &b| {
                    (links[a], degree[a])
                        .cmp(&(links[b], degree[b]))
                        .then(b.cmp(&a))
                })
                .expect("unplaced element remains");
            placed[next] = true;
            order.push(next);
            for &f in &self.incident[next] {
                for &e in &self.facts[f].1 {
                    if !placed[e as usize] {
                        links[e as usize] += 1;
                    }
                }
            }
        }
        order
    }
}

/// Target side: membership sets and per-position lookup tables.
pub(crate) struct TargetIndex {
    pub n: usize,
    tuples: Vec<Vec<Vec<u32>>>,
    members: Vec<HashSet<Vec<u32>>>,
    /// `by_position[relation][position][value]` lists tuple indices.
    by_position: Vec<Vec<Vec<Vec<u32>>>>,
}

impl TargetIndex {
    pub fn new(instance: &Instance) -> Self {
        let indexed = Indexed::new(instance);
        let schema = instance.schema();
        let n = indexed.n;
        let mut tuples: Vec<Vec<Vec<u32>>> = vec![Vec::new(); schema.len()];
        for (r, tuple) in indexed.facts {
            tuples[r].push(tuple);
        }
        let members = tuples
            .iter()
            .map(|ts| ts.iter().cloned().collect())
            .collect();
        let by_position = schema
            .relations()
            .zip(&tuples)
            .map(|((_, arity), ts)| {
                let mut table = vec![vec![Vec::new(); n]; arity];
                for (i, t) in ts.iter().enumerate() {
                    for (p, &v) in t.iter().enumerate() {
                        table[p][v as usize].push(i as u32);
                    }
                }
                table
            })
            .collect();
        TargetIndex {
            n,
            tuples,
            members,
            by_position,
        }
    }

    fn contains(&self, relation: usize, tuple: &[u32]) -> bool {
        self.members[relation].contains(tuple)
    }
}

const UNSET: u32 = u32::MAX;

/// Backtracking homomorphism search with forward checking.
pub(crate) struct HomSearch<'a> {
    source: &'a Indexed,
    target: &'a TargetIndex,
    order: Vec<usize>,
    domains: Vec<Vec<u32>>,
    assignment: Vec<u32>,
    scratch: Vec<u32>,
    found: u64,
    overflowed: bool,
    stopped: bool,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a Indexed, target: &'a TargetIndex) -> Self {
        let domains = (0..source.n)
            .map(|v| {
                (0..target.n as u32)
                    .filter(|&x| {
                        source.incident[v].iter().all(|&f| {
                            let (r, tuple) = &source.facts[f];
                            tuple.iter().enumerate().all(|(p, &e)| {
                                e as usize != v || !target.by_position[*r][p][x as usize].is_empty()
                            })
                        })
                    })
                    .collect()
            })
            .collect();
        HomSearch {
            source,
            target,
            order: source.search_order(),
            domains,
            assignment: vec![UNSET; source.n],
            scratch: Vec::new(),
            found: 0,
            overflowed: false,
            stopped: false,
        }
    }

    pub fn exists(&mut self) -> bool {
        self.for_each(|_| true);
        self.found > 0
    }

    /// Number of homomorphisms, `None` on overflow.
    pub fn count(&mut self) -> Option<u64> {
        self.for_each(|_| false);
        (!self.overflowed).then_some(self.found)
    }

    /// Calls `visit` on every homomorphism until it returns `true`.
    pub fn for_each(&mut self, mut visit: impl FnMut(&[u32]) -> bool) {
        self.found = 0;
        self.overflowed = false;
        self.stopped = false;
        self.descend(0, &mut visit);
    }

    fn descend(&mut self, depth: usize, visit: &mut dyn FnMut(&[u32]) -> bool) {
        if depth == self.order.len() {
            match self.found.checked_add(1) {
                Some(n) => self.found = n,
                None => self.overflowed = true,
            }
            self.stopped = visit(&self.assignment) || self.overflowed;
            return;
        }
        let v = self.order[depth];
        for i in 0..self.domains[v].len() {
            self.assignment[v] = self.domains[v][i];
            if self.consistent(v) {
                self.descend(depth + 1, visit);
                if self.stopped {
                    break;
                }
            }
        }
        self.assignment[v] = UNSET;
    }

    fn consistent(&mut self, v: usize) -> bool {
        let source = self.source;
        for &f in &source.incident[v] {
            let (r, tuple) = &source.facts[f];
            self.scratch.clear();
            self.scratch
                .extend(tuple.iter().map(|&e| self.assignment[e as usize]));
            if !self.scratch.contains(&UNSET) {
                if !self.target.contains(*r, &self.scratch) {
                    return false;
                }
                continue;
            }
            let p = tuple
                .iter()
                .position(|&e| e as usize == v)
                .expect("v occurs in fact");
            let x = self.scratch[p] as usize;
            let pattern = &self.scratch;
            let found = self.target.by_position[*r][p][x].iter().any(|&ti| {
                let candidate = &self.target.tuples[*r][ti as usize];
                pattern
                    .iter()
                    .zip(candidate)
                    .all(|(&want, &have)| want == UNSET || want == have)
            });
            if !found {
                return false;
            }
        }
        true
    }
}

/// Per-element invariant used to prune isomorphism candidates.
fn signatures(indexed: &Indexed, arities: &[usize]) -> Vec<Vec<usize>> {
    let offsets: Vec<usize> = arities
        .iter()
        .scan(0, |acc, &a| {
            let start = *acc;
            *acc += a;
            Some(start)
        })
        .collect();
    let width = arities.iter().sum::<usize>() + 1;
    let mut sig = vec![vec![0usize; width]; indexed.n];
    for (r, tuple) in &indexed.facts {
        for (p, &e) in tuple.iter().enumerate() {
            sig[e as usize][offsets[*r] + p] += 1;
        }
        for (i, &e) in tuple.iter().enumerate() {
            if tuple[..i].contains(&e) {
                sig[e as usize][width - 1] += 1;
            }
        }
    }
    sig
}

/// Bijective structure-preserving map between two instances over the same
/// schema.
pub(crate) fn isomorphic(a: &Instance, b: &Instance) -> bool {
    if a.element_count() != b.element_count() {
        return false;
    }
    for (relation, _) in a.schema().relations() {
        if a.relation(relation).count() != b.relation(relation).count() {
            return false;
        }
    }
    let arities: Vec<usize> = a.schema().relations().map(|(_, k)| k).collect();
    let (ia, ib) = (Indexed::new(a), Indexed::new(b));
    let (sa, sb) = (signatures(&ia, &arities), signatures(&ib, &arities));
    let mut sorted_a = sa.clone();
    let mut sorted_b = sb.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return false;
    }
    let target = TargetIndex::new(b);
    let order = ia.search_order();
    let mut assignment = vec![UNSET; ia.n];
    let mut used = vec![false; ib.n];
    iso_descend(
        &ia,
        &target,
        &sa,
        &sb,
        &order,
        0,
        &mut assignment,
        &mut used,
    )
}

#[allow(clippy::too_many_arguments)]
fn iso_descend(
    source: &Indexed,
    target: &TargetIndex,
    sig_source: &[Vec<usize>],
    sig_target: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    assignment: &mut Vec<u32>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for x in 0..target.n {
        if used[x] || sig_source[v] != sig_target[x] {
            continue;
        }
        assignment[v] = x as u32;
        let ok = source.incident[v].iter().all(|&f| {
            let (r, tuple) = &source.facts[f];
            let image: Vec<u32> = tuple.iter().map(|&e| assignment[e as usize]).collect();
            image.contains(&UNSET) || target.contains(*r, &image)
        });
        if ok {
            used[x] = true;
            if iso_descend(
                source,
                target,
                sig_source,
                sig_target,
                order,
                depth + 1,
                assignment,
                used,
            ) {
                return true;
            }
            used[x] = false;
        }
    }
    assignment[v] = UNSET;
    false
}
