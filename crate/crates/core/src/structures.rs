//! Schemas, instances and the incidence-multigraph notions built on them.
//!
//! An [`Instance`] carries an explicit element set which may be larger than
//! the set of entries occurring in its facts. Homomorphisms are total maps on
//! that element set, so a factless element still has to be sent somewhere.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of relation names, each with a positive arity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, usize>", into = "BTreeMap<String, usize>")]
pub struct Schema {
    relations: BTreeMap<String, usize>,
}

impl Schema {
    pub fn new<I, S>(relations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (name, arity) in relations {
            let name = name.into();
            if arity == 0 {
                return Err(Error::InvalidArity(name));
            }
            if map.insert(name.clone(), arity).is_some() {
                return Err(Error::Parse(format!("relation `{name}` declared twice")));
            }
        }
        Ok(Schema { relations: map })
    }

    /// The schema with a single binary relation `R`.
    pub fn binary() -> Self {
        Schema::new([("R", 2)]).expect("valid schema")
    }

    pub fn arity(&self, relation: &str) -> Option<usize> {
        self.relations.get(relation).copied()
    }

    /// Relations in name order.
    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> + '_ {
        self.relations
            .iter()
            .map(|(name, arity)| (name.as_str(), *arity))
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub(crate) fn index_of(&self, relation: &str) -> Option<usize> {
        self.relations.keys().position(|name| name == relation)
    }
}

impl TryFrom<BTreeMap<String, usize>> for Schema {
    type Error = Error;

    fn try_from(map: BTreeMap<String, usize>) -> Result<Self> {
        Schema::new(map)
    }
}

impl From<Schema> for BTreeMap<String, usize> {
    fn from(schema: Schema) -> Self {
        schema.relations
    }
}

pub type Tuple = Vec<String>;

/// A finite relational instance: a schema, an element set, and a set of
/// facts per relation.
///
/// Element identifiers are strings. Every entry of every fact is an element,
/// and every fact has its relation's arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "InstanceWire", into = "InstanceWire")]
pub struct Instance {
    schema: Schema,
    elements: BTreeSet<String>,
    facts: BTreeMap<String, BTreeSet<Tuple>>,
}

impl Instance {
    /// The instance with no elements and no facts.
    pub fn empty(schema: &Schema) -> Self {
        Instance {
            facts: schema
                .relations()
                .map(|(name, _)| (name.to_owned(), BTreeSet::new()))
                .collect(),
            schema: schema.clone(),
            elements: BTreeSet::new(),
        }
    }

    /// Builds an instance whose elements are exactly the listed `elements`.
    /// Facts may only mention listed elements.
    pub fn new<E, F, R, T, S>(schema: &Schema, elements: E, facts: F) -> Result<Self>
    where
        E: IntoIterator<Item = S>,
        F: IntoIterator<Item = (R, T)>,
        R: Into<String>,
        T: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut instance = Instance::empty(schema);
        instance.elements = elements.into_iter().map(Into::into).collect();
        for (relation, tuple) in facts {
            let tuple: Tuple = tuple.into_iter().map(Into::into).collect();
            if let Some(missing) = tuple.iter().find(|e| !instance.elements.contains(*e)) {
                return Err(Error::UnknownElement(missing.clone()));
            }
            instance.insert_fact(relation.into(), tuple)?;
        }
        Ok(instance)
    }

    /// Builds an instance whose elements are exactly the entries of its facts.
    pub fn from_facts<F, R, T, S>(schema: &Schema, facts: F) -> Result<Self>
    where
        F: IntoIterator<Item = (R, T)>,
        R: Into<String>,
        T: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut instance = Instance::empty(schema);
        for (relation, tuple) in facts {
            let tuple: Tuple = tuple.into_iter().map(Into::into).collect();
            instance.elements.extend(tuple.iter().cloned());
            instance.insert_fact(relation.into(), tuple)?;
        }
        Ok(instance)
    }

    /// Adds factless elements.
    pub fn with_elements<I, S>(mut self, extra: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.elements.extend(extra.into_iter().map(Into::into));
        self
    }

    fn insert_fact(&mut self, relation: String, tuple: Tuple) -> Result<()> {
        let arity = self
            .schema
            .arity(&relation)
            .ok_or_else(|| Error::UndeclaredRelation(relation.clone()))?;
        if tuple.len() != arity {
            return Err(Error::ArityMismatch {
                relation,
                expected: arity,
                found: tuple.len(),
            });
        }
        self.facts.entry(relation).or_default().insert(tuple);
        Ok(())
    }

    pub(crate) fn from_parts_unchecked(
        schema: &Schema,
        elements: BTreeSet<String>,
        facts: BTreeMap<String, BTreeSet<Tuple>>,
    ) -> Self {
        let mut instance = Instance::empty(schema);
        instance.elements = elements;
        for (relation, tuples) in facts {
            instance.facts.insert(relation, tuples);
        }
        instance
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn elements(&self) -> &BTreeSet<String> {
        &self.elements
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn contains_element(&self, element: &str) -> bool {
        self.elements.contains(element)
    }

    /// Facts of one relation; empty for undeclared names.
    pub fn relation(&self, relation: &str) -> impl Iterator<Item = &Tuple> + '_ {
        self.facts.get(relation).into_iter().flatten()
    }

    /// All facts as `(relation, tuple)` pairs, ordered by relation then tuple.
    pub fn facts(&self) -> impl Iterator<Item = (&str, &Tuple)> + '_ {
        self.facts
            .iter()
            .flat_map(|(name, tuples)| tuples.iter().map(move |t| (name.as_str(), t)))
    }

    pub fn has_fact(&self, relation: &str, tuple: &[String]) -> bool {
        self.facts
            .get(relation)
            .is_some_and(|tuples| tuples.contains(tuple))
    }

    pub fn fact_count(&self) -> usize {
        self.facts.values().map(BTreeSet::len).sum()
    }

    /// Elements occurring in at least one fact (the active domain in the
    /// strict sense).
    pub fn fact_entries(&self) -> BTreeSet<&str> {
        self.facts()
            .flat_map(|(_, t)| t.iter().map(String::as_str))
            .collect()
    }

    pub fn isolated_elements(&self) -> Vec<&str> {
        let entries = self.fact_entries();
        self.elements
            .iter()
            .map(String::as_str)
            .filter(|e| !entries.contains(e))
            .collect()
    }

    pub(crate) fn ensure_same_schema(&self, other: &Instance) -> Result<()> {
        if self.schema == other.schema {
            Ok(())
        } else {
            Err(Error::SchemaMismatch)
        }
    }

    /// The subinstance induced on `subset`: those elements and every fact
    /// whose entries all lie in it.
    pub fn induced<S: AsRef<str>>(&self, subset: &[S]) -> Result<Instance> {
        let mut elements = BTreeSet::new();
        for e in subset {
            let e = e.as_ref();
            if !self.elements.contains(e) {
                return Err(Error::NotSubset(e.to_owned()));
            }
            elements.insert(e.to_owned());
        }
        let facts = self
            .facts
            .iter()
            .map(|(name, tuples)| {
                let kept = tuples
                    .iter()
                    .filter(|t| t.iter().all(|e| elements.contains(e)))
                    .cloned()
                    .collect();
                (name.clone(), kept)
            })
            .collect();
        Ok(Instance::from_parts_unchecked(
            &self.schema,
            elements,
            facts,
        ))
    }

    /// Applies an injective renaming to every element.
    pub fn rename(&self, mut f: impl FnMut(&str) -> String) -> Instance {
        let map: BTreeMap<&str, String> =
            self.elements.iter().map(|e| (e.as_str(), f(e))).collect();
        let facts = self
            .facts
            .iter()
            .map(|(name, tuples)| {
                let renamed = tuples
                    .iter()
                    .map(|t| t.iter().map(|e| map[e.as_str()].clone()).collect())
                    .collect();
                (name.clone(), renamed)
            })
            .collect();
        Instance::from_parts_unchecked(&self.schema, map.into_values().collect(), facts)
    }

    /// Edges of the incidence multigraph, one per fact position.
    pub fn incidence_edges(&self) -> Vec<IncidenceEdge> {
        self.facts()
            .flat_map(|(relation, tuple)| {
                tuple
                    .iter()
                    .enumerate()
                    .map(move |(position, element)| IncidenceEdge {
                        element: element.clone(),
                        relation: relation.to_owned(),
                        tuple: tuple.clone(),
                        position,
                    })
            })
            .collect()
    }

    /// Splits the instance into maximal connected pieces. Elements sharing a
    /// fact end up together and factless elements become singleton pieces.
    /// Pieces are ordered by their least element.
    pub fn connected_components(&self) -> Vec<Instance> {
        let index: BTreeMap<&str, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        let mut uf = UnionFind::new(self.elements.len());
        for (_, tuple) in self.facts() {
            let first = index[tuple[0].as_str()];
            for e in &tuple[1..] {
                uf.union(first, index[e.as_str()]);
            }
        }

        let mut groups: BTreeMap<usize, usize> = BTreeMap::new();
        let mut element_sets: Vec<BTreeSet<String>> = Vec::new();
        for (i, e) in self.elements.iter().enumerate() {
            let root = uf.find(i);
            let slot = *groups.entry(root).or_insert_with(|| {
                element_sets.push(BTreeSet::new());
                element_sets.len() - 1
            });
            element_sets[slot].insert(e.clone());
        }
        let mut fact_sets: Vec<BTreeMap<String, BTreeSet<Tuple>>> =
            vec![BTreeMap::new(); element_sets.len()];
        for (relation, tuple) in self.facts() {
            let slot = groups[&uf.find(index[tuple[0].as_str()])];
            fact_sets[slot]
                .entry(relation.to_owned())
                .or_default()
                .insert(tuple.clone());
        }
        element_sets
            .into_iter()
            .zip(fact_sets)
            .map(|(elements, facts)| Instance::from_parts_unchecked(&self.schema, elements, facts))
            .collect()
    }

    /// Exactly one connected component. The zero-element instance has none
    /// and is therefore not connected.
    pub fn is_connected(&self) -> bool {
        !self.elements.is_empty() && self.connected_components().len() == 1
    }

    /// Length of the shortest cycle of the incidence multigraph, counted in
    /// element-to-element steps. A walk may not leave a fact through the
    /// same incidence edge it entered by, but may use a parallel one, so a
    /// fact with a repeated entry yields a cycle of length 1.
    pub fn girth(&self) -> Girth {
        let (n, adjacency) = self.incidence_adjacency();
        let nodes = adjacency.len();
        let mut best: Option<usize> = None;
        for start in 0..n {
            let mut dist = vec![usize::MAX; nodes];
            let mut parent_edge = vec![usize::MAX; nodes];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[x] >= b) {
                    break;
                }
                for &(y, edge) in &adjacency[x] {
                    if edge == parent_edge[x] {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent_edge[y] = edge;
                        queue.push_back(y);
                    } else {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        match best {
            Some(len) => Girth::Finite(len / 2),
            None => Girth::Infinite,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.girth() == Girth::Infinite
    }

    /// Node 0..n are elements, n.. are facts; each adjacency entry carries
    /// the incidence-edge id.
    pub(crate) fn incidence_adjacency(&self) -> (usize, Vec<Vec<(usize, usize)>>) {
        let index: BTreeMap<&str, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        let n = self.elements.len();
        let mut adjacency = vec![Vec::new(); n + self.fact_count()];
        let mut edge = 0;
        for (block, (_, tuple)) in self.facts().enumerate() {
            let b = n + block;
            for e in tuple {
                let a = index[e.as_str()];
                adjacency[a].push((b, edge));
                adjacency[b].push((a, edge));
                edge += 1;
            }
        }
        (n, adjacency)
    }

    /// The canonical conjunctive query. Fails if some element occurs in no
    /// fact, since every query variable must occur in an atom.
    pub fn canonical_query(&self) -> Result<ConjunctiveQuery> {
        ConjunctiveQuery::new(self.clone())
    }

    /// Isomorphism test by backtracking over degree-compatible bijections.
    pub fn is_isomorphic(&self, other: &Instance) -> Result<bool> {
        self.ensure_same_schema(other)?;
        Ok(crate::indexed::isomorphic(self, other))
    }

    /// Facts relabelled by element rank and relation index. Equal keys imply
    /// isomorphic instances; copies produced by renaming with an
    /// order-preserving map share a key.
    pub(crate) fn shape_key(&self) -> ShapeKey {
        let rank: BTreeMap<&str, u32> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i as u32))
            .collect();
        let facts = self
            .facts()
            .map(|(relation, tuple)| {
                let r = self.schema.index_of(relation).expect("declared relation") as u32;
                (r, tuple.iter().map(|e| rank[e.as_str()]).collect())
            })
            .collect();
        ShapeKey {
            elements: self.elements.len(),
            facts,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances always serialize")
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        parse_instance(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct ShapeKey {
    elements: usize,
    facts: Vec<(u32, Vec<u32>)>,
}

/// Parses the JSON instance format.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let wire: InstanceWire = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Instance::try_from(wire)
}

/// Serializes to the JSON instance format with sorted keys and facts.
pub fn serialize_instance(instance: &Instance) -> String {
    instance.to_json()
}

/// Wire form: `schema`, optional `elements` (defaults to fact entries), and
/// `facts` as arrays whose first entry is the relation name.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceWire {
    schema: Schema,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
    facts: Vec<Vec<String>>,
}

impl TryFrom<InstanceWire> for Instance {
    type Error = Error;

    fn try_from(wire: InstanceWire) -> Result<Instance> {
        let mut facts = Vec::with_capacity(wire.facts.len());
        for mut fact in wire.facts {
            if fact.is_empty() {
                return Err(Error::Parse("fact without a relation name".into()));
            }
            let relation = fact.remove(0);
            facts.push((relation, fact));
        }
        match wire.elements {
            Some(elements) => Instance::new(&wire.schema, elements, facts),
            None => Instance::from_facts(&wire.schema, facts),
        }
    }
}

impl From<Instance> for InstanceWire {
    fn from(instance: Instance) -> Self {
        let facts = instance
            .facts()
            .map(|(relation, tuple)| {
                let mut row = Vec::with_capacity(tuple.len() + 1);
                row.push(relation.to_owned());
                row.extend(tuple.iter().cloned());
                row
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        InstanceWire {
            elements: Some(instance.elements.iter().cloned().collect()),
            schema: instance.schema,
            facts,
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (relation, tuple) in self.facts() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{relation}({})", tuple.join(","))?;
        }
        let isolated = self.isolated_elements();
        if !isolated.is_empty() {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "{}", isolated.join(","))?;
        }
        write!(f, "}}")
    }
}

/// An edge `(element, (relation, tuple))` of the incidence multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncidenceEdge {
    pub element: String,
    pub relation: String,
    pub tuple: Tuple,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_infinite(self) -> bool {
        self == Girth::Infinite
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(n) => write!(f, "{n}"),
            Girth::Infinite => write!(f, "∞"),
        }
    }
}

/// A Boolean conjunctive query, stored as its canonical instance: variables
/// are elements and atoms are facts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Instance", into = "Instance")]
pub struct ConjunctiveQuery {
    body: Instance,
}

impl ConjunctiveQuery {
    pub fn new(body: Instance) -> Result<Self> {
        if let Some(e) = body.isolated_elements().first() {
            return Err(Error::IsolatedElement((*e).to_owned()));
        }
        Ok(ConjunctiveQuery { body })
    }

    pub fn canonical_instance(&self) -> &Instance {
        &self.body
    }

    pub fn into_instance(self) -> Instance {
        self.body
    }

    pub fn is_berge_acyclic(&self) -> bool {
        self.body.is_acyclic()
    }

    /// Whether `database` satisfies the query, i.e. admits a homomorphism
    /// from the canonical instance.
    pub fn holds_in(&self, database: &Instance) -> Result<bool> {
        crate::homomorphisms::hom_exists(&self.body, database)
    }
}

impl TryFrom<Instance> for ConjunctiveQuery {
    type Error = Error;

    fn try_from(body: Instance) -> Result<Self> {
        ConjunctiveQuery::new(body)
    }
}

impl From<ConjunctiveQuery> for Instance {
    fn from(q: ConjunctiveQuery) -> Self {
        q.body
    }
}

impl fmt::Display for ConjunctiveQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<&str> = self.body.elements.iter().map(String::as_str).collect();
        let atoms: Vec<String> = self
            .body
            .facts()
            .map(|(relation, tuple)| format!("{relation}({})", tuple.join(",")))
            .collect();
        if vars.is_empty() {
            return write!(f, "⊤");
        }
        write!(f, "∃{} ", vars.join(" "))?;
        if atoms.len() == 1 {
            write!(f, "{}", atoms[0])
        } else {
            write!(f, "({})", atoms.join(" ∧ "))
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn parses_edge() {
        let edge = parse_instance(r#"{"schema":{"R":2},"facts":[["R","a","b"]]}"#).unwrap();
        assert_eq!(edge.element_count(), 2);
        assert!(edge.has_fact("R", &["a".into(), "b".into()]));
        assert!(edge.is_isomorphic(&super::super::catalog::edge()).unwrap());
    }

    #[test]
    fn parses_factless_element() {
        let e0 = parse_instance(r#"{"schema":{"R":2},"elements":["d"],"facts":[]}"#).unwrap();
        assert_eq!(e0.element_count(), 1);
        assert_eq!(e0.fact_count(), 0);
        assert_eq!(e0.isolated_elements(), vec!["d"]);
    }

    #[test]
    fn rejects_malformed_input() {
        let err = parse_instance(r#"{"schema":{"R":2},"facts":[["R","a"]]}"#).unwrap_err();
        assert_eq!(err.kind(), "arity_mismatch");
        assert!(parse_instance(r#"{"schema":{"R":2},"facts":[["S","a","b"]]}"#).is_err());
        assert!(parse_instance(r#"{"schema":{"R":0},"facts":[]}"#).is_err());
        assert!(
            parse_instance(r#"{"schema":{"R":2},"elements":["a"],"facts":[["R","a","b"]]}"#)
                .is_err()
        );
        assert!(parse_instance(r#"{"schema":{"R":2},"facts":[[]]}"#).is_err());
        assert!(parse_instance("not json").is_err());
    }

    #[test]
    fn constructor_errors_are_typed() {
        let s = Schema::binary();
        assert_eq!(
            Instance::from_facts(&s, [("R", vec!["a"])]).unwrap_err(),
            Error::ArityMismatch {
                relation: "R".into(),
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            Instance::from_facts(&s, [("S", vec!["a", "b"])]).unwrap_err(),
            Error::UndeclaredRelation("S".into())
        );
    }

    #[test]
    fn serialization_is_sorted_and_stable() {
        let s = Schema::new([("S", 1), ("R", 2)]).unwrap();
        let a = Instance::from_facts(
            &s,
            [
                ("S", vec!["b"]),
                ("R", vec!["b", "a"]),
                ("R", vec!["a", "b"]),
            ],
        )
        .unwrap()
        .with_elements(["z"]);
        assert_eq!(
            a.to_json(),
            r#"{"schema":{"R":2,"S":1},"elements":["a","b","z"],"facts":[["R","a","b"],["R","b","a"],["S","b"]]}"#
        );
        assert_eq!(parse_instance(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn components() {
        assert_eq!(edge().connected_components().len(), 1);
        let two = crate::algebra::direct_sum(&Schema::binary(), &[edge(), loop_()]).unwrap();
        let parts = two.connected_components();
        assert_eq!(parts.len(), 2);
        assert!(parts[0].is_isomorphic(&edge()).unwrap());
        assert!(parts[1].is_isomorphic(&loop_()).unwrap());
        assert!(Instance::empty(&Schema::binary())
            .connected_components()
            .is_empty());
        assert_eq!(factless(3).connected_components().len(), 3);
        assert!(!Instance::empty(&Schema::binary()).is_connected());
        assert!(factless(1).is_connected());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(loop_().girth(), Girth::Finite(1));
        assert_eq!(directed_cycle(3).girth(), Girth::Finite(3));
        assert_eq!(edge().girth(), Girth::Infinite);
        assert_eq!(path(2).girth(), Girth::Infinite);
        // a symmetric pair already closes a 2-cycle
        assert_eq!(symmetric_clique(2).girth(), Girth::Finite(2));
        assert_eq!(symmetric_clique(3).girth(), Girth::Finite(2));
        let ternary = Schema::new([("T", 3)]).unwrap();
        let t = Instance::from_facts(&ternary, [("T", vec!["a", "b", "c"])]).unwrap();
        assert!(t.is_acyclic());
        let t2 = Instance::from_facts(
            &ternary,
            [("T", vec!["a", "b", "c"]), ("T", vec!["c", "d", "a"])],
        )
        .unwrap();
        assert_eq!(t2.girth(), Girth::Finite(2));
    }

    #[test]
    fn canonical_query_round_trip() {
        let q = edge().canonical_query().unwrap();
        assert_eq!(q.to_string(), "∃a b R(a,b)");
        assert!(q.is_berge_acyclic());
        let c3 = directed_cycle(3);
        let back = c3.canonical_query().unwrap().into_instance();
        assert!(back.is_isomorphic(&c3).unwrap());
        assert!(!loop_().canonical_query().unwrap().is_berge_acyclic());
        assert!(!c3.canonical_query().unwrap().is_berge_acyclic());
        assert_eq!(
            factless(1).canonical_query().unwrap_err(),
            Error::IsolatedElement("v0".into())
        );
    }

    #[test]
    fn isomorphism_examples() {
        let renamed = Instance::from_facts(&Schema::binary(), [("R", vec!["x", "y"])]).unwrap();
        assert!(edge().is_isomorphic(&renamed).unwrap());
        assert!(!edge().is_isomorphic(&loop_()).unwrap());
        assert!(!directed_cycle(3).is_isomorphic(&path(2)).unwrap());
        let other = Schema::new([("S", 2)]).unwrap();
        let s_edge = Instance::from_facts(&other, [("S", vec!["a", "b"])]).unwrap();
        assert_eq!(
            edge().is_isomorphic(&s_edge).unwrap_err(),
            Error::SchemaMismatch
        );
    }

    #[test]
    fn induced_subinstances() {
        let p = path(2);
        let h = p.induced(&["v0", "v1"]).unwrap();
        assert_eq!(h.fact_count(), 1);
        assert!(matches!(p.induced(&["zz"]), Err(Error::NotSubset(_))));
        assert_eq!(
            p.induced::<&str>(&[]).unwrap(),
            Instance::empty(&Schema::binary())
        );
    }
}
