//! Profiles and query algorithms.
//!
//! A query algorithm is a finite list of instances `F = (F_1, …, F_k)` and an
//! answer set `X` of `k`-tuples over a semiring. A left algorithm accepts `D`
//! when `(hom(F_1, D), …, hom(F_k, D))` lies in `X`; a right algorithm uses
//! `(hom(D, F_1), …, hom(D, F_k))` instead.
//!
//! Boolean answer sets are explicit sets of bit vectors. Natural-number
//! answer sets are finite unions of boxes, one [`Constraint`] per
//! coordinate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homomorphisms::{hom_count, hom_exists, Semiring};
use crate::structures::{ConjunctiveQuery, Instance};

/// Beyond this many coordinates, answer sets are not expanded pointwise.
const MAX_EXPANDED_ARITY: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Profile {
    pub semiring: Semiring,
    pub values: Vec<u64>,
}

impl Profile {
    pub fn zero_pattern(&self) -> Vec<bool> {
        self.values.iter().map(|&v| v != 0).collect()
    }
}

fn check_queries(queries: &[Instance]) -> Result<()> {
    let first = queries.first().ok_or(Error::EmptyList("query list"))?;
    if queries.iter().any(|q| q.schema() != first.schema()) {
        return Err(Error::SchemaMismatch);
    }
    Ok(())
}

/// `(hom_K(F_1, D), …, hom_K(F_k, D))`.
pub fn left_profile(
    queries: &[Instance],
    database: &Instance,
    semiring: Semiring,
) -> Result<Profile> {
    check_queries(queries)?;
    let values = queries
        .iter()
        .map(|f| hom_count(f, database, semiring))
        .collect::<Result<_>>()?;
    Ok(Profile { semiring, values })
}

/// `(hom_K(D, F_1), …, hom_K(D, F_k))`.
pub fn right_profile(
    database: &Instance,
    queries: &[Instance],
    semiring: Semiring,
) -> Result<Profile> {
    check_queries(queries)?;
    let values = queries
        .iter()
        .map(|f| hom_count(database, f, semiring))
        .collect::<Result<_>>()?;
    Ok(Profile { semiring, values })
}

/// An explicit set of bit vectors, written in JSON as arrays of 0 and 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct BoolAnswerSet(pub BTreeSet<Vec<bool>>);

impl BoolAnswerSet {
    pub fn contains(&self, bits: &[bool]) -> bool {
        self.0.contains(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<Vec<bool>> for BoolAnswerSet {
    fn from_iter<I: IntoIterator<Item = Vec<bool>>>(iter: I) -> Self {
        BoolAnswerSet(iter.into_iter().collect())
    }
}

impl TryFrom<Vec<Vec<u8>>> for BoolAnswerSet {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u8>>) -> Result<Self> {
        rows.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        other => Err(Error::Parse(format!(
                            "bit vector entry {other} is not 0 or 1"
                        ))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()
            .map(BoolAnswerSet)
    }
}

impl From<BoolAnswerSet> for Vec<Vec<u8>> {
    fn from(set: BoolAnswerSet) -> Self {
        set.0
            .into_iter()
            .map(|row| row.into_iter().map(u8::from).collect())
            .collect()
    }
}

/// One coordinate of a box in a natural-number answer set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum Constraint {
    #[serde(rename = "eq")]
    Equals { v: u64 },
    #[serde(rename = "in")]
    In { v: BTreeSet<u64> },
    #[serde(rename = "zero")]
    Zero,
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "any")]
    Any,
    #[serde(rename = "ge")]
    AtLeast { v: u64 },
}

impl Constraint {
    pub fn admits(&self, value: u64) -> bool {
        match self {
            Constraint::Equals { v } => value == *v,
            Constraint::In { v } => v.contains(&value),
            Constraint::Zero => value == 0,
            Constraint::Positive => value > 0,
            Constraint::Any => true,
            Constraint::AtLeast { v } => value >= *v,
        }
    }

    fn is_zero_pattern(&self) -> bool {
        matches!(
            self,
            Constraint::Zero | Constraint::Positive | Constraint::Any
        )
    }

    fn of_bit(bit: bool) -> Self {
        if bit {
            Constraint::Positive
        } else {
            Constraint::Zero
        }
    }
}

/// A finite union of boxes over `ℕ^k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NatAnswerSet(pub Vec<Vec<Constraint>>);

impl NatAnswerSet {
    pub fn contains(&self, values: &[u64]) -> bool {
        self.0
            .iter()
            .any(|b| b.len() == values.len() && b.iter().zip(values).all(|(c, &v)| c.admits(v)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnswerSet {
    Bitset { vectors: BoolAnswerSet },
    Boxes { boxes: NatAnswerSet },
}

impl AnswerSet {
    pub fn contains(&self, values: &[u64]) -> bool {
        match self {
            AnswerSet::Bitset { vectors } => {
                values.iter().all(|&v| v <= 1)
                    && vectors.contains(&values.iter().map(|&v| v == 1).collect::<Vec<_>>())
            }
            AnswerSet::Boxes { boxes } => boxes.contains(values),
        }
    }
}

/// The pair `(F, X)` together with its semiring. Validated on construction:
/// `F` is non-empty and over one schema, every vector or box has `|F|`
/// coordinates, Boolean algorithms use bit vectors and natural-number ones
/// use boxes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AlgorithmWire", into = "AlgorithmWire")]
pub struct QueryAlgorithm {
    semiring: Semiring,
    queries: Vec<Instance>,
    answers: AnswerSet,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgorithmWire {
    semiring: Semiring,
    queries: Vec<Instance>,
    answers: AnswerSet,
}

impl TryFrom<AlgorithmWire> for QueryAlgorithm {
    type Error = Error;

    fn try_from(w: AlgorithmWire) -> Result<Self> {
        QueryAlgorithm::new(w.semiring, w.queries, w.answers)
    }
}

impl From<QueryAlgorithm> for AlgorithmWire {
    fn from(a: QueryAlgorithm) -> Self {
        AlgorithmWire {
            semiring: a.semiring,
            queries: a.queries,
            answers: a.answers,
        }
    }
}

impl QueryAlgorithm {
    pub fn new(semiring: Semiring, queries: Vec<Instance>, answers: AnswerSet) -> Result<Self> {
        check_queries(&queries)?;
        let k = queries.len();
        match (&answers, semiring) {
            (AnswerSet::Bitset { vectors }, Semiring::Bool) => {
                if vectors.0.iter().any(|v| v.len() != k) {
                    return Err(Error::InvalidAlgorithm(format!(
                        "bit vectors must have length {k}"
                    )));
                }
            }
            (AnswerSet::Boxes { boxes }, Semiring::Nat) => {
                if boxes.0.iter().any(|b| b.len() != k) {
                    return Err(Error::InvalidAlgorithm(format!(
                        "boxes must have {k} coordinates"
                    )));
                }
            }
            (AnswerSet::Bitset { .. }, Semiring::Nat) => {
                return Err(Error::InvalidAlgorithm(
                    "natural-number algorithms use boxes".into(),
                ))
            }
            (AnswerSet::Boxes { .. }, Semiring::Bool) => {
                return Err(Error::InvalidAlgorithm(
                    "Boolean algorithms use bit vectors".into(),
                ))
            }
        }
        Ok(QueryAlgorithm {
            semiring,
            queries,
            answers,
        })
    }

    pub fn boolean(
        queries: Vec<Instance>,
        vectors: impl IntoIterator<Item = Vec<bool>>,
    ) -> Result<Self> {
        QueryAlgorithm::new(
            Semiring::Bool,
            queries,
            AnswerSet::Bitset {
                vectors: vectors.into_iter().collect(),
            },
        )
    }

    pub fn natural(queries: Vec<Instance>, boxes: Vec<Vec<Constraint>>) -> Result<Self> {
        QueryAlgorithm::new(
            Semiring::Nat,
            queries,
            AnswerSet::Boxes {
                boxes: NatAnswerSet(boxes),
            },
        )
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn queries(&self) -> &[Instance] {
        &self.queries
    }

    pub fn answers(&self) -> &AnswerSet {
        &self.answers
    }

    pub fn arity(&self) -> usize {
        self.queries.len()
    }

    pub fn accepts_profile(&self, profile: &Profile) -> bool {
        profile.semiring == self.semiring && self.answers.contains(&profile.values)
    }

    fn bool_vectors(&self) -> Result<&BoolAnswerSet> {
        match &self.answers {
            AnswerSet::Bitset { vectors } => Ok(vectors),
            AnswerSet::Boxes { .. } => Err(Error::InvalidAlgorithm(
                "expected a Boolean algorithm".into(),
            )),
        }
    }

    /// The same queries with the zero-pattern answer set
    /// `X' = ⋃_{t ∈ X} {s : s_i = 0 ⇔ t_i = 0}` over ℕ.
    pub fn lift_to_nat(&self) -> Result<QueryAlgorithm> {
        let vectors = self.bool_vectors()?;
        let boxes = vectors
            .0
            .iter()
            .map(|t| t.iter().map(|&bit| Constraint::of_bit(bit)).collect())
            .collect();
        QueryAlgorithm::natural(self.queries.clone(), boxes)
    }
}

/// An algorithm evaluated on left profiles `hom(F, D)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LeftAlgorithm(QueryAlgorithm);

/// An algorithm evaluated on right profiles `hom(D, F)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RightAlgorithm(QueryAlgorithm);

impl LeftAlgorithm {
    pub fn new(algorithm: QueryAlgorithm) -> Self {
        LeftAlgorithm(algorithm)
    }

    pub fn into_inner(self) -> QueryAlgorithm {
        self.0
    }

    pub fn profile(&self, database: &Instance) -> Result<Profile> {
        left_profile(&self.0.queries, database, self.0.semiring)
    }

    pub fn eval(&self, database: &Instance) -> Result<bool> {
        Ok(self.0.accepts_profile(&self.profile(database)?))
    }
}

impl RightAlgorithm {
    pub fn new(algorithm: QueryAlgorithm) -> Self {
        RightAlgorithm(algorithm)
    }

    pub fn into_inner(self) -> QueryAlgorithm {
        self.0
    }

    pub fn profile(&self, database: &Instance) -> Result<Profile> {
        right_profile(database, &self.0.queries, self.0.semiring)
    }

    pub fn eval(&self, database: &Instance) -> Result<bool> {
        Ok(self.0.accepts_profile(&self.profile(database)?))
    }
}

impl Deref for LeftAlgorithm {
    type Target = QueryAlgorithm;

    fn deref(&self) -> &QueryAlgorithm {
        &self.0
    }
}

impl Deref for RightAlgorithm {
    type Target = QueryAlgorithm;

    fn deref(&self) -> &QueryAlgorithm {
        &self.0
    }
}

pub fn eval_left(algorithm: &LeftAlgorithm, database: &Instance) -> Result<bool> {
    algorithm.eval(database)
}

pub fn eval_right(algorithm: &RightAlgorithm, database: &Instance) -> Result<bool> {
    algorithm.eval(database)
}

/// Turns a Boolean left algorithm into a natural-number one with the same
/// queries and the same verdict on every instance.
pub fn lift_bool_to_nat(algorithm: &LeftAlgorithm) -> Result<LeftAlgorithm> {
    algorithm.0.lift_to_nat().map(LeftAlgorithm)
}

/// Right-algorithm counterpart of [`lift_bool_to_nat`].
pub fn lift_right_bool_to_nat(algorithm: &RightAlgorithm) -> Result<RightAlgorithm> {
    algorithm.0.lift_to_nat().map(RightAlgorithm)
}

fn all_bit_vectors(k: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << k).map(move |mask| (0..k).map(|i| mask >> (k - 1 - i) & 1 == 1).collect())
}

/// Replaces every query by its connected components (deduplicated up to
/// isomorphism) and rewrites the answer set so the verdict is unchanged:
/// a query with several components is matched exactly when all of its
/// components are. Over ℕ only zero-pattern answer sets (`zero`, `pos`,
/// `any`) are supported.
pub fn normalize_connected(algorithm: &LeftAlgorithm) -> Result<LeftAlgorithm> {
    let alg = &algorithm.0;
    if let AnswerSet::Boxes { boxes } = &alg.answers {
        if boxes.0.iter().flatten().any(|c| !c.is_zero_pattern()) {
            return Err(Error::Unsupported(
                "connected normalisation over ℕ needs zero-pattern constraints".into(),
            ));
        }
    }

    let mut components: Vec<Instance> = Vec::new();
    let mut membership: Vec<Vec<usize>> = Vec::with_capacity(alg.arity());
    for query in &alg.queries {
        let mut members = Vec::new();
        for part in query.connected_components() {
            let idx = match components
                .iter()
                .position(|c| c.is_isomorphic(&part).unwrap_or(false))
            {
                Some(i) => i,
                None => {
                    components.push(part);
                    components.len() - 1
                }
            };
            members.push(idx);
        }
        membership.push(members);
    }
    if components.is_empty() {
        // every query is the zero-element instance, whose count is always 1
        components.push(alg.queries[0].clone());
    }
    let m = components.len();
    if m > MAX_EXPANDED_ARITY {
        return Err(Error::Unsupported(format!("{m} distinct components")));
    }

    let accepted: Vec<Vec<bool>> = all_bit_vectors(m)
        .filter(|g| {
            let positive: Vec<u64> = membership
                .iter()
                .map(|members| u64::from(members.iter().all(|&c| g[c])))
                .collect();
            match &alg.answers {
                AnswerSet::Bitset { vectors } => {
                    vectors.contains(&positive.iter().map(|&v| v == 1).collect::<Vec<_>>())
                }
                AnswerSet::Boxes { boxes } => boxes.contains(&positive),
            }
        })
        .collect();

    let normalized = match alg.semiring {
        Semiring::Bool => QueryAlgorithm::boolean(components, accepted)?,
        Semiring::Nat => QueryAlgorithm::natural(
            components,
            accepted
                .into_iter()
                .map(|g| g.into_iter().map(Constraint::of_bit).collect())
                .collect(),
        )?,
    };
    Ok(LeftAlgorithm(normalized))
}

/// Boolean combination of conjunctive queries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CqFormula {
    Cq(ConjunctiveQuery),
    Not(Box<CqFormula>),
    And(Vec<CqFormula>),
    Or(Vec<CqFormula>),
}

impl CqFormula {
    fn and(mut parts: Vec<CqFormula>) -> CqFormula {
        if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            CqFormula::And(parts)
        }
    }

    fn or(mut parts: Vec<CqFormula>) -> CqFormula {
        if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            CqFormula::Or(parts)
        }
    }

    /// Distinct atoms in first-occurrence order.
    pub fn atoms(&self) -> Vec<&ConjunctiveQuery> {
        let mut out: Vec<&ConjunctiveQuery> = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a ConjunctiveQuery>) {
        match self {
            CqFormula::Cq(q) => {
                if !out.contains(&q) {
                    out.push(q);
                }
            }
            CqFormula::Not(inner) => inner.collect_atoms(out),
            CqFormula::And(parts) | CqFormula::Or(parts) => {
                parts.iter().for_each(|p| p.collect_atoms(out))
            }
        }
    }

    /// Evaluates with atom truth values supplied by `truth`.
    pub fn eval_with(
        &self,
        truth: &mut dyn FnMut(&ConjunctiveQuery) -> Result<bool>,
    ) -> Result<bool> {
        Ok(match self {
            CqFormula::Cq(q) => truth(q)?,
            CqFormula::Not(inner) => !inner.eval_with(truth)?,
            CqFormula::And(parts) => {
                for p in parts {
                    if !p.eval_with(truth)? {
                        return Ok(false);
                    }
                }
                true
            }
            CqFormula::Or(parts) => {
                for p in parts {
                    if p.eval_with(truth)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// Whether `database` satisfies the formula.
    pub fn holds_in(&self, database: &Instance) -> Result<bool> {
        self.eval_with(&mut |q| hom_exists(q.canonical_instance(), database))
    }
}

impl fmt::Display for CqFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, parts: &[CqFormula], op: &str, empty: &str| {
            if parts.is_empty() {
                return write!(f, "{empty}");
            }
            write!(f, "(")?;
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        };
        match self {
            CqFormula::Cq(q) => write!(f, "[{q}]"),
            CqFormula::Not(inner) => write!(f, "¬{inner}"),
            CqFormula::And(parts) => join(f, parts, "∧", "⊤"),
            CqFormula::Or(parts) => join(f, parts, "∨", "⊥"),
        }
    }
}

pub fn eval_formula(formula: &CqFormula, database: &Instance) -> Result<bool> {
    formula.holds_in(database)
}

/// `⋁_{t ∈ X} (⋀_{t_i = 1} q^{F_i} ∧ ⋀_{t_i = 0} ¬q^{F_i})`, with singleton
/// conjunctions and disjunctions flattened. An empty answer set becomes
/// `q ∧ ¬q` over the first query.
pub fn algorithm_to_formula(algorithm: &LeftAlgorithm) -> Result<CqFormula> {
    let vectors = algorithm.0.bool_vectors()?;
    let atoms: Vec<ConjunctiveQuery> = algorithm
        .0
        .queries
        .iter()
        .map(Instance::canonical_query)
        .collect::<Result<_>>()?;
    let disjuncts = vectors
        .0
        .iter()
        .map(|t| {
            CqFormula::and(
                t.iter()
                    .zip(&atoms)
                    .map(|(&bit, q)| {
                        let atom = CqFormula::Cq(q.clone());
                        if bit {
                            atom
                        } else {
                            CqFormula::Not(Box::new(atom))
                        }
                    })
                    .collect(),
            )
        })
        .collect::<Vec<_>>();
    if disjuncts.is_empty() {
        let atom = CqFormula::Cq(atoms[0].clone());
        return Ok(CqFormula::And(vec![
            atom.clone(),
            CqFormula::Not(Box::new(atom)),
        ]));
    }
    Ok(CqFormula::or(disjuncts))
}

/// Queries are the canonical instances of the formula's distinct atoms; the
/// answer set lists the atom truth vectors that satisfy the formula.
pub fn formula_to_algorithm(formula: &CqFormula) -> Result<LeftAlgorithm> {
    let atoms = formula.atoms();
    if atoms.is_empty() {
        return Err(Error::EmptyList("formula atoms"));
    }
    if atoms.len() > MAX_EXPANDED_ARITY {
        return Err(Error::Unsupported(format!(
            "{} distinct atoms",
            atoms.len()
        )));
    }
    let mut accepted = Vec::new();
    for bits in all_bit_vectors(atoms.len()) {
        let satisfied = formula.eval_with(&mut |q| {
            let i = atoms.iter().position(|a| *a == q).expect("atom collected");
            Ok(bits[i])
        })?;
        if satisfied {
            accepted.push(bits);
        }
    }
    let queries = atoms
        .iter()
        .map(|q| q.canonical_instance().clone())
        .collect();
    Ok(LeftAlgorithm(QueryAlgorithm::boolean(queries, accepted)?))
}

/// Groups tuples by zero pattern; groups appear in order of first
/// occurrence.
pub fn partition_simple(tuples: &[Vec<u64>]) -> Vec<Vec<Vec<u64>>> {
    let mut groups: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut slot: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    for t in tuples {
        let pattern: Vec<bool> = t.iter().map(|&v| v != 0).collect();
        let i = *slot.entry(pattern).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[i].push(t.clone());
    }
    groups
}

/// The common zero pattern of a non-empty simple set.
pub fn derive_bool_pattern(simple: &[Vec<u64>]) -> Result<Vec<bool>> {
    let first = simple.first().ok_or(Error::EmptyList("simple set"))?;
    let pattern: Vec<bool> = first.iter().map(|&v| v != 0).collect();
    for t in simple {
        if t.len() != pattern.len() || t.iter().zip(&pattern).any(|(&v, &p)| (v != 0) != p) {
            return Err(Error::NotSimple);
        }
    }
    Ok(pattern)
}

/// How two Boolean answer sets combine coordinatewise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combination {
    Union,
    Intersection,
}

/// Algorithm for the union or intersection of the classes of two Boolean
/// left algorithms: queries are concatenated and the answer set is built
/// over the concatenated profile.
pub fn combine(a: &LeftAlgorithm, b: &LeftAlgorithm, how: Combination) -> Result<LeftAlgorithm> {
    let (xa, xb) = (a.0.bool_vectors()?, b.0.bool_vectors()?);
    let (ka, kb) = (a.arity(), b.arity());
    if ka + kb > MAX_EXPANDED_ARITY {
        return Err(Error::Unsupported(format!("{} combined queries", ka + kb)));
    }
    let accepted = all_bit_vectors(ka + kb).filter(|t| {
        let (left, right) = t.split_at(ka);
        match how {
            Combination::Union => xa.contains(left) || xb.contains(right),
            Combination::Intersection => xa.contains(left) && xb.contains(right),
        }
    });
    let queries = a.0.queries.iter().chain(&b.0.queries).cloned().collect();
    Ok(LeftAlgorithm(QueryAlgorithm::boolean(
        queries,
        accepted.collect::<Vec<_>>(),
    )?))
}

/// Algorithm for the complement class of a Boolean left algorithm.
pub fn complement(a: &LeftAlgorithm) -> Result<LeftAlgorithm> {
    let xa = a.0.bool_vectors()?;
    if a.arity() > MAX_EXPANDED_ARITY {
        return Err(Error::Unsupported(format!("{} queries", a.arity())));
    }
    let accepted: Vec<Vec<bool>> = all_bit_vectors(a.arity())
        .filter(|t| !xa.contains(t))
        .collect();
    Ok(LeftAlgorithm(QueryAlgorithm::boolean(
        a.0.queries.clone(),
        accepted,
    )?))
}
