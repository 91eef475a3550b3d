//! Turning count vectors into instances.
//!
//! The pieces here build, for connected pairwise non-isomorphic queries
//! `F_1, …, F_s` and two instances `A`, `B` whose left profiles share a
//! zero pattern, instances `A′ ↔ A` and `B′ ↔ B` with identical left
//! profiles over ℕ. The route is:
//!
//! 1. a family `H_1, …, H_r` whose count vectors `t_j = hom(F, H_j)` have no
//!    zero coordinate and separate every pair of coordinates
//!    ([`build_h_family`], using [`lovasz_witness`]);
//! 2. an integer polynomial `p(y)` in `y = a_1x_1 + ⋯ + a_rx_r` with
//!    `p(t(i)) = b(i)` ([`solve_polynomial`]);
//! 3. an instance `H_q` with `hom(F_i, H_q) = q(t(i))` for every polynomial
//!    `q` with nonnegative coefficients ([`instance_of_polynomial`]).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{direct_product, direct_sum, odometer, product_size};
use crate::error::{Error, Result};
use crate::homomorphisms::{count_homomorphisms, hom_equivalent, surjective_hom_count};
use crate::limits::Limits;
use crate::structures::{Instance, Schema};
use crate::util::combinations;

/// `p(y) = e_1·y + e_2·y² + ⋯ + e_s·yˢ` where `y = a_1x_1 + ⋯ + a_rx_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPolynomial {
    pub a: Vec<u64>,
    #[serde(serialize_with = "ser_bigints", deserialize_with = "de_bigints")]
    pub e: Vec<BigInt>,
}

/// `p = pos − neg` with both halves having nonnegative coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPolynomial {
    pub pos: IntPolynomial,
    pub neg: IntPolynomial,
}

/// Big integers go to JSON as numbers when they fit in `i64` and as decimal
/// strings otherwise.
pub fn bigint_to_json(value: &BigInt) -> serde_json::Value {
    match value.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(value.to_string()),
    }
}

pub fn bigint_from_json(value: &serde_json::Value) -> Result<BigInt> {
    match value {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        serde_json::Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("`{s}` is not an integer"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

fn ser_bigints<S: Serializer>(values: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    values
        .iter()
        .map(bigint_to_json)
        .collect::<Vec<_>>()
        .serialize(s)
}

fn de_bigints<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    Vec::<serde_json::Value>::deserialize(d)?
        .iter()
        .map(|v| bigint_from_json(v).map_err(serde::de::Error::custom))
        .collect()
}

impl IntPolynomial {
    pub fn zero(variables: usize, degree: usize) -> Self {
        IntPolynomial {
            a: vec![0; variables],
            e: vec![BigInt::zero(); degree],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Zero::is_zero)
    }

    /// `y` at the point `x`.
    pub fn inner(&self, x: &[u64]) -> BigInt {
        self.a
            .iter()
            .zip(x)
            .map(|(&a, &x)| BigInt::from(a) * x)
            .sum()
    }

    /// `p(x)`. Missing trailing coordinates of `x` count as zero.
    pub fn evaluate(&self, x: &[u64]) -> BigInt {
        let y = self.inner(x);
        let mut power = BigInt::one();
        let mut total = BigInt::zero();
        for e in &self.e {
            power *= &y;
            total += e * &power;
        }
        total
    }

    pub fn split(&self) -> SplitPolynomial {
        let half = |keep: fn(&BigInt) -> BigInt| IntPolynomial {
            a: self.a.clone(),
            e: self.e.iter().map(keep).collect(),
        };
        SplitPolynomial {
            pos: half(|e| {
                if e.is_positive() {
                    e.clone()
                } else {
                    BigInt::zero()
                }
            }),
            neg: half(|e| if e.is_negative() { -e } else { BigInt::zero() }),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y = ")?;
        let mut first = true;
        for (j, &a) in self.a.iter().enumerate().filter(|(_, &a)| a != 0) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a != 1 {
                write!(f, "{a}·")?;
            }
            write!(f, "x{}", j + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "; p = ")?;
        let mut first = true;
        for (k, e) in self.e.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
            let sign = if e.is_negative() { "-" } else { "+" };
            match (first, sign) {
                (true, "-") => write!(f, "-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            first = false;
            let m = e.abs();
            if !m.is_one() {
                write!(f, "{m}")?;
            }
            write!(f, "y")?;
            if k > 0 {
                write!(f, "^{}", k + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Largest `r` for which all `a ∈ {0,1,2}^r` are tried.
const MAX_SEARCHED_VARIABLES: usize = 8;

fn check_combination_preconditions(vectors: &[Vec<u64>]) -> Result<usize> {
    let s = vectors
        .first()
        .ok_or(Error::EmptyList("vector list"))?
        .len();
    if let Some(bad) = vectors.iter().find(|t| t.len() != s) {
        return Err(Error::LengthMismatch {
            what: "count vector",
            expected: s,
            found: bad.len(),
        });
    }
    for i in 0..s {
        if vectors.iter().all(|t| t[i] == 0) {
            return Err(Error::NoPositiveEntry { coordinate: i });
        }
    }
    for pair in combinations(s, 2) {
        let (i, k) = (pair[0], pair[1]);
        if vectors.iter().all(|t| t[i] == t[k]) {
            return Err(Error::Unseparated {
                first: i,
                second: k,
            });
        }
    }
    Ok(s)
}

fn combine(vectors: &[Vec<u64>], a: &[u64], s: usize) -> Option<Vec<u64>> {
    let mut u = vec![0u64; s];
    for (t, &aj) in vectors.iter().zip(a) {
        for (ui, &ti) in u.iter_mut().zip(t) {
            *ui = ui.checked_add(aj.checked_mul(ti)?)?;
        }
    }
    Some(u)
}

fn distinct_positive(u: &[u64]) -> bool {
    let mut sorted = u.to_vec();
    sorted.sort_unstable();
    sorted.first().is_none_or(|&m| m > 0) && sorted.windows(2).all(|w| w[0] != w[1])
}

fn distinct_count(u: &[u64]) -> usize {
    let mut sorted = u.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Nonnegative `a` such that `u = a_1t_1 + ⋯ + a_rt_r` has pairwise distinct
/// positive entries.
///
/// Every coordinate must be nonzero in some vector and every two
/// coordinates must differ in some vector. Among `a ∈ {0,1,2}^r` the choice
/// with the smallest [`vandermonde_c`] is taken (ties: smaller `Σa`, then
/// lexicographically smaller `a`). When no such `a` works or `r` is large,
/// `a` starts at all ones and is repeatedly bumped along the first vector
/// that separates a tied pair, by the smallest amount that increases the
/// number of distinct entries.
pub fn find_distinct_positive_combination(vectors: &[Vec<u64>]) -> Result<(Vec<u64>, Vec<u64>)> {
    let s = check_combination_preconditions(vectors)?;
    let r = vectors.len();

    if r <= MAX_SEARCHED_VARIABLES {
        let mut best: Option<(BigInt, u64, Vec<u64>, Vec<u64>)> = None;
        for digits in odometer(&vec![3; r]) {
            let a: Vec<u64> = digits.iter().map(|&d| d as u64).collect();
            let Some(u) = combine(vectors, &a, s) else {
                continue;
            };
            if !distinct_positive(&u) {
                continue;
            }
            let c = vandermonde_c(&u)?;
            let weight: u64 = a.iter().sum();
            let better = match &best {
                None => true,
                Some((bc, bw, ba, _)) => (&c, weight, &a) < (bc, *bw, ba),
            };
            if better {
                best = Some((c, weight, a, u));
            }
        }
        if let Some((_, _, a, u)) = best {
            return Ok((a, u));
        }
    }

    let mut a = vec![1u64; r];
    let mut u = combine(vectors, &a, s).ok_or(Error::Overflow("combining count vectors"))?;
    while !distinct_positive(&u) {
        let tied: Vec<(usize, usize)> = combinations(s, 2)
            .map(|p| (p[0], p[1]))
            .filter(|&(i, k)| u[i] == u[k])
            .collect();
        let j = (0..r)
            .find(|&j| tied.iter().any(|&(i, k)| vectors[j][i] != vectors[j][k]))
            .expect("separation precondition checked");
        let before = distinct_count(&u);
        let mut d = 1u64;
        loop {
            let candidate: Vec<u64> = u
                .iter()
                .zip(&vectors[j])
                .map(|(&ui, &ti)| d.checked_mul(ti).and_then(|x| x.checked_add(ui)))
                .collect::<Option<_>>()
                .ok_or(Error::Overflow("separating coordinates"))?;
            if distinct_count(&candidate) > before {
                a[j] = a[j]
                    .checked_add(d)
                    .ok_or(Error::Overflow("separating coordinates"))?;
                u = candidate;
                break;
            }
            d += 1;
        }
    }
    Ok((a, u))
}

/// `|det M|` where row `k` of `M` is `(u_1^k, …, u_s^k)`, which equals
/// `u_1⋯u_s · ∏_{i<j} |u_j − u_i|`.
pub fn vandermonde_c(u: &[u64]) -> Result<BigInt> {
    if !distinct_positive(u) {
        return Err(Error::NotDistinctPositive);
    }
    let mut c: BigInt = u.iter().map(|&x| BigInt::from(x)).product();
    for pair in combinations(u.len(), 2) {
        c *= BigInt::from(u[pair[0]].abs_diff(u[pair[1]]));
    }
    Ok(c)
}

/// Fraction-free Gaussian elimination.
fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut previous = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &previous;
                m[i][j] = v;
            }
        }
        previous = m[k][k].clone();
    }
    sign * m
        .last()
        .and_then(|row| row.last())
        .cloned()
        .unwrap_or_else(BigInt::one)
}

fn solve_at(a: Vec<u64>, u: &[u64], b: &[BigInt]) -> Result<IntPolynomial> {
    let s = u.len();
    let c = vandermonde_c(u)?;
    for (i, bi) in b.iter().enumerate() {
        if !bi.is_multiple_of(&c) {
            return Err(Error::Divisibility {
                coordinate: i,
                value: bi.to_string(),
                divisor: c.to_string(),
            });
        }
    }
    // row i: (u_i, u_i², …, u_i^s)
    let matrix: Vec<Vec<BigInt>> = u
        .iter()
        .map(|&ui| {
            let ui = BigInt::from(ui);
            let mut power = BigInt::one();
            (0..s)
                .map(|_| {
                    power *= &ui;
                    power.clone()
                })
                .collect()
        })
        .collect();
    let det = determinant(matrix.clone());
    let mut e = Vec::with_capacity(s);
    for k in 0..s {
        let mut replaced = matrix.clone();
        for (row, bi) in replaced.iter_mut().zip(b) {
            row[k] = bi.clone();
        }
        let (q, rem) = determinant(replaced).div_rem(&det);
        if !rem.is_zero() {
            return Err(Error::VerificationFailed(format!(
                "coefficient {k} is not integral"
            )));
        }
        e.push(q);
    }
    let p = IntPolynomial { a, e };
    for (i, bi) in b.iter().enumerate() {
        let y = u[i];
        let mut power = BigInt::one();
        let value: BigInt =
            p.e.iter()
                .map(|ek| {
                    power *= y;
                    ek * &power
                })
                .sum();
        if &value != bi {
            return Err(Error::VerificationFailed(format!(
                "interpolation misses coordinate {i}"
            )));
        }
    }
    Ok(p)
}

/// An integer polynomial with zero constant term and degree at most `s`
/// such that `p(t_1(i), …, t_r(i)) = b(i)` for every coordinate `i`.
///
/// The vectors must satisfy the preconditions of
/// [`find_distinct_positive_combination`], and every `b(i)` must be a
/// multiple of [`vandermonde_c`] of the chosen `u`.
pub fn solve_polynomial(vectors: &[Vec<u64>], b: &[BigInt]) -> Result<IntPolynomial> {
    let (a, u) = find_distinct_positive_combination(vectors)?;
    if b.len() != u.len() {
        return Err(Error::LengthMismatch {
            what: "target vector",
            expected: u.len(),
            found: b.len(),
        });
    }
    solve_at(a, &u, b)
}

/// An induced subinstance of `F′` on which `F` and `F′` have different
/// homomorphism counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LovaszWitness {
    pub instance: Instance,
    pub subset: Vec<String>,
    pub source_count: u64,
    pub target_count: u64,
}

/// Searches the element subsets `S` of `F′` by increasing size, then
/// lexicographically, for the first induced subinstance `H` with
/// `hom(F, H) ≠ hom(F′, H)`. Such an `S` exists whenever there is no
/// surjective homomorphism `F → F′`.
pub fn lovasz_witness(f: &Instance, f_prime: &Instance) -> Result<LovaszWitness> {
    f.ensure_same_schema(f_prime)?;
    if surjective_hom_count(f, f_prime)? > 0 {
        return Err(Error::SurjectionExists);
    }
    let names: Vec<&String> = f_prime.elements().iter().collect();
    for size in 0..=names.len() {
        for subset in combinations(names.len(), size) {
            let subset: Vec<String> = subset.iter().map(|&i| names[i].clone()).collect();
            let h = f_prime.induced(&subset)?;
            let source_count = count_homomorphisms(f, &h)?;
            let target_count = count_homomorphisms(f_prime, &h)?;
            if source_count != target_count {
                return Ok(LovaszWitness {
                    instance: h,
                    subset,
                    source_count,
                    target_count,
                });
            }
        }
    }
    Err(Error::VerificationFailed(
        "no distinguishing subinstance although no surjection exists".into(),
    ))
}

fn check_query_family(queries: &[Instance]) -> Result<()> {
    let first = queries.first().ok_or(Error::EmptyList("query list"))?;
    for (i, q) in queries.iter().enumerate() {
        first.ensure_same_schema(q)?;
        if !q.is_connected() {
            return Err(Error::NotConnected(i));
        }
    }
    for pair in combinations(queries.len(), 2) {
        if queries[pair[0]].is_isomorphic(&queries[pair[1]])? {
            return Err(Error::DuplicateQuery(pair[0], pair[1]));
        }
    }
    Ok(())
}

/// `t_j(i) = hom(F_i, H_j)`, one vector per member of `family`.
pub fn count_vectors(queries: &[Instance], family: &[Instance]) -> Result<Vec<Vec<u64>>> {
    family
        .iter()
        .map(|h| queries.iter().map(|f| count_homomorphisms(f, h)).collect())
        .collect()
}

/// The queries themselves, followed by a [`lovasz_witness`] for every
/// ordered pair `(F_i, F_i′)` without a surjective homomorphism, with
/// isomorphic duplicates dropped.
pub fn build_h_family(queries: &[Instance]) -> Result<Vec<Instance>> {
    check_query_family(queries)?;
    let mut family: Vec<Instance> = queries.to_vec();
    for i in 0..queries.len() {
        for k in 0..queries.len() {
            if i == k || surjective_hom_count(&queries[i], &queries[k])? > 0 {
                continue;
            }
            let witness = lovasz_witness(&queries[i], &queries[k])?.instance;
            let mut seen = false;
            for h in &family {
                if h.is_isomorphic(&witness)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                family.push(witness);
            }
        }
    }
    check_combination_preconditions(&count_vectors(queries, &family)?)
        .map_err(|e| Error::VerificationFailed(format!("family count vectors: {e}")))?;
    Ok(family)
}

fn to_count(value: &BigInt, what: &'static str, limit: u128) -> Result<usize> {
    value
        .to_usize()
        .filter(|&n| n as u128 <= limit)
        .ok_or_else(|| Error::SizeCap {
            what,
            requested: value.to_u128().unwrap_or(u128::MAX),
            limit,
        })
}

fn sum_of(schema: &Schema, mut parts: Vec<Instance>) -> Instance {
    if parts.len() == 1 {
        return parts.pop().expect("one part");
    }
    direct_sum(schema, &parts).expect("parts share the schema")
}

/// `H_q` for a polynomial with nonnegative coefficients: `H_y` is `a_j`
/// copies of each `H_j`, `H_{y^k}` is the `k`-fold product of `H_y`, and
/// `H_q` is `e_k` copies of each `H_{y^k}`. The zero polynomial gives the
/// zero-element instance. For connected `F`,
/// `hom(F, H_q) = q(hom(F, H_1), …, hom(F, H_r))`.
pub fn instance_of_polynomial(
    q: &IntPolynomial,
    family: &[Instance],
    limits: &Limits,
) -> Result<Instance> {
    let schema = family
        .first()
        .ok_or(Error::EmptyList("instance family"))?
        .schema();
    if family.iter().any(|h| h.schema() != schema) {
        return Err(Error::SchemaMismatch);
    }
    if q.a.len() != family.len() {
        return Err(Error::LengthMismatch {
            what: "polynomial variables",
            expected: family.len(),
            found: q.a.len(),
        });
    }
    if q.e.iter().any(Signed::is_negative) {
        return Err(Error::NegativeCoefficient);
    }
    if q.is_zero() {
        return Ok(Instance::empty(schema));
    }

    let y_elements: u128 =
        q.a.iter()
            .zip(family)
            .map(|(&a, h)| u128::from(a).saturating_mul(h.element_count() as u128))
            .fold(0, u128::saturating_add);
    limits.check_elements("polynomial instance elements", y_elements)?;
    let mut y_parts = Vec::new();
    for (&a, h) in q.a.iter().zip(family) {
        for _ in 0..a {
            y_parts.push(h.clone());
        }
    }
    let h_y = sum_of(schema, y_parts);

    let mut total_elements = 0u128;
    let mut total_facts = 0u128;
    for (k, e) in q.e.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
        let e = to_count(e, "polynomial coefficient", limits.max_elements)? as u128;
        let (elements, facts) = product_size(&vec![h_y.clone(); k + 1]);
        total_elements = total_elements.saturating_add(e.saturating_mul(elements));
        total_facts = total_facts.saturating_add(e.saturating_mul(facts));
    }
    limits.check_elements("polynomial instance elements", total_elements)?;
    limits.check_facts("polynomial instance facts", total_facts)?;

    let mut parts = Vec::new();
    for (k, e) in q.e.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
        let power = if k == 0 {
            h_y.clone()
        } else {
            direct_product(&vec![h_y.clone(); k + 1], limits)?
        };
        let n = to_count(e, "polynomial coefficient", limits.max_elements)?;
        parts.extend(std::iter::repeat_n(power.clone(), n));
    }
    Ok(sum_of(schema, parts))
}

/// Result of [`profile_collision`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub a_prime: Instance,
    pub b_prime: Instance,
    /// The common left profile `hom(F, A′) = hom(F, B′)`.
    pub profile: Vec<u64>,
    /// Number of copies of `A` and of `B`.
    #[serde(serialize_with = "ser_bigint", deserialize_with = "de_bigint")]
    pub copies: BigInt,
    pub polynomial: IntPolynomial,
    pub family: Vec<Instance>,
}

fn ser_bigint<S: Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    bigint_to_json(value).serialize(s)
}

fn de_bigint<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
    bigint_from_json(&serde_json::Value::deserialize(d)?).map_err(serde::de::Error::custom)
}

/// Instances `A′ ↔ A` and `B′ ↔ B` with `hom(F, A′) = hom(F, B′)`.
///
/// `F` must consist of connected, pairwise non-isomorphic instances and
/// the left profiles of `A` and `B` over `F` must have the same zero
/// pattern. Writing `F⁺` for the queries with a nonzero count, the family
/// `H` is built for `F⁺`, `c` is [`vandermonde_c`] of the chosen
/// combination and `p` interpolates `c·(hom(F⁺, B) − hom(F⁺, A))`. Then
/// `A′ = c·A ⊕ H_{p⁺}` and `B′ = c·B ⊕ H_{p⁻}`. Every postcondition is
/// checked before returning.
pub fn profile_collision(
    queries: &[Instance],
    a: &Instance,
    b: &Instance,
    limits: &Limits,
) -> Result<Collision> {
    check_query_family(queries)?;
    let schema = queries[0].schema();
    queries[0].ensure_same_schema(a)?;
    queries[0].ensure_same_schema(b)?;

    let alpha: Vec<u64> = queries
        .iter()
        .map(|f| count_homomorphisms(f, a))
        .collect::<Result<_>>()?;
    let beta: Vec<u64> = queries
        .iter()
        .map(|f| count_homomorphisms(f, b))
        .collect::<Result<_>>()?;
    if alpha.iter().zip(&beta).any(|(&x, &y)| (x == 0) != (y == 0)) {
        return Err(Error::ZeroPatternMismatch);
    }

    let support: Vec<usize> = (0..queries.len()).filter(|&i| alpha[i] > 0).collect();
    if support.is_empty() {
        return Ok(Collision {
            a_prime: a.clone(),
            b_prime: b.clone(),
            profile: alpha,
            copies: BigInt::one(),
            polynomial: IntPolynomial::zero(0, 0),
            family: Vec::new(),
        });
    }
    let positive: Vec<Instance> = support.iter().map(|&i| queries[i].clone()).collect();
    let family = build_h_family(&positive)?;
    let vectors = count_vectors(&positive, &family)?;
    let (combo, u) = find_distinct_positive_combination(&vectors)?;
    let c = vandermonde_c(&u)?;
    let target: Vec<BigInt> = support
        .iter()
        .map(|&i| &c * (BigInt::from(beta[i]) - BigInt::from(alpha[i])))
        .collect();
    let polynomial = solve_at(combo, &u, &target)?;
    let split = polynomial.split();

    let copy_count = to_count(&c, "copies of the inputs", limits.max_elements)?;
    for x in [a, b] {
        limits.check_elements(
            "copies of the inputs",
            (copy_count as u128).saturating_mul(x.element_count() as u128),
        )?;
    }
    let h_pos = instance_of_polynomial(&split.pos, &family, limits)?;
    let h_neg = instance_of_polynomial(&split.neg, &family, limits)?;
    let assemble = |x: &Instance, h: Instance| {
        let mut parts = vec![x.clone(); copy_count];
        if h.element_count() > 0 {
            parts.push(h);
        }
        sum_of(schema, parts)
    };
    let a_prime = assemble(a, h_pos);
    let b_prime = assemble(b, h_neg);

    let profile_a: Vec<u64> = queries
        .iter()
        .map(|f| count_homomorphisms(f, &a_prime))
        .collect::<Result<_>>()?;
    let profile_b: Vec<u64> = queries
        .iter()
        .map(|f| count_homomorphisms(f, &b_prime))
        .collect::<Result<_>>()?;
    if profile_a != profile_b {
        return Err(Error::VerificationFailed(format!(
            "profiles differ: {profile_a:?} vs {profile_b:?}"
        )));
    }
    if !hom_equivalent(&a_prime, a)? || !hom_equivalent(&b_prime, b)? {
        return Err(Error::VerificationFailed(
            "output is not homomorphically equivalent to its input".into(),
        ));
    }
    Ok(Collision {
        a_prime,
        b_prime,
        profile: profile_a,
        copies: c,
        polynomial,
        family,
    })
}
