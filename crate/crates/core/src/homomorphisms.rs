//! Homomorphism existence and counting over the Boolean semiring and the
//! natural numbers, surjective counting, homomorphic equivalence and cores.
//!
//! Searches backtrack over the source elements with forward checking against
//! the target relations. Sources are first split into connected components:
//! the number of homomorphisms from a disjoint union is the product of the
//! numbers for its parts, so each part is searched on its own (and parts with
//! the same shape are searched once).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indexed::{HomSearch, Indexed, TargetIndex};
use crate::structures::Instance;
use crate::util::combinations;

/// The two counting semirings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semiring {
    /// `({0,1}, ∨, ∧, 0, 1)`
    Bool,
    /// `(ℕ, +, ×, 0, 1)`
    Nat,
}

impl Semiring {
    pub fn add(self, a: u64, b: u64) -> Result<u64> {
        match self {
            Semiring::Bool => Ok(u64::from(a != 0 || b != 0)),
            Semiring::Nat => a.checked_add(b).ok_or(Error::Overflow("adding counts")),
        }
    }

    pub fn mul(self, a: u64, b: u64) -> Result<u64> {
        match self {
            Semiring::Bool => Ok(u64::from(a != 0 && b != 0)),
            Semiring::Nat => a
                .checked_mul(b)
                .ok_or(Error::Overflow("multiplying counts")),
        }
    }

    /// Image of a natural-number count in this semiring.
    pub fn project(self, count: u64) -> u64 {
        match self {
            Semiring::Bool => u64::from(count != 0),
            Semiring::Nat => count,
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semiring::Bool => "bool",
            Semiring::Nat => "nat",
        })
    }
}

impl FromStr for Semiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bool" | "B" => Ok(Semiring::Bool),
            "nat" | "N" => Ok(Semiring::Nat),
            other => Err(Error::Parse(format!("unknown semiring `{other}`"))),
        }
    }
}

/// A total map between element sets that sends every source fact to a
/// target fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub map: BTreeMap<String, String>,
}

impl Homomorphism {
    /// Checks totality and fact preservation of `map` from `source` to
    /// `target`.
    pub fn is_valid(&self, source: &Instance, target: &Instance) -> bool {
        source.elements().iter().all(|e| {
            self.map
                .get(e)
                .is_some_and(|image| target.contains_element(image))
        }) && source.facts().all(|(relation, tuple)| {
            let image: Vec<String> = tuple.iter().map(|e| self.map[e].clone()).collect();
            target.has_fact(relation, &image)
        })
    }
}

/// `hom_K(source, target)`: the number of homomorphisms for [`Semiring::Nat`],
/// or whether one exists for [`Semiring::Bool`]. The zero-element source has
/// exactly one homomorphism (the empty map) into every target.
pub fn hom_count(source: &Instance, target: &Instance, semiring: Semiring) -> Result<u64> {
    match semiring {
        Semiring::Bool => hom_exists(source, target).map(u64::from),
        Semiring::Nat => count_homomorphisms(source, target),
    }
}

pub fn count_homomorphisms(source: &Instance, target: &Instance) -> Result<u64> {
    source.ensure_same_schema(target)?;
    let index = TargetIndex::new(target);
    let mut memo = HashMap::new();
    let mut total: u64 = 1;
    for part in source.connected_components() {
        let n = match memo.get(&part.shape_key()) {
            Some(&n) => n,
            None => {
                let n = HomSearch::new(&Indexed::new(&part), &index)
                    .count()
                    .ok_or(Error::Overflow("counting homomorphisms"))?;
                memo.insert(part.shape_key(), n);
                n
            }
        };
        total = total
            .checked_mul(n)
            .ok_or(Error::Overflow("counting homomorphisms"))?;
        if total == 0 {
            break;
        }
    }
    Ok(total)
}

pub fn hom_exists(source: &Instance, target: &Instance) -> Result<bool> {
    source.ensure_same_schema(target)?;
    if source.element_count() == 0 {
        return Ok(true);
    }
    if target.element_count() == 0 {
        return Ok(false);
    }
    let index = TargetIndex::new(target);
    let mut seen = std::collections::HashSet::new();
    for part in source.connected_components() {
        if seen.insert(part.shape_key()) && !HomSearch::new(&Indexed::new(&part), &index).exists() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some homomorphism, if one exists.
pub fn find_homomorphism(source: &Instance, target: &Instance) -> Result<Option<Homomorphism>> {
    source.ensure_same_schema(target)?;
    let index = TargetIndex::new(target);
    let indexed = Indexed::new(source);
    let mut found = None;
    HomSearch::new(&indexed, &index).for_each(|assignment| {
        found = Some(assignment.to_vec());
        true
    });
    let target_names: Vec<&String> = target.elements().iter().collect();
    Ok(found.map(|assignment| Homomorphism {
        map: source
            .elements()
            .iter()
            .zip(assignment)
            .map(|(e, x)| (e.clone(), target_names[x as usize].clone()))
            .collect(),
    }))
}

/// Number of homomorphisms `source → target` whose range lies inside
/// `range`.
pub fn hom_count_range_restricted<S: AsRef<str>>(
    source: &Instance,
    target: &Instance,
    range: &[S],
) -> Result<u64> {
    source.ensure_same_schema(target)?;
    count_homomorphisms(source, &target.induced(range)?)
}

/// Largest target for which inclusion-exclusion over all element subsets is
/// attempted.
const MAX_SURJECTION_TARGET: usize = 24;

/// Number of homomorphisms whose range is the whole element set of
/// `target`, by inclusion-exclusion over range-restricted counts.
pub fn surjective_hom_count(source: &Instance, target: &Instance) -> Result<u64> {
    source.ensure_same_schema(target)?;
    let names: Vec<&String> = target.elements().iter().collect();
    let n = names.len();
    if n > MAX_SURJECTION_TARGET {
        return Err(Error::SizeCap {
            what: "inclusion-exclusion terms",
            requested: 1u128 << n.min(127),
            limit: 1u128 << MAX_SURJECTION_TARGET,
        });
    }
    if n > source.element_count() {
        return Ok(0);
    }
    let mut total: i128 = 0;
    for size in 0..=n {
        let sign: i128 = if (n - size).is_multiple_of(2) { 1 } else { -1 };
        for subset in combinations(n, size) {
            let range: Vec<&str> = subset.iter().map(|&i| names[i].as_str()).collect();
            total += sign * i128::from(hom_count_range_restricted(source, target, &range)?);
        }
    }
    u64::try_from(total).map_err(|_| Error::VerificationFailed("negative surjection count".into()))
}

/// `A → B` and `B → A`.
pub fn hom_equivalent(a: &Instance, b: &Instance) -> Result<bool> {
    Ok(hom_exists(a, b)? && hom_exists(b, a)?)
}

/// The core of `instance`: the induced subinstance on the lexicographically
/// least element subset of minimum size that `instance` maps into.
pub fn core(instance: &Instance) -> Instance {
    let names: Vec<&String> = instance.elements().iter().collect();
    let n = names.len();
    for size in 0..n {
        for subset in combinations(n, size) {
            let kept: Vec<&str> = subset.iter().map(|&i| names[i].as_str()).collect();
            let candidate = instance.induced(&kept).expect("subset of own elements");
            if hom_exists(instance, &candidate).expect("same schema") {
                return candidate;
            }
        }
    }
    instance.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_sum;
    use crate::catalog::*;
    use crate::structures::Schema;

    fn sum(parts: &[Instance]) -> Instance {
        direct_sum(&Schema::binary(), parts).unwrap()
    }

    #[test]
    fn counting_examples() {
        assert_eq!(hom_count(&edge(), &loop_(), Semiring::Nat).unwrap(), 1);
        let k3 = symmetric_clique(3);
        assert_eq!(hom_count(&k3, &k3, Semiring::Nat).unwrap(), 6);
        assert_eq!(
            hom_count(&directed_cycle(3), &edge(), Semiring::Nat).unwrap(),
            0
        );
        assert_eq!(
            hom_count(&directed_cycle(3), &edge(), Semiring::Bool).unwrap(),
            0
        );
        assert_eq!(hom_count(&k3, &k3, Semiring::Bool).unwrap(), 1);
    }

    #[test]
    fn empty_source_has_one_homomorphism() {
        let empty = Instance::empty(&Schema::binary());
        assert_eq!(count_homomorphisms(&empty, &empty).unwrap(), 1);
        assert_eq!(count_homomorphisms(&empty, &edge()).unwrap(), 1);
        assert_eq!(count_homomorphisms(&edge(), &empty).unwrap(), 0);
        assert_eq!(count_homomorphisms(&factless(2), &factless(3)).unwrap(), 9);
    }

    #[test]
    fn schema_mismatch_is_reported() {
        let other = Schema::new([("S", 1)]).unwrap();
        let s = Instance::from_facts(&other, [("S", vec!["a"])]).unwrap();
        assert_eq!(
            hom_count(&edge(), &s, Semiring::Nat),
            Err(Error::SchemaMismatch)
        );
        assert_eq!(
            surjective_hom_count(&edge(), &s),
            Err(Error::SchemaMismatch)
        );
        assert_eq!(hom_equivalent(&edge(), &s), Err(Error::SchemaMismatch));
    }

    #[test]
    fn range_restricted_examples() {
        let p = path(2);
        assert_eq!(
            hom_count_range_restricted(&edge(), &p, &["v0", "v1"]).unwrap(),
            1
        );
        assert_eq!(
            hom_count_range_restricted::<&str>(&edge(), &p, &[]).unwrap(),
            0
        );
        assert_eq!(
            hom_count_range_restricted(&edge(), &p, &["v0", "v1", "v2"]).unwrap(),
            2
        );
        assert!(matches!(
            hom_count_range_restricted(&edge(), &p, &["nope"]),
            Err(Error::NotSubset(_))
        ));
    }

    #[test]
    fn surjection_examples() {
        assert_eq!(surjective_hom_count(&edge(), &edge()).unwrap(), 1);
        assert_eq!(surjective_hom_count(&path(2), &edge()).unwrap(), 0);
        assert_eq!(
            surjective_hom_count(&sum(&[edge(), edge()]), &edge()).unwrap(),
            1
        );
        assert_eq!(surjective_hom_count(&factless(3), &factless(2)).unwrap(), 6);
    }

    #[test]
    fn equivalence_examples() {
        assert!(hom_equivalent(&edge(), &sum(&[edge(), edge()])).unwrap());
        assert!(!hom_equivalent(&edge(), &path(2)).unwrap());
        assert!(!hom_equivalent(&loop_(), &edge()).unwrap());
    }

    #[test]
    fn core_examples() {
        assert!(core(&sum(&[edge(), edge()]))
            .is_isomorphic(&edge())
            .unwrap());
        assert!(core(&sum(&[loop_(), edge()]))
            .is_isomorphic(&loop_())
            .unwrap());
        let c3 = directed_cycle(3);
        assert_eq!(core(&c3), c3);
        assert_eq!(core(&factless(3)), factless(1));
        let empty = Instance::empty(&Schema::binary());
        assert_eq!(core(&empty), empty);
        // tie-break picks the lexicographically least retract
        let two = sum(&[edge(), edge()]);
        assert_eq!(
            core(&two).elements().iter().collect::<Vec<_>>(),
            ["0.a", "0.b"]
        );
    }

    #[test]
    fn found_homomorphisms_are_valid() {
        let h = find_homomorphism(&symmetric_cycle(5), &symmetric_clique(3))
            .unwrap()
            .unwrap();
        assert!(h.is_valid(&symmetric_cycle(5), &symmetric_clique(3)));
        assert!(find_homomorphism(&loop_(), &symmetric_clique(3))
            .unwrap()
            .is_none());
    }

    #[test]
    fn semiring_parsing() {
        assert_eq!("bool".parse::<Semiring>().unwrap(), Semiring::Bool);
        assert_eq!("nat".parse::<Semiring>().unwrap(), Semiring::Nat);
        assert!("int".parse::<Semiring>().is_err());
    }
}
