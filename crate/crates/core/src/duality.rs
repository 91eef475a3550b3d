//! Finite homomorphism dualities.
//!
//! A pair `(F, D)` is a duality when, for every instance `A`, some member of
//! `F` maps into `A` exactly when `A` maps into no member of `D`. Dualities
//! quantify over all instances, so [`verify_duality`] can only refute a
//! claimed pair or confirm it on every instance up to a size bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homomorphisms::{core, hom_exists};
use crate::limits::Limits;
use crate::oracle::universe;
use crate::query_algorithms::{QueryAlgorithm, RightAlgorithm};
use crate::structures::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairWire", into = "PairWire")]
pub struct DualityPair {
    obstructions: Vec<Instance>,
    duals: Vec<Instance>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairWire {
    #[serde(rename = "F")]
    obstructions: Vec<Instance>,
    #[serde(rename = "D")]
    duals: Vec<Instance>,
}

impl TryFrom<PairWire> for DualityPair {
    type Error = Error;

    fn try_from(w: PairWire) -> Result<Self> {
        DualityPair::new(w.obstructions, w.duals)
    }
}

impl From<DualityPair> for PairWire {
    fn from(p: DualityPair) -> Self {
        PairWire {
            obstructions: p.obstructions,
            duals: p.duals,
        }
    }
}

impl DualityPair {
    pub fn new(obstructions: Vec<Instance>, duals: Vec<Instance>) -> Result<Self> {
        let first = obstructions
            .first()
            .ok_or(Error::EmptyList("obstruction set"))?;
        if duals.is_empty() {
            return Err(Error::EmptyList("dual set"));
        }
        for x in obstructions.iter().chain(&duals) {
            first.ensure_same_schema(x)?;
        }
        Ok(DualityPair {
            obstructions,
            duals,
        })
    }

    pub fn obstructions(&self) -> &[Instance] {
        &self.obstructions
    }

    pub fn duals(&self) -> &[Instance] {
        &self.duals
    }

    /// Whether the two sides of the duality agree on `a`.
    pub fn agrees_on(&self, a: &Instance) -> Result<bool> {
        let mut obstructed = false;
        for f in &self.obstructions {
            if hom_exists(f, a)? {
                obstructed = true;
                break;
            }
        }
        let mut free = true;
        for d in &self.duals {
            if hom_exists(a, d)? {
                free = false;
                break;
            }
        }
        Ok(obstructed == free)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DualityVerdict {
    /// Every instance with at most `bound` elements agrees; `checked` counts
    /// the isomorphism classes examined (the zero-element instance included).
    HoldsUpToBound {
        bound: usize,
        checked: usize,
    },
    Counterexample {
        instance: Instance,
    },
}

impl DualityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, DualityVerdict::HoldsUpToBound { .. })
    }
}

/// Checks the pair on the zero-element instance and on one instance per
/// isomorphism class with `1..=bound` elements, in enumeration order, and
/// reports the first disagreement.
pub fn verify_duality(pair: &DualityPair, bound: usize, limits: &Limits) -> Result<DualityVerdict> {
    let schema = pair.obstructions[0].schema();
    let all = universe(schema, bound, limits)?;
    for a in &all {
        if !pair.agrees_on(a)? {
            return Ok(DualityVerdict::Counterexample {
                instance: a.clone(),
            });
        }
    }
    Ok(DualityVerdict::HoldsUpToBound {
        bound,
        checked: all.len(),
    })
}

/// Whether the core of `a` has infinite girth.
pub fn core_is_acyclic(a: &Instance) -> bool {
    core(a).is_acyclic()
}

/// `({B}, {(1)})` over 𝔹: accepts exactly the instances that map into `B`.
pub fn csp_right_algorithm(template: &Instance) -> RightAlgorithm {
    RightAlgorithm::new(
        QueryAlgorithm::boolean(vec![template.clone()], [vec![true]])
            .expect("one query, one coordinate"),
    )
}

/// `({A} ∪ D, {(1, 0, …, 0)})` over 𝔹: accepts `C` when `C → A` and `C`
/// maps into no member of `D`. When `({A}, D)` is a duality this is exactly
/// the class of instances homomorphically equivalent to `A`.
pub fn homtype_right_algorithm(a: &Instance, duals: &[Instance]) -> Result<RightAlgorithm> {
    if duals.is_empty() {
        return Err(Error::EmptyList("dual set"));
    }
    let mut queries = vec![a.clone()];
    queries.extend(duals.iter().cloned());
    let mut pattern = vec![false; queries.len()];
    pattern[0] = true;
    Ok(RightAlgorithm::new(QueryAlgorithm::boolean(
        queries,
        [pattern],
    )?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub pair: DualityPair,
    pub verdict: DualityVerdict,
}

/// Given a Boolean right algorithm for `{B : A → B}`, proposes
/// `({A}, {F_i : A ↛ F_i})` and checks it up to `bound`.
pub fn extract_duality(
    algorithm: &RightAlgorithm,
    a: &Instance,
    bound: usize,
    limits: &Limits,
) -> Result<Extraction> {
    if algorithm.semiring() != crate::homomorphisms::Semiring::Bool {
        return Err(Error::InvalidAlgorithm(
            "expected a Boolean algorithm".into(),
        ));
    }
    let mut duals = Vec::new();
    for f in algorithm.queries() {
        a.ensure_same_schema(f)?;
        if !hom_exists(a, f)? {
            duals.push(f.clone());
        }
    }
    if duals.is_empty() {
        return Err(Error::EmptyCandidate);
    }
    let pair = DualityPair::new(vec![a.clone()], duals)?;
    let verdict = verify_duality(&pair, bound, limits)?;
    Ok(Extraction { pair, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_sum;
    use crate::catalog::*;
    use crate::structures::Schema;

    fn trivial_pair() -> DualityPair {
        DualityPair::new(vec![edge()], vec![factless(1)]).unwrap()
    }

    #[test]
    fn trivial_duality_holds() {
        let verdict = verify_duality(&trivial_pair(), 3, &Limits::default()).unwrap();
        assert_eq!(
            verdict,
            DualityVerdict::HoldsUpToBound {
                bound: 3,
                checked: 117
            }
        );
        assert_eq!(
            verify_duality(&trivial_pair(), 0, &Limits::default()).unwrap(),
            DualityVerdict::HoldsUpToBound {
                bound: 0,
                checked: 1
            }
        );
    }

    #[test]
    fn triangle_is_not_an_obstruction_for_factless() {
        let pair = DualityPair::new(vec![symmetric_clique(3)], vec![factless(1)]).unwrap();
        let verdict = verify_duality(&pair, 3, &Limits::default()).unwrap();
        let DualityVerdict::Counterexample { instance } = verdict else {
            panic!("expected a counterexample");
        };
        assert_eq!(instance.to_string(), "{R(v0,v1)}");
    }

    #[test]
    fn acyclic_cores() {
        assert!(!core_is_acyclic(&symmetric_clique(3)));
        assert!(core_is_acyclic(
            &direct_sum(&Schema::binary(), &[edge(), edge()]).unwrap()
        ));
        assert!(!core_is_acyclic(&directed_cycle(3)));
        assert!(core_is_acyclic(&path(2)));
    }

    #[test]
    fn csp_algorithm() {
        let alg = csp_right_algorithm(&symmetric_clique(3));
        assert!(alg.eval(&symmetric_cycle(5)).unwrap());
        assert!(!alg.eval(&loop_()).unwrap());
        assert!(alg.eval(&Instance::empty(&Schema::binary())).unwrap());
    }

    #[test]
    fn homtype_and_extraction() {
        let alg = homtype_right_algorithm(&edge(), &[factless(1)]).unwrap();
        assert!(alg
            .eval(&direct_sum(&Schema::binary(), &[edge(), edge()]).unwrap())
            .unwrap());
        assert!(!alg.eval(&path(2)).unwrap());
        assert!(!alg.eval(&factless(2)).unwrap());
        assert!(!alg.eval(&directed_cycle(2)).unwrap());
        assert_eq!(
            homtype_right_algorithm(&edge(), &[]),
            Err(Error::EmptyList("dual set"))
        );

        let out = extract_duality(&alg, &edge(), 3, &Limits::default()).unwrap();
        assert_eq!(out.pair.duals(), &[factless(1)]);
        assert!(out.verdict.holds());

        let only_targets = csp_right_algorithm(&loop_());
        assert_eq!(
            extract_duality(&only_targets, &edge(), 3, &Limits::default()),
            Err(Error::EmptyCandidate)
        );
    }

    #[test]
    fn pair_json() {
        let text = serde_json::to_string(&trivial_pair()).unwrap();
        assert!(text.starts_with(r#"{"F":[{"schema""#));
        let back: DualityPair = serde_json::from_str(&text).unwrap();
        assert_eq!(back, trivial_pair());
        assert!(serde_json::from_str::<DualityPair>(r#"{"F":[],"D":[]}"#).is_err());
    }
}
