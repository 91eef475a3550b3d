//! Direct sums, direct products, repeated copies and exponentials of
//! instances.
//!
//! Constructed elements get deterministic string names: a summand element
//! `e` of part `i` becomes `"i.e"`, a product element is the JSON array of
//! its coordinates, and an element of `Y^Z` is the JSON array of the images
//! of `Z`'s elements (in sorted order).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::limits::{saturating_pow, Limits};
use crate::structures::{Instance, Schema, Tuple};

/// Disjoint union. The empty list gives the zero-element instance.
pub fn direct_sum(schema: &Schema, parts: &[Instance]) -> Result<Instance> {
    let mut elements = BTreeSet::new();
    let mut facts: BTreeMap<String, BTreeSet<Tuple>> = BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        if part.schema() != schema {
            return Err(Error::SchemaMismatch);
        }
        let tag = |e: &String| format!("{i}.{e}");
        elements.extend(part.elements().iter().map(tag));
        for (relation, tuple) in part.facts() {
            facts
                .entry(relation.to_owned())
                .or_default()
                .insert(tuple.iter().map(tag).collect());
        }
    }
    Ok(Instance::from_parts_unchecked(schema, elements, facts))
}

/// `n` disjoint copies of `instance`.
pub fn copies(instance: &Instance, n: usize) -> Instance {
    let parts = vec![instance.clone(); n];
    direct_sum(instance.schema(), &parts).expect("copies share a schema")
}

fn product_name(coordinates: &[&str]) -> String {
    serde_json::to_string(coordinates).expect("strings serialize")
}

/// Element count and fact count of the product, saturating.
pub(crate) fn product_size(parts: &[Instance]) -> (u128, u128) {
    let elements = parts.iter().fold(1u128, |acc, p| {
        acc.saturating_mul(p.element_count() as u128)
    });
    let schema = parts[0].schema();
    let facts = schema
        .relations()
        .map(|(relation, _)| {
            parts.iter().fold(1u128, |acc, p| {
                acc.saturating_mul(p.relation(relation).count() as u128)
            })
        })
        .fold(0u128, u128::saturating_add);
    (elements, facts)
}

/// Categorical product. Its elements are all coordinate tuples, and a tuple
/// of product elements is a fact exactly when every coordinate projection
/// is.
pub fn direct_product(parts: &[Instance], limits: &Limits) -> Result<Instance> {
    let first = parts
        .first()
        .ok_or(Error::EmptyList("product operand list"))?;
    let schema = first.schema();
    if parts.iter().any(|p| p.schema() != schema) {
        return Err(Error::SchemaMismatch);
    }
    let (element_count, fact_count) = product_size(parts);
    limits.check_elements("product elements", element_count)?;
    limits.check_facts("product facts", fact_count)?;

    let element_lists: Vec<Vec<&str>> = parts
        .iter()
        .map(|p| p.elements().iter().map(String::as_str).collect())
        .collect();
    let elements: BTreeSet<String> =
        odometer(&element_lists.iter().map(Vec::len).collect::<Vec<_>>())
            .map(|idx| {
                let coords: Vec<&str> =
                    idx.iter().zip(&element_lists).map(|(&i, l)| l[i]).collect();
                product_name(&coords)
            })
            .collect();

    let mut facts: BTreeMap<String, BTreeSet<Tuple>> = BTreeMap::new();
    for (relation, arity) in schema.relations() {
        let fact_lists: Vec<Vec<&Tuple>> = parts
            .iter()
            .map(|p| p.relation(relation).collect())
            .collect();
        let sizes: Vec<usize> = fact_lists.iter().map(Vec::len).collect();
        let out = facts.entry(relation.to_owned()).or_default();
        for idx in odometer(&sizes) {
            let chosen: Vec<&Tuple> = idx.iter().zip(&fact_lists).map(|(&i, l)| l[i]).collect();
            let tuple = (0..arity)
                .map(|pos| {
                    let coords: Vec<&str> = chosen.iter().map(|t| t[pos].as_str()).collect();
                    product_name(&coords)
                })
                .collect();
            out.insert(tuple);
        }
    }
    Ok(Instance::from_parts_unchecked(schema, elements, facts))
}

/// The exponential `base^exponent`: elements are all maps from the
/// exponent's elements to the base's, and `(f_1, …, f_r)` is an `R`-fact
/// when every `R`-fact `(z_1, …, z_r)` of the exponent lands on an `R`-fact
/// `(f_1(z_1), …, f_r(z_r))` of the base. It satisfies
/// `X → base^exponent` iff `X ⊗ exponent → base`.
pub fn exponential(base: &Instance, exponent: &Instance, limits: &Limits) -> Result<Instance> {
    base.ensure_same_schema(exponent)?;
    let schema = base.schema();
    let ys: Vec<&str> = base.elements().iter().map(String::as_str).collect();
    let zs: Vec<&String> = exponent.elements().iter().collect();
    let function_count = saturating_pow(ys.len() as u128, zs.len());
    limits.check_elements("exponential elements", function_count)?;
    for (_, arity) in schema.relations() {
        limits.check_functions(
            "exponential candidate facts",
            saturating_pow(function_count, arity),
        )?;
    }

    let z_index: BTreeMap<&str, usize> = zs
        .iter()
        .enumerate()
        .map(|(i, z)| (z.as_str(), i))
        .collect();
    let functions: Vec<Vec<usize>> = odometer(&vec![ys.len(); zs.len()]).collect();
    let names: Vec<String> = functions
        .iter()
        .map(|f| product_name(&f.iter().map(|&y| ys[y]).collect::<Vec<_>>()))
        .collect();
    let base_index: BTreeMap<&str, usize> = ys.iter().enumerate().map(|(i, y)| (*y, i)).collect();

    let mut facts: BTreeMap<String, BTreeSet<Tuple>> = BTreeMap::new();
    for (relation, arity) in schema.relations() {
        let base_facts: BTreeSet<Vec<usize>> = base
            .relation(relation)
            .map(|t| t.iter().map(|e| base_index[e.as_str()]).collect())
            .collect();
        let constraints: Vec<Vec<usize>> = exponent
            .relation(relation)
            .map(|t| t.iter().map(|z| z_index[z.as_str()]).collect())
            .collect();
        let out = facts.entry(relation.to_owned()).or_default();
        let mut image = vec![0usize; arity];
        for choice in odometer(&vec![functions.len(); arity]) {
            let holds = constraints.iter().all(|zt| {
                for (p, &z) in zt.iter().enumerate() {
                    image[p] = functions[choice[p]][z];
                }
                base_facts.contains(&image)
            });
            if holds {
                out.insert(choice.iter().map(|&f| names[f].clone()).collect());
            }
        }
    }
    Ok(Instance::from_parts_unchecked(
        schema,
        names.iter().cloned().collect(),
        facts,
    ))
}

/// Mixed-radix counter over `0..sizes[0] × … × 0..sizes[n-1]`, last digit
/// fastest. Yields one empty vector when `sizes` is empty and nothing when
/// some size is zero.
pub(crate) fn odometer(sizes: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut current: Option<Vec<usize>> = if sizes.contains(&0) {
        None
    } else {
        Some(vec![0; sizes.len()])
    };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = sizes.len();
        current = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < sizes[i] {
                break Some(next);
            }
            next[i] = 0;
        };
        Some(out)
    })
}
