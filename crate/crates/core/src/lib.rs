//! Homomorphism counts and the query algorithms built from them.
//!
//! ```
//! use homquery::catalog::{edge, path};
//! use homquery::homomorphisms::{hom_count, Semiring};
//!
//! assert_eq!(hom_count(&edge(), &path(2), Semiring::Nat).unwrap(), 2);
//! ```
//!
//! The guide in `book/` walks through each module; its snippets run as
//! doctests of this crate.

pub mod algebra;
pub mod catalog;
pub mod counting_collapse;
pub mod duality;
pub mod error;
pub mod homomorphisms;
mod indexed;
pub mod limits;
pub mod oracle;
pub mod query_algorithms;
pub mod structures;
mod util;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/instances.md")]
    struct Instances;
    #[doc = include_str!("../../../book/src/homomorphisms.md")]
    struct Homomorphisms;
    #[doc = include_str!("../../../book/src/algebra.md")]
    struct Algebra;
    #[doc = include_str!("../../../book/src/query-algorithms.md")]
    struct QueryAlgorithms;
    #[doc = include_str!("../../../book/src/counting-collapse.md")]
    struct CountingCollapse;
    #[doc = include_str!("../../../book/src/dualities.md")]
    struct Dualities;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
