//! Multi-level time structures and the checks that relate them.
//!
//! Concurrent systems are observed through pairs of relations over instants:
//! a coincidence relation identifying instants the observer cannot tell
//! apart, and a strict precedence relation ordering the ones it can. This
//! crate models finite prefixes of such observations, decides how two
//! observation levels of the same universe relate, and checks clock
//! constraints and their preservation across levels:
//!
//! - [`structure`]: [`TimeStructure`] with relation closure, consistency
//!   validation and pair classification.
//! - [`axioms`]: naive pair-by-pair re-evaluation of the order axioms,
//!   independent of the closure algorithm.
//! - [`enumerate`]: brute-force enumeration of every structure on a small
//!   universe, the oracle behind the law checks.
//! - [`refinement`]: the four-predicate refinement relation between levels
//!   and extensional equivalence of relation pairs.
//! - [`algebra`]: exhaustive verification that refinement is reflexive,
//!   transitive and antisymmetric up to equivalence.
//! - [`clocks`]: clocks (totally ordered tick sets), subclocking, union,
//!   clock refinement, and instance-level preservation checks.
//! - [`harness`]: exhaustive and seeded-random sweeps hunting for
//!   preservation counterexamples.
//!
//! All values are immutable after construction and every check is a pure
//! function of its inputs, so everything here can be shared and called from
//! multiple threads. With the `parallel` feature (on by default) the sweeps
//! in [`algebra`] and [`harness`] fan out on a rayon pool; results are
//! identical to the sequential fallback.

mod bits;
mod error;
#[cfg(test)]
pub(crate) mod testutil;

pub mod algebra;
pub mod axioms;
pub mod clocks;
pub mod enumerate;
pub mod harness;
pub mod refinement;
pub mod structure;
pub mod sweep;

pub use algebra::{Law, LawCounterexample, PropertyReport, verify_algebra, verify_algebra_with};
pub use axioms::{AxiomReport, check_axioms};
pub use clocks::{
    Clock, ConstraintVerdict, Hypothesis, PreservationVerdict, check_clock_refinement,
    check_subclock, check_subclock_preservation, check_union, check_union_preservation,
    validate_clock,
};
pub use enumerate::{MAX_ENUMERATION_SIZE, enumerate_structures};
pub use error::{Error, Result};
pub use harness::{
    HarnessReport, PreservationLaw, PreservationViolation, preservation_exhaustive,
    preservation_exhaustive_with, preservation_randomized, preservation_randomized_with,
};
pub use refinement::{
    EquivalenceReport, InclusionDirection, PredicateOutcome, RefinementPredicate, RefinementReport,
    check_equivalence, check_refinement,
};
pub use structure::{
    DEFAULT_UNIVERSE_CAP, InstantId, PairClassification, RelationSet, SpoViolation,
    SpoViolationKind, TimeStructure,
};
pub use sweep::Sweep;
