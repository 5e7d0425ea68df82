//! The refinement relation between two observation levels of one universe,
//! and extensional equivalence of relation pairs.
//!
//! Refinement compares a concrete (lower, finer) level against an abstract
//! (higher, coarser) level over the same instants. It holds when four
//! predicates hold for every ordered pair `(i, j)`:
//!
//! 1. *Precedence abstraction* — `i ≺_c j  ⇒  i ≺_a j ∨ i ≈_a j`: an order
//!    visible below either survives or collapses into coincidence above.
//! 2. *Precedence embodiment* — `i ≺_a j  ⇒  i ≺_c j`: an order visible
//!    above is never lost by looking closer.
//! 3. *Coincidence abstraction* — `i ≈_c j  ⇒  i ≈_a j`: what is
//!    indistinguishable below stays indistinguishable above.
//! 4. *Coincidence embodiment* — `i ≈_a j  ⇒  i ≈_c j ∨ i ≺_c j ∨ j ≺_c i`:
//!    instants merged above stay related below; they may split into an
//!    order but never become independent.

use std::fmt;

use crate::error::{Error, Result};
use crate::structure::{InstantId, TimeStructure};

/// The four predicates of the refinement relation, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefinementPredicate {
    PrecedenceAbstraction,
    PrecedenceEmbodiment,
    CoincidenceAbstraction,
    CoincidenceEmbodiment,
}

impl RefinementPredicate {
    pub const ALL: [RefinementPredicate; 4] = [
        RefinementPredicate::PrecedenceAbstraction,
        RefinementPredicate::PrecedenceEmbodiment,
        RefinementPredicate::CoincidenceAbstraction,
        RefinementPredicate::CoincidenceEmbodiment,
    ];

    /// Re-evaluates this predicate for one pair; used for witness soundness.
    pub fn eval(
        self,
        concrete: &TimeStructure,
        abstract_: &TimeStructure,
        i: InstantId,
        j: InstantId,
    ) -> bool {
        match self {
            RefinementPredicate::PrecedenceAbstraction => {
                !concrete.precedes(i, j) || abstract_.precedes(i, j) || abstract_.coincident(i, j)
            }
            RefinementPredicate::PrecedenceEmbodiment => {
                !abstract_.precedes(i, j) || concrete.precedes(i, j)
            }
            RefinementPredicate::CoincidenceAbstraction => {
                !concrete.coincident(i, j) || abstract_.coincident(i, j)
            }
            RefinementPredicate::CoincidenceEmbodiment => {
                !abstract_.coincident(i, j)
                    || concrete.coincident(i, j)
                    || concrete.precedes(i, j)
                    || concrete.precedes(j, i)
            }
        }
    }
}

impl RefinementPredicate {
    pub fn name(self) -> &'static str {
        match self {
            RefinementPredicate::PrecedenceAbstraction => "precedence abstraction",
            RefinementPredicate::PrecedenceEmbodiment => "precedence embodiment",
            RefinementPredicate::CoincidenceAbstraction => "coincidence abstraction",
            RefinementPredicate::CoincidenceEmbodiment => "coincidence embodiment",
        }
    }
}

impl fmt::Display for RefinementPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Verdict for one refinement predicate; a failing verdict carries the
/// lexicographically least violating pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredicateOutcome {
    pub predicate: RefinementPredicate,
    pub holds: bool,
    pub witness: Option<(InstantId, InstantId)>,
}

/// Result of a refinement check: the overall verdict plus all four
/// per-predicate verdicts (every predicate is always evaluated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementReport {
    pub holds: bool,
    pub predicates: [PredicateOutcome; 4],
}

impl RefinementReport {
    pub fn predicate(&self, p: RefinementPredicate) -> &PredicateOutcome {
        self.predicates
            .iter()
            .find(|o| o.predicate == p)
            .expect("report carries all four predicates")
    }

    pub fn failing(&self) -> impl Iterator<Item = &PredicateOutcome> {
        self.predicates.iter().filter(|o| !o.holds)
    }
}

/// Direction of a failed inclusion in an equivalence check, in the order the
/// four inclusions are tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InclusionDirection {
    CoincidenceForward,
    CoincidenceBackward,
    PrecedenceForward,
    PrecedenceBackward,
}

impl InclusionDirection {
    pub fn name(self) -> &'static str {
        match self {
            InclusionDirection::CoincidenceForward => "coincidence of left not in right",
            InclusionDirection::CoincidenceBackward => "coincidence of right not in left",
            InclusionDirection::PrecedenceForward => "precedence of left not in right",
            InclusionDirection::PrecedenceBackward => "precedence of right not in left",
        }
    }
}

/// Result of checking extensional equality of two relation pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub holds: bool,
    pub witness: Option<(InclusionDirection, (InstantId, InstantId))>,
}

fn require_comparable(a: &TimeStructure, b: &TimeStructure) -> Result<()> {
    a.require_closed()?;
    b.require_closed()?;
    if a.universe_size() != b.universe_size() {
        return Err(Error::UniverseMismatch {
            left: a.universe_size(),
            right: b.universe_size(),
        });
    }
    Ok(())
}

/// Decides whether `concrete` refines `abstract_`.
///
/// Both structures must be closed, consistent and on the same universe.
/// The report lists every failing predicate with its least witness pair.
pub fn check_refinement(
    concrete: &TimeStructure,
    abstract_: &TimeStructure,
) -> Result<RefinementReport> {
    require_comparable(concrete, abstract_)?;
    concrete.require_valid()?;
    abstract_.require_valid()?;

    let mut outcomes = RefinementPredicate::ALL.map(|predicate| PredicateOutcome {
        predicate,
        holds: true,
        witness: None,
    });

    'scan: for i in concrete.instants() {
        for j in concrete.instants() {
            for outcome in outcomes.iter_mut() {
                if outcome.holds && !outcome.predicate.eval(concrete, abstract_, i, j) {
                    outcome.holds = false;
                    outcome.witness = Some((i, j));
                }
            }
            if outcomes.iter().all(|o| !o.holds) {
                break 'scan;
            }
        }
    }

    Ok(RefinementReport {
        holds: outcomes.iter().all(|o| o.holds),
        predicates: outcomes,
    })
}

/// Decides whether the two relation pairs are extensionally equal: both
/// coincidences coincide as sets and both precedences do.
pub fn check_equivalence(s1: &TimeStructure, s2: &TimeStructure) -> Result<EquivalenceReport> {
    require_comparable(s1, s2)?;

    type Inclusion<'a> = (InclusionDirection, &'a dyn Fn(InstantId, InstantId) -> bool);
    let inclusions: [Inclusion; 4] = [
        (InclusionDirection::CoincidenceForward, &|i, j| {
            !s1.coincident(i, j) || s2.coincident(i, j)
        }),
        (InclusionDirection::CoincidenceBackward, &|i, j| {
            !s2.coincident(i, j) || s1.coincident(i, j)
        }),
        (InclusionDirection::PrecedenceForward, &|i, j| {
            !s1.precedes(i, j) || s2.precedes(i, j)
        }),
        (InclusionDirection::PrecedenceBackward, &|i, j| {
            !s2.precedes(i, j) || s1.precedes(i, j)
        }),
    ];

    for (direction, ok) in inclusions {
        for i in s1.instants() {
            for j in s1.instants() {
                if !ok(i, j) {
                    return Ok(EquivalenceReport {
                        holds: false,
                        witness: Some((direction, (i, j))),
                    });
                }
            }
        }
    }
    Ok(EquivalenceReport {
        holds: true,
        witness: None,
    })
}
