//! Clocks over a time structure and the constraints that relate them.
//!
//! A clock names the occurrences of one event: a set of ticks (instants)
//! that must be totally ordered by precedence — one timeline, on which no
//! two ticks coincide. On top of that sit three relations:
//!
//! - *subclocking*: every tick of the subclock is coincident with a tick of
//!   the superclock;
//! - *union*: a clock's ticks are, up to coincidence, exactly the ticks of
//!   two operand clocks;
//! - *clock refinement*: across two structures in refinement, abstract and
//!   concrete ticks cover each other up to the abstract coincidence.
//!
//! The preservation checks evaluate, on concrete data, the implications
//! "hypotheses ⇒ conclusion" that make subclocking and union stable under
//! refinement. They are instance-level: a run can come out vacuous (some
//! hypothesis fails), satisfied, or violated — and a violation would mean
//! the checker itself is wrong, which is what the harness hunts for.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::refinement::check_refinement;
use crate::structure::{InstantId, TimeStructure};

/// A named set of ticks, owned by some structure's universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clock {
    name: String,
    ticks: BTreeSet<InstantId>,
}

impl Clock {
    pub fn new(name: impl Into<String>, ticks: impl IntoIterator<Item = InstantId>) -> Self {
        Clock {
            name: name.into(),
            ticks: ticks.into_iter().collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Ticks in ascending instant order.
    pub fn ticks(&self) -> impl Iterator<Item = InstantId> + '_ {
        self.ticks.iter().copied()
    }

    pub fn tick_count(&self) -> usize {
        self.ticks.len()
    }

    pub fn contains(&self, tick: InstantId) -> bool {
        self.ticks.contains(&tick)
    }
}

/// Verdict of a single constraint check. A failing verdict names the least
/// tick for which the required partner does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintVerdict {
    pub holds: bool,
    pub witness: Option<InstantId>,
}

impl ConstraintVerdict {
    fn pass() -> Self {
        ConstraintVerdict {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: InstantId) -> Self {
        ConstraintVerdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Hypothesis of a preservation check, named for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// The concrete structure refines the abstract one.
    Refinement,
    /// The concrete subclocking `c1 ⊑ c2`.
    Subclock,
    /// Clock refinement of the first concrete operand.
    RefcLeft,
    /// Clock refinement of the second concrete operand.
    RefcRight,
    /// The concrete union expression `c0 = c1 ∪ c2`.
    Union,
}

impl Hypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::Refinement => "refinement",
            Hypothesis::Subclock => "subclock",
            Hypothesis::RefcLeft => "refc-left",
            Hypothesis::RefcRight => "refc-right",
            Hypothesis::Union => "union",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of an instance-level preservation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreservationVerdict {
    /// A hypothesis failed, so the implication holds trivially.
    Vacuous { failed_hypothesis: Hypothesis },
    /// All hypotheses and the conclusion hold.
    Satisfied,
    /// All hypotheses hold but the conclusion fails — a counterexample.
    Violated { detail: ConstraintVerdict },
}

impl PreservationVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, PreservationVerdict::Violated { .. })
    }
}

fn validate_clock_on(s: &TimeStructure, clock: &Clock) -> Result<ConstraintVerdict> {
    s.require_closed()?;
    for tick in clock.ticks() {
        s.require_instant(tick)?;
    }
    let ticks: Vec<InstantId> = clock.ticks().collect();
    for (i, &x) in ticks.iter().enumerate() {
        for &y in &ticks[i + 1..] {
            if !s.precedes(x, y) && !s.precedes(y, x) {
                return Ok(ConstraintVerdict::fail(x));
            }
        }
    }
    Ok(ConstraintVerdict::pass())
}

fn require_valid_clock(s: &TimeStructure, clock: &Clock) -> Result<()> {
    let verdict = validate_clock_on(s, clock)?;
    match verdict.witness {
        None => Ok(()),
        Some(witness) => Err(Error::InvalidClock {
            name: clock.name().to_owned(),
            witness: witness.index(),
        }),
    }
}

/// Checks that every pair of distinct ticks is strictly ordered one way or
/// the other. Empty and singleton clocks hold vacuously. A failing verdict
/// names the least tick of the least unordered pair.
pub fn validate_clock(s: &TimeStructure, clock: &Clock) -> Result<ConstraintVerdict> {
    validate_clock_on(s, clock)
}

/// Does every tick have a coincident partner among `candidates`?
fn covered(
    s: &TimeStructure,
    ticks: impl IntoIterator<Item = InstantId>,
    candidates: &[InstantId],
) -> ConstraintVerdict {
    for tick in ticks {
        if !candidates.iter().any(|&c| s.coincident(tick, c)) {
            return ConstraintVerdict::fail(tick);
        }
    }
    ConstraintVerdict::pass()
}

fn subclock_verdict(s: &TimeStructure, sub: &Clock, sup: &Clock) -> ConstraintVerdict {
    let sup_ticks: Vec<InstantId> = sup.ticks().collect();
    covered(s, sub.ticks(), &sup_ticks)
}

/// Decides `sub ⊑ sup` on `s`: every tick of `sub` is coincident with some
/// tick of `sup`.
pub fn check_subclock(s: &TimeStructure, sub: &Clock, sup: &Clock) -> Result<ConstraintVerdict> {
    require_valid_clock(s, sub)?;
    require_valid_clock(s, sup)?;
    Ok(subclock_verdict(s, sub, sup))
}

fn union_verdict(
    s: &TimeStructure,
    union_clock: &Clock,
    left: &Clock,
    right: &Clock,
) -> ConstraintVerdict {
    let union_ticks: Vec<InstantId> = union_clock.ticks().collect();
    let mut operand_ticks: Vec<InstantId> = left.ticks().chain(right.ticks()).collect();
    operand_ticks.sort_unstable();
    operand_ticks.dedup();

    let forward = covered(s, operand_ticks.iter().copied(), &union_ticks);
    if !forward.holds {
        return forward;
    }
    covered(s, union_clock.ticks(), &operand_ticks)
}

/// Decides `union_clock = left ∪ right` on `s`: every tick of either operand
/// has a coincident tick in the union, and every union tick has a coincident
/// tick in one of the operands.
pub fn check_union(
    s: &TimeStructure,
    union_clock: &Clock,
    left: &Clock,
    right: &Clock,
) -> Result<ConstraintVerdict> {
    require_valid_clock(s, union_clock)?;
    require_valid_clock(s, left)?;
    require_valid_clock(s, right)?;
    Ok(union_verdict(s, union_clock, left, right))
}

/// Both coverage conjuncts of clock refinement use the *abstract*
/// coincidence: the concrete level may split an abstract tick's
/// neighbourhood, but coverage is judged at the level being refined.
fn refc_verdict(
    abstract_structure: &TimeStructure,
    concrete_clock: &Clock,
    abstract_clock: &Clock,
) -> ConstraintVerdict {
    let concrete_ticks: Vec<InstantId> = concrete_clock.ticks().collect();
    let abstract_ticks: Vec<InstantId> = abstract_clock.ticks().collect();

    let forward = covered(abstract_structure, abstract_clock.ticks(), &concrete_ticks);
    if !forward.holds {
        return forward;
    }
    covered(abstract_structure, concrete_clock.ticks(), &abstract_ticks)
}

fn require_refinement_pair(concrete: &TimeStructure, abstract_: &TimeStructure) -> Result<()> {
    let report = check_refinement(concrete, abstract_)?;
    if report.holds {
        Ok(())
    } else {
        Err(Error::RefinementPrecondition {
            report: Box::new(report),
        })
    }
}

/// Decides whether `concrete_clock` refines `abstract_clock` across a pair
/// of structures already known to be in refinement.
///
/// Holds when every abstract tick has a concrete tick coincident to it under
/// the abstract coincidence, and every concrete tick is abstract-coincident
/// to some abstract tick. An unrefined structure pair is an error, distinct
/// from a failed verdict.
pub fn check_clock_refinement(
    concrete: &TimeStructure,
    abstract_: &TimeStructure,
    concrete_clock: &Clock,
    abstract_clock: &Clock,
) -> Result<ConstraintVerdict> {
    require_valid_clock(concrete, concrete_clock)?;
    require_valid_clock(abstract_, abstract_clock)?;
    require_refinement_pair(concrete, abstract_)?;
    Ok(refc_verdict(abstract_, concrete_clock, abstract_clock))
}

/// Instance-level preservation of subclocking under refinement.
///
/// Hypotheses, in reporting order: the structures are in refinement,
/// `sub ⊑ sup` on the concrete level, `sub` clock-refines `abstract_sub`,
/// and `sup` clock-refines `abstract_sup`. Conclusion:
/// `abstract_sub ⊑ abstract_sup` on the abstract level.
pub fn check_subclock_preservation(
    concrete: &TimeStructure,
    abstract_: &TimeStructure,
    sub: &Clock,
    sup: &Clock,
    abstract_sub: &Clock,
    abstract_sup: &Clock,
) -> Result<PreservationVerdict> {
    require_valid_clock(concrete, sub)?;
    require_valid_clock(concrete, sup)?;
    require_valid_clock(abstract_, abstract_sub)?;
    require_valid_clock(abstract_, abstract_sup)?;

    let hypotheses = [
        (
            Hypothesis::Refinement,
            check_refinement(concrete, abstract_)?.holds,
        ),
        (
            Hypothesis::Subclock,
            subclock_verdict(concrete, sub, sup).holds,
        ),
        (
            Hypothesis::RefcLeft,
            refc_verdict(abstract_, sub, abstract_sub).holds,
        ),
        (
            Hypothesis::RefcRight,
            refc_verdict(abstract_, sup, abstract_sup).holds,
        ),
    ];
    if let Some(&(failed, _)) = hypotheses.iter().find(|&&(_, ok)| !ok) {
        return Ok(PreservationVerdict::Vacuous {
            failed_hypothesis: failed,
        });
    }

    let conclusion = subclock_verdict(abstract_, abstract_sub, abstract_sup);
    Ok(if conclusion.holds {
        PreservationVerdict::Satisfied
    } else {
        PreservationVerdict::Violated { detail: conclusion }
    })
}

/// Instance-level preservation of union under refinement.
///
/// Hypotheses, in reporting order: the structures are in refinement, `left`
/// and `right` clock-refine `abstract_clock`, and `union_clock` is the union
/// of `left` and `right` on the concrete level. Conclusion: `union_clock`
/// clock-refines `abstract_clock`.
pub fn check_union_preservation(
    concrete: &TimeStructure,
    abstract_: &TimeStructure,
    union_clock: &Clock,
    left: &Clock,
    right: &Clock,
    abstract_clock: &Clock,
) -> Result<PreservationVerdict> {
    require_valid_clock(concrete, union_clock)?;
    require_valid_clock(concrete, left)?;
    require_valid_clock(concrete, right)?;
    require_valid_clock(abstract_, abstract_clock)?;

    let hypotheses = [
        (
            Hypothesis::Refinement,
            check_refinement(concrete, abstract_)?.holds,
        ),
        (
            Hypothesis::RefcLeft,
            refc_verdict(abstract_, left, abstract_clock).holds,
        ),
        (
            Hypothesis::RefcRight,
            refc_verdict(abstract_, right, abstract_clock).holds,
        ),
        (
            Hypothesis::Union,
            union_verdict(concrete, union_clock, left, right).holds,
        ),
    ];
    if let Some(&(failed, _)) = hypotheses.iter().find(|&&(_, ok)| !ok) {
        return Ok(PreservationVerdict::Vacuous {
            failed_hypothesis: failed,
        });
    }

    let conclusion = refc_verdict(abstract_, union_clock, abstract_clock);
    Ok(if conclusion.holds {
        PreservationVerdict::Satisfied
    } else {
        PreservationVerdict::Violated { detail: conclusion }
    })
}
