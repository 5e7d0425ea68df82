//! Evaluates the claims of a parsed document against closed structures.

use std::collections::BTreeMap;

use chronoref_core::{
    Clock, Error, TimeStructure, check_clock_refinement, check_refinement, check_subclock,
    check_subclock_preservation, check_union, check_union_preservation,
};
use chronoref_dsl::{Claim, ClaimOutcome, EvaluatedClaim, SpecDocument};

/// A document with every level closed, ready to run claims.
pub struct Engine<'doc> {
    doc: &'doc SpecDocument,
    structures: BTreeMap<String, TimeStructure>,
}

impl<'doc> Engine<'doc> {
    pub fn new(doc: &'doc SpecDocument) -> Self {
        let mut structures = BTreeMap::new();
        for name in doc.levels.keys() {
            let structure = doc.level_structure(name).expect("name comes from the map");
            structures.insert(name.clone(), structure.close());
        }
        Engine { doc, structures }
    }

    pub fn structure(&self, level: &str) -> Option<&TimeStructure> {
        self.structures.get(level)
    }

    fn clock(&self, name: &str) -> Option<(Clock, &TimeStructure)> {
        let decl = self.doc.clocks.get(name)?;
        let structure = self.structures.get(&decl.level)?;
        Some((Clock::new(name, decl.ticks.iter().copied()), structure))
    }

    /// Runs every claim in document order.
    pub fn evaluate_all(&self) -> Vec<EvaluatedClaim> {
        self.doc
            .claims
            .iter()
            .map(|claim| EvaluatedClaim {
                claim: claim.clone(),
                outcome: self.evaluate(claim),
            })
            .collect()
    }

    fn evaluate(&self, claim: &Claim) -> ClaimOutcome {
        match self.try_evaluate(claim) {
            Ok(outcome) => outcome,
            Err(err) => ClaimOutcome::Error(err.to_string()),
        }
    }

    fn try_evaluate(&self, claim: &Claim) -> Result<ClaimOutcome, EvalError> {
        let structure = |name: &str| {
            self.structure(name)
                .ok_or_else(|| EvalError(format!("unknown level {name:?}")))
        };
        let clock = |name: &str| {
            self.clock(name)
                .ok_or_else(|| EvalError(format!("unknown clock {name:?}")))
        };
        Ok(match claim {
            Claim::Spo { level } => ClaimOutcome::Spo(structure(level)?.validate_spo()?),
            Claim::Refines {
                concrete,
                abstract_,
            } => ClaimOutcome::Refines(check_refinement(
                structure(concrete)?,
                structure(abstract_)?,
            )?),
            Claim::Subclock { sub, sup } => {
                let (sub, on) = clock(sub)?;
                let (sup, _) = clock(sup)?;
                ClaimOutcome::Constraint(check_subclock(on, &sub, &sup)?)
            }
            Claim::Union {
                union_clock,
                left,
                right,
            } => {
                let (union_clock, on) = clock(union_clock)?;
                let (left, _) = clock(left)?;
                let (right, _) = clock(right)?;
                ClaimOutcome::Constraint(check_union(on, &union_clock, &left, &right)?)
            }
            Claim::ClockRefines {
                concrete,
                abstract_,
            } => {
                let (concrete_clock, concrete_structure) = clock(concrete)?;
                let (abstract_clock, abstract_structure) = clock(abstract_)?;
                ClaimOutcome::Constraint(check_clock_refinement(
                    concrete_structure,
                    abstract_structure,
                    &concrete_clock,
                    &abstract_clock,
                )?)
            }
            Claim::PreserveSubclock {
                sub,
                sup,
                abstract_sub,
                abstract_sup,
            } => {
                let (sub, concrete) = clock(sub)?;
                let (sup, _) = clock(sup)?;
                let (abstract_sub, abstract_) = clock(abstract_sub)?;
                let (abstract_sup, _) = clock(abstract_sup)?;
                ClaimOutcome::Preservation(check_subclock_preservation(
                    concrete,
                    abstract_,
                    &sub,
                    &sup,
                    &abstract_sub,
                    &abstract_sup,
                )?)
            }
            Claim::PreserveUnion {
                union_clock,
                left,
                right,
                abstract_clock,
            } => {
                let (union_clock, concrete) = clock(union_clock)?;
                let (left, _) = clock(left)?;
                let (right, _) = clock(right)?;
                let (abstract_clock, abstract_) = clock(abstract_clock)?;
                ClaimOutcome::Preservation(check_union_preservation(
                    concrete,
                    abstract_,
                    &union_clock,
                    &left,
                    &right,
                    &abstract_clock,
                )?)
            }
        })
    }
}

struct EvalError(String);

impl From<Error> for EvalError {
    fn from(err: Error) -> Self {
        EvalError(err.to_string())
    }
}

impl std::fmt::Display for EvalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}
