//! JSON reports with a stable, versioned schema.
//!
//! Every report object orders its fields claim-first, then the verdict,
//! then per-predicate results, then witnesses; witnesses are instant
//! indices or `[from, to]` index pairs. The run document wraps the claim
//! reports with a top-level `schemaVersion` of [`SCHEMA_VERSION`] and a
//! summary block.

use serde_json::{Value, json};

use chronoref_core::harness::HarnessReport;
use chronoref_core::{
    ConstraintVerdict, EquivalenceReport, InstantId, LawCounterexample, PreservationVerdict,
    PropertyReport, RefinementPredicate, RefinementReport, SpoViolation, SpoViolationKind,
    TimeStructure,
};

use crate::ast::Claim;

pub const SCHEMA_VERSION: u32 = 1;

/// Types that render themselves as a JSON report fragment.
pub trait ToReportJson {
    fn report_json(&self) -> Value;
}

fn pair_json(pair: (InstantId, InstantId)) -> Value {
    json!([pair.0.index(), pair.1.index()])
}

fn predicate_key(p: RefinementPredicate) -> &'static str {
    match p {
        RefinementPredicate::PrecedenceAbstraction => "precedenceAbstraction",
        RefinementPredicate::PrecedenceEmbodiment => "precedenceEmbodiment",
        RefinementPredicate::CoincidenceAbstraction => "coincidenceAbstraction",
        RefinementPredicate::CoincidenceEmbodiment => "coincidenceEmbodiment",
    }
}

impl ToReportJson for RefinementReport {
    fn report_json(&self) -> Value {
        let predicates: Vec<Value> = self
            .predicates
            .iter()
            .map(|outcome| {
                let mut entry = json!({
                    "predicate": predicate_key(outcome.predicate),
                    "holds": outcome.holds,
                });
                if let Some(witness) = outcome.witness {
                    entry["witness"] = pair_json(witness);
                }
                entry
            })
            .collect();
        json!({ "holds": self.holds, "predicates": predicates })
    }
}

impl ToReportJson for EquivalenceReport {
    fn report_json(&self) -> Value {
        let mut out = json!({ "holds": self.holds });
        if let Some((direction, pair)) = self.witness {
            out["failedInclusion"] = json!(direction.name());
            out["witness"] = pair_json(pair);
        }
        out
    }
}

impl ToReportJson for ConstraintVerdict {
    fn report_json(&self) -> Value {
        let mut out = json!({ "holds": self.holds });
        if let Some(witness) = self.witness {
            out["witness"] = json!(witness.index());
        }
        out
    }
}

impl ToReportJson for PreservationVerdict {
    fn report_json(&self) -> Value {
        match self {
            PreservationVerdict::Satisfied => json!({ "status": "satisfied" }),
            PreservationVerdict::Vacuous { failed_hypothesis } => json!({
                "status": "vacuous",
                "failedHypothesis": failed_hypothesis.name(),
            }),
            PreservationVerdict::Violated { detail } => json!({
                "status": "violated",
                "detail": detail.report_json(),
            }),
        }
    }
}

impl ToReportJson for [SpoViolation] {
    fn report_json(&self) -> Value {
        let violations: Vec<Value> = self
            .iter()
            .map(|v| {
                let kind = match v.kind {
                    SpoViolationKind::IrreflexivityTowardCoincidence => {
                        "irreflexivityTowardCoincidence"
                    }
                };
                json!({ "kind": kind, "witness": pair_json(v.witness) })
            })
            .collect();
        json!({ "holds": self.is_empty(), "violations": violations })
    }
}

impl ToReportJson for TimeStructure {
    fn report_json(&self) -> Value {
        let pairs = |rel: Vec<(InstantId, InstantId)>| -> Vec<Value> {
            rel.into_iter().map(pair_json).collect()
        };
        json!({
            "universe": self.universe_size(),
            "coincidence": pairs(self.coincidence_pairs()),
            "precedence": pairs(self.precedence_pairs()),
        })
    }
}

impl ToReportJson for PropertyReport {
    fn report_json(&self) -> Value {
        let mut out = json!({
            "law": self.law.name(),
            "universeSize": self.universe_size,
            "instancesChecked": self.instances_checked,
            "holds": self.holds(),
        });
        if let Some(cex) = &self.counterexample {
            let structures: Vec<&TimeStructure> = match cex {
                LawCounterexample::Reflexivity(s) => vec![s],
                LawCounterexample::Transitivity(a, b, c) => vec![a, b, c],
                LawCounterexample::Antisymmetry(a, b) => vec![a, b],
            };
            out["counterexample"] =
                Value::Array(structures.into_iter().map(|s| s.report_json()).collect());
        }
        out
    }
}

impl ToReportJson for HarnessReport {
    fn report_json(&self) -> Value {
        let mut out = json!({
            "law": self.law.name(),
            "instances": self.instances,
            "satisfied": self.satisfied,
            "vacuous": self.vacuous,
            "violated": self.violated,
        });
        if let Some(violation) = &self.first_violation {
            out["firstViolation"] = json!({
                "concrete": violation.concrete.report_json(),
                "abstract": violation.abstract_.report_json(),
                "clocks": violation.clocks.iter().map(|c| json!({
                    "name": c.name(),
                    "ticks": c.ticks().map(|t| t.index()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "verdict": violation.verdict.report_json(),
            });
        }
        out
    }
}

/// Result of evaluating one claim against its document.
#[derive(Debug, Clone, PartialEq)]
pub enum ClaimOutcome {
    Spo(Vec<SpoViolation>),
    Refines(RefinementReport),
    Constraint(ConstraintVerdict),
    Preservation(PreservationVerdict),
    /// The claim could not be evaluated (precondition or structural error).
    Error(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimStatus {
    Passed,
    Failed,
    Vacuous,
}

impl ClaimOutcome {
    pub fn status(&self) -> ClaimStatus {
        match self {
            ClaimOutcome::Spo(violations) if violations.is_empty() => ClaimStatus::Passed,
            ClaimOutcome::Spo(_) => ClaimStatus::Failed,
            ClaimOutcome::Refines(report) if report.holds => ClaimStatus::Passed,
            ClaimOutcome::Refines(_) => ClaimStatus::Failed,
            ClaimOutcome::Constraint(verdict) if verdict.holds => ClaimStatus::Passed,
            ClaimOutcome::Constraint(_) => ClaimStatus::Failed,
            ClaimOutcome::Preservation(PreservationVerdict::Satisfied) => ClaimStatus::Passed,
            ClaimOutcome::Preservation(PreservationVerdict::Vacuous { .. }) => ClaimStatus::Vacuous,
            ClaimOutcome::Preservation(PreservationVerdict::Violated { .. }) => ClaimStatus::Failed,
            ClaimOutcome::Error(_) => ClaimStatus::Failed,
        }
    }
}

/// A claim together with its outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedClaim {
    pub claim: Claim,
    pub outcome: ClaimOutcome,
}

/// Aggregate counts over a run; the exit code is 0 exactly when nothing
/// failed (vacuous preservation claims do not fail).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub claims_total: u64,
    pub claims_passed: u64,
    pub claims_failed: u64,
    pub claims_vacuous: u64,
}

impl RunSummary {
    pub fn tally(claims: &[EvaluatedClaim]) -> RunSummary {
        let mut summary = RunSummary {
            claims_total: claims.len() as u64,
            ..RunSummary::default()
        };
        for claim in claims {
            match claim.outcome.status() {
                ClaimStatus::Passed => summary.claims_passed += 1,
                ClaimStatus::Failed => summary.claims_failed += 1,
                ClaimStatus::Vacuous => summary.claims_vacuous += 1,
            }
        }
        summary
    }

    pub fn exit_code(&self) -> u8 {
        if self.claims_failed == 0 { 0 } else { 1 }
    }
}

/// JSON for one evaluated claim: the claim name and operands first, then
/// the body of the underlying report.
pub fn claim_json(evaluated: &EvaluatedClaim) -> Value {
    let mut out = json!({
        "claim": evaluated.claim.keyword(),
        "operands": evaluated.claim.operands(),
    });
    let body = match &evaluated.outcome {
        ClaimOutcome::Spo(violations) => violations.as_slice().report_json(),
        ClaimOutcome::Refines(report) => report.report_json(),
        ClaimOutcome::Constraint(verdict) => verdict.report_json(),
        ClaimOutcome::Preservation(verdict) => verdict.report_json(),
        ClaimOutcome::Error(message) => json!({ "error": message }),
    };
    if let (Value::Object(out), Value::Object(body)) = (&mut out, body) {
        out.extend(body);
    }
    out
}

/// The whole-run JSON document.
pub fn run_json(claims: &[EvaluatedClaim]) -> Value {
    let summary = RunSummary::tally(claims);
    json!({
        "schemaVersion": SCHEMA_VERSION,
        "claims": claims.iter().map(claim_json).collect::<Vec<_>>(),
        "summary": {
            "total": summary.claims_total,
            "passed": summary.claims_passed,
            "failed": summary.claims_failed,
            "vacuous": summary.claims_vacuous,
        },
    })
}
