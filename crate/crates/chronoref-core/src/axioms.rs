//! Direct pair-by-pair evaluation of the seven order axioms.
//!
//! This is deliberately naive — plain triple loops over the closed relations
//! with no shortcuts — so it can serve as an independent check on whatever
//! the closure computed.

use crate::error::Result;
use crate::structure::{InstantId, TimeStructure};

/// Outcome of checking each axiom conjunct directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomReport {
    pub coincidence_reflexive: bool,
    pub coincidence_transitive: bool,
    pub coincidence_symmetric: bool,
    pub precedence_irreflexive_toward_coincidence: bool,
    pub precedence_transitive: bool,
    pub precedence_respects_coincidence_left: bool,
    pub precedence_respects_coincidence_right: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.conjuncts().iter().all(|&(_, ok)| ok)
    }

    /// Conjunct names and verdicts, in the order the axioms are stated.
    pub fn conjuncts(&self) -> [(&'static str, bool); 7] {
        [
            ("coincidence reflexive", self.coincidence_reflexive),
            ("coincidence transitive", self.coincidence_transitive),
            ("coincidence symmetric", self.coincidence_symmetric),
            (
                "precedence irreflexive toward coincidence",
                self.precedence_irreflexive_toward_coincidence,
            ),
            ("precedence transitive", self.precedence_transitive),
            (
                "precedence respects coincidence (left)",
                self.precedence_respects_coincidence_left,
            ),
            (
                "precedence respects coincidence (right)",
                self.precedence_respects_coincidence_right,
            ),
        ]
    }
}

/// Evaluates all seven conjuncts on a closed structure.
pub fn check_axioms(s: &TimeStructure) -> Result<AxiomReport> {
    s.require_closed()?;
    let ids: Vec<InstantId> = s.instants().collect();
    let eq = |a: InstantId, b: InstantId| s.coincident(a, b);
    let lt = |a: InstantId, b: InstantId| s.precedes(a, b);

    let mut report = AxiomReport {
        coincidence_reflexive: true,
        coincidence_transitive: true,
        coincidence_symmetric: true,
        precedence_irreflexive_toward_coincidence: true,
        precedence_transitive: true,
        precedence_respects_coincidence_left: true,
        precedence_respects_coincidence_right: true,
    };

    for &i in &ids {
        report.coincidence_reflexive &= eq(i, i);
        for &j in &ids {
            report.coincidence_symmetric &= !eq(i, j) || eq(j, i);
            report.precedence_irreflexive_toward_coincidence &= !(lt(i, j) && eq(i, j));
            for &k in &ids {
                report.coincidence_transitive &= !(eq(i, j) && eq(j, k)) || eq(i, k);
                report.precedence_transitive &= !(lt(i, j) && lt(j, k)) || lt(i, k);
                report.precedence_respects_coincidence_left &= !(eq(i, j) && lt(i, k)) || lt(j, k);
                report.precedence_respects_coincidence_right &= !(eq(i, j) && lt(k, i)) || lt(k, j);
            }
        }
    }
    Ok(report)
}

/// The six conjuncts that closure establishes by construction (everything
/// except irreflexivity toward coincidence). Used by debug assertions.
pub(crate) fn constructive_conjuncts_hold(s: &TimeStructure) -> bool {
    match check_axioms(s) {
        Ok(r) => {
            r.coincidence_reflexive
                && r.coincidence_transitive
                && r.coincidence_symmetric
                && r.precedence_transitive
                && r.precedence_respects_coincidence_left
                && r.precedence_respects_coincidence_right
        }
        Err(_) => false,
    }
}
