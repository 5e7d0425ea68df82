//! Exhaustive verification of the refinement relation's algebraic laws over
//! the enumeration oracle.
//!
//! Refinement should order structures the way it orders observation levels:
//! reflexively, transitively, and antisymmetrically up to extensional
//! equivalence of the relation pairs. The mechanized proofs establish this
//! universally; here the laws are re-checked computationally on every
//! structure of a small universe, which is both a test of the checker and a
//! desk-scale reproduction of the statements.

use std::fmt;

use crate::enumerate::enumerate_structures;
use crate::error::{Error, Result};
use crate::refinement::{check_equivalence, check_refinement};
use crate::structure::TimeStructure;
use crate::sweep::{self, Sweep};

/// Largest universe the law sweeps accept; the transitivity scan is cubic in
/// the structure count (29³ tuples at size 3).
pub const MAX_ALGEBRA_SIZE: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Reflexivity,
    Transitivity,
    AntisymmetryUpToEquivalence,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Reflexivity => "reflexivity",
            Law::Transitivity => "transitivity",
            Law::AntisymmetryUpToEquivalence => "antisymmetry",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The structures of the first tuple, in canonical enumeration order, that
/// falsifies a law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawCounterexample {
    Reflexivity(TimeStructure),
    Transitivity(TimeStructure, TimeStructure, TimeStructure),
    Antisymmetry(TimeStructure, TimeStructure),
}

/// Outcome of checking one law over the full enumeration of one size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub law: Law,
    pub universe_size: u32,
    pub instances_checked: u64,
    pub counterexample: Option<LawCounterexample>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `law` over every structure tuple on exactly `n` instants.
pub fn verify_algebra(n: u32, law: Law) -> Result<PropertyReport> {
    verify_algebra_with(n, law, Sweep::default())
}

pub fn verify_algebra_with(n: u32, law: Law, mode: Sweep) -> Result<PropertyReport> {
    if n == 0 || n > MAX_ALGEBRA_SIZE {
        return Err(Error::EnumerationOutOfRange {
            n,
            max: MAX_ALGEBRA_SIZE,
        });
    }
    let all = enumerate_structures(n)?;
    let len = all.len();

    // The relation matrix is the expensive part; the law scans below only
    // combine its entries (plus equivalence checks for antisymmetry).
    let refines = sweep::map_collect(mode, len * len, |idx| {
        let report = check_refinement(&all[idx / len], &all[idx % len])
            .expect("enumerated structures are closed, consistent and same-sized");
        report.holds
    });
    let refines = |i: usize, j: usize| refines[i * len + j];

    let (instances, counterexample) = match law {
        Law::Reflexivity => (
            len as u64,
            sweep::find_map_first(mode, len, |i| {
                (!refines(i, i)).then(|| LawCounterexample::Reflexivity(all[i].clone()))
            }),
        ),
        Law::Transitivity => (
            (len as u64).pow(3),
            sweep::find_map_first(mode, len * len * len, |idx| {
                let (i, j, k) = (idx / (len * len), (idx / len) % len, idx % len);
                (refines(i, j) && refines(j, k) && !refines(i, k)).then(|| {
                    LawCounterexample::Transitivity(all[i].clone(), all[j].clone(), all[k].clone())
                })
            }),
        ),
        Law::AntisymmetryUpToEquivalence => (
            (len as u64).pow(2),
            sweep::find_map_first(mode, len * len, |idx| {
                let (i, j) = (idx / len, idx % len);
                if refines(i, j) && refines(j, i) {
                    let eq = check_equivalence(&all[i], &all[j]).expect("same universe");
                    if !eq.holds {
                        return Some(LawCounterexample::Antisymmetry(
                            all[i].clone(),
                            all[j].clone(),
                        ));
                    }
                }
                None
            }),
        ),
    };

    Ok(PropertyReport {
        law,
        universe_size: n,
        instances_checked: instances,
        counterexample,
    })
}
