//! Shared builders for unit tests.

use crate::structure::{RelationSet, TimeStructure};

pub(crate) fn closed(
    universe: u32,
    coincidence: &[(u32, u32)],
    precedence: &[(u32, u32)],
) -> TimeStructure {
    TimeStructure::with_generators(
        universe,
        coincidence.iter().copied().collect(),
        precedence.iter().copied().collect(),
    )
    .unwrap()
    .close()
}

/// Morning routine: up=0, sho=1, off=2, eat=3, sin=4.
pub(crate) fn morning() -> TimeStructure {
    closed(5, &[(1, 4)], &[(0, 1), (1, 2), (0, 3), (3, 2)])
}

/// The oversampling example built from its arithmetic definition: instants
/// are naturals decomposed as a = 5q + r, and the higher level identifies a
/// whole group of five while ordering groups by quotient.
pub(crate) fn mod5_abstract(prefix: u32) -> TimeStructure {
    build_mod5(
        prefix,
        |q1, _r1, q2, _r2| q1 == q2,
        |q1, _r1, q2, _r2| q1 < q2,
    )
}

/// The lower level of the oversampling example: the first two residues of a
/// group coincide, later residues are chained, and groups stay ordered.
pub(crate) fn mod5_concrete(prefix: u32) -> TimeStructure {
    build_mod5(
        prefix,
        |q1, r1, q2, r2| q1 == q2 && r1 <= 1 && r2 <= 1,
        |q1, r1, q2, r2| q1 < q2 || (q1 == q2 && r1 < r2 && r2 != 1),
    )
}

fn build_mod5(
    prefix: u32,
    eq: impl Fn(u32, u32, u32, u32) -> bool,
    lt: impl Fn(u32, u32, u32, u32) -> bool,
) -> TimeStructure {
    let mut cgen = RelationSet::new();
    let mut pgen = RelationSet::new();
    for a in 0..prefix {
        for b in 0..prefix {
            if a == b {
                continue;
            }
            let (q1, r1, q2, r2) = (a / 5, a % 5, b / 5, b % 5);
            if eq(q1, r1, q2, r2) {
                cgen.insert(a.into(), b.into());
            }
            if lt(q1, r1, q2, r2) {
                pgen.insert(a.into(), b.into());
            }
        }
    }
    TimeStructure::with_generators(prefix, cgen, pgen)
        .unwrap()
        .close()
}
