//! Generator for the oversampled two-level trace on `5k` instants.
//!
//! Instants are naturals split as `a = 5q + r` with `r < 5`. The abstract
//! level sees one logical step per group of five: equal quotients coincide
//! and groups are ordered by quotient. The concrete level looks inside a
//! step: residues 0 and 1 stay coincident while the remaining residues
//! chain strictly after them, so one abstract step expands into a short
//! pipeline of sub-events. The two levels stand in refinement, which the
//! generated claims assert.

use std::collections::BTreeMap;

use chronoref_core::RelationSet;
use chronoref_dsl::{Claim, LevelDecl, SpecDocument, serialize};

pub const CONCRETE_LEVEL: &str = "concrete";
pub const ABSTRACT_LEVEL: &str = "abstract";

/// The document for `groups` groups: both levels' generator relations as
/// full extensions of their defining arithmetic, plus the consistency and
/// refinement claims.
pub fn document(groups: u32) -> SpecDocument {
    assert!(groups >= 1, "at least one group");
    let universe = 5 * groups;

    let mut abstract_level = LevelDecl::default();
    let mut concrete_level = LevelDecl::default();
    for a in 0..universe {
        for b in 0..universe {
            if a == b {
                continue;
            }
            let (q1, r1) = (a / 5, a % 5);
            let (q2, r2) = (b / 5, b % 5);
            insert_if(&mut abstract_level.coincidence_gen, a, b, q1 == q2);
            insert_if(&mut abstract_level.precedence_gen, a, b, q1 < q2);
            insert_if(
                &mut concrete_level.coincidence_gen,
                a,
                b,
                q1 == q2 && r1 <= 1 && r2 <= 1,
            );
            insert_if(
                &mut concrete_level.precedence_gen,
                a,
                b,
                q1 < q2 || (q1 == q2 && r1 < r2 && r2 != 1),
            );
        }
    }

    let mut levels = BTreeMap::new();
    levels.insert(ABSTRACT_LEVEL.to_owned(), abstract_level);
    levels.insert(CONCRETE_LEVEL.to_owned(), concrete_level);

    SpecDocument {
        universe_size: universe,
        levels,
        clocks: BTreeMap::new(),
        claims: vec![
            Claim::Spo {
                level: CONCRETE_LEVEL.to_owned(),
            },
            Claim::Spo {
                level: ABSTRACT_LEVEL.to_owned(),
            },
            Claim::Refines {
                concrete: CONCRETE_LEVEL.to_owned(),
                abstract_: ABSTRACT_LEVEL.to_owned(),
            },
        ],
    }
}

fn insert_if(set: &mut RelationSet, a: u32, b: u32, condition: bool) {
    if condition {
        set.insert(a.into(), b.into());
    }
}

/// The `.chrono` source: a comment header over the canonical serialization.
pub fn source(groups: u32) -> String {
    let header = format!(
        "# Oversampled trace at two observation levels, {groups} group(s) of five\n\
         # instants (universe 0..{top}, each instant split as a = 5q + r).\n\
         #\n\
         # The abstract level sees one step per group: equal quotients coincide\n\
         # and groups are ordered by quotient. The concrete level splits a step:\n\
         # residues 0 and 1 remain coincident and the later residues chain\n\
         # strictly, so an abstract step expands into ordered sub-events.\n\n",
        top = 5 * groups - 1,
    );
    header + &serialize(&document(groups))
}
