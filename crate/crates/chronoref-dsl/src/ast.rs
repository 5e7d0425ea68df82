//! Resolved form of a specification file.

use std::collections::{BTreeMap, BTreeSet};

use chronoref_core::{InstantId, RelationSet, TimeStructure};

/// A fully parsed and resolved document: one universe, named levels with
/// their generator relations, named clocks bound to a level, and an ordered
/// list of claims to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDocument {
    pub universe_size: u32,
    pub levels: BTreeMap<String, LevelDecl>,
    pub clocks: BTreeMap<String, ClockDecl>,
    pub claims: Vec<Claim>,
}

impl SpecDocument {
    /// Builds the (unclosed) structure a level declares, or `None` for an
    /// unknown level name.
    ///
    /// Panics if the document violates its resolution invariants (an index
    /// at or beyond `universe_size`); documents produced by [`parse`] are
    /// always in range.
    ///
    /// [`parse`]: crate::parse
    pub fn level_structure(&self, name: &str) -> Option<TimeStructure> {
        let level = self.levels.get(name)?;
        Some(
            TimeStructure::with_generators(
                self.universe_size,
                level.coincidence_gen.clone(),
                level.precedence_gen.clone(),
            )
            .expect("resolved documents keep their generators in range"),
        )
    }
}

/// Generator relations of one observation level.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelDecl {
    pub coincidence_gen: RelationSet,
    pub precedence_gen: RelationSet,
}

/// A clock declaration: the level it observes and its tick instants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClockDecl {
    pub level: String,
    pub ticks: BTreeSet<InstantId>,
}

/// One claim of a specification, with operands as declared names.
///
/// For the preservation claims the concrete and abstract levels are implied
/// by the levels of the operand clocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// The level's closure is a strict partial order.
    Spo { level: String },
    /// The first level refines the second.
    Refines { concrete: String, abstract_: String },
    /// `sub ⊑ sup` on their common level.
    Subclock { sub: String, sup: String },
    /// `union = left ∪ right` on their common level.
    Union {
        union_clock: String,
        left: String,
        right: String,
    },
    /// The concrete clock refines the abstract clock across their levels.
    ClockRefines { concrete: String, abstract_: String },
    /// Subclocking survives refinement: hypotheses `sub ⊑ sup`,
    /// `sub refc abstract_sub`, `sup refc abstract_sup`; conclusion
    /// `abstract_sub ⊑ abstract_sup`.
    PreserveSubclock {
        sub: String,
        sup: String,
        abstract_sub: String,
        abstract_sup: String,
    },
    /// Union survives refinement: hypotheses `left refc abstract_clock`,
    /// `right refc abstract_clock`, `union = left ∪ right`; conclusion
    /// `union refc abstract_clock`.
    PreserveUnion {
        union_clock: String,
        left: String,
        right: String,
        abstract_clock: String,
    },
}

impl Claim {
    /// The claim keyword as written in the surface syntax.
    pub fn keyword(&self) -> &'static str {
        match self {
            Claim::Spo { .. } => "spo",
            Claim::Refines { .. } => "refines",
            Claim::Subclock { .. } => "subclock",
            Claim::Union { .. } => "union",
            Claim::ClockRefines { .. } => "clockrefines",
            Claim::PreserveSubclock { .. } => "preserve-subclock",
            Claim::PreserveUnion { .. } => "preserve-union",
        }
    }

    /// Operand names in surface order.
    pub fn operands(&self) -> Vec<&str> {
        match self {
            Claim::Spo { level } => vec![level],
            Claim::Refines {
                concrete,
                abstract_,
            } => vec![concrete, abstract_],
            Claim::Subclock { sub, sup } => vec![sub, sup],
            Claim::Union {
                union_clock,
                left,
                right,
            } => vec![union_clock, left, right],
            Claim::ClockRefines {
                concrete,
                abstract_,
            } => vec![concrete, abstract_],
            Claim::PreserveSubclock {
                sub,
                sup,
                abstract_sub,
                abstract_sup,
            } => vec![sub, sup, abstract_sub, abstract_sup],
            Claim::PreserveUnion {
                union_clock,
                left,
                right,
                abstract_clock,
            } => vec![union_clock, left, right, abstract_clock],
        }
    }
}
