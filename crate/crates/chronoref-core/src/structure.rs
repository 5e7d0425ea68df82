//! Finite time structures: a universe of instants bound by a coincidence
//! relation and a precedence relation.
//!
//! A structure starts from *generator* pairs and is closed into the least
//! relation pair satisfying the order axioms' generative rules: coincidence
//! becomes reflexive, symmetric and transitive; precedence becomes transitive
//! and congruent with coincidence on both sides. Consistency (no pair both
//! ordered and coincident) is a separate check so that inconsistent inputs
//! stay representable and reportable with witnesses.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Default upper bound on the number of instants in one structure.
pub const DEFAULT_UNIVERSE_CAP: u32 = 4096;

/// Index of an instant within the universe of its owning structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstantId(u32);

impl InstantId {
    pub const fn new(index: u32) -> Self {
        InstantId(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }
}

impl From<u32> for InstantId {
    fn from(index: u32) -> Self {
        InstantId(index)
    }
}

impl fmt::Display for InstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite set of ordered instant pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationSet {
    pairs: BTreeSet<(InstantId, InstantId)>,
}

impl RelationSet {
    pub fn new() -> Self {
        RelationSet::default()
    }

    pub fn insert(&mut self, from: InstantId, to: InstantId) -> bool {
        self.pairs.insert((from, to))
    }

    pub fn contains(&self, from: InstantId, to: InstantId) -> bool {
        self.pairs.contains(&(from, to))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (InstantId, InstantId)> + '_ {
        self.pairs.iter().copied()
    }

    /// True when every pair of `self` is also a pair of `other`.
    pub fn is_subset_of(&self, other: &RelationSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    fn max_index(&self) -> Option<u32> {
        self.pairs
            .iter()
            .map(|&(a, b)| a.index().max(b.index()))
            .max()
    }
}

impl FromIterator<(u32, u32)> for RelationSet {
    fn from_iter<I: IntoIterator<Item = (u32, u32)>>(iter: I) -> Self {
        RelationSet {
            pairs: iter
                .into_iter()
                .map(|(a, b)| (InstantId(a), InstantId(b)))
                .collect(),
        }
    }
}

impl FromIterator<(InstantId, InstantId)> for RelationSet {
    fn from_iter<I: IntoIterator<Item = (InstantId, InstantId)>>(iter: I) -> Self {
        RelationSet {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// How two instants of a closed, consistent structure relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClassification {
    Coincident,
    Precedes,
    PrecededBy,
    Independent,
}

impl fmt::Display for PairClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairClassification::Coincident => "coincident",
            PairClassification::Precedes => "precedes",
            PairClassification::PrecededBy => "preceded-by",
            PairClassification::Independent => "independent",
        };
        f.write_str(s)
    }
}

/// Kinds of consistency breaches a closed structure can exhibit.
///
/// Everything except irreflexivity-toward-coincidence holds by construction
/// after closure, so this is the only reportable kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpoViolationKind {
    IrreflexivityTowardCoincidence,
}

/// A consistency breach with a concrete witness pair: the witness satisfies
/// both `i ≺ j` and `i ≈ j` in the closed structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpoViolation {
    pub kind: SpoViolationKind,
    pub witness: (InstantId, InstantId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ClosedRelations {
    coincidence: BitMatrix,
    precedence: BitMatrix,
}

/// A finite universe of instants with generator relations and, once
/// [`close`](TimeStructure::close) has run, their closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeStructure {
    universe_size: u32,
    coincidence_gen: RelationSet,
    precedence_gen: RelationSet,
    closed: Option<ClosedRelations>,
}

impl TimeStructure {
    /// A structure with no generator pairs (closure is discrete: every
    /// instant coincident only with itself, nothing ordered).
    pub fn new(universe_size: u32) -> Result<Self> {
        Self::with_generators(universe_size, RelationSet::new(), RelationSet::new())
    }

    pub fn with_generators(
        universe_size: u32,
        coincidence_gen: RelationSet,
        precedence_gen: RelationSet,
    ) -> Result<Self> {
        Self::with_generators_and_cap(
            universe_size,
            coincidence_gen,
            precedence_gen,
            DEFAULT_UNIVERSE_CAP,
        )
    }

    /// Like [`with_generators`](Self::with_generators) with an explicit cap on
    /// the universe size instead of [`DEFAULT_UNIVERSE_CAP`].
    pub fn with_generators_and_cap(
        universe_size: u32,
        coincidence_gen: RelationSet,
        precedence_gen: RelationSet,
        cap: u32,
    ) -> Result<Self> {
        if universe_size == 0 {
            return Err(Error::EmptyUniverse);
        }
        if universe_size > cap {
            return Err(Error::UniverseTooLarge {
                size: universe_size,
                cap,
            });
        }
        for set in [&coincidence_gen, &precedence_gen] {
            if let Some(max) = set.max_index()
                && max >= universe_size
            {
                return Err(Error::InstantOutOfRange {
                    id: max,
                    size: universe_size,
                });
            }
        }
        Ok(TimeStructure {
            universe_size,
            coincidence_gen,
            precedence_gen,
            closed: None,
        })
    }

    pub fn universe_size(&self) -> u32 {
        self.universe_size
    }

    pub fn instants(&self) -> impl Iterator<Item = InstantId> + 'static {
        (0..self.universe_size).map(InstantId)
    }

    pub fn coincidence_gen(&self) -> &RelationSet {
        &self.coincidence_gen
    }

    pub fn precedence_gen(&self) -> &RelationSet {
        &self.precedence_gen
    }

    pub fn is_closed(&self) -> bool {
        self.closed.is_some()
    }

    /// Computes the least closed structure containing the generators.
    ///
    /// The result is a fixed point of: reflexivity, symmetry and transitivity
    /// of coincidence; transitivity of precedence; and congruence of
    /// precedence with coincidence on either side. Closing an already closed
    /// structure yields the identical structure.
    pub fn close(&self) -> TimeStructure {
        let n = self.universe_size as usize;
        let mut coincidence = BitMatrix::new(n);
        let mut precedence = BitMatrix::new(n);
        for i in 0..n {
            coincidence.set(i, i);
        }
        for (a, b) in self.coincidence_gen.iter() {
            coincidence.set(a.index() as usize, b.index() as usize);
        }
        for (a, b) in self.precedence_gen.iter() {
            precedence.set(a.index() as usize, b.index() as usize);
        }

        loop {
            let mut changed = false;

            // Symmetry of coincidence.
            for i in 0..n {
                for j in 0..n {
                    if coincidence.get(i, j) && !coincidence.get(j, i) {
                        coincidence.set(j, i);
                        changed = true;
                    }
                }
            }
            changed |= coincidence.transitive_close();
            changed |= precedence.transitive_close();

            // i ≈ j and i ≺ k imply j ≺ k: merge precedence rows across a
            // coincidence class.
            for i in 0..n {
                for j in 0..n {
                    if i != j && coincidence.get(i, j) {
                        changed |= precedence.or_row_into(i, j);
                    }
                }
            }
            // i ≺ k and k ≈ j imply i ≺ j: widen each row by the coincidence
            // rows of its members.
            for i in 0..n {
                for k in 0..n {
                    if precedence.get(i, k) {
                        changed |= precedence.or_row_from(i, &coincidence, k);
                    }
                }
            }

            if !changed {
                break;
            }
        }

        TimeStructure {
            universe_size: self.universe_size,
            coincidence_gen: self.coincidence_gen.clone(),
            precedence_gen: self.precedence_gen.clone(),
            closed: Some(ClosedRelations {
                coincidence,
                precedence,
            }),
        }
    }

    /// Builds a structure directly from closed matrices. The caller must
    /// guarantee the matrices already satisfy the closure rules.
    pub(crate) fn from_closed_matrices(
        universe_size: u32,
        coincidence_gen: RelationSet,
        precedence_gen: RelationSet,
        coincidence: BitMatrix,
        precedence: BitMatrix,
    ) -> TimeStructure {
        let s = TimeStructure {
            universe_size,
            coincidence_gen,
            precedence_gen,
            closed: Some(ClosedRelations {
                coincidence,
                precedence,
            }),
        };
        debug_assert!(
            s.universe_size > 64 || crate::axioms::constructive_conjuncts_hold(&s),
            "caller handed matrices that are not closed"
        );
        s
    }

    fn relations(&self) -> &ClosedRelations {
        self.closed
            .as_ref()
            .expect("structure is not closed; call close() first")
    }

    pub(crate) fn require_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::NotClosed)
        }
    }

    pub(crate) fn require_instant(&self, id: InstantId) -> Result<()> {
        if id.index() < self.universe_size {
            Ok(())
        } else {
            Err(Error::InstantOutOfRange {
                id: id.index(),
                size: self.universe_size,
            })
        }
    }

    /// Membership in the closed coincidence relation.
    ///
    /// Panics when the structure is not closed; the checker entry points
    /// guard for that and return [`Error::NotClosed`] instead.
    pub fn coincident(&self, i: InstantId, j: InstantId) -> bool {
        self.relations()
            .coincidence
            .get(i.index() as usize, j.index() as usize)
    }

    /// Membership in the closed precedence relation. Panics when not closed.
    pub fn precedes(&self, i: InstantId, j: InstantId) -> bool {
        self.relations()
            .precedence
            .get(i.index() as usize, j.index() as usize)
    }

    /// All pairs of the closed coincidence relation, lexicographically sorted.
    pub fn coincidence_pairs(&self) -> Vec<(InstantId, InstantId)> {
        self.relations()
            .coincidence
            .iter_pairs()
            .map(|(a, b)| (InstantId(a), InstantId(b)))
            .collect()
    }

    /// All pairs of the closed precedence relation, lexicographically sorted.
    pub fn precedence_pairs(&self) -> Vec<(InstantId, InstantId)> {
        self.relations()
            .precedence
            .iter_pairs()
            .map(|(a, b)| (InstantId(a), InstantId(b)))
            .collect()
    }

    /// True when both closed relations of `self` are subsets of the
    /// corresponding relations of `other`. Both structures must be closed
    /// and on the same universe.
    pub fn relations_subset_of(&self, other: &TimeStructure) -> bool {
        assert_eq!(self.universe_size, other.universe_size);
        let (a, b) = (self.relations(), other.relations());
        a.coincidence.is_subset_of(&b.coincidence) && a.precedence.is_subset_of(&b.precedence)
    }

    /// First pair (in lexicographic order) that is both ordered and
    /// coincident, if any.
    pub(crate) fn first_breach(&self) -> Option<(u32, u32)> {
        let rel = self.relations();
        let n = self.universe_size as usize;
        for i in 0..n {
            for j in 0..n {
                if rel.precedence.get(i, j) && rel.coincidence.get(i, j) {
                    return Some((i as u32, j as u32));
                }
            }
        }
        None
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        match self.first_breach() {
            Some(witness) => Err(Error::InvalidStructure { witness }),
            None => Ok(()),
        }
    }

    /// Checks the one axiom that closure cannot establish: no pair may be
    /// both ordered and coincident.
    ///
    /// Returns one violation per coincidence class containing a breach,
    /// ordered by the class's least member. Closure propagates a breach to
    /// every pair of the affected class, so reporting each congruent copy
    /// would flood the caller with redundant witnesses; the reported witness
    /// is the lexicographically least offending pair of distinct instants
    /// (falling back to the diagonal pair for a singleton class).
    ///
    /// The remaining axioms hold by construction and are re-checked here in
    /// debug builds (for universes small enough that the cubic pairwise
    /// scan stays cheap; [`crate::axioms::check_axioms`] is always available
    /// for explicit checks at any size).
    pub fn validate_spo(&self) -> Result<Vec<SpoViolation>> {
        self.require_closed()?;
        debug_assert!(
            self.universe_size > 64 || crate::axioms::constructive_conjuncts_hold(self),
            "closure left a constructive axiom unsatisfied"
        );
        let rel = self.relations();
        let n = self.universe_size as usize;
        let mut reported_class = vec![false; n];
        let mut violations = Vec::new();
        for i in 0..n {
            // The class of i is identified by its least member; a breach
            // involving i lives entirely within i's coincidence class.
            let class_root = (0..n).find(|&r| rel.coincidence.get(i, r)).unwrap_or(i);
            if reported_class[class_root] {
                continue;
            }
            let mut witness: Option<(u32, u32)> = None;
            for j in 0..n {
                if rel.precedence.get(i, j) && rel.coincidence.get(i, j) {
                    if i != j {
                        witness = Some((i as u32, j as u32));
                        break;
                    }
                    witness.get_or_insert((i as u32, j as u32));
                }
            }
            if let Some((a, b)) = witness {
                reported_class[class_root] = true;
                violations.push(SpoViolation {
                    kind: SpoViolationKind::IrreflexivityTowardCoincidence,
                    witness: (InstantId(a), InstantId(b)),
                });
            }
        }
        Ok(violations)
    }

    /// Classifies an instant pair of a closed, consistent structure.
    ///
    /// On a consistent structure exactly one classification applies. On an
    /// inconsistent one the checks run in the order coincident, precedes,
    /// preceded-by, so the result stays deterministic.
    pub fn classify_pair(&self, i: InstantId, j: InstantId) -> Result<PairClassification> {
        self.require_closed()?;
        self.require_instant(i)?;
        self.require_instant(j)?;
        Ok(if self.coincident(i, j) {
            PairClassification::Coincident
        } else if self.precedes(i, j) {
            PairClassification::Precedes
        } else if self.precedes(j, i) {
            PairClassification::PrecededBy
        } else {
            PairClassification::Independent
        })
    }
}
