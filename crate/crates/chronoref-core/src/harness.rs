//! Counterexample search for the preservation checks.
//!
//! The preservation statements are universally quantified implications over
//! structures and clocks; their proofs live elsewhere. This module hunts for
//! a `Violated` verdict two ways: exhaustively over every refinement pair of
//! small structures with every valid clock tuple, and by seeded random
//! sampling of larger instances that are built to satisfy the hypotheses
//! most of the time (a purely random tuple is almost always vacuous and
//! would test nothing). Finding any violation means the checker itself is
//! broken; the harness reports the first one in canonical order.

use std::fmt;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitMatrix;
use crate::clocks::{
    Clock, PreservationVerdict, check_subclock_preservation, check_union_preservation,
};
use crate::enumerate::enumerate_structures;
use crate::error::{Error, Result};
use crate::refinement::check_refinement;
use crate::structure::{InstantId, RelationSet, TimeStructure};
use crate::sweep::{self, Sweep};

/// Largest universe the exhaustive sweep accepts (the clock tuple space is
/// quartic in the subset count).
pub const MAX_EXHAUSTIVE_SIZE: u32 = 3;

/// Largest universe for randomized instances.
pub const MAX_RANDOM_SIZE: u32 = 64;

/// Which preservation statement to search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreservationLaw {
    Subclock,
    Union,
}

impl PreservationLaw {
    pub fn name(self) -> &'static str {
        match self {
            PreservationLaw::Subclock => "subclock",
            PreservationLaw::Union => "union",
        }
    }
}

impl fmt::Display for PreservationLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A violated instance, kept whole so it can be dumped and replayed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationViolation {
    pub concrete: TimeStructure,
    pub abstract_: TimeStructure,
    pub clocks: Vec<Clock>,
    pub verdict: PreservationVerdict,
}

/// Tally of one preservation sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessReport {
    pub law: PreservationLaw,
    pub instances: u64,
    pub satisfied: u64,
    pub vacuous: u64,
    pub violated: u64,
    pub first_violation: Option<PreservationViolation>,
}

impl HarnessReport {
    pub fn clean(&self) -> bool {
        self.violated == 0
    }
}

#[derive(Clone, Default)]
struct Tally {
    instances: u64,
    satisfied: u64,
    vacuous: u64,
    violated: u64,
    first: Option<((usize, u64), PreservationViolation)>,
}

impl Tally {
    fn record(
        &mut self,
        task: usize,
        instance: u64,
        verdict: PreservationVerdict,
        witness: impl FnOnce(PreservationVerdict) -> PreservationViolation,
    ) {
        self.instances += 1;
        match verdict {
            PreservationVerdict::Satisfied => self.satisfied += 1,
            PreservationVerdict::Vacuous { .. } => self.vacuous += 1,
            PreservationVerdict::Violated { .. } => {
                self.violated += 1;
                let key = (task, instance);
                if self.first.as_ref().is_none_or(|(k, _)| key < *k) {
                    self.first = Some((key, witness(verdict)));
                }
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.satisfied += other.satisfied;
        self.vacuous += other.vacuous;
        self.violated += other.violated;
        self.first = match (self.first.take(), other.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }

    fn into_report(self, law: PreservationLaw) -> HarnessReport {
        HarnessReport {
            law,
            instances: self.instances,
            satisfied: self.satisfied,
            vacuous: self.vacuous,
            violated: self.violated,
            first_violation: self.first.map(|(_, v)| v),
        }
    }
}

/// Every subset of the universe whose distinct members are pairwise ordered,
/// i.e. every valid tick set, in ascending bitmask order.
fn valid_tick_sets(s: &TimeStructure) -> Vec<Vec<InstantId>> {
    let n = s.universe_size();
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << n) {
        let ticks: Vec<InstantId> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(InstantId::new)
            .collect();
        for (i, &x) in ticks.iter().enumerate() {
            for &y in &ticks[i + 1..] {
                if !s.precedes(x, y) && !s.precedes(y, x) {
                    continue 'mask;
                }
            }
        }
        out.push(ticks);
    }
    out
}

fn clock_of(name: &str, ticks: &[InstantId]) -> Clock {
    Clock::new(name, ticks.iter().copied())
}

/// Exhaustive sweep: every ordered refinement pair of structures on at most
/// `max_size` instants, with every tuple of valid clocks.
pub fn preservation_exhaustive(max_size: u32, law: PreservationLaw) -> Result<HarnessReport> {
    preservation_exhaustive_with(max_size, law, Sweep::default())
}

pub fn preservation_exhaustive_with(
    max_size: u32,
    law: PreservationLaw,
    mode: Sweep,
) -> Result<HarnessReport> {
    if max_size == 0 || max_size > MAX_EXHAUSTIVE_SIZE {
        return Err(Error::EnumerationOutOfRange {
            n: max_size,
            max: MAX_EXHAUSTIVE_SIZE,
        });
    }

    let mut pairs: Vec<(TimeStructure, TimeStructure)> = Vec::new();
    for size in 1..=max_size {
        let all = enumerate_structures(size)?;
        for concrete in &all {
            for abstract_ in &all {
                if check_refinement(concrete, abstract_)?.holds {
                    pairs.push((concrete.clone(), abstract_.clone()));
                }
            }
        }
    }

    let tally = sweep::map_reduce(
        mode,
        pairs.len(),
        Tally::default(),
        |pair_idx| {
            let (concrete, abstract_) = &pairs[pair_idx];
            let concrete_sets = valid_tick_sets(concrete);
            let abstract_sets = valid_tick_sets(abstract_);
            let mut tally = Tally::default();
            let mut instance = 0u64;
            match law {
                PreservationLaw::Subclock => {
                    for sub in &concrete_sets {
                        for sup in &concrete_sets {
                            for abstract_sub in &abstract_sets {
                                for abstract_sup in &abstract_sets {
                                    let clocks = [
                                        clock_of("c1", sub),
                                        clock_of("c2", sup),
                                        clock_of("c11", abstract_sub),
                                        clock_of("c22", abstract_sup),
                                    ];
                                    let verdict = check_subclock_preservation(
                                        concrete, abstract_, &clocks[0], &clocks[1], &clocks[2],
                                        &clocks[3],
                                    )
                                    .expect("enumerated structures and prefiltered clocks");
                                    tally.record(pair_idx, instance, verdict, |verdict| {
                                        PreservationViolation {
                                            concrete: concrete.clone(),
                                            abstract_: abstract_.clone(),
                                            clocks: clocks.to_vec(),
                                            verdict,
                                        }
                                    });
                                    instance += 1;
                                }
                            }
                        }
                    }
                }
                PreservationLaw::Union => {
                    for union_set in &concrete_sets {
                        for left in &concrete_sets {
                            for right in &concrete_sets {
                                for abstract_set in &abstract_sets {
                                    let clocks = [
                                        clock_of("c0", union_set),
                                        clock_of("c1", left),
                                        clock_of("c2", right),
                                        clock_of("c", abstract_set),
                                    ];
                                    let verdict = check_union_preservation(
                                        concrete, abstract_, &clocks[0], &clocks[1], &clocks[2],
                                        &clocks[3],
                                    )
                                    .expect("enumerated structures and prefiltered clocks");
                                    tally.record(pair_idx, instance, verdict, |verdict| {
                                        PreservationViolation {
                                            concrete: concrete.clone(),
                                            abstract_: abstract_.clone(),
                                            clocks: clocks.to_vec(),
                                            verdict,
                                        }
                                    });
                                    instance += 1;
                                }
                            }
                        }
                    }
                }
            }
            tally
        },
        Tally::merge,
    );

    Ok(tally.into_report(law))
}

/// Randomized sweep: `samples` seeded instances on `universe` instants.
///
/// Instance `i` is generated from a ChaCha stream derived from `(seed, i)`,
/// so results do not depend on how the sweep is scheduled. Most instances
/// are constructed to satisfy the hypotheses (so the conclusion is actually
/// exercised); a fraction is perturbed to walk the vacuous paths too.
pub fn preservation_randomized(
    universe: u32,
    samples: u64,
    seed: u64,
    law: PreservationLaw,
) -> Result<HarnessReport> {
    preservation_randomized_with(universe, samples, seed, law, Sweep::default())
}

pub fn preservation_randomized_with(
    universe: u32,
    samples: u64,
    seed: u64,
    law: PreservationLaw,
    mode: Sweep,
) -> Result<HarnessReport> {
    if universe == 0 || universe > MAX_RANDOM_SIZE {
        return Err(Error::EnumerationOutOfRange {
            n: universe,
            max: MAX_RANDOM_SIZE,
        });
    }

    let tally = sweep::map_reduce(
        mode,
        samples as usize,
        Tally::default(),
        |sample| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(sample as u64);
            let mut tally = Tally::default();
            let (concrete, abstract_) = random_refinement_pair(&mut rng, universe);
            let (clocks, verdict) = match law {
                PreservationLaw::Subclock => {
                    let clocks = random_subclock_instance(&mut rng, &concrete, &abstract_);
                    let verdict = check_subclock_preservation(
                        &concrete, &abstract_, &clocks[0], &clocks[1], &clocks[2], &clocks[3],
                    )
                    .expect("generated clocks are valid");
                    (clocks, verdict)
                }
                PreservationLaw::Union => {
                    let clocks = random_union_instance(&mut rng, &concrete, &abstract_);
                    let verdict = check_union_preservation(
                        &concrete, &abstract_, &clocks[0], &clocks[1], &clocks[2], &clocks[3],
                    )
                    .expect("generated clocks are valid");
                    (clocks, verdict)
                }
            };
            tally.record(sample, 0, verdict, |verdict| PreservationViolation {
                concrete: concrete.clone(),
                abstract_: abstract_.clone(),
                clocks: clocks.to_vec(),
                verdict,
            });
            tally
        },
        Tally::merge,
    );

    Ok(tally.into_report(law))
}

/// A random abstract structure together with a random refinement of it.
///
/// The abstract level is a random partition into coincidence classes plus a
/// random strict order on the classes. The concrete level splits each class
/// into a chain of blocks; across classes it copies the abstract order,
/// which is exactly the shape refinement permits.
fn random_refinement_pair(rng: &mut ChaCha8Rng, universe: u32) -> (TimeStructure, TimeStructure) {
    let n = universe as usize;

    // Restricted-growth partition of the universe.
    let mut class = vec![0usize; n];
    let mut class_count = 1;
    for slot in class.iter_mut().skip(1) {
        *slot = rng.random_range(0..=class_count);
        class_count = class_count.max(*slot + 1);
    }

    // Random strict order on the classes: edges along a random permutation,
    // then a transitive closure.
    let m = class_count;
    let mut position: Vec<usize> = (0..m).collect();
    position.shuffle(rng);
    let mut class_lt = BitMatrix::new(m);
    for a in 0..m {
        for b in a + 1..m {
            if rng.random_bool(0.4) {
                class_lt.set(position[a], position[b]);
            }
        }
    }
    class_lt.transitive_close();

    // Blocks: an ordered set partition of each class.
    let mut block = vec![0usize; n];
    for c in 0..m {
        let members: Vec<usize> = (0..n).filter(|&i| class[i] == c).collect();
        let mut order = members.clone();
        order.shuffle(rng);
        let mut current = 0;
        for (rank, &i) in order.iter().enumerate() {
            if rank > 0 && rng.random_bool(0.5) {
                current += 1;
            }
            block[i] = current;
        }
    }

    let abstract_ = structure_from(
        n,
        |i, j| class[i] == class[j],
        |i, j| class_lt.get(class[i], class[j]),
    );
    let concrete = structure_from(
        n,
        |i, j| class[i] == class[j] && block[i] == block[j],
        |i, j| class_lt.get(class[i], class[j]) || (class[i] == class[j] && block[i] < block[j]),
    );
    debug_assert!(check_refinement(&concrete, &abstract_).is_ok_and(|r| r.holds));
    (concrete, abstract_)
}

fn structure_from(
    n: usize,
    eq: impl Fn(usize, usize) -> bool,
    lt: impl Fn(usize, usize) -> bool,
) -> TimeStructure {
    let mut coincidence = BitMatrix::new(n);
    let mut precedence = BitMatrix::new(n);
    let mut cgen = RelationSet::new();
    let mut pgen = RelationSet::new();
    for i in 0..n {
        coincidence.set(i, i);
        for j in 0..n {
            if i != j && eq(i, j) {
                coincidence.set(i, j);
                cgen.insert((i as u32).into(), (j as u32).into());
            }
            if lt(i, j) {
                precedence.set(i, j);
                pgen.insert((i as u32).into(), (j as u32).into());
            }
        }
    }
    TimeStructure::from_closed_matrices(n as u32, cgen, pgen, coincidence, precedence)
}

/// A random valid clock: shuffle the universe and keep instants that stay
/// strictly ordered against everything already kept.
fn random_valid_clock(rng: &mut ChaCha8Rng, s: &TimeStructure, name: &str) -> Clock {
    let n = s.universe_size();
    let mut candidates: Vec<InstantId> = (0..n).map(InstantId::new).collect();
    candidates.shuffle(rng);
    let target = rng.random_range(0..=n as usize);
    let mut ticks: Vec<InstantId> = Vec::new();
    for c in candidates {
        if ticks.len() >= target {
            break;
        }
        if ticks.iter().all(|&t| s.precedes(t, c) || s.precedes(c, t)) {
            ticks.push(c);
        }
    }
    Clock::new(name, ticks)
}

/// One representative instant per abstract class touched by `clock`, which
/// by construction clock-refines `clock` across the pair.
fn project_to_abstract(
    rng: &mut ChaCha8Rng,
    abstract_: &TimeStructure,
    clock: &Clock,
    name: &str,
) -> Clock {
    let mut roots: Vec<InstantId> = Vec::new();
    let mut ticks: Vec<InstantId> = Vec::new();
    for tick in clock.ticks() {
        let root = abstract_
            .instants()
            .find(|&r| abstract_.coincident(tick, r))
            .expect("coincidence is reflexive");
        if roots.contains(&root) {
            continue;
        }
        roots.push(root);
        let members: Vec<InstantId> = abstract_
            .instants()
            .filter(|&j| abstract_.coincident(root, j))
            .collect();
        ticks.push(*members.choose(rng).expect("class is nonempty"));
    }
    Clock::new(name, ticks)
}

/// Removes or adds one tick while keeping the clock valid on `s`.
fn perturb_clock(rng: &mut ChaCha8Rng, s: &TimeStructure, clock: &Clock) -> Clock {
    let mut ticks: Vec<InstantId> = clock.ticks().collect();
    if !ticks.is_empty() && rng.random_bool(0.5) {
        let at = rng.random_range(0..ticks.len());
        ticks.remove(at);
    } else {
        let candidate = InstantId::new(rng.random_range(0..s.universe_size()));
        let compatible = ticks
            .iter()
            .all(|&t| t == candidate || s.precedes(t, candidate) || s.precedes(candidate, t));
        if compatible {
            ticks.push(candidate);
        }
    }
    Clock::new(clock.name(), ticks)
}

/// Clocks `[c1, c2, c11, c22]` for a subclock preservation instance:
/// `c1 ⊆ c2` concretely and the abstract clocks are class projections, so
/// every hypothesis holds unless the instance is perturbed.
fn random_subclock_instance(
    rng: &mut ChaCha8Rng,
    concrete: &TimeStructure,
    abstract_: &TimeStructure,
) -> [Clock; 4] {
    let sup = random_valid_clock(rng, concrete, "c2");
    let sub_ticks: Vec<InstantId> = sup.ticks().filter(|_| rng.random_bool(0.7)).collect();
    let sub = Clock::new("c1", sub_ticks);
    let mut abstract_sub = project_to_abstract(rng, abstract_, &sub, "c11");
    let mut abstract_sup = project_to_abstract(rng, abstract_, &sup, "c22");
    let mut sub = sub;
    let mut sup = sup;
    if rng.random_bool(0.3) {
        match rng.random_range(0..4) {
            0 => sub = perturb_clock(rng, concrete, &sub),
            1 => sup = perturb_clock(rng, concrete, &sup),
            2 => abstract_sub = perturb_clock(rng, abstract_, &abstract_sub),
            _ => abstract_sup = perturb_clock(rng, abstract_, &abstract_sup),
        }
    }
    [sub, sup, abstract_sub, abstract_sup]
}

/// Clocks `[c0, c1, c2, c]` for a union preservation instance: both operands
/// cover every class the abstract clock ticks in, and the union picks one
/// representative per concrete block, so every hypothesis holds unless the
/// instance is perturbed.
fn random_union_instance(
    rng: &mut ChaCha8Rng,
    concrete: &TimeStructure,
    abstract_: &TimeStructure,
) -> [Clock; 4] {
    let abstract_clock = random_valid_clock(rng, abstract_, "c");

    let mut left_ticks: Vec<InstantId> = Vec::new();
    let mut right_ticks: Vec<InstantId> = Vec::new();
    for tick in abstract_clock.ticks() {
        // One representative per concrete block inside this abstract class.
        let members: Vec<InstantId> = abstract_
            .instants()
            .filter(|&j| abstract_.coincident(tick, j))
            .collect();
        let mut reps: Vec<InstantId> = Vec::new();
        for &i in &members {
            if !reps.iter().any(|&r| concrete.coincident(r, i)) {
                reps.push(i);
            }
        }
        // Nonempty subsets of the representatives for each operand.
        let pick = |rng: &mut ChaCha8Rng, out: &mut Vec<InstantId>| {
            let mut chosen: Vec<InstantId> = reps
                .iter()
                .copied()
                .filter(|_| rng.random_bool(0.5))
                .collect();
            if chosen.is_empty() {
                chosen.push(*reps.choose(rng).expect("class has a block"));
            }
            out.extend(chosen);
        };
        pick(rng, &mut left_ticks);
        pick(rng, &mut right_ticks);
    }
    let left = Clock::new("c1", left_ticks.iter().copied());
    let right = Clock::new("c2", right_ticks.iter().copied());

    // The union clock: one representative per concrete block touched by the
    // operands, sometimes swapped for a coincident block-mate.
    let mut union_ticks: Vec<InstantId> = Vec::new();
    for &t in left_ticks.iter().chain(&right_ticks) {
        if union_ticks.iter().any(|&u| concrete.coincident(u, t)) {
            continue;
        }
        let mates: Vec<InstantId> = concrete
            .instants()
            .filter(|&j| concrete.coincident(t, j))
            .collect();
        if rng.random_bool(0.3) {
            union_ticks.push(*mates.choose(rng).expect("block is nonempty"));
        } else {
            union_ticks.push(t);
        }
    }
    let mut union_clock = Clock::new("c0", union_ticks);
    let mut left = left;
    let mut right = right;
    let mut abstract_clock = abstract_clock;
    if rng.random_bool(0.3) {
        match rng.random_range(0..4) {
            0 => union_clock = perturb_clock(rng, concrete, &union_clock),
            1 => left = perturb_clock(rng, concrete, &left),
            2 => right = perturb_clock(rng, concrete, &right),
            _ => abstract_clock = perturb_clock(rng, abstract_, &abstract_clock),
        }
    }
    [union_clock, left, right, abstract_clock]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_size_two_finds_no_violation() {
        for law in [PreservationLaw::Subclock, PreservationLaw::Union] {
            let report = preservation_exhaustive(2, law).unwrap();
            assert!(report.clean(), "{law}: {:?}", report.first_violation);
            assert!(
                report.satisfied > 0,
                "{law} sweep never hit a satisfied instance"
            );
            assert_eq!(
                report.instances,
                report.satisfied + report.vacuous + report.violated
            );
        }
    }

    #[test]
    fn randomized_small_sweep_is_clean_and_meaningful() {
        for law in [PreservationLaw::Subclock, PreservationLaw::Union] {
            let report = preservation_randomized(8, 300, 7, law).unwrap();
            assert!(report.clean(), "{law}: {:?}", report.first_violation);
            assert_eq!(report.instances, 300);
            // The aligned construction must actually exercise conclusions.
            assert!(report.satisfied > report.instances / 4, "{law}: {report:?}");
        }
    }

    #[test]
    fn randomized_sweep_is_deterministic_for_a_seed() {
        let a = preservation_randomized(8, 100, 42, PreservationLaw::Subclock).unwrap();
        let b = preservation_randomized(8, 100, 42, PreservationLaw::Subclock).unwrap();
        assert_eq!(a, b);
        let c = preservation_randomized(8, 100, 43, PreservationLaw::Subclock).unwrap();
        assert_ne!(a.satisfied, c.satisfied);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_harnesses_agree() {
        for law in [PreservationLaw::Subclock, PreservationLaw::Union] {
            assert_eq!(
                preservation_exhaustive_with(2, law, Sweep::Parallel).unwrap(),
                preservation_exhaustive_with(2, law, Sweep::Sequential).unwrap(),
            );
            assert_eq!(
                preservation_randomized_with(6, 200, 11, law, Sweep::Parallel).unwrap(),
                preservation_randomized_with(6, 200, 11, law, Sweep::Sequential).unwrap(),
            );
        }
    }

    #[test]
    fn random_structures_are_refinement_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (concrete, abstract_) = random_refinement_pair(&mut rng, 8);
            assert_eq!(concrete.validate_spo().unwrap(), vec![]);
            assert_eq!(abstract_.validate_spo().unwrap(), vec![]);
            assert!(check_refinement(&concrete, &abstract_).unwrap().holds);
        }
    }

    #[test]
    fn guards_reject_out_of_range_sizes() {
        assert!(preservation_exhaustive(4, PreservationLaw::Subclock).is_err());
        assert!(preservation_randomized(0, 10, 0, PreservationLaw::Union).is_err());
        assert!(preservation_randomized(65, 10, 0, PreservationLaw::Union).is_err());
    }
}
