//! Exhaustive enumeration of all closed, consistent structures on a small
//! universe, used as a brute-force oracle for the algebraic law checks.
//!
//! Every such structure is a set partition of the universe into coincidence
//! classes combined with a strict partial order on the classes, so the
//! enumeration walks exactly that product: restricted growth strings for the
//! partitions, and all irreflexive transitive relations on the class set for
//! the orders. Each structure is yielded exactly once, already closed.

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::structure::{RelationSet, TimeStructure};

/// Largest universe the enumeration accepts. Sizes grow roughly like the
/// Bell numbers times the number of labeled posets; 4 instants already give
/// 355 structures.
pub const MAX_ENUMERATION_SIZE: u32 = 4;

/// All closed, consistent structures on `n` instants, in a canonical,
/// deterministic order.
pub fn enumerate_structures(n: u32) -> Result<Vec<TimeStructure>> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(Error::EnumerationOutOfRange {
            n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let n = n as usize;
    let mut out = Vec::new();
    for partition in partitions(n) {
        let class_count = partition.iter().copied().max().unwrap() as usize + 1;
        for order in strict_orders(class_count) {
            out.push(lift(n, &partition, &order));
        }
    }
    Ok(out)
}

/// Restricted growth strings: `partition[i]` is the class index of instant
/// `i`, with class indices appearing in first-use order.
fn partitions(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = vec![0u8; n];
    fill(&mut current, 1, &mut out);
    out
}

fn fill(current: &mut Vec<u8>, pos: usize, out: &mut Vec<Vec<u8>>) {
    if pos == current.len() {
        out.push(current.clone());
        return;
    }
    let max_used = current[..pos].iter().copied().max().unwrap();
    for class in 0..=max_used + 1 {
        current[pos] = class;
        fill(current, pos + 1, out);
    }
}

/// All strict partial orders on `m` labeled elements, as adjacency masks over
/// the off-diagonal pairs. Candidates are filtered for transitivity; strict
/// orders cannot contain 2-cycles, so transitivity plus the missing diagonal
/// already rules those out (a cycle would force a self-loop).
fn strict_orders(m: usize) -> Vec<Vec<bool>> {
    let pair_count = m * (m - 1);
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << pair_count) {
        let mut rel = vec![false; m * m];
        let mut bit = 0;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    rel[i * m + j] = mask & (1 << bit) != 0;
                    bit += 1;
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                if !rel[i * m + j] {
                    continue;
                }
                for k in 0..m {
                    if rel[j * m + k] && (i == k || !rel[i * m + k]) {
                        continue 'mask;
                    }
                }
            }
        }
        out.push(rel);
    }
    out
}

fn lift(n: usize, partition: &[u8], class_order: &[bool]) -> TimeStructure {
    let class_count = partition.iter().copied().max().unwrap() as usize + 1;
    let mut coincidence = BitMatrix::new(n);
    let mut precedence = BitMatrix::new(n);
    let mut coincidence_gen = RelationSet::new();
    let mut precedence_gen = RelationSet::new();
    for i in 0..n {
        for j in 0..n {
            let (ci, cj) = (partition[i] as usize, partition[j] as usize);
            if ci == cj {
                coincidence.set(i, j);
                if i != j {
                    coincidence_gen.insert((i as u32).into(), (j as u32).into());
                }
            } else if class_order[ci * class_count + cj] {
                precedence.set(i, j);
                precedence_gen.insert((i as u32).into(), (j as u32).into());
            }
        }
    }
    TimeStructure::from_closed_matrices(
        n as u32,
        coincidence_gen,
        precedence_gen,
        coincidence,
        precedence,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_axioms;
    use crate::structure::PairClassification;

    /// Independent oracle: test every pair of relations over `n` instants
    /// against the closure axioms, one implication at a time.
    fn naive_consistent_pair_count(n: usize) -> usize {
        let pairs = n * n;
        let mut count = 0;
        for eq_mask in 0u32..(1 << pairs) {
            'prec: for lt_mask in 0u32..(1 << pairs) {
                let eq = |i: usize, j: usize| eq_mask & (1 << (i * n + j)) != 0;
                let lt = |i: usize, j: usize| lt_mask & (1 << (i * n + j)) != 0;
                for i in 0..n {
                    if !eq(i, i) {
                        continue 'prec;
                    }
                    for j in 0..n {
                        if eq(i, j) && !eq(j, i) {
                            continue 'prec;
                        }
                        if lt(i, j) && eq(i, j) {
                            continue 'prec;
                        }
                        for k in 0..n {
                            if eq(i, j) && eq(j, k) && !eq(i, k) {
                                continue 'prec;
                            }
                            if lt(i, j) && lt(j, k) && !lt(i, k) {
                                continue 'prec;
                            }
                            if eq(i, j) && lt(i, k) && !lt(j, k) {
                                continue 'prec;
                            }
                            if eq(i, j) && lt(k, i) && !lt(k, j) {
                                continue 'prec;
                            }
                        }
                    }
                }
                count += 1;
            }
        }
        count
    }

    #[test]
    fn single_instant_has_one_structure() {
        let all = enumerate_structures(1).unwrap();
        assert_eq!(all.len(), 1);
        let s = &all[0];
        assert!(s.coincident(0.into(), 0.into()));
        assert!(s.precedence_pairs().is_empty());
    }

    #[test]
    fn two_instants_have_exactly_four_structures() {
        // Hand enumeration: one partition {0,1} (coincident), and the
        // three orders on two singleton classes (0≺1, 1≺0, independent).
        let all = enumerate_structures(2).unwrap();
        assert_eq!(all.len(), 4);
        let classify = |s: &TimeStructure| s.classify_pair(0.into(), 1.into()).unwrap();
        let kinds: Vec<_> = all.iter().map(classify).collect();
        let count = |k: PairClassification| kinds.iter().filter(|&&x| x == k).count();
        assert_eq!(count(PairClassification::Coincident), 1);
        assert_eq!(count(PairClassification::Precedes), 1);
        assert_eq!(count(PairClassification::PrecededBy), 1);
        assert_eq!(count(PairClassification::Independent), 1);
    }

    #[test]
    fn counts_match_naive_relation_filter() {
        assert_eq!(
            enumerate_structures(2).unwrap().len(),
            naive_consistent_pair_count(2)
        );
        assert_eq!(
            enumerate_structures(3).unwrap().len(),
            naive_consistent_pair_count(3)
        );
    }

    #[test]
    fn three_instants_have_twenty_nine_structures() {
        // 5 partitions of 3 elements crossed with the strict orders on their
        // classes: 19 + 3·3 + 1 = 29, confirmed by the naive filter above.
        assert_eq!(enumerate_structures(3).unwrap().len(), 29);
    }

    #[test]
    fn four_instants_have_355_structures() {
        assert_eq!(enumerate_structures(4).unwrap().len(), 355);
    }

    #[test]
    fn every_enumerated_structure_is_closed_valid_and_axiomatic() {
        for n in 1..=MAX_ENUMERATION_SIZE {
            for s in enumerate_structures(n).unwrap() {
                assert!(s.is_closed());
                assert_eq!(s.validate_spo().unwrap(), vec![]);
                assert!(check_axioms(&s).unwrap().all_hold());
                // Closing from the stored generators reproduces the relations.
                assert_eq!(s.close(), s);
            }
        }
    }

    #[test]
    fn enumeration_yields_no_duplicates() {
        for n in 1..=3 {
            let all = enumerate_structures(n).unwrap();
            for (i, a) in all.iter().enumerate() {
                for b in &all[i + 1..] {
                    assert_ne!(a, b);
                }
            }
        }
    }

    #[test]
    fn out_of_range_sizes_are_rejected() {
        assert!(enumerate_structures(0).is_err());
        assert!(enumerate_structures(5).is_err());
    }
}
