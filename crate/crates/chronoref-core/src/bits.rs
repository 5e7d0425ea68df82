//! Dense square bit matrix backing the closed relations.

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitMatrix {
    n: usize,
    words_per_row: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(WORD_BITS);
        BitMatrix {
            n,
            words_per_row,
            rows: vec![0; n * words_per_row],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        let word = self.rows[i * self.words_per_row + j / WORD_BITS];
        word & (1 << (j % WORD_BITS)) != 0
    }

    /// Sets bit (i, j) and reports whether it was previously clear.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        let slot = &mut self.rows[i * self.words_per_row + j / WORD_BITS];
        let mask = 1 << (j % WORD_BITS);
        let fresh = *slot & mask == 0;
        *slot |= mask;
        fresh
    }

    /// rows[dst] |= rows[src]; reports whether dst changed.
    pub fn or_row_into(&mut self, src: usize, dst: usize) -> bool {
        if src == dst {
            return false;
        }
        let w = self.words_per_row;
        let mut changed = false;
        for k in 0..w {
            let v = self.rows[src * w + k];
            let slot = &mut self.rows[dst * w + k];
            let merged = *slot | v;
            changed |= merged != *slot;
            *slot = merged;
        }
        changed
    }

    /// rows[dst] |= other.rows[src]; reports whether dst changed.
    pub fn or_row_from(&mut self, dst: usize, other: &BitMatrix, src: usize) -> bool {
        debug_assert_eq!(self.words_per_row, other.words_per_row);
        let w = self.words_per_row;
        let mut changed = false;
        for k in 0..w {
            let v = other.rows[src * w + k];
            let slot = &mut self.rows[dst * w + k];
            let merged = *slot | v;
            changed |= merged != *slot;
            *slot = merged;
        }
        changed
    }

    /// One Floyd-Warshall sweep over bit rows; yields the transitive closure.
    pub fn transitive_close(&mut self) -> bool {
        let mut changed = false;
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    changed |= self.or_row_into(k, i);
                }
            }
        }
        changed
    }

    pub fn is_subset_of(&self, other: &BitMatrix) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Set bits in row-major (lexicographic pair) order.
    pub fn iter_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n).flat_map(move |i| {
            (0..self.n).filter_map(move |j| self.get(i, j).then_some((i as u32, j as u32)))
        })
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_and_get() {
        let mut m = BitMatrix::new(70);
        assert!(!m.get(3, 68));
        assert!(m.set(3, 68));
        assert!(!m.set(3, 68));
        assert!(m.get(3, 68));
    }

    #[test]
    fn transitive_close_chain() {
        let mut m = BitMatrix::new(4);
        m.set(0, 1);
        m.set(1, 2);
        m.set(2, 3);
        assert!(m.transitive_close());
        assert!(m.get(0, 3));
        assert!(!m.get(3, 0));
        assert!(!m.transitive_close());
    }

    #[test]
    fn pair_iteration_is_lexicographic() {
        let mut m = BitMatrix::new(3);
        m.set(2, 0);
        m.set(0, 2);
        m.set(0, 1);
        let pairs: Vec<_> = m.iter_pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (2, 0)]);
    }
}
