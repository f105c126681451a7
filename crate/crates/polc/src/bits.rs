//! Dense bit matrices for relations on monoid elements.

/// A square boolean matrix, one u64-packed row per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        let w = self.bits[i * self.words_per_row + j / 64];
        w >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words_per_row + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Row `i` is a subset of row `j`.
    pub fn row_subset(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.row(i), self.row(j));
        a.iter().zip(b).all(|(x, y)| x & !y == 0)
    }

    pub fn or_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words_per_row, dst * self.words_per_row);
        for k in 0..self.words_per_row {
            let v = self.bits[s + k];
            self.bits[d + k] |= v;
        }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn is_full(&self) -> bool {
        (0..self.n).all(|i| {
            let r = self.row(i);
            (0..self.n).all(|j| r[j / 64] >> (j % 64) & 1 == 1)
        })
    }

    pub fn is_transitive(&self) -> bool {
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) && !self.row_subset(k, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_antisymmetric(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.get(i, j) && self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Reflexive-transitive closure (Warshall with packed rows).
    pub fn reflexive_transitive_closure(&self) -> BitMatrix {
        let mut c = self.clone();
        for i in 0..self.n {
            c.set(i, i, true);
        }
        if c.is_full() {
            return c;
        }
        for k in 0..self.n {
            for i in 0..self.n {
                if c.get(i, k) {
                    c.or_row_into(k, i);
                }
            }
        }
        c
    }

    /// Pairs `(i, j)` with the bit set, in row-major order.
    pub fn related_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a_chain_is_the_full_upper_triangle() {
        let mut m = BitMatrix::new(4);
        m.set(0, 1, true);
        m.set(1, 2, true);
        m.set(2, 3, true);
        let c = m.reflexive_transitive_closure();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(c.get(i, j), i <= j, "({i},{j})");
            }
        }
        assert!(c.is_transitive());
        assert!(c.is_reflexive());
    }

    #[test]
    fn subset_and_count() {
        let mut m = BitMatrix::new(70);
        m.set(0, 69, true);
        m.set(1, 69, true);
        m.set(1, 3, true);
        assert!(m.row_subset(0, 1));
        assert!(!m.row_subset(1, 0));
        assert_eq!(m.count(), 3);
        assert!(BitMatrix::full(70).is_full());
        assert!(!m.is_full());
    }
}
