//! Row-reduced bases of GF(2) vectors packed into `u64`.

use alloc::vec::Vec;

/// An incrementally built basis kept in echelon form, one pivot bit per row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Basis {
    rows: Vec<u64>,
}

impl Basis {
    pub fn new() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn from_vectors<I: IntoIterator<Item = u64>>(vectors: I) -> Self {
        let mut b = Self::new();
        for v in vectors {
            b.insert(v);
        }
        b
    }

    /// Reduces `v` against the basis. The result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            if v & pivot(r) != 0 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v` to the span. Returns false if it was already dependent.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let p = pivot(v);
        for r in &mut self.rows {
            if *r & p != 0 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }
}

fn pivot(v: u64) -> u64 {
    1u64 << (63 - v.leading_zeros())
}

/// Rank of a set of vectors.
pub fn rank<I: IntoIterator<Item = u64>>(vectors: I) -> usize {
    Basis::from_vectors(vectors).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_reduce() {
        let mut b = Basis::new();
        assert!(b.insert(0b011));
        assert!(b.insert(0b110));
        assert!(!b.insert(0b101));
        assert_eq!(b.rank(), 2);
        assert!(b.contains(0b101));
        assert!(!b.contains(0b001));
        assert!(b.contains(0));
    }

    #[test]
    fn zero_is_never_inserted() {
        let mut b = Basis::new();
        assert!(!b.insert(0));
        assert_eq!(b.rank(), 0);
    }

    #[test]
    fn echelon_rows_have_distinct_pivots() {
        let b = Basis::from_vectors([0xF0, 0xFF, 0x0F, 0x3C, 0x81]);
        let pivots: Vec<u64> = b.rows().iter().map(|&r| pivot(r)).collect();
        for (i, p) in pivots.iter().enumerate() {
            for (j, r) in b.rows().iter().enumerate() {
                if i != j {
                    assert_eq!(r & p, 0);
                }
            }
        }
    }
}
