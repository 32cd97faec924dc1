use serde::{Deserialize, Serialize};

/// A binary relation on `0..n`, stored as a dense row-major bit matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.set(i, i, true);
        }
        r
    }

    /// Builds a relation from a row-major vector of length `n * n`.
    pub fn from_bits(n: usize, bits: Vec<bool>) -> Option<Self> {
        (bits.len() == n * n).then_some(Relation { n, bits })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                bits.push(f(i, j));
            }
        }
        Relation { n, bits }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.bits[i * self.n + j] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (0..self.n).filter(move |&j| self.get(i, j)).map(move |j| (i, j)))
    }

    /// First `i` with `(i, i)` missing.
    pub fn reflexivity_failure(&self) -> Option<usize> {
        (0..self.n).find(|&i| !self.get(i, i))
    }

    /// First triple `(i, j, k)` in lexicographic order with `i~j`, `j~k` but not `i~k`.
    pub fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j) {
                    continue;
                }
                for k in 0..self.n {
                    if self.get(j, k) && !self.get(i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First pair `i < j` related in both directions.
    pub fn antisymmetry_failure(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) && self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Whether every pair of `self` is also in `other`.
    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Pairs on which the two relations disagree.
    pub fn difference(&self, other: &Relation) -> Vec<(usize, usize)> {
        assert_eq!(self.n, other.n, "relations on different point counts");
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) != other.get(i, j))
            .collect()
    }
}
