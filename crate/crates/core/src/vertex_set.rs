//! Fixed-capacity vertex sets backed by a word-packed bit vector.

use std::fmt;

use crate::error::GraphError;

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A set of vertex indices drawn from `0..capacity`.
///
/// The capacity is the order of the host graph the set refers to. Binary
/// operations require both operands to share a capacity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        Self {
            words: vec![0; words_for(capacity)],
            capacity,
        }
    }

    /// The set `{0, 1, ..., capacity - 1}`.
    pub fn full(capacity: usize) -> Self {
        let mut s = Self {
            words: vec![u64::MAX; words_for(capacity)],
            capacity,
        };
        s.trim();
        s
    }

    /// Builds a set from explicit members, rejecting indices `>= capacity`.
    /// Repeated members are collapsed.
    pub fn from_vertices<I>(capacity: usize, vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::new(capacity);
        for v in vertices {
            if v >= capacity {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    order: capacity,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn from_words(capacity: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(capacity));
        let mut s = Self { words, capacity };
        s.trim();
        s
    }

    fn trim(&mut self) {
        let rem = self.capacity % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Inserts `v`; returns `true` if it was not already present.
    ///
    /// Panics if `v` is out of range.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(
            v < self.capacity,
            "vertex {v} out of range for capacity {}",
            self.capacity
        );
        let (w, b) = (v / WORD, v % WORD);
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !had
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.capacity {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        had
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(
            self.capacity, other.capacity,
            "vertex set capacity mismatch"
        );
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self {
            words,
            capacity: self.capacity,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    /// `|self ∩ other|` without materializing the intersection.
    pub fn intersection_len(&self, other: &Self) -> usize {
        assert_eq!(
            self.capacity, other.capacity,
            "vertex set capacity mismatch"
        );
        intersection_count(&self.words, &other.words)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(
            self.capacity, other.capacity,
            "vertex set capacity mismatch"
        );
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    /// Complement relative to `0..capacity`.
    pub fn complement(&self) -> Self {
        let mut s = Self {
            words: self.words.iter().map(|w| !w).collect(),
            capacity: self.capacity,
        };
        s.trim();
        s
    }
}

#[inline]
pub(crate) fn intersection_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x & y).count_ones() as usize)
        .sum()
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_set_trims_tail_bits() {
        let s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.iter().last(), Some(69));
        assert!(s.complement().is_empty());
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_vertices(130, [1, 5, 64, 129]).unwrap();
        let b = VertexSet::from_vertices(130, [5, 64, 100]).unwrap();
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 64]);
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 129]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.first(), Some(1));
        assert!(!a.is_disjoint(&b));
    }

    #[test]
    fn out_of_range_members_rejected() {
        assert!(VertexSet::from_vertices(3, [0, 3]).is_err());
        assert_eq!(VertexSet::from_vertices(3, [2, 2]).unwrap().len(), 1);
    }

    #[test]
    fn empty_capacity() {
        let s = VertexSet::full(0);
        assert!(s.is_empty());
        assert_eq!(s.iter().count(), 0);
        assert_eq!(s.first(), None);
    }
}
