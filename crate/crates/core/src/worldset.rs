//! Dense bit sets over world indices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A set of worlds `0..len` stored as packed bits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldSet {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl WorldSet {
    pub fn empty(len: usize) -> Self {
        WorldSet {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = WorldSet {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        s.trim();
        s
    }

    pub fn from_worlds<I: IntoIterator<Item = usize>>(len: usize, worlds: I) -> Self {
        let mut s = Self::empty(len);
        for w in worlds {
            s.insert(w);
        }
        s
    }

    /// Number of worlds in the universe (not the cardinality).
    pub fn universe(&self) -> usize {
        self.len
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn contains(&self, w: usize) -> bool {
        w < self.len && self.words[w / 64] >> (w % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, w: usize) {
        assert!(w < self.len, "world {w} out of range {}", self.len);
        self.words[w / 64] |= 1 << (w % 64);
    }

    #[inline]
    pub fn remove(&mut self, w: usize) {
        if w < self.len {
            self.words[w / 64] &= !(1 << (w % 64));
        }
    }

    pub fn set(&mut self, w: usize, value: bool) {
        if value {
            self.insert(w)
        } else {
            self.remove(w)
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &WorldSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &WorldSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &WorldSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &WorldSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&mut self) {
        for a in &mut self.words {
            *a = !*a;
        }
        self.trim();
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    set: &'a WorldSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops_across_word_boundary() {
        let mut a = WorldSet::from_worlds(130, [0, 63, 64, 129]);
        assert_eq!(a.count(), 4);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        let b = WorldSet::from_worlds(130, [63, 64]);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        a.difference_with(&b);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 129]);
        a.complement();
        assert_eq!(a.count(), 128);
        assert!(!a.contains(129));
        assert!(WorldSet::full(130).is_full());
    }
}
