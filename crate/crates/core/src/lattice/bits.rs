use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

const WORD: usize = 64;

/// Fixed-width bit vector. Two inline words cover universes up to 128 atoms
/// without touching the heap.
#[derive(Clone, Debug)]
pub struct Bits {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

impl Bits {
    pub fn empty(len: usize) -> Self {
        Bits {
            len,
            words: SmallVec::from_elem(0, len.div_ceil(WORD)),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits {
            len,
            words: SmallVec::from_elem(u64::MAX, len.div_ceil(WORD)),
        };
        b.clear_tail();
        b
    }

    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::empty(len);
        for p in positions {
            b.insert(p);
        }
        b
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    #[inline]
    pub fn contains(&self, pos: usize) -> bool {
        debug_assert!(pos < self.len);
        self.words[pos / WORD] >> (pos % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, pos: usize) {
        assert!(pos < self.len, "bit {pos} out of range for width {}", self.len);
        self.words[pos / WORD] |= 1 << (pos % WORD);
    }

    #[inline]
    pub fn remove(&mut self, pos: usize) {
        assert!(pos < self.len, "bit {pos} out of range for width {}", self.len);
        self.words[pos / WORD] &= !(1 << (pos % WORD));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.difference_with(other);
        r
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }
}

impl PartialEq for Bits {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.words == other.words
    }
}

impl Eq for Bits {}

impl Hash for Bits {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len.hash(state);
        self.words.hash(state);
    }
}

/// Lexicographic order on the sorted member lists.
impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ones()
            .cmp(other.ones())
            .then_with(|| self.len.cmp(&other.len))
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Enumerates every subset of `positions` (at most 63 of them) as a bit
/// vector of width `len`, in binary-counter order starting from the empty set.
pub struct Subsets<'a> {
    len: usize,
    positions: &'a [usize],
    next: u64,
    end: u64,
}

impl<'a> Subsets<'a> {
    pub fn new(len: usize, positions: &'a [usize]) -> Self {
        assert!(positions.len() < 64, "subset enumeration over more than 63 atoms");
        Subsets {
            len,
            positions,
            next: 0,
            end: 1u64 << positions.len(),
        }
    }
}

impl Iterator for Subsets<'_> {
    type Item = Bits;

    fn next(&mut self) -> Option<Bits> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut b = Bits::empty(self.len);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            b.insert(self.positions[i]);
        }
        Some(b)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_clears_tail_bits() {
        let b = Bits::full(70);
        assert_eq!(b.count(), 70);
        assert_eq!(b.ones().last(), Some(69));
    }

    #[test]
    fn set_algebra() {
        let a = Bits::from_positions(130, [0, 5, 64, 129]);
        let b = Bits::from_positions(130, [5, 129]);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.difference(&b).ones().collect::<Vec<_>>(), vec![0, 64]);
        assert!(a.difference(&b).is_disjoint(&b));
        assert_eq!(a.intersection(&b), b);
    }

    #[test]
    fn subsets_cover_powerset() {
        let all: Vec<Bits> = Subsets::new(10, &[1, 4, 7]).collect();
        assert_eq!(all.len(), 8);
        assert!(all[0].is_empty());
        assert_eq!(all[7], Bits::from_positions(10, [1, 4, 7]));
    }

    #[test]
    fn order_is_lexicographic_on_members() {
        let a = Bits::from_positions(4, [0, 3]);
        let b = Bits::from_positions(4, [1]);
        let e = Bits::empty(4);
        assert!(e < a && a < b);
    }
}
