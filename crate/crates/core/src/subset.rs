//! Fixed-length bit sets over the ordered point list of a space.

use std::fmt;

const WORD: usize = 64;

/// A subset of the points of a space, stored as a bitmask over point indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    len: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(len: usize) -> Self {
        Subset { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Subset::empty(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn singleton(len: usize, index: usize) -> Self {
        let mut s = Subset::empty(len);
        s.insert(index);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut s = Subset::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds a subset from the low `len` bits of `mask`. Requires `len <= 64`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "mask subsets are limited to 64 points");
        let mut s = Subset::empty(len);
        if len > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// Low 64 bits of the subset. Only meaningful when `len() <= 64`.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of points in the ambient space.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for subset of {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn union_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        s
    }

    pub fn complement(&self) -> Subset {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Indices of members in ascending order.
    pub fn iter(&self) -> Ones<'_> {
        Ones { words: &self.words, word: 0, cur: self.words.first().copied().unwrap_or(0) }
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD + bit);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.word];
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates every submask of `mask`, including `mask` and `0`, in decreasing order.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra_basics() {
        let a = Subset::from_indices(70, [0, 3, 65]);
        let b = Subset::from_indices(70, [3, 4, 69]);
        assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), vec![0, 3, 4, 65, 69]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![3]);
        assert_eq!(a.complement().count(), 67);
        assert!(!a.complement().contains(65));
        assert!(Subset::full(70).complement().is_empty());
        assert!(a.intersection(&b).is_subset(&a));
    }

    #[test]
    fn mask_round_trip() {
        let s = Subset::from_mask(5, 0b1_0110);
        assert_eq!(s.to_mask(), 0b1_0110);
        assert_eq!(Subset::from_mask(3, 0xff).to_mask(), 0b111);
    }

    #[test]
    fn submask_enumeration_is_complete() {
        let subs: Vec<u64> = submasks(0b101).collect();
        assert_eq!(subs, vec![0b101, 0b100, 0b001, 0]);
        assert_eq!(submasks(0).count(), 1);
    }
}
