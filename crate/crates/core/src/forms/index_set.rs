use std::cmp::Ordering;
use std::fmt;

use crate::coeff::MAX_DIM;

/// Strictly increasing set of coordinate indices, naming the basis
/// monomial `dx_{i1} ∧ ... ∧ dx_{ik}`. Indices are 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// Builds from strictly increasing indices; `None` otherwise.
    pub fn new(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u32;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= MAX_DIM || prev.is_some_and(|p| p >= i) {
                return None;
            }
            mask |= 1 << i;
            prev = Some(i);
        }
        Some(IndexSet(mask))
    }

    pub fn single(i: usize) -> Self {
        assert!(i < MAX_DIM);
        IndexSet(1 << i)
    }

    /// `{0, .., n-1}`, the volume form.
    pub fn full(n: usize) -> Self {
        IndexSet(((1u64 << n) - 1) as u32)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn max_index(&self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..MAX_DIM).filter(move |i| mask & (1 << i) != 0)
    }

    pub fn without(&self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn complement(&self, n: usize) -> Self {
        IndexSet(Self::full(n).0 & !self.0)
    }

    /// Number of elements strictly below `i`.
    pub fn count_below(&self, i: usize) -> usize {
        (self.0 & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// `dx_I ∧ dx_J = sign * dx_{I∪J}`, or `None` when the sets overlap.
    pub fn wedge(&self, other: &Self) -> Option<(Self, i32)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // sign of the shuffle: pairs (i in I, j in J) with i > j
        let inversions: usize = self.iter().map(|i| other.count_below(i)).sum();
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((IndexSet(self.0 | other.0), sign))
    }

    /// All index sets of size `k` in dimension `n`, in lexicographic order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<IndexSet> {
        let mut out: Vec<IndexSet> = (0u32..(1u32 << n))
            .filter(|m| m.count_ones() as usize == k)
            .map(IndexSet)
            .collect();
        out.sort();
        out
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            // equal sizes: the set owning the lowest index of the symmetric
            // difference comes first lexicographically
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert!(IndexSet::new(&[0, 2]).is_some());
        assert!(IndexSet::new(&[2, 0]).is_none());
        assert!(IndexSet::new(&[1, 1]).is_none());
        assert_eq!(IndexSet::new(&[0, 1, 2]), Some(IndexSet::full(3)));
    }

    #[test]
    fn wedge_signs() {
        let dx = IndexSet::single(0);
        let dy = IndexSet::single(1);
        let dz = IndexSet::single(2);
        assert_eq!(dx.wedge(&dy), Some((IndexSet::new(&[0, 1]).unwrap(), 1)));
        assert_eq!(dy.wedge(&dx), Some((IndexSet::new(&[0, 1]).unwrap(), -1)));
        assert_eq!(dx.wedge(&dx), None);
        let yz = IndexSet::new(&[1, 2]).unwrap();
        assert_eq!(dx.wedge(&yz).unwrap().1, 1);
        let xz = IndexSet::new(&[0, 2]).unwrap();
        assert_eq!(dy.wedge(&xz).unwrap().1, -1);
        assert_eq!(dz.wedge(&IndexSet::new(&[0, 1]).unwrap()).unwrap().1, 1);
    }

    #[test]
    fn lexicographic_enumeration() {
        let sets: Vec<_> = IndexSet::all_of_size(4, 2).iter().map(|s| s.indices()).collect();
        assert_eq!(
            sets,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(IndexSet::all_of_size(3, 0), vec![IndexSet::EMPTY]);
    }
}
