//! Dense boolean relations on `{0..n-1}`, stored as one bitset per row.

use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of a finite carrier `{0..n-1}`.
pub type ElemSet = FixedBitSet;

/// Builds an [`ElemSet`] of capacity `size` holding `members`.
pub fn elem_set(size: usize, members: impl IntoIterator<Item = usize>) -> ElemSet {
    let mut set = FixedBitSet::with_capacity(size);
    for x in members {
        set.insert(x);
    }
    set
}

/// Square boolean matrix. Row `i` holds every `j` with `(i, j)` in the relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    size: usize,
    rows: Vec<FixedBitSet>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        Self {
            size,
            rows: vec![FixedBitSet::with_capacity(size); size],
        }
    }

    pub fn full(size: usize) -> Self {
        let mut rel = Self::empty(size);
        for row in &mut rel.rows {
            row.insert_range(..);
        }
        rel
    }

    pub fn identity(size: usize) -> Self {
        let mut rel = Self::empty(size);
        for i in 0..size {
            rel.insert(i, i);
        }
        rel
    }

    /// Panics if a pair is out of range; callers validate input first.
    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut rel = Self::empty(size);
        for (i, j) in pairs {
            rel.insert(i, j);
        }
        rel
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rel = Self::empty(size);
        for i in 0..size {
            for j in 0..size {
                if f(i, j) {
                    rel.insert(i, j);
                }
            }
        }
        rel
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    #[inline]
    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i].set(j, false);
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    /// Number of related pairs.
    pub fn count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.size == other.size
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.intersect_with(b);
                row
            })
            .collect();
        Relation {
            size: self.size,
            rows,
        }
    }

    pub fn transpose(&self) -> Relation {
        let mut t = Relation::empty(self.size);
        for (i, j) in self.pairs() {
            t.insert(j, i);
        }
        t
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|i| self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.contains(j, i))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(i, j)| i == j || !self.contains(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(i, j)| self.rows[j].is_subset(&self.rows[i]))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_shapes() {
        let id = Relation::identity(3);
        assert!(id.is_reflexive() && id.is_symmetric() && id.is_transitive());
        assert_eq!(id.count(), 3);
        let full = Relation::full(3);
        assert_eq!(full.count(), 9);
        assert!(id.is_subset(&full));
        assert!(!full.is_subset(&id));
        assert_eq!(full.intersection(&id), id);
    }

    #[test]
    fn chain_order() {
        let le = Relation::from_fn(3, |i, j| i <= j);
        assert!(le.is_antisymmetric() && le.is_transitive());
        assert!(!le.is_symmetric());
        assert_eq!(le.transpose(), Relation::from_fn(3, |i, j| i >= j));
    }
}
