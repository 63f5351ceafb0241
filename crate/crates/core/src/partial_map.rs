//! Partial transformations of a finite carrier `A = {0..n-1}`.
//!
//! A [`PartialMap`] is a functional subset of `A × A`, stored as one optional
//! image per point. Composition follows the usual convention
//! `(g ∘ f)(a) = g(f(a))`, defined exactly where both steps are.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A subset of the carrier of some partial map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetA {
    members: FixedBitSet,
}

impl SubsetA {
    pub fn empty(base_size: usize) -> Self {
        Self {
            members: FixedBitSet::with_capacity(base_size),
        }
    }

    pub fn full(base_size: usize) -> Self {
        let mut members = FixedBitSet::with_capacity(base_size);
        members.insert_range(..);
        Self { members }
    }

    pub fn from_members(base_size: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(base_size);
        for a in members {
            if a >= base_size {
                return Err(Error::OutOfRange {
                    value: a,
                    size: base_size,
                });
            }
            set.members.insert(a);
        }
        Ok(set)
    }

    pub fn base_size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn insert(&mut self, a: usize) {
        self.members.insert(a);
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_subset(&self, other: &SubsetA) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &SubsetA) -> SubsetA {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        SubsetA { members }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }
}

impl fmt::Debug for SubsetA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A partial transformation of `{0..base_size-1}`.
///
/// Equality is structural, so two maps are equal exactly when they have the
/// same carrier and the same set of pairs. The empty map is a legal value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    entries: Vec<Option<usize>>,
}

impl PartialMap {
    /// The nowhere-defined map.
    pub fn empty(base_size: usize) -> Self {
        Self {
            entries: vec![None; base_size],
        }
    }

    pub fn identity(base_size: usize) -> Self {
        Self {
            entries: (0..base_size).map(Some).collect(),
        }
    }

    /// `Δ_X`: the identity restricted to `X`.
    pub fn identity_on(set: &SubsetA) -> Self {
        let mut map = Self::empty(set.base_size());
        for a in set.iter() {
            map.entries[a] = Some(a);
        }
        map
    }

    pub fn from_entries(entries: Vec<Option<usize>>) -> Result<Self> {
        let n = entries.len();
        if let Some(&value) = entries.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::OutOfRange { value, size: n });
        }
        Ok(Self { entries })
    }

    /// Builds a map from an explicit pair list, rejecting lists that are not
    /// functional. Repeated identical pairs are accepted.
    pub fn from_pairs(base_size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut map = Self::empty(base_size);
        for &(a, b) in pairs {
            for value in [a, b] {
                if value >= base_size {
                    return Err(Error::OutOfRange {
                        value,
                        size: base_size,
                    });
                }
            }
            match map.entries[a] {
                Some(prev) if prev != b => {
                    return Err(Error::NonFunctional {
                        element: a,
                        first: prev,
                        second: b,
                    })
                }
                _ => map.entries[a] = Some(b),
            }
        }
        Ok(map)
    }

    pub fn base_size(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn get(&self, a: usize) -> Option<usize> {
        self.entries[a]
    }

    pub fn entries(&self) -> &[Option<usize>] {
        &self.entries
    }

    /// Defined pairs in increasing order of the first component.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.map(|b| (a, b)))
    }

    /// Number of defined points.
    pub fn len(&self) -> usize {
        self.entries.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.iter().all(Option::is_none)
    }

    fn same_carrier(&self, other: &PartialMap) -> Result<()> {
        if self.base_size() != other.base_size() {
            return Err(Error::CarrierMismatch {
                left: self.base_size(),
                right: other.base_size(),
            });
        }
        Ok(())
    }

    /// `self ∘ f`: apply `f` first, then `self`.
    pub fn compose(&self, f: &PartialMap) -> Result<PartialMap> {
        self.same_carrier(f)?;
        let entries = f
            .entries
            .iter()
            .map(|fa| fa.and_then(|b| self.entries[b]))
            .collect();
        Ok(PartialMap { entries })
    }

    /// Set-theoretic intersection of the two maps as subsets of `A × A`.
    pub fn intersect(&self, other: &PartialMap) -> Result<PartialMap> {
        self.same_carrier(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| if a == b { *a } else { None })
            .collect();
        Ok(PartialMap { entries })
    }

    /// `self ∘ Δ_X`.
    pub fn restrict(&self, set: &SubsetA) -> PartialMap {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(a, b)| if set.contains(a) { *b } else { None })
            .collect();
        PartialMap { entries }
    }

    /// Union of two maps with compatible values; `None` if the union is not
    /// functional.
    pub fn union(&self, other: &PartialMap) -> Result<Option<PartialMap>> {
        self.same_carrier(other)?;
        let mut entries = Vec::with_capacity(self.entries.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            entries.push(match (a, b) {
                (Some(x), Some(y)) if x != y => return Ok(None),
                (Some(x), _) | (None, Some(x)) => Some(*x),
                (None, None) => None,
            });
        }
        Ok(Some(PartialMap { entries }))
    }

    /// `pr₁`: the set of points where the map is defined.
    pub fn domain(&self) -> SubsetA {
        let mut set = SubsetA::empty(self.base_size());
        for (a, _) in self.pairs() {
            set.insert(a);
        }
        set
    }

    /// `pr₂`: the set of attained values.
    pub fn image(&self) -> SubsetA {
        let mut set = SubsetA::empty(self.base_size());
        for (_, b) in self.pairs() {
            set.insert(b);
        }
        set
    }

    /// Inclusion of pair sets.
    pub fn is_subset(&self, other: &PartialMap) -> bool {
        self.base_size() == other.base_size()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.is_none() || a == b)
    }

    /// Whether the two maps agree on the intersection of their domains,
    /// i.e. `self ∘ Δ_{pr other} = other ∘ Δ_{pr self}`.
    pub fn is_semicompatible(&self, other: &PartialMap) -> bool {
        self.base_size() == other.base_size()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            })
    }

    /// Whether the image of `self` lies inside the domain of `other`.
    pub fn is_semiadjacent(&self, other: &PartialMap) -> bool {
        self.base_size() == other.base_size()
            && self.entries.iter().flatten().all(|&b| other.entries[b].is_some())
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}->{b}")?;
        }
        write!(f, "}}/{}", self.base_size())
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(n: usize, pairs: &[(usize, usize)]) -> PartialMap {
        PartialMap::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn compose_examples() {
        let f = pm(3, &[(0, 1), (1, 2)]);
        let g = pm(3, &[(1, 0)]);
        assert_eq!(g.compose(&f).unwrap(), pm(3, &[(0, 0)]));

        let any = pm(2, &[(0, 1), (1, 1)]);
        assert_eq!(any.compose(&PartialMap::empty(2)).unwrap(), PartialMap::empty(2));

        let g = pm(2, &[(0, 1)]);
        assert_eq!(g.compose(&PartialMap::identity(2)).unwrap(), g);
    }

    #[test]
    fn compose_rejects_mismatched_carriers() {
        let err = PartialMap::identity(2)
            .compose(&PartialMap::identity(3))
            .unwrap_err();
        assert_eq!(err, Error::CarrierMismatch { left: 2, right: 3 });
        assert!(err.to_string().contains("carrier mismatch"));
        assert!(PartialMap::identity(2)
            .intersect(&PartialMap::identity(3))
            .is_err());
    }

    #[test]
    fn intersect_examples() {
        let f = pm(2, &[(0, 0), (1, 1)]);
        let g = pm(2, &[(0, 0), (1, 0)]);
        assert_eq!(f.intersect(&g).unwrap(), pm(2, &[(0, 0)]));
        assert_eq!(f.intersect(&f).unwrap(), f);
        let f = pm(2, &[(0, 0)]);
        let g = pm(2, &[(0, 1)]);
        assert!(f.intersect(&g).unwrap().is_empty());
    }

    #[test]
    fn identity_on_examples() {
        let x = SubsetA::from_members(2, [0]).unwrap();
        assert_eq!(PartialMap::identity_on(&x), pm(2, &[(0, 0)]));
        assert_eq!(
            PartialMap::identity_on(&SubsetA::empty(2)),
            PartialMap::empty(2)
        );
        assert_eq!(
            PartialMap::identity_on(&SubsetA::full(2)),
            PartialMap::identity(2)
        );
    }

    #[test]
    fn domain_and_image() {
        let f = pm(3, &[(0, 1), (1, 2)]);
        assert_eq!(f.domain(), SubsetA::from_members(3, [0, 1]).unwrap());
        assert_eq!(f.image(), SubsetA::from_members(3, [1, 2]).unwrap());
        let e = PartialMap::empty(3);
        assert!(e.domain().is_empty() && e.image().is_empty());
        let id = PartialMap::identity(3);
        assert_eq!(id.domain(), SubsetA::full(3));
        assert_eq!(id.image(), SubsetA::full(3));
    }

    #[test]
    fn from_pairs_rejects_non_functional() {
        let err = PartialMap::from_pairs(3, &[(0, 1), (2, 2), (0, 2)]).unwrap_err();
        assert_eq!(
            err,
            Error::NonFunctional {
                element: 0,
                first: 1,
                second: 2
            }
        );
        assert!(err.to_string().contains("element 0"));
        assert!(PartialMap::from_pairs(2, &[(0, 2)]).is_err());
        assert_eq!(pm(2, &[(0, 1), (0, 1)]), pm(2, &[(0, 1)]));
        assert!(PartialMap::from_entries(vec![Some(3), None]).is_err());
    }

    #[test]
    fn semicompatible_and_semiadjacent() {
        let f = pm(2, &[(0, 1)]);
        let g = pm(2, &[(0, 1), (1, 1)]);
        assert!(f.is_semicompatible(&g));
        assert!(!pm(2, &[(0, 0)]).is_semicompatible(&pm(2, &[(0, 1)])));
        assert!(pm(2, &[(0, 1)]).is_semiadjacent(&pm(2, &[(1, 0)])));
        assert!(PartialMap::empty(2).is_semiadjacent(&PartialMap::empty(2)));
        let delta0 = pm(2, &[(0, 0)]);
        assert!(!PartialMap::identity(2).is_semiadjacent(&delta0));
    }

    #[test]
    fn union_detects_conflicts() {
        let a = pm(2, &[(0, 1)]);
        let b = pm(2, &[(1, 1)]);
        assert_eq!(a.union(&b).unwrap(), Some(pm(2, &[(0, 1), (1, 1)])));
        assert_eq!(a.union(&pm(2, &[(0, 0)])).unwrap(), None);
    }
}
