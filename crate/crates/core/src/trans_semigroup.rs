//! Finite ∩-semigroups of partial transformations.

use std::collections::HashMap;

use crate::abstract_system::AbstractSystem;
use crate::closure::{closure_set, ClosureMemo};
use crate::error::{Error, Result};
use crate::partial_map::{PartialMap, SubsetA};
use crate::relation::{elem_set, Relation};
use crate::report::{Check, CheckBuilder};
use crate::witness;

pub mod ids {
    /// `(f,g) ∈ δ ⟷ pr f ⊆ pr(g∘f)`
    pub const DELTA_DOMAIN_CRITERION: &str = "delta-domain-criterion";
    /// `(f,g) ∈ δ → (f∘h, g) ∈ δ`
    pub const DELTA_RIGHT_COMPOSITION: &str = "delta-right-composition";
    /// `⋂ pr φᵢ ⊆ pr φ` for every `φ` in the closure of `{φᵢ}`
    pub const DOMAIN_MEET: &str = "domain-meet";
}

/// A set of partial maps closed under `∘` and `∩`, with its tables and the
/// inclusion (`ζ`), semicompatibility (`ξ`) and semiadjacency (`δ`) relations.
#[derive(Clone, Debug)]
pub struct TransSystem {
    base_size: usize,
    elements: Vec<PartialMap>,
    index: HashMap<PartialMap, usize>,
    /// `compose[i][j]` is the index of `elements[i] ∘ elements[j]`.
    compose: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    zeta: Relation,
    xi: Relation,
    delta: Relation,
}

impl TransSystem {
    /// Least superset of `seeds` closed under composition and intersection.
    ///
    /// Elements keep the seed order (duplicates dropped), followed by newly
    /// found maps in worklist discovery order.
    pub fn generate(seeds: &[PartialMap], cap: usize) -> Result<Self> {
        let first = seeds.first().ok_or(Error::NoSeeds)?;
        let base_size = first.base_size();
        if base_size == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut elements: Vec<PartialMap> = Vec::new();
        let mut index: HashMap<PartialMap, usize> = HashMap::new();

        let add = |map: PartialMap,
                       elements: &mut Vec<PartialMap>,
                       index: &mut HashMap<PartialMap, usize>|
         -> Result<usize> {
            if let Some(&i) = index.get(&map) {
                return Ok(i);
            }
            if elements.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(map.clone(), elements.len());
            elements.push(map);
            Ok(elements.len() - 1)
        };

        for seed in seeds {
            if seed.base_size() != base_size {
                return Err(Error::CarrierMismatch {
                    left: base_size,
                    right: seed.base_size(),
                });
            }
            add(seed.clone(), &mut elements, &mut index)?;
        }

        // Every pair (i, j) with both indices below `done` has been combined.
        let mut done = 0;
        while done < elements.len() {
            let i = done;
            for j in 0..=i {
                let (a, b) = (elements[i].clone(), elements[j].clone());
                add(a.compose(&b)?, &mut elements, &mut index)?;
                add(b.compose(&a)?, &mut elements, &mut index)?;
                add(a.intersect(&b)?, &mut elements, &mut index)?;
            }
            done += 1;
        }

        Ok(Self::from_closed(base_size, elements, index))
    }

    fn from_closed(
        base_size: usize,
        elements: Vec<PartialMap>,
        index: HashMap<PartialMap, usize>,
    ) -> Self {
        let n = elements.len();
        let lookup = |map: PartialMap| index[&map];
        let compose = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| lookup(elements[i].compose(&elements[j]).expect("same carrier")))
                    .collect()
            })
            .collect();
        let meet = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| lookup(elements[i].intersect(&elements[j]).expect("same carrier")))
                    .collect()
            })
            .collect();
        let zeta = Relation::from_fn(n, |i, j| elements[i].is_subset(&elements[j]));
        let xi = Relation::from_fn(n, |i, j| elements[i].is_semicompatible(&elements[j]));
        let delta = Relation::from_fn(n, |i, j| elements[i].is_semiadjacent(&elements[j]));
        Self {
            base_size,
            elements,
            index,
            compose,
            meet,
            zeta,
            xi,
            delta,
        }
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PartialMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialMap {
        &self.elements[i]
    }

    pub fn index_of(&self, map: &PartialMap) -> Option<usize> {
        self.index.get(map).copied()
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn compose_index(&self, i: usize, j: usize) -> usize {
        self.compose[i][j]
    }

    /// Index of `elements[i] ∩ elements[j]`.
    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    /// Inclusion of maps as pair sets.
    pub fn zeta_rel(&self) -> &Relation {
        &self.zeta
    }

    /// `(f, g)` iff `f ∘ Δ_{pr g} = g ∘ Δ_{pr f}`.
    pub fn xi_rel(&self) -> &Relation {
        &self.xi
    }

    /// `(f, g)` iff the image of `f` lies in the domain of `g`.
    pub fn delta_rel(&self) -> &Relation {
        &self.delta
    }

    /// Re-encodes the system abstractly, with `x · y := y ∘ x`.
    pub fn to_abstract(&self) -> AbstractSystem {
        let n = self.len();
        let mul = (0..n * n).map(|k| self.compose[k % n][k / n]).collect();
        let meet = self.meet.iter().flatten().copied().collect();
        AbstractSystem::from_flat(n, mul, meet, self.xi.clone(), self.delta.clone())
    }

    /// Checks both semiadjacency identities over all pairs and triples.
    pub fn check_lemma1(&self) -> Vec<Check> {
        let n = self.len();
        let mut criterion = CheckBuilder::new(ids::DELTA_DOMAIN_CRITERION);
        let mut right = CheckBuilder::new(ids::DELTA_RIGHT_COMPOSITION);
        for f in 0..n {
            let dom_f = self.elements[f].domain();
            for g in 0..n {
                let in_delta = self.delta.contains(f, g);
                let gf = &self.elements[self.compose[g][f]];
                criterion.expect(in_delta == dom_f.is_subset(&gf.domain()), || {
                    witness!(f = f, g = g)
                });
                if in_delta {
                    for h in 0..n {
                        right.expect(self.delta.contains(self.compose[f][h], g), || {
                            witness!(f = f, g = g, h = h)
                        });
                    }
                }
            }
        }
        vec![criterion.finish(), right.finish()]
    }

    /// For the given seed indices, every map in their closure (computed on
    /// the abstract encoding) is defined on the common domain of the seeds.
    pub fn check_domain_meet(&self, seeds: &[usize]) -> Result<Check> {
        let abs = self.to_abstract();
        let closed = closure_set(&abs, &elem_set(self.len(), seeds.iter().copied()))?;
        Ok(self.domain_meet_against(seeds, closed.ones()))
    }

    /// Same as [`check_domain_meet`](Self::check_domain_meet) for every seed
    /// set of size one or two, reusing `memo` for the closures.
    pub fn check_domain_meet_small(&self, memo: &ClosureMemo<'_>) -> Check {
        let n = self.len();
        let mut b = CheckBuilder::new(ids::DOMAIN_MEET);
        for a in 0..n {
            for c in a..n {
                let common = self.elements[a].domain().intersection(&self.elements[c].domain());
                for phi in memo.pair(a, c).ones() {
                    b.expect(common.is_subset(&self.elements[phi].domain()), || {
                        witness!(seeds = format!("{{{a},{c}}}"), phi = phi)
                    });
                }
            }
        }
        b.finish()
    }

    fn domain_meet_against(&self, seeds: &[usize], closed: impl Iterator<Item = usize>) -> Check {
        let common = seeds
            .iter()
            .map(|&i| self.elements[i].domain())
            .fold(SubsetA::full(self.base_size), |acc, d| acc.intersection(&d));
        let mut b = CheckBuilder::new(ids::DOMAIN_MEET);
        for phi in closed {
            b.expect(common.is_subset(&self.elements[phi].domain()), || {
                witness!(seeds = format!("{seeds:?}"), phi = phi)
            });
        }
        b.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(n: usize, pairs: &[(usize, usize)]) -> PartialMap {
        PartialMap::from_pairs(n, pairs).unwrap()
    }

    fn delta0_id() -> TransSystem {
        TransSystem::generate(&[pm(2, &[(0, 0)]), PartialMap::identity(2)], 16).unwrap()
    }

    #[test]
    fn generate_small_examples() {
        let sys = delta0_id();
        assert_eq!(sys.len(), 2);
        assert!(sys.zeta_rel().contains(0, 1));
        assert!(!sys.zeta_rel().contains(1, 0));

        let empty = TransSystem::generate(&[PartialMap::empty(2)], 4).unwrap();
        assert_eq!(empty.len(), 1);
        let id = TransSystem::generate(&[PartialMap::identity(3)], 4).unwrap();
        assert_eq!(id.len(), 1);
    }

    #[test]
    fn generate_errors() {
        assert_eq!(TransSystem::generate(&[], 4).unwrap_err(), Error::NoSeeds);
        let shift = pm(3, &[(0, 1), (1, 2)]);
        let err = TransSystem::generate(&[shift], 2).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 2 });
        assert!(err.to_string().contains("cap exceeded"));
        let err = TransSystem::generate(&[PartialMap::identity(2), PartialMap::identity(3)], 8);
        assert!(matches!(err, Err(Error::CarrierMismatch { .. })));
    }

    #[test]
    fn generated_system_is_closed() {
        let seeds = [pm(3, &[(0, 1), (1, 2)]), pm(3, &[(1, 0), (2, 2)])];
        let sys = TransSystem::generate(&seeds, 256).unwrap();
        assert_eq!(&sys.elements()[..2], &seeds);
        for a in sys.elements() {
            for b in sys.elements() {
                assert!(sys.index_of(&a.compose(b).unwrap()).is_some());
                assert!(sys.index_of(&a.intersect(b).unwrap()).is_some());
            }
        }
    }

    #[test]
    fn relation_examples() {
        let sys = TransSystem::generate(&[pm(2, &[(0, 1)]), pm(2, &[(0, 1), (1, 1)])], 64).unwrap();
        let f = sys.index_of(&pm(2, &[(0, 1)])).unwrap();
        let g = sys.index_of(&pm(2, &[(0, 1), (1, 1)])).unwrap();
        assert!(sys.xi_rel().contains(f, g));
        assert!(sys.xi_rel().is_reflexive());

        let sys = TransSystem::generate(&[pm(2, &[(0, 0)]), pm(2, &[(0, 1)])], 64).unwrap();
        assert!(!sys.xi_rel().contains(0, 1));

        let sys = TransSystem::generate(&[pm(2, &[(0, 1)]), pm(2, &[(1, 0)])], 64).unwrap();
        assert!(sys.delta_rel().contains(0, 1));
        let empty = sys.index_of(&PartialMap::empty(2)).unwrap();
        for g in 0..sys.len() {
            assert!(sys.delta_rel().contains(empty, g));
        }

        let sys = delta0_id();
        assert!(!sys.delta_rel().contains(1, 0));
    }

    #[test]
    fn lemma1_and_domain_meet_on_small_systems() {
        for sys in [delta0_id(), TransSystem::generate(&[PartialMap::empty(2)], 4).unwrap()] {
            assert!(sys.check_lemma1().iter().all(|c| c.passed));
            for i in 0..sys.len() {
                assert!(sys.check_domain_meet(&[i]).unwrap().passed);
            }
        }
    }

    #[test]
    fn abstract_orientation() {
        // x·y = y∘x: apply x first
        let f = pm(3, &[(0, 1)]);
        let g = pm(3, &[(1, 2)]);
        let sys = TransSystem::generate(&[f.clone(), g.clone()], 64).unwrap();
        let abs = sys.to_abstract();
        let gf = sys.index_of(&g.compose(&f).unwrap()).unwrap();
        assert_eq!(abs.mul(0, 1), gf);
        assert!(abs.validate().passed());
    }
}
