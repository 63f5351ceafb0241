//! Seeded random transformation systems and exhaustive small abstract systems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abstract_system::AbstractSystem;
use crate::error::{Error, Result};
use crate::partial_map::PartialMap;
use crate::relation::Relation;
use crate::trans_semigroup::TransSystem;

/// Samples drawn before giving up on staying under the cap.
pub const MAX_ATTEMPTS: usize = 10_000;

/// Each point is sent to a uniform choice among the `n` points and "undefined".
pub fn random_partial_map(rng: &mut impl Rng, n: usize) -> PartialMap {
    let entries = (0..n)
        .map(|_| {
            let v = rng.gen_range(0..=n);
            (v < n).then_some(v)
        })
        .collect();
    PartialMap::from_entries(entries).expect("entries in range")
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub seed: u64,
    pub seeds: Vec<PartialMap>,
    pub system: TransSystem,
}

/// Draws `maps` random maps on `points` points and saturates them,
/// resampling whenever the closure would exceed `cap`.
pub fn random_trans_system(seed: u64, points: usize, maps: usize, cap: usize) -> Result<Generated> {
    if points == 0 {
        return Err(Error::EmptyCarrier);
    }
    if maps == 0 {
        return Err(Error::NoSeeds);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let seeds: Vec<PartialMap> = (0..maps).map(|_| random_partial_map(&mut rng, points)).collect();
        match TransSystem::generate(&seeds, cap) {
            Ok(system) => return Ok(Generated { seed, seeds, system }),
            Err(Error::CapExceeded { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::CapExceeded { cap })
}

/// Shape of the `i`-th corpus entry: 1 to 4 points and 1 to 4 seed maps.
pub fn corpus_shape(i: usize) -> (usize, usize) {
    (1 + i % 4, 1 + (i / 4) % 4)
}

/// `count` generated systems with seeds `0..count` and cap 64.
pub fn trans_corpus(count: usize) -> Vec<Generated> {
    (0..count)
        .map(|i| {
            let (points, maps) = corpus_shape(i);
            random_trans_system(i as u64, points, maps, 64).expect("corpus entry fits the cap")
        })
        .collect()
}

/// Every table `m × m → m`, as flat row-major vectors.
fn all_tables(m: usize) -> impl Iterator<Item = Vec<usize>> {
    let cells = m * m;
    let total = m.pow(cells as u32);
    (0..total).map(move |mut code| {
        (0..cells)
            .map(|_| {
                let v = code % m;
                code /= m;
                v
            })
            .collect()
    })
}

fn associative(m: usize, t: &[usize]) -> bool {
    (0..m).all(|x| {
        (0..m).all(|y| (0..m).all(|z| t[t[x * m + y] * m + z] == t[x * m + t[y * m + z]]))
    })
}

/// Associative tables on `m` elements.
pub fn semigroups(m: usize) -> Vec<Vec<usize>> {
    all_tables(m).filter(|t| associative(m, t)).collect()
}

/// Semilattice operations on `m` elements.
pub fn semilattices(m: usize) -> Vec<Vec<usize>> {
    all_tables(m)
        .filter(|t| {
            (0..m).all(|x| t[x * m + x] == x && (0..m).all(|y| t[x * m + y] == t[y * m + x]))
                && associative(m, t)
        })
        .collect()
}

fn all_relations(m: usize) -> impl Iterator<Item = Relation> {
    let cells = m * m;
    (0u64..1 << cells).map(move |bits| Relation::from_fn(m, |i, j| bits >> (i * m + j) & 1 == 1))
}

/// Every semigroup and semilattice on `m ≤ 2` elements with every `ξ` and
/// `δ`, valid or not.
pub fn all_abstract_systems(m: usize) -> Vec<AbstractSystem> {
    assert!((1..=2).contains(&m), "exhaustive enumeration supports m ≤ 2");
    let mut out = Vec::new();
    for mul in semigroups(m) {
        for meet in semilattices(m) {
            for xi in all_relations(m) {
                for delta in all_relations(m) {
                    out.push(AbstractSystem::from_flat(m, mul.clone(), meet.clone(), xi.clone(), delta));
                }
            }
        }
    }
    out
}

/// Every system on `m ≤ 3` elements that passes all hypothesis checks.
///
/// The `ξ` and `δ` conditions are independent of each other, so admissible
/// relations are found separately per pair of tables and then combined.
/// Since a valid `ξ` is symmetric and contains the natural order, only
/// symmetric supersets of the order are tried.
pub fn valid_abstract_systems(m: usize) -> Vec<AbstractSystem> {
    assert!((1..=3).contains(&m), "exhaustive enumeration supports m ≤ 3");
    let mut out = Vec::new();
    let sgs = semigroups(m);
    let sls = semilattices(m);
    for mul in &sgs {
        let deltas: Vec<Relation> = all_relations(m)
            .filter(|d| d.pairs().all(|(x, y)| (0..m).all(|u| d.contains(mul[u * m + x], y))))
            .collect();
        for meet in &sls {
            let base = AbstractSystem::from_flat(m, mul.clone(), meet.clone(), Relation::full(m), Relation::full(m));
            if !base.is_left_distributive() {
                continue;
            }
            let order = base.natural_order();
            let free: Vec<(usize, usize)> = (0..m)
                .flat_map(|x| (x + 1..m).map(move |y| (x, y)))
                .filter(|&(x, y)| !order.contains(x, y) && !order.contains(y, x))
                .collect();
            let xis: Vec<Relation> = (0u32..1 << free.len())
                .map(|bits| {
                    let mut xi = order.clone();
                    for (x, y) in order.pairs() {
                        xi.insert(y, x);
                    }
                    for (k, &(x, y)) in free.iter().enumerate() {
                        if bits >> k & 1 == 1 {
                            xi.insert(x, y);
                            xi.insert(y, x);
                        }
                    }
                    xi
                })
                .filter(|xi| base.with_xi(xi.clone()).validate().passed())
                .collect();
            for xi in &xis {
                for delta in &deltas {
                    out.push(AbstractSystem::from_flat(m, mul.clone(), meet.clone(), xi.clone(), delta.clone()));
                }
            }
        }
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..m {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// Tables and relations relabeled by `p`, flattened into one comparable key.
fn relabeled_key(sys: &AbstractSystem, p: &[usize]) -> Vec<usize> {
    let m = sys.size();
    let mut inv = vec![0; m];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    let mut key = Vec::with_capacity(4 * m * m);
    for i in 0..m {
        for j in 0..m {
            let (a, b) = (inv[i], inv[j]);
            key.push(p[sys.mul(a, b)]);
            key.push(p[sys.meet(a, b)]);
            key.push(sys.xi(a, b) as usize);
            key.push(sys.delta(a, b) as usize);
        }
    }
    key
}

/// Keeps the first system of every isomorphism class, in input order.
pub fn up_to_isomorphism(systems: Vec<AbstractSystem>) -> Vec<AbstractSystem> {
    let mut seen = std::collections::HashSet::new();
    let mut perms: std::collections::HashMap<usize, Vec<Vec<usize>>> = Default::default();
    systems
        .into_iter()
        .filter(|sys| {
            let ps = perms.entry(sys.size()).or_insert_with(|| permutations(sys.size()));
            let key = ps.iter().map(|p| relabeled_key(sys, p)).min().expect("m ≥ 1");
            seen.insert(key)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // labeled semigroups of orders 1..3
        assert_eq!(semigroups(1).len(), 1);
        assert_eq!(semigroups(2).len(), 8);
        assert_eq!(semigroups(3).len(), 113);
        // 3! chains plus 3 choices of bottom under two atoms
        assert_eq!(semilattices(2).len(), 2);
        assert_eq!(semilattices(3).len(), 9);
        assert_eq!(all_abstract_systems(2).len(), 8 * 2 * 16 * 16);
    }

    #[test]
    fn valid_systems_validate() {
        for m in 1..=2 {
            let valid = valid_abstract_systems(m);
            assert!(!valid.is_empty());
            assert!(valid.iter().all(|s| s.validate().passed()));
            let expected = all_abstract_systems(m).into_iter().filter(|s| s.validate().passed()).count();
            assert_eq!(valid.len(), expected);
        }
        // the same count as filtering every relation pair by validation
        assert_eq!(valid_abstract_systems(3).len(), 47295);
    }

    #[test]
    fn isomorphism_classes() {
        assert_eq!(permutations(3).len(), 6);
        // with the left-zero product, the two semilattices on two points are isomorphic
        let sl: Vec<_> = semilattices(2)
            .into_iter()
            .map(|meet| AbstractSystem::from_flat(2, vec![0, 0, 1, 1], meet, Relation::full(2), Relation::full(2)))
            .collect();
        assert_eq!(up_to_isomorphism(sl).len(), 1);
        let all = all_abstract_systems(2);
        let reduced = up_to_isomorphism(all.clone());
        assert!(reduced.len() < all.len() && reduced.len() * 2 >= all.len());
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_trans_system(7, 3, 2, 256).unwrap();
        let b = random_trans_system(7, 3, 2, 256).unwrap();
        assert_eq!(a.seeds, b.seeds);
        assert_eq!(a.system.elements(), b.system.elements());
        assert!(a.system.len() <= 256);
    }
}
