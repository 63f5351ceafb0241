//! The closure operator `f_ξ` on subsets of `G`.
//!
//! A subset `H ⊆ G` is closed when, for all `z, u, v ∈ G` and
//! `x, y, t ∈ G*`,
//!
//! ```text
//! u ↓ v  ∧  (u⋏v)x ⊢ y  ∧  (u⋏v)xy ≤ zt  ∧  u ∈ H  ∧  vx ∈ H   →   z ∈ H
//! ```
//!
//! [`f_step`] collects every `z` admitted by the premise, and [`f_closure`]
//! iterates it to the least closed superset.

mod memo;
mod oracle;
mod schemes;
mod structure;
mod xn;

pub use memo::ClosureMemo;
pub use oracle::{least_closed_oracle, oracle_budget, DEFAULT_ORACLE_BUDGET, ORACLE_BUDGET_ENV};
pub use schemes::{check_axiom_schemes, ids};
pub use structure::{check_closure_structure, ids as structure_ids};
pub use xn::{xn_direct, xn_member, xn_via_steps, WitnessTree, XnResult, XN_DIRECT_MAX_DEPTH, XN_DIRECT_MAX_SIZE};

use fixedbitset::FixedBitSet;

use crate::abstract_system::{AbstractSystem, StarView};
use crate::error::{Error, Result};
use crate::relation::ElemSet;
use crate::report::Witness;

/// An assignment `(u, v, x, y, t)` for the closure premise. `u, v ∈ G`;
/// `x, y, t ∈ G*` where the index `|G|` stands for `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    pub u: usize,
    pub v: usize,
    pub x: usize,
    pub y: usize,
    pub t: usize,
}

impl Tuple {
    /// The trivial tuple `(c, c, e, e, e)` that admits `c` from `{c}`.
    pub fn trivial(star: &StarView<'_>, c: usize) -> Self {
        let e = star.e();
        Self { u: c, v: c, x: e, y: e, t: e }
    }

    /// `(u⋏v)x`
    pub fn base(&self, star: &StarView<'_>) -> usize {
        star.mul(star.system().meet(self.u, self.v), self.x)
    }

    /// `vx`, the second element that must lie in the source set.
    pub fn vx(&self, star: &StarView<'_>) -> usize {
        star.mul(self.v, self.x)
    }

    /// `u ↓ v ∧ (u⋏v)x ⊢ y ∧ (u⋏v)xy ≤ zt`
    pub fn admits(&self, star: &StarView<'_>, z: usize) -> bool {
        if !star.xi(self.u, self.v) {
            return false;
        }
        let w = self.base(star);
        star.delta(w, self.y) && star.leq(star.mul(w, self.y), star.mul(z, self.t))
    }

    pub fn render(&self, star: &StarView<'_>) -> String {
        format!(
            "(u={}, v={}, x={}, y={}, t={})",
            star.name(self.u),
            star.name(self.v),
            star.name(self.x),
            star.name(self.y),
            star.name(self.t)
        )
    }

    pub fn to_witness(&self, star: &StarView<'_>) -> Witness {
        Witness::new()
            .with("u", star.name(self.u))
            .with("v", star.name(self.v))
            .with("x", star.name(self.x))
            .with("y", star.name(self.y))
            .with("t", star.name(self.t))
    }
}

fn empty_set(sys: &AbstractSystem) -> ElemSet {
    FixedBitSet::with_capacity(sys.size())
}

/// One application of the step operator: every `z ∈ G` admitted by some
/// tuple whose `u` and `vx` lie in `h`.
pub fn f_step(sys: &AbstractSystem, h: &ElemSet) -> Result<ElemSet> {
    if h.is_clear() {
        return Err(Error::EmptyClosure);
    }
    Ok(step(sys, h))
}

/// Layered evaluation of the step operator:
/// bases `w = (u⋏v)x`, then `s = wy` with `w ⊢ y`, then everything above
/// some `s`, then every `z` with some `zt` in that up-set.
pub(crate) fn step(sys: &AbstractSystem, h: &ElemSet) -> ElemSet {
    let m = sys.size();
    let star = sys.star();

    let mut bases = empty_set(sys);
    let mut seen = FixedBitSet::with_capacity(m * m);
    for u in h.ones() {
        for v in sys.xi_rel().row(u).ones() {
            let uv = sys.meet(u, v);
            if seen.put(uv * m + v) {
                continue;
            }
            for x in star.elems() {
                if h.contains(star.mul(v, x)) {
                    bases.insert(star.mul(uv, x));
                }
            }
        }
    }

    // y = e is always admissible since w ⊢ e.
    let mut lower = bases.clone();
    for w in bases.ones() {
        for y in sys.delta_rel().row(w).ones() {
            lower.insert(sys.mul(w, y));
        }
    }

    let mut upper = empty_set(sys);
    for s in lower.ones() {
        upper.union_with(sys.natural_order().row(s));
    }

    let mut out = upper.clone();
    for z in 0..m {
        if !out.contains(z) && (0..m).any(|t| upper.contains(sys.mul(z, t))) {
            out.insert(z);
        }
    }
    out
}

/// The first tuple, in lexicographic `(u, v, x, y, t)` order with `e` last,
/// that admits `z` from `within`.
pub fn find_witness(sys: &AbstractSystem, within: &ElemSet, z: usize) -> Option<Tuple> {
    let m = sys.size();
    let star = sys.star();
    let zeta_t = sys.natural_order().transpose();

    // first t with s ≤ zt, for every s
    let mut first_t: Vec<Option<usize>> = vec![None; m];
    for t in star.elems() {
        let r = star.mul(z, t);
        for s in zeta_t.row(r).ones() {
            first_t[s].get_or_insert(t);
        }
    }

    // outcome per base w, since (y, t) depend on w alone
    let mut per_base: Vec<Option<Option<(usize, usize)>>> = vec![None; m];
    let mut best_for = |w: usize| -> Option<(usize, usize)> {
        *per_base[w].get_or_insert_with(|| {
            star.elems()
                .filter(|&y| star.delta(w, y))
                .find_map(|y| first_t[star.mul(w, y)].map(|t| (y, t)))
        })
    };

    for u in within.ones() {
        for v in sys.xi_rel().row(u).ones() {
            for x in star.elems() {
                if !within.contains(star.mul(v, x)) {
                    continue;
                }
                let w = star.mul(sys.meet(u, v), x);
                if let Some((y, t)) = best_for(w) {
                    return Some(Tuple { u, v, x, y, t });
                }
            }
        }
    }
    None
}

/// Result of iterating the step operator from a seed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub closed_set: ElemSet,
    /// Number of step applications, including the final one that changed nothing.
    pub rounds: usize,
    /// For each element added after the seed: `(round, admitting tuple)`.
    pub witnesses: Vec<Option<(usize, Tuple)>>,
}

impl ClosureResult {
    pub fn contains(&self, z: usize) -> bool {
        self.closed_set.contains(z)
    }

    pub fn members(&self) -> Vec<usize> {
        self.closed_set.ones().collect()
    }
}

/// `f_ξ(h)` together with the round and admitting tuple of every added element.
pub fn f_closure(sys: &AbstractSystem, h: &ElemSet) -> Result<ClosureResult> {
    if h.is_clear() {
        return Err(Error::EmptyClosure);
    }
    let mut witnesses = vec![None; sys.size()];
    let mut current = h.clone();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut next = step(sys, &current);
        next.union_with(&current);
        if next == current {
            break;
        }
        for z in next.difference(&current) {
            let tuple = find_witness(sys, &current, z)
                .expect("every stepped element has an admitting tuple");
            witnesses[z] = Some((rounds, tuple));
        }
        current = next;
    }
    Ok(ClosureResult {
        closed_set: current,
        rounds,
        witnesses,
    })
}

/// `f_ξ(h)` without witness bookkeeping.
pub fn closure_set(sys: &AbstractSystem, h: &ElemSet) -> Result<ElemSet> {
    if h.is_clear() {
        return Err(Error::EmptyClosure);
    }
    let mut current = h.clone();
    loop {
        let mut next = step(sys, &current);
        next.union_with(&current);
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// The chain `F⁰(h), F¹(h), …, Fⁿ(h)` of pure step applications.
pub fn step_chain(sys: &AbstractSystem, h: &ElemSet, n: usize) -> Result<Vec<ElemSet>> {
    if h.is_clear() {
        return Err(Error::EmptyClosure);
    }
    let mut chain = Vec::with_capacity(n + 1);
    chain.push(h.clone());
    for _ in 0..n {
        let next = step(sys, chain.last().expect("nonempty chain"));
        chain.push(next);
    }
    Ok(chain)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedMethod {
    /// The defining implication, checked tuple by tuple.
    Implication,
    /// The equivalent four closure conditions on products, order and `ξ`.
    FourConditions,
}

pub fn is_closed(sys: &AbstractSystem, h: &ElemSet, method: ClosedMethod) -> bool {
    match method {
        ClosedMethod::Implication => closed_by_implication(sys, h),
        ClosedMethod::FourConditions => closed_by_conditions(sys, h),
    }
}

fn closed_by_implication(sys: &AbstractSystem, h: &ElemSet) -> bool {
    let m = sys.size();
    let star = sys.star();
    let mut bases = empty_set(sys);
    for u in h.ones() {
        for v in 0..m {
            if !star.xi(u, v) {
                continue;
            }
            for x in star.elems() {
                if h.contains(star.mul(v, x)) {
                    bases.insert(star.mul(sys.meet(u, v), x));
                }
            }
        }
    }
    for w in bases.ones() {
        for y in star.elems().filter(|&y| star.delta(w, y)) {
            let s = star.mul(w, y);
            for z in (0..m).filter(|&z| !h.contains(z)) {
                if star.elems().any(|t| star.leq(s, star.mul(z, t))) {
                    return false;
                }
            }
        }
    }
    true
}

fn closed_by_conditions(sys: &AbstractSystem, h: &ElemSet) -> bool {
    let m = sys.size();
    let star = sys.star();
    // xy ∈ H → x ∈ H
    let products = (0..m).all(|x| h.contains(x) || (0..m).all(|y| !h.contains(sys.mul(x, y))));
    // g1 ⊢ g2 ∧ g1 ∈ H → g1g2 ∈ H
    let adjacent = h
        .ones()
        .all(|g1| sys.delta_rel().row(g1).ones().all(|g2| h.contains(sys.mul(g1, g2))));
    // g1 ≤ g2 ∧ g1 ∈ H → g2 ∈ H
    let upward = h
        .ones()
        .all(|g1| sys.natural_order().row(g1).is_subset(h));
    // g1 ↓ g2 ∧ g1, g2x ∈ H → (g1⋏g2)x ∈ H, x possibly e
    let meets = h.ones().all(|g1| {
        sys.xi_rel().row(g1).ones().all(|g2| {
            let g = sys.meet(g1, g2);
            star.elems()
                .all(|x| !h.contains(star.mul(g2, x)) || h.contains(star.mul(g, x)))
        })
    });
    products && adjacent && upward && meets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{elem_set, Relation};

    fn s1() -> AbstractSystem {
        AbstractSystem::trivial()
    }

    /// Brute force over every 5-tuple, straight from the definition.
    fn brute_step(sys: &AbstractSystem, h: &ElemSet) -> ElemSet {
        let star = sys.star();
        let m = sys.size();
        let mut out = empty_set(sys);
        for z in 0..m {
            'search: for u in 0..m {
                for v in 0..m {
                    for x in star.elems() {
                        for y in star.elems() {
                            for t in star.elems() {
                                let tuple = Tuple { u, v, x, y, t };
                                if h.contains(u) && h.contains(tuple.vx(&star)) && tuple.admits(&star, z) {
                                    out.insert(z);
                                    break 'search;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Δ_{0} ⊂ id on two points, abstract orientation.
    fn delta0_id() -> AbstractSystem {
        AbstractSystem::new(
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![0, 0], vec![0, 1]],
            Relation::full(2),
            Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn trivial_step_and_closure() {
        let sys = s1();
        let h = elem_set(1, [0]);
        assert_eq!(brute_step(&sys, &h), h);
        assert_eq!(f_step(&sys, &h).unwrap(), h);
        let res = f_closure(&sys, &h).unwrap();
        assert_eq!(res.closed_set, h);
        assert_eq!(res.rounds, 1);
        assert!(is_closed(&sys, &h, ClosedMethod::Implication));
        assert!(is_closed(&sys, &h, ClosedMethod::FourConditions));
    }

    #[test]
    fn empty_seed_rejected() {
        let sys = s1();
        let empty = elem_set(1, []);
        assert_eq!(f_step(&sys, &empty).unwrap_err(), Error::EmptyClosure);
        assert_eq!(f_closure(&sys, &empty).unwrap_err(), Error::EmptyClosure);
        assert!(Error::EmptyClosure.to_string().contains("empty set"));
    }

    #[test]
    fn layered_step_matches_brute_force() {
        let sys = delta0_id();
        for mask in 1u32..4 {
            let h = elem_set(2, (0..2).filter(|i| mask >> i & 1 == 1));
            assert_eq!(step(&sys, &h), brute_step(&sys, &h), "H = {mask:b}");
        }
    }

    #[test]
    fn delta0_id_closures() {
        let sys = delta0_id();
        // {id} is closed; Δ_{0} pulls in id by upward closure.
        let id_only = closure_set(&sys, &elem_set(2, [1])).unwrap();
        assert_eq!(id_only.ones().collect::<Vec<_>>(), vec![1]);
        let res = f_closure(&sys, &elem_set(2, [0])).unwrap();
        assert_eq!(res.members(), vec![0, 1]);
        let (round, tuple) = res.witnesses[1].unwrap();
        assert_eq!(round, 1);
        assert!(tuple.admits(&sys.star(), 1));
        assert!(res.witnesses[0].is_none());
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let sys = delta0_id();
        let star = sys.star();
        let h = elem_set(2, [0]);
        let found = find_witness(&sys, &h, 1).unwrap();
        let mut all = Vec::new();
        for u in 0..2 {
            for v in 0..2 {
                for x in star.elems() {
                    for y in star.elems() {
                        for t in star.elems() {
                            let tup = Tuple { u, v, x, y, t };
                            if h.contains(u) && h.contains(tup.vx(&star)) && tup.admits(&star, 1) {
                                all.push(tup);
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(Some(found), all.into_iter().min());
    }
}
