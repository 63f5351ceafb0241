//! Structural facts about the pair closures `f_ξ({x, y})` that the
//! representation construction relies on.

use super::{f_closure, ClosureMemo};
use crate::abstract_system::AbstractSystem;
use crate::relation::elem_set;
use crate::report::{Check, CheckBuilder};
use crate::witness;

pub mod ids {
    /// iterating the step operator from `{x, y}` stops within `|G|` rounds
    pub const CHAIN_BOUND: &str = "closure-chain-bound";
    /// `G ∖ f_ξ({x,y})` is a right ideal
    pub const COMPLEMENT_RIGHT_IDEAL: &str = "closure-complement-right-ideal";
    /// `g₁ ≤ g₂ ∧ g₁ ∈ f_ξ({x,y}) → g₂ ∈ f_ξ({x,y})`
    pub const UPWARD: &str = "closure-upward";
    /// `u ↓ v ∧ u, v ∈ f_ξ({x,y}) → u⋏v ∈ f_ξ({x,y})`
    pub const MEET_CLOSED: &str = "closure-meet-closed";
}

pub fn check_closure_structure(sys: &AbstractSystem, memo: &ClosureMemo<'_>) -> Vec<Check> {
    let m = sys.size();
    let mut chain = CheckBuilder::new(ids::CHAIN_BOUND);
    let mut ideal = CheckBuilder::new(ids::COMPLEMENT_RIGHT_IDEAL);
    let mut upward = CheckBuilder::new(ids::UPWARD);
    let mut meet = CheckBuilder::new(ids::MEET_CLOSED);
    for x in 0..m {
        for y in x..m {
            let seed = || format!("{{{x},{y}}}");
            let rounds = f_closure(sys, &elem_set(m, [x, y])).expect("nonempty seed").rounds;
            chain.expect(rounds <= m, || witness!(seed = seed(), rounds = rounds));

            let closed = memo.pair(x, y);
            for g in (0..m).filter(|&g| !closed.contains(g)) {
                for u in (0..m).filter(|&u| closed.contains(sys.mul(g, u))) {
                    ideal.violation(witness!(seed = seed(), g = g, u = u));
                }
            }
            for g1 in closed.ones() {
                for g2 in sys.natural_order().row(g1).ones() {
                    upward.expect(closed.contains(g2), || witness!(seed = seed(), g1 = g1, g2 = g2));
                }
                for v in sys.xi_rel().row(g1).ones().filter(|&v| closed.contains(v)) {
                    meet.expect(closed.contains(sys.meet(g1, v)), || {
                        witness!(seed = seed(), u = g1, v = v)
                    });
                }
            }
        }
    }
    vec![chain.finish(), ideal.finish(), upward.finish(), meet.finish()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_system() {
        let s1 = AbstractSystem::trivial();
        let memo = ClosureMemo::new(&s1);
        assert!(check_closure_structure(&s1, &memo).iter().all(|c| c.passed));
    }
}
