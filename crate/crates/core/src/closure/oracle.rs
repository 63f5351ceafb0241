//! Brute-force least closed superset, for cross-checking [`super::f_closure`].
//!
//! Shares nothing with the step operator: closedness is decided by plain
//! enumeration of all six variables of the defining implication.

use fixedbitset::FixedBitSet;

use crate::abstract_system::AbstractSystem;
use crate::error::{Error, Result};
use crate::relation::ElemSet;

pub const DEFAULT_ORACLE_BUDGET: usize = 12;
pub const ORACLE_BUDGET_ENV: &str = "TRANSEMI_ORACLE_BUDGET";

/// Largest `|G|` the oracle accepts; overridable through the environment.
pub fn oracle_budget() -> usize {
    std::env::var(ORACLE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BUDGET)
}

fn closed(sys: &AbstractSystem, set: &FixedBitSet) -> bool {
    let m = sys.size();
    let star = sys.star();
    for u in set.ones() {
        for v in 0..m {
            if !star.xi(u, v) {
                continue;
            }
            let uv = sys.meet(u, v);
            for x in star.elems() {
                if !set.contains(star.mul(v, x)) {
                    continue;
                }
                let w = star.mul(uv, x);
                for y in star.elems() {
                    if !star.delta(w, y) {
                        continue;
                    }
                    let s = star.mul(w, y);
                    for t in star.elems() {
                        for z in 0..m {
                            if !set.contains(z) && star.leq(s, star.mul(z, t)) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Intersection of every closed superset of `h`.
pub fn least_closed_oracle(sys: &AbstractSystem, h: &ElemSet, budget: usize) -> Result<ElemSet> {
    let m = sys.size();
    if m > budget || m >= usize::BITS as usize {
        return Err(Error::BudgetExceeded { size: m, budget });
    }
    if h.is_clear() {
        return Err(Error::EmptyClosure);
    }
    let free: Vec<usize> = (0..m).filter(|&x| !h.contains(x)).collect();
    let mut least = FixedBitSet::with_capacity(m);
    least.insert_range(..);
    for mask in 0u64..(1u64 << free.len()) {
        let mut candidate = h.clone();
        for (bit, &x) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                candidate.insert(x);
            }
        }
        if closed(sys, &candidate) {
            least.intersect_with(&candidate);
        }
    }
    Ok(least)
}
