//! Shared test corpus, built once per test binary.
#![allow(dead_code)]

use std::sync::OnceLock;

use transemi::generators::{
    all_abstract_systems, trans_corpus, up_to_isomorphism, valid_abstract_systems, Generated,
};
use transemi::AbstractSystem;

pub const TRANS_COUNT: usize = 100;

/// 100 seeded transformation systems on at most 4 points, at most 64 maps each.
pub fn trans() -> &'static [Generated] {
    static CELL: OnceLock<Vec<Generated>> = OnceLock::new();
    CELL.get_or_init(|| trans_corpus(TRANS_COUNT))
}

pub fn trans_abstract() -> &'static [AbstractSystem] {
    static CELL: OnceLock<Vec<AbstractSystem>> = OnceLock::new();
    CELL.get_or_init(|| trans().iter().map(|g| g.system.to_abstract()).collect())
}

/// Hypothesis-satisfying systems on 1 to 3 elements, up to isomorphism.
pub fn enumerated_valid() -> &'static [AbstractSystem] {
    static CELL: OnceLock<Vec<AbstractSystem>> = OnceLock::new();
    CELL.get_or_init(|| (1..=3).flat_map(|m| up_to_isomorphism(valid_abstract_systems(m))).collect())
}

/// Every system on 1 or 2 elements, valid or not, up to isomorphism.
pub fn enumerated_all() -> &'static [AbstractSystem] {
    static CELL: OnceLock<Vec<AbstractSystem>> = OnceLock::new();
    CELL.get_or_init(|| (1..=2).flat_map(|m| up_to_isomorphism(all_abstract_systems(m))).collect())
}

/// Nonempty subsets of `0..m` as bit masks.
pub fn nonempty_masks(m: usize) -> impl Iterator<Item = u64> {
    1u64..1 << m
}

pub fn set_of(m: usize, mask: u64) -> transemi::ElemSet {
    transemi::relation::elem_set(m, (0..m).filter(|i| mask >> i & 1 == 1))
}
