use std::sync::OnceLock;

use rayon::prelude::*;

use super::closure_set;
use crate::abstract_system::AbstractSystem;
use crate::relation::{elem_set, ElemSet};

/// Lazily filled table of `f_ξ({x})` and `f_ξ({x, y})` for one system.
///
/// Slots are write-once, so concurrent readers either see a complete set or
/// compute it themselves; both produce the same value.
pub struct ClosureMemo<'a> {
    sys: &'a AbstractSystem,
    slots: Vec<OnceLock<ElemSet>>,
}

impl<'a> ClosureMemo<'a> {
    pub fn new(sys: &'a AbstractSystem) -> Self {
        let m = sys.size();
        Self {
            sys,
            slots: (0..m * m).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn system(&self) -> &'a AbstractSystem {
        self.sys
    }

    /// `f_ξ({x, y})`; `pair(x, x)` is the singleton closure.
    pub fn pair(&self, x: usize, y: usize) -> &ElemSet {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        let m = self.sys.size();
        self.slots[a * m + b].get_or_init(|| {
            closure_set(self.sys, &elem_set(m, [a, b])).expect("seed set is nonempty")
        })
    }

    pub fn single(&self, x: usize) -> &ElemSet {
        self.pair(x, x)
    }

    /// Fills every slot, optionally in parallel.
    pub fn warm(&self, parallel: bool) {
        let m = self.sys.size();
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
        if parallel {
            pairs.par_iter().for_each(|&(a, b)| {
                self.pair(a, b);
            });
        } else {
            for (a, b) in pairs {
                self.pair(a, b);
            }
        }
    }
}
