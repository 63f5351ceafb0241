//! Membership in `Fⁿ(H)` through explicit witness trees.
//!
//! A depth-`n` tree has nodes `1..2ⁿ` in heap layout (children of `i` are
//! `2i` and `2i+1`). Node 1 must admit `z`; node `2i` must admit `uᵢ` and
//! node `2i+1` must admit `vᵢxᵢ`; every leaf (depth `n`) needs its own `u`
//! and `vx` in `H`. Such a tree exists exactly when `z ∈ Fⁿ(H)`.

use super::{find_witness, step_chain, Tuple};
use crate::abstract_system::{AbstractSystem, StarView};
use crate::error::{Error, Result};
use crate::relation::ElemSet;

/// Deepest tree searched directly.
pub const XN_DIRECT_MAX_DEPTH: usize = 2;
/// Largest `|G|` searched directly.
pub const XN_DIRECT_MAX_SIZE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTree {
    pub depth: usize,
    /// Heap-indexed; slot 0 is unused.
    pub nodes: Vec<Option<Tuple>>,
}

impl WitnessTree {
    fn new(depth: usize) -> Self {
        Self {
            depth,
            nodes: vec![None; 1 << depth],
        }
    }

    fn node_depth(i: usize) -> usize {
        (usize::BITS - i.leading_zeros()) as usize
    }

    /// Re-checks every guard and leaf condition of the tree.
    pub fn verify(&self, sys: &AbstractSystem, z: usize, h: &ElemSet) -> bool {
        let star = sys.star();
        self.verify_node(&star, 1, z, h)
    }

    fn verify_node(&self, star: &StarView<'_>, i: usize, target: usize, h: &ElemSet) -> bool {
        let Some(tuple) = self.nodes.get(i).copied().flatten() else {
            return false;
        };
        if !tuple.admits(star, target) {
            return false;
        }
        if Self::node_depth(i) == self.depth {
            h.contains(tuple.u) && h.contains(tuple.vx(star))
        } else {
            self.verify_node(star, 2 * i, tuple.u, h)
                && self.verify_node(star, 2 * i + 1, tuple.vx(star), h)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XnResult {
    pub member: bool,
    pub tree: Option<WitnessTree>,
    /// Whether the answer came from the direct tree search.
    pub direct: bool,
}

/// Decides `z ∈ Fⁿ(h)`, by direct tree search for small `n` and `|G|`,
/// otherwise through `n` step applications with the tree rebuilt afterwards.
pub fn xn_member(sys: &AbstractSystem, z: usize, h: &ElemSet, n: usize) -> Result<XnResult> {
    if n == 0 {
        return Err(Error::Instance("tree depth must be positive".into()));
    }
    if h.is_clear() {
        return Err(Error::EmptyClosure);
    }
    if n <= XN_DIRECT_MAX_DEPTH && sys.size() <= XN_DIRECT_MAX_SIZE {
        Ok(xn_direct(sys, z, h, n))
    } else {
        xn_via_steps(sys, z, h, n)
    }
}

/// Exhaustive search over the tuple variables of every tree node.
pub fn xn_direct(sys: &AbstractSystem, z: usize, h: &ElemSet, n: usize) -> XnResult {
    let star = sys.star();
    let mut tree = WitnessTree::new(n);
    let mut failed = vec![false; (n + 1) * sys.size()];
    let member = solve(&star, h, n, 1, z, &mut tree, &mut failed);
    XnResult {
        member,
        tree: member.then_some(tree),
        direct: true,
    }
}

fn solve(
    star: &StarView<'_>,
    h: &ElemSet,
    depth: usize,
    i: usize,
    target: usize,
    tree: &mut WitnessTree,
    failed: &mut [bool],
) -> bool {
    let m = star.system().size();
    let level = WitnessTree::node_depth(i);
    // a subtree's outcome depends only on its level and target
    if failed[level * m + target] {
        return false;
    }
    let leaf = level == depth;
    for u in 0..m {
        for v in 0..m {
            for x in star.elems() {
                for y in star.elems() {
                    for t in star.elems() {
                        let tuple = Tuple { u, v, x, y, t };
                        if !tuple.admits(star, target) {
                            continue;
                        }
                        let vx = tuple.vx(star);
                        let ok = if leaf {
                            h.contains(u) && h.contains(vx)
                        } else {
                            solve(star, h, depth, 2 * i, u, tree, failed)
                                && solve(star, h, depth, 2 * i + 1, vx, tree, failed)
                        };
                        if ok {
                            tree.nodes[i] = Some(tuple);
                            return true;
                        }
                    }
                }
            }
        }
    }
    failed[level * m + target] = true;
    false
}

pub fn xn_via_steps(sys: &AbstractSystem, z: usize, h: &ElemSet, n: usize) -> Result<XnResult> {
    let chain = step_chain(sys, h, n)?;
    let member = chain[n].contains(z);
    let tree = if member {
        let star = sys.star();
        let mut tree = WitnessTree::new(n);
        rebuild(sys, &star, &chain, n, 1, z, &mut tree);
        Some(tree)
    } else {
        None
    };
    Ok(XnResult {
        member,
        tree,
        direct: false,
    })
}

/// Node `i` at depth `d` has its target in `F^(n-d+1)(H)`, so its tuple draws
/// from `F^(n-d)(H)`.
fn rebuild(
    sys: &AbstractSystem,
    star: &StarView<'_>,
    chain: &[ElemSet],
    n: usize,
    i: usize,
    target: usize,
    tree: &mut WitnessTree,
) {
    let d = WitnessTree::node_depth(i);
    let tuple = find_witness(sys, &chain[n - d], target)
        .expect("target lies in the next chain member");
    tree.nodes[i] = Some(tuple);
    if d < n {
        rebuild(sys, star, chain, n, 2 * i, tuple.u, tree);
        rebuild(sys, star, chain, n, 2 * i + 1, tuple.vx(star), tree);
    }
}
