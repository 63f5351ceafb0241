//! Finite algebraic systems `(G, ·, ⋏, ξ, δ)` and their hypothesis checks.
//!
//! Elements are dense indices `0..m`. The adjoined identity `e` of `G*` is
//! the index `m`; see [`StarView`].
//!
//! Notation used in reports and docs: `x ≤ y` is the semilattice order
//! (`x ⋏ y = x`), `x ↓ y` is membership in `ξ`, `x ⊢ y` membership in `δ`.

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::report::{Check, CheckBuilder, Report};
use crate::witness;

/// Check ids emitted by [`AbstractSystem::validate`].
pub mod ids {
    pub const MUL_ASSOCIATIVE: &str = "mul-associative";
    pub const MEET_SEMILATTICE: &str = "meet-semilattice";
    pub const ORDER_WITHIN_XI: &str = "order-within-xi";
    pub const XI_LEFT_REGULAR: &str = "xi-left-regular";
    pub const DELTA_LEFT_IDEAL: &str = "delta-left-ideal";
    /// `x(y ⋏ z) = xy ⋏ xz`
    pub const LEFT_DISTRIBUTIVE: &str = "left-distributive";
    /// `x ≤ y ∧ u ≤ v ∧ y ↓ v → u ↓ x`
    pub const XI_ORDER_COMPATIBLE: &str = "xi-order-compatible";
    /// `x ↓ y → (x ⋏ y)u = xu ⋏ yu`
    pub const XI_RIGHT_DISTRIBUTIVE: &str = "xi-right-distributive";

    pub const XI_REFLEXIVE: &str = "xi-reflexive";
    pub const XI_SYMMETRIC: &str = "xi-symmetric";
    pub const ORDER_LEFT_REGULAR: &str = "order-left-regular";
    pub const ORDER_RIGHT_REGULAR: &str = "order-right-regular";
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbstractSystem {
    size: usize,
    mul: Vec<usize>,
    meet: Vec<usize>,
    xi: Relation,
    delta: Relation,
    zeta: Relation,
}

impl AbstractSystem {
    /// Builds a system from row-major tables. Only range checks happen here;
    /// algebraic laws are the job of [`validate`](Self::validate).
    pub fn new(
        mul: Vec<Vec<usize>>,
        meet: Vec<Vec<usize>>,
        xi: Relation,
        delta: Relation,
    ) -> Result<Self> {
        let size = mul.len();
        if size == 0 {
            return Err(Error::MalformedSystem("empty carrier".into()));
        }
        let flatten = |name: &str, table: Vec<Vec<usize>>| -> Result<Vec<usize>> {
            if table.len() != size {
                return Err(Error::MalformedSystem(format!(
                    "{name} table has {} rows, expected {size}",
                    table.len()
                )));
            }
            let mut flat = Vec::with_capacity(size * size);
            for (i, row) in table.into_iter().enumerate() {
                if row.len() != size {
                    return Err(Error::MalformedSystem(format!(
                        "{name} row {i} has {} entries, expected {size}",
                        row.len()
                    )));
                }
                if let Some((j, v)) = row.iter().enumerate().find(|(_, &v)| v >= size) {
                    return Err(Error::MalformedSystem(format!(
                        "{name}[{i}][{j}] = {v} out of range"
                    )));
                }
                flat.extend(row);
            }
            Ok(flat)
        };
        let mul = flatten("mul", mul)?;
        let meet = flatten("meet", meet)?;
        for (name, rel) in [("xi", &xi), ("delta", &delta)] {
            if rel.size() != size {
                return Err(Error::MalformedSystem(format!(
                    "{name} relation has size {}, expected {size}",
                    rel.size()
                )));
            }
        }
        Ok(Self::from_flat(size, mul, meet, xi, delta))
    }

    pub(crate) fn from_flat(
        size: usize,
        mul: Vec<usize>,
        meet: Vec<usize>,
        xi: Relation,
        delta: Relation,
    ) -> Self {
        let zeta = Relation::from_fn(size, |x, y| meet[x * size + y] == x);
        Self {
            size,
            mul,
            meet,
            xi,
            delta,
            zeta,
        }
    }

    /// The one-element system with every relation holding.
    pub fn trivial() -> Self {
        Self::from_flat(1, vec![0], vec![0], Relation::full(1), Relation::full(1))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y]
    }

    /// `x ↓ y`
    #[inline]
    pub fn xi(&self, x: usize, y: usize) -> bool {
        self.xi.contains(x, y)
    }

    /// `x ⊢ y`
    #[inline]
    pub fn delta(&self, x: usize, y: usize) -> bool {
        self.delta.contains(x, y)
    }

    /// `x ≤ y`, i.e. `x ⋏ y = x`.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.zeta.contains(x, y)
    }

    pub fn xi_rel(&self) -> &Relation {
        &self.xi
    }

    pub fn delta_rel(&self) -> &Relation {
        &self.delta
    }

    /// The natural order `ζ` of the meet semilattice.
    pub fn natural_order(&self) -> &Relation {
        &self.zeta
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn meet_table(&self) -> Vec<Vec<usize>> {
        self.meet.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn with_xi(&self, xi: Relation) -> Self {
        Self::from_flat(self.size, self.mul.clone(), self.meet.clone(), xi, self.delta.clone())
    }

    pub fn with_delta(&self, delta: Relation) -> Self {
        Self::from_flat(self.size, self.mul.clone(), self.meet.clone(), self.xi.clone(), delta)
    }

    pub fn star(&self) -> StarView<'_> {
        StarView { sys: self }
    }

    /// Whether `·` is associative and `⋏` is a semilattice operation.
    pub fn is_semigroup_semilattice(&self) -> bool {
        self.check_associative().passed && self.check_semilattice().passed
    }

    /// Whether `x(y ⋏ z) = xy ⋏ xz` holds identically.
    pub fn is_left_distributive(&self) -> bool {
        self.check_left_distributive().passed
    }

    /// Runs every hypothesis check and reports all failures with witnesses.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("hypotheses");
        report.push(self.check_associative());
        report.push(self.check_semilattice());
        report.push(self.check_order_within_xi());
        report.push(self.check_xi_left_regular());
        report.push(self.check_delta_left_ideal());
        report.push(self.check_left_distributive());
        report.push(self.check_xi_order_compatible());
        report.push(self.check_xi_right_distributive());
        report.finalize()
    }

    fn elems(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    fn check_associative(&self) -> Check {
        let mut b = CheckBuilder::new(ids::MUL_ASSOCIATIVE);
        for x in self.elems() {
            for y in self.elems() {
                let xy = self.mul(x, y);
                for z in self.elems() {
                    b.expect(self.mul(xy, z) == self.mul(x, self.mul(y, z)), || {
                        witness!(x = x, y = y, z = z)
                    });
                }
            }
        }
        b.finish()
    }

    fn check_semilattice(&self) -> Check {
        let mut b = CheckBuilder::new(ids::MEET_SEMILATTICE);
        for x in self.elems() {
            b.expect(self.meet(x, x) == x, || witness!(law = "idempotent", x = x));
            for y in self.elems() {
                b.expect(self.meet(x, y) == self.meet(y, x), || {
                    witness!(law = "commutative", x = x, y = y)
                });
                let xy = self.meet(x, y);
                for z in self.elems() {
                    b.expect(self.meet(xy, z) == self.meet(x, self.meet(y, z)), || {
                        witness!(law = "associative", x = x, y = y, z = z)
                    });
                }
            }
        }
        b.finish()
    }

    fn check_order_within_xi(&self) -> Check {
        let mut b = CheckBuilder::new(ids::ORDER_WITHIN_XI);
        for (x, y) in self.zeta.pairs() {
            b.expect(self.xi(x, y), || witness!(x = x, y = y));
        }
        b.finish()
    }

    /// `u ↓ v → xu ↓ xv`
    fn check_xi_left_regular(&self) -> Check {
        let mut b = CheckBuilder::new(ids::XI_LEFT_REGULAR);
        for (u, v) in self.xi.pairs() {
            for x in self.elems() {
                b.expect(self.xi(self.mul(x, u), self.mul(x, v)), || {
                    witness!(u = u, v = v, x = x)
                });
            }
        }
        b.finish()
    }

    /// `x ⊢ y → ux ⊢ y`
    fn check_delta_left_ideal(&self) -> Check {
        let mut b = CheckBuilder::new(ids::DELTA_LEFT_IDEAL);
        for (x, y) in self.delta.pairs() {
            for u in self.elems() {
                b.expect(self.delta(self.mul(u, x), y), || witness!(x = x, y = y, u = u));
            }
        }
        b.finish()
    }

    fn check_left_distributive(&self) -> Check {
        let mut b = CheckBuilder::new(ids::LEFT_DISTRIBUTIVE);
        for x in self.elems() {
            for y in self.elems() {
                for z in self.elems() {
                    let lhs = self.mul(x, self.meet(y, z));
                    let rhs = self.meet(self.mul(x, y), self.mul(x, z));
                    b.expect(lhs == rhs, || witness!(x = x, y = y, z = z));
                }
            }
        }
        b.finish()
    }

    fn check_xi_order_compatible(&self) -> Check {
        let mut b = CheckBuilder::new(ids::XI_ORDER_COMPATIBLE);
        for (y, v) in self.xi.pairs() {
            // x ≤ y and u ≤ v
            for x in self.elems().filter(|&x| self.leq(x, y)) {
                for u in self.elems().filter(|&u| self.leq(u, v)) {
                    b.expect(self.xi(u, x), || witness!(x = x, y = y, u = u, v = v));
                }
            }
        }
        b.finish()
    }

    fn check_xi_right_distributive(&self) -> Check {
        let mut b = CheckBuilder::new(ids::XI_RIGHT_DISTRIBUTIVE);
        for (x, y) in self.xi.pairs() {
            let xy = self.meet(x, y);
            for u in self.elems() {
                let lhs = self.mul(xy, u);
                let rhs = self.meet(self.mul(x, u), self.mul(y, u));
                b.expect(lhs == rhs, || witness!(x = x, y = y, u = u));
            }
        }
        b.finish()
    }

    /// Consequences of the hypotheses: `ξ` reflexive and symmetric, `ζ`
    /// left and right regular. A failure on a system that passes
    /// [`validate`](Self::validate) indicates a bug.
    pub fn derived_props(&self) -> Report {
        let mut report = Report::new("derived properties");

        let mut b = CheckBuilder::new(ids::XI_REFLEXIVE);
        for x in self.elems() {
            b.expect(self.xi(x, x), || witness!(x = x));
        }
        report.push(b.finish());

        let mut b = CheckBuilder::new(ids::XI_SYMMETRIC);
        for (x, y) in self.xi.pairs() {
            b.expect(self.xi(y, x), || witness!(x = x, y = y));
        }
        report.push(b.finish());

        let mut left = CheckBuilder::new(ids::ORDER_LEFT_REGULAR);
        let mut right = CheckBuilder::new(ids::ORDER_RIGHT_REGULAR);
        for (x, y) in self.zeta.pairs() {
            for z in self.elems() {
                left.expect(self.leq(self.mul(z, x), self.mul(z, y)), || {
                    witness!(x = x, y = y, z = z)
                });
                right.expect(self.leq(self.mul(x, z), self.mul(y, z)), || {
                    witness!(x = x, y = y, z = z)
                });
            }
        }
        report.push(left.finish());
        report.push(right.finish());
        report.finalize()
    }
}

/// Read-only view of `G* = G ∪ {e}` with `e` as index `size()`.
///
/// Products with `e` act as the identity. Among pairs involving `e`, only
/// `e ≤ e`, `e ⊢ e` and `x ⊢ e` hold; `ξ` and `⋏` are never extended to `e`.
#[derive(Clone, Copy)]
pub struct StarView<'a> {
    sys: &'a AbstractSystem,
}

impl<'a> StarView<'a> {
    pub fn system(&self) -> &'a AbstractSystem {
        self.sys
    }

    #[inline]
    pub fn e(&self) -> usize {
        self.sys.size
    }

    /// `|G*|`
    #[inline]
    pub fn len(&self) -> usize {
        self.sys.size + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Elements of `G*` in enumeration order, `e` last.
    pub fn elems(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn is_identity(&self, x: usize) -> bool {
        x == self.sys.size
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let e = self.e();
        if x == e {
            y
        } else if y == e {
            x
        } else {
            self.sys.mul(x, y)
        }
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        let e = self.e();
        match (x == e, y == e) {
            (true, true) => true,
            (false, false) => self.sys.leq(x, y),
            _ => false,
        }
    }

    pub fn xi(&self, x: usize, y: usize) -> bool {
        x != self.e() && y != self.e() && self.sys.xi(x, y)
    }

    pub fn delta(&self, x: usize, y: usize) -> bool {
        let e = self.e();
        if y == e {
            true
        } else if x == e {
            false
        } else {
            self.sys.delta(x, y)
        }
    }

    /// Renders an element of `G*`, printing `e` for the identity.
    pub fn name(&self, x: usize) -> String {
        if x == self.e() {
            "e".to_string()
        } else {
            x.to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> AbstractSystem {
        // meet = min on 0 < 1, mul = min as well
        AbstractSystem::new(
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![0, 0], vec![0, 1]],
            Relation::full(2),
            Relation::full(2),
        )
        .unwrap()
    }

    #[test]
    fn trivial_system_passes_everything() {
        let s1 = AbstractSystem::trivial();
        assert!(s1.validate().passed());
        assert!(s1.derived_props().passed());
        let no_delta = s1.with_delta(Relation::empty(1));
        assert!(no_delta.validate().passed());
        assert_eq!(s1.natural_order(), &Relation::identity(1));
    }

    #[test]
    fn chain_natural_order() {
        let s = chain2();
        let zeta = s.natural_order();
        assert_eq!(zeta, &Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]));
        assert!(zeta.is_reflexive() && zeta.is_antisymmetric());
        assert!(s.validate().passed());
    }

    #[test]
    fn malformed_tables_rejected() {
        let err = AbstractSystem::new(
            vec![vec![0, 2], vec![0, 1]],
            vec![vec![0, 0], vec![0, 1]],
            Relation::full(2),
            Relation::full(2),
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedSystem(_)));
        assert!(err.to_string().contains("malformed system"));
        assert!(AbstractSystem::new(vec![vec![0]], vec![vec![0, 0]], Relation::full(1), Relation::full(1)).is_err());
    }

    #[test]
    fn validate_reports_every_failing_condition() {
        // non-associative product, xi missing the order pair (0,1)
        let s = AbstractSystem::new(
            vec![vec![1, 0], vec![0, 0]],
            vec![vec![0, 0], vec![0, 1]],
            Relation::identity(2),
            Relation::full(2),
        )
        .unwrap();
        let report = s.validate();
        assert!(!report.passed());
        let failed: Vec<_> = report.failures().map(|c| c.id.as_str()).collect();
        assert!(failed.contains(&ids::MUL_ASSOCIATIVE));
        assert!(failed.contains(&ids::ORDER_WITHIN_XI));
        for c in report.failures() {
            assert!(!c.witnesses.is_empty());
        }
    }

    #[test]
    fn star_view_conventions() {
        let s = chain2();
        let star = s.star();
        let e = star.e();
        assert_eq!(e, 2);
        for x in star.elems() {
            assert_eq!(star.mul(e, x), x);
            assert_eq!(star.mul(x, e), x);
        }
        assert!(star.leq(e, e));
        assert!(star.delta(e, e));
        for x in 0..2 {
            assert!(star.delta(x, e));
            assert!(!star.delta(e, x));
            assert!(!star.leq(e, x) && !star.leq(x, e));
            assert!(!star.xi(e, x) && !star.xi(x, e));
        }
        assert!(!star.xi(e, e));
        assert_eq!(star.name(e), "e");
    }
}
