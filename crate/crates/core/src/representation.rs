//! Determining pairs, simplest representations and their sums.
//!
//! A determining pair `(ε, W)` is a right regular equivalence `ε` on `G*`
//! together with either nothing or one `ε`-class `W ⊆ G` that is a right
//! ideal. Its simplest representation acts on the classes other than `W`:
//! class `a` goes to class `b` under `g` when `H_a · g ⊆ H_b`.
//!
//! Representations are oriented like the rest of the crate:
//! `P(x · y) = P(y) ∘ P(x)`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abstract_system::AbstractSystem;
use crate::closure::{check_axiom_schemes, ClosureMemo};
use crate::error::{Error, Result};
use crate::partial_map::PartialMap;
use crate::relation::{elem_set, ElemSet, Relation};
use crate::report::{Check, CheckBuilder, Report, Witness};
use crate::witness;

pub mod ids {
    pub const DETERMINING_PAIR: &str = "determining-pair";
    pub const SIMPLEST_REP_RELATIONS: &str = "simplest-rep-relations";
    pub const REP_CONSTRUCTION: &str = "rep-construction";
    pub const REP_INJECTIVE: &str = "rep-injective";
    pub const REP_PRODUCT: &str = "rep-product-homomorphism";
    pub const REP_MEET: &str = "rep-meet-homomorphism";
    pub const REP_XI: &str = "rep-xi-equal";
    pub const REP_DELTA: &str = "rep-delta-equal";
    pub const REP_ZETA: &str = "rep-zeta-equal";
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeterminingPair {
    /// Class id of every element of `G*` (the identity is last). Ids are the
    /// least member of each class.
    class_of: Vec<usize>,
    w_class: Option<usize>,
}

impl DeterminingPair {
    /// Canonicalizes arbitrary class labels to least-member ids. `w_label`
    /// uses the same labeling as `labels`.
    pub fn new(labels: &[usize], w_label: Option<usize>) -> Self {
        let mut first_of = std::collections::HashMap::new();
        let class_of: Vec<usize> = labels
            .iter()
            .enumerate()
            .map(|(x, &l)| *first_of.entry(l).or_insert(x))
            .collect();
        let w_class = w_label.and_then(|l| first_of.get(&l).copied());
        Self { class_of, w_class }
    }

    /// `|G*|`
    pub fn star_size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn w_class(&self) -> Option<usize> {
        self.w_class
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn in_w(&self, x: usize) -> bool {
        self.w_class == Some(self.class_of[x])
    }

    /// Class ids in increasing order.
    pub fn class_ids(&self) -> Vec<usize> {
        self.class_of.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] == class).collect()
    }
}

/// Right regularity of `ε` on `G*`, and `W ⊆ G` being a class and a right ideal.
pub fn validate_determining_pair(sys: &AbstractSystem, dp: &DeterminingPair) -> Check {
    let star = sys.star();
    let mut b = CheckBuilder::new(ids::DETERMINING_PAIR);
    if dp.star_size() != star.len() {
        b.violation(witness!(
            problem = "size",
            expected = star.len(),
            got = dp.star_size()
        ));
        return b.finish();
    }
    // comparing each element with its class representative suffices
    for y in star.elems() {
        let x = dp.class_of(y);
        if x == y {
            continue;
        }
        for z in star.elems() {
            b.expect(dp.same_class(star.mul(x, z), star.mul(y, z)), || {
                witness!(problem = "right-regular", x = star.name(x), y = star.name(y), z = star.name(z))
            });
        }
    }
    if let Some(w) = dp.w_class() {
        b.expect(!dp.in_w(star.e()), || witness!(problem = "identity-in-w", w = w));
        for x in (0..sys.size()).filter(|&x| dp.in_w(x)) {
            for z in 0..sys.size() {
                b.expect(dp.in_w(sys.mul(x, z)), || {
                    witness!(problem = "w-right-ideal", x = x, z = z)
                });
            }
        }
    }
    b.finish()
}

/// The pair `(ε ∪ {(e,e)}, G ∖ F)` built from `F = f_ξ({g1, g2})`, where
/// `x ε y` iff `x⋏y ∈ F` or neither `x` nor `y` is in `F`.
pub fn eps_pair(sys: &AbstractSystem, memo: &ClosureMemo<'_>, g1: usize, g2: usize) -> Result<DeterminingPair> {
    eps_pair_from_closure(sys, memo.pair(g1, g2))
        .map_err(|e| match e {
            Error::HypothesesViolated(msg) => {
                Error::HypothesesViolated(format!("pair ({g1},{g2}): {msg}"))
            }
            other => other,
        })
}

pub fn eps_pair_from_closure(sys: &AbstractSystem, closed: &ElemSet) -> Result<DeterminingPair> {
    let m = sys.size();
    let related = |x: usize, y: usize| {
        closed.contains(sys.meet(x, y)) || (!closed.contains(x) && !closed.contains(y))
    };
    let mut labels = vec![usize::MAX; m + 1];
    for x in 0..m {
        if labels[x] == usize::MAX {
            labels[x] = x;
            for y in x + 1..m {
                if labels[y] == usize::MAX && related(x, y) {
                    labels[y] = x;
                }
            }
        }
    }
    labels[m] = m;
    for x in 0..m {
        for y in 0..m {
            if related(x, y) != (labels[x] == labels[y]) {
                return Err(Error::HypothesesViolated(format!(
                    "relation is not an equivalence at ({x},{y})"
                )));
            }
        }
    }
    let outside: Vec<usize> = (0..m).filter(|&x| !closed.contains(x)).collect();
    let w_label = outside.first().map(|&x| labels[x]);
    if let Some(w) = w_label {
        let class: Vec<usize> = (0..m).filter(|&x| labels[x] == w).collect();
        if class != outside {
            return Err(Error::HypothesesViolated(
                "complement of the closure is not a single class".into(),
            ));
        }
    }
    let dp = DeterminingPair::new(&labels, w_label);
    let check = validate_determining_pair(sys, &dp);
    if !check.passed {
        return Err(Error::HypothesesViolated(format!(
            "not a determining pair: {}",
            check.witnesses[0]
        )));
    }
    Ok(dp)
}

/// Every determining pair of `(G, ·)`: each right regular partition of
/// `G*`, paired with no `W` and with each class that is a right ideal
/// inside `G`. Partitions come in restricted-growth order.
pub fn all_determining_pairs(sys: &AbstractSystem) -> Vec<DeterminingPair> {
    let n = sys.size() + 1;
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        let candidate = DeterminingPair::new(&labels, None);
        if validate_determining_pair(sys, &candidate).passed {
            let classes = candidate.class_ids();
            out.push(candidate.clone());
            for w in classes {
                let with_w = DeterminingPair { w_class: Some(w), ..candidate.clone() };
                if validate_determining_pair(sys, &with_w).passed {
                    out.push(with_w);
                }
            }
        }
        // next restricted growth string: labels[i] ≤ 1 + max(labels[..i])
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let bound = labels[..i].iter().max().copied().unwrap_or(0) + 1;
            if labels[i] < bound {
                labels[i] += 1;
                for l in &mut labels[i + 1..] {
                    *l = 0;
                }
                break;
            }
        }
    }
}

/// A carrier point: one class of a determining pair, optionally tagged with
/// the pair `(g1, g2)` whose summand it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointLabel {
    pub pair: Option<(usize, usize)>,
    pub class: usize,
    /// Members of the class; the identity is printed as `e`.
    pub members: Vec<String>,
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((g1, g2)) = self.pair {
            write!(f, "pair=({g1},{g2}), ")?;
        }
        write!(f, "class={{{}}}", self.members.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub carrier: Vec<PointLabel>,
    /// `maps[g]` is the transformation assigned to `g ∈ G`.
    pub maps: Vec<PartialMap>,
}

impl Representation {
    pub fn carrier_size(&self) -> usize {
        self.carrier.len()
    }

    pub fn map(&self, g: usize) -> &PartialMap {
        &self.maps[g]
    }
}

/// Action of `G` on the classes of `dp` other than `W`.
pub fn simplest_rep(sys: &AbstractSystem, dp: &DeterminingPair) -> Result<Representation> {
    let star = sys.star();
    let classes: Vec<usize> = dp
        .class_ids()
        .into_iter()
        .filter(|&c| Some(c) != dp.w_class())
        .collect();
    let point_of = |class: usize| classes.binary_search(&class).ok();
    let members: Vec<Vec<usize>> = classes.iter().map(|&c| dp.members(c)).collect();

    let mut maps = Vec::with_capacity(sys.size());
    for g in 0..sys.size() {
        let mut entries = vec![None; classes.len()];
        for (a, class_members) in members.iter().enumerate() {
            let targets: BTreeSet<usize> = class_members
                .iter()
                .map(|&h| dp.class_of(star.mul(h, g)))
                .collect();
            if targets.len() != 1 {
                return Err(Error::Inconsistent(format!(
                    "class {} times {g} meets {} classes",
                    classes[a],
                    targets.len()
                )));
            }
            let target = *targets.first().expect("one target");
            entries[a] = point_of(target);
        }
        maps.push(PartialMap::from_entries(entries)?);
    }

    let carrier = classes
        .iter()
        .zip(&members)
        .map(|(&class, ms)| PointLabel {
            pair: None,
            class,
            members: ms.iter().map(|&x| star.name(x)).collect(),
        })
        .collect();
    Ok(Representation { carrier, maps })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepRelations {
    pub zeta: Relation,
    pub xi: Relation,
    pub delta: Relation,
}

/// Inclusion, semicompatibility and semiadjacency of the represented maps.
pub fn rep_relations(rep: &Representation) -> RepRelations {
    let m = rep.maps.len();
    let maps = &rep.maps;
    RepRelations {
        zeta: Relation::from_fn(m, |i, j| maps[i].is_subset(&maps[j])),
        xi: Relation::from_fn(m, |i, j| maps[i].is_semicompatible(&maps[j])),
        delta: Relation::from_fn(m, |i, j| maps[i].is_semiadjacent(&maps[j])),
    }
}

/// Compares the relations of the simplest representation with their
/// first-order descriptions in terms of `ε` and `W`, quantified over `x ∈ G*`.
pub fn check_prop1(sys: &AbstractSystem, dp: &DeterminingPair) -> Result<Check> {
    let star = sys.star();
    let rel = rep_relations(&simplest_rep(sys, dp)?);
    let m = sys.size();
    // per g: the class of xg for every x ∈ G*, or None when xg ∈ W
    let column = |g: usize| -> Vec<Option<usize>> {
        star.elems()
            .map(|x| {
                let p = star.mul(x, g);
                (!dp.in_w(p)).then(|| dp.class_of(p))
            })
            .collect()
    };
    let columns: Vec<_> = (0..m).map(column).collect();
    // reached[g] = {xg ∉ W}, keeps[g] = {p ∈ G : pg ∉ W}
    let reached: Vec<ElemSet> = (0..m)
        .map(|g| {
            elem_set(m, star.elems().map(|x| star.mul(x, g)).filter(|&p| !dp.in_w(p)))
        })
        .collect();
    let keeps: Vec<ElemSet> = (0..m)
        .map(|g| elem_set(m, (0..m).filter(|&p| !dp.in_w(sys.mul(p, g)))))
        .collect();

    let mut b = CheckBuilder::new(ids::SIMPLEST_REP_RELATIONS);
    for g1 in 0..m {
        for g2 in 0..m {
            let (c1, c2) = (&columns[g1], &columns[g2]);
            // xg₁ ∉ W → xg₁ ≡ xg₂
            let zeta = c1.iter().zip(c2).all(|(a, c)| match (a, c) {
                (None, _) => true,
                (Some(a), Some(c)) => a == c,
                // xg₂ ∈ W while xg₁ ∉ W: the classes differ
                (Some(_), None) => false,
            });
            // xg₁ ∉ W ∧ xg₂ ∉ W → xg₁ ≡ xg₂
            let xi = c1.iter().zip(c2).all(|(a, c)| match (a, c) {
                (Some(a), Some(c)) => a == c,
                _ => true,
            });
            // xg₁ ∉ W → xg₁g₂ ∉ W
            let delta = reached[g1].is_subset(&keeps[g2]);
            for (name, concrete, formula) in [
                ("zeta", rel.zeta.contains(g1, g2), zeta),
                ("xi", rel.xi.contains(g1, g2), xi),
                ("delta", rel.delta.contains(g1, g2), delta),
            ] {
                b.expect(concrete == formula, || {
                    witness!(relation = name, g1 = g1, g2 = g2, concrete = concrete, formula = formula)
                });
            }
        }
    }
    Ok(b.finish())
}

/// Both sides of the meet-preservation criterion for one determining pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Prop2Outcome {
    /// `P(g1⋏g2) = P(g1) ∩ P(g2)` for all `g1, g2`.
    pub meet_preserved: bool,
    /// The three class conditions on `W` and `ε` for all `g1, g2`.
    pub class_conditions: bool,
    pub meet_witness: Option<Witness>,
    pub condition_witness: Option<Witness>,
}

impl Prop2Outcome {
    pub fn agree(&self) -> bool {
        self.meet_preserved == self.class_conditions
    }
}

pub fn check_prop2(sys: &AbstractSystem, dp: &DeterminingPair) -> Result<Prop2Outcome> {
    let rep = simplest_rep(sys, dp)?;
    let m = sys.size();
    let mut meet_witness = None;
    let mut condition_witness = None;
    for g1 in 0..m {
        for g2 in 0..m {
            let g = sys.meet(g1, g2);
            if meet_witness.is_none() && rep.maps[g] != rep.maps[g1].intersect(&rep.maps[g2])? {
                meet_witness = Some(witness!(g1 = g1, g2 = g2));
            }
            if condition_witness.is_none() {
                let failed = if dp.in_w(g1) && !dp.in_w(g) {
                    Some("w-absorbs-meet")
                } else if !dp.in_w(g) && !dp.same_class(g1, g2) {
                    Some("meet-outside-w-forces-class")
                } else if !dp.in_w(g1) && dp.same_class(g1, g2) && !dp.same_class(g, g1) {
                    Some("meet-stays-in-class")
                } else {
                    None
                };
                condition_witness = failed.map(|c| witness!(condition = c, g1 = g1, g2 = g2));
            }
        }
    }
    Ok(Prop2Outcome {
        meet_preserved: meet_witness.is_none(),
        class_conditions: condition_witness.is_none(),
        meet_witness,
        condition_witness,
    })
}

/// Sum over all ordered pairs `(g1, g2)` of the simplest representations of
/// the pairs built by [`eps_pair`], on disjoint tagged carriers.
pub fn sum_reps(sys: &AbstractSystem, memo: &ClosureMemo<'_>, parallel: bool) -> Result<Representation> {
    let m = sys.size();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect();
    let build = |&(g1, g2): &(usize, usize)| -> Result<Representation> {
        let dp = eps_pair(sys, memo, g1, g2)?;
        simplest_rep(sys, &dp)
    };
    let parts: Vec<Result<Representation>> = if parallel {
        pairs.par_iter().map(build).collect()
    } else {
        pairs.iter().map(build).collect()
    };

    let mut carrier = Vec::new();
    let mut offsets = Vec::with_capacity(parts.len());
    let parts: Vec<Representation> = parts.into_iter().collect::<Result<_>>()?;
    for (part, &pair) in parts.iter().zip(&pairs) {
        offsets.push(carrier.len());
        carrier.extend(part.carrier.iter().cloned().map(|mut p| {
            p.pair = Some(pair);
            p
        }));
    }
    let total = carrier.len();
    let maps = (0..m)
        .map(|g| {
            let mut entries = vec![None; total];
            for (part, &off) in parts.iter().zip(&offsets) {
                for (a, b) in part.maps[g].pairs() {
                    entries[off + a] = Some(off + b);
                }
            }
            PartialMap::from_entries(entries)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Representation { carrier, maps })
}

/// Checks the hypotheses and closure conditions, then builds the summed
/// representation and confirms it is a faithful isomorphism onto its image.
pub fn verify_theorem(sys: &AbstractSystem, parallel: bool) -> Report {
    build_and_verify(sys, parallel).0
}

/// [`verify_theorem`] that also hands back the representation when one was built.
pub fn build_and_verify(sys: &AbstractSystem, parallel: bool) -> (Report, Option<Representation>) {
    let mut report = Report::new("representation");
    let hypotheses = sys.validate();
    let first_failure = hypotheses.failures().next().map(|c| c.id.clone());
    report.extend(hypotheses.checks);
    if let Some(id) = first_failure {
        report.verdict = format!("hypothesis failed: {id}");
        return (report, None);
    }

    let memo = ClosureMemo::new(sys);
    memo.warm(parallel);
    let schemes = check_axiom_schemes(sys, &memo);
    let first_failure = schemes.failures().next().map(|c| c.id.clone());
    report.extend(schemes.checks);
    if let Some(id) = first_failure {
        report.verdict = format!("hypothesis failed: {id}");
        return (report, None);
    }

    let rep = match sum_reps(sys, &memo, parallel) {
        Ok(rep) => rep,
        Err(e) => {
            report.push(Check::fail(ids::REP_CONSTRUCTION, witness!(error = e)));
            return (report.finalize(), None);
        }
    };
    report.info("carrier size", rep.carrier_size());
    report.info("summands", sys.size() * sys.size());
    report.extend(verify_representation(sys, &rep));
    (report.finalize(), Some(rep))
}

/// The faithfulness checks of [`verify_theorem`] for an arbitrary representation.
pub fn verify_representation(sys: &AbstractSystem, rep: &Representation) -> Vec<Check> {
    let m = sys.size();
    let maps = &rep.maps;

    let mut injective = CheckBuilder::new(ids::REP_INJECTIVE);
    for x in 0..m {
        for y in x + 1..m {
            injective.expect(maps[x] != maps[y], || witness!(x = x, y = y));
        }
    }

    let mut product = CheckBuilder::new(ids::REP_PRODUCT);
    let mut meet = CheckBuilder::new(ids::REP_MEET);
    for x in 0..m {
        for y in 0..m {
            let composed = maps[y].compose(&maps[x]).expect("common carrier");
            product.expect(maps[sys.mul(x, y)] == composed, || witness!(x = x, y = y));
            let met = maps[x].intersect(&maps[y]).expect("common carrier");
            meet.expect(maps[sys.meet(x, y)] == met, || witness!(x = x, y = y));
        }
    }

    let rel = rep_relations(rep);
    let compare = |id: &str, abstract_rel: &Relation, concrete: &Relation| {
        let mut b = CheckBuilder::new(id);
        for x in 0..m {
            for y in 0..m {
                let (a, c) = (abstract_rel.contains(x, y), concrete.contains(x, y));
                b.expect(a == c, || witness!(x = x, y = y, system = a, represented = c));
            }
        }
        b.finish()
    };

    vec![
        injective.finish(),
        product.finish(),
        meet.finish(),
        compare(ids::REP_XI, sys.xi_rel(), &rel.xi),
        compare(ids::REP_DELTA, sys.delta_rel(), &rel.delta),
        compare(ids::REP_ZETA, sys.natural_order(), &rel.zeta),
    ]
}
