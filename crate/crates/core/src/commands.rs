//! The operations behind each CLI subcommand. Every command yields one
//! [`Report`] whose check order is fixed, so output never depends on timing.

use crate::abstract_system::AbstractSystem;
use crate::closure::{
    check_axiom_schemes, check_closure_structure, closure_set, f_closure, is_closed, least_closed_oracle, oracle_budget,
    ClosedMethod, ClosureMemo,
};
use crate::error::{Error, Result};
use crate::generators::{random_trans_system, up_to_isomorphism, valid_abstract_systems};
use crate::instance::{parse_str, to_string, InstanceFile};
use crate::relation::elem_set;
use crate::report::{timed, Check, CheckBuilder, Report};
use crate::representation::build_and_verify;
use crate::trans_semigroup::TransSystem;
use crate::witness;

pub mod ids {
    pub const ORACLE_CLOSURE: &str = "oracle-closure-agreement";
    pub const ORACLE_CLOSED_METHODS: &str = "oracle-closed-methods-agreement";
    pub const INSTANCE_ROUNDTRIP: &str = "instance-roundtrip";
}

#[derive(Debug, Clone)]
pub struct Options {
    pub cap: usize,
    pub oracle: bool,
    pub parallel: bool,
    /// Stamps wall-clock times on checks, which makes output nondeterministic.
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            cap: 256,
            oracle: false,
            parallel: true,
            timings: false,
        }
    }
}

fn describe(report: &mut Report, inst: &InstanceFile, sys: &AbstractSystem) {
    if let Some(name) = &inst.name {
        report.info("name", name);
    }
    report.info("kind", if inst.is_concrete() { "transformations" } else { "abstract" });
    report.info("size", sys.size());
}

/// Runs a group of checks; with timings on, the group's total cost is put
/// on its first check.
fn batch(opts: &Options, f: impl FnOnce() -> Vec<Check>) -> Vec<Check> {
    let start = std::time::Instant::now();
    let mut checks = f();
    if opts.timings {
        if let Some(first) = checks.first_mut() {
            first.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
    }
    checks
}

/// Structure summary: element listing, relation sizes, singleton closures,
/// and the hypothesis checks.
pub fn cmd_analyze(inst: &InstanceFile, opts: &Options) -> Result<Report> {
    let mut report = Report::new("analyze");
    let concrete = if inst.is_concrete() {
        Some(inst.to_trans_system(opts.cap)?)
    } else {
        None
    };
    let sys = match &concrete {
        Some(ts) => ts.to_abstract(),
        None => inst.to_abstract(opts.cap)?,
    };
    describe(&mut report, inst, &sys);
    if let Some(ts) = &concrete {
        report.info("base size", ts.base_size());
        for (i, map) in ts.elements().iter().enumerate() {
            report.info(format!("element {i}"), format!("{map:?}"));
        }
    }
    let idempotents = (0..sys.size()).filter(|&x| sys.mul(x, x) == x).count();
    report.info("idempotents", idempotents);
    report.info("|zeta|", sys.natural_order().count());
    report.info("|xi|", sys.xi_rel().count());
    report.info("|delta|", sys.delta_rel().count());

    let validation = sys.validate();
    if validation.passed() {
        let mut max_rounds = 0;
        for x in 0..sys.size() {
            let res = f_closure(&sys, &elem_set(sys.size(), [x]))?;
            max_rounds = max_rounds.max(res.rounds);
            report.info(format!("f({{{x}}})"), format!("{:?}", res.members()));
        }
        report.info("max singleton closure rounds", max_rounds);
    }
    report.extend(validation.checks);
    Ok(report.finalize())
}

/// Hypotheses, derived properties, closure conditions, and for concrete
/// input the semiadjacency and domain lemmas. With `oracle`, closures and
/// closedness are cross-checked by brute force when `|G|` fits the budget.
pub fn cmd_check(inst: &InstanceFile, opts: &Options) -> Result<Report> {
    let mut report = Report::new("check");
    let concrete = if inst.is_concrete() {
        Some(inst.to_trans_system(opts.cap)?)
    } else {
        None
    };
    let sys = match &concrete {
        Some(ts) => ts.to_abstract(),
        None => inst.to_abstract(opts.cap)?,
    };
    describe(&mut report, inst, &sys);
    check_system(&mut report, &sys, concrete.as_ref(), opts);
    Ok(report.finalize())
}

fn check_system(
    report: &mut Report,
    sys: &AbstractSystem,
    concrete: Option<&TransSystem>,
    opts: &Options,
) {
    let validation = batch(opts, || sys.validate().checks);
    let valid = validation.iter().all(|c| c.passed);
    report.extend(validation);
    report.extend(batch(opts, || sys.derived_props().checks));

    let memo = ClosureMemo::new(sys);
    // closure conditions presuppose the hypotheses
    if valid {
        memo.warm(opts.parallel);
        report.extend(batch(opts, || check_axiom_schemes(sys, &memo).checks));
        report.extend(batch(opts, || check_closure_structure(sys, &memo)));
    } else {
        report.info("closure conditions", "skipped: hypotheses fail");
    }
    if let Some(ts) = concrete {
        report.extend(batch(opts, || ts.check_lemma1()));
        report.push(timed(opts.timings, || ts.check_domain_meet_small(&memo)));
    }
    if opts.oracle {
        let budget = oracle_budget();
        if sys.size() <= budget {
            report.push(timed(opts.timings, || oracle_closure_check(sys, budget)));
            if valid {
                report.push(timed(opts.timings, || closed_methods_check(sys)));
            }
        } else {
            report.info(
                "oracle",
                format!("skipped: |G| = {} exceeds budget {budget}", sys.size()),
            );
        }
    }
}

/// Closures of all singletons and pairs against the brute-force oracle.
fn oracle_closure_check(sys: &AbstractSystem, budget: usize) -> Check {
    let m = sys.size();
    let mut b = CheckBuilder::new(ids::ORACLE_CLOSURE);
    for x in 0..m {
        for y in x..m {
            let h = elem_set(m, [x, y]);
            let fast = closure_set(sys, &h).expect("nonempty seed");
            let slow = least_closed_oracle(sys, &h, budget).expect("within budget");
            b.expect(fast == slow, || {
                witness!(
                    seed = format!("{{{x},{y}}}"),
                    closure = format!("{:?}", fast.ones().collect::<Vec<_>>()),
                    oracle = format!("{:?}", slow.ones().collect::<Vec<_>>())
                )
            });
        }
    }
    b.finish()
}

/// Both closedness tests on every nonempty subset.
fn closed_methods_check(sys: &AbstractSystem) -> Check {
    let m = sys.size();
    let mut b = CheckBuilder::new(ids::ORACLE_CLOSED_METHODS);
    for mask in 1u64..1 << m {
        let h = elem_set(m, (0..m).filter(|i| mask >> i & 1 == 1));
        let a = is_closed(sys, &h, ClosedMethod::Implication);
        let c = is_closed(sys, &h, ClosedMethod::FourConditions);
        b.expect(a == c, || {
            witness!(set = format!("{:?}", h.ones().collect::<Vec<_>>()), implication = a, conditions = c)
        });
    }
    b.finish()
}

fn add_representation(report: &mut Report, sys: &AbstractSystem, opts: &Options, listing: bool) {
    let mut built = None;
    let mut verdict = String::new();
    let checks = batch(opts, || {
        let (sub, rep) = build_and_verify(sys, opts.parallel);
        report.info.extend(sub.info);
        built = rep;
        verdict = sub.verdict;
        sub.checks
    });
    if let Some(rep) = built.filter(|_| listing) {
        for (i, point) in rep.carrier.iter().enumerate() {
            report.info(format!("point {i}"), point);
        }
        for (g, map) in rep.maps.iter().enumerate() {
            report.info(format!("P({g})"), format!("{map:?}"));
        }
    }
    report.extend(checks);
    if verdict.starts_with("hypothesis failed") {
        report.verdict = verdict;
    }
}

/// Builds and verifies the faithful representation, listing its carrier and maps.
pub fn cmd_represent(inst: &InstanceFile, opts: &Options) -> Result<Report> {
    let mut report = Report::new("represent");
    let sys = inst.to_abstract(opts.cap)?;
    describe(&mut report, inst, &sys);
    add_representation(&mut report, &sys, opts, true);
    Ok(report.finalize())
}

/// Generates the semigroup, re-encodes it abstractly and back through the
/// instance format, and verifies the representation of the result.
pub fn cmd_roundtrip(inst: &InstanceFile, opts: &Options) -> Result<Report> {
    let mut report = Report::new("roundtrip");
    let ts = inst.to_trans_system(opts.cap)?;
    let sys = ts.to_abstract();
    describe(&mut report, inst, &sys);
    report.info("base size", ts.base_size());

    let mut b = CheckBuilder::new(ids::INSTANCE_ROUNDTRIP);
    for (what, file) in [("input", inst.clone()), ("abstract", InstanceFile::from_abstract(&sys))] {
        let back = parse_str(&to_string(&file));
        b.expect(back.as_ref() == Ok(&file), || witness!(instance = what));
    }
    let reparsed = InstanceFile::from_abstract(&sys).to_abstract(opts.cap)?;
    b.expect(reparsed.mul_table() == sys.mul_table(), || witness!(instance = "abstract tables"));
    report.push(b.finish());
    report.extend(batch(opts, || ts.check_lemma1()));
    add_representation(&mut report, &sys, opts, false);
    Ok(report.finalize())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateKind {
    Transformations { points: usize, maps: usize },
    Abstract { size: usize },
}

/// A seeded instance. Transformation instances list the sampled seed maps;
/// abstract ones pick among valid systems up to isomorphism.
pub fn cmd_generate(kind: GenerateKind, seed: u64, cap: usize) -> Result<InstanceFile> {
    match kind {
        GenerateKind::Transformations { points, maps } => {
            let generated = random_trans_system(seed, points, maps, cap)?;
            Ok(InstanceFile::transformations(points, &generated.seeds)
                .named(format!("random-{points}x{maps}"))
                .with_seed(seed))
        }
        GenerateKind::Abstract { size } => {
            if !(1..=3).contains(&size) {
                return Err(Error::Instance(format!("size: {size} not in 1..=3")));
            }
            let systems = up_to_isomorphism(valid_abstract_systems(size));
            let sys = &systems[(seed % systems.len() as u64) as usize];
            Ok(InstanceFile::from_abstract(sys)
                .named(format!("valid-{size}"))
                .with_seed(seed))
        }
    }
}
