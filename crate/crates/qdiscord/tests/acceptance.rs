//! Acceptance checklist: one test (and one printed PASS/FAIL line) per
//! criterion. Tolerances are pinned here; run with `--nocapture` to see the
//! lines for passing criteria too.

use std::time::Instant;

use qdiscord::{
    discord, interpretation_decomposition, random_density, run_suite, von_neumann_entropy,
    weak_collapse_discord, weak_discord, werner_singlet, werner_wqd_closed_form,
    MonitoringStrength, OptimizerConfig, PropertyResult, Side, Suite, SuiteReport, WernerParameter,
};

fn eps(e: f64) -> MonitoringStrength {
    MonitoringStrength::new(e).unwrap()
}

fn mu(m: f64) -> WernerParameter {
    WernerParameter::new(m).unwrap()
}

fn report_line(num: usize, pass: bool, label: &str, detail: &str, started: Instant) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {num}: {verdict}  {label} ({detail}, {:.1}s)",
        started.elapsed().as_secs_f64()
    );
}

fn property<'r>(report: &'r SuiteReport, name: &str) -> &'r PropertyResult {
    report
        .properties
        .iter()
        .find(|p| p.name == name)
        .unwrap_or_else(|| panic!("suite report lacks property '{name}'"))
}

fn failures(report: &SuiteReport) -> String {
    let failed: Vec<String> = report
        .properties
        .iter()
        .filter(|p| !p.pass)
        .map(|p| {
            format!(
                "'{}' violated by {:.3e} (tolerance {:.0e}) at {}",
                p.name, p.max_violation, p.tolerance, p.worst_case
            )
        })
        .collect();
    if failed.is_empty() {
        "all properties hold".to_string()
    } else {
        failed.join("; ")
    }
}

/// Criterion 1: the minimized weak discord of Werner states matches the
/// closed form across the full (mu, eps) unit grid.
#[test]
fn criterion_1_werner_closed_form_grid() {
    const TOL: f64 = 1e-6;
    let started = Instant::now();
    let cfg = OptimizerConfig::default();
    let mut worst: (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..=10 {
        let m = mu(i as f64 / 10.0);
        let rho = werner_singlet(m);
        for j in 0..=10 {
            let e = eps(j as f64 / 10.0);
            let numeric = weak_discord(&rho, e, &cfg).unwrap().value;
            let closed = werner_wqd_closed_form(m, e);
            let diff = (numeric - closed).abs();
            if diff > worst.0 {
                worst = (diff, m.value(), e.value());
            }
        }
    }
    let pass = worst.0 <= TOL;
    report_line(
        1,
        pass,
        "Werner weak discord matches its closed form on the 11x11 grid",
        &format!("max |numeric - closed| {:.3e} <= {TOL:.0e}", worst.0),
        started,
    );
    assert!(
        pass,
        "largest deviation {:.3e} at mu {}, eps {}",
        worst.0, worst.1, worst.2
    );
}

/// Criterion 2: the weak discord of every Werner state vanishes at eps = 0
/// and reproduces the quantum discord at eps = 1.
#[test]
fn criterion_2_werner_endpoints() {
    const ZERO_TOL: f64 = 1e-9;
    const MATCH_TOL: f64 = 1e-6;
    let started = Instant::now();
    let cfg = OptimizerConfig::default();
    let mut worst_zero = 0.0f64;
    for i in 0..=10 {
        let rho = werner_singlet(mu(i as f64 / 10.0));
        worst_zero = worst_zero.max(weak_discord(&rho, eps(0.0), &cfg).unwrap().value.abs());
    }
    let mut worst_match = 0.0f64;
    for i in 1..=9 {
        let rho = werner_singlet(mu(i as f64 / 10.0));
        let qd = discord(&rho, &cfg).unwrap().value;
        let w1 = weak_discord(&rho, eps(1.0), &cfg).unwrap().value;
        worst_match = worst_match.max((w1 - qd).abs());
    }
    let pass = worst_zero <= ZERO_TOL && worst_match <= MATCH_TOL;
    report_line(
        2,
        pass,
        "Werner weak discord interpolates exactly between 0 and the discord",
        &format!(
            "max |wqd(eps=0)| {worst_zero:.3e} <= {ZERO_TOL:.0e}, max |wqd(eps=1) - qd| {worst_match:.3e} <= {MATCH_TOL:.0e}"
        ),
        started,
    );
    assert!(pass);
}

/// Criterion 3: for random two-qubit states the weak discord is nonnegative
/// and never exceeds the discord (Theorem 1 bounds).
#[test]
fn criterion_3_weak_discord_bounds() {
    let started = Instant::now();
    let report = run_suite(Suite::Theorem1, 100, 301).unwrap();
    let nonneg = property(&report, "weak discord is nonnegative");
    let below = property(&report, "weak discord never exceeds the discord");
    let pass = nonneg.pass && below.pass;
    report_line(
        3,
        pass,
        "weak discord stays within [0, discord] on 100 random states",
        &format!(
            "worst -wqd {:.3e} <= {:.0e}, worst wqd - qd {:.3e} <= {:.0e}",
            nonneg.max_violation, nonneg.tolerance, below.max_violation, below.tolerance
        ),
        started,
    );
    assert!(pass, "{}", failures(&report));
}

/// Criterion 4: the super discord equals the mutual information at zero
/// strength and dominates the discord, while the weak-collapse candidate
/// fails to vanish as its strength goes to zero.
#[test]
fn criterion_4_super_and_weak_collapse_limits() {
    const RESIDUAL_TOL: f64 = 1e-6;
    let started = Instant::now();
    let report = run_suite(Suite::Sqd, 20, 401).unwrap();
    let at_zero = property(
        &report,
        "super discord at x = 0 equals the mutual information",
    );
    let dominates = property(&report, "super discord never drops below the discord");

    // frakd at eps -> 0 stays pinned near S(rho_B) = ln 2 instead of 0.
    let cfg = OptimizerConfig::default();
    let mut worst_residual = f64::INFINITY;
    for m in [0.25, 0.5, 0.75] {
        let rho = werner_singlet(mu(m));
        let sb = von_neumann_entropy(&rho.reduced(Side::B)).unwrap();
        let frakd = weak_collapse_discord(&rho, eps(1e-3), &cfg).unwrap().value;
        worst_residual = worst_residual.min(frakd - (sb - RESIDUAL_TOL));
    }
    let frakd_pass = worst_residual >= 0.0;
    let pass = at_zero.pass && dominates.pass && frakd_pass;
    report_line(
        4,
        pass,
        "super discord limits hold and the weak-collapse candidate stays biased",
        &format!(
            "sqd(0) vs I worst {:.3e} <= {:.0e}, qd - sqd worst {:.3e} <= {:.0e}, frakd margin over S(rho_B) - {RESIDUAL_TOL:.0e} at eps=1e-3: {worst_residual:.3e} >= 0",
            at_zero.max_violation, at_zero.tolerance, dominates.max_violation, dominates.tolerance
        ),
        started,
    );
    assert!(pass, "{}", failures(&report));
}

/// Criterion 5: the monitoring-map identities (trace/positivity/marginal
/// preservation, composition law, dephasing absorption, dichotomic channel
/// equivalence, Stinespring dilation, collapse mixture, joint-entropy form
/// agreement) all hold on 200 random states.
#[test]
fn criterion_5_map_identities() {
    let started = Instant::now();
    let report = run_suite(Suite::Maps, 200, 501).unwrap();
    let pass = report.passed();
    let worst = report
        .properties
        .iter()
        .map(|p| p.max_violation)
        .fold(f64::NEG_INFINITY, f64::max);
    report_line(
        5,
        pass,
        "monitoring-map identities hold on 200 random states",
        &format!(
            "{} properties, worst violation {worst:.3e}",
            report.properties.len()
        ),
        started,
    );
    assert!(pass, "{}", failures(&report));
}

/// Criterion 6: the symmetric quantifiers dominate their one-sided
/// counterparts, and a quantum-classical witness separates them strictly.
#[test]
fn criterion_6_symmetric_hierarchy() {
    let started = Instant::now();
    let report = run_suite(Suite::Hierarchy, 50, 601).unwrap();
    let pass = report.passed();
    report_line(
        6,
        pass,
        "symmetric discord hierarchy and strict witness hold on 50 random states",
        &failures(&report),
        started,
    );
    assert!(pass, "{}", failures(&report));
}

/// Criterion 7: destroyed-minus-surviving correlations reproduce the weak
/// discord, and nothing survives a full-strength pass.
#[test]
fn criterion_7_interpretation_decomposition() {
    const MATCH_TOL: f64 = 1e-7;
    const SURVIVE_TOL: f64 = 1e-9;
    let started = Instant::now();
    let cfg = OptimizerConfig::default();
    let mut worst_match = 0.0f64;
    for trial in 0..20u64 {
        let rank = 1 + (trial % 4) as usize;
        let rho = random_density(2, 2, rank, 700 + trial).unwrap();
        for e in [0.3, 0.7] {
            let dec = interpretation_decomposition(&rho, eps(e), &cfg).unwrap();
            let wqd = weak_discord(&rho, eps(e), &cfg).unwrap().value;
            worst_match = worst_match.max((dec.difference - wqd).abs());
        }
    }
    let mut worst_survive = 0.0f64;
    for trial in 0..5u64 {
        let rho = random_density(2, 2, 4, 750 + trial).unwrap();
        let dec = interpretation_decomposition(&rho, eps(1.0), &cfg).unwrap();
        worst_survive = worst_survive.max(dec.surviving.abs());
    }
    let dec = interpretation_decomposition(&werner_singlet(mu(0.5)), eps(1.0), &cfg).unwrap();
    worst_survive = worst_survive.max(dec.surviving.abs());
    let pass = worst_match <= MATCH_TOL && worst_survive <= SURVIVE_TOL;
    report_line(
        7,
        pass,
        "destroyed-minus-surviving correlations equal the weak discord",
        &format!(
            "max |difference - wqd| {worst_match:.3e} <= {MATCH_TOL:.0e}, max survivor at eps=1 {worst_survive:.3e} <= {SURVIVE_TOL:.0e}"
        ),
        started,
    );
    assert!(pass);
}

/// Criterion 8: classical reductions -- the two classical mutual-information
/// forms agree on 1000 random joint distributions, and mutual information
/// splits into discord plus classical correlations.
#[test]
fn criterion_8_classical_reductions() {
    let started = Instant::now();
    let report = run_suite(Suite::Classical, 1000, 801).unwrap();
    let forms = property(&report, "the two classical mutual information forms agree");
    let split = property(
        &report,
        "mutual information splits into discord plus classical part",
    );
    let pass = report.passed();
    report_line(
        8,
        pass,
        "classical reductions hold",
        &format!(
            "|I - J| worst {:.3e} <= {:.0e} over {} joints, |I - D - C| worst {:.3e} <= {:.0e} over {} states",
            forms.max_violation,
            forms.tolerance,
            forms.samples,
            split.max_violation,
            split.tolerance,
            split.samples
        ),
        started,
    );
    assert!(pass, "{}", failures(&report));
}
