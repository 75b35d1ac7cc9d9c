//! Randomized self-verification suites.
//!
//! Each suite draws seeded random states and checks a family of identities
//! and inequalities the quantifiers and maps must satisfy, reporting the
//! worst violation per property together with the inputs that produced it.
//! The suites are deliberately re-runnable with any sample count and seed;
//! the acceptance tests call them with pinned values.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{QdError, Result};
use crate::info::{
    classical_mutual_info_i, classical_mutual_info_j, mutual_info_gap, quantum_mutual_info,
    JointDistribution,
};
use crate::linalg::{
    hermitian_eigenvalues, hermiticity_deviation, identity, max_abs_diff, trace_re, CMatrix,
    DensityMatrix, Pvm, Side,
};
use crate::maps::{
    collapse, dichotomic_channel, monitoring, monitoring_power, pvm_from_bloch,
    stinespring_dilation, unrevealed_projective, BlochAngles, MonitoringStrength, WeakStrength,
};
use crate::optimize::OptimizerConfig;
use crate::quantifiers::{
    classical_correlations, conditional_entropy_term, discord, super_discord, sym_discord,
    sym_weak_discord, weak_discord,
};
use crate::states::{quantum_classical, random_density};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Maps,
    Theorem1,
    Hierarchy,
    Sqd,
    Classical,
    All,
}

impl Suite {
    const BASIC: [Suite; 5] = [
        Suite::Maps,
        Suite::Theorem1,
        Suite::Hierarchy,
        Suite::Sqd,
        Suite::Classical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Maps => "maps",
            Suite::Theorem1 => "theorem1",
            Suite::Hierarchy => "hierarchy",
            Suite::Sqd => "sqd",
            Suite::Classical => "classical",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = QdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maps" => Ok(Suite::Maps),
            "theorem1" => Ok(Suite::Theorem1),
            "hierarchy" => Ok(Suite::Hierarchy),
            "sqd" => Ok(Suite::Sqd),
            "classical" => Ok(Suite::Classical),
            "all" => Ok(Suite::All),
            other => Err(QdError::ParameterRange(format!(
                "unknown verify suite '{other}', expected maps|theorem1|hierarchy|sqd|classical|all"
            ))),
        }
    }
}

/// One verified property: worst violation seen over all samples, the
/// tolerance it is held to, and a description of the worst-case inputs.
#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub name: String,
    pub samples: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub worst_case: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.pass)
    }
}

/// Violation accumulator. Violations are "amount by which the property is
/// broken": `|lhs - rhs|` for identities, `lhs - rhs` for `lhs <= rhs`
/// inequalities (negative when satisfied).
struct Check {
    name: &'static str,
    tolerance: f64,
    samples: usize,
    max_violation: f64,
    worst_case: String,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check {
            name,
            tolerance,
            samples: 0,
            max_violation: f64::NEG_INFINITY,
            worst_case: String::from("(no samples)"),
        }
    }

    fn record(&mut self, violation: f64, context: String) {
        self.samples += 1;
        let v = if violation.is_nan() {
            f64::INFINITY
        } else {
            violation
        };
        if v > self.max_violation {
            self.max_violation = v;
            self.worst_case = context;
        }
    }

    fn finish(self) -> PropertyResult {
        let max_violation = if self.samples == 0 {
            0.0
        } else {
            self.max_violation
        };
        PropertyResult {
            name: self.name.to_string(),
            samples: self.samples,
            max_violation,
            tolerance: self.tolerance,
            pass: self.samples > 0 && max_violation <= self.tolerance,
            worst_case: self.worst_case,
        }
    }
}

fn random_bloch(rng: &mut ChaCha8Rng) -> BlochAngles {
    BlochAngles::new(rng.random::<f64>() * PI, rng.random::<f64>() * TAU)
        .expect("angles drawn inside their ranges")
}

fn sample_state(seed: u64, index: u64) -> Result<(DensityMatrix, u64, usize)> {
    let state_seed = seed.wrapping_add(index);
    let rank = 1 + (index % 4) as usize;
    Ok((random_density(2, 2, rank, state_seed)?, state_seed, rank))
}

fn eps(value: f64) -> MonitoringStrength {
    MonitoringStrength::new(value).expect("verify strengths are in range")
}

fn maps_suite(samples: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Check::new("monitoring preserves trace", 1e-12);
    let mut herm = Check::new("monitoring preserves hermiticity", 1e-12);
    let mut psd = Check::new("monitoring preserves positivity", 1e-10);
    let mut signal = Check::new("monitoring leaves the A marginal alone", 1e-10);
    let mut compose = Check::new("n-fold monitoring matches its closed form", 1e-10);
    let mut absorb = Check::new("projective dephasing absorbs prior monitoring", 1e-10);
    let mut dichotomic = Check::new("dichotomic channel equals monitoring at 1-sech x", 1e-10);
    let mut isometry = Check::new("stinespring dilation is an isometry", 1e-12);
    let mut dilation = Check::new("tracing the dilation ancilla recovers monitoring", 1e-10);
    let mut mixture = Check::new("collapse outcomes mix back to the dephased state", 1e-10);
    let mut joint = Check::new(
        "conditional-entropy and mutual-info discord forms agree",
        1e-9,
    );

    for i in 0..samples as u64 {
        let (rho, state_seed, rank) = sample_state(seed, i)?;
        let angles = random_bloch(&mut rng);
        let pvm = pvm_from_bloch(angles);
        let e = eps([0.25, 0.5, 0.75][(i % 3) as usize]);
        let ctx = format!(
            "state seed {state_seed} (rank {rank}), eps {}, theta {:.4}, phi {:.4}",
            e.value(),
            angles.theta(),
            angles.phi()
        );

        let m = monitoring(&rho, &pvm, e, Side::B)?;
        trace.record((trace_re(m.matrix()) - 1.0).abs(), ctx.clone());
        herm.record(hermiticity_deviation(m.matrix()), ctx.clone());
        let min_eig = hermitian_eigenvalues(m.matrix())?
            .first()
            .copied()
            .unwrap_or(0.0);
        psd.record(-min_eig, ctx.clone());
        signal.record(
            max_abs_diff(&m.reduced(Side::A), &rho.reduced(Side::A)),
            ctx.clone(),
        );

        let thrice = monitoring(&monitoring(&m, &pvm, e, Side::B)?, &pvm, e, Side::B)?;
        let powered = monitoring_power(&rho, &pvm, e, 3, Side::B)?;
        compose.record(max_abs_diff(thrice.matrix(), powered.matrix()), ctx.clone());

        let dephased = unrevealed_projective(&rho, &pvm, Side::B)?;
        let dephased_after = unrevealed_projective(&m, &pvm, Side::B)?;
        absorb.record(
            max_abs_diff(dephased.matrix(), dephased_after.matrix()),
            ctx.clone(),
        );

        let x = WeakStrength::new(4.0 * rng.random::<f64>() - 2.0)?;
        let via_operators = dichotomic_channel(&rho, x, &pvm, Side::B)?;
        let via_monitoring = monitoring(&rho, &pvm, eps(1.0 - 1.0 / x.value().cosh()), Side::B)?;
        dichotomic.record(
            max_abs_diff(via_operators.matrix(), via_monitoring.matrix()),
            format!("{ctx}, x {:.4}", x.value()),
        );

        let v = stinespring_dilation(&pvm, e, (rho.dim_a(), rho.dim_b()))?;
        let gram = v.matrix().adjoint() * v.matrix();
        isometry.record(max_abs_diff(&gram, &identity(rho.total_dim())), ctx.clone());
        dilation.record(
            max_abs_diff(v.channel(&rho)?.matrix(), m.matrix()),
            ctx.clone(),
        );

        let mut mixed = CMatrix::zeros(rho.total_dim(), rho.total_dim());
        for b in 0..pvm.len() {
            match collapse(&rho, &pvm, b, Side::B) {
                Ok((cond, p)) => mixed += cond.matrix().scale(p),
                // A zero-probability branch contributes exactly nothing.
                Err(QdError::ZeroProbabilityOutcome { .. }) => {}
                Err(err) => return Err(err),
            }
        }
        mixture.record(max_abs_diff(&mixed, dephased.matrix()), ctx.clone());

        let gap = mutual_info_gap(&rho, &dephased)?;
        let sb = crate::info::von_neumann_entropy(&rho.reduced(Side::B))?;
        let s = crate::info::von_neumann_entropy(rho.matrix())?;
        let cond_form = conditional_entropy_term(&rho, &pvm, Side::B)? + sb - s;
        joint.record((gap - cond_form).abs(), ctx);
    }

    Ok(vec![
        trace.finish(),
        herm.finish(),
        psd.finish(),
        signal.finish(),
        compose.finish(),
        absorb.finish(),
        dichotomic.finish(),
        isometry.finish(),
        dilation.finish(),
        mixture.finish(),
        joint.finish(),
    ])
}

fn theorem1_suite(samples: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let cfg = OptimizerConfig::default();
    let mut nonneg = Check::new("weak discord is nonnegative", 1e-9);
    let mut below = Check::new("weak discord never exceeds the discord", 1e-7);
    let mut at_zero = Check::new("weak discord vanishes at eps = 0", 1e-12);
    let mut at_one = Check::new("weak discord reaches the discord at eps = 1", 1e-6);

    for i in 0..samples as u64 {
        let (rho, state_seed, rank) = sample_state(seed, i)?;
        let qd = discord(&rho, &cfg)?.value;
        for e in [0.25, 0.5, 0.75] {
            let wqd = weak_discord(&rho, eps(e), &cfg)?.value;
            let ctx = format!("state seed {state_seed} (rank {rank}), eps {e}");
            nonneg.record(-wqd, ctx.clone());
            below.record(wqd - qd, ctx);
        }
        let ctx = format!("state seed {state_seed} (rank {rank})");
        at_zero.record(weak_discord(&rho, eps(0.0), &cfg)?.value.abs(), ctx.clone());
        at_one.record((weak_discord(&rho, eps(1.0), &cfg)?.value - qd).abs(), ctx);
    }

    Ok(vec![
        nonneg.finish(),
        below.finish(),
        at_zero.finish(),
        at_one.finish(),
    ])
}

/// Quantum-classical witness separating the one-sided and symmetric
/// discords: B is classical in the computational basis while the conditional
/// A states |0> and |+> do not commute.
fn hierarchy_witness() -> Result<DensityMatrix> {
    let mut zero = CMatrix::zeros(2, 2);
    zero[(0, 0)] = num_complex::Complex64::ONE;
    let plus = CMatrix::from_fn(2, 2, |_, _| num_complex::Complex64::new(0.5, 0.0));
    quantum_classical(&[0.5, 0.5], &[zero, plus], &Pvm::computational(2))
}

fn hierarchy_suite(samples: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let cfg = OptimizerConfig::default();
    let mut dominates = Check::new("symmetric discord dominates the one-sided discord", 1e-7);
    let mut below_sym = Check::new(
        "symmetric weak discord stays below the symmetric discord",
        1e-7,
    );
    let mut above_weak = Check::new("symmetric weak discord dominates the weak discord", 1e-7);
    let mut witness_zero = Check::new("witness state has zero one-sided discord", 1e-7);
    let mut witness_pos = Check::new("witness state keeps positive symmetric discord", 0.0);

    let e = eps(0.5);
    for i in 0..samples as u64 {
        let (rho, state_seed, rank) = sample_state(seed, i)?;
        let ctx = format!("state seed {state_seed} (rank {rank}), eps 0.5");
        let qd = discord(&rho, &cfg)?.value;
        let wqd = weak_discord(&rho, e, &cfg)?.value;
        let syqd = sym_discord(&rho, &cfg)?.value;
        let sywqd = sym_weak_discord(&rho, e, e, &cfg)?.value;
        dominates.record(qd - syqd, ctx.clone());
        below_sym.record(sywqd - syqd, ctx.clone());
        above_weak.record(wqd - sywqd, ctx);
    }

    let witness = hierarchy_witness()?;
    let ctx = String::from("quantum-classical witness (|0>, |+> payloads)");
    witness_zero.record(discord(&witness, &cfg)?.value.abs(), ctx.clone());
    witness_pos.record(0.01 - sym_discord(&witness, &cfg)?.value, ctx);

    Ok(vec![
        dominates.finish(),
        below_sym.finish(),
        above_weak.finish(),
        witness_zero.finish(),
        witness_pos.finish(),
    ])
}

fn sqd_suite(samples: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let cfg = OptimizerConfig::default();
    let mut at_zero = Check::new("super discord at x = 0 equals the mutual information", 1e-8);
    let mut dominates = Check::new("super discord never drops below the discord", 1e-7);
    let mut limit = Check::new("super discord reaches the discord as x grows", 1e-6);

    for i in 0..samples as u64 {
        let (rho, state_seed, rank) = sample_state(seed, i)?;
        let ctx = format!("state seed {state_seed} (rank {rank})");
        let qd = discord(&rho, &cfg)?.value;
        let i_rho = quantum_mutual_info(&rho);
        let sd0 = super_discord(&rho, WeakStrength::new(0.0)?, &cfg)?.value;
        at_zero.record((sd0 - i_rho).abs(), ctx.clone());
        for x in [0.5, 1.0, 2.0] {
            let sd = super_discord(&rho, WeakStrength::new(x)?, &cfg)?.value;
            dominates.record(qd - sd, format!("{ctx}, x {x}"));
        }
        let sd_far = super_discord(&rho, WeakStrength::new(20.0)?, &cfg)?.value;
        limit.record((sd_far - qd).abs(), ctx);
    }

    Ok(vec![at_zero.finish(), dominates.finish(), limit.finish()])
}

fn classical_suite(samples: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let cfg = OptimizerConfig::default();
    let mut forms = Check::new("the two classical mutual information forms agree", 1e-12);
    let mut split = Check::new(
        "mutual information splits into discord plus classical part",
        1e-7,
    );
    let mut nonneg = Check::new("classical correlations are nonnegative", 1e-9);
    let mut bounded = Check::new(
        "classical correlations never exceed the mutual information",
        1e-9,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples as u64 {
        let nx = 2 + (rng.random::<u64>() % 4) as usize;
        let ny = 2 + (rng.random::<u64>() % 4) as usize;
        let mut probs: Vec<f64> = (0..nx * ny).map(|_| rng.random::<f64>() + 1e-3).collect();
        let total: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= total;
        }
        let residual: f64 = 1.0 - probs.iter().sum::<f64>();
        probs[0] += residual;
        let joint = JointDistribution::new(nx, ny, probs)?;
        forms.record(
            (classical_mutual_info_i(&joint) - classical_mutual_info_j(&joint)).abs(),
            format!("joint sample {i} ({nx}x{ny})"),
        );
    }

    // Full optimizations are costly; scale this loop down relative to the
    // cheap distribution checks above, keeping at least ten states.
    let state_samples = samples.div_ceil(50).max(10).min(samples.max(1));
    for i in 0..state_samples as u64 {
        let (rho, state_seed, rank) = sample_state(seed, i)?;
        let ctx = format!("state seed {state_seed} (rank {rank})");
        let i_rho = quantum_mutual_info(&rho);
        let qd = discord(&rho, &cfg)?.value;
        let c = classical_correlations(&rho, &cfg)?.value;
        split.record((i_rho - qd - c).abs(), ctx.clone());
        nonneg.record(-c, ctx.clone());
        bounded.record(c - i_rho, ctx);
    }

    Ok(vec![
        forms.finish(),
        split.finish(),
        nonneg.finish(),
        bounded.finish(),
    ])
}

/// Runs one verification suite with `samples` seeded random draws.
pub fn run_suite(suite: Suite, samples: usize, seed: u64) -> Result<SuiteReport> {
    if samples == 0 {
        return Err(QdError::ParameterRange(
            "verify needs at least one sample".into(),
        ));
    }
    let properties = match suite {
        Suite::Maps => maps_suite(samples, seed)?,
        Suite::Theorem1 => theorem1_suite(samples, seed)?,
        Suite::Hierarchy => hierarchy_suite(samples, seed)?,
        Suite::Sqd => sqd_suite(samples, seed)?,
        Suite::Classical => classical_suite(samples, seed)?,
        Suite::All => {
            let mut all = Vec::new();
            for sub in Suite::BASIC {
                all.extend(run_suite(sub, samples, seed)?.properties);
            }
            all
        }
    };
    Ok(SuiteReport { suite, properties })
}
