//! Discord-like correlation quantifiers.
//!
//! All quantities are gaps between the total mutual information and what is
//! left of it (or accessible) after measuring side B (and side A, for the
//! symmetric variants):
//!
//! - `discord`               min_B [ sum_b p_b S(rho_{A|b}) + S(rho_B) - S(rho) ]
//! - `classical_correlations` max_B [ S(rho_A) - sum_b p_b S(rho_{A|b}) ]
//! - `super_discord`         the same conditional-entropy form over the
//!   dichotomic operators P_+-(x) instead of projectors
//! - `weak_collapse_discord` conditional entropies of the *full* weakly
//!   collapsed composite state (the flawed candidate: it does not vanish as
//!   the measurement switches off)
//! - `weak_discord`          min_B [ I(rho) - I(M_B^eps(rho)) ], which does
//! - `sym_discord` / `sym_weak_discord`  two-sided versions over PVM pairs
//!
//! Minimization runs over rank-1 qubit PVMs parameterized by Bloch angles, so
//! the minimized operations require a qubit on each measured side; the
//! fixed-PVM forms accept any dimensions.

use crate::error::{QdError, Result};
use crate::info::{quantum_mutual_info, reduced_entropy, state_entropy};
use crate::linalg::{embed, ptrace_a, ptrace_b, trace_re, DensityMatrix, Pvm, Side, PSD_TOL};
use crate::maps::{
    dichotomic_operators, monitoring, pvm_from_bloch, unrevealed_projective, BlochAngles,
    MonitoringStrength, WeakStrength, OUTCOME_PROB_FLOOR,
};
use crate::optimize::{minimize_bloch, minimize_bloch_pair, OptimizerConfig, OptimizerDiagnostics};

/// Outcome of a minimized quantifier: the value, the optimal B-side
/// measurement (plus the A-side one for symmetric variants) and the raw
/// optimizer diagnostics.
///
/// For [`classical_correlations`] the diagnostics refer to the internally
/// minimized negated objective, so `value = -diagnostics` best values.
#[derive(Debug, Clone)]
pub struct QuantifierResult {
    pub value: f64,
    pub angles_b: BlochAngles,
    pub angles_a: Option<BlochAngles>,
    pub diagnostics: OptimizerDiagnostics,
}

fn require_qubit(rho: &DensityMatrix, side: Side) -> Result<()> {
    let dim = rho.dim_of(side);
    if dim != 2 {
        return Err(QdError::UnsupportedDimension(format!(
            "minimization over Bloch-parameterized PVMs needs side {side} to be a qubit, \
             got dimension {dim}"
        )));
    }
    Ok(())
}

/// `sum_k -lam_k ln(lam_k / p)` over the clipped spectrum `lam` of an
/// unnormalized conditional operator with trace `p`; equals `p * S(op / p)`
/// without ever dividing the matrix by a possibly small probability.
fn weighted_branch_entropy(lams: &[f64], p: f64) -> Result<f64> {
    let mut s = 0.0;
    for &l in lams {
        if l < -PSD_TOL {
            return Err(QdError::NotPositive { min_eigenvalue: l });
        }
        if l > 0.0 {
            s -= l * (l / p).ln();
        }
    }
    Ok(s.max(0.0))
}

fn branch_term(
    rho: &DensityMatrix,
    op: &crate::linalg::CMatrix,
    side: Side,
    hermitian_op: bool,
) -> Result<Option<f64>> {
    let e = embed(op, side, rho.dim_a(), rho.dim_b())?;
    let conj = if hermitian_op {
        &e * rho.matrix() * &e
    } else {
        &e * rho.matrix() * e.adjoint()
    };
    let p = trace_re(&conj);
    if p <= OUTCOME_PROB_FLOOR {
        return Ok(None);
    }
    let marginal = match side {
        Side::B => ptrace_b(&conj, rho.dim_a(), rho.dim_b()),
        Side::A => ptrace_a(&conj, rho.dim_a(), rho.dim_b()),
    };
    let lams = crate::linalg::hermitian_eigenvalues_unchecked(&marginal);
    Ok(Some(weighted_branch_entropy(&lams, p)?))
}

/// The measurement-conditioned entropy `sum_b p_b S(rho_{A|b})` (side = B;
/// the mirrored expression for side = A), skipping outcomes with
/// `p_b <= 1e-14`.
pub fn conditional_entropy_term(rho: &DensityMatrix, pvm: &Pvm, side: Side) -> Result<f64> {
    crate::maps::check_pvm_side(rho, pvm, side)?;
    let mut total = 0.0;
    for proj in pvm.projectors() {
        if let Some(term) = branch_term(rho, proj, side, true)? {
            total += term;
        }
    }
    Ok(total)
}

/// Discord at a fixed B-side PVM:
/// `sum_b p_b S(rho_{A|b}) + S(rho_B) - S(rho)`. Identical (via the
/// joint-entropy theorem, for rank-1 PVMs) to `I(rho) - I(Phi_B(rho))`.
pub fn discord_fixed(rho: &DensityMatrix, pvm: &Pvm) -> Result<f64> {
    let cond = conditional_entropy_term(rho, pvm, Side::B)?;
    let sb = reduced_entropy(&rho.reduced(Side::B))?;
    Ok(cond + sb - state_entropy(rho))
}

/// Quantum discord: [`discord_fixed`] minimized over rank-1 qubit PVMs.
pub fn discord(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<QuantifierResult> {
    require_qubit(rho, Side::B)?;
    let sb = reduced_entropy(&rho.reduced(Side::B))?;
    let s = state_entropy(rho);
    let objective = |angles: BlochAngles| -> f64 {
        let pvm = pvm_from_bloch(angles);
        match conditional_entropy_term(rho, &pvm, Side::B) {
            Ok(cond) => cond + sb - s,
            Err(_) => f64::NAN,
        }
    };
    let (angles_b, value, diagnostics) = minimize_bloch(objective, cfg)?;
    Ok(QuantifierResult {
        value,
        angles_b,
        angles_a: None,
        diagnostics,
    })
}

/// Classically accessible correlations
/// `C(rho) = max_B [ S(rho_A) - sum_b p_b S(rho_{A|b}) ]`, realized by
/// minimizing the negated objective. Together with the discord it decomposes
/// the mutual information: `I = D_B + C`.
pub fn classical_correlations(
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
) -> Result<QuantifierResult> {
    require_qubit(rho, Side::B)?;
    let sa = reduced_entropy(&rho.reduced(Side::A))?;
    let objective = |angles: BlochAngles| -> f64 {
        let pvm = pvm_from_bloch(angles);
        match conditional_entropy_term(rho, &pvm, Side::B) {
            Ok(cond) => cond - sa,
            Err(_) => f64::NAN,
        }
    };
    let (angles_b, value, diagnostics) = minimize_bloch(objective, cfg)?;
    Ok(QuantifierResult {
        value: -value,
        angles_b,
        angles_a: None,
        diagnostics,
    })
}

/// Super quantum discord: the conditional-entropy form evaluated on the
/// Oreshkov-Brun operators `P_+-(x)` of the measured basis, minimized over
/// that basis at fixed strength `x`. At `x = 0` it equals `I(rho)`; it never
/// drops below the discord.
pub fn super_discord(
    rho: &DensityMatrix,
    x: WeakStrength,
    cfg: &OptimizerConfig,
) -> Result<QuantifierResult> {
    require_qubit(rho, Side::B)?;
    let sb = reduced_entropy(&rho.reduced(Side::B))?;
    let s = state_entropy(rho);
    let objective = |angles: BlochAngles| -> f64 {
        let pvm = pvm_from_bloch(angles);
        let ops = match dichotomic_operators(x, &pvm) {
            Ok(ops) => ops,
            Err(_) => return f64::NAN,
        };
        let mut cond = 0.0;
        for op in [&ops.0, &ops.1] {
            match branch_term(rho, op, Side::B, true) {
                Ok(Some(term)) => cond += term,
                Ok(None) => {}
                Err(_) => return f64::NAN,
            }
        }
        cond + sb - s
    };
    let (angles_b, value, diagnostics) = minimize_bloch(objective, cfg)?;
    Ok(QuantifierResult {
        value,
        angles_b,
        angles_a: None,
        diagnostics,
    })
}

/// The flawed weak-measurement discord built on conditional entropies of the
/// full weakly collapsed composite state:
/// `min_B [ sum_b p_b S(C^eps_{b|B}(rho)) + S(rho_B) - S(rho) ]`.
/// Requires `eps > 0`; as eps shrinks it tends to `S(rho_B)`, not to zero,
/// bounded below by `eps D_B(rho) + (1 - eps) S(rho_B)`.
pub fn weak_collapse_discord(
    rho: &DensityMatrix,
    eps: MonitoringStrength,
    cfg: &OptimizerConfig,
) -> Result<QuantifierResult> {
    require_qubit(rho, Side::B)?;
    if eps.value() == 0.0 {
        return Err(QdError::ParameterRange(
            "weak-collapse discord needs eps in (0, 1]".into(),
        ));
    }
    let sb = reduced_entropy(&rho.reduced(Side::B))?;
    let s = state_entropy(rho);
    let e = eps.value();
    let objective = |angles: BlochAngles| -> f64 {
        let pvm = pvm_from_bloch(angles);
        let mut cond = 0.0;
        for proj in pvm.projectors() {
            let em = match embed(proj, Side::B, rho.dim_a(), rho.dim_b()) {
                Ok(em) => em,
                Err(_) => return f64::NAN,
            };
            let conj = &em * rho.matrix() * &em;
            let p = trace_re(&conj);
            if p <= OUTCOME_PROB_FLOOR {
                continue;
            }
            let weak = rho.matrix().scale(1.0 - e) + conj.scale(e / p);
            let lams = crate::linalg::hermitian_eigenvalues_unchecked(&weak);
            match crate::info::entropy_from_spectrum(&lams) {
                Ok(se) => cond += p * se,
                Err(_) => return f64::NAN,
            }
        }
        cond + sb - s
    };
    let (angles_b, value, diagnostics) = minimize_bloch(objective, cfg)?;
    Ok(QuantifierResult {
        value,
        angles_b,
        angles_a: None,
        diagnostics,
    })
}

/// Weak quantum discord at a fixed PVM: `I(rho) - I(M^eps(rho))` with the
/// monitoring applied on side B. Accepts any dimensions and PVM rank.
pub fn weak_discord_fixed(rho: &DensityMatrix, pvm: &Pvm, eps: MonitoringStrength) -> Result<f64> {
    let monitored = monitoring(rho, pvm, eps, Side::B)?;
    Ok(quantum_mutual_info(rho) - quantum_mutual_info(&monitored))
}

fn gap_after(sigma: &DensityMatrix, i_rho: f64, sa: f64) -> f64 {
    let sb = match reduced_entropy(&sigma.reduced(Side::B)) {
        Ok(v) => v,
        Err(_) => return f64::NAN,
    };
    i_rho - (sa + sb - state_entropy(sigma))
}

/// Weak quantum discord: `min_B [ I(rho) - I(M_B^eps(rho)) ]`. Vanishes
/// identically at `eps = 0` and grows to the discord at `eps = 1`.
pub fn weak_discord(
    rho: &DensityMatrix,
    eps: MonitoringStrength,
    cfg: &OptimizerConfig,
) -> Result<QuantifierResult> {
    require_qubit(rho, Side::B)?;
    let sa = reduced_entropy(&rho.reduced(Side::A))?;
    let sb = reduced_entropy(&rho.reduced(Side::B))?;
    let i_rho = sa + sb - state_entropy(rho);
    let objective = |angles: BlochAngles| -> f64 {
        let pvm = pvm_from_bloch(angles);
        match monitoring(rho, &pvm, eps, Side::B) {
            // Monitoring is non-signaling, so S(rho_A) is reused as-is.
            Ok(monitored) => gap_after(&monitored, i_rho, sa),
            Err(_) => f64::NAN,
        }
    };
    let (angles_b, value, diagnostics) = minimize_bloch(objective, cfg)?;
    Ok(QuantifierResult {
        value,
        angles_b,
        angles_a: None,
        diagnostics,
    })
}

/// Symmetric quantum discord `min_{A,B} [ I(rho) - I(Phi_A Phi_B(rho)) ]`.
/// Zero exactly on classical-classical states; never below the one-sided
/// discord.
pub fn sym_discord(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<QuantifierResult> {
    require_qubit(rho, Side::A)?;
    require_qubit(rho, Side::B)?;
    let i_rho = quantum_mutual_info(rho);
    let objective = |angles_a: BlochAngles, angles_b: BlochAngles| -> f64 {
        let pvm_a = pvm_from_bloch(angles_a);
        let pvm_b = pvm_from_bloch(angles_b);
        let sigma = unrevealed_projective(rho, &pvm_b, Side::B)
            .and_then(|after_b| unrevealed_projective(&after_b, &pvm_a, Side::A));
        match sigma {
            Ok(sigma) => i_rho - quantum_mutual_info(&sigma),
            Err(_) => f64::NAN,
        }
    };
    let ((angles_a, angles_b), value, diagnostics) = minimize_bloch_pair(objective, cfg)?;
    Ok(QuantifierResult {
        value,
        angles_b,
        angles_a: Some(angles_a),
        diagnostics,
    })
}

/// Symmetric weak quantum discord
/// `min_{A,B} [ I(rho) - I(M_A^{eps_a} M_B^{eps_b}(rho)) ]`, sandwiched
/// between the one-sided weak discord at `eps_b` and the symmetric discord.
pub fn sym_weak_discord(
    rho: &DensityMatrix,
    eps_a: MonitoringStrength,
    eps_b: MonitoringStrength,
    cfg: &OptimizerConfig,
) -> Result<QuantifierResult> {
    require_qubit(rho, Side::A)?;
    require_qubit(rho, Side::B)?;
    let i_rho = quantum_mutual_info(rho);
    let objective = |angles_a: BlochAngles, angles_b: BlochAngles| -> f64 {
        let pvm_a = pvm_from_bloch(angles_a);
        let pvm_b = pvm_from_bloch(angles_b);
        let sigma = monitoring(rho, &pvm_b, eps_b, Side::B)
            .and_then(|after_b| monitoring(&after_b, &pvm_a, eps_a, Side::A));
        match sigma {
            Ok(sigma) => i_rho - quantum_mutual_info(&sigma),
            Err(_) => f64::NAN,
        }
    };
    let ((angles_a, angles_b), value, diagnostics) = minimize_bloch_pair(objective, cfg)?;
    Ok(QuantifierResult {
        value,
        angles_b,
        angles_a: Some(angles_a),
        diagnostics,
    })
}

/// The two pieces of the weak-discord interpretation, evaluated at the
/// optimal monitoring basis `B_eps`:
///
/// - `destroyed_total`: `I(rho) - I(Phi_{B_eps}(rho))`, all quantum
///   correlations the projective limit would erase;
/// - `surviving`: the same gap computed from the monitored state
///   `M^eps(rho)`, i.e. what is still there to erase after the weak pass;
/// - `difference`: destroyed_total - surviving, which reproduces the weak
///   discord because `Phi_B` absorbs `M_B^eps`.
#[derive(Debug, Clone)]
pub struct InterpretationDecomposition {
    pub destroyed_total: f64,
    pub surviving: f64,
    pub difference: f64,
    pub angles_b: BlochAngles,
}

pub fn interpretation_decomposition(
    rho: &DensityMatrix,
    eps: MonitoringStrength,
    cfg: &OptimizerConfig,
) -> Result<InterpretationDecomposition> {
    let wqd = weak_discord(rho, eps, cfg)?;
    let pvm = pvm_from_bloch(wqd.angles_b);
    let dephased = unrevealed_projective(rho, &pvm, Side::B)?;
    let destroyed_total = quantum_mutual_info(rho) - quantum_mutual_info(&dephased);
    let monitored = monitoring(rho, &pvm, eps, Side::B)?;
    let dephased_monitored = unrevealed_projective(&monitored, &pvm, Side::B)?;
    let surviving = quantum_mutual_info(&monitored) - quantum_mutual_info(&dephased_monitored);
    Ok(InterpretationDecomposition {
        destroyed_total,
        surviving,
        difference: destroyed_total - surviving,
        angles_b: wqd.angles_b,
    })
}
