//! Classical and quantum information measures, all in nats.
//!
//! The classical layer provides both textbook forms of the mutual information,
//!   I(X:Y) = H(X) + H(Y) - H(X,Y)
//!   J(X:Y) = H(X) - sum_y p_y H(X|y)
//! which coincide exactly. Their quantum counterparts split: the measurement
//! entering J turns the quantum J into a basis-dependent quantity, and the gap
//! between I and optimized J is the discord family implemented in
//! [`crate::quantifiers`]. This module supplies the building blocks: von
//! Neumann entropy, quantum mutual information and the gap functional
//! a(rho, sigma) = I(rho) - I(sigma).

use crate::error::{QdError, Result};
use crate::linalg::{hermitian_eigenvalues_unchecked, CMatrix, DensityMatrix, PSD_TOL};

/// Tolerance on probability normalization for classical distributions.
pub const PROB_TOL: f64 = 1e-12;

pub(crate) fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Entropy of a spectrum that may carry eigensolver noise: values in
/// `[-PSD_TOL, 0)` are clipped to zero, anything more negative is an error.
pub(crate) fn entropy_from_spectrum(eigs: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &v in eigs {
        if v < -PSD_TOL {
            return Err(QdError::NotPositive { min_eigenvalue: v });
        }
        s -= xlnx(v);
    }
    // -x ln x < 0 only through roundoff for spectra summing to 1.
    Ok(s.max(0.0))
}

/// Shannon entropy −Σ p ln p in nats, with 0·ln 0 ≡ 0.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &p in probs {
        if p < 0.0 {
            return Err(QdError::InvalidProbabilities(format!(
                "negative probability {p:.3e}"
            )));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(QdError::InvalidProbabilities(format!(
            "probabilities sum to {sum:.15} instead of 1"
        )));
    }
    Ok(probs.iter().map(|&p| -xlnx(p)).sum::<f64>().max(0.0))
}

/// Joint probability table p_{x,y}, stored row-major (x-major).
#[derive(Debug, Clone)]
pub struct JointDistribution {
    nx: usize,
    ny: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(nx: usize, ny: usize, probs: Vec<f64>) -> Result<Self> {
        if nx == 0 || ny == 0 || probs.len() != nx * ny {
            return Err(QdError::InvalidProbabilities(format!(
                "need {nx}x{ny} = {} entries, got {}",
                nx * ny,
                probs.len()
            )));
        }
        let mut sum = 0.0;
        for &p in &probs {
            if p < 0.0 {
                return Err(QdError::InvalidProbabilities(format!(
                    "negative probability {p:.3e}"
                )));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(QdError::InvalidProbabilities(format!(
                "joint probabilities sum to {sum:.15} instead of 1"
            )));
        }
        Ok(Self { nx, ny, probs })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.probs[x * self.ny + y]
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        (0..self.nx)
            .map(|x| (0..self.ny).map(|y| self.prob(x, y)).sum())
            .collect()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        (0..self.ny)
            .map(|y| (0..self.nx).map(|x| self.prob(x, y)).sum())
            .collect()
    }
}

/// I(X:Y) = H(X) + H(Y) − H(X,Y).
pub fn classical_mutual_info_i(j: &JointDistribution) -> f64 {
    let hx: f64 = j.marginal_x().iter().map(|&p| -xlnx(p)).sum();
    let hy: f64 = j.marginal_y().iter().map(|&p| -xlnx(p)).sum();
    let hxy: f64 = j.probs.iter().map(|&p| -xlnx(p)).sum();
    hx + hy - hxy
}

/// J(X:Y) = H(X) − Σ_y p_y H(X|y), with p_{x|y} = p_{x,y}/p_y.
/// Outcomes with p_y = 0 contribute nothing (the limit p ln p → 0).
pub fn classical_mutual_info_j(j: &JointDistribution) -> f64 {
    let hx: f64 = j.marginal_x().iter().map(|&p| -xlnx(p)).sum();
    let py = j.marginal_y();
    let mut cond = 0.0;
    for (y, &p_y) in py.iter().enumerate() {
        if p_y <= 0.0 {
            continue;
        }
        let h_cond: f64 = (0..j.nx).map(|x| -xlnx(j.prob(x, y) / p_y)).sum();
        cond += p_y * h_cond;
    }
    hx - cond
}

/// Von Neumann entropy S = −Tr(ρ ln ρ) of a Hermitian PSD unit-trace matrix.
///
/// Accepts raw matrices (e.g. reduced states) and therefore re-validates:
/// Hermiticity, trace and positivity at the standard tolerances.
pub fn von_neumann_entropy(m: &CMatrix) -> Result<f64> {
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    if (tr - 1.0).abs() > crate::linalg::TRACE_TOL {
        return Err(QdError::NotUnitTrace { trace: tr });
    }
    let eigs = crate::linalg::hermitian_eigenvalues(m)?;
    entropy_from_spectrum(&eigs)
}

/// Entropy of a validated state; infallible because the spectrum is already
/// certified to sit above `-PSD_TOL`.
pub(crate) fn state_entropy(rho: &DensityMatrix) -> f64 {
    entropy_from_spectrum(&hermitian_eigenvalues_unchecked(rho.matrix()))
        .expect("validated state has clipped spectrum")
}

/// Entropy of a reduced (marginal) operator produced by this crate; same
/// trusted path as [`state_entropy`].
pub(crate) fn reduced_entropy(m: &CMatrix) -> Result<f64> {
    entropy_from_spectrum(&hermitian_eigenvalues_unchecked(m))
}

/// Quantum mutual information I(ρ) = S(ρ_A) + S(ρ_B) − S(ρ).
pub fn quantum_mutual_info(rho: &DensityMatrix) -> f64 {
    let sa =
        reduced_entropy(&rho.reduced(crate::linalg::Side::A)).expect("marginal of validated state");
    let sb =
        reduced_entropy(&rho.reduced(crate::linalg::Side::B)).expect("marginal of validated state");
    sa + sb - state_entropy(rho)
}

/// The gap functional a(ρ, σ) = I(ρ) − I(σ). May be negative for arbitrary
/// pairs; it is non-negative whenever σ arises from ρ by monitoring.
pub fn mutual_info_gap(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim_a() != sigma.dim_a() || rho.dim_b() != sigma.dim_b() {
        return Err(QdError::DimensionMismatch(format!(
            "gap between a {}x{} and a {}x{} system",
            rho.dim_a(),
            rho.dim_b(),
            sigma.dim_a(),
            sigma.dim_b()
        )));
    }
    Ok(quantum_mutual_info(rho) - quantum_mutual_info(sigma))
}
