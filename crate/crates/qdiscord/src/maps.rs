//! Measurement-induced channels on one side of a bipartite state.
//!
//! The family, for a PVM `{B_b}` acting on side B (side A is symmetric):
//!
//! - collapse          `C_b(rho) = (1 (x) B_b) rho (1 (x) B_b) / p_b`
//! - weak collapse     `C^eps_b(rho) = (1 - eps) rho + eps C_b(rho)`
//! - unrevealed map    `Phi_B(rho) = sum_b (1 (x) B_b) rho (1 (x) B_b)`
//! - monitoring        `M^eps_B(rho) = (1 - eps) rho + eps Phi_B(rho)`
//!
//! plus the Oreshkov-Brun dichotomic operators `P_+-(x)` whose unrevealed
//! channel reproduces monitoring at `eps = 1 - sech(x)`, and a Stinespring
//! isometry realizing monitoring as an entangling interaction with a discarded
//! ancilla. Monitoring composes as a semigroup:
//! `[M^eps]^n = (1 - eps)^n rho + [1 - (1 - eps)^n] Phi_B(rho)`.

use num_complex::Complex64;

use crate::error::{QdError, Result};
use crate::linalg::{embed, identity, kron, ptrace_b, CMatrix, DensityMatrix, Pvm, Side};

/// Probabilities at or below this threshold make a conditional state
/// ill-defined; collapse refuses to renormalize them.
pub const OUTCOME_PROB_FLOOR: f64 = 1e-14;

/// Monitoring intensity eps in [0, 1]. The endpoints realize the identity
/// map (eps = 0) and full unrevealed dephasing (eps = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitoringStrength(f64);

impl MonitoringStrength {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(QdError::ParameterRange(format!(
                "monitoring strength must lie in [0, 1], got {epsilon}"
            )));
        }
        Ok(Self(epsilon))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Dichotomic measurement strength x, any finite real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakStrength(f64);

impl WeakStrength {
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(QdError::ParameterRange(format!(
                "weak-measurement strength must be finite, got {x}"
            )));
        }
        Ok(Self(x))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Spherical coordinates of a rank-1 qubit PVM: theta in [0, pi], phi in [0, 2pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(QdError::ParameterRange(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        if !(0.0..std::f64::consts::TAU).contains(&phi) {
            return Err(QdError::ParameterRange(format!(
                "phi must lie in [0, 2*pi), got {phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn phi(self) -> f64 {
        self.phi
    }
}

/// The qubit PVM `{|+><+|, |-><-|}` with
/// `|+> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>` and
/// `|-> = -sin(theta/2)|0> + e^{i phi} cos(theta/2)|1>`.
pub fn pvm_from_bloch(angles: BlochAngles) -> Pvm {
    let (ct, st) = ((angles.theta / 2.0).cos(), (angles.theta / 2.0).sin());
    let phase = Complex64::from_polar(1.0, angles.phi);
    let plus = [Complex64::new(ct, 0.0), phase * st];
    let minus = [Complex64::new(-st, 0.0), phase * ct];
    let proj = |ket: &[Complex64; 2]| CMatrix::from_fn(2, 2, |r, c| ket[r] * ket[c].conj());
    Pvm::new(vec![proj(&plus), proj(&minus)]).expect("Bloch projectors form a PVM")
}

pub(crate) fn check_pvm_side(rho: &DensityMatrix, pvm: &Pvm, side: Side) -> Result<()> {
    let dim = rho.dim_of(side);
    if pvm.dim() != dim {
        return Err(QdError::DimensionMismatch(format!(
            "PVM acts on dimension {} but side {side} has dimension {dim}",
            pvm.dim()
        )));
    }
    Ok(())
}

/// Selective collapse onto `outcome`: returns the normalized post-measurement
/// state and the outcome probability.
pub fn collapse(
    rho: &DensityMatrix,
    pvm: &Pvm,
    outcome: usize,
    side: Side,
) -> Result<(DensityMatrix, f64)> {
    check_pvm_side(rho, pvm, side)?;
    let proj = pvm.projectors().get(outcome).ok_or_else(|| {
        QdError::DimensionMismatch(format!(
            "outcome index {outcome} out of range for a {}-outcome PVM",
            pvm.len()
        ))
    })?;
    let e = embed(proj, side, rho.dim_a(), rho.dim_b())?;
    let conjugated = &e * rho.matrix() * &e;
    let p = crate::linalg::trace_re(&conjugated);
    if p <= OUTCOME_PROB_FLOOR {
        return Err(QdError::ZeroProbabilityOutcome {
            outcome,
            probability: p,
        });
    }
    let post = conjugated.scale(1.0 / p);
    Ok((DensityMatrix::trusted(rho.dim_a(), rho.dim_b(), post), p))
}

/// Weak collapse `(1 - eps) rho + eps C_b(rho)`.
pub fn weak_collapse(
    rho: &DensityMatrix,
    pvm: &Pvm,
    outcome: usize,
    eps: MonitoringStrength,
    side: Side,
) -> Result<DensityMatrix> {
    let (post, _) = collapse(rho, pvm, outcome, side)?;
    let e = eps.value();
    let mixed = rho.matrix().scale(1.0 - e) + post.matrix().scale(e);
    Ok(DensityMatrix::trusted(rho.dim_a(), rho.dim_b(), mixed))
}

/// Unrevealed projective measurement `Phi(rho) = sum_b E_b rho E_b` with the
/// projectors embedded on the chosen side. Idempotent and trace preserving.
pub fn unrevealed_projective(rho: &DensityMatrix, pvm: &Pvm, side: Side) -> Result<DensityMatrix> {
    check_pvm_side(rho, pvm, side)?;
    let dim = rho.total_dim();
    let mut out = CMatrix::zeros(dim, dim);
    for proj in pvm.projectors() {
        let e = embed(proj, side, rho.dim_a(), rho.dim_b())?;
        out += &e * rho.matrix() * &e;
    }
    Ok(DensityMatrix::trusted(rho.dim_a(), rho.dim_b(), out))
}

/// Monitoring `M^eps(rho) = (1 - eps) rho + eps Phi(rho)`: an unrevealed
/// measurement of intensity eps. Non-signaling: the unmonitored side's
/// marginal is untouched.
pub fn monitoring(
    rho: &DensityMatrix,
    pvm: &Pvm,
    eps: MonitoringStrength,
    side: Side,
) -> Result<DensityMatrix> {
    let dephased = unrevealed_projective(rho, pvm, side)?;
    let e = eps.value();
    let mixed = rho.matrix().scale(1.0 - e) + dephased.matrix().scale(e);
    Ok(DensityMatrix::trusted(rho.dim_a(), rho.dim_b(), mixed))
}

/// n-fold monitoring via the closed form
/// `[M^eps]^n(rho) = (1-eps)^n rho + [1 - (1-eps)^n] Phi(rho)`.
/// `n = 0` returns the input unchanged.
pub fn monitoring_power(
    rho: &DensityMatrix,
    pvm: &Pvm,
    eps: MonitoringStrength,
    n: u32,
    side: Side,
) -> Result<DensityMatrix> {
    if n == 0 {
        return Ok(rho.clone());
    }
    let dephased = unrevealed_projective(rho, pvm, side)?;
    let decay = (1.0 - eps.value()).powi(n as i32);
    let mixed = rho.matrix().scale(decay) + dephased.matrix().scale(1.0 - decay);
    Ok(DensityMatrix::trusted(rho.dim_a(), rho.dim_b(), mixed))
}

/// Oreshkov-Brun dichotomic operators for a two-outcome PVM `{Pi_0, Pi_1}`:
/// `P_{+-}(x) = sqrt((1 -+ tanh x)/2) Pi_0 + sqrt((1 +- tanh x)/2) Pi_1`.
/// They satisfy `P_+^2 + P_-^2 = 1`.
pub fn dichotomic_operators(x: WeakStrength, pvm: &Pvm) -> Result<(CMatrix, CMatrix)> {
    if pvm.len() != 2 {
        return Err(QdError::InvalidPvm(format!(
            "dichotomic operators need exactly 2 projectors, got {}",
            pvm.len()
        )));
    }
    let t = x.value().tanh();
    let lo = ((1.0 - t) / 2.0).sqrt();
    let hi = ((1.0 + t) / 2.0).sqrt();
    let (pi0, pi1) = (&pvm.projectors()[0], &pvm.projectors()[1]);
    let p_plus = pi0.scale(lo) + pi1.scale(hi);
    let p_minus = pi0.scale(hi) + pi1.scale(lo);
    Ok((p_plus, p_minus))
}

/// Unrevealed dichotomic channel `sum_s P_s rho P_s`. Equals monitoring at
/// `eps = 1 - sech(x)` in the same PVM.
pub fn dichotomic_channel(
    rho: &DensityMatrix,
    x: WeakStrength,
    pvm: &Pvm,
    side: Side,
) -> Result<DensityMatrix> {
    check_pvm_side(rho, pvm, side)?;
    let (p_plus, p_minus) = dichotomic_operators(x, pvm)?;
    let dim = rho.total_dim();
    let mut out = CMatrix::zeros(dim, dim);
    for op in [&p_plus, &p_minus] {
        let e = embed(op, side, rho.dim_a(), rho.dim_b())?;
        out += &e * rho.matrix() * e.adjoint();
    }
    Ok(DensityMatrix::trusted(rho.dim_a(), rho.dim_b(), out))
}

/// Stinespring isometry `V: H_A (x) H_B -> H_A (x) H_B (x) H_X` realizing
/// B-side monitoring, built from the Kraus set
/// `{sqrt(1-eps) 1} U {sqrt(eps) (1 (x) B_b)}` with `|X| = 1 + |pvm|`.
///
/// The ancilla starts (implicitly) in `|0>_X`; `V |psi> = sum_k K_k |psi> (x) |k>_X`,
/// and discarding the ancilla from `V rho V^dag` reproduces `M^eps_B(rho)`.
#[derive(Debug, Clone)]
pub struct StinespringIsometry {
    matrix: CMatrix,
    dim_a: usize,
    dim_b: usize,
    ancilla_dim: usize,
}

impl StinespringIsometry {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn ancilla_dim(&self) -> usize {
        self.ancilla_dim
    }

    /// `V rho V^dag` on the enlarged space `H_A (x) H_B (x) H_X`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<CMatrix> {
        if rho.dim_a() != self.dim_a || rho.dim_b() != self.dim_b {
            return Err(QdError::DimensionMismatch(format!(
                "isometry built for a {}x{} system, state is {}x{}",
                self.dim_a,
                self.dim_b,
                rho.dim_a(),
                rho.dim_b()
            )));
        }
        Ok(&self.matrix * rho.matrix() * self.matrix.adjoint())
    }

    /// The induced channel: `Tr_X[V rho V^dag]`, equal to monitoring.
    pub fn channel(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let big = self.apply(rho)?;
        let reduced = ptrace_b(&big, self.dim_a * self.dim_b, self.ancilla_dim);
        Ok(DensityMatrix::trusted(self.dim_a, self.dim_b, reduced))
    }
}

/// Builds the monitoring dilation for the given PVM on side B.
pub fn stinespring_dilation(
    pvm: &Pvm,
    eps: MonitoringStrength,
    dims: (usize, usize),
) -> Result<StinespringIsometry> {
    let (dim_a, dim_b) = dims;
    if dim_a == 0 || dim_b == 0 {
        return Err(QdError::DimensionMismatch(
            "subsystem dimensions must be at least 1".into(),
        ));
    }
    if pvm.dim() != dim_b {
        return Err(QdError::DimensionMismatch(format!(
            "PVM acts on dimension {} but dim_b = {dim_b}",
            pvm.dim()
        )));
    }
    let d = dim_a * dim_b;
    let e = eps.value();
    let mut kraus: Vec<CMatrix> = Vec::with_capacity(1 + pvm.len());
    kraus.push(identity(d).scale((1.0 - e).sqrt()));
    for proj in pvm.projectors() {
        kraus.push(kron(&identity(dim_a), proj).scale(e.sqrt()));
    }
    let ancilla_dim = kraus.len();
    // Row index (m, k) with the ancilla slot fastest: row = m * ancilla_dim + k.
    let mut v = CMatrix::zeros(d * ancilla_dim, d);
    for (k, kop) in kraus.iter().enumerate() {
        for m in 0..d {
            for n in 0..d {
                v[(m * ancilla_dim + k, n)] = kop[(m, n)];
            }
        }
    }
    Ok(StinespringIsometry {
        matrix: v,
        dim_a,
        dim_b,
        ancilla_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, max_abs_diff, trace_re};
    use crate::states::{bell, random_density, werner_singlet, WernerParameter};
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_bloch(rng: &mut ChaCha8Rng) -> BlochAngles {
        BlochAngles::new(rng.random::<f64>() * PI, rng.random::<f64>() * TAU).unwrap()
    }

    #[test]
    fn parameter_types_validate_ranges() {
        assert!(MonitoringStrength::new(0.0).is_ok());
        assert!(MonitoringStrength::new(1.0).is_ok());
        assert!(MonitoringStrength::new(-0.01).is_err());
        assert!(MonitoringStrength::new(1.01).is_err());
        assert!(WeakStrength::new(-5.0).is_ok());
        assert!(WeakStrength::new(f64::INFINITY).is_err());
        assert!(BlochAngles::new(PI, 0.0).is_ok());
        assert!(BlochAngles::new(3.2, 0.0).is_err());
        assert!(BlochAngles::new(0.0, TAU).is_err());
    }

    #[test]
    fn bloch_pvm_poles_and_equator() {
        let comp = pvm_from_bloch(BlochAngles::new(0.0, 0.0).unwrap());
        let p0 =
            CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let p1 =
            CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(max_abs_diff(&comp.projectors()[0], &p0) < 1e-15);
        assert!(max_abs_diff(&comp.projectors()[1], &p1) < 1e-15);

        // Antipodal point swaps the projectors.
        let flipped = pvm_from_bloch(BlochAngles::new(PI, 0.0).unwrap());
        assert!(max_abs_diff(&flipped.projectors()[0], &p1) < 1e-15);
        assert!(max_abs_diff(&flipped.projectors()[1], &p0) < 1e-15);

        // Equator: projectors onto (|0> +- |1>)/sqrt(2).
        let eq = pvm_from_bloch(BlochAngles::new(FRAC_PI_2, 0.0).unwrap());
        let pp =
            CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0)]);
        let pm = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.5, 0.0), c(-0.5, 0.0), c(-0.5, 0.0), c(0.5, 0.0)],
        );
        assert!(max_abs_diff(&eq.projectors()[0], &pp) < 1e-15);
        assert!(max_abs_diff(&eq.projectors()[1], &pm) < 1e-15);
    }

    #[test]
    fn bloch_pvm_is_valid_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let pvm = pvm_from_bloch(random_bloch(&mut rng));
            Pvm::new(pvm.projectors().to_vec()).unwrap();
        }
    }

    #[test]
    fn collapse_singlet_anticorrelation() {
        let s = bell(3).unwrap();
        let comp = Pvm::computational(2);
        let (post, p) = collapse(&s, &comp, 0, Side::B).unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-12);
        // A collapses to |1><1|.
        let a = post.reduced(Side::A);
        assert_abs_diff_eq!(a[(1, 1)].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a[(0, 0)].re, 0.0, epsilon = 1e-12);
        // B marginal is the projector itself for rank-1 outcomes.
        let b = post.reduced(Side::B);
        assert!(max_abs_diff(&b, &comp.projectors()[0]) < 1e-12);
    }

    #[test]
    fn collapse_eigenstate_is_fixed_point() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 0)] = c(0.7, 0.0);
        a[(1, 1)] = c(0.3, 0.0);
        let comp = Pvm::computational(2);
        let b0 = comp.projectors()[0].clone();
        let rho = DensityMatrix::new(2, 2, kron(&a, &b0)).unwrap();
        let (post, p) = collapse(&rho, &comp, 0, Side::B).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-12);
        assert!(max_abs_diff(post.matrix(), rho.matrix()) < 1e-12);
    }

    #[test]
    fn collapse_probabilities_complete() {
        let rho = random_density(2, 2, 4, 11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let pvm = pvm_from_bloch(random_bloch(&mut rng));
            let mut total = 0.0;
            for b in 0..pvm.len() {
                let (_, p) = collapse(&rho, &pvm, b, Side::B).unwrap();
                total += p;
            }
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn collapse_rejects_zero_probability_outcome() {
        // |00><00| measured in the computational basis: outcome 1 on B never fires.
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 0)] = Complex64::ONE;
        let rho = DensityMatrix::new(2, 2, m).unwrap();
        let comp = Pvm::computational(2);
        assert!(matches!(
            collapse(&rho, &comp, 1, Side::B),
            Err(QdError::ZeroProbabilityOutcome { .. })
        ));
        assert!(collapse(&rho, &comp, 5, Side::B).is_err());
    }

    #[test]
    fn weak_collapse_limits_and_convergence() {
        let rho = random_density(2, 2, 4, 21).unwrap();
        let pvm = pvm_from_bloch(BlochAngles::new(1.0, 0.5).unwrap());
        let zero = weak_collapse(
            &rho,
            &pvm,
            0,
            MonitoringStrength::new(0.0).unwrap(),
            Side::B,
        )
        .unwrap();
        assert!(max_abs_diff(zero.matrix(), rho.matrix()) < 1e-15);
        let (full_post, _) = collapse(&rho, &pvm, 0, Side::B).unwrap();
        let one = weak_collapse(
            &rho,
            &pvm,
            0,
            MonitoringStrength::new(1.0).unwrap(),
            Side::B,
        )
        .unwrap();
        assert!(max_abs_diff(one.matrix(), full_post.matrix()) < 1e-12);

        // Iterating the weak collapse at fixed (b, eps) approaches the full
        // collapse monotonically.
        let eps = MonitoringStrength::new(0.35).unwrap();
        let mut state = rho.clone();
        let mut prev = f64::INFINITY;
        for _ in 1..=20 {
            state = weak_collapse(&state, &pvm, 0, eps, Side::B).unwrap();
            let dist = max_abs_diff(state.matrix(), full_post.matrix());
            assert!(dist <= prev + 1e-12);
            prev = dist;
        }
        assert!(prev < 0.02);
    }

    #[test]
    fn unrevealed_projective_fixed_point_and_idempotence() {
        // Quantum-classical state is a fixed point of Phi_B in its own basis.
        let comp = Pvm::computational(2);
        let plus = CMatrix::from_fn(2, 2, |_, _| c(0.5, 0.0));
        let qc = crate::states::quantum_classical(
            &[0.5, 0.5],
            &[plus, CMatrix::identity(2, 2).scale(0.5)],
            &comp,
        )
        .unwrap();
        let mapped = unrevealed_projective(&qc, &comp, Side::B).unwrap();
        assert!(max_abs_diff(mapped.matrix(), qc.matrix()) < 1e-12);

        // Phi o Phi = Phi on random states, and the trace is preserved.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for trial in 0..20u64 {
            let rho = random_density(2, 2, 3, 60_000 + trial).unwrap();
            let pvm = pvm_from_bloch(random_bloch(&mut rng));
            let once = unrevealed_projective(&rho, &pvm, Side::B).unwrap();
            let twice = unrevealed_projective(&once, &pvm, Side::B).unwrap();
            assert!(max_abs_diff(once.matrix(), twice.matrix()) < 1e-10);
            assert_abs_diff_eq!(trace_re(once.matrix()), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn unrevealed_projective_singlet_computational() {
        let s = bell(3).unwrap();
        let mapped = unrevealed_projective(&s, &Pvm::computational(2), Side::B).unwrap();
        let mut expected = CMatrix::zeros(4, 4);
        expected[(1, 1)] = c(0.5, 0.0);
        expected[(2, 2)] = c(0.5, 0.0);
        assert!(max_abs_diff(mapped.matrix(), &expected) < 1e-12);
    }

    #[test]
    fn monitoring_limits_and_werner_spectrum() {
        let w = werner_singlet(WernerParameter::new(0.5).unwrap());
        let pvm = pvm_from_bloch(BlochAngles::new(0.9, 4.0).unwrap());
        let at0 = monitoring(&w, &pvm, MonitoringStrength::new(0.0).unwrap(), Side::B).unwrap();
        assert!(max_abs_diff(at0.matrix(), w.matrix()) < 1e-15);
        let at1 = monitoring(&w, &pvm, MonitoringStrength::new(1.0).unwrap(), Side::B).unwrap();
        let phi = unrevealed_projective(&w, &pvm, Side::B).unwrap();
        assert!(max_abs_diff(at1.matrix(), phi.matrix()) < 1e-15);

        // Spectrum of M^eps(rho^mu) at mu = eps = 0.5 is {1/8, 1/8, 1/4, 1/2}
        // for any Bloch PVM (rotational invariance of the singlet).
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..5 {
            let pvm = pvm_from_bloch(random_bloch(&mut rng));
            let m = monitoring(&w, &pvm, MonitoringStrength::new(0.5).unwrap(), Side::B).unwrap();
            let ev = hermitian_eigenvalues(m.matrix()).unwrap();
            let expected = [0.125, 0.125, 0.25, 0.5];
            for (got, want) in ev.iter().zip(expected) {
                assert_abs_diff_eq!(*got, want, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn monitoring_is_non_signaling_both_sides() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for trial in 0..30u64 {
            let rho = random_density(2, 2, 4, 70_000 + trial).unwrap();
            let pvm = pvm_from_bloch(random_bloch(&mut rng));
            let eps = MonitoringStrength::new(rng.random()).unwrap();
            let mb = monitoring(&rho, &pvm, eps, Side::B).unwrap();
            assert!(max_abs_diff(&mb.reduced(Side::A), &rho.reduced(Side::A)) < 1e-10);
            let ma = monitoring(&rho, &pvm, eps, Side::A).unwrap();
            assert!(max_abs_diff(&ma.reduced(Side::B), &rho.reduced(Side::B)) < 1e-10);
        }
    }

    #[test]
    fn monitoring_power_matches_explicit_composition() {
        let rho = random_density(2, 2, 4, 61).unwrap();
        let pvm = pvm_from_bloch(BlochAngles::new(2.0, 1.0).unwrap());
        let eps = MonitoringStrength::new(0.3).unwrap();
        let mut composed = rho.clone();
        for n in 1..=10u32 {
            composed = monitoring(&composed, &pvm, eps, Side::B).unwrap();
            let closed = monitoring_power(&rho, &pvm, eps, n, Side::B).unwrap();
            assert!(
                max_abs_diff(closed.matrix(), composed.matrix()) < 1e-10,
                "n = {n}"
            );
        }
        // n = 0 is the identity; large n approaches the projective limit.
        let zero = monitoring_power(&rho, &pvm, eps, 0, Side::B).unwrap();
        assert!(max_abs_diff(zero.matrix(), rho.matrix()) < 1e-15);
        let deep = monitoring_power(
            &rho,
            &pvm,
            MonitoringStrength::new(0.5).unwrap(),
            50,
            Side::B,
        )
        .unwrap();
        let phi = unrevealed_projective(&rho, &pvm, Side::B).unwrap();
        assert!(max_abs_diff(deep.matrix(), phi.matrix()) < 1e-10);
    }

    #[test]
    fn dichotomic_operators_limits_and_completeness() {
        let comp = Pvm::computational(2);
        // x = 0: both operators are 1/sqrt(2).
        let (p, m) = dichotomic_operators(WeakStrength::new(0.0).unwrap(), &comp).unwrap();
        let half = identity(2).scale(1.0 / 2.0f64.sqrt());
        assert!(max_abs_diff(&p, &half) < 1e-15);
        assert!(max_abs_diff(&m, &half) < 1e-15);
        // Saturation: x = 20 pushes P_+ onto Pi_1 and P_- onto Pi_0.
        let (p, m) = dichotomic_operators(WeakStrength::new(20.0).unwrap(), &comp).unwrap();
        assert!(max_abs_diff(&p, &comp.projectors()[1]) < 1e-8);
        assert!(max_abs_diff(&m, &comp.projectors()[0]) < 1e-8);
        // Completeness P_+^2 + P_-^2 = 1 for arbitrary x and basis.
        let pvm = pvm_from_bloch(BlochAngles::new(1.2, 5.1).unwrap());
        for x in [-3.0, -0.7, 0.0, 0.4, 2.5] {
            let (p, m) = dichotomic_operators(WeakStrength::new(x).unwrap(), &pvm).unwrap();
            let sum = &p * &p + &m * &m;
            assert!(max_abs_diff(&sum, &identity(2)) < 1e-12, "x = {x}");
        }
        // Wrong outcome count.
        assert!(
            dichotomic_operators(WeakStrength::new(1.0).unwrap(), &Pvm::computational(3)).is_err()
        );
    }

    #[test]
    fn dichotomic_channel_equals_monitoring() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for trial in 0..10u64 {
            let rho = random_density(2, 2, 4, 80_000 + trial).unwrap();
            let pvm = pvm_from_bloch(random_bloch(&mut rng));
            for x in [-2.0, -0.5, 0.0, 0.5, 2.0] {
                let lhs =
                    dichotomic_channel(&rho, WeakStrength::new(x).unwrap(), &pvm, Side::B).unwrap();
                let eps = MonitoringStrength::new(1.0 - 1.0 / x.cosh()).unwrap();
                let rhs = monitoring(&rho, &pvm, eps, Side::B).unwrap();
                assert!(
                    max_abs_diff(lhs.matrix(), rhs.matrix()) < 1e-10,
                    "trial {trial}, x = {x}"
                );
            }
        }
        // x = 0 is the identity channel; x = 20 is the projective limit.
        let rho = random_density(2, 2, 4, 81).unwrap();
        let pvm = pvm_from_bloch(BlochAngles::new(0.4, 1.0).unwrap());
        let id = dichotomic_channel(&rho, WeakStrength::new(0.0).unwrap(), &pvm, Side::B).unwrap();
        assert!(max_abs_diff(id.matrix(), rho.matrix()) < 1e-12);
        let sat =
            dichotomic_channel(&rho, WeakStrength::new(20.0).unwrap(), &pvm, Side::B).unwrap();
        let phi = unrevealed_projective(&rho, &pvm, Side::B).unwrap();
        assert!(max_abs_diff(sat.matrix(), phi.matrix()) < 1e-8);
    }

    #[test]
    fn stinespring_isometry_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        for trial in 0..10u64 {
            let rho = random_density(2, 2, 4, 90_000 + trial).unwrap();
            let pvm = pvm_from_bloch(random_bloch(&mut rng));
            let eps = MonitoringStrength::new(rng.random()).unwrap();
            let v = stinespring_dilation(&pvm, eps, (2, 2)).unwrap();
            assert_eq!(v.ancilla_dim(), 3);
            // V^dag V = 1.
            let vtv = v.matrix().adjoint() * v.matrix();
            assert!(max_abs_diff(&vtv, &identity(4)) < 1e-10);
            // Tracing the ancilla reproduces monitoring.
            let channel = v.channel(&rho).unwrap();
            let direct = monitoring(&rho, &pvm, eps, Side::B).unwrap();
            assert!(max_abs_diff(channel.matrix(), direct.matrix()) < 1e-10);
        }
    }

    #[test]
    fn stinespring_endpoint_behavior() {
        let rho = random_density(2, 2, 4, 95).unwrap();
        let pvm = Pvm::computational(2);
        // eps = 0: ancilla stays in |0>, channel is the identity.
        let v0 = stinespring_dilation(&pvm, MonitoringStrength::new(0.0).unwrap(), (2, 2)).unwrap();
        let big = v0.apply(&rho).unwrap();
        let ancilla = crate::linalg::ptrace_a(&big, 4, v0.ancilla_dim());
        assert_abs_diff_eq!(ancilla[(0, 0)].re, 1.0, epsilon = 1e-12);
        assert!(max_abs_diff(v0.channel(&rho).unwrap().matrix(), rho.matrix()) < 1e-12);
        // eps = 1: channel output is the dephased state.
        let v1 = stinespring_dilation(&pvm, MonitoringStrength::new(1.0).unwrap(), (2, 2)).unwrap();
        let phi = unrevealed_projective(&rho, &pvm, Side::B).unwrap();
        assert!(max_abs_diff(v1.channel(&rho).unwrap().matrix(), phi.matrix()) < 1e-12);
    }

    #[test]
    fn maps_accept_higher_rank_pvms() {
        // Coarse-grained PVM {diag(1,1,0), diag(0,0,1)} on a qutrit B side.
        let mut p0 = CMatrix::zeros(3, 3);
        p0[(0, 0)] = Complex64::ONE;
        p0[(1, 1)] = Complex64::ONE;
        let mut p1 = CMatrix::zeros(3, 3);
        p1[(2, 2)] = Complex64::ONE;
        let pvm = Pvm::new(vec![p0, p1]).unwrap();
        let rho = random_density(2, 3, 6, 123).unwrap();
        let eps = MonitoringStrength::new(0.6).unwrap();
        let m = monitoring(&rho, &pvm, eps, Side::B).unwrap();
        assert_abs_diff_eq!(trace_re(m.matrix()), 1.0, epsilon = 1e-12);
        assert!(max_abs_diff(&m.reduced(Side::A), &rho.reduced(Side::A)) < 1e-10);
        m.validate().unwrap();
        // The dichotomic channel also accepts the 2-outcome coarse PVM.
        let d = dichotomic_channel(&rho, WeakStrength::new(0.8).unwrap(), &pvm, Side::B).unwrap();
        let equiv = monitoring(
            &rho,
            &pvm,
            MonitoringStrength::new(1.0 - 1.0 / 0.8f64.cosh()).unwrap(),
            Side::B,
        )
        .unwrap();
        assert!(max_abs_diff(d.matrix(), equiv.matrix()) < 1e-10);
        // Composition law in 2x3.
        let closed = monitoring_power(&rho, &pvm, eps, 3, Side::B).unwrap();
        let mut iter = rho.clone();
        for _ in 0..3 {
            iter = monitoring(&iter, &pvm, eps, Side::B).unwrap();
        }
        assert!(max_abs_diff(closed.matrix(), iter.matrix()) < 1e-10);
    }

    #[test]
    fn side_a_maps_mirror_side_b() {
        let rho = random_density(2, 2, 4, 131).unwrap();
        let pvm = pvm_from_bloch(BlochAngles::new(0.8, 0.3).unwrap());
        // Phi_A on rho equals (swap o Phi_B o swap) with factors exchanged;
        // check the defining sum directly.
        let phi_a = unrevealed_projective(&rho, &pvm, Side::A).unwrap();
        let mut expected = CMatrix::zeros(4, 4);
        for proj in pvm.projectors() {
            let e = kron(proj, &identity(2));
            expected += &e * rho.matrix() * &e;
        }
        assert!(max_abs_diff(phi_a.matrix(), &expected) < 1e-14);
    }
}
