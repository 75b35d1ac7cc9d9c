//! State factories: the Werner-singlet family and its weak-discord closed
//! form, Bell states, product / quantum-classical / classical-classical
//! constructions, and seeded Ginibre-style random densities.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{QdError, Result};
use crate::info::PROB_TOL;
use crate::linalg::{kron, CMatrix, DensityMatrix, Pvm};

/// Mixing weight mu in [0, 1] of the Werner-singlet family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParameter(f64);

impl WernerParameter {
    pub fn new(mu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(QdError::ParameterRange(format!(
                "Werner parameter must lie in [0, 1], got {mu}"
            )));
        }
        Ok(Self(mu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `rho^mu = (1 - mu) 1/4 + mu |s><s|` with the singlet
/// `|s> = (|01> - |10>)/sqrt(2)`. Spectrum: {(1-mu)/4 three times, (1+3mu)/4};
/// both marginals are maximally mixed.
pub fn werner_singlet(mu: WernerParameter) -> DensityMatrix {
    let m = mu.value();
    let mut out = CMatrix::identity(4, 4).scale((1.0 - m) / 4.0);
    let half = Complex64::new(m / 2.0, 0.0);
    out[(1, 1)] += half;
    out[(2, 2)] += half;
    out[(1, 2)] -= half;
    out[(2, 1)] -= half;
    DensityMatrix::trusted(2, 2, out)
}

/// Closed-form weak quantum discord of `rho^mu` under monitoring strength eps:
/// `(1/4) sum_{i=-1,0,1} sum_{j=0,1} (-1)^j lambda_ij ln(lambda_ij)` with
/// `lambda_ij = 1 + mu [1 + 2 i (1 - j eps)]` and `0 ln 0 = 0`.
///
/// Equivalent 4-term form (the i = 0 terms cancel):
/// `(1/4)[(1-mu)ln(1-mu) + (1+3mu)ln(1+3mu)
///        - (1+3mu-2*mu*eps)ln(1+3mu-2*mu*eps) - (1-mu+2*mu*eps)ln(1-mu+2*mu*eps)]`.
pub fn werner_wqd_closed_form(mu: WernerParameter, eps: crate::maps::MonitoringStrength) -> f64 {
    let m = mu.value();
    let e = eps.value();
    let mut sum = 0.0;
    for i in [-1.0f64, 0.0, 1.0] {
        for (j, sign) in [(0.0f64, 1.0f64), (1.0, -1.0)] {
            let lambda = 1.0 + m * (1.0 + 2.0 * i * (1.0 - j * e));
            sum += sign * crate::info::xlnx(lambda);
        }
    }
    (sum / 4.0).max(0.0)
}

/// The four Bell states, indexed 0..=3:
/// `|Phi+> = (|00> + |11>)/sqrt(2)`, `|Phi-> = (|00> - |11>)/sqrt(2)`,
/// `|Psi+> = (|01> + |10>)/sqrt(2)`, `|Psi-> = (|01> - |10>)/sqrt(2)` (the singlet).
pub fn bell(index: usize) -> Result<DensityMatrix> {
    let inv = 1.0 / 2.0f64.sqrt();
    let amps: [(usize, f64, usize, f64); 4] = [
        (0, inv, 3, inv),
        (0, inv, 3, -inv),
        (1, inv, 2, inv),
        (1, inv, 2, -inv),
    ];
    let (i1, a1, i2, a2) = *amps
        .get(index)
        .ok_or_else(|| QdError::ParameterRange(format!("Bell index must be 0..=3, got {index}")))?;
    let mut ket = [Complex64::ZERO; 4];
    ket[i1] = Complex64::new(a1, 0.0);
    ket[i2] = Complex64::new(a2, 0.0);
    let m = CMatrix::from_fn(4, 4, |r, c| ket[r] * ket[c].conj());
    Ok(DensityMatrix::trusted(2, 2, m))
}

/// Validates a single-system state by viewing it as a 1 x dim bipartition.
fn validate_single(m: &CMatrix, what: &str) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(QdError::DimensionMismatch(format!(
            "{what} must be a square non-empty matrix"
        )));
    }
    DensityMatrix::new(1, m.nrows(), m.clone()).map(|_| ())
}

/// Product state `rho_a (x) rho_b`; both factors are validated as states.
pub fn product(rho_a: &CMatrix, rho_b: &CMatrix) -> Result<DensityMatrix> {
    validate_single(rho_a, "A factor")?;
    validate_single(rho_b, "B factor")?;
    DensityMatrix::new(rho_a.nrows(), rho_b.nrows(), kron(rho_a, rho_b))
}

fn validate_weights(weights: &[f64], expected_len: usize) -> Result<()> {
    if weights.len() != expected_len {
        return Err(QdError::InvalidProbabilities(format!(
            "got {} weights for {expected_len} outcomes",
            weights.len()
        )));
    }
    let mut sum = 0.0;
    for &w in weights {
        if w < 0.0 {
            return Err(QdError::InvalidProbabilities(format!(
                "negative weight {w:.3e}"
            )));
        }
        sum += w;
    }
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(QdError::InvalidProbabilities(format!(
            "weights sum to {sum:.15} instead of 1"
        )));
    }
    Ok(())
}

fn require_rank_one(pvm: &Pvm, what: &str) -> Result<()> {
    for (k, p) in pvm.projectors().iter().enumerate() {
        let tr = crate::linalg::trace_re(p);
        if (tr - 1.0).abs() > crate::linalg::PVM_TOL {
            return Err(QdError::InvalidPvm(format!(
                "{what} projector {k} has rank {tr:.3}; rank-1 required"
            )));
        }
    }
    Ok(())
}

/// Quantum-classical state `sum_b p_b rho_{A|b} (x) B_b` for a rank-1 PVM
/// `{B_b}` on side B. A fixed point of the unrevealed map in the same basis,
/// hence zero discord.
pub fn quantum_classical(
    weights: &[f64],
    a_states: &[CMatrix],
    pvm: &Pvm,
) -> Result<DensityMatrix> {
    validate_weights(weights, pvm.len())?;
    if a_states.len() != pvm.len() {
        return Err(QdError::DimensionMismatch(format!(
            "got {} conditional states for {} outcomes",
            a_states.len(),
            pvm.len()
        )));
    }
    require_rank_one(pvm, "B-side")?;
    let dim_a = a_states
        .first()
        .map(|m| m.nrows())
        .ok_or_else(|| QdError::DimensionMismatch("no conditional states given".into()))?;
    let dim_b = pvm.dim();
    let mut out = CMatrix::zeros(dim_a * dim_b, dim_a * dim_b);
    for ((w, a), proj) in weights.iter().zip(a_states).zip(pvm.projectors()) {
        validate_single(a, "conditional A state")?;
        if a.nrows() != dim_a {
            return Err(QdError::DimensionMismatch(
                "conditional A states have mixed dimensions".into(),
            ));
        }
        out += kron(a, proj).scale(*w);
    }
    DensityMatrix::new(dim_a, dim_b, out)
}

/// Classical-classical state `sum_{a,b} p_{a,b} A_a (x) B_b` over rank-1
/// bases on both sides. A fixed point of both one-sided unrevealed maps,
/// hence zero symmetric discord.
pub fn classical_classical(
    weights: &crate::info::JointDistribution,
    basis_a: &Pvm,
    basis_b: &Pvm,
) -> Result<DensityMatrix> {
    if weights.nx() != basis_a.len() || weights.ny() != basis_b.len() {
        return Err(QdError::DimensionMismatch(format!(
            "{}x{} weights for {}x{} outcome bases",
            weights.nx(),
            weights.ny(),
            basis_a.len(),
            basis_b.len()
        )));
    }
    require_rank_one(basis_a, "A-side")?;
    require_rank_one(basis_b, "B-side")?;
    let (da, db) = (basis_a.dim(), basis_b.dim());
    let mut out = CMatrix::zeros(da * db, da * db);
    for (a, pa) in basis_a.projectors().iter().enumerate() {
        for (b, pb) in basis_b.projectors().iter().enumerate() {
            out += kron(pa, pb).scale(weights.prob(a, b));
        }
    }
    DensityMatrix::new(da, db, out)
}

/// Seeded random density matrix `G G^dag / Tr(G G^dag)` where `G` is a
/// `(dim_a * dim_b) x rank` matrix of independent standard complex normal
/// entries drawn from `ChaCha8Rng::seed_from_u64(seed)`, filled row-major
/// with the real part before the imaginary part. Identical seeds give
/// bit-identical states on every platform.
pub fn random_density(dim_a: usize, dim_b: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let d = dim_a * dim_b;
    if rank == 0 || rank > d {
        return Err(QdError::ParameterRange(format!(
            "rank must lie in 1..={d}, got {rank}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = CMatrix::zeros(d, rank);
    for i in 0..d {
        for j in 0..rank {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            g[(i, j)] = Complex64::new(re, im);
        }
    }
    let gg = &g * g.adjoint();
    let tr = crate::linalg::trace_re(&gg);
    DensityMatrix::new(dim_a, dim_b, gg.scale(1.0 / tr))
}

/// Single-system variant of [`random_density`].
pub fn random_single(dim: usize, rank: usize, seed: u64) -> Result<CMatrix> {
    Ok(random_density(1, dim, rank, seed)?.matrix().clone())
}

/// Parsed form of the CLI state mini-language. See [`StateSpec::parse`] for
/// the grammar.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Werner {
        mu: f64,
    },
    Bell {
        index: usize,
    },
    Random {
        dim_a: usize,
        dim_b: usize,
        rank: usize,
        seed: u64,
    },
    Product {
        dim_a: usize,
        dim_b: usize,
        rank_a: usize,
        rank_b: usize,
        seed: u64,
    },
    QuantumClassical {
        dim_a: usize,
        seed: u64,
    },
    ClassicalClassical {
        dim_a: usize,
        dim_b: usize,
        seed: u64,
    },
}

impl StateSpec {
    /// Grammar: `kind:key=value,key=value,...` with kinds
    ///
    /// - `werner:mu=0.5`
    /// - `bell:index=0` (0..=3: Phi+, Phi-, Psi+, Psi-)
    /// - `random:dA=2,dB=2,rank=4,seed=42` (defaults dA=2, dB=2, rank=dA*dB, seed=0)
    /// - `product:dA=2,dB=2,rankA=2,rankB=2,seed=0` (factor A seeded with `seed`, factor B with `seed+1`)
    /// - `quantum_classical:dA=2,seed=0` (alias `qc`; computational PVM on B,
    ///   weights from `seed`, conditional state b from `seed + 1 + b`)
    /// - `classical_classical:dA=2,dB=2,seed=0` (alias `cc`; computational bases,
    ///   joint weights from `seed`)
    pub fn parse(spec: &str) -> Result<Self> {
        let err = |reason: &str| QdError::SpecParse {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (kind, rest) = match spec.split_once(':') {
            Some((k, r)) => (k, r),
            None => (spec, ""),
        };
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        if !rest.is_empty() {
            for item in rest.split(',') {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| err(&format!("expected key=value, got `{item}`")))?;
                pairs.push((k.trim(), v.trim()));
            }
        }
        let mut take = |key: &str| -> Option<&str> {
            pairs
                .iter()
                .position(|(k, _)| *k == key)
                .map(|i| pairs.remove(i).1)
        };
        fn num<T: std::str::FromStr>(
            spec: &str,
            key: &str,
            raw: Option<&str>,
            default: T,
        ) -> Result<T> {
            match raw {
                None => Ok(default),
                Some(s) => s.parse().map_err(|_| QdError::SpecParse {
                    spec: spec.to_string(),
                    reason: format!("could not parse {key}=`{s}` as a number"),
                }),
            }
        }
        let parsed = match kind {
            "werner" => {
                let mu_raw = take("mu").ok_or_else(|| err("werner needs mu=..."))?;
                StateSpec::Werner {
                    mu: num(spec, "mu", Some(mu_raw), 0.0)?,
                }
            }
            "bell" => {
                let idx = take("index").ok_or_else(|| err("bell needs index=..."))?;
                StateSpec::Bell {
                    index: num(spec, "index", Some(idx), 0)?,
                }
            }
            "random" => {
                let dim_a = num(spec, "dA", take("dA"), 2)?;
                let dim_b = num(spec, "dB", take("dB"), 2)?;
                StateSpec::Random {
                    dim_a,
                    dim_b,
                    rank: num(spec, "rank", take("rank"), dim_a * dim_b)?,
                    seed: num(spec, "seed", take("seed"), 0)?,
                }
            }
            "product" => {
                let dim_a = num(spec, "dA", take("dA"), 2)?;
                let dim_b = num(spec, "dB", take("dB"), 2)?;
                StateSpec::Product {
                    dim_a,
                    dim_b,
                    rank_a: num(spec, "rankA", take("rankA"), dim_a)?,
                    rank_b: num(spec, "rankB", take("rankB"), dim_b)?,
                    seed: num(spec, "seed", take("seed"), 0)?,
                }
            }
            "quantum_classical" | "qc" => StateSpec::QuantumClassical {
                dim_a: num(spec, "dA", take("dA"), 2)?,
                seed: num(spec, "seed", take("seed"), 0)?,
            },
            "classical_classical" | "cc" => StateSpec::ClassicalClassical {
                dim_a: num(spec, "dA", take("dA"), 2)?,
                dim_b: num(spec, "dB", take("dB"), 2)?,
                seed: num(spec, "seed", take("seed"), 0)?,
            },
            other => return Err(err(&format!("unknown state kind `{other}`"))),
        };
        if let Some((k, _)) = pairs.first() {
            return Err(err(&format!("unknown key `{k}` for kind `{kind}`")));
        }
        Ok(parsed)
    }

    /// Materializes the spec into a validated state.
    pub fn build(&self) -> Result<DensityMatrix> {
        match *self {
            StateSpec::Werner { mu } => Ok(werner_singlet(WernerParameter::new(mu)?)),
            StateSpec::Bell { index } => bell(index),
            StateSpec::Random {
                dim_a,
                dim_b,
                rank,
                seed,
            } => random_density(dim_a, dim_b, rank, seed),
            StateSpec::Product {
                dim_a,
                dim_b,
                rank_a,
                rank_b,
                seed,
            } => {
                let a = random_single(dim_a, rank_a, seed)?;
                let b = random_single(dim_b, rank_b, seed.wrapping_add(1))?;
                product(&a, &b)
            }
            StateSpec::QuantumClassical { dim_a, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let w0 = 0.05 + 0.9 * rng.random::<f64>();
                let a_states = [
                    random_single(dim_a, dim_a, seed.wrapping_add(1))?,
                    random_single(dim_a, dim_a, seed.wrapping_add(2))?,
                ];
                quantum_classical(&[w0, 1.0 - w0], &a_states, &Pvm::computational(2))
            }
            StateSpec::ClassicalClassical { dim_a, dim_b, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut w: Vec<f64> = (0..dim_a * dim_b).map(|_| rng.random::<f64>()).collect();
                let sum: f64 = w.iter().sum();
                for v in &mut w {
                    *v /= sum;
                }
                let resid: f64 = 1.0 - w.iter().sum::<f64>();
                w[0] += resid;
                let joint = crate::info::JointDistribution::new(dim_a, dim_b, w)?;
                classical_classical(
                    &joint,
                    &Pvm::computational(dim_a),
                    &Pvm::computational(dim_b),
                )
            }
        }
    }
}

impl std::str::FromStr for StateSpec {
    type Err = QdError;

    fn from_str(s: &str) -> Result<Self> {
        StateSpec::parse(s)
    }
}
