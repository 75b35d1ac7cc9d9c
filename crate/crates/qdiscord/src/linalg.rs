//! Complex linear algebra over bipartite Hilbert spaces.
//!
//! Everything downstream works with dense `DMatrix<Complex64>` storage in the
//! computational basis. Composite indices follow the A-then-B convention: the
//! basis vector `|a>|b>` sits at row `a * dim_b + b`, matching row-major
//! Kronecker products.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QdError, Result};

/// Dense complex matrix used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;

/// Entrywise tolerance for Hermiticity checks.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Tolerance on |Tr(rho) - 1|.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues of a state may undershoot zero by at most this much; anything
/// in `[-PSD_TOL, 0)` is treated as exactly zero.
pub const PSD_TOL: f64 = 1e-10;
/// Entrywise tolerance for PVM completeness and orthogonality checks.
pub const PVM_TOL: f64 = 1e-10;
/// Largest supported total Hilbert-space dimension.
pub const MAX_TOTAL_DIM: usize = 64;

/// One of the two tensor factors of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Kronecker product `a (x) b` in the row-major A-then-B convention.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Embeds a single-side operator into the composite space:
/// `op (x) 1_B` for side A, `1_A (x) op` for side B.
pub fn embed(op: &CMatrix, side: Side, dim_a: usize, dim_b: usize) -> Result<CMatrix> {
    let expected = match side {
        Side::A => dim_a,
        Side::B => dim_b,
    };
    if op.nrows() != expected || op.ncols() != expected {
        return Err(QdError::DimensionMismatch(format!(
            "operator is {}x{} but side {side} has dimension {expected}",
            op.nrows(),
            op.ncols()
        )));
    }
    Ok(match side {
        Side::A => kron(op, &identity(dim_b)),
        Side::B => kron(&identity(dim_a), op),
    })
}

/// Real part of the trace. The imaginary part is discarded; callers use this
/// on (products of) Hermitian matrices where the trace is real up to noise.
pub fn trace_re(m: &CMatrix) -> f64 {
    m.diagonal().iter().map(|z| z.re).sum()
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entrywise modulus of `m - m^dag`.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let adj = m.adjoint();
    max_abs_diff(m, &adj)
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
///
/// The input is checked against [`HERMITICITY_TOL`] and then symmetrized as
/// `(m + m^dag)/2` before the solve, so roundoff in the input cannot leak
/// imaginary parts into the spectrum.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(QdError::DimensionMismatch(format!(
            "eigenvalues of a non-square {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let dev = hermiticity_deviation(m);
    if dev > HERMITICITY_TOL {
        return Err(QdError::NotHermitian { deviation: dev });
    }
    Ok(hermitian_eigenvalues_unchecked(m))
}

/// Same as [`hermitian_eigenvalues`] but skips the Hermiticity check; used on
/// hot paths where the input is Hermitian by construction.
pub(crate) fn hermitian_eigenvalues_unchecked(m: &CMatrix) -> Vec<f64> {
    let sym = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Partial trace over subsystem B of a `(dim_a * dim_b)`-dimensional operator.
pub fn ptrace_b(m: &CMatrix, dim_a: usize, dim_b: usize) -> CMatrix {
    debug_assert_eq!(m.nrows(), dim_a * dim_b);
    let mut out = CMatrix::zeros(dim_a, dim_a);
    for a in 0..dim_a {
        for ap in 0..dim_a {
            let mut s = Complex64::ZERO;
            for b in 0..dim_b {
                s += m[(a * dim_b + b, ap * dim_b + b)];
            }
            out[(a, ap)] = s;
        }
    }
    out
}

/// Partial trace over subsystem A of a `(dim_a * dim_b)`-dimensional operator.
pub fn ptrace_a(m: &CMatrix, dim_a: usize, dim_b: usize) -> CMatrix {
    debug_assert_eq!(m.nrows(), dim_a * dim_b);
    let mut out = CMatrix::zeros(dim_b, dim_b);
    for b in 0..dim_b {
        for bp in 0..dim_b {
            let mut s = Complex64::ZERO;
            for a in 0..dim_a {
                s += m[(a * dim_b + b, a * dim_b + bp)];
            }
            out[(b, bp)] = s;
        }
    }
    out
}

/// A validated bipartite density matrix.
///
/// Construction enforces Hermiticity, unit trace and positive semidefiniteness
/// at the tolerances above, plus the [`MAX_TOTAL_DIM`] cap. Channel outputs
/// inside the crate use a trusted constructor (validity is preserved exactly
/// by the maps), so the eigensolve cost is paid once per input state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(dim_a: usize, dim_b: usize, matrix: CMatrix) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(QdError::DimensionMismatch(
                "subsystem dimensions must be at least 1".into(),
            ));
        }
        let total = dim_a * dim_b;
        if total > MAX_TOTAL_DIM {
            return Err(QdError::DimensionTooLarge(total));
        }
        if matrix.nrows() != total || matrix.ncols() != total {
            return Err(QdError::DimensionMismatch(format!(
                "matrix is {}x{} but dim_a * dim_b = {total}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let dev = hermiticity_deviation(&matrix);
        if dev > HERMITICITY_TOL {
            return Err(QdError::NotHermitian { deviation: dev });
        }
        let tr = matrix.diagonal().iter().sum::<Complex64>();
        if (tr - Complex64::ONE).norm() > TRACE_TOL {
            return Err(QdError::NotUnitTrace { trace: tr.re });
        }
        let ev = hermitian_eigenvalues_unchecked(&matrix);
        if let Some(&min) = ev.first() {
            if min < -PSD_TOL {
                return Err(QdError::NotPositive {
                    min_eigenvalue: min,
                });
            }
        }
        Ok(Self {
            dim_a,
            dim_b,
            matrix,
        })
    }

    /// Constructor for matrices that are valid states by construction
    /// (convex mixtures and PVM conjugations of validated states).
    pub(crate) fn trusted(dim_a: usize, dim_b: usize, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), dim_a * dim_b);
        Self {
            dim_a,
            dim_b,
            matrix,
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn total_dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Re-runs the constructor checks; useful after long map compositions.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.dim_a, self.dim_b, self.matrix.clone()).map(|_| ())
    }

    /// Traces out the given side, returning the other side's reduced operator.
    pub fn trace_out(&self, side: Side) -> CMatrix {
        match side {
            Side::A => ptrace_a(&self.matrix, self.dim_a, self.dim_b),
            Side::B => ptrace_b(&self.matrix, self.dim_a, self.dim_b),
        }
    }

    /// Reduced state of the given side (traces out the other one).
    pub fn reduced(&self, side: Side) -> CMatrix {
        self.trace_out(side.other())
    }

    /// Spectrum sorted ascending. Eigenvalues in `[-PSD_TOL, 0)` are clipped
    /// to zero so entropies never see spurious negatives.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues_unchecked(&self.matrix)
            .into_iter()
            .map(|v| if (-PSD_TOL..0.0).contains(&v) { 0.0 } else { v })
            .collect()
    }

    pub fn dim_of(&self, side: Side) -> usize {
        match side {
            Side::A => self.dim_a,
            Side::B => self.dim_b,
        }
    }
}

/// A projective measurement: complete set of mutually orthogonal projectors.
#[derive(Debug, Clone)]
pub struct Pvm {
    dim: usize,
    projectors: Vec<CMatrix>,
}

impl Pvm {
    /// Validates completeness (`sum_k P_k = 1`) and orthogonal idempotence
    /// (`P_j P_k = delta_jk P_k`), both entrywise within [`PVM_TOL`].
    pub fn new(projectors: Vec<CMatrix>) -> Result<Self> {
        let dim = match projectors.first() {
            Some(p) => p.nrows(),
            None => return Err(QdError::InvalidPvm("no projectors given".into())),
        };
        for (k, p) in projectors.iter().enumerate() {
            if p.nrows() != dim || p.ncols() != dim {
                return Err(QdError::InvalidPvm(format!(
                    "projector {k} is {}x{}, expected {dim}x{dim}",
                    p.nrows(),
                    p.ncols()
                )));
            }
        }
        let sum = projectors
            .iter()
            .fold(CMatrix::zeros(dim, dim), |acc, p| acc + p);
        let dev = max_abs_diff(&sum, &identity(dim));
        if dev > PVM_TOL {
            return Err(QdError::InvalidPvm(format!(
                "projectors do not sum to the identity (max deviation {dev:.3e})"
            )));
        }
        for (j, pj) in projectors.iter().enumerate() {
            for (k, pk) in projectors.iter().enumerate() {
                let prod = pj * pk;
                let target = if j == k {
                    pk.clone()
                } else {
                    CMatrix::zeros(dim, dim)
                };
                let dev = max_abs_diff(&prod, &target);
                if dev > PVM_TOL {
                    return Err(QdError::InvalidPvm(format!(
                        "P_{j} P_{k} deviates from orthogonal idempotence by {dev:.3e}"
                    )));
                }
            }
        }
        Ok(Self { dim, projectors })
    }

    /// Rank-1 projectors onto the computational basis of dimension `dim`.
    pub fn computational(dim: usize) -> Self {
        let projectors = (0..dim)
            .map(|k| {
                let mut p = CMatrix::zeros(dim, dim);
                p[(k, k)] = Complex64::ONE;
                p
            })
            .collect();
        Self { dim, projectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }
}
