//! Discord-like quantum correlation quantifiers under weak measurements.
//!
//! This crate computes how much of the correlation in a bipartite quantum
//! state is disturbed by measuring one side -- and how that loss interpolates
//! between "no measurement" and a full projective readout. Besides the
//! standard quantum discord it implements monitoring maps (weak unrevealed
//! measurements of strength `eps`), the weak quantum discord built on them,
//! the super quantum discord from dichotomic weak operators, a
//! weak-collapse-based candidate that fails to vanish for vanishing
//! strength, and two-sided (symmetric) versions of the discords.
//!
//! # Quick start
//!
//! ```
//! use qdiscord::{
//!     discord, weak_discord, werner_singlet, werner_wqd_closed_form,
//!     MonitoringStrength, OptimizerConfig, WernerParameter,
//! };
//!
//! let mu = WernerParameter::new(0.5)?;
//! let eps = MonitoringStrength::new(0.5)?;
//! let rho = werner_singlet(mu);
//! let cfg = OptimizerConfig::default();
//!
//! let wqd = weak_discord(&rho, eps, &cfg)?;
//! assert!((wqd.value - werner_wqd_closed_form(mu, eps)).abs() < 1e-6);
//!
//! let qd = discord(&rho, &cfg)?;
//! assert!(wqd.value <= qd.value + 1e-9);
//! # Ok::<(), qdiscord::QdError>(())
//! ```
//!
//! Entropies are natural-log throughout; divide by `ln 2` for bits.
//!
//! The `examples/` directory walks through each capability: start with
//! `discord_basics`, then `monitoring_maps` and `weak_discord_surface`.

pub mod cli;
pub mod error;
pub mod info;
pub mod linalg;
pub mod maps;
pub mod optimize;
pub mod quantifiers;
pub mod states;
pub mod verify;

pub use error::{QdError, Result};
pub use info::{
    classical_mutual_info_i, classical_mutual_info_j, mutual_info_gap, quantum_mutual_info,
    shannon_entropy, von_neumann_entropy, JointDistribution,
};
pub use linalg::{
    identity, kron, max_abs_diff, ptrace_a, ptrace_b, CMatrix, DensityMatrix, Pvm, Side,
    MAX_TOTAL_DIM,
};
pub use maps::{
    collapse, dichotomic_channel, dichotomic_operators, monitoring, monitoring_power,
    pvm_from_bloch, stinespring_dilation, unrevealed_projective, weak_collapse, BlochAngles,
    MonitoringStrength, StinespringIsometry, WeakStrength,
};
pub use optimize::{OptimizerConfig, OptimizerDiagnostics};
pub use quantifiers::{
    classical_correlations, conditional_entropy_term, discord, discord_fixed,
    interpretation_decomposition, super_discord, sym_discord, sym_weak_discord,
    weak_collapse_discord, weak_discord, weak_discord_fixed, InterpretationDecomposition,
    QuantifierResult,
};
pub use states::{
    bell, classical_classical, product, quantum_classical, random_density, random_single,
    werner_singlet, werner_wqd_closed_form, StateSpec, WernerParameter,
};
pub use verify::{run_suite, PropertyResult, Suite, SuiteReport};
