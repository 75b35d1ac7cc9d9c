//! Tour of the state constructors and the spec-string grammar the CLI uses.
//! Every builder validates Hermiticity, unit trace, and positivity, so a
//! successfully constructed `DensityMatrix` is always a physical state.
//!
//! Run with: cargo run --release --example state_zoo

use qdiscord::{
    classical_classical, discord, product, quantum_mutual_info, random_single, JointDistribution,
    OptimizerConfig, Pvm, QdError, StateSpec,
};

fn main() -> Result<(), QdError> {
    let cfg = OptimizerConfig::default();

    println!("spec strings accepted by StateSpec::parse (and the CLI --state flag):\n");
    let specs = [
        "werner:mu=0.5",
        "bell:index=0",
        "random:dA=2,dB=2,rank=3,seed=42",
        "random:seed=7",
        "product:dA=2,dB=2,rankA=1,seed=1",
        "qc:seed=5",
        "cc:dA=2,dB=2,seed=9",
    ];
    println!(
        "{:<40} {:>7} {:>10} {:>10}",
        "spec", "dims", "I(rho)", "discord"
    );
    for spec in specs {
        let rho = StateSpec::parse(spec)?.build()?;
        let i = quantum_mutual_info(&rho);
        let d = discord(&rho, &cfg)?.value;
        println!(
            "{spec:<40} {:>7} {i:>10.6} {d:>10.6}",
            format!("{}x{}", rho.dim_a(), rho.dim_b())
        );
    }

    // The same structures are available programmatically.
    println!("\nbuilt directly:");
    let p = product(&random_single(2, 1, 3)?, &random_single(2, 2, 4)?)?;
    println!(
        "  pure (x) mixed product: I = {:.2e} (uncorrelated)",
        quantum_mutual_info(&p)
    );

    let perfectly_correlated = JointDistribution::new(2, 2, vec![0.5, 0.0, 0.0, 0.5])?;
    let cc = classical_classical(
        &perfectly_correlated,
        &Pvm::computational(2),
        &Pvm::computational(2),
    )?;
    println!(
        "  correlated classical bits: I = {:.6} = ln 2, discord = {:.2e}",
        quantum_mutual_info(&cc),
        discord(&cc, &cfg)?.value
    );
    Ok(())
}
