//! Contrasts the two historical weak-measurement discords on a Werner state:
//! the super quantum discord *grows* beyond the total mutual information as
//! the measurement weakens, and the weak-collapse variant freezes at
//! S(rho_B) -- neither vanishes when the measurement switches off, which is
//! what motivates the monitoring-based weak quantum discord.
//!
//! Run with: cargo run --release --example super_discord_anomaly

use qdiscord::{
    discord, quantum_mutual_info, super_discord, von_neumann_entropy, weak_collapse_discord,
    weak_discord, werner_singlet, MonitoringStrength, OptimizerConfig, QdError, Side, WeakStrength,
    WernerParameter,
};

fn main() -> Result<(), QdError> {
    let cfg = OptimizerConfig::default();
    let rho = werner_singlet(WernerParameter::new(0.5)?);
    let i = quantum_mutual_info(&rho);
    let qd = discord(&rho, &cfg)?.value;
    let sb = von_neumann_entropy(&rho.reduced(Side::B))?;

    println!("Werner state mu = 0.5:");
    println!("  I(rho)    = {i:.9}");
    println!("  discord   = {qd:.9}");
    println!("  S(rho_B)  = {sb:.9}\n");

    println!("super quantum discord vs measurement strength x:");
    println!("{:>6} {:>12}   note", "x", "SQD");
    for x in [0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 20.0] {
        let sqd = super_discord(&rho, WeakStrength::new(x)?, &cfg)?.value;
        let note = if x == 0.0 {
            "= I(rho): weakest limit keeps *all* mutual information"
        } else if x >= 20.0 {
            "~ discord: projective limit"
        } else {
            ""
        };
        println!("{x:>6.2} {sqd:>12.9}   {note}");
    }

    println!("\nweak-collapse discord vs monitoring-based weak discord:");
    println!("{:>8} {:>12} {:>12}", "eps", "frakD", "WQD");
    for e in [1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 1.0] {
        let eps = MonitoringStrength::new(e)?;
        let frakd = weak_collapse_discord(&rho, eps, &cfg)?.value;
        let wqd = weak_discord(&rho, eps, &cfg)?.value;
        println!("{e:>8.3} {frakd:>12.9} {wqd:>12.9}");
    }
    println!("\nfrakD -> S(rho_B) = ln 2 as eps -> 0, while WQD -> 0;");
    println!("both recover the discord {qd:.9} at eps = 1.");
    Ok(())
}
