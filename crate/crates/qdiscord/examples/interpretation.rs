//! What the weak quantum discord *means*: a projective measurement would
//! destroy a fixed amount of quantum correlation; after a weak pass of
//! strength eps, part of that amount is still intact. The weak discord is
//! exactly the destroyed-so-far piece:
//!
//!   WQD_eps = [I(rho) - I(Phi(rho))] - [I(M^eps(rho)) - I(Phi(M^eps(rho)))]
//!             \_______destroyed______/ \____________surviving____________/
//!
//! Run with: cargo run --release --example interpretation

use qdiscord::{
    interpretation_decomposition, weak_discord, werner_singlet, MonitoringStrength,
    OptimizerConfig, QdError, WernerParameter,
};

fn main() -> Result<(), QdError> {
    let cfg = OptimizerConfig::default();
    let rho = werner_singlet(WernerParameter::new(0.6)?);

    println!("Werner state mu = 0.6, optimal monitoring basis at each eps\n");
    println!(
        "{:>6} {:>14} {:>12} {:>12} {:>12}",
        "eps", "destroyed", "surviving", "difference", "wqd"
    );
    for i in 0..=8 {
        let e = i as f64 / 8.0;
        let eps = MonitoringStrength::new(e)?;
        let dec = interpretation_decomposition(&rho, eps, &cfg)?;
        let wqd = weak_discord(&rho, eps, &cfg)?.value;
        println!(
            "{e:>6.3} {:>14.9} {:>12.9} {:>12.9} {:>12.9}",
            dec.destroyed_total, dec.surviving, dec.difference, wqd
        );
    }

    println!("\nthe total destroyed column is flat (it only depends on the basis),");
    println!("the surviving share shrinks with eps, and their difference tracks");
    println!("the weak discord to machine precision at every strength.");
    Ok(())
}
