//! Walks through the monitoring map M^eps = (1-eps) rho + eps Phi_B(rho):
//! interpolation between identity and projective dephasing, the closed-form
//! composition law, and how the dephasing absorbs any prior monitoring.
//!
//! Run with: cargo run --release --example monitoring_maps

use qdiscord::{
    max_abs_diff, monitoring, monitoring_power, pvm_from_bloch, unrevealed_projective,
    von_neumann_entropy, werner_singlet, BlochAngles, MonitoringStrength, QdError, Side,
    WernerParameter,
};

fn main() -> Result<(), QdError> {
    let rho = werner_singlet(WernerParameter::new(0.5)?);
    let pvm = pvm_from_bloch(BlochAngles::new(0.0, 0.0)?);

    println!("Werner state mu = 0.5, monitored in the computational basis on B\n");
    println!(
        "{:>6} {:>14} {:>16}",
        "eps", "S(M^eps(rho))", "dist to Phi_B(rho)"
    );
    let dephased = unrevealed_projective(&rho, &pvm, Side::B)?;
    for i in 0..=5 {
        let eps = MonitoringStrength::new(i as f64 / 5.0)?;
        let m = monitoring(&rho, &pvm, eps, Side::B)?;
        println!(
            "{:>6.2} {:>14.9} {:>16.9}",
            eps.value(),
            von_neumann_entropy(m.matrix())?,
            max_abs_diff(m.matrix(), dephased.matrix())
        );
    }

    // Composition: applying M^eps n times equals a single monitoring of
    // strength 1 - (1-eps)^n.
    let eps = MonitoringStrength::new(0.3)?;
    let mut repeated = rho.clone();
    for _ in 0..4 {
        repeated = monitoring(&repeated, &pvm, eps, Side::B)?;
    }
    let closed = monitoring_power(&rho, &pvm, eps, 4, Side::B)?;
    println!(
        "\nfour passes at eps = 0.3 vs closed form (effective eps = {:.6}): max diff {:.3e}",
        1.0 - (1.0 - 0.3f64).powi(4),
        max_abs_diff(repeated.matrix(), closed.matrix())
    );

    // Absorption: a projective pass erases all memory of earlier weak passes.
    let after_weak = unrevealed_projective(&repeated, &pvm, Side::B)?;
    println!(
        "projective pass after the weak passes vs straight dephasing: max diff {:.3e}",
        max_abs_diff(after_weak.matrix(), dephased.matrix())
    );

    // Weak passes accumulate: infinitely many weak measurements converge to
    // the projective limit even for tiny eps.
    let tiny = MonitoringStrength::new(0.02)?;
    println!("\nconvergence of [M^0.02]^n to the projective limit:");
    for n in [1u32, 10, 50, 200, 1000] {
        let m = monitoring_power(&rho, &pvm, tiny, n, Side::B)?;
        println!(
            "  n = {n:>5}: distance {:.6e}",
            max_abs_diff(m.matrix(), dephased.matrix())
        );
    }
    Ok(())
}
