//! Prints the weak quantum discord of Werner states over a (mu, eps) grid,
//! comparing the numerical minimization against the closed form at every
//! point. The right edge (eps = 1) is the ordinary quantum discord; the left
//! edge (eps = 0) is identically zero.
//!
//! Run with: cargo run --release --example weak_discord_surface

use qdiscord::{
    weak_discord, werner_singlet, werner_wqd_closed_form, MonitoringStrength, OptimizerConfig,
    QdError, WernerParameter,
};

fn main() -> Result<(), QdError> {
    let cfg = OptimizerConfig::default();
    let mus: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let epss: Vec<f64> = (0..=5).map(|j| j as f64 / 5.0).collect();

    print!("{:>6}", "mu\\eps");
    for e in &epss {
        print!(" {e:>9.2}");
    }
    println!();

    let mut worst = 0.0f64;
    for &m in &mus {
        let mu = WernerParameter::new(m)?;
        let rho = werner_singlet(mu);
        print!("{m:>6.2}");
        for &e in &epss {
            let eps = MonitoringStrength::new(e)?;
            let numeric = weak_discord(&rho, eps, &cfg)?.value;
            worst = worst.max((numeric - werner_wqd_closed_form(mu, eps)).abs());
            print!(" {numeric:>9.6}");
        }
        println!();
    }

    println!("\nlargest |numeric - closed form| over the grid: {worst:.3e}");
    println!("(values in nats; the eps = 1.0 column is the quantum discord)");
    Ok(())
}
