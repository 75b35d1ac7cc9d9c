//! Realizes B-side monitoring as a unitary interaction with an ancilla: the
//! Stinespring isometry V maps the system into system (x) ancilla, and
//! discarding the ancilla reproduces M^eps exactly. The example checks the
//! isometry property, the channel match, and shows how much entropy the
//! ancilla carries away as the coupling strengthens.
//!
//! Run with: cargo run --release --example stinespring

use qdiscord::{
    identity, max_abs_diff, monitoring, pvm_from_bloch, stinespring_dilation, von_neumann_entropy,
    werner_singlet, BlochAngles, MonitoringStrength, QdError, Side, WernerParameter,
};

fn main() -> Result<(), QdError> {
    let rho = werner_singlet(WernerParameter::new(0.5)?);
    let pvm = pvm_from_bloch(BlochAngles::new(1.0, 0.5)?);

    println!("dilating B-side monitoring of a Werner state (mu = 0.5)\n");
    println!(
        "{:>6} {:>12} {:>14} {:>16}",
        "eps", "V\u{2020}V dev", "channel dev", "ancilla entropy"
    );
    for e in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let eps = MonitoringStrength::new(e)?;
        let v = stinespring_dilation(&pvm, eps, (rho.dim_a(), rho.dim_b()))?;

        let gram = v.matrix().adjoint() * v.matrix();
        let isometry_dev = max_abs_diff(&gram, &identity(rho.total_dim()));

        let via_dilation = v.channel(&rho)?;
        let direct = monitoring(&rho, &pvm, eps, Side::B)?;
        let channel_dev = max_abs_diff(via_dilation.matrix(), direct.matrix());

        // The ancilla's reduced state: trace out the 4-dimensional system
        // from V rho V^dag, leaving the (1 + |pvm|)-dimensional probe.
        let big = v.apply(&rho)?;
        let ancilla = qdiscord::ptrace_a(&big, rho.total_dim(), v.ancilla_dim());
        let s_ancilla = von_neumann_entropy(&ancilla)?;

        println!("{e:>6.2} {isometry_dev:>12.3e} {channel_dev:>14.3e} {s_ancilla:>16.9}");
    }

    println!("\nat eps = 0 the probe stays in |0> (zero entropy, nothing learned);");
    println!("stronger coupling moves more information into the probe.");
    Ok(())
}
