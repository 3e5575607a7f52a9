//! Builds the three textbook channels and a channel read off a two-qubit unitary.

use kraus_entanglement::channels::{amplitude_damping, dephasing, kraus_from_unitary, phase_flip};
use kraus_entanglement::{CMat4, KrausPair};

fn describe(name: &str, kp: &KrausPair) {
    println!(
        "{name:<18} det(K0K1) = {:+.4}  g^2 = {:+.4}  gap = {:.4}",
        kp.det_product(),
        kp.mixed_det_sq(),
        kp.ghz_gap()
    );
}

fn main() -> kraus_entanglement::Result<()> {
    for p in [0.0, 0.25, 0.5, 1.0] {
        println!("p = {p}");
        describe("amplitude damping", &amplitude_damping(p)?);
        describe("dephasing", &dephasing(p)?);
        describe("phase flip", &phase_flip(p)?);
    }
    let cnot = kraus_from_unitary(&CMat4::cnot())?;
    describe("CNOT on S,E", &cnot);
    println!("dilation unitarity residual {:.2e}", cnot.dilation().unitarity_residual());
    Ok(())
}
