//! Sorts channels into GHZ, W and biseparable families from their Kraus pairs.

use kraus_entanglement::channels::{amplitude_damping, dephasing, kraus_from_unitary};
use kraus_entanglement::classify::classify;
use kraus_entanglement::oracle::random::{self, seeded};
use kraus_entanglement::{CMat4, InitialReduced, KrausPair};

fn main() -> kraus_entanglement::Result<()> {
    let r0 = InitialReduced::from_e0sq(0.5, 0.0, 0.7)?;
    let mut rng = seeded(7, 0);
    let cases: Vec<(&str, KrausPair)> = vec![
        ("identity", KrausPair::identity()),
        ("amplitude damping 0.3", amplitude_damping(0.3)?),
        ("dephasing 0.3", dephasing(0.3)?),
        ("CNOT", kraus_from_unitary(&CMat4::cnot())?),
        ("Haar random", random::kraus_pair(&mut rng)),
        ("dressed damping", random::w_class_pair(&mut rng)),
        ("damping at 1e-10", amplitude_damping(1e-10)?),
    ];
    for (name, kp) in cases {
        let c = classify(&kp, &r0, 1e-9)?;
        println!("{name:<22} {:<28} {}", c.label.as_str(), c.tier.as_str());
    }
    Ok(())
}
