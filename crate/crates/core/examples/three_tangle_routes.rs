//! Computes the 3-tangle of an evolved state three ways.

use kraus_entanglement::channels::evolved_coeffs;
use kraus_entanglement::oracle::evolve3;
use kraus_entanglement::oracle::random::{self, seeded};
use kraus_entanglement::tangle::{three_tangle_direct, three_tangle_kraus, three_tangle_simplified};
use kraus_entanglement::ThreeQubitPure;

fn main() -> kraus_entanglement::Result<()> {
    println!("GHZ tau = {}", three_tangle_direct(&ThreeQubitPure::ghz()));
    println!("W   tau = {}", three_tangle_direct(&ThreeQubitPure::w()));
    for i in 0..5 {
        let mut rng = seeded(1, i);
        let kp = random::kraus_pair(&mut rng);
        let r0 = random::initial_reduced(&mut rng);
        let psi0 = r0.purification();
        let state = ThreeQubitPure::try_from(&evolve3(&kp, &psi0))?;
        let (c0, c1) = evolved_coeffs(&kp, &psi0);
        println!(
            "instance {i}: direct {:.15}  coefficients {:.15}  kraus {:.15}",
            three_tangle_direct(&state),
            three_tangle_simplified(&c0, &c1),
            three_tangle_kraus(&kp, r0.e0sq())?
        );
    }
    Ok(())
}
