//! Two local channels acting on both halves of an entangled pair.

use kraus_entanglement::channels::{amplitude_damping, dephasing};
use kraus_entanglement::fourqubit::{
    all_bipartition_tangles, correspondence_check, evolve4, genuine_conditions, residual,
};
use kraus_entanglement::TwoQubitPure;

fn main() -> kraus_entanglement::Result<()> {
    let kp = amplitude_damping(0.3)?;
    let kp_prime = dephasing(0.6)?;
    let psi0 = TwoQubitPure::bell();
    let s = evolve4(&kp, &kp_prime, &psi0);
    println!("{}", correspondence_check(&kp, &kp_prime, &psi0)?);
    for (q, name) in ["S'", "S", "E", "E'"].iter().enumerate() {
        println!("residual R_{name} = {:.6}", residual(&s, q)?);
    }
    println!("bipartitions {:?}", all_bipartition_tangles(&s));
    println!("{:?}", genuine_conditions(&kp, &kp_prime, 1e-9).guarantee);
    Ok(())
}
