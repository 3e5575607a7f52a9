//! Brute-force concurrences of two-qubit marginals by the spectral and the
//! ensemble route.

use kraus_entanglement::oracle::random::{self, seeded};
use kraus_entanglement::oracle::{evolve3, pair_concurrence_sq, partial_trace, wootters_concurrence_sq};

fn main() -> kraus_entanglement::Result<()> {
    for i in 0..4 {
        let mut rng = seeded(11, i);
        let kp = random::kraus_pair(&mut rng);
        let s = evolve3(&kp, &random::two_qubit_state(&mut rng));
        for (a, b, name) in [(0, 1, "S'S"), (0, 2, "S'E"), (1, 2, "SE")] {
            let rho = partial_trace(&s, &[a, b]);
            let spectral = wootters_concurrence_sq(&rho)?;
            let ensemble = pair_concurrence_sq(&s, a, b)?;
            println!("#{i} {name:<4} {spectral:.12} {ensemble:.12} diff {:.1e}", (spectral - ensemble).abs());
        }
    }
    Ok(())
}
