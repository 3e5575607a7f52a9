//! Tracks how the tangles respond to the initial S'-S entanglement at fixed
//! population, including the analytic slope.

use kraus_entanglement::bipartite::{dc2_de0sq, feasible_rho_ee, g_decomposition, Side};
use kraus_entanglement::channels::amplitude_damping;
use kraus_entanglement::{EntanglementReport, InitialReduced};

fn main() -> kraus_entanglement::Result<()> {
    let kp = amplitude_damping(0.4)?;
    let (rho, phi) = (0.7, 0.0);
    let max = 4.0 * rho * (1.0 - rho);
    println!("feasible rho_ee at E0^2 = 0.5: {:?}", feasible_rho_ee(0.5));
    println!("{:>6} {:>10} {:>10} {:>12} {:>12}", "E0^2", "C2_S", "C2_E", "dC2_S", "G");
    // the slope is singular at the largest feasible E0^2
    for i in 0..8 {
        let e0sq = max * i as f64 / 8.0;
        let r0 = InitialReduced::from_e0sq(rho, phi, e0sq)?;
        let t = EntanglementReport::closed_form(&kp, &r0, 1e-9)?.tangles;
        let slope = dc2_de0sq(&kp, rho, phi, e0sq, Side::S)?;
        let g = g_decomposition(&kp, rho, phi, e0sq)?;
        println!("{e0sq:>6.3} {:>10.6} {:>10.6} {slope:>12.6} {:>12.6}", t.c2_s_spe, t.c2_e_ssp, g.g);
    }
    Ok(())
}
