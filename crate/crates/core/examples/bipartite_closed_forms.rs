//! Prints every tangle of an amplitude damping run and checks the closed
//! forms against the state-vector oracle.

use kraus_entanglement::bipartite::{ds_de, lower_bounds};
use kraus_entanglement::channels::amplitude_damping;
use kraus_entanglement::oracle::{evolve3, full_report_direct};
use kraus_entanglement::{EntanglementReport, InitialReduced};

fn main() -> kraus_entanglement::Result<()> {
    let r0 = InitialReduced::from_e0sq(0.6, 0.3, 0.8)?;
    for p in [0.1, 0.5, 0.9] {
        let kp = amplitude_damping(p)?;
        let report = EntanglementReport::closed_form(&kp, &r0, 1e-9)?;
        let oracle = full_report_direct(&evolve3(&kp, &r0.purification()), 1e-9)?;
        let (d_s, d_e) = ds_de(&kp);
        println!("p = {p}\n{report}");
        println!("D_S {d_s:.6}  D_E {d_e:.6}  lower bounds {:?}", lower_bounds(&kp, &r0)?);
        println!("max |closed form - oracle| = {:.2e}\n", report.tangles.max_abs_diff(&oracle.tangles));
    }
    Ok(())
}
