//! Writes a phase flip sweep as CSV to stdout.

use kraus_entanglement::cli::spec::{Axis, ChannelSpec};
use kraus_entanglement::cli::sweep::Sweep;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sweep = Sweep {
        channel: ChannelSpec::PhaseFlip,
        p: Axis::Grid { start: 0.0, stop: 1.0, count: 11 },
        rho_ee: Axis::Fixed(0.5),
        phi: 0.0,
        e0sq: Axis::Grid { start: 0.0, stop: 1.0, count: 3 },
        tol: 1e-9,
    };
    let out = sweep.run()?;
    out.write_csv(std::io::stdout().lock())?;
    eprintln!("{} rows, {} infeasible points skipped", out.rows.len(), out.infeasible);
    Ok(())
}
