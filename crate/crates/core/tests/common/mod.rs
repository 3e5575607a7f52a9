#![allow(dead_code)]

use kraus_entanglement::oracle::random::{self, seeded};
use kraus_entanglement::oracle::{evolve3, full_report_direct};
use kraus_entanglement::{InitialReduced, KrausPair, Tangles};

/// Brute-force tangles of the evolved purification of `r0`.
pub fn oracle_tangles(kp: &KrausPair, r0: &InitialReduced) -> Tangles {
    let s = evolve3(kp, &r0.purification());
    full_report_direct(&s, 1e-9).expect("oracle").tangles
}

/// Random pair: Haar dilation for even `i`, W class for odd `i`.
pub fn mixed_pair(seed: u64, i: u64) -> (KrausPair, InitialReduced) {
    let mut rng = seeded(seed, i);
    let kp = if i % 2 == 0 {
        random::kraus_pair(&mut rng)
    } else {
        random::w_class_pair(&mut rng)
    };
    (kp, random::initial_reduced(&mut rng))
}

/// Textbook values of a figure's plotted column for the three built-in
/// channels, `None` when the column is not covered.
pub fn channel_formula(channel: &str, column: &str, p: f64, rho_ee: f64, e0sq: f64) -> Option<f64> {
    let pop = 4.0 * rho_ee * (1.0 - rho_ee);
    let q = p * (2.0 - p);
    Some(match (channel, column) {
        ("ad", "tau") => 0.0,
        ("ad", "c2_sps") => e0sq * (1.0 - p),
        ("ad", "c2_spe") => e0sq * p,
        ("ad", "c2_se") => 4.0 * rho_ee * rho_ee * p * (1.0 - p),
        ("ad", "c2_s_spe") => e0sq * (1.0 - p) + 4.0 * rho_ee * rho_ee * p * (1.0 - p),
        ("ad", "c2_e_ssp") => e0sq * p + 4.0 * rho_ee * rho_ee * p * (1.0 - p),
        ("dephasing", "tau") => e0sq * p,
        ("dephasing", "c2_sps") => e0sq * (1.0 - p),
        ("dephasing", "c2_spe") => 0.0,
        ("dephasing", "c2_se") => (pop - e0sq) * p,
        ("dephasing", "c2_s_spe") => e0sq * (1.0 - p) + pop * p,
        ("dephasing", "c2_e_ssp") => pop * p,
        ("phase-flip", "tau") => e0sq * q,
        ("phase-flip", "c2_sps") => e0sq * (1.0 - p) * (1.0 - p),
        ("phase-flip", "c2_spe") => 0.0,
        ("phase-flip", "c2_se") => (pop - e0sq) * q,
        ("phase-flip", "c2_s_spe") => e0sq * (1.0 - p) * (1.0 - p) + pop * q,
        ("phase-flip", "c2_e_ssp") => pop * q,
        _ => return None,
    })
}

pub const COLUMNS: [&str; 7] = ["tau", "c2_sp_se", "c2_s_spe", "c2_e_ssp", "c2_sps", "c2_spe", "c2_se"];

pub fn column(t: &Tangles, name: &str) -> f64 {
    let idx = COLUMNS.iter().position(|c| *c == name).expect("known column");
    t.as_array()[idx]
}
