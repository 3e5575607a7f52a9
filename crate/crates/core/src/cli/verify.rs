//! Closed forms against the state-vector oracle on seeded random instances.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::bipartite::{ds_de, lower_bounds, EntanglementReport, InitialReduced};
use crate::channels::{amplitude_damping, dephasing, evolved_coeffs, phase_flip, KrausPair};
use crate::error::Result;
use crate::fourqubit::correspondence_check;
use crate::oracle::random::{self, seeded};
use crate::oracle::{evolve3, evolve3_unitary, full_report_direct};
use crate::tangle::{three_tangle_kraus, three_tangle_simplified};

/// Residuals that are compared at `10 × tol`.
const LOOSE: f64 = 10.0;

const THREE_QUBIT: [(&str, bool); 18] = [
    ("tau direct = kraus", false),
    ("tau simplified = kraus", false),
    ("C2 S'|SE", false),
    ("C2 S|S'E", false),
    ("C2 E|SS'", false),
    ("C2 S'S", false),
    ("C2 S'E", false),
    ("C2 SE", false),
    ("dilation = Kraus map", false),
    ("CKW S'", true),
    ("CKW S", true),
    ("CKW E", true),
    ("D_S = 1 - D_E + |v|", false),
    ("lower bound S'S", false),
    ("lower bound S'E", false),
    ("lower bound SE", false),
    ("C2 S'|SE = E0^2", false),
    ("family agreement", false),
];

/// Random pair drawn from one of three pools, cycling with `kind`.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, kind: u64) -> KrausPair {
    match kind % 3 {
        0 => random::kraus_pair(rng),
        1 => random::w_class_pair(rng),
        _ => {
            let p: f64 = rng.random();
            match rng.random_range(0..3) {
                0 => amplitude_damping(p),
                1 => dephasing(p),
                _ => phase_flip(p),
            }
            .expect("p in [0, 1]")
        }
    }
}

fn three_qubit_residuals(kp: &KrausPair, r0: &InitialReduced, tol: f64) -> Result<Vec<f64>> {
    let closed = EntanglementReport::closed_form(kp, r0, tol)?;
    let psi0 = r0.purification();
    let state = evolve3(kp, &psi0);
    let direct = full_report_direct(&state, tol)?;
    let (c, d) = (closed.tangles, direct.tangles);
    let e0sq = r0.e0sq();

    let (c0, c1) = evolved_coeffs(kp, &psi0);
    let tau_k = three_tangle_kraus(kp, e0sq)?;
    let dilated = evolve3_unitary(&kp.dilation(), &psi0);
    let dilation_gap = state
        .amps()
        .iter()
        .zip(dilated.amps())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let (d_s, d_e) = ds_de(kp);
    let (lb_sps, lb_spe, lb_se) = lower_bounds(kp, r0)?;
    let ckw = d.ckw_residuals();
    let agree = closed.classification.label.same_family(&direct.classification.label);

    Ok(vec![
        (d.tau - tau_k).abs(),
        (three_tangle_simplified(&c0, &c1) - tau_k).abs(),
        (c.c2_sp_se - d.c2_sp_se).abs(),
        (c.c2_s_spe - d.c2_s_spe).abs(),
        (c.c2_e_ssp - d.c2_e_ssp).abs(),
        (c.c2_sps - d.c2_sps).abs(),
        (c.c2_spe - d.c2_spe).abs(),
        (c.c2_se - d.c2_se).abs(),
        dilation_gap,
        ckw[0].abs(),
        ckw[1].abs(),
        ckw[2].abs(),
        (d_s - (1.0 - d_e + kp.mixed_det_sq().norm())).abs(),
        (lb_sps - d.c2_sps).max(0.0),
        (lb_spe - d.c2_spe).max(0.0),
        (lb_se - d.c2_se).max(0.0),
        (d.c2_sp_se - e0sq).abs(),
        if agree || e0sq <= tol { 0.0 } else { 1.0 },
    ])
}

fn instance(seed: u64, i: u64, tol: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rng = seeded(seed, i);
    let kp = random_pair(&mut rng, i);
    let r0 = random::initial_reduced(&mut rng);
    let three = three_qubit_residuals(&kp, &r0, tol)?;

    let kp_prime = random_pair(&mut rng, i / 3);
    let psi0 = random::two_qubit_state(&mut rng);
    let four = correspondence_check(&kp, &kp_prime, &psi0)?
        .checks
        .iter()
        .map(|c| c.residual())
        .collect();
    Ok((three, four))
}

/// Worst residual of one identity over all instances.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityResult {
    pub name: &'static str,
    pub threshold: f64,
    pub max_residual: f64,
    pub worst_instance: u64,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.threshold
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub n: u64,
    pub seed: u64,
    pub identities: Vec<IdentityResult>,
    /// Instances whose evaluation failed outright.
    pub errors: Vec<(u64, String)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.identities.iter().all(IdentityResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify: {} instances, seed {}", self.n, self.seed)?;
        for id in &self.identities {
            writeln!(
                f,
                "{:<4} {:<24} max {:.3e}  threshold {:.1e}  worst #{}",
                if id.passed() { "ok" } else { "FAIL" },
                id.name,
                id.max_residual,
                id.threshold,
                id.worst_instance
            )?;
        }
        for (i, e) in &self.errors {
            writeln!(f, "FAIL instance #{i}: {e}")?;
        }
        let failed = self.identities.iter().filter(|i| !i.passed()).count();
        write!(
            f,
            "{}: {failed} of {} identities above threshold, {} evaluation errors",
            if self.passed() { "PASS" } else { "FAIL" },
            self.identities.len(),
            self.errors.len()
        )
    }
}

/// Runs `n` random instances; each uses its own RNG stream of `seed`.
pub fn run_verify(n: u64, seed: u64, tol: f64) -> VerifyReport {
    let results: Vec<Result<(Vec<f64>, Vec<f64>)>> =
        (0..n).into_par_iter().map(|i| instance(seed, i, tol)).collect();

    let four_names = correspondence_check(
        &KrausPair::identity(),
        &KrausPair::identity(),
        &crate::channels::TwoQubitPure::bell(),
    )
    .expect("identity channels")
    .checks;
    let mut identities: Vec<IdentityResult> = THREE_QUBIT
        .iter()
        .map(|&(name, loose)| (name, loose))
        .chain(four_names.iter().map(|c| (c.name, c.is_tangle)))
        .map(|(name, loose)| IdentityResult {
            name,
            threshold: if loose { tol * LOOSE } else { tol },
            max_residual: 0.0,
            worst_instance: 0,
        })
        .collect();

    let mut errors = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((three, four)) => {
                for (id, x) in identities.iter_mut().zip(three.into_iter().chain(four)) {
                    if x > id.max_residual || x.is_nan() {
                        id.max_residual = if x.is_nan() { f64::INFINITY } else { x };
                        id.worst_instance = i as u64;
                    }
                }
            }
            Err(e) => errors.push((i as u64, e.to_string())),
        }
    }
    VerifyReport {
        n,
        seed,
        identities,
        errors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = run_verify(30, 5, 1e-9);
        assert!(a.passed(), "{a}");
        assert_eq!(a.identities.len(), 30);
        assert_eq!(a.to_string(), run_verify(30, 5, 1e-9).to_string());
    }

    #[test]
    fn tiny_threshold_fails() {
        assert!(!run_verify(5, 0, 1e-17).passed());
    }
}
