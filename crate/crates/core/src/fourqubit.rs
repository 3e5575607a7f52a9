//! Two local channels: `S` interacts with `E` and `S'` with `E'`.
//!
//! Qubit order is `(S', S, E, E')`, so index `8s' + 4l + 2m + m'`. With
//! `kp_prime` the identity channel the state is the 3-qubit evolution with a
//! spectator `|0⟩_{E'}` in the last bit.
//!
//! A pair of qubits `(k, l)` whose complement is two qubits carries a rank-2
//! reduced state here, so it can be compressed into one effective qubit.
//! Several 4-qubit quantities then coincide numerically with the 3-qubit
//! closed forms; [`correspondence_check`] compares them.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::bipartite::{bipartition_tangles, pairwise_tangles, reduced_from_state};
use crate::channels::{KrausPair, TwoQubitPure};
use crate::error::{Error, Result};
use crate::mat2::CMat2;
use crate::oracle::{
    bipartition_tangle, block_support, pair_concurrence_sq, purity_tangle_of, PureStateN,
};
use crate::tangle::{three_tangle_direct, three_tangle_kraus, ThreeQubitPure};

pub const S_PRIME: usize = 0;
pub const S: usize = 1;
pub const E: usize = 2;
pub const E_PRIME: usize = 3;

/// Third eigenvalue of a block state above which it is not an effective qubit.
pub const RANK_TOL: f64 = 1e-9;
/// Third eigenvalue above which a warning is logged.
pub const RANK_WARN: f64 = 1e-12;
/// `R_i` below `−NEGATIVE_TOL` is logged as a numerical problem.
pub const NEGATIVE_TOL: f64 = 1e-8;

const ZERO: C64 = C64::new(0.0, 0.0);

/// `(K'_{m'} ⊗ K_m)` applied to `ψ₀`, environments starting in `|00⟩`.
pub fn evolve4(kp: &KrausPair, kp_prime: &KrausPair, psi0: &TwoQubitPure) -> PureStateN {
    let ks = [kp.k0(), kp.k1()];
    let kps = [kp_prime.k0(), kp_prime.k1()];
    let mut amps = vec![ZERO; 16];
    for x in 0..2 {
        for y in 0..2 {
            let a = psi0.amplitude(x, y);
            if a == ZERO {
                continue;
            }
            for (mp, kpr) in kps.iter().enumerate() {
                for (m, k) in ks.iter().enumerate() {
                    for sp in 0..2 {
                        for l in 0..2 {
                            amps[8 * sp + 4 * l + 2 * m + mp] += kpr[(sp, x)] * k[(l, y)] * a;
                        }
                    }
                }
            }
        }
    }
    PureStateN::new(4, amps).expect("local channels preserve the norm")
}

/// `R_i = C²_{i|rest} − Σ_{j≠i} C²_{ij}`.
pub fn residual(s: &PureStateN, i: usize) -> Result<f64> {
    let mut r = purity_tangle_of(s, i);
    for j in (0..s.n_qubits()).filter(|&j| j != i) {
        r -= pair_concurrence_sq(s, i, j)?;
    }
    if r < -NEGATIVE_TOL {
        log::warn!("residual entanglement of qubit {i} is {r:e}");
    }
    Ok(r)
}

/// 3-qubit state `(eff, i, j)` obtained by writing the complement of
/// `pair` in the eigenbasis of its reduced state and keeping the top two
/// directions as the effective qubit.
pub fn effective_qubit_state(s: &PureStateN, pair: (usize, usize)) -> Result<ThreeQubitPure> {
    effective_qubit_state_rotated(s, pair, &CMat2::identity())
}

/// As [`effective_qubit_state`], with the support basis first rotated by the
/// 2×2 unitary `u`: `v'_a = Σ_b v_b u[b][a]`.
pub fn effective_qubit_state_rotated(
    s: &PureStateN,
    pair: (usize, usize),
    u: &CMat2,
) -> Result<ThreeQubitPure> {
    if s.n_qubits() != 4 || pair.0 == pair.1 || pair.0 > 3 || pair.1 > 3 {
        return Err(Error::Invalid(format!(
            "effective qubit needs a 4-qubit state and a pair of distinct qubits, got {pair:?}"
        )));
    }
    let keep = [pair.0, pair.1];
    let block = s.complement(&keep);
    let support = block_support(s, &block)?;
    let third = support.values[2];
    if third > RANK_TOL {
        return Err(Error::RankTooHigh { eigenvalue: third });
    }
    if third > RANK_WARN {
        log::warn!("block {block:?} third eigenvalue {third:e}");
    }
    let basis: [Vec<C64>; 2] = std::array::from_fn(|a| {
        (0..4)
            .map(|t| support.vectors[0][t] * u[(0, a)] + support.vectors[1][t] * u[(1, a)])
            .collect()
    });

    let raw = s.conditional_vectors(&keep);
    let mut amps = [ZERO; 8];
    for (a, v) in basis.iter().enumerate() {
        for (t, psi_t) in raw.iter().enumerate() {
            for (x, p) in psi_t.iter().enumerate() {
                amps[4 * a + x] += v[t].conj() * p;
            }
        }
    }
    // drop the weight that lived outside the support
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    ThreeQubitPure::new(amps.map(|z| z / norm))
}

/// 3-tangle among qubits `i`, `j` and the effective qubit made of the rest.
pub fn effective_qubit_tangle(s: &PureStateN, pair: (usize, usize)) -> Result<f64> {
    Ok(three_tangle_direct(&effective_qubit_state(s, pair)?))
}

/// One 4-qubit quantity next to the 3-qubit closed form it should equal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correspondence {
    pub name: &'static str,
    pub four_qubit: f64,
    pub closed_form: f64,
    /// `true` for the two 3-tangle identities.
    pub is_tangle: bool,
}

impl Correspondence {
    pub fn residual(&self) -> f64 {
        (self.four_qubit - self.closed_form).abs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceReport {
    pub checks: Vec<Correspondence>,
}

impl CorrespondenceReport {
    /// Largest residual among the concurrence and purity identities.
    pub fn max_concurrence_residual(&self) -> f64 {
        self.max_where(|c| !c.is_tangle)
    }

    pub fn max_tangle_residual(&self) -> f64 {
        self.max_where(|c| c.is_tangle)
    }

    fn max_where(&self, f: impl Fn(&Correspondence) -> bool) -> f64 {
        self.checks
            .iter()
            .filter(|c| f(c))
            .map(Correspondence::residual)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<22} {:.12} {:.12} {:.3e}",
                c.name,
                c.four_qubit,
                c.closed_form,
                c.residual()
            )?;
        }
        Ok(())
    }
}

/// Closed-form 3-qubit values `[C²_{S|S'E}, C²_{E|SS'}, C²_{SE}, C²_{SS'}, C²_{S'E}, τ]`.
fn three_qubit_side(kp: &KrausPair, psi0: &TwoQubitPure) -> Result<[f64; 6]> {
    let r0 = reduced_from_state(psi0);
    let (_, s, e) = bipartition_tangles(kp, &r0)?;
    let (sps, spe, se) = pairwise_tangles(kp, &r0)?;
    Ok([s, e, se, sps, spe, three_tangle_kraus(kp, r0.e0sq())?])
}

/// Four-qubit values in the same order, for system qubit `sys`, its
/// environment `env` and the other pair as effective qubit.
fn four_qubit_side(s: &PureStateN, sys: usize, env: usize) -> Result<[f64; 6]> {
    let eff = PureStateN::from(effective_qubit_state(s, (sys, env))?);
    let order_ok = sys < env;
    let (qs, qe) = if order_ok { (1, 2) } else { (2, 1) };
    Ok([
        purity_tangle_of(s, sys),
        purity_tangle_of(s, env),
        pair_concurrence_sq(s, sys, env)?,
        pair_concurrence_sq(&eff, 0, qs)?,
        pair_concurrence_sq(&eff, 0, qe)?,
        three_tangle_direct(&ThreeQubitPure::try_from(&eff)?),
    ])
}

/// The twelve 4-qubit ↔ 3-qubit identities.
///
/// The primed side uses `(K'₀, K'₁)` with `ψ₀` read with `S` and `S'`
/// exchanged, so that its `S`-marginal is `Tr_S |ψ₀⟩⟨ψ₀|`.
pub fn correspondence_check(
    kp: &KrausPair,
    kp_prime: &KrausPair,
    psi0: &TwoQubitPure,
) -> Result<CorrespondenceReport> {
    const UNPRIMED: [&str; 6] = [
        "C2 S|E S' E'",
        "C2 E|S S' E'",
        "C2 S E",
        "C2 S|(S'E')",
        "C2 E|(S'E')",
        "tau S E (S'E')",
    ];
    const PRIMED: [&str; 6] = [
        "C2 S'|E' S E",
        "C2 E'|S' S E",
        "C2 S' E'",
        "C2 S'|(SE)",
        "C2 E'|(SE)",
        "tau S' E' (SE)",
    ];
    let s = evolve4(kp, kp_prime, psi0);
    let sides = [
        (UNPRIMED, four_qubit_side(&s, S, E)?, three_qubit_side(kp, psi0)?),
        (
            PRIMED,
            four_qubit_side(&s, S_PRIME, E_PRIME)?,
            three_qubit_side(kp_prime, &psi0.swapped())?,
        ),
    ];
    let checks = sides
        .iter()
        .flat_map(|(names, four, three)| {
            (0..6).map(move |k| Correspondence {
                name: names[k],
                four_qubit: four[k],
                closed_form: three[k],
                is_tangle: k == 5,
            })
        })
        .collect();
    Ok(CorrespondenceReport { checks })
}

/// Which multipartite guarantee the Kraus pairs give for the 4-qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guarantee {
    /// Both pairs GHZ class: every `R_i` is nonzero.
    ResidualEntanglement,
    /// Both pairs W class with `0 < |det K₀| + |det K₁| < 1`: every
    /// bipartition is entangled.
    AllBipartitions,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenuineConditions {
    /// `|4 det(K₀K₁) − g²(K₀, K₁)|` and its primed twin.
    pub gap: f64,
    pub gap_prime: f64,
    /// `|det K₀| + |det K₁|` and its primed twin.
    pub det_sum: f64,
    pub det_sum_prime: f64,
    pub guarantee: Guarantee,
}

fn det_sum(kp: &KrausPair) -> f64 {
    kp.k0().det().norm() + kp.k1().det().norm()
}

/// Evaluates the GHZ-type and W-type conditions on both sides at tolerance `tol`.
pub fn genuine_conditions(kp: &KrausPair, kp_prime: &KrausPair, tol: f64) -> GenuineConditions {
    let (gap, gap_prime) = (kp.ghz_gap(), kp_prime.ghz_gap());
    let (ds, dsp) = (det_sum(kp), det_sum(kp_prime));
    let w_side = |gap: f64, ds: f64| gap <= tol && ds > tol && ds < 1.0 - tol;
    let guarantee = if gap > tol && gap_prime > tol {
        Guarantee::ResidualEntanglement
    } else if w_side(gap, ds) && w_side(gap_prime, dsp) {
        Guarantee::AllBipartitions
    } else {
        Guarantee::None
    };
    GenuineConditions {
        gap,
        gap_prime,
        det_sum: ds,
        det_sum_prime: dsp,
        guarantee,
    }
}

/// Tangles `2(1 − Tr ρ_A²)` of the seven bipartitions: four single qubits,
/// then `S'S|EE'`, `S'E|SE'`, `S'E'|SE`.
pub fn all_bipartition_tangles(s: &PureStateN) -> [f64; 7] {
    let cuts: [&[usize]; 7] = [&[0], &[1], &[2], &[3], &[0, 1], &[0, 2], &[0, 3]];
    cuts.map(|a| bipartition_tangle(s, a))
}
