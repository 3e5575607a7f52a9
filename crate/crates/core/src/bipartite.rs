//! Closed-form bipartite entanglement of the evolved state.
//!
//! With `E₀² = 4 det ρ₀` the initial `S'–S` tangle:
//!
//! ```text
//! C²_{S'|SE} = E₀²
//! C²_{S|S'E} = E₀² D_S(K) + G(K, ρ₀)
//! C²_{E|SS'} = E₀² D_E(K) + G(K, ρ₀)
//! ```
//!
//! where `D_S = |det K₀|² + |det K₁|² + |g²(K₀,K₁)|`,
//! `D_E = g(K₀†K₀, K₁†K₁)` and `G = −4 g(K₀ρ₀K₁†, K₁ρ₀K₀†)`. The pairwise
//! tangles follow from the CKW identity with `u = 4 det(K₀K₁)` and
//! `v = g²(K₀, K₁)`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::channels::{KrausPair, TwoQubitPure};
use crate::classify::{classify, Classification};
use crate::error::{Error, Result};
use crate::mat2::{mixed_det, CMat2};
use crate::tangle::three_tangle_kraus;

/// Tangles above `-CLAMP_TOL` are treated as rounding noise and clamped to 0.
pub const CLAMP_TOL: f64 = 1e-8;
/// Largest imaginary residue tolerated on quantities that must be real.
pub const IMAG_TOL: f64 = 1e-8;
/// `dc2_de0sq` refuses points this close to the square-root branch point.
pub const BRANCH_MARGIN: f64 = 1e-6;
/// Relative tolerance on `|u − v|` for the W-class precondition.
pub const W_CLASS_TOL: f64 = 1e-9;
/// Slack on `|ρ_ge|² ≤ ρ_ee(1 − ρ_ee)` for rounding.
const PSD_SLACK: f64 = 1e-12;
/// Below this coherence magnitude the phase is set to 0.
const PHASE_CUTOFF: f64 = 1e-14;

/// `ρ_ee ∈ [ρ⁻, ρ⁺]` for which a given `E₀²` is reachable.
pub fn feasible_rho_ee(e0sq: f64) -> (f64, f64) {
    let r = (1.0 - e0sq).max(0.0).sqrt();
    (0.5 * (1.0 - r), 0.5 * (1.0 + r))
}

/// Reduced initial state of `S`,
///
/// ```text
/// ρ₀ = [[1 − ρ_ee,        |ρ_ge| e^{iφ}],
///       [|ρ_ge| e^{−iφ},  ρ_ee        ]]
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialReduced {
    rho_ee: f64,
    phi: f64,
    rho_ge_abs: f64,
}

impl InitialReduced {
    pub fn new(rho_ee: f64, phi: f64, rho_ge_abs: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho_ee) {
            return Err(Error::OutOfRange {
                name: "rho_ee",
                value: rho_ee,
                range: "[0, 1]".into(),
            });
        }
        if !phi.is_finite() {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                range: "finite".into(),
            });
        }
        let bound = rho_ee * (1.0 - rho_ee);
        if !(rho_ge_abs >= 0.0) || rho_ge_abs * rho_ge_abs > bound + PSD_SLACK {
            return Err(Error::OutOfRange {
                name: "rho_ge_abs",
                value: rho_ge_abs,
                range: format!("[0, {}]", bound.sqrt()),
            });
        }
        Ok(Self {
            rho_ee,
            phi: phi.rem_euclid(TAU),
            rho_ge_abs: rho_ge_abs.min(bound.sqrt()),
        })
    }

    /// Parametrizes by initial entanglement instead of coherence magnitude.
    pub fn from_e0sq(rho_ee: f64, phi: f64, e0sq: f64) -> Result<Self> {
        Self::new(rho_ee, phi, coherence_for(rho_ee, e0sq)?)
    }

    pub fn rho_ee(&self) -> f64 {
        self.rho_ee
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn rho_ge_abs(&self) -> f64 {
        self.rho_ge_abs
    }

    /// `E₀² = 4ρ_ee(1 − ρ_ee) − 4|ρ_ge|² = 4 det ρ₀`.
    pub fn e0sq(&self) -> f64 {
        (4.0 * self.rho_ee * (1.0 - self.rho_ee) - 4.0 * self.rho_ge_abs * self.rho_ge_abs)
            .clamp(0.0, 1.0)
    }

    pub fn rho0(&self) -> CMat2 {
        let coh = C64::from_polar(self.rho_ge_abs, self.phi);
        CMat2::new(
            C64::new(1.0 - self.rho_ee, 0.0),
            coh,
            coh.conj(),
            C64::new(self.rho_ee, 0.0),
        )
    }

    /// A two-qubit pure state whose `S` marginal is `ρ₀`.
    ///
    /// Uses the Cholesky factor `ρ₀ = L L†` and sets `ψ[s'][s] = L[s][s']`.
    pub fn purification(&self) -> TwoQubitPure {
        let r = self.rho0();
        let l00 = r[(0, 0)].re.max(0.0).sqrt();
        let (l10, l11) = if l00 > 0.0 {
            let l10 = r[(1, 0)] / l00;
            (l10, (r[(1, 1)].re - l10.norm_sqr()).max(0.0).sqrt())
        } else {
            (C64::new(0.0, 0.0), r[(1, 1)].re.max(0.0).sqrt())
        };
        let zero = C64::new(0.0, 0.0);
        let amps = [[C64::new(l00, 0.0), l10], [zero, C64::new(l11, 0.0)]];
        // Cholesky of a trace-one PSD matrix: the norm is exact up to rounding
        let n: f64 = amps.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        TwoQubitPure::from_amplitudes(amps.map(|row| row.map(|z| z / n)))
            .expect("purification is normalized")
    }
}

fn coherence_for(rho_ee: f64, e0sq: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&e0sq) {
        return Err(Error::OutOfRange {
            name: "e0sq",
            value: e0sq,
            range: "[0, 1]".into(),
        });
    }
    if !(0.0..=1.0).contains(&rho_ee) {
        return Err(Error::OutOfRange {
            name: "rho_ee",
            value: rho_ee,
            range: "[0, 1]".into(),
        });
    }
    let slack = 4.0 * rho_ee * (1.0 - rho_ee) - e0sq;
    if slack < -PSD_SLACK {
        let (lower, upper) = feasible_rho_ee(e0sq);
        return Err(Error::InfeasibleInitialState {
            e0sq,
            rho_ee,
            lower,
            upper,
        });
    }
    Ok(0.5 * slack.max(0.0).sqrt())
}

/// Partial trace over `S'` of `|ψ₀⟩⟨ψ₀|`, in the `(ρ_ee, φ, |ρ_ge|)` form.
///
/// `ρ_ee` is the `|1⟩⟨1|` weight of `S`, i.e. `|α|² + |γ|²`, and `φ` is the
/// argument of the `(0, 1)` entry (0 when the coherence vanishes).
pub fn reduced_from_state(psi0: &TwoQubitPure) -> InitialReduced {
    let a = psi0.amplitudes();
    let entry = |r: usize, c: usize| -> C64 { (0..2).map(|n| a[n][r] * a[n][c].conj()).sum() };
    let rho_ee = entry(1, 1).re.clamp(0.0, 1.0);
    let coh = entry(0, 1);
    let rho_ge_abs = coh.norm();
    let phi = if rho_ge_abs < PHASE_CUTOFF { 0.0 } else { coh.arg() };
    let bound = (rho_ee * (1.0 - rho_ee)).max(0.0).sqrt();
    InitialReduced::new(rho_ee, phi, rho_ge_abs.min(bound)).expect("partial trace is a valid state")
}

fn real_part(what: &'static str, z: C64) -> Result<f64> {
    if z.im.abs() > IMAG_TOL {
        return Err(Error::Consistency { what, value: z.im });
    }
    Ok(z.re)
}

fn clamp_tangle(what: &'static str, x: f64) -> Result<f64> {
    if !(x >= -CLAMP_TOL && x <= 1.0 + CLAMP_TOL) {
        return Err(Error::Consistency { what, value: x });
    }
    Ok(x.clamp(0.0, 1.0))
}

/// `G = −4 g(K₀ρ₀K₁†, K₁ρ₀K₀†)`, the only place the initial state enters
/// beyond `E₀²`.
pub fn g_term(kp: &KrausPair, r0: &InitialReduced) -> Result<f64> {
    let x = *kp.k0() * r0.rho0() * kp.k1().adjoint();
    real_part("imaginary part of G", mixed_det(&x, &x.adjoint()) * -4.0)
}

/// `(D_S, D_E)`, the state-independent parts of `C²_{S|S'E}` and `C²_{E|SS'}`.
pub fn ds_de(kp: &KrausPair) -> (f64, f64) {
    let (k0, k1) = (kp.k0(), kp.k1());
    let d_s = k0.det().norm_sqr() + k1.det().norm_sqr() + kp.mixed_det_sq().norm();
    // g of two Hermitian matrices is real
    let d_e = mixed_det(&(k0.adjoint() * *k0), &(k1.adjoint() * *k1)).re;
    (d_s, d_e)
}

/// `(C²_{S'|SE}, C²_{S|S'E}, C²_{E|SS'})`.
pub fn bipartition_tangles(kp: &KrausPair, r0: &InitialReduced) -> Result<(f64, f64, f64)> {
    let e = r0.e0sq();
    let g = g_term(kp, r0)?;
    let (d_s, d_e) = ds_de(kp);
    Ok((
        e,
        clamp_tangle("C2_S|S'E", e * d_s + g)?,
        clamp_tangle("C2_E|SS'", e * d_e + g)?,
    ))
}

struct PairInputs {
    e: f64,
    det_sum: f64,
    det_diff: f64,
    u: f64,
    v: f64,
    gap: f64,
    g: f64,
}

impl PairInputs {
    fn new(kp: &KrausPair, r0: &InitialReduced) -> Result<Self> {
        let (d0, d1) = (kp.k0().det().norm(), kp.k1().det().norm());
        let (u, v) = (kp.det_product(), kp.mixed_det_sq());
        Ok(Self {
            e: r0.e0sq(),
            det_sum: d0 + d1,
            det_diff: d0 - d1,
            u: u.norm(),
            v: v.norm(),
            gap: (u - v).norm(),
            g: g_term(kp, r0)?,
        })
    }
}

/// `(C²_{S'S}, C²_{S'E}, C²_{SE})`.
pub fn pairwise_tangles(kp: &KrausPair, r0: &InitialReduced) -> Result<(f64, f64, f64)> {
    let PairInputs {
        e,
        det_sum,
        u,
        v,
        gap,
        g,
        ..
    } = PairInputs::new(kp, r0)?;
    let sps = e * det_sum * det_sum - 0.5 * e * (u - v + gap);
    let spe = e * (1.0 - det_sum * det_sum) - 0.5 * e * (v - u + gap);
    let se = g + 0.5 * e * (v - gap);
    Ok((
        clamp_tangle("C2_S'S", sps)?,
        clamp_tangle("C2_S'E", spe)?,
        clamp_tangle("C2_SE", se)?,
    ))
}

/// Lower bounds on `(C²_{S'S}, C²_{S'E}, C²_{SE})` from `|u − v| ≤ |u| + |v|`;
/// tight whenever `u = 0` or `v = 0`.
pub fn lower_bounds(kp: &KrausPair, r0: &InitialReduced) -> Result<(f64, f64, f64)> {
    let PairInputs {
        e,
        det_sum,
        det_diff,
        u,
        v,
        g,
        ..
    } = PairInputs::new(kp, r0)?;
    Ok((
        e * det_diff * det_diff,
        e * (1.0 - det_sum * det_sum - v),
        g - 0.5 * e * u,
    ))
}

/// `G` split by its dependence on `E₀²` at fixed `(ρ_ee, φ)`:
/// `G = G₁ + G₂ √(4ρ_ee(1−ρ_ee) − E₀²) + G₃ E₀²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GDecomposition {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g: f64,
}

/// `M = K₀ σ_ee K₁†` and `N = K₀ σ_φ K₁†`.
fn coherence_split(kp: &KrausPair, rho_ee: f64, phi: f64) -> (CMat2, CMat2) {
    let sigma_ee = CMat2::real(1.0 - rho_ee, 0.0, 0.0, rho_ee);
    let ph = C64::from_polar(1.0, phi);
    let sigma_phi = CMat2::new(C64::new(0.0, 0.0), ph, ph.conj(), C64::new(0.0, 0.0));
    let k1_dag = kp.k1().adjoint();
    (
        *kp.k0() * sigma_ee * k1_dag,
        *kp.k0() * sigma_phi * k1_dag,
    )
}

pub fn g_decomposition(kp: &KrausPair, rho_ee: f64, phi: f64, e0sq: f64) -> Result<GDecomposition> {
    coherence_for(rho_ee, e0sq)?;
    let (m, n) = coherence_split(kp, rho_ee, phi);
    let mm = real_part("g(M, M†)", mixed_det(&m, &m.adjoint()))?;
    let nn = real_part("g(N, N†)", mixed_det(&n, &n.adjoint()))?;
    let mn = mixed_det(&m, &n.adjoint()).re;
    let pop = rho_ee * (1.0 - rho_ee);

    let g1 = -4.0 * (mm + pop * nn);
    let g2 = -4.0 * mn;
    let g3 = nn;
    let root = (4.0 * pop - e0sq).max(0.0).sqrt();
    Ok(GDecomposition {
        g1,
        g2,
        g3,
        g: g1 + g2 * root + g3 * e0sq,
    })
}

/// Which of the two evolving bipartitions, `S|S'E` or `E|SS'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    S,
    E,
}

/// `∂C²_{i|jS'}/∂E₀²` at fixed `(ρ_ee, φ)`, valid only for W-class pairs:
///
/// ```text
/// d_i + 2|det(K₀K₁)| + g(N, N†) + 2 Re g(M, N†) / √(4ρ_ee(1−ρ_ee) − E₀²)
/// ```
///
/// with `d_S = (|det K₀| + |det K₁|)²` and `d_E = 1 − d_S`.
pub fn dc2_de0sq(kp: &KrausPair, rho_ee: f64, phi: f64, e0sq: f64, which: Side) -> Result<f64> {
    let (u, v) = (kp.det_product(), kp.mixed_det_sq());
    let gap = (u - v).norm();
    if gap > W_CLASS_TOL * 1f64.max(u.norm()).max(v.norm()) {
        return Err(Error::GhzClassPair { gap });
    }
    coherence_for(rho_ee, e0sq)?;
    let branch = 4.0 * rho_ee * (1.0 - rho_ee);
    if branch - e0sq < BRANCH_MARGIN {
        return Err(Error::NearBranchPoint {
            e0sq,
            branch,
            margin: BRANCH_MARGIN,
        });
    }

    let (d0, d1) = (kp.k0().det().norm(), kp.k1().det().norm());
    let d_s = (d0 + d1).powi(2);
    let d_i = match which {
        Side::S => d_s,
        Side::E => 1.0 - d_s,
    };
    let (m, n) = coherence_split(kp, rho_ee, phi);
    let nn = real_part("g(N, N†)", mixed_det(&n, &n.adjoint()))?;
    let mn = mixed_det(&m, &n.adjoint()).re;
    Ok(d_i + 2.0 * d0 * d1 + nn + 2.0 * mn / (branch - e0sq).sqrt())
}

/// The seven entanglement numbers of a 3-qubit pure state.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Tangles {
    pub tau: f64,
    pub c2_sp_se: f64,
    pub c2_s_spe: f64,
    pub c2_e_ssp: f64,
    pub c2_sps: f64,
    pub c2_spe: f64,
    pub c2_se: f64,
}

impl Tangles {
    pub fn as_array(&self) -> [f64; 7] {
        [
            self.tau,
            self.c2_sp_se,
            self.c2_s_spe,
            self.c2_e_ssp,
            self.c2_sps,
            self.c2_spe,
            self.c2_se,
        ]
    }

    /// `C²_{i|jk} − C²_{ij} − C²_{ik} − τ` for `i = S', S, E`.
    pub fn ckw_residuals(&self) -> [f64; 3] {
        [
            self.c2_sp_se - self.c2_sps - self.c2_spe - self.tau,
            self.c2_s_spe - self.c2_sps - self.c2_se - self.tau,
            self.c2_e_ssp - self.c2_spe - self.c2_se - self.tau,
        ]
    }

    pub fn max_abs_diff(&self, other: &Tangles) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Every closed-form quantity for one `(K, ρ₀)` plus its family.
#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementReport {
    pub tangles: Tangles,
    pub d_s: f64,
    pub d_e: f64,
    pub g: f64,
    pub classification: Classification,
}

impl EntanglementReport {
    pub fn closed_form(kp: &KrausPair, r0: &InitialReduced, tol: f64) -> Result<Self> {
        let e = r0.e0sq();
        let (c2_sp_se, c2_s_spe, c2_e_ssp) = bipartition_tangles(kp, r0)?;
        let (c2_sps, c2_spe, c2_se) = pairwise_tangles(kp, r0)?;
        let (d_s, d_e) = ds_de(kp);
        Ok(Self {
            tangles: Tangles {
                tau: three_tangle_kraus(kp, e)?,
                c2_sp_se,
                c2_s_spe,
                c2_e_ssp,
                c2_sps,
                c2_spe,
                c2_se,
            },
            d_s,
            d_e,
            g: g_term(kp, r0)?,
            classification: classify(kp, r0, tol)?,
        })
    }
}

impl fmt::Display for EntanglementReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.tangles;
        writeln!(f, "family        {}", self.classification.label)?;
        writeln!(f, "decided by    {}", self.classification.tier)?;
        writeln!(f, "tau           {:.12}", t.tau)?;
        writeln!(f, "C2_S'|SE      {:.12}", t.c2_sp_se)?;
        writeln!(f, "C2_S|S'E      {:.12}", t.c2_s_spe)?;
        writeln!(f, "C2_E|SS'      {:.12}", t.c2_e_ssp)?;
        writeln!(f, "C2_S'S        {:.12}", t.c2_sps)?;
        writeln!(f, "C2_S'E        {:.12}", t.c2_spe)?;
        writeln!(f, "C2_SE         {:.12}", t.c2_se)?;
        writeln!(f, "D_S           {:.12}", self.d_s)?;
        writeln!(f, "D_E           {:.12}", self.d_e)?;
        write!(f, "G             {:.12}", self.g)
    }
}
