//! Brute-force ground truth: dense state vectors, partial traces, purity
//! tangles and two-qubit concurrences.
//!
//! Nothing here uses the closed forms from [`crate::bipartite`] or
//! [`crate::tangle`] other than the amplitude-level hyperdeterminant, so it can
//! serve as an independent check on them.
//!
//! Flat amplitude index is big-endian in qubit order: qubit 0 is the most
//! significant bit (`S'`), qubit `n − 1` the least.

pub mod eigen;
pub mod random;

use num_complex::Complex64 as C64;

use crate::bipartite::Tangles;
use crate::channels::{CMat4, KrausPair, TwoQubitPure, NORM_TOL};
use crate::classify::{classify_direct, Classification};
use crate::error::{Error, Result};
use crate::tangle::{three_tangle_direct, ThreeQubitPure};
use eigen::{hermitian_eigen, HermitianEigen};

const ZERO: C64 = C64::new(0.0, 0.0);
/// Hermiticity and unit-trace tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-10;
/// Eigenvalues of a block reduced state below this are treated as zero
/// when building a support basis.
pub const SUPPORT_CUTOFF: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PureStateN {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl PureStateN {
    pub fn new(n_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != 1 << n_qubits {
            return Err(Error::Invalid(format!(
                "{} amplitudes for {n_qubits} qubits",
                amps.len()
            )));
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL || !norm_sq.is_finite() {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { n_qubits, amps })
    }

    /// Rescales to unit norm.
    pub fn normalized(n_qubits: usize, mut amps: Vec<C64>) -> Result<Self> {
        let n = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 {
            return Err(Error::NotNormalized { norm_sq: 0.0 });
        }
        amps.iter_mut().for_each(|z| *z /= n);
        Self::new(n_qubits, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    fn bit(&self, index: usize, qubit: usize) -> usize {
        (index >> (self.n_qubits - 1 - qubit)) & 1
    }

    /// Gathers the bits of `index` belonging to `qubits` into a sub-index,
    /// first listed qubit most significant.
    fn sub_index(&self, index: usize, qubits: &[usize]) -> usize {
        qubits.iter().fold(0, |acc, &q| (acc << 1) | self.bit(index, q))
    }

    /// Qubits not in `qubits`, ascending.
    pub fn complement(&self, qubits: &[usize]) -> Vec<usize> {
        (0..self.n_qubits).filter(|q| !qubits.contains(q)).collect()
    }

    /// Same state with qubits relabelled: new qubit `k` is old qubit `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.n_qubits);
        let mut amps = vec![ZERO; self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            amps[self.sub_index(i, order)] = *a;
        }
        Self {
            n_qubits: self.n_qubits,
            amps,
        }
    }

    /// Ensemble `{|ψ_t⟩}` with `Σ_t |ψ_t⟩⟨ψ_t| = ρ_keep`: one unnormalized
    /// vector per configuration `t` of the remaining qubits.
    pub fn conditional_vectors(&self, keep: &[usize]) -> Vec<Vec<C64>> {
        let rest = self.complement(keep);
        let mut out = vec![vec![ZERO; 1 << keep.len()]; 1 << rest.len()];
        for (i, a) in self.amps.iter().enumerate() {
            out[self.sub_index(i, &rest)][self.sub_index(i, keep)] = *a;
        }
        out
    }
}

impl From<ThreeQubitPure> for PureStateN {
    fn from(s: ThreeQubitPure) -> Self {
        Self {
            n_qubits: 3,
            amps: s.amplitudes().to_vec(),
        }
    }
}

impl TryFrom<&PureStateN> for ThreeQubitPure {
    type Error = Error;

    fn try_from(s: &PureStateN) -> Result<Self> {
        let amps: [C64; 8] = s
            .amps
            .as_slice()
            .try_into()
            .map_err(|_| Error::Invalid(format!("expected 3 qubits, got {}", s.n_qubits)))?;
        ThreeQubitPure::new(amps)
    }
}

/// Row-major density matrix of dimension 2 or 4.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMat {
    dim: usize,
    entries: Vec<C64>,
}

impl DensityMat {
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Invalid(format!("{} entries for dim {dim}", entries.len())));
        }
        let rho = Self { dim, entries };
        let mut herm: f64 = 0.0;
        for r in 0..dim {
            for c in 0..dim {
                herm = herm.max((rho.get(r, c) - rho.get(c, r).conj()).norm());
            }
        }
        if herm > DENSITY_TOL {
            return Err(Error::Consistency {
                what: "density matrix Hermiticity residual",
                value: herm,
            });
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > DENSITY_TOL {
            return Err(Error::Consistency {
                what: "density matrix trace - 1",
                value: tr - 1.0,
            });
        }
        Ok(rho)
    }

    /// `|v⟩⟨v|`.
    pub fn pure(v: &[C64]) -> Result<Self> {
        let d = v.len();
        let entries = (0..d * d).map(|k| v[k / d] * v[k % d].conj()).collect();
        Self::new(d, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.entries[r * self.dim + c]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        hermitian_eigen(&self.entries, self.dim)
    }

    /// Smallest eigenvalue must be `≥ −DENSITY_TOL`.
    pub fn check_positive(&self) -> Result<()> {
        let min = *self.eigen()?.values.last().expect("non-empty");
        if min < -DENSITY_TOL {
            return Err(Error::Consistency {
                what: "density matrix minimum eigenvalue",
                value: min,
            });
        }
        Ok(())
    }
}

/// Applies the map `|s⟩|0⟩_E ↦ Σ_μ (K_μ|s⟩)|μ⟩_E` to `S`, leaving `S'` alone.
pub fn evolve3(kp: &KrausPair, psi0: &TwoQubitPure) -> PureStateN {
    let ks = [kp.k0(), kp.k1()];
    let mut amps = vec![ZERO; 8];
    for sp in 0..2 {
        for s in 0..2 {
            let a = psi0.amplitude(sp, s);
            for (m, k) in ks.iter().enumerate() {
                for l in 0..2 {
                    amps[4 * sp + 2 * l + m] += k[(l, s)] * a;
                }
            }
        }
    }
    PureStateN {
        n_qubits: 3,
        amps,
    }
}

/// `(I_{S'} ⊗ U)(|ψ₀⟩ ⊗ |0⟩_E)` with the full 4×4 unitary.
pub fn evolve3_unitary(u: &CMat4, psi0: &TwoQubitPure) -> PureStateN {
    let mut amps = Vec::with_capacity(8);
    for sp in 0..2 {
        let se = [psi0.amplitude(sp, 0), ZERO, psi0.amplitude(sp, 1), ZERO];
        amps.extend(u.apply(&se));
    }
    PureStateN {
        n_qubits: 3,
        amps,
    }
}

/// Reduced state of `keep` (1–3 qubits, listed order = significance order).
pub fn partial_trace(s: &PureStateN, keep: &[usize]) -> DensityMat {
    assert!(
        !keep.is_empty() && keep.len() < s.n_qubits && keep.iter().all(|&q| q < s.n_qubits),
        "invalid subsystem {keep:?} of {} qubits",
        s.n_qubits
    );
    let dim = 1 << keep.len();
    let mut entries = vec![ZERO; dim * dim];
    for v in s.conditional_vectors(keep) {
        for r in 0..dim {
            for c in 0..dim {
                entries[r * dim + c] += v[r] * v[c].conj();
            }
        }
    }
    DensityMat { dim, entries }
}

/// `4 det ρ` of a single-qubit state, clamped to `[0, 1]`.
pub fn purity_tangle(rho: &DensityMat) -> Result<f64> {
    if rho.dim != 2 {
        return Err(Error::Invalid(format!("purity tangle needs a qubit, got dim {}", rho.dim)));
    }
    let det = rho.get(0, 0) * rho.get(1, 1) - rho.get(0, 1) * rho.get(1, 0);
    Ok((4.0 * det.re).clamp(0.0, 1.0))
}

/// `2(1 − Tr ρ²)`, the tangle across the cut separating `ρ`'s subsystem.
pub fn linear_entropy_tangle(rho: &DensityMat) -> f64 {
    (2.0 * (1.0 - rho.purity())).max(0.0)
}

/// Tangle of qubit `q` with the rest of a pure state.
pub fn purity_tangle_of(s: &PureStateN, q: usize) -> f64 {
    purity_tangle(&partial_trace(s, &[q])).expect("single qubit")
}

/// `2(1 − Tr ρ_A²)` for an arbitrary subset `A` of a pure state.
pub fn bipartition_tangle(s: &PureStateN, subset: &[usize]) -> f64 {
    linear_entropy_tangle(&partial_trace(s, subset))
}

/// `(σ_y ⊗ σ_y)` as a signed permutation: `v^T (Y⊗Y) w`.
fn spin_flip_form(v: &[C64], w: &[C64]) -> C64 {
    -v[0] * w[3] + v[1] * w[2] + v[2] * w[1] - v[3] * w[0]
}

/// Squared Wootters concurrence from `√ρ (Y⊗Y) ρ* (Y⊗Y) √ρ`.
pub fn wootters_concurrence_sq(rho: &DensityMat) -> Result<f64> {
    if rho.dim != 4 {
        return Err(Error::Invalid(format!("concurrence needs two qubits, got dim {}", rho.dim)));
    }
    let sqrt_rho = rho.eigen()?.map_values(|x| x.max(0.0).sqrt());
    let yy = |i: usize| -> (usize, f64) {
        match i {
            0 => (3, -1.0),
            1 => (2, 1.0),
            2 => (1, 1.0),
            _ => (0, -1.0),
        }
    };
    // ρ̃[r][c] = Σ YY[r][a] ρ*[a][b] YY[b][c]
    let mut tilde = vec![ZERO; 16];
    for r in 0..4 {
        let (a, sa) = yy(r);
        for c in 0..4 {
            let (b, sb) = yy(c);
            tilde[r * 4 + c] = rho.get(a, b).conj() * (sa * sb);
        }
    }
    let h = matmul4(&matmul4(&sqrt_rho, &tilde), &sqrt_rho);
    let mu = hermitian_eigen(&h, 4)?.values;
    let lam: Vec<f64> = mu.iter().map(|m| m.max(0.0).sqrt()).collect();
    let c = (lam[0] - lam[1] - lam[2] - lam[3]).max(0.0);
    Ok((c * c).min(1.0))
}

fn matmul4(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![ZERO; 16];
    for r in 0..4 {
        for c in 0..4 {
            out[r * 4 + c] = (0..4).map(|k| a[r * 4 + k] * b[k * 4 + c]).sum();
        }
    }
    out
}

/// Squared concurrence of `ρ = Σ_a |v_a⟩⟨v_a|` from the singular values of
/// the symmetric matrix `τ_ab = v_a^T (Y⊗Y) v_b`.
///
/// With at most two vectors the result `‖τ‖² − 2|det τ|` is polynomial in
/// the amplitudes and avoids square roots of near-zero eigenvalues.
pub fn concurrence_sq_from_ensemble(vectors: &[Vec<C64>]) -> Result<f64> {
    let k = vectors.len();
    let mut tau = vec![ZERO; k * k];
    for a in 0..k {
        for b in 0..k {
            tau[a * k + b] = spin_flip_form(&vectors[a], &vectors[b]);
        }
    }
    let c2 = match k {
        0 => 0.0,
        1 => tau[0].norm_sqr(),
        2 => {
            let fro: f64 = tau.iter().map(|z| z.norm_sqr()).sum();
            let det = tau[0] * tau[3] - tau[1] * tau[2];
            fro - 2.0 * det.norm()
        }
        _ => {
            let mut gram = vec![ZERO; k * k];
            for r in 0..k {
                for c in 0..k {
                    gram[r * k + c] = (0..k).map(|j| tau[r * k + j] * tau[c * k + j].conj()).sum();
                }
            }
            let sv: Vec<f64> = hermitian_eigen(&gram, k)?
                .values
                .iter()
                .map(|m| m.max(0.0).sqrt())
                .collect();
            let c = (sv[0] - sv[1..].iter().sum::<f64>()).max(0.0);
            c * c
        }
    };
    Ok(c2.clamp(0.0, 1.0))
}

/// Orthonormal eigenbasis of the reduced state of `block`, descending.
pub fn block_support(s: &PureStateN, block: &[usize]) -> Result<HermitianEigen> {
    partial_trace(s, block).eigen()
}

/// Squared concurrence between qubits `i` and `j` of a pure state.
///
/// The traced-out qubits are first rotated onto the eigenbasis of their
/// reduced state and directions with weight below [`SUPPORT_CUTOFF`] dropped,
/// so a rank-2 environment always takes the polynomial path.
pub fn pair_concurrence_sq(s: &PureStateN, i: usize, j: usize) -> Result<f64> {
    assert_ne!(i, j);
    let keep = [i, j];
    let raw = s.conditional_vectors(&keep);
    let vectors = if raw.len() <= 2 {
        raw
    } else {
        let rest = s.complement(&keep);
        let support = block_support(s, &rest)?;
        support
            .values
            .iter()
            .zip(&support.vectors)
            .filter(|(lam, _)| **lam > SUPPORT_CUTOFF)
            .map(|(_, v)| {
                let mut phi = vec![ZERO; 4];
                for (t, psi_t) in raw.iter().enumerate() {
                    for (x, p) in phi.iter_mut().zip(psi_t) {
                        *x += v[t].conj() * p;
                    }
                }
                phi
            })
            .collect()
    };
    concurrence_sq_from_ensemble(&vectors)
}

/// All seven tangles of a 3-qubit pure state by brute force.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectReport {
    pub tangles: Tangles,
    pub ckw_residuals: [f64; 3],
    pub classification: Classification,
}

pub fn full_report_direct(s: &PureStateN, tol: f64) -> Result<DirectReport> {
    let three = ThreeQubitPure::try_from(s)?;
    let tangles = Tangles {
        tau: three_tangle_direct(&three),
        c2_sp_se: purity_tangle_of(s, 0),
        c2_s_spe: purity_tangle_of(s, 1),
        c2_e_ssp: purity_tangle_of(s, 2),
        c2_sps: pair_concurrence_sq(s, 0, 1)?,
        c2_spe: pair_concurrence_sq(s, 0, 2)?,
        c2_se: pair_concurrence_sq(s, 1, 2)?,
    };
    Ok(DirectReport {
        ckw_residuals: tangles.ckw_residuals(),
        tangles,
        classification: classify_direct(&three, tol),
    })
}
