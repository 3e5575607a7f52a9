//! Kraus pairs: the built-in decoherence families, extraction from an
//! arbitrary `S–E` unitary, and the evolved coefficient matrices.
//!
//! A Kraus pair is read off a unitary as `K_μ = ⟨μ|_E U |0⟩_E`, so the map on
//! `S ⊗ E` is `|s⟩|0⟩ ↦ Σ_μ (K_μ|s⟩)|μ⟩`.

use std::fmt;
use std::ops::{Index, Mul};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::mat2::{mixed_det, CMat2};

/// Entrywise tolerance for `K₀†K₀ + K₁†K₁ = I` and `U†U = I`.
pub const COMPLETENESS_TOL: f64 = 1e-9;
/// Tolerance on `‖ψ‖² = 1` for input states.
pub const NORM_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: p,
            range: "[0, 1]".into(),
        })
    }
}

/// Two Kraus operators acting on qubit `S`, validated for completeness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KrausPair {
    k0: CMat2,
    k1: CMat2,
}

impl KrausPair {
    pub fn new(k0: CMat2, k1: CMat2) -> Result<Self> {
        if !k0.is_finite() || !k1.is_finite() {
            return Err(Error::Invalid("Kraus operator has non-finite entries".into()));
        }
        let residual = completeness_residual(&k0, &k1);
        if residual > COMPLETENESS_TOL {
            return Err(Error::Incomplete { residual });
        }
        Ok(Self { k0, k1 })
    }

    pub fn identity() -> Self {
        Self {
            k0: CMat2::identity(),
            k1: CMat2::zero(),
        }
    }

    pub fn k0(&self) -> &CMat2 {
        &self.k0
    }

    pub fn k1(&self) -> &CMat2 {
        &self.k1
    }

    /// `u = 4 det(K₀K₁)`.
    pub fn det_product(&self) -> C64 {
        (self.k0 * self.k1).det() * 4.0
    }

    /// `v = g²(K₀, K₁)`.
    pub fn mixed_det_sq(&self) -> C64 {
        let g = mixed_det(&self.k0, &self.k1);
        g * g
    }

    /// `|4 det(K₀K₁) − g²(K₀, K₁)|`, the 3-tangle per unit of initial entanglement.
    pub fn ghz_gap(&self) -> f64 {
        (self.det_product() - self.mixed_det_sq()).norm()
    }

    /// `K_μ → V K_μ W` for both operators.
    pub fn conjugated(&self, v: &CMat2, w: &CMat2) -> Result<Self> {
        Self::new(*v * self.k0 * *w, *v * self.k1 * *w)
    }

    /// Change of measurement basis on `E`: `K'_μ = Σ_ν w_{μν} K_ν`.
    pub fn mixed(&self, w: &CMat2) -> Result<Self> {
        Self::new(
            self.k0 * w[(0, 0)] + self.k1 * w[(0, 1)],
            self.k0 * w[(1, 0)] + self.k1 * w[(1, 1)],
        )
    }

    /// A unitary on `S ⊗ E` whose `|0⟩_E` columns reproduce this pair.
    ///
    /// The two remaining columns are completed by Gram–Schmidt against the
    /// computational basis.
    pub fn dilation(&self) -> CMat4 {
        let mut cols: Vec<[C64; 4]> = Vec::with_capacity(4);
        for s in 0..2 {
            let mut col = [ZERO; 4];
            for sp in 0..2 {
                col[2 * sp] = self.k0[(sp, s)];
                col[2 * sp + 1] = self.k1[(sp, s)];
            }
            cols.push(col);
        }
        let project_out = |v: &mut [C64; 4], basis: &[[C64; 4]]| {
            for b in basis {
                let overlap: C64 = b.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= overlap * bi;
                }
            }
        };
        while cols.len() < 4 {
            let best = (0..4)
                .map(|k| {
                    let mut v = [ZERO; 4];
                    v[k] = C64::new(1.0, 0.0);
                    project_out(&mut v, &cols);
                    project_out(&mut v, &cols);
                    v
                })
                .max_by(|a, b| norm4(a).total_cmp(&norm4(b)))
                .expect("four candidates");
            let n = norm4(&best);
            cols.push(best.map(|z| z / n));
        }
        // columns 0, 2 carry e = 0; columns 1, 3 the completion
        let order = [cols[0], cols[2], cols[1], cols[3]];
        let mut m = [[ZERO; 4]; 4];
        for (c, col) in order.iter().enumerate() {
            for r in 0..4 {
                m[r][c] = col[r];
            }
        }
        CMat4::from_rows(m)
    }
}

fn norm4(v: &[C64; 4]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Max entrywise deviation of `K₀†K₀ + K₁†K₁` from the identity.
pub fn completeness_residual(k0: &CMat2, k1: &CMat2) -> f64 {
    (k0.adjoint() * *k0 + k1.adjoint() * *k1 - CMat2::identity()).max_abs()
}

/// Amplitude damping: `K₀ = diag(1, √(1−p))`, `K₁ = √p |0⟩⟨1|`.
pub fn amplitude_damping(p: f64) -> Result<KrausPair> {
    check_probability("p", p)?;
    KrausPair::new(
        CMat2::real(1.0, 0.0, 0.0, (1.0 - p).sqrt()),
        CMat2::real(0.0, p.sqrt(), 0.0, 0.0),
    )
}

/// Dephasing: `K₀ = diag(1, √(1−p))`, `K₁ = diag(0, √p)`.
pub fn dephasing(p: f64) -> Result<KrausPair> {
    check_probability("p", p)?;
    KrausPair::new(
        CMat2::real(1.0, 0.0, 0.0, (1.0 - p).sqrt()),
        CMat2::real(0.0, 0.0, 0.0, p.sqrt()),
    )
}

/// Phase flip with error probability `p/2`: `K₀ = √(1−p/2) I`, `K₁ = √(p/2) Z`.
pub fn phase_flip(p: f64) -> Result<KrausPair> {
    check_probability("p", p)?;
    let a = (1.0 - p / 2.0).sqrt();
    let b = (p / 2.0).sqrt();
    KrausPair::new(CMat2::real(a, 0.0, 0.0, a), CMat2::real(b, 0.0, 0.0, -b))
}

/// `K_μ[s', s] = U[2s' + μ, 2s]`, i.e. `K_μ = ⟨μ|_E U |0⟩_E`.
pub fn kraus_from_unitary(u: &CMat4) -> Result<KrausPair> {
    let residual = u.unitarity_residual();
    if residual > COMPLETENESS_TOL {
        return Err(Error::NotUnitary { residual });
    }
    let block = |mu: usize| {
        let mut k = CMat2::zero();
        for sp in 0..2 {
            for s in 0..2 {
                k[(sp, s)] = u[(2 * sp + mu, 2 * s)];
            }
        }
        k
    };
    KrausPair::new(block(0), block(1))
}

/// Pure state of `S'S`: `α|11⟩ + β|10⟩ + γ|01⟩ + δ|00⟩` (first label is `S'`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitPure {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
}

impl TwoQubitPure {
    pub fn new(alpha: C64, beta: C64, gamma: C64, delta: C64) -> Result<Self> {
        let s = Self {
            alpha,
            beta,
            gamma,
            delta,
        };
        let norm_sq = s.norm_sq();
        if (norm_sq - 1.0).abs() > NORM_TOL || !norm_sq.is_finite() {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(s)
    }

    /// Rescales the amplitudes to unit norm. Fails on the zero vector.
    pub fn normalized(alpha: C64, beta: C64, gamma: C64, delta: C64) -> Result<Self> {
        let n = (alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr() + delta.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized { norm_sq: n * n });
        }
        Self::new(alpha / n, beta / n, gamma / n, delta / n)
    }

    /// Amplitudes indexed `[s'][s]`.
    pub fn from_amplitudes(a: [[C64; 2]; 2]) -> Result<Self> {
        Self::new(a[1][1], a[1][0], a[0][1], a[0][0])
    }

    pub fn bell() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            alpha: h,
            beta: ZERO,
            gamma: ZERO,
            delta: h,
        }
    }

    pub fn amplitudes(&self) -> [[C64; 2]; 2] {
        [[self.delta, self.gamma], [self.beta, self.alpha]]
    }

    /// Amplitude of `|s' s⟩`.
    pub fn amplitude(&self, s_prime: usize, s: usize) -> C64 {
        self.amplitudes()[s_prime][s]
    }

    fn norm_sq(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr() + self.gamma.norm_sqr() + self.delta.norm_sqr()
    }

    /// Exchanges the roles of `S'` and `S`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.alpha,
            beta: self.gamma,
            gamma: self.beta,
            delta: self.delta,
        }
    }
}

/// Coefficient matrices `(C₀, C₁)` of the evolved state: `C_n[l][m] = c_{nlm}`
/// with `n = S'`, `l = S`, `m = E`.
///
/// Column `m` of `C_n` is `K_m` applied to the `S` amplitudes paired with
/// `|n⟩_{S'}`.
pub fn evolved_coeffs(kp: &KrausPair, psi0: &TwoQubitPure) -> (CMat2, CMat2) {
    let coeffs = |x: C64, y: C64| {
        let col0 = CMat2::new(x, ZERO, y, ZERO);
        let col1 = CMat2::new(ZERO, x, ZERO, y);
        *kp.k0() * col0 + *kp.k1() * col1
    };
    (
        coeffs(psi0.delta, psi0.gamma),
        coeffs(psi0.beta, psi0.alpha),
    )
}

/// Complex 4×4 matrix over `S ⊗ E`, row-major with index `2s + e`.
#[derive(Clone, Copy, PartialEq)]
pub struct CMat4 {
    m: [[C64; 4]; 4],
}

impl CMat4 {
    pub const fn from_rows(m: [[C64; 4]; 4]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = C64::new(1.0, 0.0);
        }
        Self { m }
    }

    /// CNOT with `S` as control and `E` as target.
    pub fn cnot() -> Self {
        let one = C64::new(1.0, 0.0);
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = one;
        m[1][1] = one;
        m[2][3] = one;
        m[3][2] = one;
        Self { m }
    }

    pub fn rows(&self) -> [[C64; 4]; 4] {
        self.m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = self.m[c][r].conj();
            }
        }
        Self { m }
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| self.m[r][c] * v[c]).sum();
        }
        out
    }

    /// Max entrywise deviation of `U†U` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.adjoint() * *self;
        let mut worst: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((prod.m[r][c] - target).norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for CMat4 {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.m[r][c]
    }
}

impl Mul for CMat4 {
    type Output = CMat4;

    fn mul(self, rhs: CMat4) -> CMat4 {
        let mut m = [[ZERO; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = (0..4).map(|k| self.m[r][k] * rhs.m[k][c]).sum();
            }
        }
        CMat4 { m }
    }
}

impl fmt::Debug for CMat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.m.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: &CMat2, b: &CMat2, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol
    }

    #[test]
    fn zero_strength_is_identity_channel() {
        for kp in [amplitude_damping(0.0), dephasing(0.0), phase_flip(0.0)] {
            let kp = kp.unwrap();
            assert!(close(kp.k0(), &CMat2::identity(), 0.0));
            assert!(close(kp.k1(), &CMat2::zero(), 0.0));
        }
    }

    #[test]
    fn amplitude_damping_full_decay() {
        let kp = amplitude_damping(1.0).unwrap();
        assert_eq!(*kp.k0(), CMat2::real(1.0, 0.0, 0.0, 0.0));
        assert_eq!(*kp.k1(), CMat2::real(0.0, 1.0, 0.0, 0.0));
    }

    #[test]
    fn dephasing_full_strength() {
        let kp = dephasing(1.0).unwrap();
        assert_eq!(*kp.k0(), CMat2::real(1.0, 0.0, 0.0, 0.0));
        assert_eq!(*kp.k1(), CMat2::real(0.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn built_ins_are_complete_on_grid() {
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            for kp in [amplitude_damping(p), dephasing(p), phase_flip(p)] {
                let kp = kp.unwrap();
                assert!(completeness_residual(kp.k0(), kp.k1()) < 1e-15);
            }
        }
    }

    #[test]
    fn dephasing_mixed_det_sq_is_p() {
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let v = dephasing(p).unwrap().mixed_det_sq();
            assert!((v - C64::new(p, 0.0)).norm() < 1e-14, "p={p} v={v}");
        }
    }

    #[test]
    fn phase_flip_invariants() {
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let kp = phase_flip(p).unwrap();
            assert!((kp.det_product() - C64::new(p * (p - 2.0), 0.0)).norm() < 1e-14);
            assert!(mixed_det(kp.k0(), kp.k1()).norm() < 1e-15);
        }
    }

    #[test]
    fn strength_out_of_range_rejected() {
        assert!(matches!(amplitude_damping(-0.1), Err(Error::OutOfRange { .. })));
        assert!(matches!(dephasing(1.5), Err(Error::OutOfRange { .. })));
        assert!(phase_flip(f64::NAN).is_err());
    }

    #[test]
    fn incomplete_pair_rejected() {
        let err = KrausPair::new(CMat2::identity(), CMat2::identity()).unwrap_err();
        match err {
            Error::Incomplete { residual } => assert!((residual - 1.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn extraction_from_identity_and_cnot() {
        let kp = kraus_from_unitary(&CMat4::identity()).unwrap();
        assert_eq!(kp, KrausPair::identity());
        let kp = kraus_from_unitary(&CMat4::cnot()).unwrap();
        assert_eq!(kp, dephasing(1.0).unwrap());
    }

    #[test]
    fn extraction_rejects_non_unitary() {
        let mut rows = CMat4::identity().rows();
        rows[3][3] = C64::new(2.0, 0.0);
        let err = kraus_from_unitary(&CMat4::from_rows(rows)).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { residual } if (residual - 3.0).abs() < 1e-12));
    }

    #[test]
    fn dilation_round_trips() {
        for p in [0.0, 0.3, 1.0] {
            for kp in [amplitude_damping(p), dephasing(p), phase_flip(p)] {
                let kp = kp.unwrap();
                let u = kp.dilation();
                assert!(u.unitarity_residual() < 1e-12);
                let back = kraus_from_unitary(&u).unwrap();
                for (a, b) in [(kp.k0(), back.k0()), (kp.k1(), back.k1())] {
                    assert!(close(&(a.adjoint() * *a), &(b.adjoint() * *b), 1e-12));
                }
                assert!(close(&(kp.k0().adjoint() * *kp.k1()), &(back.k0().adjoint() * *back.k1()), 1e-12));
            }
        }
    }

    #[test]
    fn identity_channel_coefficients() {
        let psi = TwoQubitPure::normalized(
            C64::new(0.1, 0.2),
            C64::new(-0.3, 0.0),
            C64::new(0.5, -0.4),
            C64::new(0.2, 0.6),
        )
        .unwrap();
        let (c0, c1) = evolved_coeffs(&KrausPair::identity(), &psi);
        let z = ZERO;
        assert_eq!(c0, CMat2::new(psi.delta, z, psi.gamma, z));
        assert_eq!(c1, CMat2::new(psi.beta, z, psi.alpha, z));
    }

    #[test]
    fn bell_under_full_dephasing_is_ghz() {
        let (c0, c1) = evolved_coeffs(&dephasing(1.0).unwrap(), &TwoQubitPure::bell());
        assert!(close(&c0, &CMat2::real(H, 0.0, 0.0, 0.0), 1e-15));
        assert!(close(&c1, &CMat2::real(0.0, 0.0, 0.0, H), 1e-15));
    }

    #[test]
    fn unnormalized_state_rejected() {
        let one = C64::new(1.0, 0.0);
        assert!(matches!(
            TwoQubitPure::new(one, one, ZERO, ZERO),
            Err(Error::NotNormalized { .. })
        ));
        assert!(TwoQubitPure::normalized(ZERO, ZERO, ZERO, ZERO).is_err());
    }
}
