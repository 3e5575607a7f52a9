//! The 3-tangle, computed three ways:
//!
//! 1. [`three_tangle_direct`] from the eight amplitudes (`4|d₁ − 2d₂ + 4d₃|`),
//! 2. [`three_tangle_simplified`] from the coefficient matrices,
//!    `4|4 det(C₀C₁) − g²(C₀, C₁)|`,
//! 3. [`three_tangle_kraus`] from the Kraus pair alone,
//!    `E₀² |4 det(K₀K₁) − g²(K₀, K₁)|`.

use num_complex::Complex64 as C64;

use crate::channels::{KrausPair, NORM_TOL};
use crate::error::{Error, Result};
use crate::mat2::{mixed_det, CMat2};

/// Pure state of `S'SE`, amplitude `c_{nlm}` stored at `4n + 2l + m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeQubitPure {
    amps: [C64; 8],
}

impl ThreeQubitPure {
    pub fn new(amps: [C64; 8]) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL || !norm_sq.is_finite() {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amps })
    }

    pub fn from_coeffs(c0: &CMat2, c1: &CMat2) -> Result<Self> {
        let mut amps = [C64::new(0.0, 0.0); 8];
        for (n, c) in [c0, c1].into_iter().enumerate() {
            for l in 0..2 {
                for m in 0..2 {
                    amps[4 * n + 2 * l + m] = c[(l, m)];
                }
            }
        }
        Self::new(amps)
    }

    pub fn ghz() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut amps = [C64::new(0.0, 0.0); 8];
        amps[0] = h;
        amps[7] = h;
        Self { amps }
    }

    pub fn w() -> Self {
        let t = C64::new(1.0 / 3f64.sqrt(), 0.0);
        let mut amps = [C64::new(0.0, 0.0); 8];
        amps[1] = t;
        amps[2] = t;
        amps[4] = t;
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[C64; 8] {
        &self.amps
    }

    pub fn amplitude(&self, n: usize, l: usize, m: usize) -> C64 {
        self.amps[4 * n + 2 * l + m]
    }

    /// `(C₀, C₁)` with `C_n[l][m] = c_{nlm}`.
    pub fn coeffs(&self) -> (CMat2, CMat2) {
        let block = |n: usize| {
            CMat2::new(
                self.amplitude(n, 0, 0),
                self.amplitude(n, 0, 1),
                self.amplitude(n, 1, 0),
                self.amplitude(n, 1, 1),
            )
        };
        (block(0), block(1))
    }
}

fn finish(raw: f64) -> f64 {
    debug_assert!(raw <= 1.0 + 1e-9, "3-tangle {raw} exceeds 1");
    raw.clamp(0.0, 1.0)
}

/// Cayley hyperdeterminant route, with `a_{ij} = c_{0ij}`, `b_{ij} = c_{1ij}`.
pub fn three_tangle_direct(s: &ThreeQubitPure) -> f64 {
    let a = |i: usize, j: usize| s.amplitude(0, i, j);
    let b = |i: usize, j: usize| s.amplitude(1, i, j);
    let sq = |z: C64| z * z;

    let d1 = sq(a(0, 0)) * sq(b(1, 1))
        + sq(a(0, 1)) * sq(b(1, 0))
        + sq(a(1, 0)) * sq(b(0, 1))
        + sq(a(1, 1)) * sq(b(0, 0));
    let d2 = a(0, 0) * a(1, 1) * b(0, 0) * b(1, 1)
        + a(0, 1) * a(1, 0) * b(1, 0) * b(0, 1)
        + (a(1, 0) * b(0, 1) + a(0, 1) * b(1, 0)) * (a(0, 0) * b(1, 1) + a(1, 1) * b(0, 0));
    let d3 = a(0, 0) * a(1, 1) * b(1, 0) * b(0, 1) + a(0, 1) * a(1, 0) * b(0, 0) * b(1, 1);

    finish(4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm())
}

/// `4 |4 det(C₀C₁) − g²(C₀, C₁)|`.
pub fn three_tangle_simplified(c0: &CMat2, c1: &CMat2) -> f64 {
    let g = mixed_det(c0, c1);
    finish(4.0 * ((*c0 * *c1).det() * 4.0 - g * g).norm())
}

/// `E₀² |4 det(K₀K₁) − g²(K₀, K₁)|`; depends on the initial state only
/// through its entanglement `e0sq`.
pub fn three_tangle_kraus(kp: &KrausPair, e0sq: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&e0sq) {
        return Err(Error::OutOfRange {
            name: "e0sq",
            value: e0sq,
            range: "[0, 1]".into(),
        });
    }
    Ok(finish(e0sq * kp.ghz_gap()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{amplitude_damping, dephasing, phase_flip};

    #[test]
    fn canonical_states() {
        assert!((three_tangle_direct(&ThreeQubitPure::ghz()) - 1.0).abs() < 1e-15);
        assert!(three_tangle_direct(&ThreeQubitPure::w()) < 1e-15);
        let mut prod = [C64::new(0.0, 0.0); 8];
        prod[0] = C64::new(1.0, 0.0);
        assert_eq!(three_tangle_direct(&ThreeQubitPure::new(prod).unwrap()), 0.0);
    }

    #[test]
    fn simplified_on_canonical_states() {
        let (c0, c1) = ThreeQubitPure::ghz().coeffs();
        assert!((three_tangle_simplified(&c0, &c1) - 1.0).abs() < 1e-15);
        let (c0, c1) = ThreeQubitPure::w().coeffs();
        assert!(three_tangle_simplified(&c0, &c1) < 1e-15);
        assert_eq!(three_tangle_simplified(&c0, &CMat2::zero()), 0.0);
    }

    #[test]
    fn kraus_route_on_builtin_channels() {
        let t = three_tangle_kraus(&dephasing(1.0).unwrap(), 0.4).unwrap();
        assert!((t - 0.4).abs() < 1e-15);
        let t = three_tangle_kraus(&phase_flip(1.0).unwrap(), 0.4).unwrap();
        assert!((t - 0.4).abs() < 1e-15);
        for i in 0..=10 {
            let p = i as f64 / 10.0;
            for e in [0.1, 0.4, 1.0] {
                assert_eq!(three_tangle_kraus(&amplitude_damping(p).unwrap(), e).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn kraus_route_is_linear_in_e0sq() {
        let kp = phase_flip(0.37).unwrap();
        let unit = three_tangle_kraus(&kp, 1.0).unwrap();
        for x in [0.0, 0.2, 0.55, 0.9] {
            assert!((three_tangle_kraus(&kp, x).unwrap() - x * unit).abs() < 1e-15);
        }
    }

    #[test]
    fn kraus_route_rejects_bad_e0sq() {
        assert!(three_tangle_kraus(&KrausPair::identity(), 1.2).is_err());
    }

    #[test]
    fn coefficient_round_trip() {
        let s = ThreeQubitPure::w();
        let (c0, c1) = s.coeffs();
        assert_eq!(ThreeQubitPure::from_coeffs(&c0, &c1).unwrap(), s);
    }
}
