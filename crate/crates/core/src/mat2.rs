//! Complex 2×2 matrices and the mixed determinant
//! `g(A, B) = Tr A · Tr B − Tr(AB) = det(A + B) − det A − det B`.
//!
//! Every closed form in this crate is assembled from determinants, traces
//! and this bilinear, similarity-invariant form.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

/// Absolute tolerance for algebraic identities between order-unity quantities.
pub const ALGEBRAIC_TOL: f64 = 1e-10;

#[derive(Clone, Copy, PartialEq, Default)]
pub struct CMat2 {
    m: [[C64; 2]; 2],
}

impl CMat2 {
    pub const fn new(a00: C64, a01: C64, a10: C64, a11: C64) -> Self {
        Self {
            m: [[a00, a01], [a10, a11]],
        }
    }

    pub const fn from_rows(m: [[C64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn real(a00: f64, a01: f64, a10: f64, a11: f64) -> Self {
        Self::new(a00.into(), a01.into(), a10.into(), a11.into())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn diag(d0: C64, d1: C64) -> Self {
        Self::new(d0, C64::new(0.0, 0.0), C64::new(0.0, 0.0), d1)
    }

    pub fn rows(&self) -> [[C64; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.m;
        Self::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn matvec(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Sum of squared moduli of all entries.
    pub fn frobenius_sq(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum()
    }
}

/// `Tr A · Tr B − Tr(AB)`.
///
/// Symmetric, bilinear and invariant under a common similarity transform.
/// For 2×2 matrices it equals `det(A + B) − det A − det B`.
pub fn mixed_det(a: &CMat2, b: &CMat2) -> C64 {
    a.trace() * b.trace() - (*a * *b).trace()
}

impl Index<(usize, usize)> for CMat2 {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.m[r][c]
    }
}

impl IndexMut<(usize, usize)> for CMat2 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.m[r][c]
    }
}

impl Add for CMat2 {
    type Output = CMat2;

    fn add(self, rhs: CMat2) -> CMat2 {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.m[r][c] += rhs.m[r][c];
            }
        }
        out
    }
}

impl Sub for CMat2 {
    type Output = CMat2;

    fn sub(self, rhs: CMat2) -> CMat2 {
        self + (-rhs)
    }
}

impl Neg for CMat2 {
    type Output = CMat2;

    fn neg(self) -> CMat2 {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for CMat2 {
    type Output = CMat2;

    fn mul(self, rhs: CMat2) -> CMat2 {
        let (a, b) = (&self.m, &rhs.m);
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        CMat2 { m: out }
    }
}

impl Mul<C64> for CMat2 {
    type Output = CMat2;

    fn mul(self, s: C64) -> CMat2 {
        self.scale(s)
    }
}

impl Mul<f64> for CMat2 {
    type Output = CMat2;

    fn mul(self, s: f64) -> CMat2 {
        self.scale(C64::new(s, 0.0))
    }
}

impl fmt::Debug for CMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample() -> (CMat2, CMat2) {
        let a = CMat2::new(c(0.3, -0.2), c(0.1, 0.7), c(-0.5, 0.05), c(0.9, 0.1));
        let b = CMat2::new(c(-0.4, 0.3), c(0.2, 0.2), c(0.6, -0.1), c(0.0, -0.8));
        (a, b)
    }

    #[test]
    fn identity_values() {
        let id = CMat2::identity();
        assert_eq!(mixed_det(&id, &id), c(2.0, 0.0));
        assert_eq!(id.det(), c(1.0, 0.0));
    }

    #[test]
    fn zero_argument_vanishes() {
        let (a, _) = sample();
        assert_eq!(mixed_det(&a, &CMat2::zero()), c(0.0, 0.0));
    }

    #[test]
    fn ad_k0_trace() {
        let k0 = CMat2::real(1.0, 0.0, 0.0, 0.5f64.sqrt());
        assert!((k0.trace() - c(1.0 + 0.5f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mixed_det_is_polarized_determinant() {
        let (a, b) = sample();
        let via_det = (a + b).det() - a.det() - b.det();
        assert!((mixed_det(&a, &b) - via_det).norm() < ALGEBRAIC_TOL);
    }

    #[test]
    fn adjoint_is_involution() {
        let (a, _) = sample();
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn product_matches_hand_expansion() {
        let a = CMat2::real(1.0, 2.0, 3.0, 4.0);
        let b = CMat2::real(0.0, 1.0, 1.0, 0.0);
        assert_eq!(a * b, CMat2::real(2.0, 1.0, 4.0, 3.0));
        assert_eq!(a - a, CMat2::zero());
    }
}
