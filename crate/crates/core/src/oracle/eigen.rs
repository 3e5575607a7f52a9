//! Cyclic Jacobi eigensolver for small dense complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq = |a_pq| e^{iθ}`
//! with `D = diag(.., 1, .., e^{−iθ}, ..)`, then applies the real Jacobi
//! rotation that annihilates the now-real pivot.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;
/// Relative off-diagonal Frobenius norm at which a matrix counts as diagonal.
const OFF_TOL: f64 = 1e-15;
const ZERO: C64 = C64::new(0.0, 0.0);

/// Eigen-decomposition `A = V diag(λ) V†`, eigenvalues descending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub n: usize,
    pub values: Vec<f64>,
    /// Column `k` (stored as `vectors[k]`) is the eigenvector of `values[k]`.
    pub vectors: Vec<Vec<C64>>,
}

impl HermitianEigen {
    /// `V diag(f(λ)) V†`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Vec<C64> {
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for (lam, v) in self.values.iter().zip(&self.vectors) {
            let w = f(*lam);
            for r in 0..n {
                for c in 0..n {
                    out[r * n + c] += v[r] * v[c].conj() * w;
                }
            }
        }
        out
    }
}

fn off_norm(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[r * n + c].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigen-decomposition of the row-major `n × n` Hermitian matrix `a`.
///
/// Only the upper triangle's Hermitian part is trusted: the input is
/// symmetrized as `(A + A†)/2` first.
pub fn hermitian_eigen(a: &[C64], n: usize) -> Result<HermitianEigen> {
    assert_eq!(a.len(), n * n, "matrix must be {n}x{n}");
    let mut m = vec![ZERO; n * n];
    for r in 0..n {
        for c in 0..n {
            m[r * n + c] = (a[r * n + c] + a[c * n + r].conj()) * 0.5;
        }
    }
    let mut v = vec![ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = C64::new(1.0, 0.0);
    }
    let scale = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

    let mut sweeps = 0;
    while off_norm(&m, n) > OFF_TOL * scale {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off: off_norm(&m, n),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].re.total_cmp(&m[i * n + i].re));
    Ok(HermitianEigen {
        n,
        values: order.iter().map(|&k| m[k * n + k].re).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|r| v[r * n + k]).collect())
            .collect(),
    })
}

fn rotate(m: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase = apq / b; // e^{iθ}
    let (app, aqq) = (m[p * n + p].re, m[q * n + q].re);
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J = D R restricted to (p, q): columns
    //   col p = (c, -s e^{-iθ}),  col q = (s, c e^{-iθ})
    let jpp = C64::new(c, 0.0);
    let jqp = phase.conj() * -s;
    let jpq = C64::new(s, 0.0);
    let jqq = phase.conj() * c;

    // M ← M J
    for r in 0..n {
        let (mp, mq) = (m[r * n + p], m[r * n + q]);
        m[r * n + p] = mp * jpp + mq * jqp;
        m[r * n + q] = mp * jpq + mq * jqq;
    }
    // M ← J† M
    for col in 0..n {
        let (mp, mq) = (m[p * n + col], m[q * n + col]);
        m[p * n + col] = jpp.conj() * mp + jqp.conj() * mq;
        m[q * n + col] = jpq.conj() * mp + jqq.conj() * mq;
    }
    m[p * n + q] = ZERO;
    m[q * n + p] = ZERO;
    m[p * n + p].im = 0.0;
    m[q * n + q].im = 0.0;
    // V ← V J
    for r in 0..n {
        let (vp, vq) = (v[r * n + p], v[r * n + q]);
        v[r * n + p] = vp * jpp + vq * jqp;
        v[r * n + q] = vp * jpq + vq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample4() -> Vec<C64> {
        let raw = [
            [c(0.9, 0.0), c(0.1, 0.3), c(-0.2, 0.1), c(0.05, -0.4)],
            [c(0.0, 0.0), c(0.3, 0.0), c(0.25, -0.2), c(0.1, 0.1)],
            [c(0.0, 0.0), c(0.0, 0.0), c(-0.4, 0.0), c(0.6, 0.2)],
            [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.2, 0.0)],
        ];
        let mut a = vec![c(0.0, 0.0); 16];
        for r in 0..4 {
            for col in r..4 {
                a[r * 4 + col] = raw[r][col];
                a[col * 4 + r] = raw[r][col].conj();
            }
        }
        a
    }

    #[test]
    fn reconstructs_input() {
        let a = sample4();
        let eig = hermitian_eigen(&a, 4).unwrap();
        let back = eig.map_values(|x| x);
        for (x, y) in a.iter().zip(&back) {
            assert!((x - y).norm() < 1e-13);
        }
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let eig = hermitian_eigen(&sample4(), 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let dot: C64 = eig.vectors[i].iter().zip(&eig.vectors[j]).map(|(a, b)| a.conj() * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn trace_and_determinant_preserved() {
        let a = sample4();
        let eig = hermitian_eigen(&a, 4).unwrap();
        let tr: f64 = (0..4).map(|i| a[i * 4 + i].re).sum();
        assert!((eig.values.iter().sum::<f64>() - tr).abs() < 1e-13);
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let mut a = vec![c(0.0, 0.0); 9];
        a[0] = c(0.1, 0.0);
        a[4] = c(0.7, 0.0);
        a[8] = c(0.2, 0.0);
        let eig = hermitian_eigen(&a, 3).unwrap();
        assert_eq!(eig.values, vec![0.7, 0.2, 0.1]);
    }
}
