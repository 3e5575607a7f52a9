//! Seeded random instances for differential and property testing.
//!
//! Every generator takes the RNG explicitly. [`seeded`] gives each instance
//! its own ChaCha stream so results do not depend on iteration order or on
//! how work is split across threads.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bipartite::InitialReduced;
use crate::channels::{amplitude_damping, CMat4, KrausPair, TwoQubitPure};
use crate::mat2::CMat2;

pub fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar unitary of size `n` as columns, via Gram–Schmidt on a Ginibre matrix.
fn haar_columns<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<C64>> {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        for q in &cols {
            let overlap: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= overlap * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    cols
}

pub fn unitary2<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    let c = haar_columns(rng, 2);
    CMat2::new(c[0][0], c[1][0], c[0][1], c[1][1])
}

pub fn unitary4<R: Rng + ?Sized>(rng: &mut R) -> CMat4 {
    let c = haar_columns(rng, 4);
    let mut m = [[C64::new(0.0, 0.0); 4]; 4];
    for (col, v) in c.iter().enumerate() {
        for row in 0..4 {
            m[row][col] = v[row];
        }
    }
    CMat4::from_rows(m)
}

/// Uniformly random pure state of `S'S`.
pub fn two_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitPure {
    loop {
        let z: [C64; 4] = std::array::from_fn(|_| complex_gaussian(rng));
        if let Ok(psi) = TwoQubitPure::normalized(z[0], z[1], z[2], z[3]) {
            return psi;
        }
    }
}

/// Kraus pair read off a Haar-random dilation; generically GHZ class.
pub fn kraus_pair<R: Rng + ?Sized>(rng: &mut R) -> KrausPair {
    crate::channels::kraus_from_unitary(&unitary4(rng)).expect("Haar unitary is complete")
}

/// Random pair with `4 det(K₀K₁) = g²(K₀, K₁)`.
///
/// Amplitude damping with random strength, dressed by random unitaries on
/// `S` before and after and by a random basis change on `E`. Each of these
/// preserves the W-class condition.
pub fn w_class_pair<R: Rng + ?Sized>(rng: &mut R) -> KrausPair {
    let p: f64 = rng.random_range(0.02..0.98);
    let v = unitary2(rng);
    let w = unitary2(rng);
    let e = unitary2(rng);
    amplitude_damping(p)
        .and_then(|kp| kp.conjugated(&v, &w))
        .and_then(|kp| kp.mixed(&e))
        .expect("unitary dressing keeps completeness")
}

/// `ρ₀` with `ρ_ee`, `φ` and `|ρ_ge|` uniform over the Bloch ball slice.
pub fn initial_reduced<R: Rng + ?Sized>(rng: &mut R) -> InitialReduced {
    let rho_ee: f64 = rng.random();
    let phi = rng.random::<f64>() * TAU;
    let max = (rho_ee * (1.0 - rho_ee)).sqrt();
    InitialReduced::new(rho_ee, phi, max * rng.random::<f64>()).expect("inside the Bloch ball")
}

/// Matrix with entries uniform on the closed unit disc.
pub fn unit_disc_mat2<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    let mut entry = || C64::from_polar(rng.random::<f64>().sqrt(), rng.random::<f64>() * TAU);
    CMat2::new(entry(), entry(), entry(), entry())
}
