//! Test-only oracles, independent of the library's numerical routes.
#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix4, Matrix6};
use rand::rngs::StdRng;
use rand::Rng;

/// Two-mode squeezed vacuum covariance, xpxp ordering, vacuum variance 1/2.
pub fn tmsv(r: f64) -> Matrix4<f64> {
    let (c, s) = ((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0);
    #[rustfmt::skip]
    let m = Matrix4::new(
        c,   0.0, s,   0.0,
        0.0, c,   0.0, -s,
        s,   0.0, c,   0.0,
        0.0, -s,  0.0, c,
    );
    m
}

/// Random symplectic matrix on `modes` modes built from single-mode
/// squeezers, phase rotations and beam splitters.
pub fn random_symplectic(rng: &mut StdRng, modes: usize, layers: usize) -> DMatrix<f64> {
    let n = 2 * modes;
    let mut s = DMatrix::<f64>::identity(n, n);
    for _ in 0..layers {
        for k in 0..modes {
            let r: f64 = rng.random_range(-0.8..0.8);
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let mut e = DMatrix::<f64>::identity(n, n);
            let (sn, cs) = theta.sin_cos();
            // rotation then squeeze on mode k
            e[(2 * k, 2 * k)] = r.exp() * cs;
            e[(2 * k, 2 * k + 1)] = r.exp() * sn;
            e[(2 * k + 1, 2 * k)] = -(-r).exp() * sn;
            e[(2 * k + 1, 2 * k + 1)] = (-r).exp() * cs;
            s = e * s;
        }
        for k in 0..modes.saturating_sub(1) {
            let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let (sn, cs) = t.sin_cos();
            let mut e = DMatrix::<f64>::identity(n, n);
            for q in 0..2 {
                let (a, b) = (2 * k + q, 2 * (k + 1) + q);
                e[(a, a)] = cs;
                e[(a, b)] = sn;
                e[(b, a)] = -sn;
                e[(b, b)] = cs;
            }
            s = e * s;
        }
    }
    s
}

/// Random physical covariance matrix S·diag(ν)·Sᵀ with ν ≥ 1/2.
pub fn random_physical_cm(rng: &mut StdRng, modes: usize) -> DMatrix<f64> {
    let s = random_symplectic(rng, modes, 3);
    let mut d = DMatrix::<f64>::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        let nu = 0.5 + rng.random_range(0.0..3.0f64).powi(2);
        d[(2 * k, 2 * k)] = nu;
        d[(2 * k + 1, 2 * k + 1)] = nu;
    }
    let v = &s * d * s.transpose();
    (&v + v.transpose()) * 0.5
}

pub fn random_physical_cm4(rng: &mut StdRng) -> Matrix4<f64> {
    let v = random_physical_cm(rng, 2);
    Matrix4::from_fn(|r, c| v[(r, c)])
}

/// Symplectic check SΩSᵀ = Ω, used to validate the generator itself.
pub fn is_symplectic(s: &DMatrix<f64>, tol: f64) -> bool {
    let n = s.nrows();
    let mut omega = DMatrix::<f64>::zeros(n, n);
    for k in 0..n / 2 {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    (s * &omega * s.transpose() - omega).norm() < tol
}

/// Random Hurwitz-stable 6×6 matrix: a random matrix shifted left of its
/// spectral abscissa, computed through the characteristic-free Gershgorin
/// bound (no eigen-solver involved).
pub fn random_stable(rng: &mut StdRng) -> Matrix6<f64> {
    let m: Matrix6<f64> = Matrix6::from_fn(|_, _| rng.random_range(-1.0..1.0));
    let gershgorin = (0..6)
        .map(|r| {
            m[(r, r)]
                + (0..6)
                    .filter(|&c| c != r)
                    .map(|c| m[(r, c)].abs())
                    .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let shift = gershgorin + rng.random_range(0.05..1.0);
    m - Matrix6::identity() * shift
}
