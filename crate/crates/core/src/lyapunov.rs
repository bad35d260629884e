//! Stability gate and steady-state covariance from 𝒜𝒱 + 𝒱𝒜ᵀ + 𝒟 = 0.

use nalgebra::{DMatrix, Matrix6, SMatrix, SVector, Schur};

use crate::error::{Error, Result};
use crate::matrices::{DiffusionMatrix, DriftMatrix};

/// Symplectic eigenvalues may undershoot 1/2 by this much and still count
/// as physical.
pub const PHYSICALITY_TOL: f64 = 1e-8;

const SCHUR_MAX_ITER: usize = 10_000;

type Vec36 = SVector<f64, 36>;
type Mat36 = SMatrix<f64, 36, 36>;

/// Largest real part of the spectrum of `a`. The dynamics are stable iff the
/// result is negative.
pub fn stability_margin(a: &DriftMatrix) -> Result<f64> {
    let schur = Schur::try_new(a.0, f64::EPSILON, SCHUR_MAX_ITER).ok_or(Error::EigenFailure)?;
    let eig = schur.complex_eigenvalues();
    let margin = eig.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    if margin.is_finite() {
        Ok(margin)
    } else {
        Err(Error::EigenFailure)
    }
}

/// Steady-state covariance over (X_n, Y_n, X_m, Y_m, q, p), vacuum
/// variance 1/2. Always exactly symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Matrix6<f64>);

impl CovarianceMatrix {
    /// Symmetrizes on construction.
    pub fn new(v: Matrix6<f64>) -> Self {
        CovarianceMatrix((v + v.transpose()) * 0.5)
    }

    pub fn as_matrix(&self) -> &Matrix6<f64> {
        &self.0
    }

    /// ‖𝒜𝒱 + 𝒱𝒜ᵀ + 𝒟‖_F / ‖𝒟‖_F (absolute norm if 𝒟 = 0).
    pub fn lyapunov_residual(&self, a: &DriftMatrix, d: &DiffusionMatrix) -> f64 {
        let r = a.0 * self.0 + self.0 * a.0.transpose() + d.to_matrix();
        let scale = d.0.norm();
        if scale > 0.0 {
            r.norm() / scale
        } else {
            r.norm()
        }
    }

    /// The three symplectic eigenvalues, ascending.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        symplectic_eigenvalues(&DMatrix::from_column_slice(6, 6, self.0.as_slice()))
    }

    /// Fails with [`Error::Unphysical`] if any symplectic eigenvalue is below
    /// 1/2 − [`PHYSICALITY_TOL`].
    pub fn check_physical(&self) -> Result<()> {
        let nu = self.symplectic_eigenvalues()?;
        match nu.first() {
            Some(&min) if min >= 0.5 - PHYSICALITY_TOL => Ok(()),
            Some(&min) => Err(Error::Unphysical(format!(
                "minimum symplectic eigenvalue {min} < 1/2"
            ))),
            None => Err(Error::EigenFailure),
        }
    }
}

/// Symplectic spectrum of an even-dimensional real symmetric matrix: the
/// moduli of the (purely imaginary, paired) eigenvalues of Ω·v with
/// Ω = ⊕ [[0, 1], [−1, 0]]. Returns one value per mode, ascending.
pub fn symplectic_eigenvalues(v: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = v.nrows();
    assert!(
        n.is_multiple_of(2) && v.ncols() == n,
        "expected an even square matrix"
    );
    let mut omega_v = DMatrix::zeros(n, n);
    for k in 0..n / 2 {
        let (x, p) = (2 * k, 2 * k + 1);
        for c in 0..n {
            omega_v[(x, c)] = v[(p, c)];
            omega_v[(p, c)] = -v[(x, c)];
        }
    }
    let schur = Schur::try_new(omega_v, f64::EPSILON, SCHUR_MAX_ITER).ok_or(Error::EigenFailure)?;
    let mut moduli: Vec<f64> = schur
        .complex_eigenvalues()
        .iter()
        .map(|l| l.im.abs())
        .collect();
    moduli.sort_by(f64::total_cmp);
    // Eigenvalues come in ±iν pairs; keep one of each.
    Ok(moduli.into_iter().step_by(2).collect())
}

/// Solves 𝒜𝒱 + 𝒱𝒜ᵀ + 𝒟 = 0 through the 36×36 vectorized system
/// (I ⊗ 𝒜 + 𝒜 ⊗ I) vec 𝒱 = −vec 𝒟, with one step of iterative
/// refinement, then symmetrizes.
pub fn solve_lyapunov(a: &DriftMatrix, d: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    let margin = stability_margin(a)?;
    if margin >= 0.0 {
        return Err(Error::Unstable {
            margin,
            branch: None,
        });
    }
    solve_vectorized(&a.0, &d.to_matrix())
}

fn solve_vectorized(a: &Matrix6<f64>, d: &Matrix6<f64>) -> Result<CovarianceMatrix> {
    let mut m = Mat36::zeros();
    // Column-major vec: element (r, c) of 𝒱 lives at c·6 + r.
    for c in 0..6 {
        for r in 0..6 {
            let row = c * 6 + r;
            for k in 0..6 {
                m[(row, c * 6 + k)] += a[(r, k)];
                m[(row, k * 6 + r)] += a[(c, k)];
            }
        }
    }
    let rhs = -Vec36::from_column_slice(d.as_slice());
    let lu = m.lu();
    let mut x = lu.solve(&rhs).ok_or(Error::SingularSystem)?;
    if let Some(dx) = lu.solve(&(rhs - m * x)) {
        x += dx;
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularSystem);
    }
    Ok(CovarianceMatrix::new(Matrix6::from_column_slice(
        x.as_slice(),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector6;

    #[test]
    fn margin_of_diagonal() {
        let a = DriftMatrix(-Matrix6::identity());
        assert!((stability_margin(&a).unwrap() + 1.0).abs() < 1e-14);
        let a = DriftMatrix(Matrix6::from_diagonal(&Vector6::new(
            -1., -2., -3., -4., -5., 0.5,
        )));
        assert!((stability_margin(&a).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn scalar_balance() {
        let a = DriftMatrix(-Matrix6::identity());
        let d = DiffusionMatrix(Vector6::repeat(2.0));
        let v = solve_lyapunov(&a, &d).unwrap();
        assert!((v.0 - Matrix6::identity()).norm() < 1e-13);
    }

    #[test]
    fn decoupled_modes() {
        let diag = Vector6::new(-1., -2., -4., -5., -8., -10.);
        let a = DriftMatrix(Matrix6::from_diagonal(&diag));
        let d = DiffusionMatrix(Vector6::repeat(1.0));
        let v = solve_lyapunov(&a, &d).unwrap();
        let expected = [0.5, 0.25, 0.125, 0.1, 1.0 / 16.0, 0.05];
        for (i, e) in expected.iter().enumerate() {
            assert!((v.0[(i, i)] - e).abs() < 1e-14);
        }
        assert!(v.lyapunov_residual(&a, &d) < 1e-14);
    }

    #[test]
    fn unstable_is_rejected() {
        let a = DriftMatrix(Matrix6::from_diagonal(&Vector6::new(
            -1., -2., -3., -4., -5., 0.5,
        )));
        let d = DiffusionMatrix(Vector6::repeat(1.0));
        assert!(matches!(
            solve_lyapunov(&a, &d),
            Err(Error::Unstable { margin, branch: None }) if margin > 0.0
        ));
    }

    #[test]
    fn singular_system() {
        // A spectrum symmetric about zero makes I⊗A + A⊗I singular.
        let a = Matrix6::from_diagonal(&Vector6::new(-1., 1., -2., -3., -4., -5.));
        let d = Matrix6::identity();
        assert!(matches!(
            solve_vectorized(&a, &d),
            Err(Error::SingularSystem)
        ));
    }

    #[test]
    fn vacuum_symplectic_spectrum() {
        let v = CovarianceMatrix::new(Matrix6::identity() * 0.5);
        let nu = v.symplectic_eigenvalues().unwrap();
        assert_eq!(nu.len(), 3);
        for x in nu {
            assert!((x - 0.5).abs() < 1e-14);
        }
        v.check_physical().unwrap();
        let bad = CovarianceMatrix::new(Matrix6::identity() * 0.3);
        assert!(matches!(bad.check_physical(), Err(Error::Unphysical(_))));
    }

    #[test]
    fn symmetrized_on_construction() {
        let mut m = Matrix6::identity();
        m[(0, 1)] = 1.0;
        let v = CovarianceMatrix::new(m);
        assert_eq!(v.0[(0, 1)], 0.5);
        assert_eq!(v.0[(1, 0)], 0.5);
    }
}
