//! Bipartite entanglement of Gaussian states and the nonreciprocity contrast.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lyapunov::{symplectic_eigenvalues, CovarianceMatrix};

/// Maximum tolerated disagreement between the two symplectic-eigenvalue
/// routes, relative to max(1, ν̃).
pub const ROUTE_AGREEMENT_TOL: f64 = 1e-8;

/// Bipartition of the three modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSelector {
    /// photon–magnon
    Nm,
    /// magnon–phonon
    Mb,
    /// photon–phonon
    Nb,
}

impl PairSelector {
    pub const ALL: [PairSelector; 3] = [PairSelector::Nm, PairSelector::Mb, PairSelector::Nb];

    /// Zero-based quadrature indices of the two modes, in order.
    pub fn indices(self) -> [usize; 4] {
        match self {
            PairSelector::Nm => [0, 1, 2, 3],
            PairSelector::Mb => [2, 3, 4, 5],
            PairSelector::Nb => [0, 1, 4, 5],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairSelector::Nm => "nm",
            PairSelector::Mb => "mb",
            PairSelector::Nb => "nb",
        }
    }
}

impl fmt::Display for PairSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PairSelector::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown bipartition `{s}`")))
    }
}

/// 4×4 covariance matrix of the selected pair, rows/columns in order.
pub fn reduce_to_pair(v: &CovarianceMatrix, sel: PairSelector) -> Matrix4<f64> {
    let idx = sel.indices();
    let m = v.as_matrix();
    Matrix4::from_fn(|r, c| m[(idx[r], idx[c])])
}

/// Logarithmic negativity and the minimum partially transposed symplectic
/// eigenvalue of a two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Negativity {
    pub e: f64,
    pub nu_min: f64,
}

/// ℰ = max(0, −ln 2ν̃).
///
/// ν̃ is computed twice: from the spectrum of Ω·(P v P) with
/// P = diag(1, −1, 1, 1), and from the invariant Σ̃ = det A + det B − 2 det C.
/// The routes must agree to [`ROUTE_AGREEMENT_TOL`]; the closed form is
/// returned (it stays well defined where the spectrum is degenerate).
pub fn log_negativity(v4: &Matrix4<f64>) -> Result<Negativity> {
    if v4.cholesky().is_none() {
        return Err(Error::Unphysical(
            "two-mode covariance is not positive definite".into(),
        ));
    }
    let closed = nu_closed_form(v4)?;
    let spectral = nu_partial_transpose_spectrum(v4)?;
    if (closed - spectral).abs() > ROUTE_AGREEMENT_TOL * closed.max(1.0) {
        return Err(Error::RouteDisagreement {
            spectral,
            closed_form: closed,
        });
    }
    let e = -(2.0 * closed).ln();
    Ok(Negativity {
        e: if e > 0.0 { e } else { 0.0 },
        nu_min: closed,
    })
}

/// ν̃ from the local symplectic invariants of the partially transposed matrix.
pub fn nu_closed_form(v4: &Matrix4<f64>) -> Result<f64> {
    let a: Matrix2<f64> = v4.fixed_view::<2, 2>(0, 0).into_owned();
    let b: Matrix2<f64> = v4.fixed_view::<2, 2>(2, 2).into_owned();
    let c: Matrix2<f64> = v4.fixed_view::<2, 2>(0, 2).into_owned();
    let sigma = a.determinant() + b.determinant() - 2.0 * c.determinant();
    let det = v4.determinant();
    if det.is_nan() || det <= 0.0 || !sigma.is_finite() {
        return Err(Error::Unphysical(format!(
            "two-mode covariance has det {det}, Σ̃ {sigma}"
        )));
    }
    let mut disc = sigma * sigma - 4.0 * det;
    if disc < 0.0 {
        // Degenerate spectrum: tolerate round-off only.
        if disc < -1e-10 * sigma * sigma {
            return Err(Error::Unphysical(format!(
                "partially transposed spectrum is not real (Σ̃² − 4 det = {disc})"
            )));
        }
        disc = 0.0;
    }
    if sigma <= 0.0 {
        return Err(Error::Unphysical(format!("Σ̃ = {sigma} is not positive")));
    }
    // ν̃² = (Σ̃ − √disc)/2, written as 2 det / (Σ̃ + √disc) to avoid cancellation.
    let nu_sq = 2.0 * det / (sigma + disc.sqrt());
    Ok(nu_sq.sqrt())
}

/// ν̃ as the smallest modulus in the spectrum of Ω·(P v P).
pub fn nu_partial_transpose_spectrum(v4: &Matrix4<f64>) -> Result<f64> {
    let mut pt = *v4;
    // P = diag(1, −1, 1, 1): flip the sign of row and column 1.
    for k in 0..4 {
        if k != 1 {
            pt[(1, k)] = -pt[(1, k)];
            pt[(k, 1)] = -pt[(k, 1)];
        }
    }
    let nu = symplectic_eigenvalues(&DMatrix::from_column_slice(4, 4, pt.as_slice()))?;
    let min = nu[0];
    if min.is_nan() || min <= 0.0 {
        return Err(Error::Unphysical(format!("partially transposed ν̃ = {min}")));
    }
    Ok(min)
}

/// Bidirectional contrast |ℰ₊ − ℰ₋| / (ℰ₊ + ℰ₋), with 0/0 defined as 0.
pub fn contrast_ratio(e_plus: f64, e_minus: f64) -> f64 {
    let sum = e_plus + e_minus;
    if sum <= 0.0 {
        return 0.0;
    }
    ((e_plus - e_minus).abs() / sum).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{Matrix6, Vector4, Vector6};

    fn tmsv(r: f64) -> Matrix4<f64> {
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

    #[test]
    fn vacuum_is_separable() {
        let n = log_negativity(&(Matrix4::identity() * 0.5)).unwrap();
        assert_eq!(n.e, 0.0);
        assert!((n.nu_min - 0.5).abs() < 1e-14);
    }

    #[test]
    fn squeezed_vacuum_r_half() {
        let n = log_negativity(&tmsv(0.5)).unwrap();
        assert!((n.nu_min - (-1f64).exp() / 2.0).abs() < 1e-12);
        assert!((n.e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn thermal_products_are_separable() {
        for (a, b) in [(0.0, 0.0), (0.3, 2.0), (5.0, 0.1)] {
            let v = Matrix4::from_diagonal(&Vector4::new(a + 0.5, a + 0.5, b + 0.5, b + 0.5));
            assert_eq!(log_negativity(&v).unwrap().e, 0.0);
        }
    }

    #[test]
    fn unphysical_input() {
        let v = Matrix4::identity() * -0.5;
        assert!(matches!(log_negativity(&v), Err(Error::Unphysical(_))));
    }

    #[test]
    fn reductions() {
        let v = CovarianceMatrix::new(
            Matrix6::from_diagonal(&Vector6::new(1., 2., 3., 4., 5., 6.)) / 2.0,
        );
        assert_eq!(
            reduce_to_pair(&v, PairSelector::Nm),
            Matrix4::from_diagonal(&Vector4::new(0.5, 1.0, 1.5, 2.0))
        );
        assert_eq!(
            reduce_to_pair(&v, PairSelector::Nb),
            Matrix4::from_diagonal(&Vector4::new(0.5, 1.0, 2.5, 3.0))
        );
        assert_eq!(
            reduce_to_pair(&v, PairSelector::Mb),
            Matrix4::from_diagonal(&Vector4::new(1.5, 2.0, 2.5, 3.0))
        );
    }

    #[test]
    fn zero_cross_blocks_stay_zero() {
        let mut m = Matrix6::identity() * 0.7;
        m[(0, 1)] = 0.1;
        m[(1, 0)] = 0.1;
        m[(4, 5)] = -0.2;
        m[(5, 4)] = -0.2;
        let v4 = reduce_to_pair(&CovarianceMatrix::new(m), PairSelector::Nb);
        assert_eq!(v4.fixed_view::<2, 2>(0, 2).norm(), 0.0);
        assert_eq!(v4[(0, 1)], 0.1);
        assert_eq!(v4[(2, 3)], -0.2);
    }

    #[test]
    fn contrast_examples() {
        assert_eq!(contrast_ratio(0.2, 0.2), 0.0);
        assert_eq!(contrast_ratio(0.3, 0.0), 1.0);
        assert!((contrast_ratio(0.15, 0.05) - 0.5).abs() < 1e-15);
        assert_eq!(contrast_ratio(0.0, 0.0), 0.0);
    }

    #[test]
    fn selector_names() {
        for p in PairSelector::ALL {
            assert_eq!(p.name().parse::<PairSelector>().unwrap(), p);
        }
    }
}
