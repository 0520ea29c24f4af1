use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

/// Symmetric quadrature covariance `V_ij = <u_i u_j + u_j u_i>/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(pub Matrix4<f64>);

impl CovarianceMatrix {
    pub fn v_o(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn v_m(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn asymmetry(&self) -> f64 {
        (self.0 - self.0.transpose()).abs().max()
    }

    /// Smallest eigenvalue of `V + (i/2) Omega`; nonnegative for a physical state.
    pub fn uncertainty_min_eig(&self) -> f64 {
        let mut h = self.0.map(|v| Complex64::new(v, 0.0));
        for k in [0, 2] {
            h[(k, k + 1)] += Complex64::new(0.0, 0.5);
            h[(k + 1, k)] -= Complex64::new(0.0, 0.5);
        }
        h.symmetric_eigenvalues().min()
    }

    pub fn satisfies_uncertainty(&self) -> bool {
        self.uncertainty_min_eig() >= -1e-9
    }

    pub fn max_abs_diff(&self, other: &CovarianceMatrix) -> f64 {
        (self.0 - other.0).abs().max()
    }
}
