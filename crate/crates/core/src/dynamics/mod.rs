//! Linear fluctuation dynamics around the working point.
//!
//! Everything here acts on the squeezed-frame linearised model: a cavity mode
//! with detuning `delta_sd` and a mechanical mode at unit frequency, coupled
//! by `(g_sd a+ + g_sd* a)(b+ + b)`, with a Gaussian cavity bath `(n_ss, m_ss)`
//! and a thermal mechanical bath `n_th`. Quadratures are ordered
//! `(X_a, Y_a, X_b, Y_b)` with `X = (o + o+)/sqrt 2`, `Y = i(o+ - o)/sqrt 2`.

mod covariance;
mod diffusion;
mod drift;
pub mod fock;
mod lyapunov;
mod moments;
mod stability;

pub use covariance::CovarianceMatrix;
pub use diffusion::{diffusion_matrix, DiffusionMatrix};
pub use drift::{char_poly, drift_matrix, routh_hurwitz, CharPoly, DriftMatrix};
pub use fock::{fock_oracle, FockOptions};
pub use lyapunov::lyapunov_steady;
pub use moments::{integrate_moments, moment_rhs, moment_system, MomentVector};
pub use stability::{classify_region, stability_report, Region, StabilityReport};

use num_complex::Complex64;

/// Parameters of the squeezed-frame linearised model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearModel {
    pub delta_sd: f64,
    pub g_sd: Complex64,
    pub kappa_a: f64,
    pub kappa_b: f64,
    pub n_th: f64,
    pub n_ss: f64,
    pub m_ss: Complex64,
}

impl LinearModel {
    pub fn drift(&self) -> DriftMatrix {
        drift_matrix(self.delta_sd, self.g_sd, self.kappa_a, self.kappa_b)
    }

    pub fn diffusion(&self) -> crate::Result<DiffusionMatrix> {
        diffusion_matrix(self.kappa_a, self.kappa_b, self.n_th, self.n_ss, self.m_ss)
    }

    pub fn char_poly(&self) -> CharPoly {
        char_poly(self.delta_sd, self.g_sd, self.kappa_a, self.kappa_b)
    }

    pub fn steady_covariance(&self) -> crate::Result<CovarianceMatrix> {
        lyapunov_steady(&self.drift(), &self.diffusion()?)
    }

    /// Largest RK4 step allowed for the moment and Fock integrators.
    pub fn max_step(&self) -> f64 {
        0.05 / 1f64.max(self.delta_sd.abs()).max(self.kappa_a)
    }
}
