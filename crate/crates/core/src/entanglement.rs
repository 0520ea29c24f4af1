use serde::Serialize;

use crate::dynamics::CovarianceMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementRecord {
    /// Smallest symplectic eigenvalue of the partially transposed state.
    pub eta_minus: f64,
    /// Logarithmic negativity, natural logarithm.
    pub e_n: f64,
    pub mean_phonon: f64,
    pub mean_photon: f64,
}

/// Logarithmic negativity `max(0, -ln 2 eta)` of a two-mode Gaussian state.
///
/// With `S = det V_o + det V_m - 2 det C`, the smallest partially transposed
/// symplectic eigenvalue is `eta^2 = (S - sqrt(S^2 - 4 det V)) / 2`. It is
/// evaluated as `2 det V / (S + sqrt(S^2 - 4 det V))` to avoid cancellation
/// for weakly entangled states.
pub fn log_negativity(v: &CovarianceMatrix) -> Result<EntanglementRecord> {
    let det_v = v.0.determinant();
    let sigma = v.v_o().determinant() + v.v_m().determinant() - 2.0 * v.c().determinant();
    let mut disc = sigma * sigma - 4.0 * det_v;
    if disc < 0.0 {
        if disc >= -1e-12 * sigma * sigma {
            disc = 0.0;
        } else {
            return Err(Error::NumericalDomain(disc));
        }
    }
    let denom = sigma + disc.sqrt();
    let eta2 = 2.0 * det_v / denom;
    if !(eta2 > 0.0) || !eta2.is_finite() {
        return Err(Error::NumericalDomain(disc));
    }
    let eta_minus = eta2.sqrt();
    let e_n = (-(2.0 * eta_minus).ln()).max(0.0);
    Ok(EntanglementRecord {
        eta_minus,
        e_n,
        mean_phonon: 0.5 * (v.0[(2, 2)] + v.0[(3, 3)] - 1.0),
        mean_photon: 0.5 * (v.0[(0, 0)] + v.0[(1, 1)] - 1.0),
    })
}
