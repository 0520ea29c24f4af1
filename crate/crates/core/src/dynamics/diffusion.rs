use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frames::bath_is_physical;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix(pub Matrix4<f64>);

/// Quadrature diffusion matrix of the two baths.
///
/// A cavity bath `(n_ss, m_ss)` in the master-equation form
/// `kappa (N+1) D[a] + kappa N D[a+] - kappa M G[a] - kappa M* G[a+]` drives
/// `<a a>` towards `conj(M)`, so with `m = conj(m_ss)` the optical block is
/// `kappa_a [[1/2 + N + Re m, Im m], [Im m, 1/2 + N - Re m]]`. The mechanical
/// block is `kappa_b (n_th + 1/2)` on the diagonal.
pub fn diffusion_matrix(
    kappa_a: f64,
    kappa_b: f64,
    n_th: f64,
    n_ss: f64,
    m_ss: Complex64,
) -> Result<DiffusionMatrix> {
    if !bath_is_physical(n_ss, m_ss) {
        return Err(Error::BathPhysicality {
            m2: m_ss.norm_sqr(),
            bound: n_ss * (n_ss + 1.0),
        });
    }
    let m = m_ss.conj();
    let dm = kappa_b * (n_th + 0.5);
    let mut d = Matrix4::zeros();
    d[(0, 0)] = kappa_a * (0.5 + n_ss + m.re);
    d[(1, 1)] = kappa_a * (0.5 + n_ss - m.re);
    d[(0, 1)] = kappa_a * m.im;
    d[(1, 0)] = kappa_a * m.im;
    d[(2, 2)] = dm;
    d[(3, 3)] = dm;
    Ok(DiffusionMatrix(d))
}
