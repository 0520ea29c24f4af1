//! Closed second-moment equations `dX/dt = M X + N` in the Fock-operator
//! basis, integrated with fixed-step RK4.

use std::f64::consts::TAU;

use nalgebra::{Matrix4, SMatrix, SVector};
use num_complex::Complex64;

use super::{CovarianceMatrix, LinearModel};
use crate::error::{Error, Result};

type CMat = SMatrix<Complex64, 10, 10>;
type CVec = SVector<Complex64, 10>;

/// Second moments ordered
/// `<a+a>, <b+b>, <a+a+>, <aa>, <b+b+>, <bb>, <a+b+>, <ab>, <a+b>, <ab+>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentVector(pub [Complex64; 10]);

impl MomentVector {
    pub fn zero() -> Self {
        Self([Complex64::new(0.0, 0.0); 10])
    }

    fn to_vec(self) -> CVec {
        CVec::from_column_slice(&self.0)
    }

    fn from_vec(v: &CVec) -> Self {
        let mut out = [Complex64::new(0.0, 0.0); 10];
        out.copy_from_slice(v.as_slice());
        Self(out)
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest violation of the conjugate pairs and of real occupations.
    pub fn pairing_error(&self) -> f64 {
        let x = &self.0;
        [(3, 2), (5, 4), (7, 6), (9, 8)]
            .iter()
            .map(|&(i, j)| (x[i] - x[j].conj()).norm())
            .chain([x[0].im.abs(), x[1].im.abs()])
            .fold(0.0, f64::max)
    }

    /// Quadrature covariance for vanishing first moments.
    pub fn to_covariance(&self) -> CovarianceMatrix {
        let x = &self.0;
        let i = Complex64::i();
        let half = 0.5;
        let v11 = half * (x[3] + x[2] + 2.0 * x[0] + 1.0);
        let v22 = half * (2.0 * x[0] + 1.0 - x[2] - x[3]);
        let v12 = half * i * (x[2] - x[3]);
        let v33 = half * (x[5] + x[4] + 2.0 * x[1] + 1.0);
        let v44 = half * (2.0 * x[1] + 1.0 - x[4] - x[5]);
        let v34 = half * i * (x[4] - x[5]);
        let v13 = half * (x[7] + x[9] + x[8] + x[6]);
        let v14 = half * i * (x[9] - x[7] + x[6] - x[8]);
        let v23 = half * i * (x[8] + x[6] - x[7] - x[9]);
        let v24 = -half * (x[6] - x[8] - x[9] + x[7]);
        #[rustfmt::skip]
        let v = Matrix4::new(
            v11.re, v12.re, v13.re, v14.re,
            v12.re, v22.re, v23.re, v24.re,
            v13.re, v23.re, v33.re, v34.re,
            v14.re, v24.re, v34.re, v44.re,
        );
        CovarianceMatrix(v)
    }
}

/// The matrix `M` and source `N` of the moment equations.
///
/// The squeezed cavity bath adds `kappa_a n_ss` to `<a+a>`, `kappa_a m_ss` to
/// `<a+a+>` and `kappa_a conj(m_ss)` to `<aa>`; the thermal bath feeds
/// `kappa_b n_th` into `<b+b>`.
pub fn moment_system(m: &LinearModel) -> (CMat, CVec) {
    let i = Complex64::i();
    let g = m.g_sd;
    let gc = g.conj();
    let (ka, kb, d) = (m.kappa_a, m.kappa_b, m.delta_sd);
    let c = |v: f64| Complex64::new(v, 0.0);
    let k1 = Complex64::new(-ka, 2.0 * d);
    let k2 = Complex64::new(-kb, 2.0);
    let k3 = Complex64::new(-0.5 * (ka + kb), d + 1.0);
    let k4 = Complex64::new(-0.5 * (ka + kb), d - 1.0);
    let z = c(0.0);

    #[rustfmt::skip]
    let rows: [[Complex64; 10]; 10] = [
        // H | I
        [c(-ka), z, z, z,             z, z, -i * g, i * gc, -i * g, i * gc],
        [z, c(-kb), z, z,             z, z, -i * g, i * gc, i * g, -i * gc],
        [z, z, k1, z,                 z, z, 2.0 * i * gc, z, 2.0 * i * gc, z],
        [z, z, z, k1.conj(),          z, z, z, -2.0 * i * g, z, -2.0 * i * g],
        // J | K
        [z, z, z, z,                  k2, z, 2.0 * i * g, z, z, 2.0 * i * gc],
        [z, z, z, z,                  z, k2.conj(), z, -2.0 * i * gc, -2.0 * i * g, z],
        [i * gc, i * gc, i * g, z,    i * gc, z, k3, z, z, z],
        [-i * g, -i * g, z, -i * gc,  z, -i * g, z, k3.conj(), z, z],
        [-i * gc, i * gc, -i * g, z,  z, i * gc, z, z, k4, z],
        [i * g, -i * g, z, i * gc,    -i * g, z, z, z, z, k4.conj()],
    ];
    let mat = CMat::from_fn(|r, col| rows[r][col]);
    let src = CVec::from_column_slice(&[
        c(ka * m.n_ss),
        c(kb * m.n_th),
        ka * m.m_ss,
        ka * m.m_ss.conj(),
        z,
        z,
        i * gc,
        -i * g,
        z,
        z,
    ]);
    (mat, src)
}

pub fn moment_rhs(x: &MomentVector, m: &LinearModel) -> MomentVector {
    let (mat, src) = moment_system(m);
    MomentVector::from_vec(&(mat * x.to_vec() + src))
}

/// Fixed-step RK4 from `x0` up to `t_end`, stopping early once the relative
/// change over one mechanical period drops below `1e-10`.
///
/// `dt` must not exceed `0.05 / max(1, |delta_sd|, kappa_a)`. A norm above
/// `1e12` is reported as divergence.
pub fn integrate_moments(x0: &MomentVector, m: &LinearModel, t_end: f64, dt: f64) -> Result<MomentVector> {
    let cap = m.max_step();
    if !(dt > 0.0) || dt > cap * (1.0 + 1e-12) {
        return Err(Error::StepTooLarge { dt, cap });
    }
    let (mat, src) = moment_system(m);
    let f = |x: &CVec| mat * x + src;

    let steps = (t_end / dt).ceil().max(1.0) as usize;
    let h = t_end / steps as f64;
    let per_period = ((TAU / h).round() as usize).max(1);

    let mut x = x0.to_vec();
    let mut checkpoint = x;
    for n in 1..=steps {
        let k1 = f(&x);
        let k2 = f(&(x + k1 * Complex64::new(0.5 * h, 0.0)));
        let k3 = f(&(x + k2 * Complex64::new(0.5 * h, 0.0)));
        let k4 = f(&(x + k3 * Complex64::new(h, 0.0)));
        x += (k1 + (k2 + k3) * Complex64::new(2.0, 0.0) + k4) * Complex64::new(h / 6.0, 0.0);

        if n % per_period == 0 {
            let norm = x.norm();
            if !norm.is_finite() || norm > 1e12 {
                return Err(Error::Divergence(n as f64 * h));
            }
            if (x - checkpoint).norm() <= 1e-10 * norm {
                break;
            }
            checkpoint = x;
        }
    }
    let norm = x.norm();
    if !norm.is_finite() || norm > 1e12 {
        return Err(Error::Divergence(t_end));
    }
    Ok(MomentVector::from_vec(&x))
}
