//! Textbook linearised optomechanics, written from the mode equations with
//! no Kerr term and a vacuum optical bath.

use nalgebra::{Matrix4, SMatrix, SVector, Vector4};
use num_complex::Complex64;

use kerr_optomech_core::SystemParams;

/// Intracavity photon number by bisection on `n ((kappa/2)^2 + delta(n)^2) = Omega^2`.
pub fn photon_number(p: &SystemParams) -> f64 {
    let shift = |n: f64| {
        let beta = -Complex64::i() * p.g0 * n / Complex64::new(p.kappa_b / 2.0, 1.0);
        p.delta_c + 2.0 * p.g0 * beta.re
    };
    let f = |n: f64| n * (0.25 * p.kappa_a * p.kappa_a + shift(n).powi(2)) - p.omega_drive.powi(2);
    let (mut lo, mut hi) = (0.0, p.omega_drive.powi(2) / (0.25 * p.kappa_a * p.kappa_a));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Quadrature drift and diffusion, with quadratures `x = (o + o+)/sqrt 2`.
pub fn linear_system(p: &SystemParams) -> (Matrix4<f64>, Matrix4<f64>) {
    let i = Complex64::i();
    let n = photon_number(p);
    let beta = -i * p.g0 * n / Complex64::new(p.kappa_b / 2.0, 1.0);
    let delta = p.delta_c + 2.0 * p.g0 * beta.re;
    let alpha = i * p.omega_drive / Complex64::new(p.kappa_a / 2.0, delta);
    let g = p.g0 * alpha;
    let z = Complex64::new(0.0, 0.0);
    let (ka, kb) = (Complex64::from(p.kappa_a / 2.0), Complex64::from(p.kappa_b / 2.0));
    // (da, da+, db, db+)
    #[rustfmt::skip]
    let m = Matrix4::new(
        -(ka + i * delta), z,                 -i * g,         -i * g,
        z,                 -(ka - i * delta), i * g.conj(),   i * g.conj(),
        -i * g.conj(),     -i * g,            -(kb + i),      z,
        i * g.conj(),      i * g,             z,              -(kb - i),
    );
    let h = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
    let mut s = Matrix4::zeros();
    for k in [0, 2] {
        s[(k, k)] = h;
        s[(k, k + 1)] = h;
        s[(k + 1, k)] = -i * h;
        s[(k + 1, k + 1)] = i * h;
    }
    let a = s * m * s.try_inverse().unwrap();
    assert!(a.map(|c| c.im.abs()).max() < 1e-12);
    let d = Matrix4::from_diagonal(&Vector4::new(
        p.kappa_a / 2.0,
        p.kappa_a / 2.0,
        p.kappa_b * (p.n_th + 0.5),
        p.kappa_b * (p.n_th + 0.5),
    ));
    (a.map(|c| c.re), d)
}

/// `A V + V A^T + D = 0` through the 16 x 16 Kronecker system.
pub fn lyapunov(a: &Matrix4<f64>, d: &Matrix4<f64>) -> Matrix4<f64> {
    let mut k = SMatrix::<f64, 16, 16>::zeros();
    for r in 0..4 {
        for c in 0..4 {
            for q in 0..4 {
                k[(r + 4 * c, q + 4 * c)] += a[(r, q)];
                k[(r + 4 * c, r + 4 * q)] += a[(c, q)];
            }
        }
    }
    let rhs = SVector::<f64, 16>::from_iterator(d.iter().map(|x| -x));
    let v = k.lu().solve(&rhs).unwrap();
    let v = Matrix4::from_iterator(v.iter().copied());
    (v + v.transpose()) / 2.0
}

/// Symplectic eigenvalues, as moduli of the eigenvalues of `Omega V`.
pub fn symplectic_spectrum(v: &Matrix4<f64>) -> Vec<f64> {
    let mut omega = Matrix4::zeros();
    for k in [0, 2] {
        omega[(k, k + 1)] = 1.0;
        omega[(k + 1, k)] = -1.0;
    }
    (omega * v).complex_eigenvalues().iter().map(|z| z.im.abs()).collect()
}

pub fn log_negativity(v: &Matrix4<f64>) -> f64 {
    let p = Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0));
    let eta = symplectic_spectrum(&(p * v * p)).into_iter().fold(f64::INFINITY, f64::min);
    (-(2.0 * eta).ln()).max(0.0)
}
