use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::oracle::max_real_eigenvalue;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix(pub Matrix4<f64>);

impl DriftMatrix {
    pub fn max_real_eig(&self) -> f64 {
        max_real_eigenvalue(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharPoly {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl CharPoly {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a1, self.a2, self.a3, self.a4]
    }

    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        (((lambda + self.a1) * lambda + self.a2) * lambda + self.a3) * lambda + self.a4
    }
}

pub fn drift_matrix(delta_sd: f64, g_sd: Complex64, kappa_a: f64, kappa_b: f64) -> DriftMatrix {
    let (gr, gi) = (g_sd.re, g_sd.im);
    #[rustfmt::skip]
    let a = Matrix4::new(
        -0.5 * kappa_a, delta_sd,        2.0 * gi,       0.0,
        -delta_sd,      -0.5 * kappa_a, -2.0 * gr,       0.0,
        0.0,            0.0,            -0.5 * kappa_b,  1.0,
        -2.0 * gr,      -2.0 * gi,      -1.0,           -0.5 * kappa_b,
    );
    DriftMatrix(a)
}

/// Closed-form coefficients of `det(lambda I - A) = lambda^4 + a1 lambda^3 + ... + a4`.
pub fn char_poly(delta_sd: f64, g_sd: Complex64, kappa_a: f64, kappa_b: f64) -> CharPoly {
    let (ka2, kb2, d2) = (kappa_a * kappa_a, kappa_b * kappa_b, delta_sd * delta_sd);
    CharPoly {
        a1: kappa_a + kappa_b,
        a2: 0.25 * kb2 + 1.0 + 0.25 * ka2 + d2 + kappa_a * kappa_b,
        a3: 0.25 * kappa_a * kb2 + kappa_a + 0.25 * ka2 * kappa_b + kappa_b * d2,
        a4: (0.25 * ka2 + d2) * (0.25 * kb2 + 1.0)
            - 4.0 * delta_sd * (g_sd.im * g_sd.im + g_sd.re * g_sd.re),
    }
}

/// Hurwitz conditions for a monic quartic.
pub fn routh_hurwitz(poly: &CharPoly) -> bool {
    let CharPoly { a1, a2, a3, a4 } = *poly;
    a1 > 0.0 && a3 > 0.0 && a4 > 0.0 && a1 * a2 * a3 > a3 * a3 + a1 * a1 * a4
}
