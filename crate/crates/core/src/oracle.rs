//! Independent numerical routes used to cross-check the closed forms.
//!
//! Nothing here is on the evaluation path of a sweep; these exist so that the
//! test suites and the `selftest` command can compare two derivations of the
//! same quantity.

use nalgebra::{Matrix3, Matrix4};
use num_complex::Complex64;

use crate::steadystate::CubicCoefficients;

/// Roots of the cubic as eigenvalues of its (balanced) companion matrix.
pub fn companion_roots(co: &CubicCoefficients) -> Vec<Complex64> {
    let (p2, p1, p0) = (co.b / co.a, co.c / co.a, co.d / co.a);
    #[rustfmt::skip]
    let mut m = Matrix3::new(
        -p2, -p1, -p0,
        1.0, 0.0, 0.0,
        0.0, 1.0, 0.0,
    );
    balance3(&mut m);
    m.complex_eigenvalues().iter().copied().collect()
}

/// Parlett-Reinsch diagonal similarity scaling with powers of two.
fn balance3(m: &mut Matrix3<f64>) {
    const RADIX: f64 = 2.0;
    loop {
        let mut converged = true;
        for i in 0..3 {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..3 {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let g = r / RADIX;
            while cc < g {
                f *= RADIX;
                cc *= RADIX * RADIX;
            }
            let g = r * RADIX;
            while cc > g {
                f /= RADIX;
                cc /= RADIX * RADIX;
            }
            if (cc + r / f) / f < 0.95 * s {
                converged = false;
                for j in 0..3 {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Largest real part among the eigenvalues of a 4x4 real matrix.
pub fn max_real_eigenvalue(m: &Matrix4<f64>) -> f64 {
    m.complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Coefficients `[a1, a2, a3, a4]` of `det(lambda I - M)` by the
/// Faddeev-LeVerrier recursion.
pub fn leverrier_char_poly(m: &Matrix4<f64>) -> [f64; 4] {
    let mut out = [0.0; 4];
    let mut mk = Matrix4::<f64>::zeros();
    let mut ck = 1.0;
    for k in 1..=4 {
        mk = m * mk + Matrix4::identity() * ck;
        let t = (m * mk).trace();
        ck = -t / k as f64;
        out[k - 1] = ck;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_of_factored_cubic() {
        let co = CubicCoefficients { a: 2.0, b: -12.0, c: 22.0, d: -12.0 };
        let mut re: Vec<f64> = companion_roots(&co).iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (got, want) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn leverrier_on_diagonal() {
        let m = Matrix4::from_diagonal(&nalgebra::Vector4::new(-1.0, -2.0, -3.0, -4.0));
        // (l+1)(l+2)(l+3)(l+4) = l^4 + 10 l^3 + 35 l^2 + 50 l + 24
        assert_eq!(leverrier_char_poly(&m), [10.0, 35.0, 50.0, 24.0]);
        assert_eq!(max_real_eigenvalue(&m), -1.0);
    }
}
