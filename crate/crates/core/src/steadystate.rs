//! Semiclassical fixed point of the driven Kerr optomechanical cavity.
//!
//! Eliminating the mechanical amplitude from the stationary amplitude
//! equations leaves a cubic in the intracavity photon number
//! `y = |alpha|^2`. It is solved in closed form (Cardano) with a Newton
//! polish, and its discriminant decides whether the fixed point is unique.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Relative residual accepted for a root of the steady-state cubic.
pub const TOL_ROOT: f64 = 1e-10;

/// `a y^3 + b y^2 + c y + d = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl CubicCoefficients {
    pub fn eval(&self, y: f64) -> f64 {
        ((self.a * y + self.b) * y + self.c) * y + self.d
    }

    fn eval_with_derivative(&self, y: f64) -> (f64, f64) {
        let f = self.eval(y);
        let df = (3.0 * self.a * y + 2.0 * self.b) * y + self.c;
        (f, df)
    }

    /// Largest single term magnitude at `y`, the scale for residual checks.
    pub fn term_scale(&self, y: f64) -> f64 {
        (self.a * y * y * y)
            .abs()
            .max((self.b * y * y).abs())
            .max((self.c * y).abs())
            .max(self.d.abs())
    }

    pub fn relative_residual(&self, y: f64) -> f64 {
        let scale = self.term_scale(y);
        if scale == 0.0 {
            0.0
        } else {
            self.eval(y).abs() / scale
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Multiplicity {
    /// `eta > 0`: one real root, a complex-conjugate pair.
    SingleReal,
    /// `eta = 0` and `q = 0`: one real root of multiplicity three.
    TripleReal,
    /// Anything else: two or three distinct real roots.
    MultiReal,
}

impl Multiplicity {
    pub fn is_single_valued(self) -> bool {
        matches!(self, Multiplicity::SingleReal | Multiplicity::TripleReal)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    /// Real roots with `y >= 0`, ascending.
    pub roots: Vec<f64>,
    pub discriminant_eta: f64,
    pub multiplicity: Multiplicity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    pub alpha_ss: Complex64,
    pub beta_ss: Complex64,
    pub y: f64,
}

/// `g0^2 w_m / (w_m^2 + kappa_b^2 / 4)`: the static optomechanical frequency
/// shift per photon, halved.
pub fn mechanical_shift(p: &SystemParams) -> f64 {
    p.g0 * p.g0 / (1.0 + 0.25 * p.kappa_b * p.kappa_b)
}

/// Coefficients of the steady-state cubic.
///
/// With `k = g0^2/(1 + kappa_b^2/4)` the leading two coefficients are
/// `a = 4k^2 - 8 chi k + 4 chi^2 = 4 (chi - k)^2` and
/// `b = 4 delta_c (chi - k)`; they are evaluated in factored form so that
/// `a` stays nonnegative and free of cancellation when `chi` is close to `k`.
pub fn cubic_coefficients(p: &SystemParams) -> Result<CubicCoefficients> {
    let eps = p.chi - mechanical_shift(p);
    let co = CubicCoefficients {
        a: 4.0 * eps * eps,
        b: 4.0 * p.delta_c * eps,
        c: 0.25 * p.kappa_a * p.kappa_a + p.delta_c * p.delta_c,
        d: -p.omega_drive * p.omega_drive,
    };
    if co.a == 0.0 {
        return Err(Error::DegenerateCubic(co.a));
    }
    Ok(co)
}

fn newton_polish(co: &CubicCoefficients, mut y: f64) -> f64 {
    // One step normally suffices; a few more cover the cancellation in the
    // Cardano sum when the cubic is badly scaled.
    for _ in 0..4 {
        let (f, df) = co.eval_with_derivative(y);
        if f == 0.0 || df == 0.0 || !df.is_finite() {
            break;
        }
        let next = y - f / df;
        if !next.is_finite() || co.eval(next).abs() >= f.abs() {
            break;
        }
        let step = (next - y).abs();
        y = next;
        if step <= 4.0 * f64::EPSILON * y.abs() {
            break;
        }
    }
    y
}

/// Real roots by Cardano's formula, classified by the sign of
/// `eta = (q/2)^2 + (p/3)^3`.
pub fn solve_cubic(co: &CubicCoefficients) -> Result<RootSet> {
    if co.a == 0.0 {
        return Err(Error::DegenerateCubic(co.a));
    }
    let (a, b, c, d) = (co.a, co.b, co.c, co.d);
    let p = (3.0 * a * c - b * b) / (3.0 * a * a);
    let q = (-2.0 * b * b * b + 9.0 * a * b * c - 27.0 * a * a * d) / (27.0 * a * a * a);
    let eta = (0.5 * q).powi(2) + (p / 3.0).powi(3);
    let shift = -b / (3.0 * a);
    if ![p, q, eta, shift].iter().all(|v| v.is_finite()) {
        return Err(Error::DegenerateCubic(a));
    }

    // Scales of the individual terms, used to decide when eta and q vanish.
    let (nb, nc, nd) = (b / a, c / a, d / a);
    let p_scale = nc.abs() + nb * nb / 3.0;
    let q_scale = (2.0 * nb.abs().powi(3) + 9.0 * (nb * nc).abs() + 27.0 * nd.abs()) / 27.0;
    let eta_scale = (0.5 * q_scale).powi(2) + (p_scale / 3.0).powi(3);
    let eta_zero = eta.abs() <= 1e-12 * eta_scale;
    let q_zero = q.abs() <= 1e-12 * q_scale;

    let mut depressed: Vec<f64> = Vec::with_capacity(3);
    let multiplicity = if eta_zero && q_zero {
        depressed.push(0.0);
        Multiplicity::TripleReal
    } else if eta_zero {
        let u = (0.5 * q).cbrt();
        depressed.extend([2.0 * u, -u]);
        Multiplicity::MultiReal
    } else if eta > 0.0 {
        let s = eta.sqrt();
        let w = 0.5 * q + s.copysign(q);
        let u = w.cbrt();
        let v = if u == 0.0 { 0.0 } else { -p / (3.0 * u) };
        depressed.push(u + v);
        Multiplicity::SingleReal
    } else {
        // Three real roots from the principal complex cube root; the paired
        // root v = -p/(3u) keeps u v = -p/3 on every branch.
        let w = Complex64::new(0.5 * q, (-eta).sqrt());
        let u = w.cbrt();
        let v = -p / (3.0 * u);
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let mut zk = Complex64::new(1.0, 0.0);
        for _ in 0..3 {
            let t = zk * u + zk.conj() * v;
            if t.im.abs() <= 1e-8 * (1.0 + t.norm() + u.norm()) {
                depressed.push(t.re);
            }
            zk *= z;
        }
        Multiplicity::MultiReal
    };

    let mut roots: Vec<f64> = depressed
        .into_iter()
        .map(|t| newton_polish(co, shift + t))
        .collect();
    if d == 0.0 {
        // y = 0 is then an exact root; pin whichever root approximates it.
        if let Some(closest) = roots
            .iter_mut()
            .min_by(|x, y| x.abs().total_cmp(&y.abs()))
        {
            *closest = 0.0;
        }
    }
    roots.retain(|&y| y >= 0.0);
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * x.abs().max(y.abs()));

    Ok(RootSet {
        roots,
        discriminant_eta: eta,
        multiplicity,
    })
}

/// Root set for a parameter point, falling back to the lower-degree
/// polynomial when the Kerr shift exactly cancels the mechanical shift and
/// the cubic degenerates (`a = b = 0` or overflow of the normalised form).
///
/// In that limit the two discarded roots run off to infinity along a
/// complex-conjugate pair, so the remaining physical root is unique.
pub fn solve_steady_state(p: &SystemParams) -> Result<RootSet> {
    let eps = p.chi - mechanical_shift(p);
    let co = CubicCoefficients {
        a: 4.0 * eps * eps,
        b: 4.0 * p.delta_c * eps,
        c: 0.25 * p.kappa_a * p.kappa_a + p.delta_c * p.delta_c,
        d: -p.omega_drive * p.omega_drive,
    };
    match solve_cubic(&co) {
        Err(Error::DegenerateCubic(_)) => {
            let y = if co.d == 0.0 {
                0.0
            } else {
                newton_polish(&co, -co.d / co.c)
            };
            Ok(RootSet {
                roots: vec![y],
                discriminant_eta: f64::INFINITY,
                multiplicity: Multiplicity::SingleReal,
            })
        }
        other => other,
    }
}

/// Closed-form amplitudes from the unique physical root.
///
/// `alpha = i Omega / [kappa_a/2 + i (delta_c + 2 (chi - k) y)]` and
/// `beta = -i g0 y / (i + kappa_b/2)`, where `k y` is half the static
/// mechanical shift `-g0 (beta + beta*)`.
pub fn steady_amplitudes(p: &SystemParams, rs: &RootSet) -> Result<Amplitudes> {
    if !rs.multiplicity.is_single_valued() {
        return Err(Error::MultistableRegime);
    }
    let y = *rs.roots.last().ok_or(Error::NoPhysicalRoot)?;
    let i = Complex64::i();
    let detuning = p.delta_c + 2.0 * (p.chi - mechanical_shift(p)) * y;
    let alpha_ss = i * p.omega_drive / Complex64::new(0.5 * p.kappa_a, detuning);
    Ok(Amplitudes {
        alpha_ss,
        beta_ss: mechanical_amplitude(p, y),
        y,
    })
}

pub fn mechanical_amplitude(p: &SystemParams, y: f64) -> Complex64 {
    -Complex64::i() * p.g0 * y / Complex64::new(0.5 * p.kappa_b, 1.0)
}

/// Right-hand sides of the amplitude equations of motion at `(alpha, beta)`.
pub fn amplitude_rates(p: &SystemParams, alpha: Complex64, beta: Complex64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let n = alpha.norm_sqr();
    let dalpha = -(Complex64::new(0.5 * p.kappa_a, p.delta_c) + i * p.g0 * (beta + beta.conj()))
        * alpha
        - 2.0 * i * p.chi * n * alpha
        + i * p.omega_drive;
    let dbeta = -Complex64::new(0.5 * p.kappa_b, 1.0) * beta - i * p.g0 * n;
    (dalpha, dbeta)
}
