//! Displaced and squeezed frames.
//!
//! After displacing both modes by their stationary amplitudes the cavity
//! carries two-photon terms `chi alpha^2 a+^2 + h.c.`. A Bogoliubov
//! transformation `a -> a cosh r - a+ e^{i phi} sinh r` with
//! `phi = arg(alpha^2)` and `tanh 2r = 2 chi |alpha|^2 / delta_d` removes
//! them, leaving a standard linearised optomechanical Hamiltonian with
//! detuning `delta_sd` and coupling `g_sd`. The same transformation maps the
//! squeezed input reservoir onto an effective Gaussian bath `(n_ss, m_ss)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{ReservoirMode, SystemParams};
use crate::steadystate::Amplitudes;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacedFrame {
    pub delta_d: f64,
    pub g_d: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeFrame {
    pub r: f64,
    pub phi: f64,
    pub delta_sd: f64,
    pub g_sd: Complex64,
    /// Two-photon coefficient left over at `(r, phi)`; zero up to rounding.
    pub residual_r: Complex64,
    pub n_ss: f64,
    pub m_ss: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams {
    pub delta_sd: f64,
    pub g_sd: Complex64,
    pub residual_r: Complex64,
}

pub fn displaced_frame(p: &SystemParams, amp: &Amplitudes) -> DisplacedFrame {
    let beta = amp.beta_ss;
    DisplacedFrame {
        delta_d: p.delta_c + 4.0 * p.chi * amp.alpha_ss.norm_sqr() + p.g0 * 2.0 * beta.re,
        g_d: p.g0 * amp.alpha_ss,
    }
}

/// `(r, phi)` cancelling the two-photon term.
///
/// `phi` is the four-quadrant angle of `alpha^2`; `r = artanh(x)/2` with
/// `x = 2 chi |alpha|^2 / delta_d`, which requires `|x| < 1`.
pub fn squeeze_params(amp: &Amplitudes, df: &DisplacedFrame, chi: f64) -> Result<(f64, f64)> {
    let (ar, ai) = (amp.alpha_ss.re, amp.alpha_ss.im);
    let phi = (2.0 * ar * ai).atan2(ar * ar - ai * ai);
    let numer = 2.0 * chi * amp.alpha_ss.norm_sqr();
    if numer == 0.0 {
        return Ok((0.0, phi));
    }
    let x = numer / df.delta_d;
    if !(x.abs() < 1.0) {
        return Err(Error::SqueezeDomain(x.abs()));
    }
    Ok((0.5 * x.atanh(), phi))
}

/// Detuning, coupling and residual two-photon coefficient in the squeezed
/// frame for an arbitrary `(r, phi)`.
pub fn effective_params(
    df: &DisplacedFrame,
    r: f64,
    phi: f64,
    amp: &Amplitudes,
    chi: f64,
) -> EffectiveParams {
    let (ar, ai) = (amp.alpha_ss.re, amp.alpha_ss.im);
    let (sinh2, cosh2) = ((2.0 * r).sinh(), (2.0 * r).cosh());
    let (sp, cp) = phi.sin_cos();
    let delta_sd = df.delta_d * cosh2
        - 2.0 * chi * (ar * ar - ai * ai) * sinh2 * cp
        - 4.0 * chi * ar * ai * sinh2 * sp;
    EffectiveParams {
        delta_sd,
        g_sd: df.g_d * r.cosh() - df.g_d.conj() * Complex64::from_polar(r.sinh(), phi),
        residual_r: two_photon_coefficient(df, r, phi, amp, chi),
    }
}

/// `R = chi alpha^2 e^{-i phi} sinh^2 r + chi alpha*^2 e^{i phi} cosh^2 r - delta_d sinh(2r)/2`.
pub fn two_photon_coefficient(
    df: &DisplacedFrame,
    r: f64,
    phi: f64,
    amp: &Amplitudes,
    chi: f64,
) -> Complex64 {
    let a2 = amp.alpha_ss * amp.alpha_ss;
    let e = Complex64::from_polar(1.0, phi);
    chi * a2 * e.conj() * r.sinh().powi(2) + chi * a2.conj() * e * r.cosh().powi(2)
        - 0.5 * df.delta_d * (2.0 * r).sinh()
}

/// Effective thermal occupation and two-photon correlation of the cavity
/// bath seen in the squeezed frame.
///
/// A reservoir `(r_e, theta_e)` is the bath whose jump operator is
/// `cosh r_e a - e^{i theta_e} sinh r_e a+`. Conjugating that by the frame
/// squeezing gives `mu a + nu a+` with
///
/// ```text
/// mu =  cosh r_e cosh r + e^{i(theta_e - phi)} sinh r_e sinh r
/// nu = -(e^{i phi} cosh r_e sinh r + e^{i theta_e} sinh r_e cosh r)
/// ```
///
/// and `n_ss = |nu|^2`, `m_ss = -mu conj(nu)`. `n_ss` agrees with the
/// expanded form `sinh^2 r cosh^2 r_e + sinh^2 r_e cosh^2 r
/// + 2 cos(phi - theta_e) sinh r cosh r sinh r_e cosh r_e`; the phase of
/// `m_ss` is that of the composed transformation (see
/// [`bath_params_factored`] for the alternative form differing by
/// `e^{i phi}`).
pub fn bath_params(r: f64, phi: f64, r_e: f64, theta_e: f64) -> (f64, Complex64) {
    let (sr, cr) = (r.sinh(), r.cosh());
    let (se, ce) = (r_e.sinh(), r_e.cosh());
    let n_ss = sr * sr * ce * ce
        + se * se * cr * cr
        + 2.0 * (phi - theta_e).cos() * sr * cr * se * ce;
    let mu = ce * cr + Complex64::from_polar(se * sr, theta_e - phi);
    let nu = -(Complex64::from_polar(ce * sr, phi) + Complex64::from_polar(se * cr, theta_e));
    let m_ss = -mu * nu.conj();
    // The expanded n_ss can come out at -1e-17 at exact cancellation.
    (n_ss.max(0.0), m_ss)
}

/// Product form `(sinh r_e cosh r + e^{-i(phi - theta_e)} sinh r cosh r_e)
/// (sinh r_e sinh r + e^{i(phi - theta_e)} cosh r_e cosh r)` of the squeezed
/// frame two-photon correlation. It equals `e^{i phi}` times the `m_ss` of
/// [`bath_params`]; only the latter is consistent with the displaced-frame
/// dynamics, so this is kept for comparison only.
pub fn bath_params_factored(r: f64, phi: f64, r_e: f64, theta_e: f64) -> Complex64 {
    let (sr, cr) = (r.sinh(), r.cosh());
    let (se, ce) = (r_e.sinh(), r_e.cosh());
    (se * cr + Complex64::from_polar(sr * ce, theta_e - phi))
        * (se * sr + Complex64::from_polar(ce * cr, phi - theta_e))
}

/// Reservoir `(r_e, theta_e)` actually applied at a point whose frame is `(r, phi)`.
pub fn resolved_reservoir(p: &SystemParams, r: f64, phi: f64) -> (f64, f64) {
    match p.reservoir_mode {
        ReservoirMode::Matched => (r, phi + PI),
        ReservoirMode::Explicit => (p.r_e, p.theta_e),
    }
}

/// Full squeezed-frame description of a single-valued working point.
pub fn squeeze_frame(p: &SystemParams, amp: &Amplitudes, df: &DisplacedFrame) -> Result<SqueezeFrame> {
    let (r, phi) = squeeze_params(amp, df, p.chi)?;
    let eff = effective_params(df, r, phi, amp, p.chi);
    let (r_e, theta_e) = resolved_reservoir(p, r, phi);
    let (n_ss, m_ss) = bath_params(r, phi, r_e, theta_e);
    Ok(SqueezeFrame {
        r,
        phi,
        delta_sd: eff.delta_sd,
        g_sd: eff.g_sd,
        residual_r: eff.residual_r,
        n_ss,
        m_ss,
    })
}

/// `|m|^2 <= n (n + 1)` up to a relative rounding allowance.
pub fn bath_is_physical(n_ss: f64, m_ss: Complex64) -> bool {
    let bound = n_ss * (n_ss + 1.0);
    n_ss >= 0.0 && m_ss.norm_sqr() <= bound + 1e-10 * bound.max(1.0)
}
