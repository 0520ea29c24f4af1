//! Fast cross-checks of the closed forms against independent numerical routes.

use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kerr_optomech_core::dynamics::{
    char_poly, drift_matrix, fock_oracle, integrate_moments, routh_hurwitz, FockOptions, MomentVector,
};
use kerr_optomech_core::oracle::companion_roots;
use kerr_optomech_core::pipeline::{resolve, Resolution};
use kerr_optomech_core::steadystate::{cubic_coefficients, solve_cubic};
use kerr_optomech_core::{log_negativity, CovarianceMatrix, ReservoirMode, SystemParams};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Check {
        Check { name, passed, detail }
    }
}

pub fn run_all() -> Vec<Check> {
    vec![
        two_mode_squeezed_vacuum(),
        cubic_against_companion(),
        routh_hurwitz_against_spectrum(),
        matched_reservoir_nulls_bath(),
        lyapunov_against_moments(),
        lyapunov_against_fock(),
    ]
}

fn random_params(rng: &mut ChaCha8Rng) -> SystemParams {
    SystemParams {
        delta_c: rng.gen_range(-2.0..2.0),
        chi: rng.gen_range(0.0..1e-4),
        kappa_a: rng.gen_range(0.3..1.6),
        n_th: rng.gen_range(0.0..100.0),
        ..SystemParams::baseline()
    }
}

fn two_mode_squeezed_vacuum() -> Check {
    let mut worst: f64 = 0.0;
    for s in [0.1f64, 0.5, 1.0] {
        let (c, sh) = ((2.0 * s).cosh() / 2.0, (2.0 * s).sinh() / 2.0);
        #[rustfmt::skip]
        let v = Matrix4::new(
            c, 0.0, sh, 0.0,
            0.0, c, 0.0, -sh,
            sh, 0.0, c, 0.0,
            0.0, -sh, 0.0, c,
        );
        let e = log_negativity(&CovarianceMatrix(v)).map(|r| r.e_n).unwrap_or(f64::NAN);
        worst = worst.max((e - 2.0 * s).abs());
    }
    Check::new("two-mode squeezed vacuum", worst <= 1e-10, format!("max |E_N - 2s| = {worst:.2e}"))
}

fn cubic_against_companion() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let co = cubic_coefficients(&random_params(&mut rng)).expect("valid parameters");
        let Ok(rs) = solve_cubic(&co) else { continue };
        let eig = companion_roots(&co);
        for &y in &rs.roots {
            let d = eig.iter().map(|z| (z - Complex64::new(y, 0.0)).norm()).fold(f64::INFINITY, f64::min);
            worst = worst.max(d / y.abs());
        }
    }
    Check::new("cubic roots vs companion matrix", worst <= 1e-8, format!("max relative gap {worst:.2e}"))
}

fn routh_hurwitz_against_spectrum() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut mismatches = 0;
    for _ in 0..2000 {
        let delta = rng.gen_range(-3.0..3.0);
        let g = Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(-3.2..3.2));
        let ka = rng.gen_range(0.05..2.0);
        let kb = 10f64.powf(rng.gen_range(-6.0..-0.3));
        let lam = drift_matrix(delta, g, ka, kb).max_real_eig();
        if lam.abs() >= 1e-9 && routh_hurwitz(&char_poly(delta, g, ka, kb)) != (lam < 0.0) {
            mismatches += 1;
        }
    }
    Check::new("Routh-Hurwitz vs eigenvalues", mismatches == 0, format!("{mismatches} mismatches in 2000"))
}

fn matched_reservoir_nulls_bath() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst, mut seen): (f64, usize) = (0.0, 0);
    for _ in 0..500 {
        if let Resolution::Ready(wp) = resolve(&random_params(&mut rng)) {
            worst = worst.max(wp.frame.n_ss.abs()).max(wp.frame.m_ss.norm());
            seen += 1;
        }
    }
    Check::new(
        "matched reservoir gives a vacuum bath",
        seen > 0 && worst <= 1e-12,
        format!("max(N, |M|) = {worst:.2e} over {seen} points"),
    )
}

fn lyapunov_against_moments() -> Check {
    let p = SystemParams { chi: 2.4e-5, ..SystemParams::baseline() };
    let Resolution::Ready(wp) = resolve(&p) else {
        return Check::new("Lyapunov vs moment equations", false, "working point did not resolve".into());
    };
    let m = wp.model();
    let rate = -m.drift().max_real_eig();
    let result = m.steady_covariance().and_then(|v| {
        let x = integrate_moments(&MomentVector::zero(), &m, 30.0 / rate, m.max_step())?;
        Ok(v.max_abs_diff(&x.to_covariance()))
    });
    match result {
        Ok(d) => Check::new("Lyapunov vs moment equations", d <= 1e-6, format!("max entry gap {d:.2e}")),
        Err(e) => Check::new("Lyapunov vs moment equations", false, e.to_string()),
    }
}

fn lyapunov_against_fock() -> Check {
    let base = SystemParams {
        delta_c: 0.6,
        chi: 0.01,
        omega_drive: 1.2,
        kappa_b: 0.2,
        ..SystemParams::baseline()
    };
    let Resolution::Ready(wp) = resolve(&base) else {
        return Check::new("Lyapunov vs truncated Fock space", false, "weak point did not resolve".into());
    };
    // a half-strength reservoir leaves a squeezed bath in the working frame
    let p = SystemParams {
        r_e: wp.frame.r / 2.0,
        theta_e: wp.frame.phi + 0.4,
        reservoir_mode: ReservoirMode::Explicit,
        ..base
    };
    let Resolution::Ready(wp) = resolve(&p) else {
        return Check::new("Lyapunov vs truncated Fock space", false, "weak point did not resolve".into());
    };
    let m = wp.model();
    let rate = -m.drift().max_real_eig();
    let opts = FockOptions { levels: (8, 7), t_end: 25.0 / rate, dt: m.max_step() };
    let result = m
        .steady_covariance()
        .and_then(|v| Ok(v.max_abs_diff(&fock_oracle(&m, &opts)?)));
    match result {
        Ok(d) => Check::new("Lyapunov vs truncated Fock space", d <= 1e-4, format!("max entry gap {d:.2e}")),
        Err(e) => Check::new("Lyapunov vs truncated Fock space", false, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        for c in super::run_all() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
