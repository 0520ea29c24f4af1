//! Single-point evaluation: fixed point, frames, stability, covariance and
//! entanglement, with every failure recorded rather than raised.

use serde::Serialize;

use crate::dynamics::{stability_report, CovarianceMatrix, LinearModel, Region};
use crate::entanglement::log_negativity;
use crate::error::Error;
use crate::frames::{displaced_frame, resolved_reservoir, squeeze_frame, DisplacedFrame, SqueezeFrame};
use crate::model::SystemParams;
use crate::steadystate::{solve_steady_state, steady_amplitudes, Amplitudes, RootSet};

/// A single-valued fixed point together with its squeezed frame.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkingPoint {
    pub params: SystemParams,
    pub roots: RootSet,
    pub amplitudes: Amplitudes,
    pub displaced: DisplacedFrame,
    pub frame: SqueezeFrame,
    /// Reservoir actually applied (resolved in matched mode).
    pub r_e: f64,
    pub theta_e: f64,
}

impl WorkingPoint {
    pub fn model(&self) -> LinearModel {
        LinearModel {
            delta_sd: self.frame.delta_sd,
            g_sd: self.frame.g_sd,
            kappa_a: self.params.kappa_a,
            kappa_b: self.params.kappa_b,
            n_th: self.params.n_th,
            n_ss: self.frame.n_ss,
            m_ss: self.frame.m_ss,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Resolution {
    Ready(Box<WorkingPoint>),
    /// No real squeezing cancels the two-photon term.
    SqueezeInvalid {
        roots: RootSet,
        amplitudes: Amplitudes,
        displaced: DisplacedFrame,
        error: Error,
    },
    /// Several admissible roots, or none.
    Multivalued { roots: Option<RootSet>, error: Error },
}

pub fn resolve(p: &SystemParams) -> Resolution {
    let roots = match solve_steady_state(p) {
        Ok(r) => r,
        Err(error) => return Resolution::Multivalued { roots: None, error },
    };
    let amplitudes = match steady_amplitudes(p, &roots) {
        Ok(a) => a,
        Err(error) => return Resolution::Multivalued { roots: Some(roots), error },
    };
    let displaced = displaced_frame(p, &amplitudes);
    match squeeze_frame(p, &amplitudes, &displaced) {
        Ok(frame) => {
            let (r_e, theta_e) = resolved_reservoir(p, frame.r, frame.phi);
            Resolution::Ready(Box::new(WorkingPoint {
                params: *p,
                roots,
                amplitudes,
                displaced,
                frame,
                r_e,
                theta_e,
            }))
        }
        Err(error) => Resolution::SqueezeInvalid { roots, amplitudes, displaced, error },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Ok,
    Multivalued,
    SqueezeInvalid,
    Unstable,
    Error,
}

impl Status {
    pub const ALL: [Status; 5] = [
        Status::Ok,
        Status::Multivalued,
        Status::SqueezeInvalid,
        Status::Unstable,
        Status::Error,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "Ok",
            Status::Multivalued => "Multivalued",
            Status::SqueezeInvalid => "SqueezeInvalid",
            Status::Unstable => "Unstable",
            Status::Error => "Error",
        }
    }
}

/// One output row. Quantities not reached by the evaluation are `None`;
/// entanglement quantities are `None` unless `status` is `Ok`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    /// Input parameters, with `r_e` and `theta_e` replaced by the resolved
    /// reservoir in matched mode.
    #[serde(flatten)]
    pub params: SystemParams,
    pub y: Option<f64>,
    pub alpha_re: Option<f64>,
    pub alpha_im: Option<f64>,
    pub beta_re: Option<f64>,
    pub beta_im: Option<f64>,
    pub delta_d: Option<f64>,
    pub g_d_re: Option<f64>,
    pub g_d_im: Option<f64>,
    pub r: Option<f64>,
    pub phi: Option<f64>,
    pub delta_sd: Option<f64>,
    pub g_sd_re: Option<f64>,
    pub g_sd_im: Option<f64>,
    pub n_ss: Option<f64>,
    pub m_ss_re: Option<f64>,
    pub m_ss_im: Option<f64>,
    pub residual_r_abs: Option<f64>,
    pub region: Region,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub a3: Option<f64>,
    pub a4: Option<f64>,
    pub max_real_eig: Option<f64>,
    pub e_n: Option<f64>,
    pub eta_minus: Option<f64>,
    pub mean_phonon: Option<f64>,
    pub mean_photon: Option<f64>,
    pub status: Status,
}

impl SweepRecord {
    fn empty(params: SystemParams, region: Region, status: Status) -> Self {
        SweepRecord {
            params,
            y: None,
            alpha_re: None,
            alpha_im: None,
            beta_re: None,
            beta_im: None,
            delta_d: None,
            g_d_re: None,
            g_d_im: None,
            r: None,
            phi: None,
            delta_sd: None,
            g_sd_re: None,
            g_sd_im: None,
            n_ss: None,
            m_ss_re: None,
            m_ss_im: None,
            residual_r_abs: None,
            region,
            a1: None,
            a2: None,
            a3: None,
            a4: None,
            max_real_eig: None,
            e_n: None,
            eta_minus: None,
            mean_phonon: None,
            mean_photon: None,
            status,
        }
    }

    fn set_amplitudes(&mut self, amp: &Amplitudes, df: &DisplacedFrame) {
        self.y = Some(amp.y);
        self.alpha_re = Some(amp.alpha_ss.re);
        self.alpha_im = Some(amp.alpha_ss.im);
        self.beta_re = Some(amp.beta_ss.re);
        self.beta_im = Some(amp.beta_ss.im);
        self.delta_d = Some(df.delta_d);
        self.g_d_re = Some(df.g_d.re);
        self.g_d_im = Some(df.g_d.im);
    }
}

/// Everything produced for one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub record: SweepRecord,
    /// Steady covariance, whenever the Lyapunov solve succeeded.
    pub covariance: Option<CovarianceMatrix>,
    /// The failure that decided a non-`Ok` status.
    pub error: Option<Error>,
}

pub fn evaluate(p: &SystemParams) -> Evaluation {
    if let Err(e) = p.validate() {
        return Evaluation {
            record: SweepRecord::empty(*p, Region::Multivalued, Status::Error),
            covariance: None,
            error: Some(e),
        };
    }
    let wp = match resolve(p) {
        Resolution::Multivalued { error, .. } => {
            return Evaluation {
                record: SweepRecord::empty(*p, Region::Multivalued, Status::Multivalued),
                covariance: None,
                error: Some(error),
            }
        }
        Resolution::SqueezeInvalid { amplitudes, displaced, error, .. } => {
            let mut record = SweepRecord::empty(*p, Region::SqueezeInvalid, Status::SqueezeInvalid);
            record.set_amplitudes(&amplitudes, &displaced);
            return Evaluation { record, covariance: None, error: Some(error) };
        }
        Resolution::Ready(wp) => wp,
    };

    let model = wp.model();
    let report = stability_report(&model);
    let params = SystemParams { r_e: wp.r_e, theta_e: wp.theta_e, ..*p };
    let mut record = SweepRecord::empty(params, report.region, Status::Unstable);
    record.set_amplitudes(&wp.amplitudes, &wp.displaced);
    let f = &wp.frame;
    record.r = Some(f.r);
    record.phi = Some(f.phi);
    record.delta_sd = Some(f.delta_sd);
    record.g_sd_re = Some(f.g_sd.re);
    record.g_sd_im = Some(f.g_sd.im);
    record.n_ss = Some(f.n_ss);
    record.m_ss_re = Some(f.m_ss.re);
    record.m_ss_im = Some(f.m_ss.im);
    record.residual_r_abs = Some(f.residual_r.norm());
    if let Some(poly) = report.poly {
        record.a1 = Some(poly.a1);
        record.a2 = Some(poly.a2);
        record.a3 = Some(poly.a3);
        record.a4 = Some(poly.a4);
    }
    record.max_real_eig = report.max_real_eig;

    if !report.rh_pass {
        let error = Error::NoSteadyState(report.max_real_eig.unwrap_or(f64::NAN));
        return Evaluation { record, covariance: None, error: Some(error) };
    }

    let covariance = match model.steady_covariance() {
        Ok(v) => v,
        Err(e) => {
            record.status = Status::Error;
            return Evaluation { record, covariance: None, error: Some(e) };
        }
    };
    let min_eig = covariance.uncertainty_min_eig();
    if !(min_eig >= -1e-9) {
        record.status = Status::Error;
        return Evaluation { record, covariance: Some(covariance), error: Some(Error::Uncertainty(min_eig)) };
    }
    match log_negativity(&covariance) {
        Ok(ent) => {
            record.e_n = Some(ent.e_n);
            record.eta_minus = Some(ent.eta_minus);
            record.mean_phonon = Some(ent.mean_phonon);
            record.mean_photon = Some(ent.mean_photon);
            record.status = Status::Ok;
            Evaluation { record, covariance: Some(covariance), error: None }
        }
        Err(e) => {
            record.status = Status::Error;
            Evaluation { record, covariance: Some(covariance), error: Some(e) }
        }
    }
}

pub fn evaluate_point(p: &SystemParams) -> SweepRecord {
    evaluate(p).record
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::classify_region;

    #[test]
    fn peak_neighbourhood_is_entangled() {
        let p = SystemParams { chi: 2.4e-5, ..SystemParams::baseline() };
        let rec = evaluate_point(&p);
        assert_eq!(rec.status, Status::Ok, "{rec:?}");
        assert!(rec.e_n.unwrap() > 0.0);
        let dsd = rec.delta_sd.unwrap();
        assert!(dsd > 0.0 && dsd <= 2.0, "{dsd}");
    }

    #[test]
    fn undriven_point_is_separable() {
        let p = SystemParams { omega_drive: 0.0, ..SystemParams::baseline() };
        let rec = evaluate_point(&p);
        assert_eq!(rec.status, Status::Ok);
        assert_eq!(rec.e_n, Some(0.0));
        assert_eq!(rec.y, Some(0.0));
    }

    #[test]
    fn entanglement_blank_unless_ok() {
        for delta_c in [-1.8, -0.9, -0.2, 0.3, 1.0, 1.9] {
            for chi in [0.0, 5e-5, 1e-4] {
                let rec = evaluate_point(&SystemParams { delta_c, chi, ..SystemParams::baseline() });
                if rec.status != Status::Ok {
                    assert!(rec.e_n.is_none() && rec.eta_minus.is_none() && rec.mean_phonon.is_none());
                }
            }
        }
    }

    #[test]
    fn region_matches_classification() {
        for delta_c in [-1.5, -0.4, 0.3, 1.2] {
            for chi in [0.0, 2e-5, 6e-5] {
                let p = SystemParams { delta_c, chi, ..SystemParams::baseline() };
                let rec = evaluate_point(&p);
                assert_eq!(rec.region, classify_region(&p).region);
                let expect = match rec.region {
                    Region::Multivalued => Status::Multivalued,
                    Region::SqueezeInvalid => Status::SqueezeInvalid,
                    Region::SingleUnstable => Status::Unstable,
                    Region::SingleStable => rec.status,
                };
                assert_eq!(rec.status, expect);
            }
        }
    }

    #[test]
    fn matched_mode_reports_resolved_reservoir() {
        let p = SystemParams { chi: 2.4e-5, ..SystemParams::baseline() };
        let rec = evaluate_point(&p);
        assert_eq!(rec.params.r_e, rec.r.unwrap());
        assert_eq!(rec.params.theta_e, rec.phi.unwrap() + std::f64::consts::PI);
        assert!(rec.n_ss.unwrap() <= 1e-12);
    }

    #[test]
    fn invalid_parameters_give_error_status() {
        let p = SystemParams { kappa_a: -1.0, ..SystemParams::baseline() };
        let ev = evaluate(&p);
        assert_eq!(ev.record.status, Status::Error);
        assert!(matches!(ev.error, Some(Error::OutOfRange { .. })));
    }
}
