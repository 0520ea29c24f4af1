use serde::Serialize;

use super::{routh_hurwitz, CharPoly, LinearModel};
use crate::model::SystemParams;
use crate::pipeline::{resolve, Resolution};

/// Phase-diagram region of a parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    SingleStable,
    SingleUnstable,
    Multivalued,
    SqueezeInvalid,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::SingleStable => "SingleStable",
            Region::SingleUnstable => "SingleUnstable",
            Region::Multivalued => "Multivalued",
            Region::SqueezeInvalid => "SqueezeInvalid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub region: Region,
    /// Present only when a linearised model exists.
    pub poly: Option<CharPoly>,
    pub rh_pass: bool,
    pub max_real_eig: Option<f64>,
}

impl StabilityReport {
    fn without_model(region: Region) -> Self {
        StabilityReport { region, poly: None, rh_pass: false, max_real_eig: None }
    }
}

/// Routh–Hurwitz verdict and spectral abscissa of a linearised model.
pub fn stability_report(m: &LinearModel) -> StabilityReport {
    let poly = m.char_poly();
    let rh_pass = routh_hurwitz(&poly);
    StabilityReport {
        region: if rh_pass { Region::SingleStable } else { Region::SingleUnstable },
        poly: Some(poly),
        rh_pass,
        max_real_eig: Some(m.drift().max_real_eig()),
    }
}

/// Region of `p`. A cubic without a unique admissible root counts as
/// multivalued.
pub fn classify_region(p: &SystemParams) -> StabilityReport {
    match resolve(p) {
        Resolution::Ready(wp) => stability_report(&wp.model()),
        Resolution::SqueezeInvalid { .. } => StabilityReport::without_model(Region::SqueezeInvalid),
        Resolution::Multivalued { .. } => StabilityReport::without_model(Region::Multivalued),
    }
}
