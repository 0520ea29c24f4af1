//! Named parameter scans, one per published figure.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use kerr_optomech_core::model::linspace;
use kerr_optomech_core::pipeline::{resolve, Resolution};
use kerr_optomech_core::{Axis, Field, ParamGrid, ReservoirMode, SystemParams};

pub const DEFAULT_RESOLUTION: usize = 201;
pub const KAPPA_A_PANELS: [f64; 4] = [0.5, 0.8, 1.2, 1.5];
pub const CHI_MAX: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6a,
    Fig6b,
    Fig7,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6a,
        Figure::Fig6b,
        Figure::Fig7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6a => "fig6a",
            Figure::Fig6b => "fig6b",
            Figure::Fig7 => "fig7",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFigure(pub String);

impl fmt::Display for UnknownFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = Figure::ALL.iter().map(|f| f.name()).collect();
        write!(f, "unknown figure `{}` (expected one of {})", self.0, names.join(", "))
    }
}

impl std::error::Error for UnknownFigure {}

impl FromStr for Figure {
    type Err = UnknownFigure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFigure(s.to_string()))
    }
}

/// A figure scan: the grid, the columns written, and for the reservoir scan
/// the nine reservoir settings applied to every grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Recipe {
    pub figure: Figure,
    pub grid: ParamGrid,
    /// Axis columns followed by the plotted quantities.
    pub columns: Vec<&'static str>,
    /// Columns left blank unless the point evaluated cleanly. The region is
    /// always known and never blanked.
    pub values: Vec<&'static str>,
}

impl Recipe {
    pub fn new(figure: Figure, resolution: usize) -> Recipe {
        let n = resolution.max(1);
        let chi = Axis { field: Field::Chi, values: linspace(0.0, CHI_MAX, n) };
        let panels = Axis { field: Field::KappaA, values: KAPPA_A_PANELS.to_vec() };
        let base = SystemParams::baseline();
        let detuning_map = |values: &[&'static str]| {
            let grid = ParamGrid::new(
                base,
                vec![
                    panels.clone(),
                    Axis { field: Field::DeltaC, values: linspace(-2.0, 2.0, n) },
                    chi.clone(),
                ],
            );
            (grid, ["kappa_a", "delta_c", "chi"].to_vec(), values.to_vec())
        };
        let (grid, axes, values) = match figure {
            Figure::Fig2 => detuning_map(&["region", "max_real_eig"]),
            Figure::Fig3 => detuning_map(&["delta_sd"]),
            Figure::Fig4 => detuning_map(&["g_sd_re", "g_sd_im"]),
            Figure::Fig5 => detuning_map(&["e_n"]),
            Figure::Fig6a => (
                ParamGrid::new(
                    base,
                    vec![Axis { field: Field::NTh, values: linspace(0.0, 3000.0, n) }, chi],
                ),
                vec!["n_th", "chi"],
                vec!["e_n", "mean_phonon"],
            ),
            Figure::Fig6b => (
                ParamGrid::new(
                    base,
                    vec![Axis { field: Field::OmegaDrive, values: linspace(0.0, 100.0, n) }, chi],
                ),
                vec!["omega_drive", "chi"],
                vec!["e_n", "mean_phonon"],
            ),
            Figure::Fig7 => (
                ParamGrid::new(SystemParams { delta_c: 0.0, ..base }, vec![panels, chi]),
                vec!["kappa_a", "chi", "curve", "r_e", "theta_e"],
                vec!["e_n"],
            ),
        };
        let mut columns = axes;
        columns.extend(values.iter().copied());
        columns.push("status");
        Recipe { figure, grid, columns, values: values.into_iter().filter(|v| *v != "region").collect() }
    }

    /// Number of output rows.
    pub fn len(&self) -> usize {
        match self.figure {
            Figure::Fig7 => self.grid.len() * RESERVOIR_CURVES.len(),
            _ => self.grid.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parameter point and curve label of output row `index`.
    pub fn point(&self, index: usize) -> (SystemParams, Option<&'static str>) {
        match self.figure {
            Figure::Fig7 => {
                let k = RESERVOIR_CURVES.len();
                let curve = &RESERVOIR_CURVES[index % k];
                (curve.apply(&self.grid.point(index / k)), Some(curve.label))
            }
            _ => (self.grid.point(index), None),
        }
    }
}

/// One of the nine reservoir settings `r_e in {0, r/2, r}` by
/// `theta_e in {pi, phi/2 + pi, phi + pi}`, relative to the squeezing frame
/// `(r, phi)` of the point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirCurve {
    pub label: &'static str,
    pub r_e_fraction: f64,
    pub phi_fraction: f64,
}

pub const RESERVOIR_CURVES: [ReservoirCurve; 9] = {
    const fn c(label: &'static str, r_e_fraction: f64, phi_fraction: f64) -> ReservoirCurve {
        ReservoirCurve { label, r_e_fraction, phi_fraction }
    }
    [
        c("r_e=0,theta_e=pi", 0.0, 0.0),
        c("r_e=0,theta_e=phi/2+pi", 0.0, 0.5),
        c("r_e=0,theta_e=phi+pi", 0.0, 1.0),
        c("r_e=r/2,theta_e=pi", 0.5, 0.0),
        c("r_e=r/2,theta_e=phi/2+pi", 0.5, 0.5),
        c("r_e=r/2,theta_e=phi+pi", 0.5, 1.0),
        c("r_e=r,theta_e=pi", 1.0, 0.0),
        c("r_e=r,theta_e=phi/2+pi", 1.0, 0.5),
        c("r_e=r,theta_e=phi+pi", 1.0, 1.0),
    ]
};

impl ReservoirCurve {
    pub fn is_matched(&self) -> bool {
        self.r_e_fraction == 1.0 && self.phi_fraction == 1.0
    }

    /// Explicit-reservoir parameters for this curve at `p`, with `r_e` made
    /// nonnegative when the frame has `r < 0`. Points without a
    /// squeezing frame get `r_e = 0`, `theta_e = pi`; they evaluate to the same
    /// non-`Ok` status regardless.
    pub fn apply(&self, p: &SystemParams) -> SystemParams {
        let (r, phi) = match resolve(p) {
            Resolution::Ready(wp) => (wp.frame.r, wp.frame.phi),
            _ => (0.0, 0.0),
        };
        let r_e = self.r_e_fraction * r;
        let theta_e = self.phi_fraction * phi + PI;
        // (-s, theta) and (s, theta + pi) are the same reservoir
        let (r_e, theta_e) = if r_e < 0.0 { (-r_e, theta_e + PI) } else { (r_e, theta_e) };
        SystemParams {
            r_e,
            theta_e: theta_e.rem_euclid(2.0 * PI),
            reservoir_mode: ReservoirMode::Explicit,
            ..*p
        }
    }
}
