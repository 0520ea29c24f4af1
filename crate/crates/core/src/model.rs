//! Physical parameters and the configuration document.
//!
//! Every frequency and rate is measured in units of the mechanical frequency,
//! which is therefore identically one and never stored.
//!
//! A configuration document is a flat JSON object whose keys are the
//! [`SystemParams`] field names. Any numeric key may instead hold a range
//! object `{"start": x, "stop": y, "count": n}` (n linearly spaced values,
//! both ends included). Keys that are absent take the [`SystemParams::baseline`]
//! value.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// How the squeezed reservoir feeding the cavity is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReservoirMode {
    /// `(r_e, theta_e) = (r, phi + pi)`, fixed after the squeezing frame is known.
    Matched,
    /// Use `r_e` and `theta_e` as given.
    Explicit,
}

impl ReservoirMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ReservoirMode::Matched => "Matched",
            ReservoirMode::Explicit => "Explicit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Bare detuning between cavity and drive.
    pub delta_c: f64,
    /// Single-photon optomechanical coupling.
    pub g0: f64,
    /// Kerr constant.
    pub chi: f64,
    /// Drive amplitude, taken real.
    pub omega_drive: f64,
    pub kappa_a: f64,
    pub kappa_b: f64,
    /// Thermal phonon occupation of the mechanical bath.
    pub n_th: f64,
    pub r_e: f64,
    pub theta_e: f64,
    pub reservoir_mode: ReservoirMode,
}

impl SystemParams {
    /// The common parameter set of the figure scans: `g0 = 0.005`,
    /// `kappa_b = 1e-5`, `Omega = 50`, `n_th = 0`, `kappa_a = 0.8`,
    /// `delta_c = 0.3`, no Kerr term, matched reservoir.
    pub fn baseline() -> Self {
        Self {
            delta_c: 0.3,
            g0: 0.005,
            chi: 0.0,
            omega_drive: 50.0,
            kappa_a: 0.8,
            kappa_b: 1e-5,
            n_th: 0.0,
            r_e: 0.0,
            theta_e: 0.0,
            reservoir_mode: ReservoirMode::Matched,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for field in Field::ALL {
            check_value(field, field.get(self))?;
        }
        Ok(())
    }

    /// Serialises to a configuration document that [`parse_config`] accepts.
    pub fn to_config_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct always serialises")
    }
}

/// Numeric fields of [`SystemParams`] that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    DeltaC,
    G0,
    Chi,
    OmegaDrive,
    KappaA,
    KappaB,
    NTh,
    REsq,
    ThetaE,
}

impl Field {
    pub const ALL: [Field; 9] = [
        Field::DeltaC,
        Field::G0,
        Field::Chi,
        Field::OmegaDrive,
        Field::KappaA,
        Field::KappaB,
        Field::NTh,
        Field::REsq,
        Field::ThetaE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Field::DeltaC => "delta_c",
            Field::G0 => "g0",
            Field::Chi => "chi",
            Field::OmegaDrive => "omega_drive",
            Field::KappaA => "kappa_a",
            Field::KappaB => "kappa_b",
            Field::NTh => "n_th",
            Field::REsq => "r_e",
            Field::ThetaE => "theta_e",
        }
    }

    pub fn from_name(name: &str) -> Option<Field> {
        Field::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn get(self, p: &SystemParams) -> f64 {
        match self {
            Field::DeltaC => p.delta_c,
            Field::G0 => p.g0,
            Field::Chi => p.chi,
            Field::OmegaDrive => p.omega_drive,
            Field::KappaA => p.kappa_a,
            Field::KappaB => p.kappa_b,
            Field::NTh => p.n_th,
            Field::REsq => p.r_e,
            Field::ThetaE => p.theta_e,
        }
    }

    pub fn set(self, p: &mut SystemParams, v: f64) {
        match self {
            Field::DeltaC => p.delta_c = v,
            Field::G0 => p.g0 = v,
            Field::Chi => p.chi = v,
            Field::OmegaDrive => p.omega_drive = v,
            Field::KappaA => p.kappa_a = v,
            Field::KappaB => p.kappa_b = v,
            Field::NTh => p.n_th = v,
            Field::REsq => p.r_e = v,
            Field::ThetaE => p.theta_e = v,
        }
    }
}

fn check_value(field: Field, v: f64) -> Result<()> {
    let reject = |reason: &str| {
        Err(Error::OutOfRange {
            field: field.name(),
            reason: format!("{reason} (got {v})"),
        })
    };
    if !v.is_finite() {
        return reject("must be finite");
    }
    match field {
        Field::KappaA | Field::KappaB if v <= 0.0 => reject("rates must be strictly positive"),
        Field::G0 | Field::Chi | Field::OmegaDrive | Field::NTh | Field::REsq if v < 0.0 => {
            reject("must be nonnegative")
        }
        _ => Ok(()),
    }
}

/// One swept axis: a field and its values in sweep order.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub field: Field,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn linspace(field: Field, start: f64, stop: f64, count: usize) -> Result<Axis> {
        if count == 0 {
            return Err(Error::EmptyRange(field.name().to_string()));
        }
        check_value(field, start)?;
        check_value(field, stop)?;
        Ok(Axis {
            field,
            values: linspace(start, stop, count),
        })
    }
}

/// `count` evenly spaced values with both endpoints hit exactly.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n)
            .map(|k| {
                if k == n - 1 {
                    stop
                } else {
                    start + (stop - start) * (k as f64) / ((n - 1) as f64)
                }
            })
            .collect(),
    }
}

/// Cartesian product of axes over a base point, enumerated row-major: the
/// first axis varies slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGrid {
    pub base: SystemParams,
    pub axes: Vec<Axis>,
}

impl ParamGrid {
    pub fn new(base: SystemParams, axes: Vec<Axis>) -> Self {
        Self { base, axes }
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, mut index: usize) -> SystemParams {
        let mut p = self.base;
        for axis in self.axes.iter().rev() {
            let n = axis.values.len();
            axis.field.set(&mut p, axis.values[index % n]);
            index /= n;
        }
        p
    }

    pub fn iter(&self) -> impl Iterator<Item = SystemParams> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}

/// A parsed configuration document.
#[derive(Debug, Clone, PartialEq)]
pub enum Config {
    Point(SystemParams),
    Sweep(ParamGrid),
}

impl Config {
    pub fn into_grid(self) -> ParamGrid {
        match self {
            Config::Point(p) => ParamGrid::new(p, Vec::new()),
            Config::Sweep(g) => g,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RangeSpec {
    start: f64,
    stop: f64,
    count: usize,
}

pub fn parse_config(text: &str) -> Result<Config> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let Value::Object(map) = root else {
        return Err(Error::Config("top level must be an object".into()));
    };
    from_map(map)
}

fn from_map(map: Map<String, Value>) -> Result<Config> {
    let mut base = SystemParams::baseline();
    let mut axes = Vec::new();

    for (key, value) in map {
        if key == "reservoir_mode" {
            base.reservoir_mode = serde_json::from_value(value)
                .map_err(|e| Error::Config(format!("reservoir_mode: {e}")))?;
            continue;
        }
        let field = Field::from_name(&key)
            .ok_or_else(|| Error::Config(format!("unknown key `{key}`")))?;
        match value {
            Value::Number(n) => {
                let v = n
                    .as_f64()
                    .ok_or_else(|| Error::Config(format!("`{key}` is not representable")))?;
                check_value(field, v)?;
                field.set(&mut base, v);
            }
            Value::Object(_) => {
                let spec: RangeSpec = serde_json::from_value(value)
                    .map_err(|e| Error::Config(format!("range `{key}`: {e}")))?;
                if axes.iter().any(|a: &Axis| a.field == field) {
                    return Err(Error::Config(format!("duplicate range `{key}`")));
                }
                axes.push(Axis::linspace(field, spec.start, spec.stop, spec.count)?);
            }
            other => {
                return Err(Error::Config(format!(
                    "`{key}` must be a number or a range object, found {other}"
                )))
            }
        }
    }

    if axes.is_empty() {
        base.validate()?;
        Ok(Config::Point(base))
    } else {
        Ok(Config::Sweep(ParamGrid::new(base, axes)))
    }
}
