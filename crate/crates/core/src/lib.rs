//! Linearised dynamics and steady-state entanglement of a driven optomechanical
//! cavity containing a Kerr medium, with the cavity coupled to a squeezed
//! vacuum reservoir and the mechanics to a thermal bath.
//!
//! All frequencies are in units of the mechanical frequency. The evaluation
//! chain is [`steadystate`] (intracavity photon number from a cubic),
//! [`frames`] (displacement and squeezing), [`dynamics`] (drift, diffusion,
//! stability, steady covariance) and [`entanglement`]; [`pipeline`] runs the
//! whole chain for one parameter point.

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod frames;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod steadystate;

pub use dynamics::{classify_region, CovarianceMatrix, LinearModel, Region, StabilityReport};
pub use entanglement::{log_negativity, EntanglementRecord};
pub use error::{Error, Result};
pub use frames::{DisplacedFrame, SqueezeFrame};
pub use model::{parse_config, Axis, Config, Field, ParamGrid, ReservoirMode, SystemParams};
pub use pipeline::{evaluate, evaluate_point, Evaluation, Status, SweepRecord, WorkingPoint};
pub use steadystate::{Amplitudes, Multiplicity, RootSet};
