use thiserror::Error;

/// Failures raised by the physics pipeline and the configuration parser.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed configuration: {0}")]
    Config(String),

    #[error("parameter `{field}` out of range: {reason}")]
    OutOfRange { field: &'static str, reason: String },

    #[error("empty sweep range for `{0}`")]
    EmptyRange(String),

    #[error("cubic leading coefficient vanishes (a = {0:e})")]
    DegenerateCubic(f64),

    #[error("no real nonnegative solution for the intracavity photon number")]
    NoPhysicalRoot,

    #[error("semiclassical equations admit several fixed points")]
    MultistableRegime,

    #[error("no real squeezing parameter cancels the two-photon term (|2 chi y / delta_d| = {0})")]
    SqueezeDomain(f64),

    #[error("effective bath is unphysical: |M|^2 = {m2:e} exceeds N(N+1) = {bound:e}")]
    BathPhysicality { m2: f64, bound: f64 },

    #[error("drift matrix is not Hurwitz (max Re lambda = {0:e}); no steady state")]
    NoSteadyState(f64),

    #[error("moment integration diverged at t = {0}")]
    Divergence(f64),

    #[error("integration step {dt} exceeds the stability cap {cap}")]
    StepTooLarge { dt: f64, cap: f64 },

    #[error("Fock truncation leaks: top-level population {0:e}")]
    OracleCutoff(f64),

    #[error("covariance matrix gives a complex symplectic eigenvalue (Sigma^2 - 4 det V = {0:e})")]
    NumericalDomain(f64),

    #[error("covariance matrix violates the uncertainty bound (min eigenvalue {0:e})")]
    Uncertainty(f64),

    #[error("linear solve failed: {0}")]
    Singular(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
