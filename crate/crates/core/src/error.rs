use thiserror::Error;

use crate::models::Family;

/// Errors raised by the estimation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sample must contain at least one observation")]
    EmptySample,

    #[error("observation {index} is {value}; observations must be finite and strictly positive")]
    InvalidObservation { index: usize, value: f64 },

    #[error("{family} parameters {values:?} lie outside the parameter space")]
    OutsideParameterSpace { family: Family, values: Vec<f64> },

    #[error("{family} expects {expected} parameter(s), got {got}")]
    WrongDimension {
        family: Family,
        expected: usize,
        got: usize,
    },

    #[error("argument {name} = {value} is outside the domain of {what}")]
    Domain {
        what: &'static str,
        name: &'static str,
        value: f64,
    },

    #[error("{operation} is not available for the {family} family")]
    UnsupportedFamily {
        family: Family,
        operation: &'static str,
    },

    #[error("invalid distance configuration: {0}")]
    InvalidConfig(String),

    #[error("quadrature did not reach the requested tolerance (estimated error {achieved:e})")]
    QuadratureNonConvergence { achieved: f64 },

    #[error("sample is degenerate for {0}")]
    DegenerateSample(&'static str),

    #[error("{estimator} needs at least {required} observations, got {got}")]
    SampleTooSmall {
        estimator: &'static str,
        required: usize,
        got: usize,
    },

    #[error("singular linear system in {0}")]
    Singular(&'static str),

    #[error("bracket [{lo}, {hi}] has no sign change and the Newton iteration left it")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("estimator {estimator} does not apply to the {family} family")]
    EstimatorNotApplicable {
        estimator: &'static str,
        family: Family,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
