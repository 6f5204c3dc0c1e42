use thiserror::Error;

use crate::quadrature::QuadError;
use crate::specfun::SpecFunError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0}")]
    Domain(String),
    #[error("special function failure: {0}")]
    SpecFun(#[from] SpecFunError),
    #[error("quadrature failure: {0}")]
    Quadrature(#[from] QuadError),
    #[error("series CDF does not converge at y = {y} within {terms} terms")]
    SeriesNonConvergence { y: f64, terms: usize },
    #[error("series CDF is degenerate: {0}")]
    DegenerateSeries(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
