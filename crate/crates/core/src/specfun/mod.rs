//! Special functions: log-gamma, Pochhammer, Bessel K, pFq and Meijer-G.

mod bessel;
mod bivariate;
mod contour;
mod gamma;
mod hyper;
mod meijer;

pub use bessel::bessel_k;
pub use bivariate::{bivariate_meijer_g, bivariate_meijer_g_detailed};
pub use gamma::{gamma, ln_gamma, ln_gamma_complex, pochhammer, recip_gamma, sin_pi, SignedLog};
pub use hyper::{hyp_pfq, hyp_pfq_detailed, SeriesSum};
pub use meijer::{meijer_g, meijer_g_detailed, meijer_g_route, MeijerGSpec, MeijerGValue, Route};

pub(crate) use gamma::ln_gamma_unchecked;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("pole at argument {arg}")]
    Pole { arg: f64 },
    #[error("{what}: argument {arg} outside the domain")]
    Domain { what: &'static str, arg: f64 },
    #[error("{what}: no convergence after {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },
    #[error("invalid Meijer-G specification: {0}")]
    InvalidSpec(String),
    #[error("pole collision could not be resolved: {0}")]
    Collision(String),
}

/// Truncation control for series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesAccuracy {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl SeriesAccuracy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self, SpecFunError> {
        if !(rel_tol > 0.0) || max_terms < 1 {
            return Err(SpecFunError::Domain {
                what: "SeriesAccuracy",
                arg: rel_tol,
            });
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for SeriesAccuracy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 500,
        }
    }
}
