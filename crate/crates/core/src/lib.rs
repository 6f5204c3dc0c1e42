//! Outage probability and DPSK error rate of a multi-hop hybrid FSO/RF relay chain.
//!
//! The first relay combines N Rayleigh branches by selection and forwards by
//! fixed-gain amplify-and-forward over parallel FSO and RF links; every later
//! relay demodulates and forwards over the better of its FSO and RF links.

pub mod ber;
pub mod channels;
mod error;
pub mod montecarlo;
mod numeric;
pub mod outage;
pub mod quadrature;
pub mod relay;
pub mod specfun;

pub use error::{Error, Result};
