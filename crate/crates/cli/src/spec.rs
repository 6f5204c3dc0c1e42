//! Run description shared by every subcommand, plus the regime presets.

use std::path::PathBuf;

use hybridfso::channels::{ChannelParams, GammaGammaPointingParams, NegExpParams, RayleighParams};
use hybridfso::montecarlo::Gamma1Mode;
use hybridfso::relay::LinkConfig;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable that overrides the Monte Carlo worker count.
pub const WORKERS_ENV: &str = "HYBRIDFSO_WORKERS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Eval {
        context: String,
        source: hybridfso::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("validation failed: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn eval(context: impl Into<String>) -> impl FnOnce(hybridfso::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Eval { context, source }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Outage,
    Ber,
    Validate,
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Gamma-Gamma with pointing error, α = 4, β = 1.9, ξ = 10.45
    Moderate,
    /// Gamma-Gamma with pointing error, α = 4.2, β = 1.4, ξ = 2.45
    Strong,
    /// negative exponential with unit variance, λ = 1
    Saturate,
}

pub const MODERATE: (f64, f64, f64) = (4.0, 1.9, 10.45);
pub const STRONG: (f64, f64, f64) = (4.2, 1.4, 2.45);
pub const SATURATE_LAMBDA: f64 = 1.0;

impl Regime {
    /// FSO law at the given mean electrical SNR (linear).
    pub fn fso(self, mean_snr: f64) -> hybridfso::Result<ChannelParams> {
        let gg = |(a, b, xi): (f64, f64, f64)| {
            GammaGammaPointingParams::new(a, b, xi, mean_snr).map(ChannelParams::GammaGamma)
        };
        match self {
            Regime::Moderate => gg(MODERATE),
            Regime::Strong => gg(STRONG),
            Regime::Saturate => {
                NegExpParams::new(SATURATE_LAMBDA, mean_snr).map(ChannelParams::NegExp)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Moderate => "moderate",
            Regime::Strong => "strong",
            Regime::Saturate => "saturate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MonteCarloMode {
    Shared,
    Independent,
}

impl From<MonteCarloMode> for Gamma1Mode {
    fn from(m: MonteCarloMode) -> Self {
        match m {
            MonteCarloMode::Shared => Gamma1Mode::Shared,
            MonteCarloMode::Independent => Gamma1Mode::Independent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub command: Command,
    pub regime: Regime,
    pub n: u32,
    pub m: u32,
    pub c: f64,
    pub eta: f64,
    pub gamma_th_db: f64,
    pub snr_start_db: f64,
    pub snr_stop_db: f64,
    pub snr_step_db: f64,
    /// Monte Carlo trials per point; 0 turns the simulation off in sweeps
    pub trials: u64,
    pub seed: u64,
    pub mode: MonteCarloMode,
    pub workers: usize,
    pub output: Option<PathBuf>,
    pub plot_script: Option<PathBuf>,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            command: Command::Outage,
            regime: Regime::Moderate,
            n: 2,
            m: 2,
            c: 1.0,
            eta: 1.0,
            gamma_th_db: 10.0,
            snr_start_db: 10.0,
            snr_stop_db: 40.0,
            snr_step_db: 2.0,
            trials: 1_000_000,
            seed: 1,
            mode: MonteCarloMode::Independent,
            workers: 1,
            output: None,
            plot_script: None,
        }
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

impl RunSpec {
    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Usage(m));
        if self.n < 1 || self.m < 1 {
            return bad(format!(
                "N and M must be >= 1, got N={} M={}",
                self.n, self.m
            ));
        }
        for (name, v) in [("C", self.c), ("eta", self.eta)] {
            if !(v > 0.0) || !v.is_finite() {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        let dbs = [
            self.gamma_th_db,
            self.snr_start_db,
            self.snr_stop_db,
            self.snr_step_db,
        ];
        if dbs.iter().any(|v| !v.is_finite()) {
            return bad("dB values must be finite".into());
        }
        if self.snr_start_db > self.snr_stop_db {
            return bad(format!(
                "snr start {} exceeds stop {}",
                self.snr_start_db, self.snr_stop_db
            ));
        }
        if !(self.snr_step_db > 0.0) {
            return bad(format!(
                "snr step must be positive, got {}",
                self.snr_step_db
            ));
        }
        if self.workers < 1 {
            return bad("workers must be >= 1".into());
        }
        if self.trials == 1 {
            return bad("trials must be 0 (off) or >= 2".into());
        }
        if self.plot_script.is_some() && self.output.is_none() {
            return bad("a plot script needs --output so it can find the CSV".into());
        }
        Ok(())
    }

    pub fn link(&self) -> CliResult<LinkConfig> {
        LinkConfig::new(
            self.n,
            self.m,
            self.c,
            self.eta,
            db_to_linear(self.gamma_th_db),
        )
        .map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Average SNR grid in dB, endpoints included.
    pub fn snr_grid_db(&self) -> Vec<f64> {
        let span = (self.snr_stop_db - self.snr_start_db) / self.snr_step_db;
        let count = (span + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.snr_start_db + i as f64 * self.snr_step_db)
            .collect()
    }

    /// FSO and RF laws at an average SNR in dB.
    pub fn channels_at(
        &self,
        cfg: &LinkConfig,
        avg_db: f64,
    ) -> hybridfso::Result<(ChannelParams, RayleighParams)> {
        let avg = db_to_linear(avg_db);
        Ok((
            self.regime.fso(cfg.fso_mean_snr(avg))?,
            RayleighParams::new(avg)?,
        ))
    }
}

/// Parses "start:stop:step" in dB.
pub fn parse_snr_range(s: &str) -> std::result::Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:step, got {s:?}"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?;
    }
    Ok((v[0], v[1], v[2]))
}

/// Worker count from the environment, falling back to the available cores.
pub fn workers_from_env() -> CliResult<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w >= 1 => Ok(w),
            _ => Err(CliError::Usage(format!(
                "{WORKERS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_endpoints() {
        let s = RunSpec::default();
        let g = s.snr_grid_db();
        assert_eq!(g.len(), 16);
        assert_eq!(g[0], 10.0);
        assert_eq!(g[15], 40.0);
        let s = RunSpec {
            snr_start_db: 0.0,
            snr_stop_db: 1.0,
            snr_step_db: 0.1,
            ..s
        };
        assert_eq!(s.snr_grid_db().len(), 11);
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_snr_range("10:40:2"), Ok((10.0, 40.0, 2.0)));
        assert!(parse_snr_range("10:40").is_err());
        assert!(parse_snr_range("a:1:2").is_err());
    }

    #[test]
    fn validation_rejects_bad_specs() {
        let ok = RunSpec::default();
        assert!(ok.validate().is_ok());
        for bad in [
            RunSpec {
                snr_start_db: 50.0,
                ..ok.clone()
            },
            RunSpec {
                snr_step_db: 0.0,
                ..ok.clone()
            },
            RunSpec { n: 0, ..ok.clone() },
            RunSpec {
                c: -1.0,
                ..ok.clone()
            },
            RunSpec {
                trials: 1,
                ..ok.clone()
            },
            RunSpec {
                plot_script: Some("p.py".into()),
                ..ok.clone()
            },
        ] {
            assert_eq!(bad.validate().unwrap_err().exit_code(), 2);
        }
    }

    #[test]
    fn presets_are_frozen() {
        match Regime::Strong.fso(5.0).unwrap() {
            ChannelParams::GammaGamma(p) => {
                assert_eq!((p.alpha, p.beta, p.xi, p.mean_snr), (4.2, 1.4, 2.45, 5.0))
            }
            other => panic!("{other:?}"),
        }
        match Regime::Saturate.fso(5.0).unwrap() {
            ChannelParams::NegExp(p) => assert_eq!(p.lambda, 1.0),
            other => panic!("{other:?}"),
        }
    }
}
