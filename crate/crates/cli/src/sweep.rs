//! `outage` and `ber` sweeps over average SNR.
//!
//! Outage CSV columns:
//! `gamma_avg_db, outage_exact, outage_expanded, outage_series, outage_asymptotic, mc_estimate, mc_ci95, trials`
//!
//! BER CSV columns:
//! `gamma_avg_db, ber_quadrature, ber_quadrature_asymptotic, ber_closed_form, closed_form_kind,
//! closed_form_fallbacks, mc_estimate, mc_ci95, trials`
//!
//! Cells that do not apply to the regime (series for negative exponential,
//! asymptotic forms for Gamma-Gamma) are empty, as are the Monte Carlo cells
//! when trials is 0. Floats carry 12 significant digits in scientific notation.

use std::io::Write;
use std::path::Path;

use hybridfso::ber::{
    dpsk_ber_gg_exact, dpsk_ber_ne_asymptotic, dpsk_ber_ne_asymptotic_quadrature,
    dpsk_ber_quadrature,
};
use hybridfso::channels::ChannelParams;
use hybridfso::montecarlo::{simulate_link, SimConfig};
use hybridfso::outage::{outage, OutageForm, OutageRequest};

use crate::spec::{CliError, CliResult, Command, RunSpec};

pub const OUTAGE_COLUMNS: [&str; 8] = [
    "gamma_avg_db",
    "outage_exact",
    "outage_expanded",
    "outage_series",
    "outage_asymptotic",
    "mc_estimate",
    "mc_ci95",
    "trials",
];

pub const BER_COLUMNS: [&str; 9] = [
    "gamma_avg_db",
    "ber_quadrature",
    "ber_quadrature_asymptotic",
    "ber_closed_form",
    "closed_form_kind",
    "closed_form_fallbacks",
    "mc_estimate",
    "mc_ci95",
    "trials",
];

/// 12 significant digits, locale independent.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// non-fatal problems, one line each
    pub warnings: Vec<String>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let j = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[j].parse().ok()).collect())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for r in &self.rows {
            out.write_record(r)?;
        }
        out.flush()?;
        Ok(())
    }
}

fn mc_cells(
    spec: &RunSpec,
    run: impl FnOnce(&SimConfig) -> CliResult<(f64, f64)>,
) -> CliResult<[String; 3]> {
    if spec.trials == 0 {
        return Ok([String::new(), String::new(), "0".into()]);
    }
    let sim = SimConfig::new(spec.trials, spec.seed, spec.mode.into(), spec.workers)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let (est, ci) = run(&sim)?;
    Ok([fmt_num(est), fmt_num(ci), spec.trials.to_string()])
}

pub fn outage_sweep(spec: &RunSpec) -> CliResult<Table> {
    spec.validate()?;
    let cfg = spec.link()?;
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for db in spec.snr_grid_db() {
        let at = format!("at {db} dB");
        let (fso, rf) = spec
            .channels_at(&cfg, db)
            .map_err(CliError::eval(format!("channel setup {at}")))?;
        let run = |form: OutageForm| outage(&OutageRequest::new(cfg, fso, rf, form), cfg.gamma_th);
        let exact = run(OutageForm::Exact)
            .map_err(CliError::eval(format!("exact outage (product form) {at}")))?;
        let expanded = run(OutageForm::Expanded).map_err(CliError::eval(format!(
            "exact outage (binomial expansion) {at}"
        )))?;
        let (series, asym) = match fso {
            ChannelParams::NegExp(_) => {
                let a = run(OutageForm::Asymptotic)
                    .map_err(CliError::eval(format!("asymptotic outage {at}")))?;
                (String::new(), fmt_num(a))
            }
            _ => match run(OutageForm::Series) {
                Ok(s) => (fmt_num(s), String::new()),
                Err(e) => {
                    warnings.push(format!("series outage {at} left empty: {e}"));
                    (String::new(), String::new())
                }
            },
        };
        let mc = mc_cells(spec, |sim| {
            let r = simulate_link(&cfg, &fso, &rf, sim)
                .map_err(CliError::eval(format!("Monte Carlo {at}")))?;
            Ok((r.outage_rate, r.outage_ci95))
        })?;
        let mut row = vec![fmt_num(db), fmt_num(exact), fmt_num(expanded), series, asym];
        row.extend(mc);
        rows.push(row);
    }
    Ok(Table {
        header: OUTAGE_COLUMNS.to_vec(),
        rows,
        warnings,
    })
}

pub fn ber_sweep(spec: &RunSpec) -> CliResult<Table> {
    spec.validate()?;
    let cfg = spec.link()?;
    let mut rows = Vec::new();
    for db in spec.snr_grid_db() {
        let at = format!("at {db} dB");
        let (fso, rf) = spec
            .channels_at(&cfg, db)
            .map_err(CliError::eval(format!("channel setup {at}")))?;
        let req = OutageRequest::new(cfg, fso, rf, OutageForm::Exact);
        let quad = dpsk_ber_quadrature(|g| outage(&req, g)).map_err(CliError::eval(format!(
            "BER quadrature of the exact outage {at}"
        )))?;
        let (quad_asym, closed, kind) = match fso {
            ChannelParams::GammaGamma(p) => {
                let c = dpsk_ber_gg_exact(&cfg, &p, &rf)
                    .map_err(CliError::eval(format!("closed-form Gamma-Gamma BER {at}")))?;
                (String::new(), c, "exact")
            }
            ChannelParams::NegExp(p) => {
                let q = dpsk_ber_ne_asymptotic_quadrature(&cfg, &p, &rf).map_err(
                    CliError::eval(format!("BER quadrature of the asymptotic outage {at}")),
                )?;
                let c = dpsk_ber_ne_asymptotic(&cfg, &p, &rf)
                    .map_err(CliError::eval(format!("asymptotic closed-form BER {at}")))?;
                (fmt_num(q), c, "asymptotic")
            }
            ChannelParams::Rayleigh(_) => unreachable!("presets never put Rayleigh on the FSO hop"),
        };
        let mc = mc_cells(spec, |sim| {
            let r = simulate_link(&cfg, &fso, &rf, sim)
                .map_err(CliError::eval(format!("Monte Carlo {at}")))?;
            Ok((r.ber_estimate, r.ber_ci95))
        })?;
        let mut row = vec![
            fmt_num(db),
            fmt_num(quad),
            quad_asym,
            fmt_num(closed.value),
            kind.into(),
            closed.fallbacks.to_string(),
        ];
        row.extend(mc);
        rows.push(row);
    }
    Ok(Table {
        header: BER_COLUMNS.to_vec(),
        rows,
        warnings: vec![],
    })
}

pub fn run_sweep(spec: &RunSpec) -> CliResult<Table> {
    match spec.command {
        Command::Outage => outage_sweep(spec),
        Command::Ber => ber_sweep(spec),
        other => Err(CliError::Usage(format!("{other:?} is not a sweep"))),
    }
}

/// Python/matplotlib script that plots the CSV on log-y against dB-x.
pub fn plot_script(csv_path: &Path, command: Command, image_path: &Path) -> String {
    let (ylabel, curves): (&str, &[&str]) = match command {
        Command::Ber => (
            "bit error rate",
            &[
                "ber_quadrature",
                "ber_quadrature_asymptotic",
                "ber_closed_form",
            ],
        ),
        _ => (
            "outage probability",
            &["outage_exact", "outage_series", "outage_asymptotic"],
        ),
    };
    let quote = |p: &Path| serde_json::to_string(&p.to_string_lossy()).expect("strings serialize");
    let curves = serde_json::to_string(curves).expect("strings serialize");
    format!(
        r#"import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV = {csv}
CURVES = {curves}


def col(rows, name):
    return [float(r[name]) if r[name] else None for r in rows]


with open(CSV, newline="") as f:
    rows = list(csv.DictReader(f))

x = col(rows, "gamma_avg_db")
fig, ax = plt.subplots()
for name in CURVES:
    y = col(rows, name)
    pts = [(a, b) for a, b in zip(x, y) if b is not None and b > 0]
    if pts:
        ax.plot(*zip(*pts), label=name)
mc = col(rows, "mc_estimate")
ci = col(rows, "mc_ci95")
pts = [(a, b, c) for a, b, c in zip(x, mc, ci) if b is not None and b > 0]
if pts:
    a, b, c = zip(*pts)
    ax.errorbar(a, b, yerr=c, fmt="o", ms=3, label="Monte Carlo")
ax.set_yscale("log")
ax.set_xlabel("average SNR (dB)")
ax.set_ylabel("{ylabel}")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
fig.savefig({image}, dpi=150)
"#,
        csv = quote(csv_path),
        image = quote(image_path),
    )
}
