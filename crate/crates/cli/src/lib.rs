//! Command-line front end: SNR sweeps to CSV, plot scripts, and the
//! validation suite with a JSON report.

pub mod acceptance;
pub mod spec;
pub mod sweep;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use acceptance::{Report, Suite};
use spec::{CliError, CliResult, Command, RunSpec};

/// Criteria run by `selftest`: the fast ones plus a small determinism check.
pub const SELFTEST_CRITERIA: [u8; 4] = [1, 2, 11, 12];
const SELFTEST_TRIALS: u64 = 1 << 16;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn write_to(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> CliResult<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err(p))?);
            body(&mut w).and_then(|_| w.flush()).map_err(io_err(p))
        }
        None => body(stdout).map_err(io_err(Path::new("<stdout>"))),
    }
}

pub fn run_validate(spec: &RunSpec) -> CliResult<Report> {
    spec.validate()?;
    Ok(Suite::new(spec.seed, spec.trials, spec.workers).run_all())
}

pub fn run_selftest(spec: &RunSpec) -> Report {
    let suite = Suite::new(spec.seed, SELFTEST_TRIALS, spec.workers);
    let criteria: Vec<_> = SELFTEST_CRITERIA
        .iter()
        .map(|&i| suite.run_criterion(i))
        .collect();
    let all_pass = criteria.iter().all(|c| c.pass);
    Report {
        seed: spec.seed,
        trials: SELFTEST_TRIALS,
        criteria,
        notes: vec![],
        all_pass,
    }
}

fn report_out(
    spec: &RunSpec,
    report: &Report,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<()> {
    for c in &report.criteria {
        let _ = writeln!(
            stderr,
            "{} criterion {}: {}: {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            c.summary
        );
    }
    let json = report.to_json();
    write_to(spec.output.as_deref(), stdout, |w| {
        w.write_all(json.as_bytes())
    })?;
    if report.all_pass {
        Ok(())
    } else {
        let failed: Vec<String> = report
            .criteria
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.id.to_string())
            .collect();
        Err(CliError::Validation(format!(
            "criteria {} failed",
            failed.join(", ")
        )))
    }
}

/// Runs one command, writing results to `--output` or `stdout`.
pub fn execute(spec: &RunSpec, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    spec.validate()?;
    match spec.command {
        Command::Outage | Command::Ber => {
            let table = sweep::run_sweep(spec)?;
            for w in &table.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            write_to(spec.output.as_deref(), stdout, |w| {
                table.write_csv(w).map_err(std::io::Error::from)
            })?;
            if let (Some(script), Some(csv)) = (&spec.plot_script, &spec.output) {
                let csv_abs = std::path::absolute(csv).map_err(io_err(csv))?;
                let body =
                    sweep::plot_script(&csv_abs, spec.command, &csv_abs.with_extension("png"));
                std::fs::write(script, body).map_err(io_err(script))?;
            }
            Ok(())
        }
        Command::Validate => {
            let report = run_validate(spec)?;
            report_out(spec, &report, stdout, stderr)
        }
        Command::Selftest => {
            let report = run_selftest(spec);
            report_out(spec, &report, stdout, stderr)
        }
    }
}
