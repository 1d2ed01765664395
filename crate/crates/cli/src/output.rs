//! Writers for result files. Numbers are printed in Rust's shortest
//! round-trip scientific form, which is locale-independent and stable.

use std::fs;
use std::path::{Path, PathBuf};

use anyondec::{ComparisonReport, Trajectory};
use serde::Serialize;

use crate::commands::{RatesTable, ShortTimeRow, SweepRow, SWEEP_HEADER};
use crate::error::CliError;

pub fn num(v: f64) -> String {
    format!("{v:e}")
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    }
}

fn write_csv<H, R>(path: &Path, header: H, rows: R) -> Result<(), CliError>
where
    H: IntoIterator,
    H::Item: AsRef<[u8]>,
    R: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    w.write_record(header).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(io_error(path))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| io_error(path)(e.into()))?;
    text.push('\n');
    fs::write(path, text).map_err(io_error(path))
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(io_error(dir))
}

pub fn rates_csv(path: &Path, table: &RatesTable) -> Result<(), CliError> {
    write_csv(path, RatesTable::HEADER, [table.values().map(num).to_vec()])
}

pub fn trajectory_csv(path: &Path, tr: &Trajectory) -> Result<(), CliError> {
    let rows = tr
        .states
        .iter()
        .zip(tr.purities())
        .map(|(s, p)| vec![num(s.t), num(s.x), num(s.y), num(s.z), num(p)]);
    write_csv(path, ["t_s", "x", "y", "z", "purity"], rows)
}

pub fn shorttime_csv(path: &Path, rows: &[ShortTimeRow]) -> Result<(), CliError> {
    let rows = rows.iter().map(|r| {
        vec![
            num(r.t),
            r.regime.to_string(),
            num(r.i_exact),
            num(r.i_asymptotic),
            num(r.b_squared),
            num(r.purity_exact),
            num(r.purity_asymptotic),
        ]
    });
    write_csv(path, ShortTimeRow::HEADER, rows)
}

pub const COMPARE_HEADER: [&str; 6] = [
    "t_s",
    "regime",
    "purity_markovian",
    "purity_shorttime",
    "purity_asymptotic",
    "difference",
];

pub fn compare_csv(path: &Path, report: &ComparisonReport) -> Result<(), CliError> {
    let rows = (0..report.times.len()).map(|i| {
        vec![
            num(report.times[i]),
            report.regimes[i].to_string(),
            num(report.markovian[i]),
            num(report.shorttime_exact[i]),
            num(report.shorttime_asymptotic[i]),
            num(report.differences[i]),
        ]
    });
    write_csv(path, COMPARE_HEADER, rows)
}

pub fn sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<(), CliError> {
    let rows = rows.iter().map(|r| {
        vec![
            r.parameter.to_string(),
            num(r.value),
            r.t.map(num).unwrap_or_default(),
            r.quantity.to_string(),
            num(r.result),
        ]
    });
    write_csv(path, SWEEP_HEADER, rows)
}

pub fn target(dir: &Path, stem: &str, ext: &str) -> PathBuf {
    dir.join(format!("{stem}.{ext}"))
}
