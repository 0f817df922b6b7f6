//! CSV and metadata files written by experiments.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::mobility::UeState;

use super::config::ExperimentConfig;
use super::episode::SlotMetrics;
use super::experiment::RunSeries;

pub const CSV_HEADER: &str = "slot,utility,mean_rate_bps,energy_w,ici_w";

/// `git describe` of the build, or `unknown`.
pub const BUILD_DESCRIBE: &str = env!("VLC_UDN_GIT_DESCRIBE");

#[derive(Serialize)]
struct Row {
    slot: usize,
    utility: f64,
    mean_rate_bps: f64,
    energy_w: f64,
    ici_w: f64,
}

pub fn write_metrics_csv<W: Write>(metrics: &[SlotMetrics], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for m in metrics {
        w.serialize(Row { slot: m.slot, utility: m.utility, mean_rate_bps: m.mean_rate, energy_w: m.energy, ici_w: m.ici })?;
    }
    if metrics.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Metadata<'a> {
    config: &'a ExperimentConfig,
    config_hash: &'a str,
    seed: u64,
    runs: usize,
    ue_density: usize,
    policy: &'a str,
    build: &'static str,
    version: &'static str,
    frame_note: &'static str,
}

pub fn metadata_json(config: &ExperimentConfig, series: &RunSeries) -> String {
    let md = Metadata {
        config,
        config_hash: &series.metadata.config_hash,
        seed: series.metadata.seed,
        runs: series.metadata.runs,
        ue_density: series.metadata.ue_density,
        policy: &series.metadata.policy,
        build: BUILD_DESCRIBE,
        version: env!("CARGO_PKG_VERSION"),
        frame_note: "one frame is one time slot",
    };
    serde_json::to_string_pretty(&md).expect("metadata serializes")
}

/// Base file name for a series: `<policy>_rho<N>`.
pub fn series_stem(series: &RunSeries) -> String {
    format!("{}_rho{}", series.metadata.policy, series.metadata.ue_density)
}

/// Writes `<stem>.csv` and `<stem>.meta.json` into `dir`; returns the CSV path.
pub fn write_series(dir: &Path, config: &ExperimentConfig, series: &RunSeries) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let stem = series_stem(series);
    let csv_path = dir.join(format!("{stem}.csv"));
    write_metrics_csv(&series.slots, BufWriter::new(File::create(&csv_path)?))?;
    fs::write(dir.join(format!("{stem}.meta.json")), metadata_json(config, series) + "\n")?;
    Ok(csv_path)
}

/// Appends `slot,ue_id,x,y` rows for the served UEs.
pub fn write_trajectory_rows<W: Write>(out: &mut W, slot: usize, ues: &[UeState]) -> Result<()> {
    for ue in ues {
        writeln!(out, "{slot},{},{},{}", ue.id, ue.position.x, ue.position.y)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_and_rows() {
        let m = [SlotMetrics { slot: 0, utility: 1.5, mean_rate: 2e7, energy: 0.004, ici: 1e-9 }];
        let mut buf = Vec::new();
        write_metrics_csv(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(lines.next().unwrap(), "0,1.5,20000000.0,0.004,1e-9");
    }

    #[test]
    fn empty_csv_still_has_header() {
        let mut buf = Vec::new();
        write_metrics_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().trim_end(), CSV_HEADER);
    }
}
