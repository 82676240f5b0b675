//! CSV and JSON persistence.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wiretap_secrecy::metrics::{Axis, CurvePoint, MetricCurve};

use crate::CliError;

/// Fixed column set of every curve file.
pub const CSV_HEADER: [&str; 6] = [
    "axis_db",
    "value",
    "ci_low",
    "ci_high",
    "trials",
    "errors_or_events",
];

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn curve_to_csv(curve: &MetricCurve) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(CliError::runtime)?;
    for p in &curve.points {
        w.write_record([
            p.x.to_string(),
            p.value.to_string(),
            p.ci_low.to_string(),
            p.ci_high.to_string(),
            p.trials.to_string(),
            p.events.to_string(),
        ])
        .map_err(CliError::runtime)?;
    }
    w.into_inner()
        .map_err(|e| CliError::runtime(e.into_error()))
}

pub fn read_curve_csv(path: &Path, axis: Axis) -> Result<MetricCurve, CliError> {
    let mut r = csv::Reader::from_path(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let header = r
        .headers()
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(CliError::Config(format!(
            "{}: unexpected header {:?}",
            path.display(),
            header
        )));
    }
    let bad = |e: String| CliError::Config(format!("{}: {e}", path.display()));
    let mut points = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let f = |i: usize| {
            rec[i]
                .parse::<f64>()
                .map_err(|e| bad(format!("column {}: {e}", CSV_HEADER[i])))
        };
        let u = |i: usize| {
            rec[i]
                .parse::<u64>()
                .map_err(|e| bad(format!("column {}: {e}", CSV_HEADER[i])))
        };
        points.push(CurvePoint {
            x: f(0)?,
            value: f(1)?,
            ci_low: f(2)?,
            ci_high: f(3)?,
            trials: u(4)?,
            events: u(5)?,
        });
    }
    let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or("curve");
    MetricCurve::new(axis, id, points).map_err(|e| bad(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputFile {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_sha256: String,
    pub fixture_sha256: Option<String>,
    pub seed: u64,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub outputs: Vec<OutputFile>,
}

pub fn unix_ms() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

/// Files produced by a command, written in order through one writer.
#[derive(Debug, Default)]
pub struct Outputs {
    pub files: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    pub fn push(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }

    pub fn push_curve(&mut self, stem: &str, curve: &MetricCurve) -> Result<(), CliError> {
        self.push(format!("{stem}.csv"), curve_to_csv(curve)?);
        Ok(())
    }

    pub fn push_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(CliError::runtime)?;
        bytes.push(b'\n');
        self.push(name, bytes);
        Ok(())
    }

    /// Writes every file into `dir` and returns their digests.
    pub fn write_all(&self, dir: &Path) -> Result<Vec<OutputFile>, CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::runtime(format!("{}: {e}", dir.display())))?;
        self.files
            .iter()
            .map(|(name, bytes)| {
                let path: PathBuf = dir.join(name);
                std::fs::write(&path, bytes)
                    .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
                Ok(OutputFile {
                    path: name.clone(),
                    sha256: sha256_hex(bytes),
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let c = MetricCurve::new(
            Axis::SnrDb,
            "x",
            vec![
                CurvePoint {
                    x: -1.5,
                    value: 0.25,
                    ci_low: 0.2,
                    ci_high: 0.3,
                    trials: 100,
                    events: 25,
                },
                CurvePoint::exact(0.5, 0.125),
            ],
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        std::fs::write(&path, curve_to_csv(&c).unwrap()).unwrap();
        let back = read_curve_csv(&path, Axis::SnrDb).unwrap();
        assert_eq!(back.points, c.points);
        let text = String::from_utf8(curve_to_csv(&c).unwrap()).unwrap();
        assert!(text.starts_with("axis_db,value,ci_low,ci_high,trials,errors_or_events\n"));
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
