//! Experiment configuration.
//!
//! Configs are TOML with one table per component. Every table except
//! `[scenario]` and `[grid]` may be omitted, in which case the defaults
//! documented on each field apply.
//!
//! ```toml
//! [scenario]
//! kind = "keyed"            # analytic | uncoded | iid_flips | scrambler | dpsk_bch | keyed
//!
//! [grid]
//! axis = "snr_db"           # snr_db | ebno_db
//! start = 3.0
//! stop = 7.0
//! step = 0.5
//!
//! [metrics]
//! t = 10
//! deltas = [0.05, 0.15]
//!
//! [channel]
//! party = "eve"
//! alpha = 0.7
//!
//! [run]
//! trials = 10000
//! seed = 1
//! out_dir = "out/eve"
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wiretap_secrecy::metrics::Axis;
use wiretap_secrecy::modem::ModKind;
use wiretap_secrecy::scenarios::KeySchedule;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("invalid `{field}`: {reason}")]
    Field { field: &'static str, reason: String },
}

fn field(field: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// Closed-form curves only.
    Analytic,
    /// BPSK over AWGN without coding.
    Uncoded,
    /// Independent bit flips at a fixed probability.
    IidFlips,
    /// Scrambler outer code over BCH.
    Scrambler,
    /// BCH codewords over L-ary DPSK.
    DpskBch,
    /// Keyed interleaver, BCH key code, LDPC and jamming.
    Keyed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub kind: ScenarioKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MetricsSection {
    /// BE-CDF^bc error budget; omitted means no BE-CDF^bc curve.
    pub t: Option<usize>,
    pub deltas: Vec<f64>,
    /// BER-CDF^ac message bits per trial; defaults to one block.
    pub s_b: Option<usize>,
}

impl Default for MetricsSection {
    fn default() -> Self {
        Self {
            t: None,
            deltas: vec![0.05],
            s_b: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CodeSection {
    /// BCH field degree; n = 2^m − 1.
    pub bch_m: u32,
    pub bch_t: usize,
    /// BCH codewords per DPSK block.
    pub bch_codewords: usize,
    /// LDPC fixture path, relative to the config file; the committed fixture when omitted.
    pub ldpc_fixture: Option<PathBuf>,
    pub max_iters: usize,
    /// Seed for the scrambling matrix; the run seed when omitted.
    pub scrambler_seed: Option<u64>,
}

impl Default for CodeSection {
    fn default() -> Self {
        Self {
            bch_m: 7,
            bch_t: 10,
            bch_codewords: 2,
            ldpc_fixture: None,
            max_iters: 50,
            scrambler_seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModemSection {
    pub kind: ModKind,
    pub order: u32,
}

impl Default for ModemSection {
    fn default() -> Self {
        Self {
            kind: ModKind::Bpsk,
            order: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartyKind {
    Bob,
    Eve,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelSection {
    pub party: PartyKind,
    /// Jamming power on the key positions as a fraction of signal power.
    pub alpha: f64,
    /// Block length of the uncoded and iid-flip scenarios.
    pub block_bits: usize,
    /// Required by the iid-flip scenario.
    pub flip_probability: Option<f64>,
}

impl Default for ChannelSection {
    fn default() -> Self {
        Self {
            party: PartyKind::Eve,
            alpha: 0.0,
            block_bits: 127,
            flip_probability: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub trials: u64,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub key_schedule: KeySchedule,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 1,
            out_dir: PathBuf::from("out"),
            key_schedule: KeySchedule::FreshPerBlock,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KlSection {
    /// Blocks per grid point; the grid is read as channel SNR in dB.
    pub trials: u64,
    /// Write pooled LLR samples as little-endian f64 files.
    pub dump_samples: bool,
}

impl Default for KlSection {
    fn default() -> Self {
        Self {
            trials: 200,
            dump_samples: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BscSection {
    pub delta: f64,
    pub confidence_target: f64,
    /// Packets spread by the inter-block interleaver.
    pub interleaver_depth: usize,
    /// Blocks simulated for the serial-correlation check; 0 skips it.
    pub correlation_blocks: usize,
}

impl Default for BscSection {
    fn default() -> Self {
        Self {
            delta: 0.05,
            confidence_target: 0.995,
            interleaver_depth: 8,
            correlation_blocks: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioSection,
    pub grid: GridSection,
    #[serde(default)]
    pub metrics: MetricsSection,
    #[serde(default)]
    pub code: CodeSection,
    #[serde(default)]
    pub modem: ModemSection,
    #[serde(default)]
    pub channel: ChannelSection,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub kl: KlSection,
    #[serde(default)]
    pub bsc: BscSection,
}

impl ScenarioConfig {
    /// Grid points start, start + step, ... up to stop (inclusive within 1e-9).
    pub fn grid_points(&self) -> Vec<f64> {
        let g = &self.grid;
        let n = ((g.stop - g.start) / g.step + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| ((g.start + i as f64 * g.step) * 1e9).round() / 1e9)
            .collect()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let g = &self.grid;
        if !(g.start.is_finite() && g.stop.is_finite() && g.step.is_finite()) {
            return Err(field("grid", "start, stop and step must be finite"));
        }
        if g.step <= 0.0 {
            return Err(field("grid.step", format!("{} must be positive", g.step)));
        }
        if g.stop < g.start {
            return Err(field(
                "grid.stop",
                format!("{} is below start {}", g.stop, g.start),
            ));
        }
        if self.grid_points().len() > 100_000 {
            return Err(field("grid.step", "grid has more than 100000 points"));
        }
        if self.run.trials == 0 {
            return Err(field("trials", "must be at least 1"));
        }
        if self.kl.trials == 0 {
            return Err(field("kl.trials", "must be at least 1"));
        }
        if let Some(d) = self
            .metrics
            .deltas
            .iter()
            .find(|d| !(0.0..=0.5).contains(*d))
        {
            return Err(field("metrics.deltas", format!("{d} not in [0, 0.5]")));
        }
        if !(2..=10).contains(&self.code.bch_m) {
            return Err(field(
                "code.bch_m",
                format!("{} not in 2..=10", self.code.bch_m),
            ));
        }
        let n = (1usize << self.code.bch_m) - 1;
        if self.code.bch_t == 0 || 2 * self.code.bch_t >= n {
            return Err(field(
                "code.bch_t",
                format!(
                    "{} is not a usable correction radius for n = {n}",
                    self.code.bch_t
                ),
            ));
        }
        if self.code.max_iters == 0 {
            return Err(field("code.max_iters", "must be at least 1"));
        }
        if self.code.bch_codewords == 0 {
            return Err(field("code.bch_codewords", "must be at least 1"));
        }
        if self.modem.kind == ModKind::Dpsk && ![2, 4].contains(&self.modem.order) {
            return Err(field(
                "modem.order",
                format!("DPSK order {} is not 2 or 4", self.modem.order),
            ));
        }
        if self.modem.kind == ModKind::Bpsk && self.modem.order != 2 {
            return Err(field("modem.order", "BPSK has order 2"));
        }
        if !(self.channel.alpha >= 0.0 && self.channel.alpha.is_finite()) {
            return Err(field(
                "channel.alpha",
                format!("{} must be finite and ≥ 0", self.channel.alpha),
            ));
        }
        if self.channel.block_bits == 0 {
            return Err(field("channel.block_bits", "must be at least 1"));
        }
        match (self.scenario.kind, self.channel.flip_probability) {
            (ScenarioKind::IidFlips, None) => {
                return Err(field(
                    "channel.flip_probability",
                    "required by the iid_flips scenario",
                ))
            }
            (_, Some(p)) if !(0.0..=1.0).contains(&p) => {
                return Err(field(
                    "channel.flip_probability",
                    format!("{p} not in [0, 1]"),
                ))
            }
            _ => {}
        }
        match self.scenario.kind {
            ScenarioKind::DpskBch if self.modem.kind != ModKind::Dpsk => {
                return Err(field("modem.kind", "dpsk_bch needs DPSK modulation"));
            }
            ScenarioKind::Scrambler
            | ScenarioKind::Uncoded
            | ScenarioKind::Keyed
            | ScenarioKind::IidFlips
                if self.modem.kind != ModKind::Bpsk =>
            {
                return Err(field("modem.kind", "this scenario transmits BPSK"));
            }
            _ => {}
        }
        if !(0.0..=0.5).contains(&self.bsc.delta) {
            return Err(field(
                "bsc.delta",
                format!("{} not in [0, 0.5]", self.bsc.delta),
            ));
        }
        if !(self.bsc.confidence_target > 0.0 && self.bsc.confidence_target <= 1.0) {
            return Err(field("bsc.confidence_target", "must be in (0, 1]"));
        }
        if self.bsc.interleaver_depth == 0 {
            return Err(field("bsc.interleaver_depth", "must be at least 1"));
        }
        if !self
            .bsc
            .correlation_blocks
            .is_multiple_of(self.bsc.interleaver_depth)
        {
            return Err(field(
                "bsc.correlation_blocks",
                "must be a multiple of the interleaver depth",
            ));
        }
        if let Some(p) = &self.code.ldpc_fixture {
            if !p.is_file() {
                return Err(field(
                    "code.ldpc_fixture",
                    format!("{} does not exist", p.display()),
                ));
            }
        }
        Ok(())
    }

    /// TOML text with every default spelled out.
    pub fn to_normalized_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// Parses and validates a config from text. Relative fixture paths are
/// resolved against `base`.
pub fn parse_config_str(text: &str, base: &Path) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg: ScenarioConfig =
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    if let Some(p) = &cfg.code.ldpc_fixture {
        if p.is_relative() {
            cfg.code.ldpc_fixture = Some(base.join(p));
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn parse_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text, path.parent().unwrap_or(Path::new(".")))
}
