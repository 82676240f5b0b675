use rayon::prelude::*;

use super::analytic::error_threshold;
use super::estimate::BerEstimate;
use crate::error::{Error, Result};
use crate::modem::ebno_to_snr;
use crate::rng::{domain, StreamKey, TrialRng};

/// Error counts of one simulated block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BlockErrors {
    /// Bit errors at the input of the outer (secrecy) decoder.
    pub before_outer: usize,
    /// Bit errors in the message delivered by the outer decoder.
    pub after_outer: usize,
}

/// A coded chain that can be simulated one block at a time.
pub trait BlockSimulator: Sync {
    /// Bits observed before the outer decoder in each block.
    fn bits_before_outer(&self) -> usize;
    /// Message bits delivered after the outer decoder in each block.
    fn bits_after_outer(&self) -> usize;
    /// Information bits per channel bit, relating Eb/N0 and SNR.
    fn rate(&self) -> f64;
    /// Simulates one block at the given channel SNR (dB per coded bit).
    fn simulate_block(&self, snr_db: f64, rng: &mut TrialRng) -> Result<BlockErrors>;
}

/// All blocks of one trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub blocks: Vec<BlockErrors>,
}

impl TrialRecord {
    pub fn after_outer(&self) -> usize {
        self.blocks.iter().map(|b| b.after_outer).sum()
    }
}

/// Stream key for a sweep point. The point is addressed by the SNR itself so
/// that a value is reproducible regardless of which grid it sits on.
pub(crate) fn sweep_key(seed: u64, snr_db: f64) -> StreamKey {
    StreamKey::new(seed, domain::SWEEP, snr_db.to_bits())
}

/// Runs `trials` independent trials of `blocks_per_trial` blocks each, in
/// parallel on the current rayon pool. Output order is the trial order.
pub fn simulate_trials<S: BlockSimulator + ?Sized>(
    sim: &S,
    snr_db: f64,
    blocks_per_trial: usize,
    trials: u64,
    key: StreamKey,
) -> Result<Vec<TrialRecord>> {
    if trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    if blocks_per_trial == 0 {
        return Err(Error::invalid("blocks_per_trial", "must be at least 1"));
    }
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = key.trial(t);
            let blocks = (0..blocks_per_trial)
                .map(|_| sim.simulate_block(snr_db, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            Ok(TrialRecord { blocks })
        })
        .collect()
}

/// Monte Carlo Pr(E ≤ t) with E counted before the outer decoder.
pub fn be_cdf_mc<S: BlockSimulator + ?Sized>(
    sim: &S,
    t: usize,
    snr_db: f64,
    trials: u64,
    seed: u64,
) -> Result<BerEstimate> {
    if t > sim.bits_before_outer() {
        return Err(Error::invalid(
            "t",
            format!("{t} exceeds block length {}", sim.bits_before_outer()),
        ));
    }
    let records = simulate_trials(sim, snr_db, 1, trials, sweep_key(seed, snr_db))?;
    let events = records
        .iter()
        .filter(|r| r.blocks[0].before_outer <= t)
        .count() as u64;
    BerEstimate::new(events, trials)
}

/// Blocks needed to cover `s_b` message bits.
pub(crate) fn blocks_for_sb(sim_bits: usize, s_b: usize) -> Result<usize> {
    if s_b == 0 || sim_bits == 0 || !s_b.is_multiple_of(sim_bits) {
        return Err(Error::invalid(
            "s_b",
            format!("{s_b} is not a positive multiple of the {sim_bits}-bit message block"),
        ));
    }
    Ok(s_b / sim_bits)
}

/// Monte Carlo Pr(P̂_b > 0.5 − δ) over `s_b` message bits after the outer decoder.
pub fn ber_cdf_ac_mc<S: BlockSimulator + ?Sized>(
    sim: &S,
    delta: f64,
    s_b: usize,
    ebno_db: f64,
    trials: u64,
    seed: u64,
) -> Result<BerEstimate> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::invalid(
            "delta",
            format!("{delta} is not in [0, 0.5]"),
        ));
    }
    let blocks = blocks_for_sb(sim.bits_after_outer(), s_b)?;
    let snr_db = ebno_to_snr(ebno_db, sim.rate())?;
    let records = simulate_trials(sim, snr_db, blocks, trials, sweep_key(seed, snr_db))?;
    let thr = error_threshold(s_b, delta);
    let events = records.iter().filter(|r| r.after_outer() > thr).count() as u64;
    BerEstimate::new(events, trials)
}
