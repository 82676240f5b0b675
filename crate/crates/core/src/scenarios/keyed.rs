use std::sync::Arc;

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bsc::{serial_correlation, BlockInterleaver, SerialCorrelation};
use crate::channel::{AwgnChannel, JammingProfile};
use crate::codes::{BchCode, KeyedInterleaver, LdpcCode, DEFAULT_MAX_ITERS};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::llr::{SoftBlock, SoftBlockSimulator};
use crate::metrics::{BlockErrors, BlockSimulator};
use crate::modem::{bpsk_llr_per_symbol, bpsk_modulate};
use crate::rng::{domain, StreamKey, TrialRng};

pub const KEY_BITS: usize = 64;
pub const KEY_CODEWORD_BITS: usize = 127;
pub const MESSAGE_BITS: usize = 753;

/// Receiver of the keyed scheme, identified by the jamming it suffers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Party {
    Bob { alpha: f64 },
    Eve { alpha: f64 },
}

impl Party {
    pub fn alpha(self) -> f64 {
        match self {
            Party::Bob { alpha } | Party::Eve { alpha } => alpha,
        }
    }
}

/// How interleaving keys are chosen from block to block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KeySchedule {
    /// A fresh uniform key for every block.
    #[default]
    FreshPerBlock,
    /// The same 64-bit key for every block.
    Fixed(u64),
}

/// Keyed interleaver with a BCH-coded key inside an LDPC codeword, jammed on
/// the key positions.
///
/// The LDPC message is the 127-bit BCH(127, 64) key codeword in positions
/// 0..127 followed by the 753 interleaved message bits. With the systematic
/// fixture those are also channel symbols 0..127, which carry the jamming.
#[derive(Debug, Clone)]
pub struct KeyedJammingScenario {
    ldpc: Arc<LdpcCode>,
    key_code: BchCode,
    jam_alpha: f64,
    schedule: KeySchedule,
    max_iters: usize,
}

/// Everything observed about one simulated block.
#[derive(Debug, Clone)]
pub struct KeyedBlock {
    /// Errors in the 127 key-codeword bits at the LDPC output.
    pub key_codeword_errors: usize,
    pub ldpc_success: bool,
    pub key_recovered: bool,
    /// Per-bit error indicators of the deinterleaved 753-bit message.
    pub message_errors: BitVector,
    /// LDPC output LLRs of the interleaved message positions.
    pub message_llrs: Vec<f64>,
    pub message_decoded: BitVector,
    pub message_sent: BitVector,
}

impl KeyedJammingScenario {
    pub fn new(ldpc: Arc<LdpcCode>, jam_alpha: f64) -> Result<Self> {
        let key_code = BchCode::new(7, 10)?;
        if ldpc.k() != KEY_CODEWORD_BITS + MESSAGE_BITS {
            return Err(Error::invalid(
                "ldpc",
                format!(
                    "dimension {} is not {} + {}",
                    ldpc.k(),
                    KEY_CODEWORD_BITS,
                    MESSAGE_BITS
                ),
            ));
        }
        if key_code.n() != KEY_CODEWORD_BITS || key_code.k() != KEY_BITS {
            return Err(Error::invalid("key_code", "expected BCH(127, 64)"));
        }
        if !(jam_alpha >= 0.0 && jam_alpha.is_finite()) {
            return Err(Error::invalid(
                "alpha",
                format!("{jam_alpha} must be finite and ≥ 0"),
            ));
        }
        Ok(Self {
            ldpc,
            key_code,
            jam_alpha,
            schedule: KeySchedule::default(),
            max_iters: DEFAULT_MAX_ITERS,
        })
    }

    pub fn for_party(ldpc: Arc<LdpcCode>, party: Party) -> Result<Self> {
        Self::new(ldpc, party.alpha())
    }

    pub fn with_schedule(mut self, schedule: KeySchedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Result<Self> {
        if max_iters == 0 {
            return Err(Error::invalid("max_iters", "must be at least 1"));
        }
        self.max_iters = max_iters;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.jam_alpha
    }

    pub fn ldpc(&self) -> &LdpcCode {
        &self.ldpc
    }

    pub fn key_code(&self) -> &BchCode {
        &self.key_code
    }

    fn draw_key(&self, rng: &mut TrialRng) -> BitVector {
        let word = match self.schedule {
            KeySchedule::FreshPerBlock => rng.next_u64(),
            KeySchedule::Fixed(k) => k,
        };
        BitVector::from_words(&[word], KEY_BITS)
    }

    /// Simulates one block at channel SNR `snr_db` (per coded bit).
    pub fn simulate(&self, snr_db: f64, rng: &mut TrialRng) -> Result<KeyedBlock> {
        let ch = AwgnChannel::<f64>::from_snr_db(snr_db)?;
        let key = self.draw_key(rng);
        let message = BitVector::random(MESSAGE_BITS, rng);
        let key_cw = self.key_code.encode(&key)?;
        let interleaver = KeyedInterleaver::from_key(&key, MESSAGE_BITS)?;
        let sent = interleaver.interleave(&message)?;
        let codeword = self.ldpc.encode(&key_cw.concat(&sent))?;

        let jam = JammingProfile::contiguous(self.jam_alpha, 0..KEY_CODEWORD_BITS)?;
        let rx = ch.transmit(&bpsk_modulate(&codeword), &jam, rng)?;
        let llrs = bpsk_llr_per_symbol(&rx, &ch.noise_vars(rx.len(), &jam)?)?;
        let out = self.ldpc.decode(&llrs, self.max_iters)?;

        let bits = &out.decoded.bits;
        let key_est_cw = bits.slice(0..KEY_CODEWORD_BITS);
        let decoded_msg = bits.slice(KEY_CODEWORD_BITS..bits.len());
        let key_out = self.key_code.decode(&key_est_cw)?;
        let key_recovered = key_out.bits == key;
        let estimate = if key_recovered {
            interleaver.deinterleave(&decoded_msg)?
        } else {
            KeyedInterleaver::from_key(&key_out.bits, MESSAGE_BITS)?.deinterleave(&decoded_msg)?
        };
        Ok(KeyedBlock {
            key_codeword_errors: key_est_cw.hamming_distance(&key_cw)?,
            ldpc_success: out.decoded.is_success(),
            key_recovered,
            message_errors: estimate.xor(&message)?,
            message_llrs: out.llrs[KEY_CODEWORD_BITS..KEY_CODEWORD_BITS + MESSAGE_BITS].to_vec(),
            message_decoded: decoded_msg,
            message_sent: sent,
        })
    }
}

impl BlockSimulator for KeyedJammingScenario {
    fn bits_before_outer(&self) -> usize {
        KEY_CODEWORD_BITS
    }

    fn bits_after_outer(&self) -> usize {
        MESSAGE_BITS
    }

    fn rate(&self) -> f64 {
        self.ldpc.rate()
    }

    fn simulate_block(&self, snr_db: f64, rng: &mut TrialRng) -> Result<BlockErrors> {
        let b = self.simulate(snr_db, rng)?;
        Ok(BlockErrors {
            before_outer: b.key_codeword_errors,
            after_outer: b.message_errors.weight(),
        })
    }
}

impl SoftBlockSimulator for KeyedJammingScenario {
    fn simulate_soft(&self, snr_db: f64, rng: &mut TrialRng) -> Result<SoftBlock<f64>> {
        let b = self.simulate(snr_db, rng)?;
        Ok(SoftBlock {
            llrs: b.message_llrs,
            decoded: b.message_decoded,
            truth: b.message_sent,
        })
    }
}

/// Lag-1 serial correlation of message error indicators over `blocks`
/// consecutive blocks, read in transmission order and again after a
/// fixed-depth inter-block interleaver. `blocks` must be a multiple of `depth`.
pub fn serial_correlation_study(
    scn: &KeyedJammingScenario,
    snr_db: f64,
    depth: usize,
    blocks: usize,
    seed: u64,
) -> Result<SerialCorrelation> {
    let inter = BlockInterleaver::new(depth, MESSAGE_BITS)?;
    if blocks == 0 || !blocks.is_multiple_of(depth) {
        return Err(Error::invalid(
            "blocks",
            format!("{blocks} is not a positive multiple of depth {depth}"),
        ));
    }
    let key = StreamKey::new(seed, domain::SWEEP ^ 0xc0ee, snr_db.to_bits());
    let masks = (0..blocks as u64)
        .into_par_iter()
        .map(|t| {
            scn.simulate(snr_db, &mut key.trial(t))
                .map(|b| b.message_errors)
        })
        .collect::<Result<Vec<_>>>()?;
    let raw: Vec<u8> = masks.iter().flat_map(|m| m.iter()).collect();
    let mut interleaved = Vec::with_capacity(raw.len());
    for group in masks.chunks(depth) {
        interleaved.extend(inter.interleave(group)?);
    }
    Ok(SerialCorrelation {
        depth,
        bits: raw.len(),
        lag1_in_block: serial_correlation(&raw, 1),
        lag1_interleaved: serial_correlation(&interleaved, 1),
    })
}
