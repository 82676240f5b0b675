use rand::Rng;

use crate::channel::{AwgnChannel, JammingProfile};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::metrics::{BlockErrors, BlockSimulator};
use crate::modem::{bpsk_hard_decision, bpsk_modulate};
use crate::rng::TrialRng;

/// BPSK over AWGN with no code: every channel bit is a message bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UncodedBpskScenario {
    pub block_bits: usize,
}

impl UncodedBpskScenario {
    pub fn new(block_bits: usize) -> Result<Self> {
        if block_bits == 0 {
            return Err(Error::invalid("block_bits", "must be at least 1"));
        }
        Ok(Self { block_bits })
    }
}

impl BlockSimulator for UncodedBpskScenario {
    fn bits_before_outer(&self) -> usize {
        self.block_bits
    }

    fn bits_after_outer(&self) -> usize {
        self.block_bits
    }

    fn rate(&self) -> f64 {
        1.0
    }

    fn simulate_block(&self, snr_db: f64, rng: &mut TrialRng) -> Result<BlockErrors> {
        let ch = AwgnChannel::<f64>::from_snr_db(snr_db)?;
        let bits = BitVector::random(self.block_bits, rng);
        let rx = ch.transmit(&bpsk_modulate(&bits), &JammingProfile::none(), rng)?;
        let e = bpsk_hard_decision(&rx).hamming_distance(&bits)?;
        Ok(BlockErrors {
            before_outer: e,
            after_outer: e,
        })
    }
}

/// Independent bit flips with a fixed probability, ignoring the SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IidFlipScenario {
    pub block_bits: usize,
    pub flip_probability: f64,
}

impl IidFlipScenario {
    pub fn new(block_bits: usize, flip_probability: f64) -> Result<Self> {
        if block_bits == 0 {
            return Err(Error::invalid("block_bits", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&flip_probability) {
            return Err(Error::invalid(
                "flip_probability",
                format!("{flip_probability} not in [0, 1]"),
            ));
        }
        Ok(Self {
            block_bits,
            flip_probability,
        })
    }
}

impl BlockSimulator for IidFlipScenario {
    fn bits_before_outer(&self) -> usize {
        self.block_bits
    }

    fn bits_after_outer(&self) -> usize {
        self.block_bits
    }

    fn rate(&self) -> f64 {
        1.0
    }

    fn simulate_block(&self, _snr_db: f64, rng: &mut TrialRng) -> Result<BlockErrors> {
        let e = (0..self.block_bits)
            .filter(|_| rng.random::<f64>() < self.flip_probability)
            .count();
        Ok(BlockErrors {
            before_outer: e,
            after_outer: e,
        })
    }
}
