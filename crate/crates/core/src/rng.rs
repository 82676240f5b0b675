//! Deterministic random streams.
//!
//! Every Monte Carlo trial draws from its own ChaCha8 stream addressed by
//! `(master seed, domain, point, trial)`. Results therefore depend only on the
//! seed and never on how trials are scheduled across workers.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

/// Address of a random stream inside a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub seed: u64,
    /// Separates independent uses of the same seed (scenario setup, sweeps, ...).
    pub domain: u64,
    /// Sweep point index.
    pub point: u64,
}

impl StreamKey {
    pub fn new(seed: u64, domain: u64, point: u64) -> Self {
        Self {
            seed,
            domain,
            point,
        }
    }

    pub fn at_point(self, point: u64) -> Self {
        Self { point, ..self }
    }

    /// Stream for one trial.
    pub fn trial(&self, trial: u64) -> TrialRng {
        let mut seed = [0u8; 32];
        seed[0..8].copy_from_slice(&self.seed.to_le_bytes());
        seed[8..16].copy_from_slice(&self.domain.to_le_bytes());
        seed[16..24].copy_from_slice(&self.point.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(seed);
        rng.set_stream(trial);
        rng
    }
}

/// Domain tags used by the built-in scenarios.
pub mod domain {
    pub const SETUP: u64 = 0x5345_5455_5000_0000;
    pub const SWEEP: u64 = 0x5357_4545_5000_0000;
    pub const KL: u64 = 0x4b4c_0000_0000_0000;
    pub const TEST: u64 = 0x5445_5354_0000_0000;
}

/// Uniform integer in `0..bound` by rejection on the top bits of `next_u64`.
///
/// Stable across platforms and `rand` releases, unlike `gen_range`.
pub fn below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    assert!(bound > 0, "bound must be positive");
    let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return x % bound;
        }
    }
}

/// One uniformly random bit.
pub fn bit<R: RngCore + ?Sized>(rng: &mut R) -> u8 {
    (rng.next_u32() >> 31) as u8
}
