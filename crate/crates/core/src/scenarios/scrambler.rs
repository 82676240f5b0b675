use crate::channel::{AwgnChannel, JammingProfile};
use crate::codes::{BchCode, Scrambler};
use crate::error::Result;
use crate::gf2::BitVector;
use crate::metrics::{BlockErrors, BlockSimulator};
use crate::modem::{bpsk_hard_decision, bpsk_modulate};
use crate::rng::{domain, StreamKey, TrialRng};

/// A 64-bit scrambler as the outer code over a BCH(127, 64) inner code.
///
/// Errors are counted on the BCH output (before descrambling) and on the
/// descrambled message. A failed BCH decode passes its systematic hard
/// decisions on to the descrambler.
#[derive(Debug, Clone)]
pub struct ScramblerBchScenario {
    scrambler: Scrambler,
    bch: BchCode,
}

impl ScramblerBchScenario {
    /// The scrambling matrix is drawn from the setup stream of `seed`.
    pub fn new(seed: u64) -> Result<Self> {
        let bch = BchCode::new(7, 10)?;
        let mut rng = StreamKey::new(seed, domain::SETUP, 0).trial(0);
        let scrambler = Scrambler::random(bch.k(), &mut rng)?;
        Ok(Self { scrambler, bch })
    }

    pub fn with_parts(scrambler: Scrambler, bch: BchCode) -> Result<Self> {
        crate::error::check_len(bch.k(), scrambler.k())?;
        Ok(Self { scrambler, bch })
    }

    pub fn scrambler(&self) -> &Scrambler {
        &self.scrambler
    }

    pub fn bch(&self) -> &BchCode {
        &self.bch
    }
}

impl BlockSimulator for ScramblerBchScenario {
    fn bits_before_outer(&self) -> usize {
        self.bch.k()
    }

    fn bits_after_outer(&self) -> usize {
        self.bch.k()
    }

    fn rate(&self) -> f64 {
        self.bch.k() as f64 / self.bch.n() as f64
    }

    fn simulate_block(&self, snr_db: f64, rng: &mut TrialRng) -> Result<BlockErrors> {
        let ch = AwgnChannel::<f64>::from_snr_db(snr_db)?;
        let msg = BitVector::random(self.bch.k(), rng);
        let scrambled = self.scrambler.scramble(&msg)?;
        let cw = self.bch.encode(&scrambled)?;
        let rx = ch.transmit(&bpsk_modulate(&cw), &JammingProfile::none(), rng)?;
        let inner = self.bch.decode(&bpsk_hard_decision(&rx))?;
        let estimate = self.scrambler.descramble(&inner.bits)?;
        Ok(BlockErrors {
            before_outer: inner.bits.hamming_distance(&scrambled)?,
            after_outer: estimate.hamming_distance(&msg)?,
        })
    }
}
