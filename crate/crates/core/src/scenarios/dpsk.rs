use crate::channel::{AwgnChannel, JammingProfile};
use crate::codes::BchCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::metrics::{BlockErrors, BlockSimulator};
use crate::modem::{db_to_linear, dpsk_demodulate, dpsk_modulate, ModScheme};
use crate::rng::TrialRng;

/// BCH codewords sent back to back over differentially detected DPSK.
///
/// A block holds `codewords` BCH codewords modulated as one frame behind a
/// single reference symbol; hard decisions feed the bounded-distance
/// decoder. The SNR is the energy per coded bit over N0, so each L-ary
/// symbol carries log2(L) times that energy.
#[derive(Debug, Clone)]
pub struct DpskBchScenario {
    bch: BchCode,
    scheme: ModScheme,
    codewords: usize,
}

impl DpskBchScenario {
    pub fn new(bch: BchCode, order: u32, codewords: usize) -> Result<Self> {
        let scheme = ModScheme::dpsk(order)?;
        if codewords == 0 {
            return Err(Error::invalid("codewords", "must be at least 1"));
        }
        if !(codewords * bch.n()).is_multiple_of(scheme.bits_per_symbol() as usize) {
            return Err(Error::invalid(
                "codewords",
                format!(
                    "{} coded bits do not fill whole DPSK-{order} symbols",
                    codewords * bch.n()
                ),
            ));
        }
        Ok(Self {
            bch,
            scheme,
            codewords,
        })
    }

    /// BCH(127, 92) with two codewords per block, so 184 message bits.
    pub fn bch_127_92(order: u32) -> Result<Self> {
        Self::new(BchCode::new(7, 5)?, order, 2)
    }

    pub fn order(&self) -> u32 {
        self.scheme.order()
    }
}

impl BlockSimulator for DpskBchScenario {
    fn bits_before_outer(&self) -> usize {
        self.codewords * self.bch.n()
    }

    fn bits_after_outer(&self) -> usize {
        self.codewords * self.bch.k()
    }

    fn rate(&self) -> f64 {
        self.bch.k() as f64 / self.bch.n() as f64
    }

    fn simulate_block(&self, snr_db: f64, rng: &mut TrialRng) -> Result<BlockErrors> {
        let es_n0 = db_to_linear(snr_db) * self.scheme.bits_per_symbol() as f64;
        let ch = AwgnChannel::<f64>::from_snr_linear(es_n0)?;
        let (n, k) = (self.bch.n(), self.bch.k());
        let msgs: Vec<BitVector> = (0..self.codewords)
            .map(|_| BitVector::random(k, rng))
            .collect();
        let mut frame = BitVector::zeros(0);
        for m in &msgs {
            frame = frame.concat(&self.bch.encode(m)?);
        }
        let tx = dpsk_modulate::<f64>(&frame, self.order())?;
        let rx = ch.transmit_complex(&tx, &JammingProfile::none(), rng)?;
        let hard = dpsk_demodulate(&rx, self.order())?;
        let mut errors = BlockErrors {
            before_outer: hard.hamming_distance(&frame)?,
            after_outer: 0,
        };
        for (i, m) in msgs.iter().enumerate() {
            let out = self.bch.decode(&hard.slice(i * n..(i + 1) * n))?;
            errors.after_outer += out.bits.hamming_distance(m)?;
        }
        Ok(errors)
    }
}
