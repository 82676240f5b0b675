//! BPSK and differential PSK, plus SNR ↔ Eb/N0 bookkeeping.
//!
//! Symbols have unit energy. SNR means energy per transmitted (coded) bit
//! over N0 for BPSK; for L-ary DPSK the per-symbol SNR is log2(L) times that.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModKind {
    Bpsk,
    Dpsk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModScheme {
    kind: ModKind,
    order: u32,
}

impl ModScheme {
    pub fn bpsk() -> Self {
        Self {
            kind: ModKind::Bpsk,
            order: 2,
        }
    }

    pub fn dpsk(order: u32) -> Result<Self> {
        match order {
            2 | 4 => Ok(Self {
                kind: ModKind::Dpsk,
                order,
            }),
            _ => Err(Error::invalid(
                "order",
                format!("DPSK order {order} not in {{2, 4}}"),
            )),
        }
    }

    pub fn kind(&self) -> ModKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.order.trailing_zeros()
    }
}

/// Overall information rate R of a coding chain, 0 < R ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateContext {
    rate: f64,
}

impl RateContext {
    pub fn new(rate: f64) -> Result<Self> {
        if rate > 0.0 && rate <= 1.0 {
            Ok(Self { rate })
        } else {
            Err(Error::invalid("rate", format!("{rate} not in (0, 1]")))
        }
    }

    pub fn from_dims(k: usize, n: usize) -> Result<Self> {
        Self::new(k as f64 / n as f64)
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// SNR = R · Eb/N0, in dB.
    pub fn ebno_to_snr_db(&self, ebno_db: f64) -> f64 {
        ebno_db + 10.0 * self.rate.log10()
    }

    pub fn snr_to_ebno_db(&self, snr_db: f64) -> f64 {
        snr_db - 10.0 * self.rate.log10()
    }
}

pub fn ebno_to_snr(ebno_db: f64, rate: f64) -> Result<f64> {
    Ok(RateContext::new(rate)?.ebno_to_snr_db(ebno_db))
}

pub fn snr_to_ebno(snr_db: f64, rate: f64) -> Result<f64> {
    Ok(RateContext::new(rate)?.snr_to_ebno_db(snr_db))
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// 0 → +1, 1 → −1.
pub fn bpsk_modulate<T: Real>(bits: &BitVector) -> Vec<T> {
    bits.iter()
        .map(|b| if b == 0 { T::one() } else { -T::one() })
        .collect()
}

/// Hard decision: negative samples decide 1.
pub fn bpsk_hard_decision<T: Real>(received: &[T]) -> BitVector {
    received.iter().map(|&y| (y < T::zero()) as u8).collect()
}

/// LLR_i = 2·y_i / σ², positive favouring bit 0.
pub fn bpsk_llr<T: Real>(received: &[T], noise_var: T) -> Result<Vec<T>> {
    if !(noise_var > T::zero()) {
        return Err(Error::invalid(
            "noise_var",
            format!("{noise_var} must be positive"),
        ));
    }
    let scale = T::of(2.0) / noise_var;
    Ok(received.iter().map(|&y| y * scale).collect())
}

/// LLRs with a separate noise variance per sample (jammed symbols).
pub fn bpsk_llr_per_symbol<T: Real>(received: &[T], noise_vars: &[T]) -> Result<Vec<T>> {
    crate::error::check_len(received.len(), noise_vars.len())?;
    received
        .iter()
        .zip(noise_vars)
        .map(|(&y, &v)| {
            if v > T::zero() {
                Ok(T::of(2.0) * y / v)
            } else {
                Err(Error::invalid("noise_var", format!("{v} must be positive")))
            }
        })
        .collect()
}

/// Gray map of a dibit to a phase increment in quarter turns.
fn gray_quadrant(b0: u8, b1: u8) -> u32 {
    match (b0, b1) {
        (0, 0) => 0,
        (0, 1) => 1,
        (1, 1) => 2,
        _ => 3,
    }
}

fn quadrant_bits(q: u32) -> (u8, u8) {
    match q & 3 {
        0 => (0, 0),
        1 => (0, 1),
        2 => (1, 1),
        _ => (1, 0),
    }
}

/// Differential PSK: a unit reference symbol followed by one symbol per
/// log2(L) bits, each rotated from its predecessor by the data phase.
pub fn dpsk_modulate<T: Real>(bits: &BitVector, order: u32) -> Result<Vec<Complex<T>>> {
    let scheme = ModScheme::dpsk(order)?;
    let per = scheme.bits_per_symbol() as usize;
    if !bits.len().is_multiple_of(per) {
        return Err(Error::invalid(
            "bits",
            format!("{} bits is not a multiple of {per}", bits.len()),
        ));
    }
    let mut phase = 0u32;
    let mut out = Vec::with_capacity(bits.len() / per + 1);
    out.push(quarter_turn::<T>(0));
    for chunk in bits.as_slice().chunks(per) {
        let step = match order {
            2 => 2 * chunk[0] as u32,
            _ => gray_quadrant(chunk[0], chunk[1]),
        };
        phase = (phase + step) & 3;
        out.push(quarter_turn(phase));
    }
    Ok(out)
}

fn quarter_turn<T: Real>(q: u32) -> Complex<T> {
    match q & 3 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// Non-coherent differential detection from consecutive symbol pairs.
pub fn dpsk_demodulate<T: Real>(received: &[Complex<T>], order: u32) -> Result<BitVector> {
    ModScheme::dpsk(order)?;
    let mut bits =
        Vec::with_capacity(received.len().saturating_sub(1) * order.trailing_zeros() as usize);
    for pair in received.windows(2) {
        let z = pair[1] * pair[0].conj();
        if order == 2 {
            bits.push((z.re < T::zero()) as u8);
        } else {
            // Nearest multiple of π/2: compare |re| with |im| and signs.
            let q = if z.re.abs() >= z.im.abs() {
                if z.re >= T::zero() {
                    0
                } else {
                    2
                }
            } else if z.im >= T::zero() {
                1
            } else {
                3
            };
            let (b0, b1) = quadrant_bits(q);
            bits.push(b0);
            bits.push(b1);
        }
    }
    Ok(BitVector::from_lsb(bits))
}
