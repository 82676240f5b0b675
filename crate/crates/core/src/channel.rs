//! AWGN wiretap channel with friendly jamming on chosen symbols.
//!
//! Jamming is modelled as extra white Gaussian noise of total power α times
//! the (unit) signal power, i.e. α/2 per real dimension. Receivers know which
//! symbols were jammed but not the jamming waveform.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::modem::db_to_linear;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AwgnChannel<T> {
    snr_linear: f64,
    noise_var: T,
}

impl<T: Real> AwgnChannel<T> {
    /// Channel with the given symbol SNR Es/N0 (linear).
    pub fn from_snr_linear(snr_linear: f64) -> Result<Self> {
        if !(snr_linear > 0.0) || !snr_linear.is_finite() {
            return Err(Error::invalid(
                "snr_linear",
                format!("{snr_linear} must be positive"),
            ));
        }
        Ok(Self {
            snr_linear,
            noise_var: T::of(0.5 / snr_linear),
        })
    }

    pub fn from_snr_db(snr_db: f64) -> Result<Self> {
        Self::from_snr_linear(db_to_linear(snr_db))
    }

    pub fn snr_linear(&self) -> f64 {
        self.snr_linear
    }

    /// σ² = N0/2 per real dimension.
    pub fn noise_var(&self) -> T {
        self.noise_var
    }

    /// σ² + α/2.
    pub fn effective_noise_var(&self, alpha: f64) -> T {
        self.noise_var + T::of(alpha / 2.0)
    }

    /// Per-symbol noise variance as seen by a receiver that knows `jam`.
    pub fn noise_vars(&self, len: usize, jam: &JammingProfile) -> Result<Vec<T>> {
        jam.check_frame(len)?;
        let mut vars = vec![self.noise_var; len];
        let jammed = self.effective_noise_var(jam.alpha);
        for &i in &jam.indices {
            vars[i] = jammed;
        }
        Ok(vars)
    }

    /// y_i = x_i + n_i (+ j_i on jammed symbols).
    pub fn transmit<R: Rng + ?Sized>(
        &self,
        symbols: &[T],
        jam: &JammingProfile,
        rng: &mut R,
    ) -> Result<Vec<T>> {
        jam.check_frame(symbols.len())?;
        let sigma = self.noise_var.sqrt();
        let mut out: Vec<T> = symbols
            .iter()
            .map(|&x| x + sigma * T::of(rng.sample::<f64, _>(StandardNormal)))
            .collect();
        if jam.alpha > 0.0 {
            let jam_sigma = T::of((jam.alpha / 2.0).sqrt());
            for &i in &jam.indices {
                out[i] += jam_sigma * T::of(rng.sample::<f64, _>(StandardNormal));
            }
        }
        Ok(out)
    }

    /// Complex baseband version with σ² per real dimension.
    pub fn transmit_complex<R: Rng + ?Sized>(
        &self,
        symbols: &[Complex<T>],
        jam: &JammingProfile,
        rng: &mut R,
    ) -> Result<Vec<Complex<T>>> {
        jam.check_frame(symbols.len())?;
        let sigma = self.noise_var.sqrt();
        let draw = |s: T, rng: &mut R| {
            Complex::new(
                s * T::of(rng.sample::<f64, _>(StandardNormal)),
                s * T::of(rng.sample::<f64, _>(StandardNormal)),
            )
        };
        let mut out: Vec<Complex<T>> = symbols.iter().map(|&x| x + draw(sigma, rng)).collect();
        if jam.alpha > 0.0 {
            let jam_sigma = T::of((jam.alpha / 2.0).sqrt());
            for &i in &jam.indices {
                out[i] += draw(jam_sigma, rng);
            }
        }
        Ok(out)
    }
}

/// σ²_eff = σ² + α/2.
pub fn effective_noise_var<T: Real>(ch: &AwgnChannel<T>, alpha: f64) -> T {
    ch.effective_noise_var(alpha)
}

/// Jamming power fraction and the symbol indices it is applied to.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct JammingProfile {
    alpha: f64,
    indices: Vec<usize>,
}

impl JammingProfile {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn new(alpha: f64, mut indices: Vec<usize>) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::invalid(
                "alpha",
                format!("{alpha} must be finite and ≥ 0"),
            ));
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(Self { alpha, indices })
    }

    pub fn contiguous(alpha: f64, range: std::ops::Range<usize>) -> Result<Self> {
        Self::new(alpha, range.collect())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    fn check_frame(&self, len: usize) -> Result<()> {
        match self.indices.last() {
            Some(&i) if i >= len => Err(Error::invalid(
                "jammed_indices",
                format!("index {i} outside frame of {len} symbols"),
            )),
            _ => Ok(()),
        }
    }
}
