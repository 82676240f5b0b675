use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Confidence level attached to every estimate unless stated otherwise.
pub const DEFAULT_CONFIDENCE: f64 = 0.95;

/// Two-sided normal quantile for a confidence level in (0, 1).
pub fn z_for_confidence(confidence: f64) -> Result<f64> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::invalid(
            "confidence",
            format!("{confidence} is not in (0, 1)"),
        ));
    }
    let normal = Normal::standard();
    Ok(normal.inverse_cdf(0.5 + confidence / 2.0))
}

/// Wilson score interval for `errors` successes out of `trials`.
pub fn wilson_ci(errors: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    wilson_ci_z(errors, trials, z_for_confidence(confidence)?)
}

/// Wilson score interval with an explicit z multiplier.
pub fn wilson_ci_z(errors: u64, trials: u64, z: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    if errors > trials {
        return Err(Error::invalid(
            "errors",
            format!("{errors} exceeds {trials} trials"),
        ));
    }
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let low = if errors == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let high = if errors == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    Ok((low, high))
}

/// Event count over trials with a Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BerEstimate {
    pub errors: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub ci: (f64, f64),
    pub confidence: f64,
}

impl BerEstimate {
    pub fn new(errors: u64, trials: u64) -> Result<Self> {
        Self::with_confidence(errors, trials, DEFAULT_CONFIDENCE)
    }

    pub fn with_confidence(errors: u64, trials: u64, confidence: f64) -> Result<Self> {
        let ci = wilson_ci(errors, trials, confidence)?;
        Ok(Self {
            errors,
            trials,
            p_hat: errors as f64 / trials as f64,
            ci,
            confidence,
        })
    }

    /// Whether `reference` lies inside the Wilson interval with z = `sigmas`.
    pub fn agrees_with(&self, reference: f64, sigmas: f64) -> bool {
        match wilson_ci_z(self.errors, self.trials, sigmas) {
            Ok((lo, hi)) => reference >= lo - 1e-12 && reference <= hi + 1e-12,
            Err(_) => false,
        }
    }

    /// Binomial standard error of p̂, floored at one event's worth so that
    /// degenerate 0/n and n/n estimates still carry some uncertainty.
    pub fn std_error(&self) -> f64 {
        let n = self.trials as f64;
        let p = self.p_hat.clamp(0.5 / n, 1.0 - 0.5 / n);
        (p * (1.0 - p) / n).sqrt()
    }
}
