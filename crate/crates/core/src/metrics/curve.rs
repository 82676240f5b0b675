use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::estimate::BerEstimate;
use crate::error::{Error, Result};

/// Horizontal axis of a curve, in dB.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    SnrDb,
    #[serde(rename = "ebno_db")]
    EbN0Db,
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Axis::SnrDb => "snr_db",
            Axis::EbN0Db => "ebno_db",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: f64,
    pub value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Zero for closed-form points.
    pub trials: u64,
    pub events: u64,
}

impl CurvePoint {
    pub fn exact(x: f64, value: f64) -> Self {
        Self {
            x,
            value,
            ci_low: value,
            ci_high: value,
            trials: 0,
            events: 0,
        }
    }

    pub fn from_estimate(x: f64, est: &BerEstimate) -> Self {
        Self {
            x,
            value: est.p_hat,
            ci_low: est.ci.0,
            ci_high: est.ci.1,
            trials: est.trials,
            events: est.errors,
        }
    }

    /// Standard error used for isotonic residual checks; zero for exact points.
    fn std_error(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            BerEstimate {
                errors: self.events,
                trials: self.trials,
                p_hat: self.value,
                ci: (self.ci_low, self.ci_high),
                confidence: 0.0,
            }
            .std_error()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricCurve {
    pub axis: Axis,
    pub metric_id: String,
    pub params: BTreeMap<String, String>,
    pub points: Vec<CurvePoint>,
}

impl MetricCurve {
    pub fn new(axis: Axis, metric_id: impl Into<String>, points: Vec<CurvePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("points", "curve has no points"));
        }
        for w in points.windows(2) {
            if !(w[1].x > w[0].x) {
                return Err(Error::invalid(
                    "points",
                    format!("x not strictly increasing at {}", w[1].x),
                ));
            }
        }
        if let Some(p) = points.iter().find(|p| !(0.0..=1.0).contains(&p.value)) {
            return Err(Error::invalid(
                "points",
                format!("value {} outside [0, 1]", p.value),
            ));
        }
        Ok(Self {
            axis,
            metric_id: metric_id.into(),
            params: BTreeMap::new(),
            points,
        })
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn xs(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.x).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }

    /// Shift every x by `db`.
    pub fn shifted(&self, db: f64) -> Self {
        let mut c = self.clone();
        c.points.iter_mut().for_each(|p| p.x += db);
        c
    }

    /// Direction guessed from the endpoints; flat curves count as increasing.
    pub fn monotonicity(&self) -> Monotonicity {
        let first = self.points[0].value;
        let last = self.points[self.points.len() - 1].value;
        if last < first {
            Monotonicity::Decreasing
        } else {
            Monotonicity::Increasing
        }
    }

    fn weights(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.trials.max(1) as f64).collect()
    }

    pub fn isotonic(&self, dir: Monotonicity) -> Vec<f64> {
        isotonic_fit(&self.values(), &self.weights(), dir)
    }

    /// True when every point is within `sigmas` standard errors of the
    /// isotonic fit in direction `dir`.
    pub fn monotone_within(&self, dir: Monotonicity, sigmas: f64) -> bool {
        let fit = self.isotonic(dir);
        self.points
            .iter()
            .zip(fit)
            .all(|(p, f)| (p.value - f).abs() <= sigmas * p.std_error() + 1e-12)
    }

    /// Smallest x at which the monotone fit reaches the far side of `target`
    /// (the reliability side), linearly interpolated.
    pub fn first_crossing(&self, target: f64) -> Result<f64> {
        let (g, t) = self.oriented(target);
        let xs = self.xs();
        let out = || self.out_of_range(target);
        let i = g.iter().position(|&v| v >= t).ok_or_else(out)?;
        if i == 0 {
            return if g[0] == t { Ok(xs[0]) } else { Err(out()) };
        }
        Ok(interpolate(xs[i - 1], g[i - 1], xs[i], g[i], t))
    }

    /// Largest x at which the monotone fit is still on the near side of
    /// `target` (the security side), linearly interpolated.
    pub fn last_crossing(&self, target: f64) -> Result<f64> {
        let (g, t) = self.oriented(target);
        let xs = self.xs();
        let out = || self.out_of_range(target);
        let i = g.iter().rposition(|&v| v <= t).ok_or_else(out)?;
        let last = g.len() - 1;
        if i == last {
            return if g[last] == t {
                Ok(xs[last])
            } else {
                Err(out())
            };
        }
        Ok(interpolate(xs[i], g[i], xs[i + 1], g[i + 1], t))
    }

    /// Isotonic fit mapped onto an increasing scale, with the target mapped alike.
    fn oriented(&self, target: f64) -> (Vec<f64>, f64) {
        let dir = self.monotonicity();
        let fit = self.isotonic(dir);
        match dir {
            Monotonicity::Increasing => (fit, target),
            Monotonicity::Decreasing => (fit.into_iter().map(|v| -v).collect(), -target),
        }
    }

    fn out_of_range(&self, target: f64) -> Error {
        let vals = self.values();
        let low = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let high = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Error::TargetOutOfRange { target, low, high }
    }
}

fn interpolate(x0: f64, y0: f64, x1: f64, y1: f64, y: f64) -> f64 {
    if y1 == y0 {
        x0
    } else {
        x0 + (y - y0) / (y1 - y0) * (x1 - x0)
    }
}

/// Weighted pool-adjacent-violators fit.
pub fn isotonic_fit(values: &[f64], weights: &[f64], dir: Monotonicity) -> Vec<f64> {
    let sign = if dir == Monotonicity::Increasing {
        1.0
    } else {
        -1.0
    };
    // Blocks of (mean, weight, length).
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(values.len());
    for (&v, &w) in values.iter().zip(weights) {
        blocks.push((sign * v, w, 1));
        while blocks.len() > 1 {
            let (m1, w1, n1) = blocks[blocks.len() - 1];
            let (m0, w0, n0) = blocks[blocks.len() - 2];
            if m0 <= m1 {
                break;
            }
            blocks.truncate(blocks.len() - 2);
            blocks.push(((m0 * w0 + m1 * w1) / (w0 + w1), w0 + w1, n0 + n1));
        }
    }
    blocks
        .into_iter()
        .flat_map(|(m, _, n)| std::iter::repeat_n(sign * m, n))
        .collect()
}

/// Gap in dB between the SNR Bob needs for his reliability target on
/// `main` and the largest SNR at which Eve still meets her security target
/// on `eve`.
pub fn security_gap(
    main: &MetricCurve,
    bob_target: f64,
    eve: &MetricCurve,
    eve_target: f64,
) -> Result<f64> {
    if main.axis != eve.axis {
        return Err(Error::invalid("axis", "curves use different axes"));
    }
    Ok(main.first_crossing(bob_target)? - eve.last_crossing(eve_target)?)
}
