//! Divergence between decoder-output LLR distributions of correct and
//! erroneous bits.
//!
//! Densities are estimated with 101 uniform bins spanning the central 99.9%
//! of the pooled samples, with 0.5 pseudo-counts per bin. Samples beyond the
//! span are counted in the outermost bins.

use rayon::prelude::*;

use crate::error::{check_len, Error, Result};
use crate::gf2::BitVector;
use crate::rng::{domain, StreamKey, TrialRng};
use crate::Real;

pub const DEFAULT_BINS: usize = 101;
pub const DEFAULT_COVERAGE: f64 = 0.999;
pub const DEFAULT_SMOOTHING: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LlrPartition<T> {
    pub correct_samples: Vec<T>,
    pub error_samples: Vec<T>,
}

impl<T: Real> LlrPartition<T> {
    pub fn append(&mut self, mut other: Self) {
        self.correct_samples.append(&mut other.correct_samples);
        self.error_samples.append(&mut other.error_samples);
    }

    pub fn len(&self) -> usize {
        self.correct_samples.len() + self.error_samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Fraction of samples that came from erroneous bits.
    pub fn error_rate(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.error_samples.len() as f64 / self.len() as f64
        }
    }

    /// D(p‖q) in bits with p the correct-bit and q the error-bit density.
    pub fn divergence(&self) -> Result<f64> {
        if self.correct_samples.is_empty() {
            return Err(Error::DegeneratePartition("no correct bits"));
        }
        if self.error_samples.is_empty() {
            return Err(Error::DegeneratePartition("no erroneous bits"));
        }
        let edges = central_edges(
            self.correct_samples
                .iter()
                .chain(&self.error_samples)
                .copied(),
            DEFAULT_BINS,
            DEFAULT_COVERAGE,
        )?;
        let p = Histogram::from_samples(&self.correct_samples, &edges, DEFAULT_SMOOTHING)?;
        let q = Histogram::from_samples(&self.error_samples, &edges, DEFAULT_SMOOTHING)?;
        kl_divergence(&p, &q)
    }
}

/// Splits `llrs` by whether the decoded bit matches the transmitted one.
pub fn partition_llrs<T: Real>(
    llrs: &[T],
    decoded: &BitVector,
    truth: &BitVector,
) -> Result<LlrPartition<T>> {
    check_len(llrs.len(), decoded.len())?;
    check_len(llrs.len(), truth.len())?;
    let mut part = LlrPartition {
        correct_samples: Vec::new(),
        error_samples: Vec::new(),
    };
    for (i, &l) in llrs.iter().enumerate() {
        if decoded.get(i) == truth.get(i) {
            part.correct_samples.push(l);
        } else {
            part.error_samples.push(l);
        }
    }
    Ok(part)
}

/// `bins + 1` uniform edges over the central `coverage` fraction of `samples`.
pub fn central_edges<T: Real>(
    samples: impl Iterator<Item = T>,
    bins: usize,
    coverage: f64,
) -> Result<Vec<T>> {
    if bins == 0 {
        return Err(Error::invalid("bins", "must be at least 1"));
    }
    if !(coverage > 0.0 && coverage <= 1.0) {
        return Err(Error::invalid(
            "coverage",
            format!("{coverage} is not in (0, 1]"),
        ));
    }
    let mut s: Vec<f64> = samples.map(Real::as_f64).collect();
    if s.is_empty() {
        return Err(Error::invalid("samples", "cannot bin an empty sample set"));
    }
    if let Some(i) = s.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteLlr { index: i });
    }
    s.sort_by(f64::total_cmp);
    let tail = (1.0 - coverage) / 2.0;
    let at = |q: f64| s[((q * (s.len() - 1) as f64).round() as usize).min(s.len() - 1)];
    let (mut lo, mut hi) = (at(tail), at(1.0 - tail));
    if hi <= lo {
        lo -= 0.5;
        hi += 0.5;
    }
    let w = (hi - lo) / bins as f64;
    Ok((0..=bins).map(|i| T::of(lo + w * i as f64)).collect())
}

/// Smoothed density estimate on fixed edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram<T> {
    bin_edges: Vec<T>,
    counts: Vec<u64>,
    density: Vec<f64>,
}

impl<T: Real> Histogram<T> {
    pub fn from_samples(samples: &[T], edges: &[T], smoothing: f64) -> Result<Self> {
        if edges.len() < 2 || edges.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid(
                "bin_edges",
                "need at least two strictly increasing edges",
            ));
        }
        if smoothing < 0.0 {
            return Err(Error::invalid("smoothing", "must be non-negative"));
        }
        let bins = edges.len() - 1;
        let mut counts = vec![0u64; bins];
        for (i, &x) in samples.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFiniteLlr { index: i });
            }
            // First edge strictly above x, minus one, clamped into range.
            let b = edges
                .partition_point(|&e| e <= x)
                .saturating_sub(1)
                .min(bins - 1);
            counts[b] += 1;
        }
        Self::from_counts(edges.to_vec(), counts, smoothing)
    }

    pub fn from_counts(bin_edges: Vec<T>, counts: Vec<u64>, smoothing: f64) -> Result<Self> {
        check_len(bin_edges.len().saturating_sub(1), counts.len())?;
        let total = counts.iter().sum::<u64>() as f64 + smoothing * counts.len() as f64;
        if total <= 0.0 {
            return Err(Error::invalid("counts", "histogram has no mass"));
        }
        let density = counts
            .iter()
            .zip(bin_edges.windows(2))
            .map(|(&c, w)| (c as f64 + smoothing) / total / (w[1] - w[0]).as_f64())
            .collect();
        Ok(Self {
            bin_edges,
            counts,
            density,
        })
    }

    pub fn bin_edges(&self) -> &[T] {
        &self.bin_edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn widths(&self) -> impl Iterator<Item = f64> + '_ {
        self.bin_edges.windows(2).map(|w| (w[1] - w[0]).as_f64())
    }
}

/// Σ p·log₂(p/q)·width over shared bins.
pub fn kl_divergence<T: Real>(p: &Histogram<T>, q: &Histogram<T>) -> Result<f64> {
    if p.bin_edges != q.bin_edges {
        return Err(Error::invalid(
            "bin_edges",
            "histograms use different binning",
        ));
    }
    let mut d = 0.0;
    for ((&pi, &qi), w) in p.density.iter().zip(&q.density).zip(p.widths()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Err(Error::invalid("q", "zero density where p is positive"));
        }
        d += pi * (pi / qi).log2() * w;
    }
    Ok(d.max(0.0))
}

/// Soft-decoded block with ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftBlock<T> {
    pub llrs: Vec<T>,
    pub decoded: BitVector,
    pub truth: BitVector,
}

/// A chain whose decoder exposes per-bit output LLRs.
pub trait SoftBlockSimulator: Sync {
    fn simulate_soft(&self, snr_db: f64, rng: &mut TrialRng) -> Result<SoftBlock<f64>>;
}

/// One point of a divergence sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct KlPoint {
    pub snr_db: f64,
    /// Hard-decision BER at the decoder output.
    pub ber: f64,
    pub bits: u64,
    pub errors: u64,
    /// `None` when every bit was correct or every bit was wrong.
    pub divergence: Option<f64>,
}

impl KlPoint {
    pub fn degenerate(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Pools the decoder-output LLRs of `trials` blocks at one SNR.
pub fn collect_partition<S: SoftBlockSimulator + ?Sized>(
    sim: &S,
    snr_db: f64,
    trials: u64,
    seed: u64,
) -> Result<LlrPartition<f64>> {
    if trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    let key = StreamKey::new(seed, domain::KL, snr_db.to_bits());
    let parts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let b = sim.simulate_soft(snr_db, &mut key.trial(t))?;
            partition_llrs(&b.llrs, &b.decoded, &b.truth)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut all = LlrPartition::default();
    parts.into_iter().for_each(|p| all.append(p));
    Ok(all)
}

impl KlPoint {
    /// Summarises a pooled partition; degenerate partitions get no divergence.
    pub fn from_partition(snr_db: f64, part: &LlrPartition<f64>) -> Result<Self> {
        let divergence = match part.divergence() {
            Ok(d) => Some(d),
            Err(Error::DegeneratePartition(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(KlPoint {
            snr_db,
            ber: part.error_rate(),
            bits: part.len() as u64,
            errors: part.error_samples.len() as u64,
            divergence,
        })
    }
}

/// Decoder-output BER and D(p‖q) at each grid SNR, `trials` blocks per point.
pub fn kl_vs_ber_sweep<S: SoftBlockSimulator + ?Sized>(
    sim: &S,
    snr_grid: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<KlPoint>> {
    snr_grid
        .iter()
        .map(|&snr_db| {
            KlPoint::from_partition(snr_db, &collect_partition(sim, snr_db, trials, seed)?)
        })
        .collect()
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    check_len(x.len(), y.len())?;
    if x.len() < 2 {
        return Err(Error::invalid("samples", "need at least two pairs"));
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::invalid(
            "samples",
            "constant input has no rank correlation",
        ));
    }
    Ok(sxy / (sxx * syy).sqrt())
}
