use crate::error::{Error, Result};
use crate::metrics::{
    error_threshold, simulate_trials, Axis, BerEstimate, BlockSimulator, CurvePoint, MetricCurve,
};
use crate::modem::ebno_to_snr;
use crate::rng::{domain, StreamKey};

use super::keyed::KeyedJammingScenario;
use super::scrambler::ScramblerBchScenario;

/// What to measure along a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub grid: Vec<f64>,
    /// Error budget for BE-CDF^bc; `None` skips that curve.
    pub t: Option<usize>,
    pub deltas: Vec<f64>,
    /// Message bits per BER-CDF^ac trial; `None` uses one block.
    pub s_b: Option<usize>,
    pub trials: u64,
    pub seed: u64,
}

/// Curves from one sweep, all on the spec's axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurves {
    pub be_cdf: Option<MetricCurve>,
    /// Bit error rate before the outer decoder; trials count bits.
    pub ber_before: MetricCurve,
    /// Bit error rate after the outer decoder; trials count bits.
    pub ber_after: MetricCurve,
    /// One BER-CDF^ac curve per δ, in the order requested.
    pub ber_cdf: Vec<MetricCurve>,
}

impl SweepCurves {
    /// All curves paired with a stable file-name stem.
    pub fn named(&self) -> Vec<(String, &MetricCurve)> {
        let mut v = Vec::new();
        if let Some(c) = &self.be_cdf {
            v.push((format!("be_cdf_bc_t{}", c.params["t"]), c));
        }
        v.push(("ber_before".to_string(), &self.ber_before));
        v.push(("ber_after".to_string(), &self.ber_after));
        for c in &self.ber_cdf {
            v.push((format!("ber_cdf_ac_delta{}", c.params["delta"]), c));
        }
        v
    }
}

/// Channel SNR (dB per coded bit) for each grid value.
pub fn grid_to_snr_db(axis: Axis, grid: &[f64], rate: f64) -> Result<Vec<f64>> {
    grid.iter()
        .map(|&x| match axis {
            Axis::SnrDb => Ok(x),
            Axis::EbN0Db => ebno_to_snr(x, rate),
        })
        .collect()
}

/// Simulates every grid point once and derives all requested curves from
/// the same blocks. Streams are addressed exactly as in `be_cdf_mc` and
/// `ber_cdf_ac_mc`, so single-block sweeps reproduce their estimates.
pub fn run_sweep<S: BlockSimulator + ?Sized>(sim: &S, spec: &SweepSpec) -> Result<SweepCurves> {
    if spec.grid.is_empty() {
        return Err(Error::invalid("grid", "grid is empty"));
    }
    if let Some(d) = spec.deltas.iter().find(|d| !(0.0..=0.5).contains(*d)) {
        return Err(Error::invalid("delta", format!("{d} not in [0, 0.5]")));
    }
    if let Some(t) = spec.t {
        if t > sim.bits_before_outer() {
            return Err(Error::invalid(
                "t",
                format!("{t} exceeds block length {}", sim.bits_before_outer()),
            ));
        }
    }
    let s_b = spec.s_b.unwrap_or(sim.bits_after_outer());
    let blocks = crate::metrics::blocks_for_sb(sim.bits_after_outer(), s_b)?;
    let snrs = grid_to_snr_db(spec.axis, &spec.grid, sim.rate())?;

    let mut be = Vec::new();
    let mut before = Vec::new();
    let mut after = Vec::new();
    let mut cdf: Vec<Vec<CurvePoint>> = vec![Vec::new(); spec.deltas.len()];
    for (&x, &snr) in spec.grid.iter().zip(&snrs) {
        let key = StreamKey::new(spec.seed, domain::SWEEP, snr.to_bits());
        let records = simulate_trials(sim, snr, blocks, spec.trials, key)?;
        let n_blocks = spec.trials * blocks as u64;
        if let Some(t) = spec.t {
            let ok = records
                .iter()
                .flat_map(|r| &r.blocks)
                .filter(|b| b.before_outer <= t)
                .count();
            be.push(CurvePoint::from_estimate(
                x,
                &BerEstimate::new(ok as u64, n_blocks)?,
            ));
        }
        let eb: u64 = records
            .iter()
            .flat_map(|r| &r.blocks)
            .map(|b| b.before_outer as u64)
            .sum();
        let ea: u64 = records.iter().map(|r| r.after_outer() as u64).sum();
        before.push(CurvePoint::from_estimate(
            x,
            &BerEstimate::new(eb, n_blocks * sim.bits_before_outer() as u64)?,
        ));
        after.push(CurvePoint::from_estimate(
            x,
            &BerEstimate::new(ea, n_blocks * sim.bits_after_outer() as u64)?,
        ));
        for (i, &d) in spec.deltas.iter().enumerate() {
            let thr = error_threshold(s_b, d);
            let events = records.iter().filter(|r| r.after_outer() > thr).count() as u64;
            cdf[i].push(CurvePoint::from_estimate(
                x,
                &BerEstimate::new(events, spec.trials)?,
            ));
        }
    }

    let tag = |c: MetricCurve| {
        c.with_param("trials", spec.trials)
            .with_param("seed", spec.seed)
    };
    Ok(SweepCurves {
        be_cdf: match spec.t {
            Some(t) => Some(
                tag(MetricCurve::new(spec.axis, "be_cdf_bc", be)?)
                    .with_param("t", t)
                    .with_param("n", sim.bits_before_outer()),
            ),
            None => None,
        },
        ber_before: tag(MetricCurve::new(spec.axis, "ber_before_outer", before)?),
        ber_after: tag(MetricCurve::new(spec.axis, "ber_after_outer", after)?),
        ber_cdf: spec
            .deltas
            .iter()
            .zip(cdf)
            .map(|(&d, pts)| {
                Ok(tag(MetricCurve::new(spec.axis, "ber_cdf_ac", pts)?)
                    .with_param("delta", d)
                    .with_param("s_b", s_b))
            })
            .collect::<Result<_>>()?,
    })
}

/// Before/after sweep of the scrambler chain over Eb/N0 with S_b = 64.
pub fn run_scrambler_scenario(
    scn: &ScramblerBchScenario,
    ebno_grid: &[f64],
    deltas: &[f64],
    trials: u64,
    seed: u64,
) -> Result<SweepCurves> {
    let spec = SweepSpec {
        axis: Axis::EbN0Db,
        grid: ebno_grid.to_vec(),
        t: None,
        deltas: deltas.to_vec(),
        s_b: None,
        trials,
        seed,
    };
    run_sweep(scn, &spec)
}

/// Sweep of the keyed jamming chain for one party. BE-CDF^bc counts errors
/// in the 127 key-codeword positions; BER-CDF^ac uses the 753 message bits.
pub fn run_keyed_scenario(
    scn: &KeyedJammingScenario,
    grid: &[f64],
    axis: Axis,
    t: usize,
    deltas: &[f64],
    trials: u64,
    seed: u64,
) -> Result<SweepCurves> {
    let spec = SweepSpec {
        axis,
        grid: grid.to_vec(),
        t: Some(t),
        deltas: deltas.to_vec(),
        s_b: None,
        trials,
        seed,
    };
    let mut curves = run_sweep(scn, &spec)?;
    let alpha = scn.alpha();
    if let Some(c) = curves.be_cdf.take() {
        curves.be_cdf = Some(c.with_param("alpha", alpha));
    }
    curves.ber_before = curves.ber_before.clone().with_param("alpha", alpha);
    curves.ber_after = curves.ber_after.clone().with_param("alpha", alpha);
    curves.ber_cdf = curves
        .ber_cdf
        .into_iter()
        .map(|c| c.with_param("alpha", alpha))
        .collect();
    Ok(curves)
}
