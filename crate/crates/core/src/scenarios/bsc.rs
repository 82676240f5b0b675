use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::gf2::BitVector;
use crate::llr::KlPoint;
use crate::metrics::{binary_entropy, Axis, MetricCurve};
use crate::modem::ebno_to_snr;

/// Bob's main channel counts as noiseless at or below this block-failure rate.
pub const BOB_NOISELESS_FAILURE_RATE: f64 = 1.0 - 0.9975;

/// C_s = h(p_wiretap) − h(p_main) for a degraded BSC pair, clamped at zero.
pub fn secrecy_capacity_bsc(p_main: f64, p_wiretap: f64) -> Result<f64> {
    for (name, p) in [("p_main", p_main), ("p_wiretap", p_wiretap)] {
        if !(0.0..=0.5).contains(&p) {
            return Err(Error::invalid(name, format!("{p} not in [0, 0.5]")));
        }
    }
    Ok((binary_entropy(p_wiretap) - binary_entropy(p_main)).clamp(0.0, 1.0))
}

/// Row/column interleaver spreading `depth` packets of `block_len` bits:
/// rows are written per packet and read out column by column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockInterleaver {
    depth: usize,
    block_len: usize,
}

impl BlockInterleaver {
    pub fn new(depth: usize, block_len: usize) -> Result<Self> {
        if depth == 0 || block_len == 0 {
            return Err(Error::invalid(
                "depth",
                "depth and block length must be positive",
            ));
        }
        Ok(Self { depth, block_len })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn interleave(&self, packets: &[BitVector]) -> Result<Vec<u8>> {
        check_len(self.depth, packets.len())?;
        for p in packets {
            check_len(self.block_len, p.len())?;
        }
        let mut out = Vec::with_capacity(self.depth * self.block_len);
        for j in 0..self.block_len {
            out.extend(packets.iter().map(|p| p.get(j)));
        }
        Ok(out)
    }

    pub fn deinterleave(&self, stream: &[u8]) -> Result<Vec<BitVector>> {
        check_len(self.depth * self.block_len, stream.len())?;
        Ok((0..self.depth)
            .map(|r| {
                (0..self.block_len)
                    .map(|j| stream[j * self.depth + r])
                    .collect()
            })
            .collect())
    }
}

/// Pearson correlation between `x[i]` and `x[i + lag]`; zero for constant input.
pub fn serial_correlation(x: &[u8], lag: usize) -> f64 {
    if lag == 0 || x.len() <= lag {
        return 0.0;
    }
    let a = &x[..x.len() - lag];
    let b = &x[lag..];
    let n = a.len() as f64;
    let ma = a.iter().map(|&v| v as f64).sum::<f64>() / n;
    let mb = b.iter().map(|&v| v as f64).sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (&u, &v) in a.iter().zip(b) {
        let (du, dv) = (u as f64 - ma, v as f64 - mb);
        sab += du * dv;
        saa += du * du;
        sbb += dv * dv;
    }
    if saa == 0.0 || sbb == 0.0 {
        0.0
    } else {
        sab / (saa * sbb).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SerialCorrelation {
    pub depth: usize,
    pub bits: usize,
    pub lag1_in_block: f64,
    pub lag1_interleaved: f64,
}

/// Bob's performance at his operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BobSummary {
    /// 1 − BE-CDF^bc at the operating point.
    pub block_failure_rate: f64,
    /// Post-decoder message BER.
    pub ber: f64,
}

/// Material the reduction draws on.
#[derive(Debug, Clone, Copy)]
pub struct BscInputs<'a> {
    /// Eve's BER-CDF^ac curve for the requested δ.
    pub eve_ber_cdf: &'a MetricCurve,
    /// Rate used to place the operating point on the KL sweep's SNR axis.
    pub rate: f64,
    pub bob: Option<BobSummary>,
    pub kl: Option<&'a [KlPoint]>,
    pub serial: Option<SerialCorrelation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectiveBscReport {
    pub delta: f64,
    pub confidence_target: f64,
    pub axis: Axis,
    /// Largest grid point at which Eve's BER-CDF^ac still meets the target.
    pub operating_point_db: f64,
    /// BER-CDF^ac value at the operating point.
    pub confidence: f64,
    pub p_wiretap_lower: f64,
    pub p_main: f64,
    pub bob_block_failure_rate: Option<f64>,
    pub c_s_bits: f64,
    pub soft_info_kl: Option<f64>,
    pub soft_info_kl_snr_db: Option<f64>,
    pub serial_correlation: Option<SerialCorrelation>,
    pub independence_note: String,
    pub capacity_note: String,
}

/// Lower-bounds Eve's crossover probability by 0.5 − δ at the highest grid
/// point where her BER-CDF^ac is at least `confidence_target`.
pub fn reduce_to_bsc(
    inputs: &BscInputs<'_>,
    delta: f64,
    confidence_target: f64,
) -> Result<EffectiveBscReport> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::invalid("delta", format!("{delta} not in [0, 0.5]")));
    }
    if !(confidence_target > 0.0) {
        return Err(Error::invalid(
            "confidence_target",
            format!("{confidence_target} must be positive"),
        ));
    }
    if confidence_target >= 1.0 {
        // A finite number of trials can never certify probability one.
        return Err(Error::Unreachable {
            target: confidence_target,
        });
    }
    let curve = inputs.eve_ber_cdf;
    let op = curve
        .points
        .iter()
        .filter(|p| p.value >= confidence_target)
        .max_by(|a, b| a.x.total_cmp(&b.x))
        .ok_or(Error::Unreachable {
            target: confidence_target,
        })?;

    let p_wiretap_lower = (0.5 - delta).clamp(0.0, 0.5);
    let p_main = match inputs.bob {
        Some(b) if b.block_failure_rate > BOB_NOISELESS_FAILURE_RATE => b.ber.clamp(0.0, 0.5),
        _ => 0.0,
    };
    let c_s_bits = secrecy_capacity_bsc(p_main, p_wiretap_lower)?;

    let op_snr = match curve.axis {
        Axis::SnrDb => op.x,
        Axis::EbN0Db => ebno_to_snr(op.x, inputs.rate)?,
    };
    let kl_point = inputs.kl.and_then(|pts| {
        pts.iter()
            .filter(|p| p.divergence.is_some())
            .min_by(|a, b| {
                (a.snr_db - op_snr)
                    .abs()
                    .total_cmp(&(b.snr_db - op_snr).abs())
            })
    });

    let independence_note = match inputs.serial {
        Some(s) => format!(
            "fixed-depth block interleaver across {} packets; lag-1 serial correlation of Eve's \
             error indicators over {} bits is {:.4} in packet order and {:.4} after interleaving",
            s.depth, s.bits, s.lag1_in_block, s.lag1_interleaved
        ),
        None => "serial correlation not measured".to_string(),
    };
    let capacity_note = format!(
        "C_s = C_m - C_w = h({p_wiretap_lower}) - h({p_main}) with h the binary entropy; \
         main channel treated as noiseless when Bob's block-failure rate is at most {BOB_NOISELESS_FAILURE_RATE:.4}"
    );

    Ok(EffectiveBscReport {
        delta,
        confidence_target,
        axis: curve.axis,
        operating_point_db: op.x,
        confidence: op.value,
        p_wiretap_lower,
        p_main,
        bob_block_failure_rate: inputs.bob.map(|b| b.block_failure_rate),
        c_s_bits,
        soft_info_kl: kl_point.and_then(|p| p.divergence),
        soft_info_kl_snr_db: kl_point.map(|p| p.snr_db),
        serial_correlation: inputs.serial,
        independence_note,
        capacity_note,
    })
}
