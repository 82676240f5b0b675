//! Short-blocklength secrecy metrics for physical-layer wiretap coding.
//!
//! The crate provides the two block-level metrics (the bit-error CDF measured
//! before the secrecy decoder and the bit-error-rate CDF measured after it),
//! the coding chains they are evaluated on (scrambler over BCH; keyed
//! interleaver with a BCH key code and LDPC under friendly jamming) and the
//! reduction of a coded jammed chain to an effective binary symmetric channel.
//!
//! Signal-path code (modulation, channel, soft decoding, LLR statistics) is
//! generic over [`Real`], implemented for `f32` and `f64`. Probabilities and
//! Monte Carlo estimates are always `f64`.

pub mod channel;
pub mod codes;
pub mod error;
pub mod gf2;
pub mod llr;
pub mod metrics;
pub mod modem;
pub mod rng;
pub mod scalar;
pub mod scenarios;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision AWGN channel.
pub type AwgnChannel64 = channel::AwgnChannel<f64>;
/// Single-precision AWGN channel.
pub type AwgnChannel32 = channel::AwgnChannel<f32>;
/// Double-precision LDPC decoder output.
pub type LdpcOutcome64 = codes::LdpcOutcome<f64>;
/// Single-precision LDPC decoder output.
pub type LdpcOutcome32 = codes::LdpcOutcome<f32>;
/// Double-precision LLR histogram.
pub type Histogram64 = llr::Histogram<f64>;
/// Double-precision LLR partition.
pub type LlrPartition64 = llr::LlrPartition<f64>;
