//! Secrecy metrics: closed forms, Monte Carlo estimators, curves and the
//! security gap.

mod analytic;
mod curve;
mod estimate;
mod mc;

pub use analytic::{
    be_cdf_analytic, ber_bpsk_awgn, ber_cdf_ac_exact_iid, binary_entropy, dpsk_ber_awgn,
    error_threshold, limiting_value, q_function, snr_threshold_db,
};
pub use curve::{isotonic_fit, security_gap, Axis, CurvePoint, MetricCurve, Monotonicity};
pub use estimate::{wilson_ci, wilson_ci_z, z_for_confidence, BerEstimate, DEFAULT_CONFIDENCE};
pub use mc::{be_cdf_mc, ber_cdf_ac_mc, simulate_trials, BlockErrors, BlockSimulator, TrialRecord};

pub(crate) use mc::blocks_for_sb;
